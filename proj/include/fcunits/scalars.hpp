#pragma once

/**
 * @file scalars.hpp
 * @brief Exact coefficient fields: GF(p^k) with an explicit modulus, and Q.
 *
 * Finite field elements are packed into a single integer in [0, q): the
 * base-p digits are the polynomial coefficients, constant term first.
 * Multiplication goes through discrete log tables built from a primitive
 * element, so every field operation is O(k) or better.
 *
 * Fields are interned: two handles built from the same spec compare equal
 * as pointers, and a Scalar only stores a raw pointer to its field.
 */

#include <boost/multiprecision/cpp_int.hpp>

#include <compare>
#include <cstdint>
#include <memory>
#include <optional>
#include <random>
#include <span>
#include <string>
#include <variant>
#include <vector>

#include "fcunits/error.hpp"

namespace fcu {

using BigInt = boost::multiprecision::cpp_int;
using Rational = boost::multiprecision::cpp_rational;

class Field;
using FieldRef = std::shared_ptr<const Field>;

struct FieldSpec {
  enum class Kind { PrimePower, Rationals };
  Kind kind = Kind::PrimePower;
  std::uint32_t p = 2;
  std::uint32_t k = 1;
  /// k+1 coefficients of the defining polynomial, constant term first.
  /// Ignored for k = 1.
  std::vector<std::uint32_t> modulus;

  static FieldSpec prime(std::uint32_t p) { return {Kind::PrimePower, p, 1, {}}; }
  static FieldSpec extension(std::uint32_t p, std::vector<std::uint32_t> modulus) {
    auto k = static_cast<std::uint32_t>(modulus.size() - 1);
    return {Kind::PrimePower, p, k, std::move(modulus)};
  }
  static FieldSpec rationals() { return {Kind::Rationals, 0, 1, {}}; }
};

/// Largest finite field accepted; power equations are solved by exhaustion.
inline constexpr std::uint32_t kMaxFieldOrder = 1u << 16;

class Scalar {
 public:
  Scalar() = default;

  const Field* field() const noexcept { return field_; }
  bool is_zero() const;
  bool is_one() const;

  Scalar operator+(const Scalar& rhs) const;
  Scalar operator-(const Scalar& rhs) const;
  Scalar operator*(const Scalar& rhs) const;
  Scalar operator/(const Scalar& rhs) const;
  Scalar operator-() const;
  Scalar& operator+=(const Scalar& rhs) { return *this = *this + rhs; }
  Scalar& operator-=(const Scalar& rhs) { return *this = *this - rhs; }
  Scalar& operator*=(const Scalar& rhs) { return *this = *this * rhs; }

  Scalar inv() const;
  Scalar pow(std::int64_t e) const;
  Scalar pow(const BigInt& e) const;

  bool operator==(const Scalar& rhs) const;
  std::strong_ordering operator<=>(const Scalar& rhs) const;

  /// Packed index for finite fields.
  std::uint32_t index() const;
  const Rational& rational() const;
  /// Polynomial coefficients over GF(p), constant first (finite fields only).
  std::vector<std::uint32_t> coefficients() const;

  std::string to_string() const;

 private:
  friend class Field;
  Scalar(const Field* f, std::uint32_t v) : field_(f), value_(v) {}
  Scalar(const Field* f, Rational v) : field_(f), value_(std::move(v)) {}
  void require_same(const Scalar& rhs) const;

  const Field* field_ = nullptr;
  std::variant<std::uint32_t, Rational> value_{std::uint32_t{0}};
};

class Field {
 public:
  /// Validates and interns. Throws NonPrimeCharacteristic, ReducibleModulus,
  /// FieldTooLarge.
  static FieldRef make(const FieldSpec& spec);
  static FieldRef rationals() { return make(FieldSpec::rationals()); }
  static FieldRef prime(std::uint32_t p) { return make(FieldSpec::prime(p)); }

  const FieldSpec& spec() const noexcept { return spec_; }
  bool is_finite() const noexcept { return spec_.kind == FieldSpec::Kind::PrimePower; }
  std::uint32_t characteristic() const noexcept { return is_finite() ? spec_.p : 0; }
  std::uint32_t degree() const noexcept { return spec_.k; }
  /// q = p^k, or 0 for Q.
  std::uint32_t order() const noexcept { return order_; }
  std::string name() const;

  Scalar zero() const;
  Scalar one() const;
  Scalar from_int(std::int64_t v) const;
  Scalar from_rational(const Rational& v) const;
  Scalar element(std::uint32_t index) const;
  Scalar from_coefficients(std::span<const std::uint32_t> coeffs) const;
  /// All q elements in index order (finite fields only).
  std::vector<Scalar> elements() const;
  /// Generator of the multiplicative group (finite fields only).
  Scalar primitive_element() const;
  /// The root of the defining polynomial (x itself), or 1 for prime fields.
  Scalar generator() const;

  /// Multiplicative order; nullopt when infinite (Q, |a| != 1).
  std::optional<std::uint64_t> multiplicative_order(const Scalar& a) const;

  /// Uniform nonzero-or-zero element for finite fields; a small random
  /// fraction for Q.
  Scalar random(std::mt19937_64& rng) const;
  Scalar random_nonzero(std::mt19937_64& rng) const;

  Field(const Field&) = delete;
  Field& operator=(const Field&) = delete;

 private:
  friend class Scalar;
  explicit Field(FieldSpec spec);

  std::uint32_t add_idx(std::uint32_t a, std::uint32_t b) const;
  std::uint32_t neg_idx(std::uint32_t a) const;
  std::uint32_t mul_idx(std::uint32_t a, std::uint32_t b) const;
  std::uint32_t slow_mul(std::uint32_t a, std::uint32_t b) const;
  void build_tables();

  FieldSpec spec_;
  std::uint32_t order_ = 0;
  std::vector<std::uint32_t> monic_modulus_;  // low k coefficients of the monic modulus
  std::vector<std::uint32_t> log_;
  std::vector<std::uint32_t> exp_;
  std::uint32_t primitive_ = 0;
};

/// All x in `field` with x^n = target. Exhaustive over finite fields;
/// over Q only n <= 2 is supported (UnsupportedRationalDegree otherwise).
std::vector<Scalar> solve_power_equation(const Field& field, std::uint64_t n, const Scalar& target);

/// Whether `field` contains a root of unity of exact order m.
bool has_primitive_root_of_unity(const Field& field, std::uint64_t m);

/// Some root of unity of exact order m, if one exists.
std::optional<Scalar> primitive_root_of_unity(const Field& field, std::uint64_t m);

}  // namespace fcu
