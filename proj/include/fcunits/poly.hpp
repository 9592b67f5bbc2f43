#pragma once

// Univariate polynomials over a Field, with factorization over finite
// fields (Cantor-Zassenhaus) and over Q (Zassenhaus: Hensel lifting plus
// recombination of modular factors).

#include <cstdint>
#include <random>
#include <utility>
#include <vector>

#include "fcunits/scalars.hpp"

namespace fcu {

class Poly {
 public:
  Poly() = default;
  explicit Poly(const Field& f) : field_(&f) {}
  Poly(const Field& f, std::vector<Scalar> coeffs);  // constant term first
  static Poly constant(const Scalar& c);
  static Poly x(const Field& f);                       // the monomial x
  static Poly monomial(const Scalar& c, std::size_t degree);

  const Field& field() const { return *field_; }
  /// -1 for the zero polynomial.
  int degree() const { return static_cast<int>(c_.size()) - 1; }
  bool is_zero() const { return c_.empty(); }
  const std::vector<Scalar>& coeffs() const { return c_; }
  Scalar coeff(std::size_t i) const { return i < c_.size() ? c_[i] : field_->zero(); }
  Scalar lead() const { return c_.empty() ? field_->zero() : c_.back(); }

  Poly operator+(const Poly& rhs) const;
  Poly operator-(const Poly& rhs) const;
  Poly operator*(const Poly& rhs) const;
  Poly operator*(const Scalar& s) const;
  bool operator==(const Poly& rhs) const { return field_ == rhs.field_ && c_ == rhs.c_; }

  std::pair<Poly, Poly> divmod(const Poly& d) const;
  Poly operator%(const Poly& d) const { return divmod(d).second; }
  Poly operator/(const Poly& d) const { return divmod(d).first; }

  Poly monic() const;
  Poly derivative() const;
  Scalar eval(const Scalar& x) const;

  std::string to_string() const;

 private:
  void trim();
  const Field* field_ = nullptr;
  std::vector<Scalar> c_;
};

Poly gcd(Poly a, Poly b);  // monic, or zero
/// (g, s, t) with s*a + t*b = g monic.
struct ExtGcd { Poly g, s, t; };
ExtGcd ext_gcd(const Poly& a, const Poly& b);
/// base^e mod m.
Poly powmod(Poly base, BigInt e, const Poly& m);

/// Irreducibility over the coefficient field (finite fields: Ben-Or test;
/// Q: Zassenhaus factorization).
bool is_irreducible(const Poly& f);

/// All roots in the coefficient field, sorted (finite fields only).
std::vector<Scalar> roots(const Poly& f);

/// Monic irreducible factors with multiplicity.
std::vector<std::pair<Poly, int>> factor(const Poly& f);

/// Squarefree decomposition parts are folded in; only the distinct monic
/// irreducible factors of a squarefree polynomial over GF(q).
std::vector<Poly> factor_squarefree_finite(const Poly& f, std::mt19937_64& rng);

/// Distinct monic irreducible factors over Q of a nonzero polynomial.
std::vector<Poly> factor_rational_distinct(const Poly& f);

}  // namespace fcu
