#pragma once

// Finite-dimensional algebras given by structure constants: radical,
// semisimplicity, primitive idempotents, decomposition into fields, lifting
// idempotents. K_lambda W for a finite subgroup W is the main source.

#include <cstdint>
#include <optional>
#include <random>
#include <string>
#include <utility>
#include <vector>

#include "fcunits/algebra.hpp"
#include "fcunits/linalg.hpp"
#include "fcunits/poly.hpp"

namespace fcu {

struct StructureCaps {
  std::size_t max_dim = 64;
  std::size_t max_count_dim = 20;
  std::size_t max_rational_idempotent_dim = 12;
  std::size_t max_restricted_dim = 128;  // n * [K : F_p] for small-characteristic radicals
  std::uint64_t max_exhaustive = 10'000'000;
  std::uint64_t max_field_exhaustion = 100'000;
};

/// Associative algebra with unit on the basis b_0 ... b_{n-1}.
class StructureAlgebra {
 public:
  using Sparse = std::vector<std::pair<std::uint32_t, Scalar>>;

  StructureAlgebra() = default;
  /// products[i * n + j] = b_i b_j.
  StructureAlgebra(FieldRef field, std::size_t n, std::vector<Sparse> products, Vec unit);
  static StructureAlgebra from_dense(FieldRef field, std::size_t n, const std::vector<Vec>& products, Vec unit);

  const Field& field() const { return *field_; }
  const FieldRef& field_ref() const { return field_; }
  std::size_t dim() const { return n_; }
  const Sparse& product(std::size_t i, std::size_t j) const { return prod_[i * n_ + j]; }
  const Vec& unit() const { return unit_; }
  Vec zero() const { return zero_vec(*field_, n_); }
  Vec basis(std::size_t i) const { return unit_vec(*field_, n_, i); }

  Vec mul(const Vec& x, const Vec& y) const;
  Vec power(const Vec& x, std::uint64_t e) const;
  /// Column j holds x b_j.
  Matrix left_matrix(const Vec& x) const;
  bool is_commutative() const;

 private:
  FieldRef field_;
  std::size_t n_ = 0;
  std::vector<Sparse> prod_;
  Vec unit_;
};

/// K_lambda W inside K_lambda G.
struct FiniteSubalgebra {
  AlgebraRef ambient;
  std::vector<GroupElement> W;  // sorted; b_i = u_{W[i]}
  StructureAlgebra alg;

  AlgebraElement to_element(const Vec& v) const;
  /// Throws SupportNotInSubgroup.
  Vec to_vec(const AlgebraElement& x) const;
};

/// The subgroup generated by `W` must have at most caps.max_dim elements
/// (SubgroupTooLarge).
FiniteSubalgebra span_subalgebra(const AlgebraRef& A, const std::vector<GroupElement>& W,
                                 const StructureCaps& caps = {});

/// A/I for a two-sided ideal I, on the basis of non-pivot coordinates.
struct FactorAlgebra {
  StructureAlgebra alg;
  Subspace ideal;
  std::vector<std::size_t> complement;  // parent basis indices kept
  Vec project(const Vec& x) const;
  Vec lift(const Vec& y) const;  // the lift supported on `complement`
};
FactorAlgebra quotient_algebra(const StructureAlgebra& A, const std::vector<Vec>& ideal);

/// A subalgebra given by a basis in parent coordinates; its unit may differ
/// from the parent's (as for a corner eAe).
struct EmbeddedAlgebra {
  StructureAlgebra alg;
  Subspace span;
  Vec to_parent(const Vec& y) const;
  Vec from_parent(const Vec& x) const;
};
/// eAe with unit e.
EmbeddedAlgebra corner_algebra(const StructureAlgebra& A, const Vec& e);

/// Basis of the ideal power I^k, k >= 1.
std::vector<Vec> ideal_power(const StructureAlgebra& A, const std::vector<Vec>& ideal, std::size_t k);
/// Least k with I^k = 0, or nullopt when the powers stall.
std::optional<std::size_t> nilpotency_index(const StructureAlgebra& A, const std::vector<Vec>& ideal);

struct RadicalResult {
  std::vector<Vec> basis;
  std::string method;  // "trace-form", "frobenius-kernel" or "p-power-trace"
  std::optional<std::size_t> nilpotency_index;
  bool quotient_semisimple = false;
  bool certified() const { return nilpotency_index.has_value() && quotient_semisimple; }
};

/// Throws DimensionTooLarge.
RadicalResult jacobson_radical(const StructureAlgebra& A, const StructureCaps& caps = {});
bool is_semisimple(const StructureAlgebra& A, const StructureCaps& caps = {});
/// char(K) does not divide |W| implies K_lambda W semisimple; false only on
/// a counterexample.
bool maschke_check(const FiniteSubalgebra& S, const StructureCaps& caps = {});

/// Monic minimal polynomial of x in the algebra whose unit is `one`.
Poly minimal_polynomial(const StructureAlgebra& A, const Vec& x, const Vec& one);
Vec evaluate(const StructureAlgebra& A, const Poly& f, const Vec& x, const Vec& one);

/// Complete set of orthogonal primitive idempotents of a commutative A.
/// Throws NotCommutative, DimensionTooLarge.
std::vector<Vec> primitive_idempotents(const StructureAlgebra& A, const StructureCaps& caps = {});

struct IdempotentCount {
  std::uint64_t count = 0;
  std::size_t primitive = 0;
  bool cross_checked = false;  // also counted by exhaustion
};
/// 2^(number of primitive idempotents). Throws NotCommutative, TooLargeToCount.
IdempotentCount count_idempotents(const StructureAlgebra& A, const StructureCaps& caps = {});
/// Solutions of x^2 = x by enumeration (finite fields). Throws TooLargeToCount.
std::uint64_t count_idempotents_exhaustive(const StructureAlgebra& A, const StructureCaps& caps = {});

struct ComponentSummary {
  Vec idempotent;
  std::size_t dimension = 0;
  bool is_field = false;
  bool is_commutative = true;
  std::string certificate;  // "exhaustion" or "irreducible minimal polynomial"
  std::optional<Poly> field_polynomial;
};

struct Decomposition {
  std::vector<Vec> radical;
  std::vector<Vec> idempotents;
  std::vector<ComponentSummary> components;
};

struct FieldsDecomposition {
  bool is_sum_of_fields = false;
  Decomposition decomposition;
  std::optional<Vec> witness;
  std::string witness_kind;  // "nilpotent" or "non-field component"
};

/// Throws NotCommutative.
FieldsDecomposition fields_decomposition(const StructureAlgebra& A, const StructureCaps& caps = {});

/// Lifts idempotents of A / I, given by representatives in A, to idempotents
/// of A. Throws NotCommutative, IdealNotNilpotent, Schema (input not
/// idempotent modulo I).
std::vector<Vec> lift_idempotents(const StructureAlgebra& A, const std::vector<Vec>& ideal,
                                  const std::vector<Vec>& idempotents);

Matrix regular_representation(const StructureAlgebra& A, const Vec& x);
/// u_g x = x u_g for every g in `generators`.
bool centrality_check(const AlgebraElement& x, const std::vector<GroupElement>& generators);

}  // namespace fcu
