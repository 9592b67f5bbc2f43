#pragma once

// 2-cocycles G x G -> U(K) with trivial action.
//
// The stored form is lambda(g, h) = tau(a_g, a_h) * zeta^(u_g^T N u_h) where
// a_* is the torsion index and u_* the free vector. Coboundaries and derived
// cocycles (quotients, products) are carried as evaluation functions.

#include <array>
#include <functional>
#include <memory>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "fcunits/groups.hpp"
#include "fcunits/scalars.hpp"

namespace fcu {

class CocycleImpl {
 public:
  virtual ~CocycleImpl() = default;
  virtual Scalar eval(const GroupElement& g, const GroupElement& h) const = 0;
};

struct StructuredCocycle {
  std::vector<Scalar> tau;  // |T| x |T|, row-major by torsion index
  Scalar zeta;
  std::vector<std::vector<std::int64_t>> N;  // r x r, strictly upper triangular
};

class Cocycle {
 public:
  Cocycle() = default;

  static Cocycle trivial(GroupRef group, FieldRef field);
  /// Throws ZeroValue for a zero entry, Schema for malformed shapes.
  static Cocycle structured(GroupRef group, FieldRef field, StructuredCocycle data);
  static Cocycle from_function(GroupRef group, FieldRef field,
                               std::function<Scalar(const GroupElement&, const GroupElement&)> fn);

  /// Pointwise product.
  Cocycle operator*(const Cocycle& rhs) const;

  Scalar operator()(const GroupElement& g, const GroupElement& h) const { return impl_->eval(g, h); }

  const Group& group() const { return *group_; }
  const Field& field() const { return *field_; }
  const GroupRef& group_ref() const { return group_; }
  const FieldRef& field_ref() const { return field_; }
  /// Present for the stored form only.
  const StructuredCocycle* structured_data() const { return structured_.get(); }

 private:
  GroupRef group_;
  FieldRef field_;
  std::shared_ptr<const CocycleImpl> impl_;
  std::shared_ptr<const StructuredCocycle> structured_;
};

using Triple = std::array<GroupElement, 3>;

struct CocycleCheck {
  bool valid = true;
  std::optional<Triple> counterexample;
  /// Empty when valid; otherwise "identity", "normalization" or "zero value".
  std::string reason;
  std::size_t triples_checked = 0;
};

/// Checks lambda_{g,h} lambda_{gh,k} = lambda_{h,k} lambda_{g,hk} over every
/// triple of box(radius, prufer_level) in lexicographic order, then
/// normalization lambda_{1,1} = 1. Returns the first failure.
CocycleCheck validate_cocycle(const Cocycle& lambda, int radius = 3, std::uint32_t prufer_level = 0);

/// delta mu (g, h) = mu_g mu_h / mu_gh. mu at the identity is taken as 1.
Cocycle coboundary(GroupRef group, FieldRef field, std::function<Scalar(const GroupElement&)> mu);
/// mu given on torsion indices and on free generators:
/// mu(u, a, p) = torsion_values[a] * prod_i free_values[i]^u_i. Throws ZeroValue.
Cocycle coboundary(GroupRef group, FieldRef field, const std::vector<Scalar>& torsion_values,
                   const std::vector<Scalar>& free_values);

/// lambda_{g,g} lambda_{g,g^2} ... lambda_{g,g^(n-1)} for g of order n.
/// Throws InfiniteOrder.
Scalar lambda_g(const Cocycle& lambda, const GroupElement& g);

/// c with [u_a, u_b] = c u_[a,b].
Scalar commutator_scalar(const Cocycle& lambda, const GroupElement& a, const GroupElement& b);

/// {lambda_{h,h^-1}^-1 lambda_{h^-1,g} lambda_{h^-1 g,h} : h in t(G)}, with t(G)
/// truncated to the given Prufer level.
std::set<Scalar> condition4_set(const Cocycle& lambda, const GroupElement& g, std::uint32_t prufer_level = 0);
/// The same set with h ranging over `hs`.
std::set<Scalar> condition4_set(const Cocycle& lambda, const GroupElement& g, const std::vector<GroupElement>& hs);

struct SymmetryCheck {
  bool symmetric = true;
  std::optional<std::pair<GroupElement, GroupElement>> witness;  // (g, h) with h torsion
};

/// lambda(g, h) = lambda(h, g) for h in t(G) and g in box(radius).
SymmetryCheck is_symmetric_on_torsion(const Cocycle& lambda, int radius = 1, std::uint32_t prufer_level = 0);

}  // namespace fcu
