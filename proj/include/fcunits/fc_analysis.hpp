#pragma once

// Deciding whether U(K_lambda G) has finite conjugacy classes: necessary
// screening, the checkers for the p-torsion case (T3), the finitely-many-
// idempotents case (T4), truncated evidence for the Prufer case (T5), and the
// quotient and crossed-product constructions behind the sufficiency proofs.

#include <array>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "fcunits/algebra.hpp"
#include "fcunits/encoding.hpp"
#include "fcunits/structure.hpp"

namespace fcu {

struct InstanceCaps {
  int box_radius = 2;
  std::uint32_t orbit_depth = 6;
  std::uint32_t truncation_level = 0;  // 0: the group's Prufer levels
};

struct Instance {
  std::string name;
  AlgebraRef algebra;
  InstanceCaps caps;
  std::uint64_t seed = 0;

  const Group& group() const { return algebra->group(); }
  const Field& field() const { return algebra->field(); }
  const Cocycle& cocycle() const { return algebra->cocycle(); }
  /// Truncation level actually used for Prufer torsion.
  std::uint32_t level() const;
  /// t(G), truncated at level() when there is a Prufer part; sorted.
  std::vector<GroupElement> torsion() const;
};

/// Validates lambda on box(caps.box_radius, level). Throws InvalidCocycle.
Instance make_instance(std::string name, Cocycle lambda, InstanceCaps caps = {}, std::uint64_t seed = 0);

struct Condition {
  std::string id;
  std::optional<bool> pass;  // nullopt: not evaluated
  std::string detail;
  Json witness;  // null when absent
};

struct Verdict {
  enum class Result { FC, NotFC, EvidenceOnly, Inapplicable };
  Result result = Result::Inapplicable;
  std::string theorem;  // "T3", "T4", "T5-truncated", "necessary-only", "none"
  std::vector<Condition> conditions;
  std::vector<std::string> notes;
  Json evidence = Json::object();

  Json to_json() const;
};

std::string to_string(Verdict::Result r);

/// Screens (i) t(G) abelian and lambda symmetric on t(G); (ii) primitive
/// idempotents of K_lambda t(G) central (when char(K) does not divide the
/// torsion orders); (iii) for infinite K, t(G) central and lambda symmetric
/// against t(G). Each violation is a Condition with pass = false.
std::vector<Condition> necessary_conditions(const Instance& inst);

/// Throws InapplicableCharacteristic, InapplicableTorsion.
Verdict check_theorem3(const Instance& inst);

/// K_lambda G / K_lambda G (u_a - mu_root) as K_mu H with H = G / <a>.
struct QuotientAlgebra {
  Cocycle lambda;
  GroupElement a;
  Scalar mu_root;
  QuotientMap map;
  AlgebraRef target;  // K_mu H
  AlgebraElement ideal_generator;  // u_a - mu_root
  CocycleCheck mu_check;
  bool ideal_square_zero = false;
  std::size_t pairs_checked = 0;
  bool projection_multiplicative = false;
  std::optional<std::pair<AlgebraElement, AlgebraElement>> failing_pair;

  const Cocycle& mu() const { return target->cocycle(); }
  /// g = b a^s with b the least element of g<a>.
  std::pair<GroupElement, int> split(const GroupElement& g) const;
  AlgebraElement project(const AlgebraElement& x) const;
};

/// With `a` absent, a generates G' and T3 conditions 1-2 must hold. An
/// explicit `a` must be a central involution of t(G) in characteristic 2.
/// Throws ConditionsNotMet, NoSquareRoot.
QuotientAlgebra build_quotient_algebra(const Instance& inst, std::optional<GroupElement> a = std::nullopt,
                                       std::size_t sample_pairs = 200);

/// Throws InapplicableCharacteristic, InapplicableTorsion.
Verdict check_theorem4(const Instance& inst);

/// K_lambda G e_q as F_q * H with H = G / t(G), represented by c = (u, 0).
struct CrossedProduct {
  struct Sigma {
    GroupElement c;
    bool identity = false;
    std::optional<std::uint32_t> frobenius_exponent;  // sigma(alpha) = alpha^(p^j)
  };

  AlgebraRef algebra;
  std::size_t component = 0;
  AlgebraElement idempotent;            // e_q
  std::vector<AlgebraElement> field_basis;  // F_q = K_lambda t(G) e_q
  std::vector<Sigma> sigma;             // on the free generators
  std::size_t triples_checked = 0;
  bool factor_set_identity = false;
  bool automorphism_identity = false;
  std::optional<std::array<GroupElement, 3>> failing_triple;

  GroupElement rep(const GroupElement& g) const;
  /// mu_{a,b} = u_h lambda_{c,h}^-1 lambda_{a,b} e_q where ab = c h.
  AlgebraElement factor(const GroupElement& a, const GroupElement& b) const;
  /// u_c^-1 alpha u_c.
  AlgebraElement apply_sigma(const GroupElement& c, const AlgebraElement& alpha) const;
  AlgebraElement w(const GroupElement& c) const;  // e_q u_c
  /// For y = w_h alpha with alpha in F_q: (h, alpha). nullopt when y meets
  /// several cosets of t(G) or leaves K_lambda G e_q.
  std::optional<std::pair<GroupElement, AlgebraElement>> unit_normal_form(const AlgebraElement& y) const;
};

/// Throws ConditionsNotMet.
CrossedProduct build_crossed_product(const Instance& inst, std::size_t component);

/// Always EvidenceOnly. Throws InapplicableTorsion, InapplicableCharacteristic.
Verdict check_theorem5_truncated(const Instance& inst, std::uint32_t level = 0);

struct CommutatorOrder {
  GroupElement commutator;
  std::uint64_t group_order = 0;
  Scalar scalar;  // [u_a, u_b] = scalar u_[a,b]
  std::optional<std::uint64_t> unit_order;  // nullopt: infinite
  bool equal = false;
};
/// Throws InfiniteOrder.
CommutatorOrder commutator_order_check(const Instance& inst, const GroupElement& a, const GroupElement& b);

struct ProbeUnit {
  std::string label;
  AlgebraElement unit;
  AlgebraElement inverse;
  std::uint32_t from_depth = 1;  // first BFS depth using this unit
};

/// Trivial units u_g for the generators g of G (from depth 1), and a family
/// growing with depth: for a nonzero radical element r of K_lambda t(G) the
/// units 1 + r u_{g^e}, otherwise (1 - e) + e u_{g^e} for a proper central
/// primitive idempotent e, where e = 1 + (m - 1)|t(G)| enters at depth
/// m <= max_depth (e = 1 mod every torsion order). With trivial_only only
/// the u_g are returned.
std::vector<ProbeUnit> default_probe_units(const Instance& inst, std::uint32_t max_depth, bool trivial_only = false);

struct OrbitProbe {
  std::vector<std::size_t> size_per_depth;  // orbit size after depth 0, 1, ...
  bool stabilized = false;                  // the last depth added nothing
  std::optional<std::uint32_t> stabilized_at;  // sizes constant from here on
  bool hit_cap = false;
  std::vector<AlgebraElement> orbit;  // sorted, only when the orbit is small
};

/// BFS over {v^-1 y v, v y v^-1}: at depth d the units already in use act on
/// the previous frontier and units entering at d act on the whole orbit.
/// Throws NotUnit for x, CapExceeded for depth > 12.
OrbitProbe probe_conjugates(const Instance& inst, const AlgebraElement& x, const std::vector<ProbeUnit>& units,
                            std::uint32_t depth, std::size_t cap = 4096);

Verdict verdict(const Instance& inst);

}  // namespace fcu
