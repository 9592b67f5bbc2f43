#pragma once

/**
 * @file groups.hpp
 * @brief The supported group families in one representation.
 *
 * Every group is Z^r x_beta T x Pr where T is a finite group (abelian
 * invariants or a Cayley table), Pr is an optional Prufer q-group, and
 * beta twists the product of free parts into a designated central element z
 * of T:
 *
 *     (u, a, p)(v, b, p') = (u + v, a b z^beta(u,v), p + p'),
 *     beta(u, v) = sum_{i<j} M_ij u_i v_j.
 *
 * A Cayley-table group is the case r = 0 without a Prufer part.
 */

#include <array>
#include <compare>
#include <cstdint>
#include <functional>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "fcunits/error.hpp"

namespace fcu {

inline constexpr std::size_t kMaxRank = 4;
inline constexpr std::uint32_t kMaxTorsionOrder = 64;
/// Prufer elements are num / q^level with q^level kept below 2^62.
inline constexpr std::uint64_t kMaxPruferDenominator = std::uint64_t{1} << 62;

struct PruferPart {
  std::uint32_t level = 0;  // reduced: num is coprime to q unless num = level = 0
  std::uint64_t num = 0;
  auto operator<=>(const PruferPart&) const = default;
};

/// Trivially copyable; the defaulted ordering is the lexicographic order of
/// encodings used for coset representatives.
struct GroupElement {
  std::array<std::int64_t, kMaxRank> free{};
  std::uint32_t torsion = 0;
  PruferPart prufer{};
  auto operator<=>(const GroupElement&) const = default;
  bool free_is_zero() const {
    for (auto x : free)
      if (x != 0) return false;
    return true;
  }
};

struct GroupSpec {
  enum class Kind { Cayley, CentralExtension };
  Kind kind = Kind::Cayley;
  std::uint32_t rank = 0;
  /// Abelian torsion part Z_{d1} x ... x Z_{dm}; used when `table` is empty.
  std::vector<std::uint32_t> invariants;
  /// Torsion part as a Cayley table with identity 0.
  std::vector<std::vector<std::uint32_t>> table;
  /// For invariants: index of the generator z. For a table: element index.
  std::uint32_t target = 0;
  std::vector<std::vector<std::int64_t>> matrix;  // r x r, strictly upper triangular
  std::uint32_t prufer_q = 0;                     // 0: no Prufer part
  std::uint32_t prufer_levels = 0;
};

struct CenterDescription {
  std::vector<GroupElement> generators;
  /// The free part of the center: {u : (M - M^T) u = 0 mod ord(z)}.
  std::vector<std::array<std::int64_t, kMaxRank>> free_lattice_generators;
  bool is_whole_group = false;
  std::string description;
};

struct FcCertificate {
  bool is_fc = true;
  std::uint64_t class_size_bound = 1;
  std::string reason;
};

class Group;
using GroupRef = std::shared_ptr<const Group>;

struct QuotientMap;

class Group {
 public:
  /// Validates the spec (InvalidGroup on failure).
  static GroupRef make(const GroupSpec& spec);

  const GroupSpec& spec() const { return spec_; }
  std::uint32_t rank() const { return spec_.rank; }
  std::uint32_t torsion_order() const { return n_; }
  bool has_prufer() const { return spec_.prufer_q != 0; }
  std::uint32_t prufer_q() const { return spec_.prufer_q; }
  std::uint32_t prufer_levels() const { return spec_.prufer_levels; }
  bool is_finite() const { return spec_.rank == 0 && !has_prufer(); }
  bool torsion_is_abelian() const { return torsion_abelian_; }
  bool pairing_is_zero() const { return pairing_zero_; }
  /// The designated commutator target z as a torsion index.
  std::uint32_t target_element() const { return z_; }

  GroupElement identity() const { return {}; }
  GroupElement mul(const GroupElement& a, const GroupElement& b) const;
  GroupElement inv(const GroupElement& a) const;
  GroupElement pow(const GroupElement& a, std::int64_t e) const;
  /// a^-1 b^-1 a b by the group law.
  GroupElement commutator(const GroupElement& a, const GroupElement& b) const;
  /// z^(u^T (M - M^T) v) times the torsion commutator; ignores the group law.
  GroupElement commutator_closed_form(const GroupElement& a, const GroupElement& b) const;
  bool equal(const GroupElement& a, const GroupElement& b) const { return a == b; }

  /// nullopt when the free part is nonzero.
  std::optional<std::uint64_t> element_order(const GroupElement& a) const;
  bool is_torsion(const GroupElement& a) const { return a.free_is_zero(); }

  /// Throws GroupMismatch when `a` is not an element of this group.
  void check(const GroupElement& a) const;

  GroupElement free_generator(std::size_t i) const;
  GroupElement torsion_element(std::uint32_t index) const;
  GroupElement prufer_element(std::uint64_t num, std::uint32_t level) const;
  GroupElement make_element(std::array<std::int64_t, kMaxRank> u, std::uint32_t torsion,
                            PruferPart p = {}) const;

  // Torsion part T.
  std::uint32_t t_mul(std::uint32_t a, std::uint32_t b) const { return table_[a * n_ + b]; }
  std::uint32_t t_inv(std::uint32_t a) const { return inv_[a]; }
  std::uint32_t t_order(std::uint32_t a) const { return order_[a]; }
  /// Coordinates of a torsion index for the invariant form.
  std::vector<std::uint32_t> t_coords(std::uint32_t a) const;
  std::uint32_t t_from_coords(const std::vector<std::uint32_t>& c) const;

  /// All finite torsion elements up to the given Prufer level
  /// (T x C_{q^level}); sorted.
  std::vector<GroupElement> torsion_elements(std::uint32_t prufer_level = 0) const;
  /// G' as an explicit finite subgroup of t(G), sorted.
  std::vector<GroupElement> commutator_subgroup() const;
  std::vector<GroupElement> commutator_generators() const;
  bool is_central(const GroupElement& g) const;
  CenterDescription center() const;
  FcCertificate is_fc() const;

  /// Generating set: free generators, a generating set of T, and the
  /// Prufer element 1/q^level.
  std::vector<GroupElement> generators(std::uint32_t prufer_level = 1) const;
  /// Free coordinates in [-R, R]^r times torsion_elements(level).
  std::vector<GroupElement> box(int radius, std::uint32_t prufer_level = 0) const;
  /// Every element (finite groups only).
  std::vector<GroupElement> elements() const;

  /// Subgroup generated by `gens`, sorted. Throws SubgroupTooLarge past `cap`.
  std::vector<GroupElement> closure(const std::vector<GroupElement>& gens,
                                    std::size_t cap = kMaxTorsionOrder) const;

  /// Least element of the left coset g S for a finite subgroup S.
  GroupElement coset_rep(const GroupElement& g, const std::vector<GroupElement>& subgroup) const;
  /// Representative (u, 0) of g t(G).
  GroupElement torsion_coset_rep(const GroupElement& g) const;
  /// Coset representatives of the finite subgroup generated by `gens`. Lists
  /// every coset for finite G, otherwise the cosets meeting box(radius).
  /// Throws InfiniteIndexUnsupported for generators of infinite order.
  std::vector<GroupElement> coset_reps(const std::vector<GroupElement>& gens, int radius = 1) const;

  /// G / C for a finite central subgroup C of T.
  QuotientMap quotient_by(const std::vector<GroupElement>& central_subgroup) const;

  std::string format(const GroupElement& g) const;

 private:
  explicit Group(GroupSpec spec);
  std::int64_t beta(const GroupElement& a, const GroupElement& b) const;
  std::uint32_t z_pow(std::int64_t k) const;
  PruferPart prufer_add(PruferPart a, PruferPart b) const;
  PruferPart prufer_neg(PruferPart a) const;
  PruferPart prufer_reduce(std::uint64_t num, std::uint32_t level) const;

  GroupSpec spec_;
  std::uint32_t n_ = 1;
  std::vector<std::uint32_t> table_, inv_, order_;
  std::vector<std::uint32_t> radix_;  // invariants for the coordinate form
  std::uint32_t z_ = 0;
  std::vector<std::uint32_t> z_powers_;
  bool torsion_abelian_ = true;
  bool pairing_zero_ = true;
  std::int64_t pairing_gcd_ = 0;
};

struct QuotientMap {
  const Group* source = nullptr;  // not owned
  GroupRef target;
  std::vector<std::uint32_t> class_of;  // torsion index -> class index in target
  std::vector<std::uint32_t> class_rep;  // class index -> least torsion index
  std::vector<GroupElement> kernel;

  GroupElement project(const GroupElement& g) const;
  /// The least element of the preimage coset.
  GroupElement lift(const GroupElement& h) const;
};

/// Cayley tables of some small finite groups, used by tests and examples.
namespace small_groups {
std::vector<std::vector<std::uint32_t>> cyclic(std::uint32_t n);
std::vector<std::vector<std::uint32_t>> direct_product(const std::vector<std::vector<std::uint32_t>>& a,
                                                       const std::vector<std::vector<std::uint32_t>>& b);
/// Symmetric group S_n (n <= 4) with elements ordered by permutation rank;
/// index 0 is the identity.
std::vector<std::vector<std::uint32_t>> symmetric(std::uint32_t n);
std::vector<std::vector<std::uint32_t>> dihedral(std::uint32_t n);  // order 2n
std::vector<std::vector<std::uint32_t>> quaternion();
}  // namespace small_groups

}  // namespace fcu
