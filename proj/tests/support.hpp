#pragma once

// Builders for the small instances used across the test suites.

#include <algorithm>
#include <numeric>
#include <random>
#include <string>
#include <vector>

#include "fcunits/algebra.hpp"
#include "fcunits/cocycles.hpp"
#include "fcunits/groups.hpp"
#include "fcunits/io.hpp"
#include "fcunits/scalars.hpp"

namespace fcu::test {

inline FieldRef gf(std::uint32_t p) { return Field::prime(p); }
inline FieldRef gf4() { return Field::make(FieldSpec::extension(2, {1, 1, 1})); }
inline FieldRef gf9() { return Field::make(FieldSpec::extension(3, {1, 0, 1})); }
inline FieldRef rationals() { return Field::rationals(); }

inline GroupRef table_group(std::vector<std::vector<std::uint32_t>> table) {
  GroupSpec s;
  s.kind = GroupSpec::Kind::Cayley;
  s.table = std::move(table);
  return Group::make(s);
}

inline GroupRef abelian(std::vector<std::uint32_t> invariants, std::uint32_t rank = 0) {
  GroupSpec s;
  s.kind = GroupSpec::Kind::CentralExtension;
  s.rank = rank;
  s.invariants = std::move(invariants);
  s.matrix.assign(rank, std::vector<std::int64_t>(rank, 0));
  return Group::make(s);
}

/// Z^2 with [e1, e2] = z, z of order `m` generating the torsion.
inline GroupRef heisenberg(std::uint32_t m, std::vector<std::uint32_t> extra = {}) {
  GroupSpec s;
  s.kind = GroupSpec::Kind::CentralExtension;
  s.rank = 2;
  s.invariants = {m};
  for (auto d : extra) s.invariants.push_back(d);
  s.target = 0;
  s.matrix = {{0, 1}, {0, 0}};
  return Group::make(s);
}

/// Finite table group times Z^rank.
inline GroupRef table_times_free(std::vector<std::vector<std::uint32_t>> table, std::uint32_t rank) {
  GroupSpec s;
  s.kind = GroupSpec::Kind::CentralExtension;
  s.rank = rank;
  s.table = std::move(table);
  s.matrix.assign(rank, std::vector<std::int64_t>(rank, 0));
  return Group::make(s);
}

inline GroupRef prufer_group(std::uint32_t q, std::uint32_t levels, std::uint32_t rank = 0) {
  GroupSpec s;
  s.kind = GroupSpec::Kind::CentralExtension;
  s.rank = rank;
  s.invariants = {};
  s.matrix.assign(rank, std::vector<std::int64_t>(rank, 0));
  s.prufer_q = q;
  s.prufer_levels = levels;
  return Group::make(s);
}

/// Torsion table that is 1 except tau(a, b) = v for the listed cells.
inline Cocycle torsion_cocycle(const GroupRef& G, const FieldRef& K,
                               const std::vector<std::pair<std::pair<std::uint32_t, std::uint32_t>, Scalar>>& cells,
                               Scalar zeta = {}, std::vector<std::vector<std::int64_t>> N = {}) {
  StructuredCocycle d;
  const std::uint32_t n = G->torsion_order();
  d.tau.assign(std::size_t{n} * n, K->one());
  for (const auto& [ab, v] : cells) d.tau[std::size_t{ab.first} * n + ab.second] = v;
  d.zeta = zeta.field() ? zeta : K->one();
  d.N = std::move(N);
  return Cocycle::structured(G, K, std::move(d));
}

/// lambda on C2 = {1, g} with u_g^2 = a.
inline Cocycle c2_twist(const GroupRef& G, const FieldRef& K, std::int64_t a) {
  return torsion_cocycle(G, K, {{{1, 1}, K->from_int(a)}});
}

/// A random cocycle: a random coboundary on the torsion indices times a
/// random bilinear part. For abelian torsion the table is also multiplied by
/// a random bicharacter, which is a cocycle that need not be a coboundary.
inline Cocycle random_cocycle(const GroupRef& G, const FieldRef& K, std::mt19937_64& rng) {
  const std::uint32_t n = G->torsion_order(), r = G->rank();
  std::vector<Scalar> mu(n);
  for (auto& m : mu) m = K->random_nonzero(rng);
  mu[0] = K->one();
  // With a nonzero pairing the torsion coordinate of a product picks up
  // z^beta, so only tables that ignore z are cocycles on G.
  const bool twisted_law = !G->pairing_is_zero();
  if (twisted_law) std::fill(mu.begin(), mu.end(), K->one());
  StructuredCocycle d;
  d.tau.resize(std::size_t{n} * n);
  for (std::uint32_t a = 0; a < n; ++a)
    for (std::uint32_t b = 0; b < n; ++b) d.tau[std::size_t{a} * n + b] = mu[a] * mu[b] / mu[G->t_mul(a, b)];
  if (!G->spec().invariants.empty() && K->is_finite()) {
    // Bicharacter chi(a, b) = prod_{i<j} w_ij^(a_i b_j) with w_ij^gcd(d_i, d_j) = 1.
    const auto& inv = G->spec().invariants;
    for (std::size_t i = 0; i < inv.size(); ++i)
      for (std::size_t j = i + 1; j < inv.size(); ++j) {
        if (twisted_law && (i == G->spec().target || j == G->spec().target)) continue;
        std::uint32_t g = std::gcd(inv[i], inv[j]);
        auto roots = solve_power_equation(*K, g, K->one());
        const Scalar w = roots[std::uniform_int_distribution<std::size_t>(0, roots.size() - 1)(rng)];
        for (std::uint32_t a = 0; a < n; ++a)
          for (std::uint32_t b = 0; b < n; ++b)
            d.tau[std::size_t{a} * n + b] *= w.pow(std::int64_t{G->t_coords(a)[i]} * G->t_coords(b)[j]);
      }
  }
  d.zeta = K->random_nonzero(rng);
  if (!K->is_finite()) d.zeta = K->from_int(std::uniform_int_distribution<int>(0, 1)(rng) ? 1 : -1);
  d.N.assign(r, std::vector<std::int64_t>(r, 0));
  for (std::uint32_t i = 0; i < r; ++i)
    for (std::uint32_t j = i + 1; j < r; ++j) d.N[i][j] = std::uniform_int_distribution<int>(-2, 2)(rng);
  return Cocycle::structured(G, K, std::move(d));
}

#ifdef FCUNITS_SOURCE_DIR
inline std::string instance_path(const std::string& name) {
  return std::string(FCUNITS_SOURCE_DIR) + "/instances/" + name + ".json";
}
inline InstanceFile instance_file(const std::string& name) { return parse_instance(read_json_file(instance_path(name))); }
inline Instance load_instance(const std::string& name, std::uint64_t seed = 0) {
  return build_instance(instance_file(name), seed);
}
#endif

}  // namespace fcu::test
