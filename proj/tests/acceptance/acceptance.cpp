// Acceptance run: one PASS/FAIL line per criterion, exit status 1 on any FAIL.

#include <chrono>
#include <cstdio>
#include <functional>
#include <iostream>
#include <map>
#include <set>

#include "fcunits/fc_analysis.hpp"
#include "fcunits/oracle.hpp"
#include "fcunits/structure.hpp"
#include "support.hpp"

using namespace fcu;
using namespace fcu::test;

namespace {

struct Outcome {
  bool ok = true;
  std::string why;
  std::string summary;

  void require(bool cond, const std::string& msg) {
    if (!cond && ok) {
      ok = false;
      why = msg;
    }
  }
};

Json golden(const std::string& file) { return read_json_file(std::string(FCUNITS_SOURCE_DIR) + "/tests/golden/" + file); }

const Condition* find_condition(const Verdict& v, const std::string& id) {
  for (const auto& c : v.conditions)
    if (c.id == id) return &c;
  return nullptr;
}

bool condition_passes(const Verdict& v, const std::string& id) {
  const Condition* c = find_condition(v, id);
  return c && c->pass.has_value() && *c->pass;
}

GroupElement random_free(const Group& G, int radius, std::mt19937_64& rng, bool nonzero) {
  std::uniform_int_distribution<int> d(-radius, radius);
  for (;;) {
    GroupElement g = G.identity();
    for (std::uint32_t i = 0; i < G.rank(); ++i) g.free[i] = d(rng);
    if (!nonzero || !g.free_is_zero()) return g;
  }
}

template <class T>
const T& pick(const std::vector<T>& v, std::mt19937_64& rng) {
  return v[std::uniform_int_distribution<std::size_t>(0, v.size() - 1)(rng)];
}

// Independent recheck of a reported counterexample triple.
bool triple_violates(const Cocycle& lam, const Triple& t) {
  const Group& G = lam.group();
  const auto& [g, h, k] = t;
  if (lam(g, h) * lam(G.mul(g, h), k) != lam(h, k) * lam(g, G.mul(h, k))) return true;
  const GroupElement e = G.identity();
  return !lam(e, e).is_one() || !lam(g, e).is_one() || !lam(e, g).is_one();
}

// 1. Random torsion-table x bilinear cocycles validate; single-entry
// mutations of the torsion table are caught.
Outcome cocycle_validity() {
  Outcome out;
  struct Family {
    std::string name;
    GroupRef G;
    FieldRef K;
    int radius;
  };
  const std::vector<Family> families = {
      {"C4 x Z^2 / GF(5)", abelian({4}, 2), gf(5), 1},
      {"C2 x C6 x Z / GF(7)", abelian({2, 6}, 1), gf(7), 1},
      {"S3 x Z^2 / GF(4)", table_times_free(small_groups::symmetric(3), 2), gf4(), 1},
      {"Heisenberg(3) x C3 / GF(7)", heisenberg(3, {3}), gf(7), 1},
      {"C3 x Z / Q", abelian({3}, 1), rationals(), 1},
  };
  std::mt19937_64 rng(101);
  std::size_t valid = 0, caught = 0;
  for (const auto& f : families) {
    const std::uint32_t n = f.G->torsion_order();
    for (int i = 0; i < 100; ++i) {
      const Cocycle c = random_cocycle(f.G, f.K, rng);
      const CocycleCheck ok = validate_cocycle(c, f.radius);
      out.require(ok.valid, f.name + ": random cocycle rejected (" + ok.reason + ")");
      valid += ok.valid;

      StructuredCocycle d = *c.structured_data();
      const std::size_t cell = std::uniform_int_distribution<std::size_t>(0, std::size_t{n} * n - 1)(rng);
      Scalar m;
      do {
        m = f.K->is_finite() ? f.K->random_nonzero(rng) : f.K->from_int(std::uniform_int_distribution<int>(2, 9)(rng));
      } while (m.is_one());
      d.tau[cell] *= m;
      const Cocycle bad = Cocycle::structured(f.G, f.K, d);
      const CocycleCheck chk = validate_cocycle(bad, f.radius);
      const bool found = !chk.valid && chk.counterexample && triple_violates(bad, *chk.counterexample);
      out.require(found, f.name + ": mutation of cell " + std::to_string(cell) + " not caught");
      caught += found;
    }
  }
  out.summary = std::to_string(valid) + "/500 valid, " + std::to_string(caught) + "/500 mutations caught";
  return out;
}

// 2. u_g - alpha is a unit exactly when alpha^n != lambda_g.
Outcome lemma3_suite() {
  Outcome out;
  const auto gf8 = Field::make(FieldSpec::extension(2, {1, 1, 0, 1}));
  const auto gf16 = Field::make(FieldSpec::extension(2, {1, 1, 0, 0, 1}));
  const auto gf25 = Field::make(FieldSpec::extension(5, {2, 0, 1}));
  const auto gf27 = Field::make(FieldSpec::extension(3, {1, 2, 0, 1}));
  const auto gf49 = Field::make(FieldSpec::extension(7, {1, 0, 1}));
  const auto gf81 = Field::make(FieldSpec::extension(3, {2, 0, 0, 2, 1}));
  using small_groups::cyclic;
  const std::vector<std::pair<GroupRef, FieldRef>> instances = {
      {table_group(cyclic(2)), gf(3)},
      {table_group(cyclic(3)), gf(2)},
      {abelian({4}), gf(5)},
      {abelian({5}), gf(11)},
      {table_group(cyclic(6)), gf(7)},
      {abelian({7}), gf8},
      {abelian({8}), gf9()},
      {abelian({9}), gf4()},
      {abelian({10}), gf(11)},
      {abelian({11}), gf(23)},
      {abelian({12}), gf(13)},
      {abelian({2, 2}), gf(3)},
      {table_group(small_groups::symmetric(3)), gf(5)},
      {table_group(small_groups::dihedral(4)), gf(3)},
      {table_group(small_groups::quaternion()), gf(7)},
      {abelian({2, 6}), gf25},
      {abelian({3, 3}), gf27},
      {abelian({4}, 1), gf81},
      {heisenberg(4), gf16},
      {table_times_free(small_groups::symmetric(3), 1), gf49},
  };
  std::mt19937_64 rng(202);
  std::size_t checked = 0, singular = 0;
  for (const auto& [G, K] : instances) {
    const auto A = TwistedGroupAlgebra::make(random_cocycle(G, K, rng), 1);
    const auto elems = K->elements();
    for (const auto& g : G->torsion_elements()) {
      const std::uint64_t n = *G->element_order(g);
      if (n > 12) continue;
      const AlgebraElement ug = A->basis(g);
      // lambda_g read off u_g^n directly.
      const Scalar lg = power(ug, n).coeff(G->identity());
      std::size_t bad = 0;
      for (const auto& alpha : elems) {
        const Lemma3Result r = lemma3_unit(*A, g, alpha);
        const AlgebraElement x = ug - A->scalar(alpha);
        ++checked;
        if (alpha.pow(static_cast<std::int64_t>(n)) != lg) {
          out.require(r.invertible && r.inverse && x * *r.inverse == A->one() && *r.inverse * x == A->one(),
                      K->name() + ": u_g - alpha not inverted for g = " + G->format(g));
        } else {
          ++bad;
          // (u_g - alpha) sum_i alpha^i u_g^(n-1-i) = u_g^n - alpha^n = 0.
          AlgebraElement s = A->zero();
          for (std::uint64_t i = 0; i < n; ++i) s = s * ug + A->scalar(alpha.pow(static_cast<std::int64_t>(i)));
          out.require(!r.invertible && (x * s).is_zero() && !s.is_zero(),
                      K->name() + ": expected a zero divisor for g = " + G->format(g));
        }
      }
      out.require(bad <= n, K->name() + ": more than n non-invertible values");
      singular += bad;
    }
  }
  out.summary = std::to_string(instances.size()) + " instances, " + std::to_string(checked) + " (g, alpha) pairs, " +
                std::to_string(singular) + " non-invertible";
  return out;
}

// 3. K_lambda W is semisimple when char K does not divide |W|.
Outcome maschke() {
  Outcome out;
  using namespace small_groups;
  const std::vector<std::pair<std::string, GroupRef>> groups = {
      {"C1", table_group({{0}})},
      {"C2", abelian({2})},
      {"C3", abelian({3})},
      {"C4", abelian({4})},
      {"C5", abelian({5})},
      {"C6", abelian({6})},
      {"C7", abelian({7})},
      {"C8", abelian({8})},
      {"C2^2", abelian({2, 2})},
      {"C2 x C4", abelian({2, 4})},
      {"C2^3", abelian({2, 2, 2})},
      {"S3", table_group(symmetric(3))},
      {"D4", table_group(dihedral(4))},
      {"Q8", table_group(quaternion())},
  };
  const std::vector<FieldRef> fields = {gf(2), gf(3), gf(5), rationals()};
  std::mt19937_64 rng(303);
  std::size_t runs = 0;
  for (const auto& [name, G] : groups)
    for (const auto& K : fields) {
      if (K->characteristic() != 0 && G->torsion_order() % K->characteristic() == 0) continue;
      for (int i = 0; i < 20; ++i) {
        const auto A = TwistedGroupAlgebra::make(random_cocycle(G, K, rng), 1);
        const auto S = span_subalgebra(A, G->torsion_elements());
        const auto rad = jacobson_radical(S.alg);
        out.require(rad.basis.empty(), name + " over " + K->name() + ": nonzero radical");
        out.require(rad.certified(), name + " over " + K->name() + ": radical not certified");
        ++runs;
      }
    }
  const auto C2 = table_group(cyclic(2));
  const auto A = TwistedGroupAlgebra::make(Cocycle::trivial(C2, gf(2)));
  const auto rad = jacobson_radical(span_subalgebra(A, C2->torsion_elements()).alg);
  out.require(rad.basis.size() == 1, "GF(2)C2: radical dimension " + std::to_string(rad.basis.size()));
  out.summary = std::to_string(runs) + " semisimple algebras, dim J(GF(2)C2) = " + std::to_string(rad.basis.size());
  return out;
}

// 4. Exhaustive counts for GF(3)_lambda C2.
Outcome oracle_agreement() {
  Outcome out;
  const auto tw = instance_file("gf3_c2_twisted");
  const auto inst = build_instance(tw);
  const auto oc = oracle_enumerate(tw.group, inst.cocycle());
  out.require(oc.units == 8 && oc.idempotents == 2 && oc.radical_dimension == 0, "twisted counts differ");
  const auto S = span_subalgebra(inst.algebra, inst.torsion());
  const auto fd = fields_decomposition(S.alg);
  const auto& comps = fd.decomposition.components;
  out.require(fd.is_sum_of_fields && comps.size() == 1 && comps[0].dimension == 2 && comps[0].is_field,
              "decomposition is not a single GF(9)");
  out.require(oracle_report(inst, tw)["agree"] == true, "oracle report disagrees");

  const auto tr = instance_file("gf3_c2");
  const auto ot = oracle_enumerate(tr.group, build_instance(tr).cocycle());
  out.require(ot.units == 4 && ot.idempotents == 4, "trivial-cocycle counts differ");
  out.summary = "twisted |U| = " + std::to_string(oc.units) + ", idempotents " + std::to_string(oc.idempotents) +
                ", radical " + std::to_string(oc.radical_dimension) + "; trivial |U| = " + std::to_string(ot.units) +
                ", idempotents " + std::to_string(ot.idempotents);
  return out;
}

bool matches_golden(const std::string& name, const Verdict& v) {
  return golden(name + ".verdict.json").at("result") == v.to_json();
}

// 5. Theorem 3 verdicts.
Outcome theorem3() {
  Outcome out;
  for (const char* name : {"heisenberg_gf2", "heisenberg_gf4"}) {
    const Verdict v = verdict(load_instance(name));
    out.require(v.result == Verdict::Result::FC && v.theorem == "T3", std::string(name) + ": not FC via T3");
    for (const char* id : {"1", "2", "3", "4"})
      out.require(condition_passes(v, id), std::string(name) + ": condition " + id + " not witnessed");
    out.require(matches_golden(name, v), std::string(name) + ": golden mismatch");
  }
  const Verdict z = verdict(load_instance("z3_commutator_gf3"));
  const Condition* c1 = find_condition(z, "1");
  out.require(z.result == Verdict::Result::NotFC && c1 && c1->pass == false, "z3: not NotFC on condition 1");
  out.require(matches_golden("z3_commutator_gf3", z), "z3: golden mismatch");
  out.summary = "Heisenberg GF(2), GF(4) FC; Z3 control NotFC at condition 1";
  return out;
}

// 6. Theorem 4 verdicts.
Outcome theorem4() {
  Outcome out;
  const Verdict q = verdict(load_instance("c3_z_q"));
  std::multiset<std::size_t> dims;
  for (const auto& c : q.evidence["decomposition"]["components"]) {
    dims.insert(c["dimension"].get<std::size_t>());
    out.require(c["is_field"] == true, "c3_z_q: component is not a field");
  }
  out.require(q.result == Verdict::Result::FC && q.theorem == "T4", "c3_z_q: not FC via T4");
  out.require(dims == std::multiset<std::size_t>{1, 2}, "c3_z_q: components are not Q + Q(w)");
  out.require(matches_golden("c3_z_q", q), "c3_z_q: golden mismatch");

  const Verdict t = verdict(load_instance("c2_z_gf3_twisted"));
  const auto& tc = t.evidence["decomposition"]["components"];
  out.require(t.result == Verdict::Result::FC && tc.size() == 1 && tc[0]["dimension"] == 2 && tc[0]["is_field"] == true,
              "c2_z_gf3_twisted: not FC with a single GF(9)");
  out.require(matches_golden("c2_z_gf3_twisted", t), "c2_z_gf3_twisted: golden mismatch");

  const auto s3 = load_instance("s3_z_gf5");
  const Verdict s = verdict(s3);
  out.require(s.result == Verdict::Result::NotFC, "s3_z_gf5: not NotFC");
  if (!s.conditions.empty()) {
    const Json& w = s.conditions.front().witness;
    const Group& G = s3.group();
    const auto a = decode_element(G, w.at("a").at("element"));
    const auto b = decode_element(G, w.at("b").at("element"));
    out.require(G.element_order(a) && G.element_order(b) && G.mul(a, b) != G.mul(b, a),
                "s3_z_gf5: witness is not a noncommuting torsion pair");
  }
  out.require(matches_golden("s3_z_gf5", s), "s3_z_gf5: golden mismatch");
  out.summary = "C3 x Z / Q = Q + Q(w), C2 x Z / GF(3) = GF(9) * Z, S3 x Z / GF(5) NotFC";
  return out;
}

AlgebraElement random_element(const TwistedGroupAlgebra& A, const std::vector<GroupElement>& pool, std::mt19937_64& rng,
                              int terms) {
  AlgebraElement x = A.zero();
  for (int i = 0; i < terms; ++i) x = x + A.term(pick(pool, rng), A.field().random(rng));
  return x;
}

// 7. The quotient of the Heisenberg algebra.
Outcome quotient() {
  Outcome out;
  const auto inst = load_instance("heisenberg_gf2");
  const auto& A = *inst.algebra;
  const QuotientAlgebra Q = build_quotient_algebra(inst);
  const Group& H = Q.target->group();
  out.require(H.rank() == 2 && H.torsion_order() == 1 && !H.has_prufer(), "target group is not Z^2");
  out.require(Q.mu_check.valid && validate_cocycle(Q.lambda, 3).valid, "quotient cocycle invalid");
  out.require(Q.pairs_checked == 200 && Q.projection_multiplicative, "built-in multiplicativity check failed");

  std::mt19937_64 rng(707);
  const auto pool = inst.group().box(2);
  std::size_t pairs = 0;
  for (int i = 0; i < 200; ++i) {
    const auto x = random_element(A, pool, rng, 4), y = random_element(A, pool, rng, 4);
    out.require(Q.project(x * y) == Q.project(x) * Q.project(y), "projection not multiplicative on " + x.to_string());
    ++pairs;
  }
  const AlgebraElement gen = A.basis(Q.a) - A.scalar(Q.mu_root);
  out.require((gen * gen).is_zero() && !gen.is_zero(), "ideal generator does not square to 0");
  out.require(Q.ideal_square_zero, "built-in square-zero check failed");
  out.require(Q.project(gen).is_zero(), "ideal generator not in the kernel");
  out.summary = "cocycle on Z^2 valid, " + std::to_string(pairs) + " random pairs multiplicative, (u_a - r)^2 = 0";
  return out;
}

const std::vector<std::string> kBundled = {"gf3_c2",         "gf3_c2_twisted",    "gf2_s3",
                                           "heisenberg_gf2", "heisenberg_gf4",    "z3_commutator_gf3",
                                           "c3_z_q",         "c2_z_gf3_twisted",  "s3_z_gf5",
                                           "prufer_gf7",     "prufer_gf257"};

// 8. Crossed products of T4-certified instances.
Outcome crossed_product() {
  Outcome out;
  std::mt19937_64 rng(808);
  std::size_t instances = 0, inverted = 0;
  for (const auto& name : kBundled) {
    const auto inst = load_instance(name);
    const Verdict v = verdict(inst);
    if (!(v.result == Verdict::Result::FC && v.theorem == "T4")) continue;
    ++instances;
    const auto& A = *inst.algebra;
    const auto S = span_subalgebra(inst.algebra, inst.torsion());
    InvertContext ctx;
    std::vector<CrossedProduct> comps;
    for (const auto& e : primitive_idempotents(S.alg)) ctx.central_idempotents.push_back(S.to_element(e));
    for (std::size_t i = 0; i < ctx.central_idempotents.size(); ++i) {
      comps.push_back(build_crossed_product(inst, i));
      out.require(comps.back().factor_set_identity, name + ": factor-set identity fails on component " +
                                                        std::to_string(i));
      out.require(comps.back().automorphism_identity, name + ": automorphism identity fails");
    }
    for (int k = 0; k < 50; ++k) {
      AlgebraElement x = A.zero();
      for (const auto& cp : comps) {
        AlgebraElement alpha = A.zero();
        while (alpha.is_zero())
          for (const auto& b : cp.field_basis) alpha = alpha + b * A.field().random(rng);
        x = x + alpha * A.basis(random_free(inst.group(), 2, rng, true));
      }
      if (x.terms().size() < 2) {
        --k;
        continue;
      }
      const InverseResult r = try_invert(x, &ctx);
      const bool ok = r.status == InverseResult::Status::Unit && r.strategy == "idempotent-components" &&
                      *r.inverse * x == A.one() && x * *r.inverse == A.one();
      out.require(ok, name + ": not inverted by components: " + x.to_string());
      inverted += ok;
    }
  }
  out.require(instances == 2, "expected two T4-certified bundled instances");
  out.summary = std::to_string(instances) + " instances, " + std::to_string(inverted) + " component inversions";
  return out;
}

// 9. Prufer chain over GF(257).
Outcome prufer_chain() {
  Outcome out;
  const auto inst = load_instance("prufer_gf257");
  const auto& A = *inst.algebra;
  const Group& G = inst.group();
  const PruferChain pc = prufer_idempotent_chain(A, 4);
  out.require(pc.idempotents.size() == 4, "chain does not have 4 levels");
  const auto& e = pc.idempotents;
  for (std::size_t k = 0; k < e.size(); ++k) {
    out.require(is_idempotent(e[k]) && !e[k].is_zero(), "e_" + std::to_string(k + 1) + " is not a nonzero idempotent");
    // e_k absorbs the unit it averages over.
    const GroupElement a = G.prufer_element(1, static_cast<std::uint32_t>(k + 1));
    out.require(e[k] * (A.basis(a) * pc.roots[k]) == e[k], "e_" + std::to_string(k + 1) + " does not absorb its unit");
    if (k + 1 < e.size()) out.require(e[k] * e[k + 1] == e[k + 1], "e_k e_{k+1} != e_{k+1}");
  }
  std::size_t identities = 0;
  const auto box = G.box(1, 4);
  std::mt19937_64 rng(909);
  for (std::size_t i = 0; i < e.size(); ++i)
    for (std::size_t j = i + 1; j < e.size(); ++j)
      for (int s = 0; s < 10; ++s) {
        const auto c = unit_commutator(A.basis(pick(box, rng)), A.basis(pick(box, rng)));
        out.require(((e[i] - e[j]) * (A.one() - c)).is_zero(), "(f_i - f_j)(1 - [u_a, u_b]) != 0");
        ++identities;
      }
  const Verdict v = check_theorem5_truncated(inst);
  out.require(condition_passes(v, "chain") && condition_passes(v, "commutator-identity"), "T5 evidence fails");
  out.summary = "levels 1-4 nested, " + std::to_string(identities) + " commutator identities";
  return out;
}

struct Unit {
  AlgebraElement x, inv;
};

Unit mul(const Unit& a, const Unit& b) { return {a.x * b.x, b.inv * a.inv}; }

bool unipotent(const AlgebraElement& c) {
  const AlgebraElement n = c - c.algebra().one();
  AlgebraElement p = n;
  for (int k = 1; k <= 64; ++k) {
    if (p.is_zero()) return true;
    p = p * n;
  }
  return p.is_zero();
}

// 10. Commutators and orbit probes in FC-certified instances.
Outcome shadows() {
  Outcome out;
  std::mt19937_64 rng(1010);
  std::size_t instances = 0, orbits = 0;
  for (const auto& name : kBundled) {
    const auto inst = load_instance(name);
    if (verdict(inst).result != Verdict::Result::FC) continue;
    ++instances;
    const auto& A = *inst.algebra;
    const Group& G = inst.group();
    const Field& K = A.field();

    // Pool: trivial units over box(1), units of K_lambda t(G), probe units.
    std::vector<Unit> pool;
    for (const auto& g : G.box(1)) {
      const auto a = K.is_finite() ? K.random_nonzero(rng) : K.from_int(std::uniform_int_distribution<int>(1, 3)(rng));
      const auto u = A.term(g, a);
      pool.push_back({u, *try_invert(u).inverse});
    }
    const auto tor = inst.torsion();
    for (int i = 0; i < 20; ++i) {
      const auto x = random_element(A, tor, rng, 3);
      const auto r = try_invert(x);
      if (r.status == InverseResult::Status::Unit) pool.push_back({x, *r.inverse});
    }
    for (const auto& p : default_probe_units(inst, 6)) pool.push_back({p.unit, p.inverse});
    auto random_unit = [&] {
      Unit u = pick(pool, rng);
      for (int i = std::uniform_int_distribution<int>(0, 2)(rng); i > 0; --i) u = mul(u, pick(pool, rng));
      return u;
    };

    std::vector<AlgebraElement> comms;
    for (int i = 0; i < 100; ++i) {
      const Unit a = random_unit(), b = random_unit();
      const AlgebraElement c = a.inv * b.inv * a.x * b.x;
      out.require(unipotent(c), name + ": commutator not unipotent: " + c.to_string());
      comms.push_back(c);
    }
    const std::uint32_t p = K.characteristic();
    if (p == 0 || G.torsion_order() % p != 0)
      for (std::size_t i = 0; i < comms.size(); ++i)
        for (std::size_t j = i + 1; j < comms.size(); ++j)
          out.require(comms[i] * comms[j] == comms[j] * comms[i], name + ": commutators do not commute");
    for (int i = 0; i < 50; ++i) {
      const Unit v = random_unit();
      for (const auto& c : comms) out.require(c * v.x == v.x * c, name + ": commutator not central in the sample");
    }

    const auto units = default_probe_units(inst, 6);
    for (const auto& g : G.box(1)) {
      const OrbitProbe o = probe_conjugates(inst, A.basis(g), units, 6);
      out.require(o.stabilized && o.stabilized_at && *o.stabilized_at <= 6,
                  name + ": orbit of u_" + G.format(g) + " not stable by depth 6");
      ++orbits;
    }
  }
  out.require(instances == 4, "expected four FC-certified bundled instances");
  out.summary = std::to_string(instances) + " instances, 100 commutators each, " + std::to_string(orbits) +
                " stable orbits";
  return out;
}

}  // namespace

int main() {
  struct Criterion {
    const char* title;
    double limit_s;
    std::function<Outcome()> run;
  };
  const std::vector<Criterion> criteria = {
      {"cocycle validity", 10, cocycle_validity}, {"lemma 3 suite", 30, lemma3_suite},
      {"maschke", 60, maschke},                   {"oracle agreement", 5, oracle_agreement},
      {"theorem 3 verdicts", 10, theorem3},       {"theorem 4 verdicts", 10, theorem4},
      {"quotient", 10, quotient},                 {"crossed product", 30, crossed_product},
      {"prufer chain", 30, prufer_chain},         {"commutators and orbits", 60, shadows},
  };
  int failures = 0;
  for (std::size_t i = 0; i < criteria.size(); ++i) {
    const auto& c = criteria[i];
    const auto t0 = std::chrono::steady_clock::now();
    Outcome o;
    try {
      o = c.run();
    } catch (const std::exception& e) {
      o.ok = false;
      o.why = std::string("exception: ") + e.what();
    }
    const double s = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    if (o.ok && s > c.limit_s) {
      o.ok = false;
      o.why = "took " + std::to_string(s) + " s";
    }
    char head[64];
    std::snprintf(head, sizeof head, "%-4s %2zu %-24s %7.2fs  ", o.ok ? "PASS" : "FAIL", i + 1, c.title, s);
    std::cout << head << (o.ok ? o.summary : o.why) << std::endl;
    failures += !o.ok;
  }
  return failures == 0 ? 0 : 1;
}
