#include <doctest.h>

#include "fcunits/fc_analysis.hpp"
#include "support.hpp"

using namespace fcu;
using namespace fcu::test;

namespace {

const Condition& cond(const Verdict& v, const std::string& id) {
  for (const auto& c : v.conditions)
    if (c.id == id) return c;
  FAIL("no condition " << id);
  throw std::logic_error("unreachable");
}

bool passes(const Verdict& v, const std::string& id) {
  const auto& c = cond(v, id);
  return c.pass.has_value() && *c.pass;
}

}  // namespace

TEST_CASE("necessary_conditions") {
  const auto s3 = load_instance("s3_z_gf5");
  const auto viol = necessary_conditions(s3);
  REQUIRE(viol.size() == 1);
  CHECK(viol[0].id == "necessary-i");
  CHECK(viol[0].pass == false);
  const Group& G = s3.group();
  const auto a = decode_element(G, viol[0].witness["a"]["element"]);
  const auto b = decode_element(G, viol[0].witness["b"]["element"]);
  CHECK(G.mul(a, b) != G.mul(b, a));
  // ((12), (123)) is a noncommuting pair as well.
  const auto t12 = G.torsion_element(2), c123 = G.torsion_element(3);
  CHECK(G.mul(t12, c123) != G.mul(c123, t12));

  CHECK(necessary_conditions(make_instance("abelian", Cocycle::trivial(abelian({3}, 1), gf(7)))).empty());
  CHECK(necessary_conditions(load_instance("heisenberg_gf2")).empty());
  CHECK(necessary_conditions(load_instance("c3_z_q")).empty());

  // (ii): a primitive idempotent moved by a generator; (iii): torsion not central over Q.
  auto SZ = table_times_free(small_groups::symmetric(3), 1);
  const auto q = necessary_conditions(make_instance("s3q", Cocycle::trivial(SZ, rationals()), {1, 2, 0}));
  CHECK(q.front().id == "necessary-i");

  // lambda not symmetric on an abelian t(G).
  auto V = abelian({2, 2}, 1);
  auto F3 = gf(3);
  std::vector<std::pair<std::pair<std::uint32_t, std::uint32_t>, Scalar>> cells;
  for (std::uint32_t x = 0; x < 4; ++x)
    for (std::uint32_t y = 0; y < 4; ++y)
      if (V->t_coords(x)[0] * V->t_coords(y)[1] % 2 == 1) cells.push_back({{x, y}, F3->from_int(2)});
  const auto asym = necessary_conditions(make_instance("asym", torsion_cocycle(V, F3, cells)));
  REQUIRE_FALSE(asym.empty());
  CHECK(asym[0].detail == "lambda is not symmetric on t(G)");
}

TEST_CASE("check_theorem3") {
  for (const char* name : {"heisenberg_gf2", "heisenberg_gf4"}) {
    const auto v = check_theorem3(load_instance(name));
    CHECK(v.result == Verdict::Result::FC);
    CHECK(v.theorem == "T3");
    for (const char* id : {"fc", "1", "2", "3", "4"}) CHECK(passes(v, id));
    CHECK(cond(v, "1").witness["commutator_subgroup_order"] == 2);
    CHECK(cond(v, "2").witness["odd_part_order"] == 1);
  }
  const auto z3 = check_theorem3(load_instance("z3_commutator_gf3"));
  CHECK(z3.result == Verdict::Result::NotFC);
  CHECK(cond(z3, "1").pass == false);
  CHECK(cond(z3, "1").witness["commutator_subgroup_order"] == 3);
  CHECK(z3.evidence["first_failure"] == "1");

  CHECK_THROWS_WITH_AS(check_theorem3(load_instance("c3_z_q")), doctest::Contains("InapplicableCharacteristic"), Error);
  CHECK_THROWS_WITH_AS(check_theorem3(load_instance("c2_z_gf3_twisted")), doctest::Contains("InapplicableCharacteristic"),
                       Error);
  CHECK_THROWS_WITH_AS(check_theorem3(load_instance("prufer_gf257")), doctest::Contains("Inapplicable"), Error);
}

TEST_CASE("build_quotient_algebra") {
  const auto inst = load_instance("heisenberg_gf2");
  const auto Q = build_quotient_algebra(inst);
  CHECK(Q.mu_check.valid);
  CHECK(Q.ideal_square_zero);
  CHECK(Q.projection_multiplicative);
  CHECK(Q.pairs_checked == 200);
  CHECK(Q.mu_root.is_one());
  const Group& H = Q.target->group();
  CHECK(H.rank() == 2);
  CHECK(H.torsion_order() == 1);
  for (const auto& a : H.box(2))
    for (const auto& b : H.box(1)) CHECK(Q.mu()(a, b).is_one());

  // A central involution in C2 x Z over GF(2).
  auto CZ = abelian({2}, 1);
  const auto c2z = make_instance("c2z", Cocycle::trivial(CZ, gf(2)));
  const auto Q2 = build_quotient_algebra(c2z, CZ->torsion_element(1));
  CHECK(Q2.target->group().rank() == 1);
  CHECK(Q2.target->group().torsion_order() == 1);
  CHECK(Q2.mu_check.valid);
  CHECK(Q2.projection_multiplicative);
  for (const auto& a : Q2.target->group().box(2)) CHECK(Q2.mu()(a, a).is_one());

  // lambda(a, a) = w with w^2 + w + 1 = 0 over GF(4): mu_root = w^2.
  auto F4 = gf4();
  const Scalar w = F4->generator();
  const auto c2z4 = make_instance("c2z4", torsion_cocycle(CZ, F4, {{{1, 1}, w}}));
  const auto Q4 = build_quotient_algebra(c2z4, CZ->torsion_element(1));
  CHECK(Q4.mu_root * Q4.mu_root == w);
  CHECK(Q4.mu_root == w * w);
  CHECK(Q4.mu_check.valid);
  CHECK(Q4.ideal_square_zero);
  CHECK(Q4.projection_multiplicative);
  CHECK(Q4.project(c2z4.algebra->basis(CZ->torsion_element(1))) == Q4.target->scalar(Q4.mu_root));

  CHECK_THROWS_WITH_AS(build_quotient_algebra(load_instance("z3_commutator_gf3")), doctest::Contains("ConditionsNotMet"),
                       Error);
  CHECK_THROWS_WITH_AS(build_quotient_algebra(c2z, CZ->free_generator(0)), doctest::Contains("ConditionsNotMet"), Error);
}

TEST_CASE("check_theorem4") {
  const auto q = check_theorem4(load_instance("c3_z_q"));
  CHECK(q.result == Verdict::Result::FC);
  for (const char* id : {"fc", "1", "2", "3", "4"}) CHECK(passes(q, id));
  std::vector<std::size_t> dims;
  for (const auto& c : q.evidence["decomposition"]["components"]) dims.push_back(c["dimension"]);
  std::sort(dims.begin(), dims.end());
  CHECK(dims == std::vector<std::size_t>{1, 2});

  const auto t = check_theorem4(load_instance("c2_z_gf3_twisted"));
  CHECK(t.result == Verdict::Result::FC);
  REQUIRE(t.evidence["decomposition"]["components"].size() == 1);
  CHECK(t.evidence["decomposition"]["components"][0]["dimension"] == 2);
  CHECK(t.evidence["decomposition"]["components"][0]["is_field"] == true);
  CHECK(t.evidence["idempotent_count"] == 2);

  const auto s3 = load_instance("s3_z_gf5");
  const auto s = check_theorem4(s3);
  CHECK(s.result == Verdict::Result::NotFC);
  CHECK_FALSE(cond(s, "1").pass.has_value());
  CHECK(cond(s, "3").pass == false);
  const Group& G = s3.group();
  const auto a = decode_element(G, cond(s, "3").witness["a"]["element"]);
  const auto b = decode_element(G, cond(s, "3").witness["b"]["element"]);
  CHECK(G.mul(a, b) != G.mul(b, a));

  CHECK_THROWS_WITH_AS(check_theorem4(load_instance("heisenberg_gf2")), doctest::Contains("InapplicableCharacteristic"),
                       Error);

  // Idempotents of C2 x Z over GF(3) are central; over Q the u_t are central too.
  auto CZ = abelian({2}, 1);
  const auto v = check_theorem4(make_instance("c2z3", Cocycle::trivial(CZ, gf(3))));
  CHECK(v.result == Verdict::Result::FC);
  CHECK(v.evidence["idempotent_count"] == 4);
}

TEST_CASE("build_crossed_product") {
  const auto q = load_instance("c3_z_q");
  for (std::size_t comp = 0; comp < 2; ++comp) {
    const auto cp = build_crossed_product(q, comp);
    CHECK(cp.factor_set_identity);
    CHECK(cp.automorphism_identity);
    REQUIRE(cp.sigma.size() == 1);
    CHECK(cp.sigma[0].identity);
    // Trivial factor set: mu_{a,b} = e_q.
    const auto box = q.group().box(1);
    for (const auto& a : box)
      for (const auto& b : box)
        if (a.torsion == 0 && b.torsion == 0) CHECK(cp.factor(a, b) == cp.idempotent);
  }

  const auto t = load_instance("c2_z_gf3_twisted");
  const auto cp = build_crossed_product(t, 0);
  CHECK(cp.field_basis.size() == 2);
  CHECK(cp.factor_set_identity);
  REQUIRE(cp.sigma[0].frobenius_exponent.has_value());
  const std::uint32_t j = *cp.sigma[0].frobenius_exponent;
  CHECK(j < 2);
  // sigma agrees with the identified Frobenius power on F_q.
  for (const auto& x : cp.field_basis) {
    AlgebraElement y = x;
    for (std::uint32_t i = 0; i < j; ++i) y = power(y, 3);
    CHECK(cp.apply_sigma(t.group().free_generator(0), x) == y);
  }
  CHECK(cp.sigma[0].identity == (j == 0));

  // w_h alpha normal form.
  const auto c = t.group().free_generator(0);
  const auto nf = cp.unit_normal_form(cp.w(c) * cp.field_basis.back());
  REQUIRE(nf.has_value());
  CHECK(nf->first == c);
  CHECK(cp.w(nf->first) * nf->second == cp.w(c) * cp.field_basis.back());

  // Trivial H: the crossed product is F_q itself.
  const auto f = make_instance("finite", c2_twist(table_group(small_groups::cyclic(2)), gf(3), 2));
  const auto cf = build_crossed_product(f, 0);
  CHECK(cf.sigma.empty());
  CHECK(cf.field_basis.size() == 2);
  CHECK(cf.triples_checked == 1);
  CHECK(cf.factor_set_identity);

  CHECK_THROWS_WITH_AS(build_crossed_product(load_instance("s3_z_gf5"), 0), doctest::Contains("ConditionsNotMet"), Error);
}

TEST_CASE("check_theorem5_truncated") {
  const auto v = check_theorem5_truncated(load_instance("prufer_gf257"));
  CHECK(v.result == Verdict::Result::EvidenceOnly);
  CHECK(v.theorem == "T5-truncated");
  CHECK(passes(v, "chain"));
  CHECK(passes(v, "commutator-identity"));
  CHECK(cond(v, "3").witness["n"] == 9);
  CHECK(cond(v, "chain").witness["roots_of_unity_used"] == true);

  const auto w = check_theorem5_truncated(load_instance("prufer_gf7"));
  CHECK(w.result == Verdict::Result::EvidenceOnly);
  CHECK(cond(w, "3").witness["n"] == 2);
  CHECK(cond(w, "chain").witness["roots_of_unity_used"] == false);
  CHECK(passes(w, "chain"));

  // G' = 1: [u_a, u_b] = 1, so the identity holds for every pair.
  auto P = prufer_group(3, 2, 2);
  const auto triv = make_instance("p3", Cocycle::trivial(P, gf(7)));
  const auto t = check_theorem5_truncated(triv);
  CHECK(passes(t, "commutator-identity"));
  CHECK(cond(t, "commutator-identity").witness["cases"].get<int>() > 0);

  CHECK_THROWS_WITH_AS(check_theorem5_truncated(load_instance("heisenberg_gf2")), doctest::Contains("InapplicableTorsion"),
                       Error);
  const auto bad = make_instance("p2", Cocycle::trivial(prufer_group(2, 2), gf(2)));
  CHECK_THROWS_WITH_AS(check_theorem5_truncated(bad), doctest::Contains("InapplicableCharacteristic"), Error);
}

TEST_CASE("commutator_order_check") {
  const auto ab = make_instance("ab", Cocycle::trivial(abelian({3}, 2), gf(7)));
  const auto r = commutator_order_check(ab, ab.group().free_generator(0), ab.group().free_generator(1));
  CHECK(r.scalar.is_one());
  CHECK(r.group_order == 1);
  CHECK(r.equal);

  const auto h = load_instance("heisenberg_gf2");
  const auto e1 = h.group().free_generator(0), e2 = h.group().free_generator(1);
  const auto s = commutator_order_check(h, e1, e2);
  CHECK(s.group_order == 2);
  CHECK(s.unit_order == 2u);
  CHECK(s.equal);

  // zeta^(u_1 v_2) with zeta = -1 over GF(5): [u_a, u_b] = -u_z.
  auto H = heisenberg(2);
  auto F5 = gf(5);
  StructuredCocycle d;
  d.tau.assign(4, F5->one());
  d.zeta = F5->from_int(-1);
  d.N = {{0, 1}, {0, 0}};
  const auto tw = make_instance("tw", Cocycle::structured(H, F5, d));
  const auto t = commutator_order_check(tw, e1, e2);
  CHECK(t.scalar == F5->from_int(-1));
  CHECK(t.group_order == 2);
  // Independent order of the algebra commutator by repeated multiplication.
  const auto c = unit_commutator(tw.algebra->basis(e1), tw.algebra->basis(e2));
  std::uint64_t order = 1;
  for (AlgebraElement p = c; p != tw.algebra->one(); p = p * c) ++order;
  CHECK(t.unit_order == order);
  CHECK(order == 2);
  CHECK(t.equal);

  // Over GF(5) with zeta = 2 the commutator u-order is 2 * ord(4) = 4 > 2.
  d.zeta = F5->from_int(2);
  const auto tw2 = make_instance("tw2", Cocycle::structured(H, F5, d));
  const auto t2 = commutator_order_check(tw2, e1, e2);
  CHECK(t2.unit_order == 4u);
  CHECK_FALSE(t2.equal);
}

TEST_CASE("probe_conjugates") {
  const auto h = load_instance("heisenberg_gf2");
  const auto& A = *h.algebra;
  const auto units = default_probe_units(h, 6);
  const auto central = probe_conjugates(h, A.basis(h.group().torsion_element(1)), units, 6);
  CHECK(central.orbit.size() == 1);
  CHECK(central.stabilized);
  CHECK(central.stabilized_at == 0u);

  const auto ua = A.basis(h.group().free_generator(0));
  const auto p = probe_conjugates(h, ua, units, 6);
  CHECK(p.stabilized);
  REQUIRE(p.orbit.size() == 2);
  const auto uz = A.basis(h.group().torsion_element(1));
  CHECK(std::find(p.orbit.begin(), p.orbit.end(), ua) != p.orbit.end());
  CHECK(std::find(p.orbit.begin(), p.orbit.end(), ua * uz) != p.orbit.end());

  const auto z3 = load_instance("z3_commutator_gf3");
  const auto zu = default_probe_units(z3, 6);
  const auto g = probe_conjugates(z3, z3.algebra->basis(z3.group().free_generator(0)), zu, 6);
  CHECK_FALSE(g.stabilized);
  for (std::size_t i = 1; i < g.size_per_depth.size(); ++i) CHECK(g.size_per_depth[i] > g.size_per_depth[i - 1]);

  CHECK_THROWS_WITH_AS(probe_conjugates(h, A.one() + uz, units, 2), doctest::Contains("NotUnit"), Error);
  CHECK_THROWS_WITH_AS(probe_conjugates(h, ua, units, 13), doctest::Contains("CapExceeded"), Error);

  const auto small = probe_conjugates(z3, z3.algebra->basis(z3.group().free_generator(0)), zu, 12, 50);
  CHECK(small.hit_cap);
  CHECK_FALSE(small.stabilized);

  // Trivial units alone leave u_a's orbit in u_a u_z^k.
  const auto triv = probe_conjugates(z3, z3.algebra->basis(z3.group().free_generator(0)),
                                     default_probe_units(z3, 6, true), 6);
  CHECK(triv.stabilized);
  CHECK(triv.orbit.size() == 3);
}

TEST_CASE("verdict dispatch") {
  const auto h = verdict(load_instance("heisenberg_gf2"));
  CHECK(h.result == Verdict::Result::FC);
  CHECK(h.theorem == "T3");
  const auto q = verdict(load_instance("c3_z_q"));
  CHECK(q.result == Verdict::Result::FC);
  CHECK(q.theorem == "T4");
  const auto s = verdict(load_instance("s3_z_gf5"));
  CHECK(s.result == Verdict::Result::NotFC);
  CHECK(s.theorem == "necessary-only");
  CHECK_FALSE(s.conditions.front().witness.is_null());
  const auto p = verdict(load_instance("prufer_gf257"));
  CHECK(p.result == Verdict::Result::EvidenceOnly);
  const auto f = verdict(load_instance("gf3_c2"));
  CHECK(f.result == Verdict::Result::Inapplicable);
  // Prufer 2-part in characteristic 2.
  const auto bad = verdict(make_instance("p2", Cocycle::trivial(prufer_group(2, 2, 1), gf(2))));
  CHECK(bad.result == Verdict::Result::Inapplicable);

  for (const auto& v : {h, q, s, p, f, bad}) {
    bool reading = false;
    for (const auto& n : v.notes) reading = reading || n.find("h ranging over t(G)") != std::string::npos;
    CHECK(reading);
  }
  for (const auto& o : h.evidence["orbits"]) CHECK(o["stabilized"] == true);
}

TEST_CASE("verdicts do not depend on the seed") {
  for (const char* name : {"s3_z_gf5", "z3_commutator_gf3", "heisenberg_gf2", "c2_z_gf3_twisted"}) {
    const auto a = verdict(load_instance(name, 1)).to_json();
    const auto b = verdict(load_instance(name, 987654321)).to_json();
    CHECK(a == b);
  }
}

TEST_CASE("FC via T3 implies a good quotient; FC via T4 a good crossed product") {
  for (const char* name : {"heisenberg_gf2", "heisenberg_gf4"}) {
    const auto inst = load_instance(name);
    REQUIRE(verdict(inst).result == Verdict::Result::FC);
    const auto Q = build_quotient_algebra(inst);
    CHECK(Q.ideal_square_zero);
    CHECK(Q.projection_multiplicative);
    CHECK(Q.mu_check.valid);
  }
  for (const char* name : {"c3_z_q", "c2_z_gf3_twisted"}) {
    const auto inst = load_instance(name);
    REQUIRE(verdict(inst).result == Verdict::Result::FC);
    const auto S = span_subalgebra(inst.algebra, inst.torsion());
    for (std::size_t i = 0; i < primitive_idempotents(S.alg).size(); ++i)
      CHECK(build_crossed_product(inst, i).factor_set_identity);
  }
}

TEST_CASE("instances reject invalid cocycles") {
  auto C2 = table_group(small_groups::cyclic(2));
  auto F3 = gf(3);
  const auto broken = torsion_cocycle(C2, F3, {{{1, 0}, F3->from_int(2)}});
  CHECK_THROWS_WITH_AS(make_instance("broken", broken), doctest::Contains("InvalidCocycle"), Error);
}
