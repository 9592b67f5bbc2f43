#include <doctest.h>

#include "support.hpp"

using namespace fcu;
using namespace fcu::test;

namespace {

// The defining identity at one triple, evaluated from scratch.
bool identity_holds(const Cocycle& l, const Triple& t) {
  const Group& G = l.group();
  const auto& [g, h, k] = t;
  return l(g, h) * l(G.mul(g, h), k) == l(h, k) * l(g, G.mul(h, k));
}

// Exponent polynomial of multidegree <= 2 in (u, v, w), in the binomial basis
// C(u, i) C(v, j) C(w, k); integer valued on Z^3.
struct BinomialPoly {
  std::int64_t c[3][3][3];
  static std::int64_t binom(std::int64_t x, int i) { return i == 0 ? 1 : i == 1 ? x : x * (x - 1) / 2; }
  std::int64_t operator()(std::int64_t u, std::int64_t v, std::int64_t w) const {
    std::int64_t s = 0;
    for (int i = 0; i < 3; ++i)
      for (int j = 0; j < 3; ++j)
        for (int k = 0; k < 3; ++k) s += c[i][j][k] * binom(u, i) * binom(v, j) * binom(w, k);
    return s;
  }
};

std::int64_t mod(std::int64_t a, std::int64_t m) { return ((a % m) + m) % m; }

}  // namespace

TEST_CASE("validate_cocycle examples") {
  auto C2 = table_group(small_groups::cyclic(2));
  auto K = gf(3);
  CHECK(validate_cocycle(Cocycle::trivial(C2, K)).valid);

  const Cocycle twisted = c2_twist(C2, K, 2);
  const auto ok = validate_cocycle(twisted);
  CHECK(ok.valid);
  CHECK(ok.triples_checked == 8);

  const Cocycle broken = torsion_cocycle(C2, K, {{{1, 1}, K->from_int(2)}, {{1, 0}, K->from_int(2)}});
  const auto bad = validate_cocycle(broken);
  REQUIRE_FALSE(bad.valid);
  CHECK(bad.reason == "identity");
  CHECK_FALSE(identity_holds(broken, *bad.counterexample));
  const GroupElement g = C2->torsion_element(1), e = C2->identity();
  CHECK_FALSE(identity_holds(broken, Triple{g, e, g}));
  // Lexicographically first failure.
  CHECK(*bad.counterexample == Triple{g, e, e});

  // Identity holds but lambda(1, 1) != 1.
  const Cocycle scaled = torsion_cocycle(C2, K, {{{0, 0}, K->from_int(2)}, {{0, 1}, K->from_int(2)},
                                                 {{1, 0}, K->from_int(2)}, {{1, 1}, K->from_int(2)}});
  const auto n = validate_cocycle(scaled);
  CHECK_FALSE(n.valid);
  CHECK(n.reason == "normalization");
}

TEST_CASE("structured cocycles reject zero values") {
  auto C2 = table_group(small_groups::cyclic(2));
  auto K = gf(3);
  CHECK_THROWS_WITH_AS(torsion_cocycle(C2, K, {{{1, 1}, K->zero()}}), doctest::Contains("ZeroValue"), Error);
  const Cocycle wild = Cocycle::from_function(C2, K, [K](const GroupElement&, const GroupElement&) { return K->zero(); });
  const auto r = validate_cocycle(wild);
  CHECK_FALSE(r.valid);
  CHECK(r.reason == "zero value");
}

TEST_CASE("coboundaries") {
  auto C2 = table_group(small_groups::cyclic(2));
  auto K = gf(3);
  const auto g = C2->torsion_element(1), e = C2->identity();
  const Cocycle one = coboundary(C2, K, [K](const GroupElement&) { return K->one(); });
  for (const auto& a : C2->elements())
    for (const auto& b : C2->elements()) CHECK(one(a, b).is_one());
  const Cocycle d = coboundary(C2, K, {K->one(), K->from_int(2)}, {});
  CHECK(d(g, g) == K->one());  // 2 * 2 / 1 = 4 = 1
  CHECK(d(g, e) == K->one());
  CHECK(validate_cocycle(d).valid);
  CHECK_THROWS_WITH_AS(coboundary(C2, K, {K->one(), K->zero()}, {}), doctest::Contains("ZeroValue"), Error);

  // A basis change w_g = mu_g^-1 u_g turns lambda into lambda * delta(mu^-1).
  auto C4 = table_group(small_groups::cyclic(4));
  auto F5 = gf(5);
  std::mt19937_64 rng(5);
  const Cocycle lam = random_cocycle(C4, F5, rng);
  std::vector<Scalar> mu = {F5->one(), F5->from_int(2), F5->from_int(3), F5->from_int(4)};
  std::vector<Scalar> mu_inv;
  for (const auto& m : mu) mu_inv.push_back(m.inv());
  const Cocycle changed = lam * coboundary(C4, F5, mu_inv, {});
  const auto A = TwistedGroupAlgebra::make(lam);
  for (const auto& a : C4->elements())
    for (const auto& b : C4->elements()) {
      const AlgebraElement wa = A->term(a, mu[a.torsion].inv()), wb = A->term(b, mu[b.torsion].inv());
      const auto ab = C4->mul(a, b);
      CHECK(wa * wb == A->term(ab, mu[ab.torsion].inv() * changed(a, b)));
    }
}

TEST_CASE("every coboundary is a cocycle") {
  std::mt19937_64 rng(17);
  std::vector<std::pair<GroupRef, FieldRef>> families = {
      {abelian({3}, 1), gf(7)},
      {heisenberg(2), gf(5)},
      {table_group(small_groups::symmetric(3)), gf(7)},
      {abelian({2, 2}, 2), rationals()},
  };
  for (const auto& [G, K] : families) {
    for (int i = 0; i < (K->is_finite() ? 100 : 10); ++i) {
      std::vector<Scalar> tv(G->torsion_order()), fv(G->rank());
      for (auto& v : tv) v = K->random_nonzero(rng);
      for (auto& v : fv) v = K->random_nonzero(rng);
      const Cocycle d = coboundary(G, K, tv, fv);
      CHECK(validate_cocycle(d, 1).valid);
    }
  }
}

TEST_CASE("lambda_g") {
  auto C2 = table_group(small_groups::cyclic(2));
  auto F3 = gf(3);
  CHECK(lambda_g(c2_twist(C2, F3, 2), C2->torsion_element(1)) == F3->from_int(2));
  CHECK(lambda_g(Cocycle::trivial(C2, F3), C2->torsion_element(1)).is_one());

  // C4 over GF(5) with tau(g, g) = 2, tau(g, g^2) = 3, tau(g, g^3) = 1: the
  // coboundary of c = (1, 1, 3, 1), tabulated.
  auto C4 = table_group(small_groups::cyclic(4));
  auto F5 = gf(5);
  const Cocycle d = coboundary(C4, F5, {F5->one(), F5->one(), F5->from_int(3), F5->one()}, {});
  std::vector<std::pair<std::pair<std::uint32_t, std::uint32_t>, Scalar>> cells;
  for (std::uint32_t a = 0; a < 4; ++a)
    for (std::uint32_t b = 0; b < 4; ++b) cells.push_back({{a, b}, d(C4->torsion_element(a), C4->torsion_element(b))});
  const Cocycle l = torsion_cocycle(C4, F5, cells);
  const GroupElement g = C4->torsion_element(1);
  CHECK(l(g, C4->torsion_element(1)) == F5->from_int(2));
  CHECK(l(g, C4->torsion_element(2)) == F5->from_int(3));
  CHECK(l(g, C4->torsion_element(3)) == F5->one());
  CHECK(lambda_g(l, g) == F5->one());
  const auto A = TwistedGroupAlgebra::make(l);
  CHECK(power(A->basis(g), 4) == A->one());

  auto H = heisenberg(2);
  CHECK_THROWS_WITH_AS(lambda_g(Cocycle::trivial(H, F3), H->free_generator(0)), doctest::Contains("InfiniteOrder"),
                       Error);
}

TEST_CASE("lambda_g equals u_g^n") {
  std::mt19937_64 rng(23);
  std::vector<std::pair<GroupRef, FieldRef>> families = {
      {abelian({6}), gf(7)},          {abelian({2, 4}), gf(5)},
      {table_group(small_groups::quaternion()), gf(3)}, {heisenberg(3, {2}), gf(7)},
      {abelian({4}, 1), rationals()},
  };
  for (const auto& [G, K] : families)
    for (int i = 0; i < 5; ++i) {
      const Cocycle l = random_cocycle(G, K, rng);
      const auto A = TwistedGroupAlgebra::make(l, 1);
      for (const auto& t : G->torsion_elements()) {
        const auto n = *G->element_order(t);
        CHECK(power(A->basis(t), n) == A->scalar(lambda_g(l, t)));
      }
    }
}

TEST_CASE("cohomologous cocycles") {
  std::mt19937_64 rng(29);
  auto G = abelian({4}, 1);
  auto K = gf(5);
  for (int i = 0; i < 20; ++i) {
    const Cocycle l = random_cocycle(G, K, rng);
    std::vector<Scalar> tv(4);
    for (auto& v : tv) v = K->random_nonzero(rng);
    tv[0] = K->one();
    const Cocycle m = l * coboundary(G, K, tv, {K->random_nonzero(rng)});
    CHECK(validate_cocycle(l, 2).valid == validate_cocycle(m, 2).valid);
    for (const auto& t : G->torsion_elements()) {
      const auto n = static_cast<std::int64_t>(*G->element_order(t));
      // delta mu contributes mu_g^n mu_{g^n}^-1 with g^n = 1.
      CHECK(lambda_g(m, t) == lambda_g(l, t) * tv[t.torsion].pow(n));
    }
  }
}

TEST_CASE("commutator_scalar") {
  auto H = heisenberg(2);
  auto F2 = gf(2);
  const Cocycle triv = Cocycle::trivial(H, F2);
  const auto e1 = H->free_generator(0), e2 = H->free_generator(1);
  CHECK(commutator_scalar(triv, e1, e2).is_one());
  const auto A = TwistedGroupAlgebra::make(triv);
  CHECK(unit_commutator(A->basis(e1), A->basis(e2)) == A->basis(H->torsion_element(1)));

  // C2 x C2 over GF(3) with tau(g, h) = 2, tau(h, g) = 1: a bicharacter.
  auto V = abelian({2, 2});
  auto F3 = gf(3);
  const std::uint32_t g = V->t_from_coords({1, 0}), h = V->t_from_coords({0, 1});
  std::vector<std::pair<std::pair<std::uint32_t, std::uint32_t>, Scalar>> cells;
  for (std::uint32_t a = 0; a < 4; ++a)
    for (std::uint32_t b = 0; b < 4; ++b)
      if (V->t_coords(a)[0] * V->t_coords(b)[1] % 2 == 1) cells.push_back({{a, b}, F3->from_int(2)});
  const Cocycle l = torsion_cocycle(V, F3, cells);
  REQUIRE(validate_cocycle(l).valid);
  const auto B = TwistedGroupAlgebra::make(l);
  const auto ug = B->basis(V->torsion_element(g)), uh = B->basis(V->torsion_element(h));
  const Scalar c = commutator_scalar(l, V->torsion_element(g), V->torsion_element(h));
  CHECK(c == F3->from_int(2));  // u_g u_h = 2 u_gh, u_h u_g = u_gh
  CHECK(unit_commutator(ug, uh) == B->scalar(c));

  std::mt19937_64 rng(31);
  for (auto G : {heisenberg(2, {3}), heisenberg(4), abelian({2, 2}, 1)}) {
    const Cocycle r = random_cocycle(G, gf(5), rng);
    const auto Ar = TwistedGroupAlgebra::make(r, 1);
    for (const auto& a : G->box(1))
      for (const auto& b : G->generators())
        CHECK(unit_commutator(Ar->basis(a), Ar->basis(b)) ==
              Ar->term(G->commutator(a, b), commutator_scalar(r, a, b)));
  }
}

TEST_CASE("condition4_set") {
  auto ZC3 = abelian({3}, 1);
  auto F7 = gf(7);
  CHECK(condition4_set(Cocycle::trivial(ZC3, F7), ZC3->free_generator(0)) == std::set<Scalar>{F7->one()});

  const Cocycle m = Cocycle::trivial(ZC3, F7) * coboundary(ZC3, F7, {F7->one(), F7->from_int(3), F7->from_int(2)},
                                                           {F7->one()});
  REQUIRE(validate_cocycle(m).valid);
  for (const auto& g : ZC3->box(1)) {
    const auto s = condition4_set(m, g);
    CHECK(s.size() <= 3);
    std::set<Scalar> brute;
    for (const auto& h : ZC3->torsion_elements()) {
      const auto hi = ZC3->inv(h);
      brute.insert(m(h, hi).inv() * m(hi, g) * m(ZC3->mul(hi, g), h));
    }
    CHECK(s == brute);
  }
  // g = 1 reduces to lambda_{h,h^-1}^-1 lambda_{h^-1,h}.
  std::set<Scalar> at_one;
  for (const auto& h : ZC3->torsion_elements()) at_one.insert(m(h, ZC3->inv(h)).inv() * m(ZC3->inv(h), h));
  CHECK(condition4_set(m, ZC3->identity()) == at_one);
}

TEST_CASE("is_symmetric_on_torsion") {
  auto ZC2 = abelian({2}, 2);
  auto F5 = gf(5);
  CHECK(is_symmetric_on_torsion(Cocycle::trivial(ZC2, F5)).symmetric);
  StructuredCocycle d;
  d.tau.assign(4, F5->one());
  d.zeta = F5->from_int(2);
  d.N = {{0, 1}, {0, 0}};
  const Cocycle bil = Cocycle::structured(ZC2, F5, d);
  CHECK(validate_cocycle(bil).valid);
  CHECK(is_symmetric_on_torsion(bil).symmetric);

  auto V = abelian({2, 2});
  auto F3 = gf(3);
  std::vector<std::pair<std::pair<std::uint32_t, std::uint32_t>, Scalar>> cells;
  for (std::uint32_t a = 0; a < 4; ++a)
    for (std::uint32_t b = 0; b < 4; ++b)
      if (V->t_coords(a)[0] * V->t_coords(b)[1] % 2 == 1) cells.push_back({{a, b}, F3->from_int(2)});
  const Cocycle l = torsion_cocycle(V, F3, cells);
  const auto s = is_symmetric_on_torsion(l);
  REQUIRE_FALSE(s.symmetric);
  CHECK(l(s.witness->first, s.witness->second) != l(s.witness->second, s.witness->first));
}

TEST_CASE("radius-3 boxes detect every nonzero exponent polynomial of multidegree 2") {
  std::mt19937_64 rng(37);
  std::uniform_int_distribution<int> coef(-3, 3), sparse(0, 3), pos(-1000, 1000);
  for (std::int64_t m : {0, 2, 3, 4, 6}) {
    for (int trial = 0; trial < 300; ++trial) {
      BinomialPoly P{};
      for (auto& a : P.c)
        for (auto& b : a)
          for (auto& x : b) x = sparse(rng) == 0 ? coef(rng) : 0;
      bool zero_on_box = true;
      for (int u = -3; u <= 3 && zero_on_box; ++u)
        for (int v = -3; v <= 3 && zero_on_box; ++v)
          for (int w = -3; w <= 3 && zero_on_box; ++w)
            zero_on_box = m ? mod(P(u, v, w), m) == 0 : P(u, v, w) == 0;
      if (!zero_on_box) continue;
      for (int i = 0; i < 50; ++i) {
        const std::int64_t u = pos(rng), v = pos(rng), w = pos(rng);
        CHECK((m ? mod(P(u, v, w), m) : P(u, v, w)) == 0);
      }
    }
  }
}

TEST_CASE("bilinear cocycles validate on the box and off it") {
  std::mt19937_64 rng(41);
  auto G = abelian({3}, 3);
  auto K = gf(7);
  for (int i = 0; i < 5; ++i) {
    const Cocycle l = random_cocycle(G, K, rng);
    CHECK(validate_cocycle(l, 1).valid);
    std::uniform_int_distribution<int> big(-50, 50), t(0, 2);
    for (int j = 0; j < 200; ++j) {
      Triple tr;
      for (auto& x : tr) x = G->make_element({big(rng), big(rng), big(rng)}, t(rng));
      CHECK(identity_holds(l, tr));
    }
  }
}
