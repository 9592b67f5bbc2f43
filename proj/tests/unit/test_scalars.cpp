#include <doctest.h>

#include <set>

#include "support.hpp"

using namespace fcu;
using namespace fcu::test;

namespace {

// Fields up to order 81 used by the exhaustive properties.
std::vector<FieldRef> small_fields() {
  return {gf(2),
          gf(3),
          gf(5),
          gf(7),
          gf4(),
          Field::make(FieldSpec::extension(2, {1, 1, 0, 1})),  // GF(8)
          gf9(),
          Field::make(FieldSpec::extension(2, {1, 1, 0, 0, 1})),  // GF(16)
          Field::make(FieldSpec::extension(5, {2, 0, 1})),        // GF(25)
          Field::make(FieldSpec::extension(3, {1, 2, 0, 1})),     // GF(27)
          Field::make(FieldSpec::extension(3, {2, 0, 0, 2, 1}))}; // GF(81)
}

// Polynomial with no root mod p, by exhaustion over GF(p).
bool has_root_mod_p(const std::vector<std::uint32_t>& c, std::uint32_t p) {
  for (std::uint32_t x = 0; x < p; ++x) {
    std::uint64_t v = 0;
    for (std::size_t i = c.size(); i-- > 0;) v = (v * x + c[i]) % p;
    if (v == 0) return true;
  }
  return false;
}

}  // namespace

TEST_CASE("make_field") {
  auto f3 = gf(3);
  CHECK(f3->order() == 3);
  CHECK(f3->characteristic() == 3);

  CHECK_FALSE(has_root_mod_p({1, 0, 1}, 3));
  auto f9 = gf9();
  CHECK(f9->order() == 9);
  CHECK(f9->degree() == 2);

  CHECK(Field::rationals()->characteristic() == 0);
  CHECK(gf(3) == gf(3));

  auto code_of = [](const FieldSpec& s) {
    try {
      Field::make(s);
    } catch (const Error& e) {
      return std::optional<ErrorCode>(e.code());
    }
    return std::optional<ErrorCode>();
  };
  CHECK(code_of(FieldSpec::prime(4)) == ErrorCode::NonPrimeCharacteristic);
  CHECK(code_of(FieldSpec::prime(1)) == ErrorCode::NonPrimeCharacteristic);
  CHECK(code_of(FieldSpec::extension(3, {2, 0, 1})) == ErrorCode::ReducibleModulus);  // x^2 - 1
  CHECK(code_of(FieldSpec::extension(2, {1, 0, 1})) == ErrorCode::ReducibleModulus);  // (x + 1)^2
  CHECK(code_of(FieldSpec::prime(65537)) == ErrorCode::FieldTooLarge);
}

TEST_CASE("arith") {
  auto f3 = gf(3);
  CHECK(f3->from_int(2).inv() == f3->from_int(2));
  CHECK(f3->from_int(-1) == f3->from_int(2));

  // x^8 over GF(9) by repeated squaring: x^2 = -1, x^4 = 1.
  auto f9 = gf9();
  const Scalar x = f9->generator();
  const Scalar x2 = x * x, x4 = x2 * x2, x8 = x4 * x4;
  CHECK(x2 == -f9->one());
  CHECK(x8 == f9->one());
  CHECK(x.pow(8) == f9->one());
  CHECK(f9->multiplicative_order(x) == 4u);
  CHECK(f9->multiplicative_order(f9->primitive_element()) == 8u);

  auto Q = rationals();
  CHECK(Q->from_rational(Rational(1, 2)) + Q->from_rational(Rational(1, 3)) == Q->from_rational(Rational(5, 6)));
  CHECK(Q->from_rational(Rational(2) / Rational(-4)).rational() == Rational(-1, 2));
  CHECK(Q->from_rational(Rational(6, 4)).to_string() == "3/2");
  CHECK(Q->multiplicative_order(Q->from_int(-1)) == 2u);
  CHECK_FALSE(Q->multiplicative_order(Q->from_int(2)).has_value());

  CHECK_THROWS_WITH_AS(f3->zero().inv(), doctest::Contains("DivisionByZero"), Error);
  CHECK_THROWS_WITH_AS(f3->one() + gf(5)->one(), doctest::Contains("FieldMismatch"), Error);
  CHECK_THROWS_AS(Q->zero().inv(), Error);
  CHECK(f3->from_int(2).pow(-1) == f3->from_int(2));
}

TEST_CASE("solve_power_equation") {
  auto f3 = gf(3);
  CHECK(solve_power_equation(*f3, 2, f3->from_int(2)).empty());
  CHECK(solve_power_equation(*f3, 2, f3->one()) == std::vector<Scalar>{f3->from_int(1), f3->from_int(2)});
  auto f7 = gf(7);
  const auto cube_roots = solve_power_equation(*f7, 3, f7->one());
  std::vector<Scalar> brute;
  for (const auto& a : f7->elements())
    if (a.pow(3) == f7->one()) brute.push_back(a);
  CHECK(cube_roots == brute);
  CHECK(brute == std::vector<Scalar>{f7->from_int(1), f7->from_int(2), f7->from_int(4)});

  auto Q = rationals();
  CHECK(solve_power_equation(*Q, 2, Q->from_int(4)) == std::vector<Scalar>{Q->from_int(-2), Q->from_int(2)});
  CHECK(solve_power_equation(*Q, 2, Q->from_rational(Rational(9, 4))).size() == 2);
  CHECK(solve_power_equation(*Q, 2, Q->from_int(2)).empty());
  CHECK(solve_power_equation(*Q, 1, Q->from_int(5)).size() == 1);
  CHECK_THROWS_WITH_AS(solve_power_equation(*Q, 3, Q->one()), doctest::Contains("UnsupportedRationalDegree"), Error);

  CHECK(has_primitive_root_of_unity(*gf(257), 256));
  CHECK_FALSE(has_primitive_root_of_unity(*gf(7), 4));
  CHECK(has_primitive_root_of_unity(*Q, 2));
  CHECK_FALSE(has_primitive_root_of_unity(*Q, 3));
}

TEST_CASE("inverse property, exhaustive up to order 81") {
  for (const auto& F : small_fields()) {
    CAPTURE(F->name());
    for (const auto& a : F->elements())
      if (!a.is_zero()) CHECK(a * a.inv() == F->one());
  }
  std::mt19937_64 rng(11);
  auto F = gf(257);
  for (int i = 0; i < 500; ++i) {
    const Scalar a = F->random_nonzero(rng);
    CHECK(a * a.inv() == F->one());
  }
  auto Q = rationals();
  for (int i = 0; i < 200; ++i) {
    const Scalar a = Q->random_nonzero(rng);
    CHECK(a * a.inv() == Q->one());
  }
}

TEST_CASE("power equations have at most n solutions") {
  for (const auto& F : small_fields())
    for (std::uint64_t n = 1; n <= 12; ++n)
      for (const auto& t : F->elements()) {
        const auto sols = solve_power_equation(*F, n, t);
        CHECK(sols.size() <= n);
        for (const auto& s : sols) CHECK(s.pow(static_cast<std::int64_t>(n)) == t);
      }
}

TEST_CASE("Frobenius is a bijection") {
  for (const auto& F : small_fields()) {
    std::set<Scalar> image;
    for (const auto& a : F->elements()) image.insert(a.pow(F->characteristic()));
    CHECK(image.size() == F->order());
  }
}

TEST_CASE("field axioms on random triples") {
  std::mt19937_64 rng(3);
  for (const auto& F : small_fields()) {
    for (int i = 0; i < 100; ++i) {
      const Scalar a = F->random(rng), b = F->random(rng), c = F->random(rng);
      CHECK((a + b) * c == a * c + b * c);
      CHECK((a * b) * c == a * (b * c));
      CHECK(a - a == F->zero());
    }
  }
}

TEST_CASE("coefficient round trip") {
  auto F = Field::make(FieldSpec::extension(3, {1, 2, 0, 1}));
  for (const auto& a : F->elements()) CHECK(F->from_coefficients(a.coefficients()) == a);
  CHECK_THROWS_AS(F->from_coefficients(std::vector<std::uint32_t>{3}), Error);
}
