#include "fcunits/poly.hpp"

#include <algorithm>
#include <functional>
#include <map>

namespace fcu {

Poly::Poly(const Field& f, std::vector<Scalar> coeffs) : field_(&f), c_(std::move(coeffs)) { trim(); }

Poly Poly::constant(const Scalar& c) { return Poly(*c.field(), {c}); }

Poly Poly::x(const Field& f) { return Poly(f, {f.zero(), f.one()}); }

Poly Poly::monomial(const Scalar& c, std::size_t degree) {
  std::vector<Scalar> v(degree + 1, c.field()->zero());
  v[degree] = c;
  return Poly(*c.field(), std::move(v));
}

void Poly::trim() {
  while (!c_.empty() && c_.back().is_zero()) c_.pop_back();
}

Poly Poly::operator+(const Poly& rhs) const {
  std::vector<Scalar> out(std::max(c_.size(), rhs.c_.size()), field_->zero());
  for (std::size_t i = 0; i < c_.size(); ++i) out[i] = c_[i];
  for (std::size_t i = 0; i < rhs.c_.size(); ++i) out[i] += rhs.c_[i];
  return Poly(*field_, std::move(out));
}

Poly Poly::operator-(const Poly& rhs) const { return *this + rhs * (-field_->one()); }

Poly Poly::operator*(const Poly& rhs) const {
  if (is_zero() || rhs.is_zero()) return Poly(*field_);
  std::vector<Scalar> out(c_.size() + rhs.c_.size() - 1, field_->zero());
  for (std::size_t i = 0; i < c_.size(); ++i) {
    if (c_[i].is_zero()) continue;
    for (std::size_t j = 0; j < rhs.c_.size(); ++j)
      if (!rhs.c_[j].is_zero()) out[i + j] += c_[i] * rhs.c_[j];
  }
  return Poly(*field_, std::move(out));
}

Poly Poly::operator*(const Scalar& s) const {
  std::vector<Scalar> out = c_;
  for (auto& c : out) c *= s;
  return Poly(*field_, std::move(out));
}

std::pair<Poly, Poly> Poly::divmod(const Poly& d) const {
  if (d.is_zero()) throw Error(ErrorCode::DivisionByZero, "polynomial division by zero");
  std::vector<Scalar> r = c_;
  if (c_.size() < d.c_.size()) return {Poly(*field_), *this};
  std::vector<Scalar> q(c_.size() - d.c_.size() + 1, field_->zero());
  const Scalar inv = d.lead().inv();
  for (std::size_t i = q.size(); i-- > 0;) {
    const Scalar c = r[i + d.c_.size() - 1] * inv;
    q[i] = c;
    if (c.is_zero()) continue;
    for (std::size_t j = 0; j < d.c_.size(); ++j) r[i + j] -= c * d.c_[j];
  }
  r.resize(d.c_.size() - 1, field_->zero());
  return {Poly(*field_, std::move(q)), Poly(*field_, std::move(r))};
}

Poly Poly::monic() const {
  if (is_zero()) return *this;
  return *this * lead().inv();
}

Poly Poly::derivative() const {
  if (c_.size() <= 1) return Poly(*field_);
  std::vector<Scalar> out;
  for (std::size_t i = 1; i < c_.size(); ++i) out.push_back(c_[i] * field_->from_int(static_cast<std::int64_t>(i)));
  return Poly(*field_, std::move(out));
}

Scalar Poly::eval(const Scalar& x) const {
  Scalar acc = field_->zero();
  for (std::size_t i = c_.size(); i-- > 0;) acc = acc * x + c_[i];
  return acc;
}

std::string Poly::to_string() const {
  if (is_zero()) return "0";
  std::string s;
  for (std::size_t i = c_.size(); i-- > 0;) {
    if (c_[i].is_zero()) continue;
    if (!s.empty()) s += " + ";
    s += "(" + c_[i].to_string() + ")";
    if (i > 0) s += "x^" + std::to_string(i);
  }
  return s;
}

Poly gcd(Poly a, Poly b) {
  while (!b.is_zero()) {
    Poly r = a % b;
    a = std::move(b);
    b = std::move(r);
  }
  return a.monic();
}

ExtGcd ext_gcd(const Poly& a, const Poly& b) {
  const Field& f = a.field();
  Poly r0 = a, r1 = b;
  Poly s0 = Poly::constant(f.one()), s1(f);
  Poly t0(f), t1 = Poly::constant(f.one());
  while (!r1.is_zero()) {
    auto [q, r] = r0.divmod(r1);
    r0 = std::move(r1);
    r1 = std::move(r);
    Poly s2 = s0 - q * s1, t2 = t0 - q * t1;
    s0 = std::move(s1);
    s1 = std::move(s2);
    t0 = std::move(t1);
    t1 = std::move(t2);
  }
  if (r0.is_zero()) return {r0, s0, t0};
  const Scalar inv = r0.lead().inv();
  return {r0 * inv, s0 * inv, t0 * inv};
}

Poly powmod(Poly base, BigInt e, const Poly& m) {
  Poly result = Poly::constant(m.field().one()) % m;
  base = base % m;
  while (e > 0) {
    if ((e & 1) != 0) result = (result * base) % m;
    base = (base * base) % m;
    e >>= 1;
  }
  return result;
}

// ---------------------------------------------------------------------------
// Finite fields

namespace {

bool ben_or(const Poly& f) {
  const Field& F = f.field();
  const int d = f.degree();
  if (d <= 0) return false;
  if (d == 1) return true;
  const Poly x = Poly::x(F);
  Poly h = x;
  for (int i = 1; i <= d / 2; ++i) {
    h = powmod(h, F.order(), f);
    if (gcd(f, h - x).degree() > 0) return false;
  }
  return true;
}

// Splits g, a product of distinct monic irreducibles of degree d.
void equal_degree(const Poly& g, int d, std::mt19937_64& rng, std::vector<Poly>& out) {
  if (g.degree() == d) {
    out.push_back(g.monic());
    return;
  }
  const Field& F = g.field();
  const std::uint32_t q = F.order();
  for (;;) {
    std::vector<Scalar> c;
    for (int i = 0; i < g.degree(); ++i) c.push_back(F.random(rng));
    Poly a(F, std::move(c));
    if (a.degree() <= 0) continue;
    Poly b;
    if (F.characteristic() == 2) {
      // Absolute trace a + a^2 + ... + a^(2^(k d - 1)).
      const int steps = static_cast<int>(F.degree()) * d;
      Poly t = a % g, acc = a % g;
      for (int i = 1; i < steps; ++i) {
        t = (t * t) % g;
        acc = acc + t;
      }
      b = acc;
    } else {
      BigInt e = 1;
      for (int i = 0; i < d; ++i) e *= q;
      e = (e - 1) / 2;
      b = powmod(a, e, g) - Poly::constant(F.one());
    }
    Poly h = gcd(g, b);
    if (h.degree() > 0 && h.degree() < g.degree()) {
      equal_degree(h, d, rng, out);
      equal_degree(g / h, d, rng, out);
      return;
    }
  }
}

}  // namespace

std::vector<Poly> factor_squarefree_finite(const Poly& input, std::mt19937_64& rng) {
  const Field& F = input.field();
  std::vector<Poly> out;
  Poly f = input.monic();
  if (f.degree() <= 0) return out;
  const Poly x = Poly::x(F);
  Poly h = x % f;
  for (int i = 1; f.degree() >= 2 * i; ++i) {
    h = powmod(h, F.order(), f);
    Poly g = gcd(f, h - x);
    if (g.degree() > 0) {
      equal_degree(g, i, rng, out);
      f = f / g;
      h = h % f;
    }
  }
  if (f.degree() > 0) out.push_back(f.monic());
  std::sort(out.begin(), out.end(), [](const Poly& a, const Poly& b) {
    if (a.degree() != b.degree()) return a.degree() < b.degree();
    return std::lexicographical_compare(a.coeffs().begin(), a.coeffs().end(), b.coeffs().begin(),
                                        b.coeffs().end());
  });
  return out;
}

namespace {

// p-th root of a polynomial in x^p over GF(p^k).
Poly pth_root(const Poly& f) {
  const Field& F = f.field();
  const std::uint32_t p = F.characteristic();
  std::vector<Scalar> c;
  const BigInt root_exp = BigInt(F.order()) / p;  // c^(q/p) is the p-th root
  for (int i = 0; i <= f.degree(); i += static_cast<int>(p)) c.push_back(f.coeff(i).pow(root_exp));
  return Poly(F, std::move(c));
}

void factor_finite_rec(const Poly& f, int mult, std::mt19937_64& rng, std::map<std::vector<Scalar>, std::pair<Poly, int>>& acc) {
  if (f.degree() <= 0) return;
  const Poly d = f.derivative();
  if (d.is_zero()) {
    factor_finite_rec(pth_root(f), mult * static_cast<int>(f.field().characteristic()), rng, acc);
    return;
  }
  // Factors of multiplicity divisible by p vanish from f/gcd(f, f'); they
  // survive in the leftover and are handled recursively.
  Poly g = gcd(f, d);
  Poly rest = f.monic();
  for (const auto& p : factor_squarefree_finite(f.monic() / g, rng)) {
    int m = 0;
    while (true) {
      auto [q, r] = rest.divmod(p);
      if (!r.is_zero()) break;
      rest = q;
      ++m;
    }
    auto& slot = acc[p.coeffs()];
    slot.first = p;
    slot.second += m * mult;
  }
  if (rest.degree() > 0) factor_finite_rec(rest, mult, rng, acc);
}

}  // namespace

std::vector<Scalar> roots(const Poly& f) {
  const Field& F = f.field();
  if (!F.is_finite()) throw Error(ErrorCode::Schema, "roots() is for finite fields");
  if (f.is_zero()) return F.elements();
  std::mt19937_64 rng(0x5eed);
  const Poly x = Poly::x(F);
  const Poly split = gcd(f, powmod(x, F.order(), f.monic()) - x);
  std::vector<Scalar> out;
  for (const auto& p : factor_squarefree_finite(split, rng)) out.push_back(-p.coeff(0));
  std::sort(out.begin(), out.end());
  return out;
}

// ---------------------------------------------------------------------------
// Rationals

namespace {

using IntPoly = std::vector<BigInt>;

void trim(IntPoly& f) {
  while (!f.empty() && f.back() == 0) f.pop_back();
}

BigInt mod_pos(const BigInt& a, const BigInt& m) {
  BigInt r = a % m;
  if (r < 0) r += m;
  return r;
}

IntPoly to_int_primitive(const Poly& f) {
  BigInt l = 1;
  for (const auto& c : f.coeffs()) l = boost::multiprecision::lcm(l, boost::multiprecision::denominator(c.rational()));
  IntPoly out;
  for (const auto& c : f.coeffs()) out.push_back(boost::multiprecision::numerator(c.rational()) * (l / boost::multiprecision::denominator(c.rational())));
  BigInt g = 0;
  for (const auto& c : out) g = boost::multiprecision::gcd(g, c);
  if (g != 0)
    for (auto& c : out) c /= g;
  if (!out.empty() && out.back() < 0)
    for (auto& c : out) c = -c;
  return out;
}

Poly from_int(const Field& Q, const IntPoly& f) {
  std::vector<Scalar> c;
  for (const auto& x : f) c.push_back(Q.from_rational(Rational(x)));
  return Poly(Q, std::move(c));
}

Poly reduce_mod_p(const Field& Fp, const IntPoly& f) {
  std::vector<Scalar> c;
  const BigInt p = Fp.characteristic();
  for (const auto& x : f) c.push_back(Fp.from_int(static_cast<std::int64_t>(mod_pos(x, p))));
  return Poly(Fp, std::move(c));
}

IntPoly lift_from_p(const Poly& f) {
  IntPoly out;
  for (const auto& c : f.coeffs()) out.push_back(c.index());
  return out;
}

IntPoly mul(const IntPoly& a, const IntPoly& b) {
  if (a.empty() || b.empty()) return {};
  IntPoly out(a.size() + b.size() - 1, 0);
  for (std::size_t i = 0; i < a.size(); ++i)
    for (std::size_t j = 0; j < b.size(); ++j) out[i + j] += a[i] * b[j];
  return out;
}

IntPoly mod_all(IntPoly f, const BigInt& m) {
  for (auto& c : f) c = mod_pos(c, m);
  trim(f);
  return f;
}

IntPoly sub(IntPoly a, const IntPoly& b) {
  if (a.size() < b.size()) a.resize(b.size(), 0);
  for (std::size_t i = 0; i < b.size(); ++i) a[i] -= b[i];
  trim(a);
  return a;
}

IntPoly add_scaled(IntPoly a, const IntPoly& b, const BigInt& s) {
  if (a.size() < b.size()) a.resize(b.size(), 0);
  for (std::size_t i = 0; i < b.size(); ++i) a[i] += b[i] * s;
  trim(a);
  return a;
}

// Lifts F = G*H (mod p) to mod p^a with G monic.
void hensel_two(const IntPoly& F, IntPoly& G, IntPoly& H, const Field& Fp, int a) {
  const BigInt p = Fp.characteristic();
  const Poly g = reduce_mod_p(Fp, G), h = reduce_mod_p(Fp, H);
  const ExtGcd eg = ext_gcd(g, h);  // s g + t h = 1
  BigInt pk = p;
  for (int k = 1; k < a; ++k) {
    const BigInt next = pk * p;
    IntPoly E = mod_all(sub(F, mul(G, H)), next);
    for (auto& c : E) c /= pk;
    const Poly e = reduce_mod_p(Fp, E);
    auto [Q, R] = (eg.t * e).divmod(g);
    const Poly Hd = eg.s * e + Q * h;
    G = mod_all(add_scaled(G, lift_from_p(R), pk), next);
    H = mod_all(add_scaled(H, lift_from_p(Hd), pk), next);
    pk = next;
  }
}

IntPoly symmetric(IntPoly f, const BigInt& m) {
  const BigInt half = m / 2;
  for (auto& c : f) {
    c = mod_pos(c, m);
    if (c > half) c -= m;
  }
  trim(f);
  return f;
}

IntPoly primitive_part(IntPoly f) {
  BigInt g = 0;
  for (const auto& c : f) g = boost::multiprecision::gcd(g, c);
  if (g != 0)
    for (auto& c : f) c /= g;
  if (!f.empty() && f.back() < 0)
    for (auto& c : f) c = -c;
  return f;
}

// Exact division over Z; nullopt if g does not divide f.
std::optional<IntPoly> divide_exact(const IntPoly& f, const IntPoly& g) {
  IntPoly r = f, q(f.size() >= g.size() ? f.size() - g.size() + 1 : 0, 0);
  if (f.size() < g.size()) return std::nullopt;
  for (std::size_t i = q.size(); i-- > 0;) {
    const BigInt& top = r[i + g.size() - 1];
    if (top % g.back() != 0) return std::nullopt;
    const BigInt c = top / g.back();
    q[i] = c;
    for (std::size_t j = 0; j < g.size(); ++j) r[i + j] -= c * g[j];
  }
  trim(r);
  if (!r.empty()) return std::nullopt;
  return q;
}

bool is_small_prime(std::uint32_t n) {
  if (n < 2) return false;
  for (std::uint32_t d = 2; d * d <= n; ++d)
    if (n % d == 0) return false;
  return true;
}

// Squarefree primitive integer polynomial of degree >= 2.
std::vector<IntPoly> zassenhaus(const IntPoly& f) {
  const int n = static_cast<int>(f.size()) - 1;
  const BigInt lc = f.back();
  std::mt19937_64 rng(0xfac7);
  // Pick the prime (among a handful of good ones) giving the fewest modular factors.
  std::uint32_t best_p = 0;
  std::vector<Poly> best_factors;
  int tried = 0;
  for (std::uint32_t p = 3; tried < 6 && p < 2000; p += 2) {
    if (!is_small_prime(p) || lc % p == 0) continue;
    FieldRef Fp = Field::prime(p);
    const Poly fp = reduce_mod_p(*Fp, f);
    if (gcd(fp, fp.derivative()).degree() > 0) continue;
    ++tried;
    auto facs = factor_squarefree_finite(fp, rng);
    if (best_p == 0 || facs.size() < best_factors.size()) {
      best_p = p;
      best_factors = std::move(facs);
    }
    if (best_factors.size() == 1) break;
  }
  if (best_factors.size() <= 1) return {f};
  FieldRef Fp = Field::prime(best_p);
  const BigInt p = best_p;

  BigInt maxc = 0;
  for (const auto& c : f) maxc = std::max(maxc, BigInt(boost::multiprecision::abs(c)));
  BigInt bound = BigInt(1) << n;
  bound *= (n + 1) * maxc * boost::multiprecision::abs(lc);
  int a = 1;
  BigInt pa = p;
  while (pa <= 2 * bound) {
    pa *= p;
    ++a;
  }

  // Lift all factors: peel one monic factor at a time off the remaining cofactor.
  std::vector<IntPoly> lifted;
  IntPoly rest_target = mod_all(f, pa);
  for (std::size_t i = 0; i + 1 < best_factors.size(); ++i) {
    IntPoly G = lift_from_p(best_factors[i]);
    Poly cof = reduce_mod_p(*Fp, rest_target) / best_factors[i];
    IntPoly H = lift_from_p(cof);
    hensel_two(rest_target, G, H, *Fp, a);
    lifted.push_back(G);
    rest_target = H;
  }
  {
    // The last factor is the remaining cofactor made monic mod p^a.
    BigInt inv_lead;
    const BigInt l = mod_pos(rest_target.back(), pa);
    // inverse of l mod p^a via extended Euclid
    BigInt r0 = l, r1 = pa, s0 = 1, s1 = 0;
    while (r1 != 0) {
      BigInt q = r0 / r1;
      BigInt t = r0 - q * r1;
      r0 = r1;
      r1 = t;
      t = s0 - q * s1;
      s0 = s1;
      s1 = t;
    }
    inv_lead = mod_pos(s0, pa);
    IntPoly last = rest_target;
    for (auto& c : last) c = mod_pos(c * inv_lead, pa);
    lifted.push_back(last);
  }

  std::vector<IntPoly> result;
  IntPoly cur = f;
  std::vector<IntPoly> pool = lifted;
  std::size_t s = 1;
  while (2 * s <= pool.size()) {
    bool found = false;
    std::vector<int> idx(s);
    for (std::size_t i = 0; i < s; ++i) idx[i] = static_cast<int>(i);
    const BigInt cur_lc = cur.back();
    while (true) {
      IntPoly cand{cur_lc};
      for (int i : idx) cand = mod_all(mul(cand, pool[i]), pa);
      cand = primitive_part(symmetric(cand, pa));
      if (auto q = divide_exact(cur, cand)) {
        result.push_back(cand);
        cur = *q;
        std::vector<IntPoly> next;
        for (std::size_t i = 0; i < pool.size(); ++i)
          if (std::find(idx.begin(), idx.end(), static_cast<int>(i)) == idx.end()) next.push_back(pool[i]);
        pool = std::move(next);
        found = true;
        break;
      }
      // next combination
      int i = static_cast<int>(s) - 1;
      while (i >= 0 && idx[i] == static_cast<int>(pool.size() - s) + i) --i;
      if (i < 0) break;
      ++idx[i];
      for (std::size_t j = i + 1; j < s; ++j) idx[j] = idx[j - 1] + 1;
    }
    if (!found) ++s;
  }
  if (cur.size() > 1) result.push_back(primitive_part(cur));
  return result;
}

}  // namespace

std::vector<Poly> factor_rational_distinct(const Poly& input) {
  const Field& Q = input.field();
  if (Q.is_finite()) throw Error(ErrorCode::Schema, "factor_rational_distinct needs Q");
  if (input.is_zero()) throw Error(ErrorCode::Schema, "cannot factor zero");
  if (input.degree() == 0) return {};
  const Poly g = gcd(input, input.derivative());
  const Poly sq = (input / g).monic();
  std::vector<Poly> out;
  if (sq.degree() == 1) {
    out.push_back(sq);
    return out;
  }
  for (const auto& ip : zassenhaus(to_int_primitive(sq))) out.push_back(from_int(Q, ip).monic());
  std::sort(out.begin(), out.end(), [](const Poly& a, const Poly& b) {
    if (a.degree() != b.degree()) return a.degree() < b.degree();
    return std::lexicographical_compare(a.coeffs().begin(), a.coeffs().end(), b.coeffs().begin(),
                                        b.coeffs().end());
  });
  return out;
}

std::vector<std::pair<Poly, int>> factor(const Poly& f) {
  if (f.is_zero()) throw Error(ErrorCode::Schema, "cannot factor zero");
  std::vector<std::pair<Poly, int>> out;
  const Field& F = f.field();
  if (F.is_finite()) {
    std::mt19937_64 rng(0x5eed);
    std::map<std::vector<Scalar>, std::pair<Poly, int>> acc;
    factor_finite_rec(f.monic(), 1, rng, acc);
    for (auto& [k, v] : acc) out.push_back(v);
  } else {
    for (const auto& p : factor_rational_distinct(f)) {
      int m = 0;
      Poly rest = f;
      while (true) {
        auto [q, r] = rest.divmod(p);
        if (!r.is_zero()) break;
        rest = q;
        ++m;
      }
      out.emplace_back(p, m);
    }
  }
  std::sort(out.begin(), out.end(), [](const auto& a, const auto& b) {
    if (a.first.degree() != b.first.degree()) return a.first.degree() < b.first.degree();
    return std::lexicographical_compare(a.first.coeffs().begin(), a.first.coeffs().end(),
                                        b.first.coeffs().begin(), b.first.coeffs().end());
  });
  return out;
}

bool is_irreducible(const Poly& f) {
  if (f.degree() <= 0) return false;
  if (f.field().is_finite()) return ben_or(f.monic());
  if (f.degree() == 1) return true;
  const Poly g = gcd(f, f.derivative());
  if (g.degree() > 0) return false;
  return factor_rational_distinct(f).size() == 1;
}

}  // namespace fcu
