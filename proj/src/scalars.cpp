#include "fcunits/scalars.hpp"

#include <algorithm>
#include <map>
#include <mutex>
#include <numeric>
#include <sstream>

namespace fcu {

std::string_view to_string(ErrorCode code) {
  switch (code) {
    case ErrorCode::NonPrimeCharacteristic: return "NonPrimeCharacteristic";
    case ErrorCode::ReducibleModulus: return "ReducibleModulus";
    case ErrorCode::FieldTooLarge: return "FieldTooLarge";
    case ErrorCode::DivisionByZero: return "DivisionByZero";
    case ErrorCode::FieldMismatch: return "FieldMismatch";
    case ErrorCode::UnsupportedRationalDegree: return "UnsupportedRationalDegree";
    case ErrorCode::InvalidGroup: return "InvalidGroup";
    case ErrorCode::GroupMismatch: return "GroupMismatch";
    case ErrorCode::InfiniteOrder: return "InfiniteOrder";
    case ErrorCode::InfiniteIndexUnsupported: return "InfiniteIndexUnsupported";
    case ErrorCode::ZeroValue: return "ZeroValue";
    case ErrorCode::InvalidCocycle: return "InvalidCocycle";
    case ErrorCode::AlgebraMismatch: return "AlgebraMismatch";
    case ErrorCode::SupportNotInSubgroup: return "SupportNotInSubgroup";
    case ErrorCode::CharacteristicDividesOrder: return "CharacteristicDividesOrder";
    case ErrorCode::NotAGroupSection: return "NotAGroupSection";
    case ErrorCode::NotUnit: return "NotUnit";
    case ErrorCode::MissingRootOfUnity: return "MissingRootOfUnity";
    case ErrorCode::CharacteristicEqualsQ: return "CharacteristicEqualsQ";
    case ErrorCode::SubgroupTooLarge: return "SubgroupTooLarge";
    case ErrorCode::DimensionTooLarge: return "DimensionTooLarge";
    case ErrorCode::NotCommutative: return "NotCommutative";
    case ErrorCode::TooLargeToCount: return "TooLargeToCount";
    case ErrorCode::IdealNotNilpotent: return "IdealNotNilpotent";
    case ErrorCode::InapplicableCharacteristic: return "InapplicableCharacteristic";
    case ErrorCode::InapplicableTorsion: return "InapplicableTorsion";
    case ErrorCode::NoSquareRoot: return "NoSquareRoot";
    case ErrorCode::ConditionsNotMet: return "ConditionsNotMet";
    case ErrorCode::CapExceeded: return "CapExceeded";
    case ErrorCode::Schema: return "Schema";
  }
  return "Unknown";
}

namespace {

bool is_prime(std::uint32_t n) {
  if (n < 2) return false;
  for (std::uint32_t d = 2; d * d <= n; ++d)
    if (n % d == 0) return false;
  return true;
}

using SmallPoly = std::vector<std::uint32_t>;  // over GF(p), constant first

void trim(SmallPoly& f) {
  while (!f.empty() && f.back() == 0) f.pop_back();
}

std::uint32_t inv_mod(std::uint32_t a, std::uint32_t p) {
  std::uint64_t result = 1, base = a % p;
  for (std::uint32_t e = p - 2; e; e >>= 1) {
    if (e & 1) result = result * base % p;
    base = base * base % p;
  }
  return static_cast<std::uint32_t>(result);
}

// f mod g over GF(p); g nonzero.
SmallPoly poly_rem(SmallPoly f, SmallPoly g, std::uint32_t p) {
  trim(f);
  trim(g);
  const std::uint32_t lead_inv = inv_mod(g.back(), p);
  while (f.size() >= g.size()) {
    const std::uint64_t c = std::uint64_t{f.back()} * lead_inv % p;
    const std::size_t shift = f.size() - g.size();
    for (std::size_t i = 0; i < g.size(); ++i)
      f[shift + i] = static_cast<std::uint32_t>((f[shift + i] + p - c * g[i] % p) % p);
    trim(f);
  }
  return f;
}

bool has_factor_of_degree(const SmallPoly& f, std::uint32_t d, std::uint32_t p) {
  // Enumerate monic polynomials of degree d.
  std::uint64_t count = 1;
  for (std::uint32_t i = 0; i < d; ++i) count *= p;
  SmallPoly g(d + 1, 0);
  g[d] = 1;
  for (std::uint64_t code = 0; code < count; ++code) {
    std::uint64_t c = code;
    for (std::uint32_t i = 0; i < d; ++i) {
      g[i] = static_cast<std::uint32_t>(c % p);
      c /= p;
    }
    if (poly_rem(f, g, p).empty()) return true;
  }
  return false;
}

std::string spec_key(const FieldSpec& s) {
  std::ostringstream out;
  if (s.kind == FieldSpec::Kind::Rationals) return "Q";
  out << s.p << '^' << s.k;
  if (s.k > 1)
    for (auto c : s.modulus) out << ',' << c;
  return out.str();
}

std::mutex& registry_mutex() {
  static std::mutex m;
  return m;
}

std::map<std::string, FieldRef>& registry() {
  static std::map<std::string, FieldRef> r;
  return r;
}

}  // namespace

// ---------------------------------------------------------------------------
// Field

FieldRef Field::make(const FieldSpec& raw) {
  FieldSpec spec = raw;
  if (spec.kind == FieldSpec::Kind::PrimePower) {
    if (!is_prime(spec.p))
      throw Error(ErrorCode::NonPrimeCharacteristic, std::to_string(spec.p) + " is not prime");
    if (spec.k == 0) throw Error(ErrorCode::Schema, "extension degree must be >= 1");
    std::uint64_t q = 1;
    for (std::uint32_t i = 0; i < spec.k; ++i) {
      q *= spec.p;
      if (q > kMaxFieldOrder)
        throw Error(ErrorCode::FieldTooLarge, "field order exceeds 2^16");
    }
    if (spec.k == 1) {
      spec.modulus.clear();
    } else {
      if (spec.modulus.size() != spec.k + 1)
        throw Error(ErrorCode::Schema, "modulus must have k+1 coefficients");
      for (auto& c : spec.modulus) c %= spec.p;
      if (spec.modulus.back() == 0)
        throw Error(ErrorCode::Schema, "modulus leading coefficient is zero");
      for (std::uint32_t d = 1; d <= spec.k / 2; ++d)
        if (has_factor_of_degree(spec.modulus, d, spec.p))
          throw Error(ErrorCode::ReducibleModulus,
                      "modulus has a factor of degree " + std::to_string(d));
    }
  } else {
    spec = FieldSpec::rationals();
  }
  const std::string key = spec_key(spec);
  std::lock_guard lock(registry_mutex());
  auto& reg = registry();
  if (auto it = reg.find(key); it != reg.end()) return it->second;
  FieldRef f(new Field(spec));
  reg.emplace(key, f);
  return f;
}

Field::Field(FieldSpec spec) : spec_(std::move(spec)) {
  if (!is_finite()) return;
  order_ = 1;
  for (std::uint32_t i = 0; i < spec_.k; ++i) order_ *= spec_.p;
  if (spec_.k > 1) {
    const std::uint32_t lead_inv = inv_mod(spec_.modulus.back(), spec_.p);
    monic_modulus_.resize(spec_.k);
    for (std::uint32_t i = 0; i < spec_.k; ++i)
      monic_modulus_[i] =
          static_cast<std::uint32_t>(std::uint64_t{spec_.modulus[i]} * lead_inv % spec_.p);
  }
  build_tables();
}

std::string Field::name() const {
  if (!is_finite()) return "Q";
  if (spec_.k == 1) return "GF(" + std::to_string(spec_.p) + ")";
  return "GF(" + std::to_string(spec_.p) + "^" + std::to_string(spec_.k) + ")";
}

std::uint32_t Field::add_idx(std::uint32_t a, std::uint32_t b) const {
  const std::uint32_t p = spec_.p;
  if (spec_.k == 1) return (a + b) % p;
  if (p == 2) return a ^ b;
  std::uint32_t result = 0, place = 1;
  for (std::uint32_t i = 0; i < spec_.k; ++i) {
    result += ((a % p + b % p) % p) * place;
    a /= p;
    b /= p;
    place *= p;
  }
  return result;
}

std::uint32_t Field::neg_idx(std::uint32_t a) const {
  const std::uint32_t p = spec_.p;
  if (spec_.k == 1) return (p - a) % p;
  if (p == 2) return a;
  std::uint32_t result = 0, place = 1;
  for (std::uint32_t i = 0; i < spec_.k; ++i) {
    result += ((p - a % p) % p) * place;
    a /= p;
    place *= p;
  }
  return result;
}

std::uint32_t Field::slow_mul(std::uint32_t a, std::uint32_t b) const {
  const std::uint32_t p = spec_.p, k = spec_.k;
  if (k == 1) return static_cast<std::uint32_t>(std::uint64_t{a} * b % p);
  std::vector<std::uint64_t> x(k), y(k), prod(2 * k - 1, 0);
  for (std::uint32_t i = 0; i < k; ++i) {
    x[i] = a % p;
    a /= p;
    y[i] = b % p;
    b /= p;
  }
  for (std::uint32_t i = 0; i < k; ++i)
    for (std::uint32_t j = 0; j < k; ++j) prod[i + j] = (prod[i + j] + x[i] * y[j]) % p;
  // Reduce with x^k = -sum monic_modulus_[i] x^i.
  for (std::size_t d = prod.size(); d-- > k;) {
    const std::uint64_t c = prod[d];
    if (c == 0) continue;
    prod[d] = 0;
    for (std::uint32_t i = 0; i < k; ++i)
      prod[d - k + i] = (prod[d - k + i] + (p - c) * monic_modulus_[i]) % p;
  }
  std::uint32_t result = 0, place = 1;
  for (std::uint32_t i = 0; i < k; ++i) {
    result += static_cast<std::uint32_t>(prod[i]) * place;
    place *= p;
  }
  return result;
}

void Field::build_tables() {
  const std::uint32_t q = order_;
  const std::uint32_t n = q - 1;
  std::vector<std::uint32_t> prime_factors;
  {
    std::uint32_t m = n;
    for (std::uint32_t d = 2; d * d <= m; ++d)
      if (m % d == 0) {
        prime_factors.push_back(d);
        while (m % d == 0) m /= d;
      }
    if (m > 1) prime_factors.push_back(m);
  }
  auto slow_pow = [&](std::uint32_t a, std::uint64_t e) {
    std::uint32_t r = 1, base = a;
    for (; e; e >>= 1) {
      if (e & 1) r = slow_mul(r, base);
      base = slow_mul(base, base);
    }
    return r;
  };
  for (std::uint32_t g = (q == 2 ? 1 : 2); g < q; ++g) {
    bool primitive = true;
    for (auto f : prime_factors)
      if (slow_pow(g, n / f) == 1) {
        primitive = false;
        break;
      }
    if (primitive) {
      primitive_ = g;
      break;
    }
  }
  log_.assign(q, 0);
  exp_.assign(2 * static_cast<std::size_t>(n), 0);
  std::uint32_t x = 1;
  for (std::uint32_t i = 0; i < n; ++i) {
    exp_[i] = x;
    exp_[i + n] = x;
    log_[x] = i;
    x = slow_mul(x, primitive_);
  }
}

std::uint32_t Field::mul_idx(std::uint32_t a, std::uint32_t b) const {
  if (a == 0 || b == 0) return 0;
  return exp_[log_[a] + log_[b]];
}

Scalar Field::zero() const {
  return is_finite() ? Scalar(this, std::uint32_t{0}) : Scalar(this, Rational(0));
}

Scalar Field::one() const {
  return is_finite() ? Scalar(this, std::uint32_t{1}) : Scalar(this, Rational(1));
}

Scalar Field::from_int(std::int64_t v) const {
  if (!is_finite()) return Scalar(this, Rational(v));
  std::int64_t r = v % static_cast<std::int64_t>(spec_.p);
  if (r < 0) r += spec_.p;
  return Scalar(this, static_cast<std::uint32_t>(r));
}

Scalar Field::from_rational(const Rational& v) const {
  if (!is_finite()) return Scalar(this, v);
  const BigInt p = spec_.p;
  BigInt num = boost::multiprecision::numerator(v) % p;
  BigInt den = boost::multiprecision::denominator(v) % p;
  if (num < 0) num += p;
  if (den == 0) throw Error(ErrorCode::DivisionByZero, "denominator divisible by characteristic");
  return Scalar(this, static_cast<std::uint32_t>(num)) / Scalar(this, static_cast<std::uint32_t>(den));
}

Scalar Field::element(std::uint32_t index) const {
  if (!is_finite() || index >= order_)
    throw Error(ErrorCode::Schema, "element index out of range for " + name());
  return Scalar(this, index);
}

Scalar Field::from_coefficients(std::span<const std::uint32_t> coeffs) const {
  if (!is_finite()) throw Error(ErrorCode::Schema, "coefficient vectors need a finite field");
  if (coeffs.size() > spec_.k)
    throw Error(ErrorCode::Schema, "too many coefficients for " + name());
  std::uint32_t idx = 0, place = 1;
  for (auto c : coeffs) {
    if (c >= spec_.p) throw Error(ErrorCode::Schema, "coefficient out of range [0, p)");
    idx += c * place;
    place *= spec_.p;
  }
  return Scalar(this, idx);
}

std::vector<Scalar> Field::elements() const {
  if (!is_finite()) throw Error(ErrorCode::Schema, "cannot enumerate Q");
  std::vector<Scalar> out;
  out.reserve(order_);
  for (std::uint32_t i = 0; i < order_; ++i) out.push_back(Scalar(this, i));
  return out;
}

Scalar Field::primitive_element() const {
  if (!is_finite()) throw Error(ErrorCode::Schema, "Q has no primitive element");
  return Scalar(this, primitive_);
}

Scalar Field::generator() const {
  if (!is_finite() || spec_.k == 1) return one();
  return Scalar(this, spec_.p);  // the coefficient vector (0, 1)
}

std::optional<std::uint64_t> Field::multiplicative_order(const Scalar& a) const {
  if (a.is_zero()) throw Error(ErrorCode::DivisionByZero, "order of zero");
  if (!is_finite()) {
    if (a.rational() == 1) return 1;
    if (a.rational() == -1) return 2;
    return std::nullopt;
  }
  const std::uint64_t n = order_ - 1;
  return n / std::gcd<std::uint64_t>(n, log_[a.index()]) ;
}

Scalar Field::random(std::mt19937_64& rng) const {
  if (is_finite()) return Scalar(this, static_cast<std::uint32_t>(rng() % order_));
  std::uniform_int_distribution<int> num(-6, 6), den(1, 5);
  return Scalar(this, Rational(num(rng), den(rng)));
}

Scalar Field::random_nonzero(std::mt19937_64& rng) const {
  for (;;) {
    Scalar s = random(rng);
    if (!s.is_zero()) return s;
  }
}

// ---------------------------------------------------------------------------
// Scalar

void Scalar::require_same(const Scalar& rhs) const {
  if (field_ != rhs.field_ || field_ == nullptr)
    throw Error(ErrorCode::FieldMismatch, "operands belong to different fields");
}

bool Scalar::is_zero() const {
  if (auto* v = std::get_if<std::uint32_t>(&value_)) return *v == 0;
  return std::get<Rational>(value_) == 0;
}

bool Scalar::is_one() const {
  if (auto* v = std::get_if<std::uint32_t>(&value_)) return *v == 1;
  return std::get<Rational>(value_) == 1;
}

Scalar Scalar::operator+(const Scalar& rhs) const {
  require_same(rhs);
  if (field_->is_finite())
    return Scalar(field_, field_->add_idx(std::get<std::uint32_t>(value_), std::get<std::uint32_t>(rhs.value_)));
  return Scalar(field_, Rational(std::get<Rational>(value_) + std::get<Rational>(rhs.value_)));
}

Scalar Scalar::operator-() const {
  if (field_->is_finite()) return Scalar(field_, field_->neg_idx(std::get<std::uint32_t>(value_)));
  return Scalar(field_, Rational(-std::get<Rational>(value_)));
}

Scalar Scalar::operator-(const Scalar& rhs) const { return *this + (-rhs); }

Scalar Scalar::operator*(const Scalar& rhs) const {
  require_same(rhs);
  if (field_->is_finite())
    return Scalar(field_, field_->mul_idx(std::get<std::uint32_t>(value_), std::get<std::uint32_t>(rhs.value_)));
  return Scalar(field_, Rational(std::get<Rational>(value_) * std::get<Rational>(rhs.value_)));
}

Scalar Scalar::inv() const {
  if (is_zero()) throw Error(ErrorCode::DivisionByZero, "inverse of zero");
  if (field_->is_finite()) {
    const std::uint32_t n = field_->order_ - 1;
    const std::uint32_t l = field_->log_[std::get<std::uint32_t>(value_)];
    return Scalar(field_, field_->exp_[(n - l) % n]);
  }
  return Scalar(field_, Rational(1 / std::get<Rational>(value_)));
}

Scalar Scalar::operator/(const Scalar& rhs) const {
  require_same(rhs);
  return *this * rhs.inv();
}

Scalar Scalar::pow(std::int64_t e) const {
  if (e < 0) return inv().pow(-e);
  if (e == 0) return field_->one();
  if (is_zero()) return *this;
  if (field_->is_finite()) {
    const std::uint64_t n = field_->order_ - 1;
    const std::uint64_t l = field_->log_[std::get<std::uint32_t>(value_)];
    return Scalar(field_, field_->exp_[(l * (static_cast<std::uint64_t>(e) % n)) % n]);
  }
  const Rational& r = std::get<Rational>(value_);
  const auto ue = static_cast<unsigned>(e);
  return Scalar(field_, Rational(boost::multiprecision::pow(boost::multiprecision::numerator(r), ue),
                                 boost::multiprecision::pow(boost::multiprecision::denominator(r), ue)));
}

Scalar Scalar::pow(const BigInt& e) const {
  if (e < 0) return inv().pow(BigInt(-e));
  if (field_->is_finite()) {
    if (is_zero()) return e == 0 ? field_->one() : *this;
    const BigInt n = field_->order_ - 1;
    return pow(static_cast<std::int64_t>(e % n));
  }
  if (e > 1000000) throw Error(ErrorCode::CapExceeded, "rational exponent too large");
  return pow(static_cast<std::int64_t>(e));
}

bool Scalar::operator==(const Scalar& rhs) const {
  return field_ == rhs.field_ && value_ == rhs.value_;
}

std::strong_ordering Scalar::operator<=>(const Scalar& rhs) const {
  if (field_ != rhs.field_) {
    const std::string a = field_ ? field_->name() : "";
    const std::string b = rhs.field_ ? rhs.field_->name() : "";
    return a.compare(b) <=> 0;
  }
  if (auto* v = std::get_if<std::uint32_t>(&value_)) return *v <=> std::get<std::uint32_t>(rhs.value_);
  const Rational& a = std::get<Rational>(value_);
  const Rational& b = std::get<Rational>(rhs.value_);
  if (a < b) return std::strong_ordering::less;
  if (b < a) return std::strong_ordering::greater;
  return std::strong_ordering::equal;
}

std::uint32_t Scalar::index() const {
  if (auto* v = std::get_if<std::uint32_t>(&value_)) return *v;
  throw Error(ErrorCode::Schema, "rational scalar has no packed index");
}

const Rational& Scalar::rational() const {
  if (auto* v = std::get_if<Rational>(&value_)) return *v;
  throw Error(ErrorCode::Schema, "finite field scalar is not rational");
}

std::vector<std::uint32_t> Scalar::coefficients() const {
  std::uint32_t v = index();
  const std::uint32_t p = field_->spec_.p;
  std::vector<std::uint32_t> out(field_->spec_.k);
  for (auto& c : out) {
    c = v % p;
    v /= p;
  }
  return out;
}

std::string Scalar::to_string() const {
  if (!field_) return "<unset>";
  if (!field_->is_finite()) {
    const Rational& r = std::get<Rational>(value_);
    if (boost::multiprecision::denominator(r) == 1) return boost::multiprecision::numerator(r).str();
    return boost::multiprecision::numerator(r).str() + "/" + boost::multiprecision::denominator(r).str();
  }
  if (field_->degree() == 1) return std::to_string(index());
  std::string s = "[";
  auto c = coefficients();
  for (std::size_t i = 0; i < c.size(); ++i) s += (i ? "," : "") + std::to_string(c[i]);
  return s + "]";
}

// ---------------------------------------------------------------------------

namespace {

std::optional<BigInt> exact_sqrt(const BigInt& n) {
  if (n < 0) return std::nullopt;
  BigInt r = boost::multiprecision::sqrt(n);
  if (r * r == n) return r;
  return std::nullopt;
}

}  // namespace

std::vector<Scalar> solve_power_equation(const Field& field, std::uint64_t n, const Scalar& target) {
  if (n == 0) throw Error(ErrorCode::Schema, "power equation needs n >= 1");
  if (target.field() != &field) throw Error(ErrorCode::FieldMismatch, "target not in field");
  std::vector<Scalar> roots;
  if (field.is_finite()) {
    for (const auto& x : field.elements())
      if (x.pow(static_cast<std::int64_t>(n % (std::uint64_t{1} << 62))) == target) roots.push_back(x);
    return roots;
  }
  if (n == 1) return {target};
  if (n > 2)
    throw Error(ErrorCode::UnsupportedRationalDegree,
                "rational power equations of degree > 2 are not supported");
  const Rational& t = target.rational();
  if (t == 0) return {target};
  auto a = exact_sqrt(boost::multiprecision::numerator(t));
  auto b = exact_sqrt(boost::multiprecision::denominator(t));
  if (!a || !b) return {};
  Scalar r = field.from_rational(Rational(*a, *b));
  roots = {-r, r};
  std::sort(roots.begin(), roots.end());
  return roots;
}

bool has_primitive_root_of_unity(const Field& field, std::uint64_t m) {
  return primitive_root_of_unity(field, m).has_value();
}

std::optional<Scalar> primitive_root_of_unity(const Field& field, std::uint64_t m) {
  if (m == 0) return std::nullopt;
  if (!field.is_finite()) {
    if (m == 1) return field.one();
    if (m == 2) return field.from_int(-1);
    return std::nullopt;
  }
  const std::uint64_t n = field.order() - 1;
  if (n % m != 0) return std::nullopt;
  return field.primitive_element().pow(static_cast<std::int64_t>(n / m));
}

}  // namespace fcu
