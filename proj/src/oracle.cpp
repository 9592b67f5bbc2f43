#include "fcunits/oracle.hpp"

namespace fcu {

namespace {

constexpr std::uint64_t kRadicalPairCap = 200'000'000;

std::vector<std::vector<std::uint32_t>> torsion_table(const GroupSpec& spec) {
  if (!spec.table.empty()) return spec.table;
  // Mixed radix with the last invariant least significant.
  std::uint32_t n = 1;
  for (auto d : spec.invariants) n *= d;
  auto digits = [&](std::uint32_t a) {
    std::vector<std::uint32_t> c(spec.invariants.size());
    for (std::size_t i = c.size(); i-- > 0;) {
      c[i] = a % spec.invariants[i];
      a /= spec.invariants[i];
    }
    return c;
  };
  std::vector<std::vector<std::uint32_t>> t(n, std::vector<std::uint32_t>(n));
  for (std::uint32_t a = 0; a < n; ++a)
    for (std::uint32_t b = 0; b < n; ++b) {
      const auto ca = digits(a), cb = digits(b);
      std::uint32_t v = 0;
      for (std::size_t i = 0; i < ca.size(); ++i) v = v * spec.invariants[i] + (ca[i] + cb[i]) % spec.invariants[i];
      t[a][b] = v;
    }
  return t;
}

class Enumerator {
 public:
  Enumerator(const Field& K, std::vector<std::vector<std::uint32_t>> table, std::vector<Scalar> tau)
      : K_(K), n_(static_cast<std::uint32_t>(table.size())), table_(std::move(table)), tau_(std::move(tau)),
        elems_(K.elements()) {}

  std::vector<Scalar> decode(std::uint64_t code) const {
    std::vector<Scalar> x(n_);
    for (std::uint32_t i = 0; i < n_; ++i) {
      x[i] = elems_[code % elems_.size()];
      code /= elems_.size();
    }
    return x;
  }

  std::uint64_t encode(const std::vector<Scalar>& x) const {
    std::uint64_t code = 0;
    for (std::uint32_t i = n_; i-- > 0;) code = code * elems_.size() + x[i].index();
    return code;
  }

  std::vector<Scalar> mul(const std::vector<Scalar>& x, const std::vector<Scalar>& y) const {
    std::vector<Scalar> z(n_, K_.zero());
    for (std::uint32_t a = 0; a < n_; ++a) {
      if (x[a].is_zero()) continue;
      for (std::uint32_t b = 0; b < n_; ++b) {
        if (y[b].is_zero()) continue;
        z[table_[a][b]] += x[a] * y[b] * tau_[std::size_t{a} * n_ + b];
      }
    }
    return z;
  }

  static bool is_zero(const std::vector<Scalar>& x) {
    for (const auto& c : x)
      if (!c.is_zero()) return false;
    return true;
  }

  /// Rank test of left multiplication by x, by plain elimination.
  bool left_invertible(const std::vector<Scalar>& x) const {
    std::vector<std::vector<Scalar>> m(n_, std::vector<Scalar>(n_, K_.zero()));
    for (std::uint32_t b = 0; b < n_; ++b)
      for (std::uint32_t a = 0; a < n_; ++a)
        if (!x[a].is_zero()) m[table_[a][b]][b] += x[a] * tau_[std::size_t{a} * n_ + b];
    for (std::uint32_t col = 0; col < n_; ++col) {
      std::uint32_t piv = col;
      while (piv < n_ && m[piv][col].is_zero()) ++piv;
      if (piv == n_) return false;
      std::swap(m[piv], m[col]);
      const Scalar inv = m[col][col].inv();
      for (std::uint32_t r = col + 1; r < n_; ++r) {
        if (m[r][col].is_zero()) continue;
        const Scalar f = m[r][col] * inv;
        for (std::uint32_t c = col; c < n_; ++c) m[r][c] -= f * m[col][c];
      }
    }
    return true;
  }

  bool nilpotent(const std::vector<Scalar>& x) const {
    std::vector<Scalar> p = x;
    for (std::uint32_t k = 1; k < n_ && !is_zero(p); ++k) p = mul(p, x);
    return is_zero(p);
  }

 private:
  const Field& K_;
  std::uint32_t n_;
  std::vector<std::vector<std::uint32_t>> table_;
  std::vector<Scalar> tau_;
  std::vector<Scalar> elems_;
};

}  // namespace

OracleCounts oracle_enumerate(const GroupSpec& group, const Cocycle& lambda, std::uint64_t cap) {
  const Field& K = lambda.field();
  if (!K.is_finite()) throw Error(ErrorCode::CapExceeded, "exhaustive enumeration needs a finite field");
  const StructuredCocycle* data = lambda.structured_data();
  if (!data) throw Error(ErrorCode::Schema, "oracle needs a stored torsion table");
  auto table = torsion_table(group);
  const auto n = static_cast<std::uint32_t>(table.size());
  if (data->tau.size() != std::size_t{n} * n) throw Error(ErrorCode::Schema, "torsion table size mismatch");

  std::uint64_t N = 1;
  for (std::uint32_t i = 0; i < n; ++i) {
    if (N > cap / K.order()) throw Error(ErrorCode::CapExceeded, K.name() + "^" + std::to_string(n) + " elements");
    N *= K.order();
  }

  const Enumerator E(K, std::move(table), data->tau);
  OracleCounts out;
  out.dimension = n;
  out.elements = N;
  std::vector<char> nil(N, 0);
  std::vector<std::uint64_t> nil_codes;
  for (std::uint64_t code = 0; code < N; ++code) {
    const auto x = E.decode(code);
    const auto x2 = E.mul(x, x);
    if (x2 == x) ++out.idempotents;
    if (E.left_invertible(x)) ++out.units;
    if (E.nilpotent(x)) {
      nil[code] = 1;
      nil_codes.push_back(code);
    }
  }
  out.nilpotents = nil_codes.size();

  // J = {x : a x nilpotent for every a}; nil left ideals are nilpotent here.
  if (nil_codes.size() > kRadicalPairCap / N)
    throw Error(ErrorCode::CapExceeded, std::to_string(nil_codes.size()) + " nilpotents against " + std::to_string(N) +
                                            " elements");
  std::uint64_t radical = 0;
  for (const auto code : nil_codes) {
    const auto x = E.decode(code);
    bool in = true;
    for (std::uint64_t a = 0; a < N && in; ++a) in = nil[E.encode(E.mul(E.decode(a), x))] != 0;
    radical += in;
  }
  std::uint32_t d = 0;
  for (std::uint64_t r = radical; r > 1; r /= K.order()) ++d;
  out.radical_dimension = d;
  return out;
}

}  // namespace fcu
