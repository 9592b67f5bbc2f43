#include "fcunits/structure.hpp"

#include <algorithm>
#include <stdexcept>

namespace fcu {

StructureAlgebra::StructureAlgebra(FieldRef field, std::size_t n, std::vector<Sparse> products, Vec unit)
    : field_(std::move(field)), n_(n), prod_(std::move(products)), unit_(std::move(unit)) {
  if (prod_.size() != n_ * n_ || unit_.size() != n_) throw Error(ErrorCode::Schema, "structure constants of wrong shape");
}

StructureAlgebra StructureAlgebra::from_dense(FieldRef field, std::size_t n, const std::vector<Vec>& products,
                                              Vec unit) {
  std::vector<Sparse> sp(n * n);
  for (std::size_t t = 0; t < n * n; ++t)
    for (std::size_t k = 0; k < n; ++k)
      if (!products[t][k].is_zero()) sp[t].emplace_back(static_cast<std::uint32_t>(k), products[t][k]);
  return StructureAlgebra(std::move(field), n, std::move(sp), std::move(unit));
}

Vec StructureAlgebra::mul(const Vec& x, const Vec& y) const {
  Vec out = zero();
  for (std::size_t i = 0; i < n_; ++i) {
    if (x[i].is_zero()) continue;
    for (std::size_t j = 0; j < n_; ++j) {
      if (y[j].is_zero()) continue;
      const Scalar xy = x[i] * y[j];
      for (const auto& [k, c] : prod_[i * n_ + j]) out[k] += xy * c;
    }
  }
  return out;
}

Vec StructureAlgebra::power(const Vec& x, std::uint64_t e) const {
  Vec result = unit_, base = x;
  while (e) {
    if (e & 1) result = mul(result, base);
    e >>= 1;
    if (e) base = mul(base, base);
  }
  return result;
}

Matrix StructureAlgebra::left_matrix(const Vec& x) const {
  Matrix m(*field_, n_, n_);
  for (std::size_t i = 0; i < n_; ++i) {
    if (x[i].is_zero()) continue;
    for (std::size_t j = 0; j < n_; ++j)
      for (const auto& [k, c] : prod_[i * n_ + j]) m(k, j) += x[i] * c;
  }
  return m;
}

bool StructureAlgebra::is_commutative() const {
  for (std::size_t i = 0; i < n_; ++i)
    for (std::size_t j = i + 1; j < n_; ++j)
      if (prod_[i * n_ + j] != prod_[j * n_ + i]) return false;
  return true;
}

AlgebraElement FiniteSubalgebra::to_element(const Vec& v) const { return from_coordinates(*ambient, v, W); }
Vec FiniteSubalgebra::to_vec(const AlgebraElement& x) const { return coordinates(x, W); }

FiniteSubalgebra span_subalgebra(const AlgebraRef& A, const std::vector<GroupElement>& gens,
                                 const StructureCaps& caps) {
  const Group& G = A->group();
  FiniteSubalgebra S;
  S.ambient = A;
  S.W = G.closure(gens.empty() ? std::vector<GroupElement>{G.identity()} : gens, caps.max_dim);
  const std::size_t n = S.W.size();
  std::vector<StructureAlgebra::Sparse> prod(n * n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) {
      const GroupElement w = G.mul(S.W[i], S.W[j]);
      const auto k = static_cast<std::uint32_t>(std::lower_bound(S.W.begin(), S.W.end(), w) - S.W.begin());
      prod[i * n + j].emplace_back(k, A->cocycle()(S.W[i], S.W[j]));
    }
  const std::size_t id = static_cast<std::size_t>(std::lower_bound(S.W.begin(), S.W.end(), G.identity()) - S.W.begin());
  // u_1 is the unit since lambda is normalized.
  S.alg = StructureAlgebra(A->cocycle().field_ref(), n, std::move(prod), unit_vec(A->field(), n, id));
  return S;
}

// ---------------------------------------------------------------------------

Vec FactorAlgebra::project(const Vec& x) const {
  const Vec r = ideal.reduce(x);
  Vec out;
  out.reserve(complement.size());
  for (auto c : complement) out.push_back(r[c]);
  return out;
}

Vec FactorAlgebra::lift(const Vec& y) const {
  Vec out = zero_vec(alg.field(), ideal.ambient_dim());
  for (std::size_t t = 0; t < complement.size(); ++t) out[complement[t]] = y[t];
  return out;
}

FactorAlgebra quotient_algebra(const StructureAlgebra& A, const std::vector<Vec>& ideal) {
  FactorAlgebra Q{StructureAlgebra(), Subspace::span(A.field(), A.dim(), ideal), {}};
  Q.complement = Q.ideal.complement_indices();
  const std::size_t m = Q.complement.size();
  std::vector<Vec> prod(m * m);
  for (std::size_t s = 0; s < m; ++s)
    for (std::size_t t = 0; t < m; ++t)
      prod[s * m + t] = Q.project(A.mul(A.basis(Q.complement[s]), A.basis(Q.complement[t])));
  Q.alg = StructureAlgebra::from_dense(A.field_ref(), m, prod, Q.project(A.unit()));
  return Q;
}

Vec EmbeddedAlgebra::to_parent(const Vec& y) const {
  Vec out = zero_vec(alg.field(), span.ambient_dim());
  for (std::size_t t = 0; t < y.size(); ++t) out = axpy(y[t], span.basis()[t], out);
  return out;
}

Vec EmbeddedAlgebra::from_parent(const Vec& x) const { return span.coordinates(x); }

EmbeddedAlgebra corner_algebra(const StructureAlgebra& A, const Vec& e) {
  EmbeddedAlgebra E{StructureAlgebra(), Subspace(A.field(), A.dim())};
  for (std::size_t i = 0; i < A.dim(); ++i) E.span.insert(A.mul(A.mul(e, A.basis(i)), e));
  const auto& B = E.span.basis();
  const std::size_t m = B.size();
  if (m == 0) throw Error(ErrorCode::Schema, "corner of the zero idempotent");
  std::vector<Vec> prod(m * m);
  for (std::size_t s = 0; s < m; ++s)
    for (std::size_t t = 0; t < m; ++t) prod[s * m + t] = E.span.coordinates(A.mul(B[s], B[t]));
  E.alg = StructureAlgebra::from_dense(A.field_ref(), m, prod, E.span.coordinates(e));
  return E;
}

std::vector<Vec> ideal_power(const StructureAlgebra& A, const std::vector<Vec>& ideal, std::size_t k) {
  Subspace cur = Subspace::span(A.field(), A.dim(), ideal);
  for (std::size_t step = 1; step < k && cur.dim() > 0; ++step) {
    Subspace next(A.field(), A.dim());
    for (const auto& x : cur.basis())
      for (const auto& y : ideal) next.insert(A.mul(x, y));
    cur = std::move(next);
  }
  return cur.basis();
}

std::optional<std::size_t> nilpotency_index(const StructureAlgebra& A, const std::vector<Vec>& ideal) {
  Subspace cur = Subspace::span(A.field(), A.dim(), ideal);
  std::size_t k = 1;
  while (cur.dim() > 0) {
    Subspace next(A.field(), A.dim());
    for (const auto& x : cur.basis())
      for (const auto& y : ideal) next.insert(A.mul(x, y));
    if (next.dim() == cur.dim()) return std::nullopt;
    cur = std::move(next);
    ++k;
  }
  return k;
}

// ---------------------------------------------------------------------------
// Radical.

namespace {

// Trace form T(x, y) = Tr(L_xy); its kernel.
std::vector<Vec> trace_form_radical(const StructureAlgebra& A) {
  const std::size_t n = A.dim();
  const Field& K = A.field();
  std::vector<Scalar> tr(n, K.zero());
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j)
      for (const auto& [k, c] : A.product(i, j))
        if (k == j) tr[i] += c;
  // M[k][j] = T(b_j, b_k); the radical is the right kernel.
  Matrix M(K, n, n);
  for (std::size_t j = 0; j < n; ++j)
    for (std::size_t k = 0; k < n; ++k) {
      Scalar s = K.zero();
      for (const auto& [m, c] : A.product(j, k)) s += c * tr[m];
      M(k, j) = s;
    }
  return M.kernel();
}

// Commutative, characteristic p: kernel of the F_q-linear map x -> x^(q^s)
// with q^s >= n.
std::vector<Vec> frobenius_radical(const StructureAlgebra& A) {
  const Field& K = A.field();
  const std::size_t n = A.dim();
  std::uint64_t qs = 1;
  std::uint32_t s = 0;
  while (qs < n) {
    qs *= K.order();
    ++s;
  }
  std::vector<Vec> cols;
  for (std::size_t j = 0; j < n; ++j) {
    Vec x = A.basis(j);
    for (std::uint32_t t = 0; t < s; ++t) x = A.power(x, K.order());
    cols.push_back(std::move(x));
  }
  return Matrix::from_columns(K, cols, n).kernel();
}

// Structure constants over F_p as integers in [0, p).
struct IntAlgebra {
  std::uint32_t p = 2;
  std::size_t n = 0;
  std::vector<std::uint32_t> c;  // c[(i * n + j) * n + k]: coefficient of b_k in b_i b_j

  std::vector<std::uint32_t> mul(const std::vector<std::uint32_t>& x, const std::vector<std::uint32_t>& y) const {
    std::vector<std::uint64_t> acc(n, 0);
    for (std::size_t i = 0; i < n; ++i) {
      if (!x[i]) continue;
      for (std::size_t j = 0; j < n; ++j) {
        if (!y[j]) continue;
        const std::uint64_t xy = std::uint64_t{x[i]} * y[j] % p;
        const std::uint32_t* row = &c[(i * n + j) * n];
        for (std::size_t k = 0; k < n; ++k)
          if (row[k]) acc[k] = (acc[k] + xy * row[k]) % p;
      }
    }
    return {acc.begin(), acc.end()};
  }
};

IntAlgebra restrict_scalars(const StructureAlgebra& A) {
  const Field& K = A.field();
  const std::size_t n = A.dim(), k = K.degree(), N = n * k;
  IntAlgebra R;
  R.p = K.characteristic();
  R.n = N;
  R.c.assign(N * N * N, 0);
  std::vector<Scalar> theta_pow(2 * k, K.one());
  for (std::size_t a = 1; a < 2 * k; ++a) theta_pow[a] = theta_pow[a - 1] * K.generator();
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j)
      for (const auto& [m, coef] : A.product(i, j))
        for (std::size_t a = 0; a < k; ++a)
          for (std::size_t b = 0; b < k; ++b) {
            const auto digits = (theta_pow[a + b] * coef).coefficients();
            for (std::size_t d = 0; d < k; ++d)
              R.c[((i * k + a) * N + (j * k + b)) * N + (std::size_t{m} * k + d)] =
                  (R.c[((i * k + a) * N + (j * k + b)) * N + (std::size_t{m} * k + d)] + digits[d]) % R.p;
          }
  return R;
}

using IntMatrix = std::vector<std::int64_t>;  // n x n row-major

IntMatrix int_mul(const IntMatrix& a, const IntMatrix& b, std::size_t n, std::int64_t mod) {
  IntMatrix out(n * n, 0);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t l = 0; l < n; ++l) {
      const std::int64_t x = a[i * n + l];
      if (!x) continue;
      for (std::size_t j = 0; j < n; ++j) out[i * n + j] += x * b[l * n + j];
      if (l % 64 == 63)
        for (std::size_t j = 0; j < n; ++j) out[i * n + j] %= mod;
    }
  for (auto& v : out) v %= mod;
  return out;
}

IntMatrix int_pow(IntMatrix base, std::uint64_t e, std::size_t n, std::int64_t mod) {
  IntMatrix result(n * n, 0);
  for (std::size_t i = 0; i < n; ++i) result[i * n + i] = 1 % mod;
  while (e) {
    if (e & 1) result = int_mul(result, base, n, mod);
    e >>= 1;
    if (e) base = int_mul(base, base, n, mod);
  }
  return result;
}

// g_i(x) = (Tr(L~_x^(p^i)) mod p^(i+1)) / p^i with L~_x the entrywise lift.
std::uint32_t g_fn(const IntAlgebra& R, const std::vector<std::uint32_t>& x, std::uint32_t i) {
  const std::size_t n = R.n;
  std::int64_t pi = 1;
  for (std::uint32_t t = 0; t < i; ++t) pi *= R.p;
  const std::int64_t mod = pi * R.p;
  IntMatrix L(n * n, 0);
  for (std::size_t a = 0; a < n; ++a) {
    if (!x[a]) continue;
    for (std::size_t j = 0; j < n; ++j) {
      const std::uint32_t* row = &R.c[(a * n + j) * n];
      for (std::size_t k = 0; k < n; ++k)
        if (row[k]) L[k * n + j] = (L[k * n + j] + std::int64_t{x[a]} * row[k]) % R.p;
    }
  }
  for (std::uint32_t t = 0; t < i; ++t) L = int_pow(std::move(L), R.p, n, mod);
  std::int64_t tr = 0;
  for (std::size_t k = 0; k < n; ++k) tr = (tr + L[k * n + k]) % mod;
  return static_cast<std::uint32_t>(tr / pi);
}

// Iterated p-power trace conditions over F_p; returns an F_p basis.
std::vector<std::vector<std::uint32_t>> p_power_trace_radical(const IntAlgebra& R) {
  const FieldRef Fp = Field::prime(R.p);
  const std::size_t n = R.n;
  std::uint32_t l = 0;
  for (std::uint64_t pw = R.p; pw <= n; pw *= R.p) ++l;
  auto unit = [&](std::size_t k) {
    std::vector<std::uint32_t> v(n, 0);
    v[k] = 1;
    return v;
  };
  std::vector<std::vector<std::uint32_t>> cur;
  for (std::size_t k = 0; k < n; ++k) cur.push_back(unit(k));
  for (std::uint32_t i = 0; i <= l && !cur.empty(); ++i) {
    Matrix G(*Fp, n, cur.size());
    for (std::size_t j = 0; j < cur.size(); ++j)
      for (std::size_t k = 0; k < n; ++k) G(k, j) = Fp->from_int(g_fn(R, R.mul(cur[j], unit(k)), i));
    std::vector<std::vector<std::uint32_t>> next;
    for (const auto& v : G.kernel()) {
      std::vector<std::uint32_t> x(n, 0);
      for (std::size_t j = 0; j < cur.size(); ++j) {
        const std::uint32_t cj = v[j].index();
        if (!cj) continue;
        for (std::size_t t = 0; t < n; ++t) x[t] = static_cast<std::uint32_t>((x[t] + std::uint64_t{cj} * cur[j][t]) % R.p);
      }
      next.push_back(std::move(x));
    }
    cur = std::move(next);
  }
  return cur;
}

std::vector<Vec> radical_raw(const StructureAlgebra& A, const StructureCaps& caps, std::string* method) {
  const Field& K = A.field();
  const std::size_t n = A.dim();
  if (n == 0) return {};
  if (K.characteristic() == 0 || K.characteristic() > n) {
    if (method) *method = "trace-form";
    return trace_form_radical(A);
  }
  if (A.is_commutative()) {
    if (method) *method = "frobenius-kernel";
    return frobenius_radical(A);
  }
  if (n * K.degree() > caps.max_restricted_dim)
    throw Error(ErrorCode::DimensionTooLarge, "restriction of scalars would have dimension " +
                                                  std::to_string(n * K.degree()));
  if (method) *method = "p-power-trace";
  const IntAlgebra R = restrict_scalars(A);
  const std::size_t k = K.degree();
  Subspace J(K, n);
  for (const auto& v : p_power_trace_radical(R)) {
    Vec x = A.zero();
    std::vector<std::uint32_t> digits(k);
    for (std::size_t m = 0; m < n; ++m) {
      for (std::size_t d = 0; d < k; ++d) digits[d] = v[m * k + d];
      x[m] = K.from_coefficients(digits);
    }
    J.insert(std::move(x));
  }
  return J.basis();
}

}  // namespace

RadicalResult jacobson_radical(const StructureAlgebra& A, const StructureCaps& caps) {
  if (A.dim() > caps.max_dim)
    throw Error(ErrorCode::DimensionTooLarge, "dimension " + std::to_string(A.dim()) + " exceeds " +
                                                  std::to_string(caps.max_dim));
  RadicalResult r;
  r.basis = radical_raw(A, caps, &r.method);
  r.nilpotency_index = nilpotency_index(A, r.basis);
  if (r.basis.empty()) {
    r.quotient_semisimple = true;
  } else {
    const FactorAlgebra Q = quotient_algebra(A, r.basis);
    r.quotient_semisimple = radical_raw(Q.alg, caps, nullptr).empty();
  }
  return r;
}

bool is_semisimple(const StructureAlgebra& A, const StructureCaps& caps) {
  return jacobson_radical(A, caps).basis.empty();
}

bool maschke_check(const FiniteSubalgebra& S, const StructureCaps& caps) {
  const std::uint32_t p = S.alg.field().characteristic();
  if (p != 0 && S.W.size() % p == 0) return true;
  return is_semisimple(S.alg, caps);
}

// ---------------------------------------------------------------------------
// Idempotents.

Poly minimal_polynomial(const StructureAlgebra& A, const Vec& x, const Vec& one) {
  const Field& K = A.field();
  std::vector<Vec> pows{one};
  Subspace S(K, A.dim());
  S.insert(one);
  for (;;) {
    Vec next = A.mul(pows.back(), x);
    if (S.contains(next)) {
      const auto c = solve(Matrix::from_columns(K, pows, A.dim()), next);
      std::vector<Scalar> coeffs;
      for (const auto& ci : *c) coeffs.push_back(-ci);
      coeffs.push_back(K.one());
      return Poly(K, std::move(coeffs));
    }
    S.insert(next);
    pows.push_back(std::move(next));
  }
}

Vec evaluate(const StructureAlgebra& A, const Poly& f, const Vec& x, const Vec& one) {
  Vec acc = A.zero();
  for (int i = f.degree(); i >= 0; --i) acc = axpy(f.coeff(static_cast<std::size_t>(i)), one, A.mul(acc, x));
  return acc;
}

namespace {

void require_commutative(const StructureAlgebra& A) {
  if (!A.is_commutative()) throw Error(ErrorCode::NotCommutative, "algebra is not commutative");
}

std::size_t span_dim(const StructureAlgebra& A, const Vec& e, const std::vector<Vec>& vs) {
  Subspace S(A.field(), A.dim());
  for (const auto& v : vs) S.insert(A.mul(e, v));
  return S.dim();
}

std::vector<Vec> all_basis(const StructureAlgebra& A) {
  std::vector<Vec> out;
  for (std::size_t i = 0; i < A.dim(); ++i) out.push_back(A.basis(i));
  return out;
}

std::vector<Vec> finite_primitive_idempotents(const StructureAlgebra& A) {
  const Field& K = A.field();
  const std::size_t n = A.dim();
  std::vector<Vec> cols;
  for (std::size_t j = 0; j < n; ++j) {
    Vec x = A.power(A.basis(j), K.order());
    x[j] -= K.one();
    cols.push_back(std::move(x));
  }
  const std::vector<Vec> B = Matrix::from_columns(K, cols, n).kernel();
  std::vector<Vec> E{A.unit()};
  for (const auto& b : B) {
    if (E.size() == B.size()) break;
    std::vector<Vec> next;
    for (const auto& e : E) {
      const Vec y = A.mul(e, b);
      const auto rts = roots(minimal_polynomial(A, y, e));
      if (rts.size() <= 1) {
        next.push_back(e);
        continue;
      }
      for (const auto& r : rts) {
        Vec f = e;
        for (const auto& s : rts) {
          if (s == r) continue;
          f = A.mul(f, axpy(-s, e, y));
          for (auto& c : f) c = c / (r - s);
        }
        next.push_back(std::move(f));
      }
    }
    E = std::move(next);
  }
  if (E.size() != B.size()) throw std::logic_error("Frobenius splitting did not separate the fixed space");
  return E;
}

// Over Q: split by CRT idempotents of minimal polynomials of random elements
// until each corner modulo the radical is a field generated by one element.
std::vector<Vec> rational_primitive_idempotents(const StructureAlgebra& A, const StructureCaps& caps) {
  const Field& K = A.field();
  const std::vector<Vec> J = radical_raw(A, caps, nullptr);
  const std::vector<Vec> basis = all_basis(A);
  std::mt19937_64 rng(0x1d3u);
  std::uniform_int_distribution<int> coef(-3, 3);
  std::vector<Vec> done, work{A.unit()};
  while (!work.empty()) {
    const Vec e = work.back();
    work.pop_back();
    const std::size_t target = span_dim(A, e, basis) - span_dim(A, e, J);
    bool settled = false;
    for (int attempt = 0; attempt < 64 && !settled; ++attempt) {
      Vec r = A.zero();
      if (attempt < static_cast<int>(A.dim())) {
        r = A.basis(static_cast<std::size_t>(attempt));
      } else {
        for (auto& c : r) c = K.from_int(coef(rng));
      }
      const Vec y = A.mul(e, r);
      const Poly f = minimal_polynomial(A, y, e);
      const auto parts = factor(f);
      if (parts.size() == 1) {
        if (parts.front().first.degree() == static_cast<int>(target)) {
          done.push_back(e);
          settled = true;
        }
        continue;
      }
      for (const auto& [g, mult] : parts) {
        Poly P = Poly::constant(K.one());
        for (int t = 0; t < mult; ++t) P = P * g;
        const Poly Qp = f / P;
        const ExtGcd eg = ext_gcd(P, Qp);
        work.push_back(evaluate(A, (eg.t * Qp) % f, y, e));
      }
      settled = true;
    }
    if (!settled) throw Error(ErrorCode::CapExceeded, "no splitting or generating element found");
  }
  std::sort(done.begin(), done.end());
  return done;
}

}  // namespace

std::vector<Vec> primitive_idempotents(const StructureAlgebra& A, const StructureCaps& caps) {
  require_commutative(A);
  if (A.dim() > caps.max_dim)
    throw Error(ErrorCode::DimensionTooLarge, "dimension " + std::to_string(A.dim()) + " exceeds " +
                                                  std::to_string(caps.max_dim));
  if (A.field().is_finite()) return finite_primitive_idempotents(A);
  if (A.dim() > caps.max_rational_idempotent_dim)
    throw Error(ErrorCode::DimensionTooLarge, "rational idempotent splitting limited to dimension " +
                                                  std::to_string(caps.max_rational_idempotent_dim));
  return rational_primitive_idempotents(A, caps);
}

namespace {

std::optional<std::uint64_t> field_power(std::uint64_t q, std::size_t n, std::uint64_t cap) {
  std::uint64_t total = 1;
  for (std::size_t i = 0; i < n; ++i) {
    if (total > cap / q) return std::nullopt;
    total *= q;
  }
  return total;
}

// Calls fn on every F-linear combination of `vs`; stops when fn returns false.
template <class Fn>
void for_each_combination(const StructureAlgebra& A, const std::vector<Vec>& vs, Fn&& fn) {
  const std::vector<Scalar> elems = A.field().elements();
  std::vector<std::size_t> digit(vs.size(), 0);
  for (;;) {
    Vec x = A.zero();
    for (std::size_t t = 0; t < vs.size(); ++t)
      if (digit[t]) x = axpy(elems[digit[t]], vs[t], x);
    if (!fn(x)) return;
    std::size_t t = 0;
    while (t < vs.size() && ++digit[t] == elems.size()) digit[t++] = 0;
    if (t == vs.size()) return;
  }
}

}  // namespace

std::uint64_t count_idempotents_exhaustive(const StructureAlgebra& A, const StructureCaps& caps) {
  if (!A.field().is_finite()) throw Error(ErrorCode::TooLargeToCount, "infinite field");
  if (!field_power(A.field().order(), A.dim(), caps.max_exhaustive))
    throw Error(ErrorCode::TooLargeToCount, "|K|^dim exceeds " + std::to_string(caps.max_exhaustive));
  std::uint64_t count = 0;
  for_each_combination(A, all_basis(A), [&](const Vec& x) {
    if (A.mul(x, x) == x) ++count;
    return true;
  });
  return count;
}

IdempotentCount count_idempotents(const StructureAlgebra& A, const StructureCaps& caps) {
  require_commutative(A);
  if (A.dim() > caps.max_count_dim)
    throw Error(ErrorCode::TooLargeToCount, "dimension " + std::to_string(A.dim()) + " exceeds " +
                                                std::to_string(caps.max_count_dim));
  IdempotentCount r;
  r.primitive = primitive_idempotents(A, caps).size();
  r.count = std::uint64_t{1} << r.primitive;
  if (A.field().is_finite() && field_power(A.field().order(), A.dim(), 10'000)) {
    if (count_idempotents_exhaustive(A, caps) != r.count)
      throw std::logic_error("idempotent count disagrees with exhaustion");
    r.cross_checked = true;
  }
  return r;
}

namespace {

// Certifies that the corner eA of a commutative A is a field.
void certify_field(const StructureAlgebra& A, ComponentSummary& comp, const StructureCaps& caps) {
  const Field& K = A.field();
  const Vec& e = comp.idempotent;
  Subspace S(K, A.dim());
  for (std::size_t i = 0; i < A.dim(); ++i) S.insert(A.mul(e, A.basis(i)));
  comp.dimension = S.dim();
  if (K.is_finite() && field_power(K.order(), comp.dimension, caps.max_field_exhaustion)) {
    bool ok = true;
    for_each_combination(A, S.basis(), [&](const Vec& x) {
      if (is_zero_vec(x)) return true;
      const Vec x2 = A.mul(x, x);
      if (is_zero_vec(x2) || (x2 == x && x != e)) ok = false;
      return ok;
    });
    comp.is_field = ok;
    comp.certificate = "exhaustion";
    return;
  }
  std::mt19937_64 rng(0xf1e1du);
  std::uniform_int_distribution<int> coef(-3, 3);
  for (int attempt = 0; attempt < 64; ++attempt) {
    Vec y = A.zero();
    if (attempt < static_cast<int>(S.dim())) {
      y = S.basis()[static_cast<std::size_t>(attempt)];
    } else {
      for (const auto& v : S.basis())
        y = axpy(K.is_finite() ? K.random(rng) : K.from_int(coef(rng)), v, y);
    }
    const Poly f = minimal_polynomial(A, y, e);
    if (f.degree() == static_cast<int>(comp.dimension) && is_irreducible(f)) {
      comp.is_field = true;
      comp.certificate = "irreducible minimal polynomial";
      comp.field_polynomial = f;
      return;
    }
  }
  comp.is_field = false;
  comp.certificate = "no generating element with irreducible minimal polynomial";
}

}  // namespace

FieldsDecomposition fields_decomposition(const StructureAlgebra& A, const StructureCaps& caps) {
  require_commutative(A);
  FieldsDecomposition out;
  out.decomposition.radical = jacobson_radical(A, caps).basis;
  if (!out.decomposition.radical.empty()) {
    out.witness = out.decomposition.radical.front();
    out.witness_kind = "nilpotent";
    return out;
  }
  out.decomposition.idempotents = primitive_idempotents(A, caps);
  out.is_sum_of_fields = true;
  for (const auto& e : out.decomposition.idempotents) {
    ComponentSummary comp;
    comp.idempotent = e;
    certify_field(A, comp, caps);
    if (!comp.is_field && out.is_sum_of_fields) {
      out.is_sum_of_fields = false;
      out.witness = e;
      out.witness_kind = "non-field component";
    }
    out.decomposition.components.push_back(std::move(comp));
  }
  return out;
}

std::vector<Vec> lift_idempotents(const StructureAlgebra& A, const std::vector<Vec>& ideal,
                                  const std::vector<Vec>& idempotents) {
  require_commutative(A);
  if (!nilpotency_index(A, ideal)) throw Error(ErrorCode::IdealNotNilpotent, "ideal powers do not vanish");
  const Subspace I = Subspace::span(A.field(), A.dim(), ideal);
  const std::uint32_t p = A.field().characteristic();
  std::vector<Vec> out;
  for (const auto& e0 : idempotents) {
    Vec e = e0;
    Vec d = A.mul(e, e);
    for (std::size_t t = 0; t < d.size(); ++t) d[t] -= e[t];
    if (!I.contains(d)) throw Error(ErrorCode::Schema, "element is not idempotent modulo the ideal");
    for (std::size_t step = 0; step <= A.dim() + 1 && A.mul(e, e) != e; ++step) {
      if (p != 0) {
        e = A.power(e, p);
      } else {
        const Vec e2 = A.mul(e, e), e3 = A.mul(e2, e);
        Vec next = A.zero();
        next = axpy(A.field().from_int(3), e2, next);
        next = axpy(A.field().from_int(-2), e3, next);
        e = std::move(next);
      }
    }
    if (A.mul(e, e) != e) throw std::logic_error("idempotent lifting did not stabilize");
    out.push_back(std::move(e));
  }
  return out;
}

Matrix regular_representation(const StructureAlgebra& A, const Vec& x) { return A.left_matrix(x); }

bool centrality_check(const AlgebraElement& x, const std::vector<GroupElement>& generators) {
  const TwistedGroupAlgebra& A = x.algebra();
  for (const auto& g : generators) {
    const AlgebraElement ug = A.basis(g);
    if (ug * x != x * ug) return false;
  }
  return true;
}

}  // namespace fcu
