#include "fcunits/algebra.hpp"

#include <algorithm>
#include <map>

namespace fcu {

AlgebraElement::AlgebraElement(const TwistedGroupAlgebra* alg, std::vector<Term> terms)
    : alg_(alg), terms_(canonicalize(std::move(terms))) {}

std::vector<AlgebraElement::Term> AlgebraElement::canonicalize(std::vector<Term> terms) {
  std::sort(terms.begin(), terms.end(), [](const Term& a, const Term& b) { return a.first < b.first; });
  std::vector<Term> out;
  out.reserve(terms.size());
  for (auto& t : terms) {
    if (!out.empty() && out.back().first == t.first) {
      out.back().second += t.second;
    } else {
      if (!out.empty() && out.back().second.is_zero()) out.pop_back();
      out.push_back(std::move(t));
    }
  }
  if (!out.empty() && out.back().second.is_zero()) out.pop_back();
  return out;
}

void AlgebraElement::require_same(const AlgebraElement& rhs) const {
  if (alg_ != rhs.alg_ || alg_ == nullptr)
    throw Error(ErrorCode::AlgebraMismatch, "operands belong to different algebras");
}

Scalar AlgebraElement::coeff(const GroupElement& g) const {
  auto it = std::lower_bound(terms_.begin(), terms_.end(), g,
                             [](const Term& t, const GroupElement& x) { return t.first < x; });
  if (it != terms_.end() && it->first == g) return it->second;
  return alg_->field().zero();
}

std::vector<GroupElement> AlgebraElement::support() const {
  std::vector<GroupElement> out;
  for (const auto& t : terms_) out.push_back(t.first);
  return out;
}

AlgebraElement AlgebraElement::operator+(const AlgebraElement& rhs) const {
  require_same(rhs);
  std::vector<Term> all = terms_;
  all.insert(all.end(), rhs.terms_.begin(), rhs.terms_.end());
  return AlgebraElement(alg_, std::move(all));
}

AlgebraElement AlgebraElement::operator-() const {
  std::vector<Term> t = terms_;
  for (auto& x : t) x.second = -x.second;
  return AlgebraElement(alg_, std::move(t));
}

AlgebraElement AlgebraElement::operator-(const AlgebraElement& rhs) const { return *this + (-rhs); }

AlgebraElement AlgebraElement::operator*(const AlgebraElement& rhs) const {
  require_same(rhs);
  const Group& G = alg_->group();
  const Cocycle& lambda = alg_->cocycle();
  std::vector<Term> out;
  out.reserve(terms_.size() * rhs.terms_.size());
  for (const auto& [g, a] : terms_)
    for (const auto& [h, b] : rhs.terms_) out.emplace_back(G.mul(g, h), a * b * lambda(g, h));
  return AlgebraElement(alg_, std::move(out));
}

AlgebraElement AlgebraElement::operator*(const Scalar& s) const {
  std::vector<Term> t = terms_;
  for (auto& x : t) x.second *= s;
  return AlgebraElement(alg_, std::move(t));
}

std::string AlgebraElement::to_string() const {
  if (terms_.empty()) return "0";
  std::string s;
  for (const auto& [g, c] : terms_) {
    if (!s.empty()) s += " + ";
    s += c.to_string() + "*u" + alg_->group().format(g);
  }
  return s;
}

// ---------------------------------------------------------------------------

AlgebraRef TwistedGroupAlgebra::make(Cocycle lambda, int radius, std::uint32_t prufer_level) {
  const CocycleCheck check = validate_cocycle(lambda, radius, prufer_level);
  if (!check.valid) {
    const Group& G = lambda.group();
    const Triple& t = *check.counterexample;
    throw Error(ErrorCode::InvalidCocycle, check.reason + " fails at (" + G.format(t[0]) + ", " + G.format(t[1]) +
                                               ", " + G.format(t[2]) + ")");
  }
  return make_trusted(std::move(lambda));
}

AlgebraRef TwistedGroupAlgebra::make_trusted(Cocycle lambda) {
  return AlgebraRef(new TwistedGroupAlgebra(std::move(lambda)));
}

AlgebraElement TwistedGroupAlgebra::basis(const GroupElement& g) const {
  group().check(g);
  return AlgebraElement(this, {{g, field().one()}});
}

AlgebraElement TwistedGroupAlgebra::term(const GroupElement& g, const Scalar& c) const {
  group().check(g);
  if (c.field() != &field()) throw Error(ErrorCode::FieldMismatch, "coefficient in another field");
  return AlgebraElement(this, {{g, c}});
}

AlgebraElement TwistedGroupAlgebra::from_terms(std::vector<AlgebraElement::Term> terms) const {
  for (const auto& [g, c] : terms) {
    group().check(g);
    if (c.field() != &field()) throw Error(ErrorCode::FieldMismatch, "coefficient in another field");
  }
  return AlgebraElement(this, std::move(terms));
}

// ---------------------------------------------------------------------------

AlgebraElement power(const AlgebraElement& x, std::uint64_t n) {
  AlgebraElement result = x.algebra().one();
  AlgebraElement base = x;
  while (n) {
    if (n & 1) result = result * base;
    n >>= 1;
    if (n) base = base * base;
  }
  return result;
}

bool is_idempotent(const AlgebraElement& x) { return x * x == x; }

namespace {

void require_support_in(const std::vector<GroupElement>& W, const AlgebraElement& x) {
  for (const auto& [g, c] : x.terms())
    if (!std::binary_search(W.begin(), W.end(), g))
      throw Error(ErrorCode::SupportNotInSubgroup, "support element " + x.algebra().group().format(g) + " not in W");
}

}  // namespace

bool is_nilpotent_in(const std::vector<GroupElement>& W, const AlgebraElement& x) {
  require_support_in(W, x);
  AlgebraElement y = x;
  for (std::size_t e = 1; e < W.size(); e *= 2) {
    if (y.is_zero()) return true;
    y = y * y;
  }
  return y.is_zero();
}

Matrix regular_representation(const AlgebraElement& x, const std::vector<GroupElement>& W) {
  require_support_in(W, x);
  const TwistedGroupAlgebra& A = x.algebra();
  Matrix m(A.field(), W.size(), W.size());
  for (std::size_t j = 0; j < W.size(); ++j) {
    const AlgebraElement col = x * A.basis(W[j]);
    for (const auto& [g, c] : col.terms()) {
      auto it = std::lower_bound(W.begin(), W.end(), g);
      if (it == W.end() || *it != g) throw Error(ErrorCode::SupportNotInSubgroup, "W is not closed");
      m(static_cast<std::size_t>(it - W.begin()), j) = c;
    }
  }
  return m;
}

Vec coordinates(const AlgebraElement& x, const std::vector<GroupElement>& W) {
  require_support_in(W, x);
  Vec v = zero_vec(x.algebra().field(), W.size());
  for (const auto& [g, c] : x.terms())
    v[static_cast<std::size_t>(std::lower_bound(W.begin(), W.end(), g) - W.begin())] = c;
  return v;
}

AlgebraElement from_coordinates(const TwistedGroupAlgebra& A, const Vec& v, const std::vector<GroupElement>& W) {
  std::vector<AlgebraElement::Term> terms;
  for (std::size_t i = 0; i < W.size(); ++i)
    if (!v[i].is_zero()) terms.emplace_back(W[i], v[i]);
  return A.from_terms(std::move(terms));
}

namespace {

bool two_sided(const AlgebraElement& x, const AlgebraElement& y) {
  const AlgebraElement one = x.algebra().one();
  return x * y == one && y * x == one;
}

InverseResult finite_support_inverse(const AlgebraElement& x) {
  InverseResult r;
  r.strategy = "finite-support";
  const TwistedGroupAlgebra& A = x.algebra();
  const Group& G = A.group();
  std::vector<GroupElement> W;
  try {
    W = G.closure(x.support());
  } catch (const Error&) {
    r.status = InverseResult::Status::Unknown;
    r.reason = "support does not generate a small finite subgroup";
    return r;
  }
  const Matrix L = regular_representation(x, W);
  const std::size_t id = static_cast<std::size_t>(std::lower_bound(W.begin(), W.end(), G.identity()) - W.begin());
  const auto sol = solve(L, unit_vec(A.field(), W.size(), id));
  if (!sol) {
    r.status = InverseResult::Status::NotUnit;
    r.reason = "left regular representation on a subgroup of order " + std::to_string(W.size()) + " is singular";
    return r;
  }
  AlgebraElement y = from_coordinates(A, *sol, W);
  if (!two_sided(x, y)) {
    r.status = InverseResult::Status::Unknown;
    r.reason = "candidate inverse failed verification";
    return r;
  }
  r.status = InverseResult::Status::Unit;
  r.inverse = y;
  return r;
}

InverseResult component_inverse(const AlgebraElement& x, const InvertContext& ctx) {
  InverseResult r;
  r.strategy = "idempotent-components";
  r.status = InverseResult::Status::Unknown;
  const TwistedGroupAlgebra& A = x.algebra();
  const Group& G = A.group();
  const Cocycle& lambda = A.cocycle();
  const AlgebraElement one = A.one();

  // The idempotents must be central in K_lambda G for the zero-divisor
  // argument below.
  for (const auto& e : ctx.central_idempotents)
    for (const auto& s : G.generators(G.has_prufer() ? 1 : 0)) {
      const AlgebraElement us = A.basis(s);
      if (us * e != e * us) {
        r.reason = "context idempotent is not central";
        return r;
      }
    }

  // x = sum_c y_c u_c with c = (u, 0) and y_c in K_lambda t(G).
  std::map<GroupElement, std::vector<AlgebraElement::Term>> pieces;
  for (const auto& [g, a] : x.terms()) {
    const GroupElement c = G.torsion_coset_rep(g);
    const GroupElement t = G.mul(g, G.inv(c));
    pieces[c].emplace_back(t, a / lambda(t, c));
  }
  AlgebraElement inv = A.zero();
  for (const auto& e : ctx.central_idempotents) {
    std::optional<std::pair<GroupElement, AlgebraElement>> hit;
    for (const auto& [c, ts] : pieces) {
      AlgebraElement piece = e * A.from_terms(ts);
      if (piece.is_zero()) continue;
      if (hit) {
        r.reason = "an idempotent component meets several cosets of t(G)";
        return r;
      }
      hit.emplace(c, piece);
    }
    if (!hit) {
      r.status = InverseResult::Status::NotUnit;
      r.reason = "e x = 0 for a nonzero central idempotent e";
      return r;
    }
    const auto& [c, gamma] = *hit;
    const InverseResult local = finite_support_inverse(gamma + one - e);
    if (local.status == InverseResult::Status::NotUnit) {
      r.status = InverseResult::Status::NotUnit;
      r.reason = "component coefficient is a zero divisor";
      return r;
    }
    if (local.status != InverseResult::Status::Unit) {
      r.reason = local.reason;
      return r;
    }
    const GroupElement ci = G.inv(c);
    const AlgebraElement uc_inv = A.term(ci, lambda(ci, c).inv());
    inv = inv + uc_inv * (e * *local.inverse);
  }
  if (!two_sided(x, inv)) {
    r.reason = "assembled inverse failed verification";
    return r;
  }
  r.status = InverseResult::Status::Unit;
  r.inverse = inv;
  return r;
}

}  // namespace

InverseResult try_invert(const AlgebraElement& x, const InvertContext* ctx) {
  if (x.is_zero()) {
    InverseResult r;
    r.status = InverseResult::Status::NotUnit;
    r.strategy = "zero";
    r.reason = "zero is not a unit";
    return r;
  }
  const TwistedGroupAlgebra& A = x.algebra();
  const Group& G = A.group();
  bool finite_support = true;
  for (const auto& g : x.support())
    if (!g.free_is_zero()) finite_support = false;
  if (finite_support) {
    InverseResult r = finite_support_inverse(x);
    if (r.status != InverseResult::Status::Unknown) return r;
  }
  if (x.terms().size() == 1) {
    const auto& [g, a] = x.terms().front();
    const GroupElement gi = G.inv(g);
    AlgebraElement y = A.term(gi, a.inv() * A.cocycle()(gi, g).inv());
    InverseResult r;
    r.strategy = "trivial-unit";
    if (two_sided(x, y)) {
      r.status = InverseResult::Status::Unit;
      r.inverse = y;
    } else {
      r.status = InverseResult::Status::Unknown;
      r.reason = "trivial-unit inverse failed verification";
    }
    return r;
  }
  if (ctx && !ctx->central_idempotents.empty()) return component_inverse(x, *ctx);
  InverseResult r;
  r.status = InverseResult::Status::Unknown;
  r.strategy = "none";
  r.reason = "no strategy applies";
  return r;
}

AlgebraElement inverse_or_throw(const AlgebraElement& x, const InvertContext* ctx) {
  InverseResult r = try_invert(x, ctx);
  if (r.status != InverseResult::Status::Unit)
    throw Error(ErrorCode::NotUnit, x.to_string() + ": " + r.reason);
  return *r.inverse;
}

Lemma3Result lemma3_unit(const TwistedGroupAlgebra& A, const GroupElement& g, const Scalar& alpha) {
  const Group& G = A.group();
  const auto n = G.element_order(g);
  if (!n) throw Error(ErrorCode::InfiniteOrder, G.format(g) + " has infinite order");
  Lemma3Result res;
  const AlgebraElement ug = A.basis(g);
  res.element = ug - A.scalar(alpha);
  res.lambda_g = lambda_g(A.cocycle(), g);
  const Scalar an = alpha.pow(static_cast<std::int64_t>(*n));
  if (an == res.lambda_g) return res;
  // sum_{i<n} alpha^i u_g^(n-1-i), built by Horner: s <- s u_g + alpha^i.
  AlgebraElement s = A.zero();
  Scalar ai = A.field().one();
  std::vector<Scalar> alpha_pows;
  for (std::uint64_t i = 0; i < *n; ++i) {
    alpha_pows.push_back(ai);
    ai *= alpha;
  }
  for (std::uint64_t i = 0; i < *n; ++i) s = s * ug + A.scalar(alpha_pows[i]);
  AlgebraElement inv = s * (res.lambda_g - an).inv();
  if (!(res.element * inv == A.one() && inv * res.element == A.one()))
    throw Error(ErrorCode::NotUnit, "geometric-sum inverse failed verification");
  res.invertible = true;
  res.inverse = inv;
  return res;
}

AlgebraElement averaging_idempotent(const TwistedGroupAlgebra& A, const std::vector<GroupElement>& H_in,
                                    const std::function<Scalar(const GroupElement&)>& mu_in) {
  const Group& G = A.group();
  const Field& K = A.field();
  std::vector<GroupElement> H = H_in;
  std::sort(H.begin(), H.end());
  H.erase(std::unique(H.begin(), H.end()), H.end());
  if (K.characteristic() != 0 && H.size() % K.characteristic() == 0)
    throw Error(ErrorCode::CharacteristicDividesOrder,
                "characteristic " + std::to_string(K.characteristic()) + " divides |H| = " + std::to_string(H.size()));
  auto mu = [&](const GroupElement& h) { return mu_in ? mu_in(h) : K.one(); };
  for (const auto& h : H)
    for (const auto& k : H) {
      const GroupElement hk = G.mul(h, k);
      if (!std::binary_search(H.begin(), H.end(), hk))
        throw Error(ErrorCode::NotAGroupSection, "H is not closed under multiplication");
      if (mu(h) * mu(k) * A.cocycle()(h, k) != mu(hk))
        throw Error(ErrorCode::NotAGroupSection,
                    "mu_h u_h do not multiply like H at (" + G.format(h) + ", " + G.format(k) + ")");
    }
  std::vector<AlgebraElement::Term> terms;
  const Scalar inv_order = K.from_int(static_cast<std::int64_t>(H.size())).inv();
  for (const auto& h : H) terms.emplace_back(h, mu(h) * inv_order);
  return A.from_terms(std::move(terms));
}

AlgebraElement unit_commutator(const AlgebraElement& x, const AlgebraElement& y, const InvertContext* ctx) {
  return inverse_or_throw(x, ctx) * inverse_or_throw(y, ctx) * x * y;
}

AlgebraElement conjugate(const AlgebraElement& x, const AlgebraElement& v, const InvertContext* ctx) {
  return inverse_or_throw(x, ctx) * v * x;
}

PruferChain prufer_idempotent_chain(const TwistedGroupAlgebra& A, std::uint32_t kmax, bool use_roots,
                                    std::optional<Scalar> mu_opt) {
  const Group& G = A.group();
  const Field& K = A.field();
  if (!G.has_prufer()) throw Error(ErrorCode::InapplicableTorsion, "group has no Prufer component");
  const std::uint32_t q = G.prufer_q();
  if (K.characteristic() == q) throw Error(ErrorCode::CharacteristicEqualsQ, "char(K) = q = " + std::to_string(q));
  if (kmax == 0) throw Error(ErrorCode::Schema, "chain needs at least one level");
  std::uint64_t qk = 1;
  for (std::uint32_t i = 0; i < kmax; ++i) {
    qk *= q;
    if (qk > (std::uint64_t{1} << 20)) throw Error(ErrorCode::CapExceeded, "q^kmax exceeds 2^20");
  }
  const Scalar mu = mu_opt ? *mu_opt : K.one();

  PruferChain chain;
  std::vector<Scalar> eps(kmax + 1, K.one());
  if (use_roots) {
    std::optional<Scalar> top;
    if (K.is_finite()) {
      for (const auto& x : solve_power_equation(K, qk, K.one()))
        if (K.multiplicative_order(x) == qk) {
          top = x;
          break;
        }
    } else {
      top = primitive_root_of_unity(K, qk);
    }
    if (!top)
      throw Error(ErrorCode::MissingRootOfUnity,
                  K.name() + " has no primitive " + std::to_string(qk) + "-th root of unity");
    eps[kmax] = *top;
    for (std::uint32_t j = kmax; j-- > 1;) eps[j] = eps[j + 1].pow(static_cast<std::int64_t>(q));
  }
  std::uint64_t qj = 1;
  for (std::uint32_t j = 1; j <= kmax; ++j) {
    qj *= q;
    const AlgebraElement w = A.term(G.prufer_element(1, j), eps[j] * mu);
    AlgebraElement sum = A.zero(), p = A.one();
    for (std::uint64_t i = 0; i < qj; ++i) {
      sum = sum + p;
      p = p * w;
    }
    if (p != A.one())
      throw Error(ErrorCode::NotAGroupSection, "(eps_j mu u_aj)^(q^j) != 1 at level " + std::to_string(j));
    chain.idempotents.push_back(sum * K.from_int(static_cast<std::int64_t>(qj)).inv());
    chain.roots.push_back(eps[j]);
  }
  return chain;
}

}  // namespace fcu
