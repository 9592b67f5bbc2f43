#pragma once

// The twisted group algebra K_lambda G: finitely supported sums sum a_g u_g
// with u_g u_h = lambda_{g,h} u_gh.

#include <functional>
#include <memory>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "fcunits/cocycles.hpp"
#include "fcunits/linalg.hpp"

namespace fcu {

class TwistedGroupAlgebra;
using AlgebraRef = std::shared_ptr<const TwistedGroupAlgebra>;

class AlgebraElement {
 public:
  using Term = std::pair<GroupElement, Scalar>;

  AlgebraElement() = default;

  const TwistedGroupAlgebra& algebra() const { return *alg_; }
  /// Sorted by group element; no zero coefficients.
  const std::vector<Term>& terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }
  Scalar coeff(const GroupElement& g) const;
  std::vector<GroupElement> support() const;

  AlgebraElement operator+(const AlgebraElement& rhs) const;
  AlgebraElement operator-(const AlgebraElement& rhs) const;
  AlgebraElement operator-() const;
  AlgebraElement operator*(const AlgebraElement& rhs) const;
  AlgebraElement operator*(const Scalar& s) const;
  bool operator==(const AlgebraElement& rhs) const { return alg_ == rhs.alg_ && terms_ == rhs.terms_; }

  std::string to_string() const;

 private:
  friend class TwistedGroupAlgebra;
  AlgebraElement(const TwistedGroupAlgebra* alg, std::vector<Term> terms);
  void require_same(const AlgebraElement& rhs) const;
  static std::vector<Term> canonicalize(std::vector<Term> terms);

  const TwistedGroupAlgebra* alg_ = nullptr;
  std::vector<Term> terms_;
};

class TwistedGroupAlgebra {
 public:
  /// Validates the cocycle on box(radius); throws InvalidCocycle with the
  /// counterexample triple in the message.
  static AlgebraRef make(Cocycle lambda, int radius = 3, std::uint32_t prufer_level = 0);
  /// For cocycles already validated elsewhere.
  static AlgebraRef make_trusted(Cocycle lambda);

  const Group& group() const { return lambda_.group(); }
  const Field& field() const { return lambda_.field(); }
  const Cocycle& cocycle() const { return lambda_; }

  AlgebraElement zero() const { return AlgebraElement(this, {}); }
  AlgebraElement one() const { return basis(group().identity()); }
  AlgebraElement basis(const GroupElement& g) const;
  AlgebraElement term(const GroupElement& g, const Scalar& c) const;
  AlgebraElement scalar(const Scalar& c) const { return term(group().identity(), c); }
  AlgebraElement from_terms(std::vector<AlgebraElement::Term> terms) const;

 private:
  explicit TwistedGroupAlgebra(Cocycle lambda) : lambda_(std::move(lambda)) {}
  Cocycle lambda_;
};

AlgebraElement power(const AlgebraElement& x, std::uint64_t n);
bool is_idempotent(const AlgebraElement& x);
/// x^|W| = 0, where support(x) lies in the finite subgroup W.
/// Throws SupportNotInSubgroup.
bool is_nilpotent_in(const std::vector<GroupElement>& W, const AlgebraElement& x);

/// Left multiplication by x on the basis (u_w), w in W (column j holds x u_wj).
/// Throws SupportNotInSubgroup.
Matrix regular_representation(const AlgebraElement& x, const std::vector<GroupElement>& W);
/// Coefficients of x on the basis (u_w).
Vec coordinates(const AlgebraElement& x, const std::vector<GroupElement>& W);
AlgebraElement from_coordinates(const TwistedGroupAlgebra& A, const Vec& v, const std::vector<GroupElement>& W);

struct InvertContext {
  /// Central orthogonal idempotents of K_lambda t(G) summing to 1.
  std::vector<AlgebraElement> central_idempotents;
};

struct InverseResult {
  enum class Status { Unit, NotUnit, Unknown };
  Status status = Status::Unknown;
  std::optional<AlgebraElement> inverse;
  std::string strategy;  // "finite-support", "trivial-unit", "idempotent-components"
  std::string reason;
};

/// Strategies in order: (a) finite support, regular representation;
/// (b) trivial unit; (c) idempotent components with monomial pieces. Any
/// returned inverse has been checked on both sides.
InverseResult try_invert(const AlgebraElement& x, const InvertContext* ctx = nullptr);
/// Inverse or Error(NotUnit).
AlgebraElement inverse_or_throw(const AlgebraElement& x, const InvertContext* ctx = nullptr);

struct Lemma3Result {
  bool invertible = false;
  AlgebraElement element;  // u_g - alpha
  std::optional<AlgebraElement> inverse;
  Scalar lambda_g;
};

/// u_g - alpha and, when alpha^n != lambda_g, its inverse as the geometric sum
/// (u_g^(n-1) + alpha u_g^(n-2) + ... + alpha^(n-1)) (lambda_g - alpha^n)^-1.
/// Throws InfiniteOrder.
Lemma3Result lemma3_unit(const TwistedGroupAlgebra& A, const GroupElement& g, const Scalar& alpha);

/// |H|^-1 sum mu_h u_h. Throws CharacteristicDividesOrder, NotAGroupSection.
AlgebraElement averaging_idempotent(const TwistedGroupAlgebra& A, const std::vector<GroupElement>& H,
                                    const std::function<Scalar(const GroupElement&)>& mu = {});

/// x^-1 y^-1 x y; throws NotUnit.
AlgebraElement unit_commutator(const AlgebraElement& x, const AlgebraElement& y, const InvertContext* ctx = nullptr);
/// x^-1 v x; throws NotUnit.
AlgebraElement conjugate(const AlgebraElement& x, const AlgebraElement& v, const InvertContext* ctx = nullptr);

struct PruferChain {
  std::vector<AlgebraElement> idempotents;  // e_1 ... e_kmax
  std::vector<Scalar> roots;                // epsilon_1 ... epsilon_kmax
};

/// e_j = q^-j sum_{i < q^j} (eps_j mu u_{a_j})^i with a_j = 1/q^j in the Prufer
/// component and eps_{j+1}^q = eps_j primitive q^j-th roots (or all 1 when
/// use_roots is false). Throws CharacteristicEqualsQ, MissingRootOfUnity,
/// NotAGroupSection.
PruferChain prufer_idempotent_chain(const TwistedGroupAlgebra& A, std::uint32_t kmax, bool use_roots = true,
                                    std::optional<Scalar> mu = std::nullopt);

}  // namespace fcu
