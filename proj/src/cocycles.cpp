#include "fcunits/cocycles.hpp"

#include <algorithm>

namespace fcu {

namespace {

class StructuredImpl final : public CocycleImpl {
 public:
  StructuredImpl(const Group& g, std::shared_ptr<const StructuredCocycle> d) : group_(g), data_(std::move(d)) {}

  Scalar eval(const GroupElement& g, const GroupElement& h) const override {
    const std::uint32_t n = group_.torsion_order();
    Scalar v = data_->tau[std::size_t{g.torsion} * n + h.torsion];
    if (!exponent_zero_) {
      std::int64_t e = 0;
      const std::uint32_t r = group_.rank();
      for (std::uint32_t i = 0; i < r; ++i)
        for (std::uint32_t j = i + 1; j < r; ++j) e += data_->N[i][j] * g.free[i] * h.free[j];
      if (e != 0) v *= data_->zeta.pow(e);
    }
    return v;
  }

  void finish() {
    exponent_zero_ = true;
    for (const auto& row : data_->N)
      for (auto x : row)
        if (x != 0) exponent_zero_ = false;
    if (data_->zeta.is_one()) exponent_zero_ = true;
  }

 private:
  const Group& group_;
  std::shared_ptr<const StructuredCocycle> data_;
  bool exponent_zero_ = true;
};

class FunctionImpl final : public CocycleImpl {
 public:
  explicit FunctionImpl(std::function<Scalar(const GroupElement&, const GroupElement&)> fn) : fn_(std::move(fn)) {}
  Scalar eval(const GroupElement& g, const GroupElement& h) const override { return fn_(g, h); }

 private:
  std::function<Scalar(const GroupElement&, const GroupElement&)> fn_;
};

class ProductImpl final : public CocycleImpl {
 public:
  ProductImpl(std::shared_ptr<const CocycleImpl> a, std::shared_ptr<const CocycleImpl> b)
      : a_(std::move(a)), b_(std::move(b)) {}
  Scalar eval(const GroupElement& g, const GroupElement& h) const override { return a_->eval(g, h) * b_->eval(g, h); }

 private:
  std::shared_ptr<const CocycleImpl> a_, b_;
};

}  // namespace

Cocycle Cocycle::trivial(GroupRef group, FieldRef field) {
  const std::uint32_t n = group->torsion_order(), r = group->rank();
  StructuredCocycle d;
  d.tau.assign(std::size_t{n} * n, field->one());
  d.zeta = field->one();
  d.N.assign(r, std::vector<std::int64_t>(r, 0));
  return structured(std::move(group), std::move(field), std::move(d));
}

Cocycle Cocycle::structured(GroupRef group, FieldRef field, StructuredCocycle data) {
  const std::uint32_t n = group->torsion_order(), r = group->rank();
  if (data.tau.size() != std::size_t{n} * n) throw Error(ErrorCode::Schema, "torsion table must be |T| x |T|");
  for (const auto& t : data.tau) {
    if (t.field() != field.get()) throw Error(ErrorCode::FieldMismatch, "torsion table entry in another field");
    if (t.is_zero()) throw Error(ErrorCode::ZeroValue, "torsion table entry is zero");
  }
  if (data.zeta.field() == nullptr) data.zeta = field->one();
  if (data.zeta.field() != field.get()) throw Error(ErrorCode::FieldMismatch, "zeta in another field");
  if (data.zeta.is_zero()) throw Error(ErrorCode::ZeroValue, "zeta is zero");
  if (data.N.empty()) data.N.assign(r, std::vector<std::int64_t>(r, 0));
  if (data.N.size() != r) throw Error(ErrorCode::Schema, "bilinear matrix must be r x r");
  for (std::uint32_t i = 0; i < r; ++i) {
    if (data.N[i].size() != r) throw Error(ErrorCode::Schema, "bilinear matrix must be r x r");
    for (std::uint32_t j = 0; j <= i; ++j)
      if (data.N[i][j] != 0) throw Error(ErrorCode::Schema, "bilinear matrix must be strictly upper triangular");
  }
  Cocycle c;
  c.structured_ = std::make_shared<const StructuredCocycle>(std::move(data));
  auto impl = std::make_shared<StructuredImpl>(*group, c.structured_);
  impl->finish();
  c.impl_ = impl;
  c.group_ = std::move(group);
  c.field_ = std::move(field);
  return c;
}

Cocycle Cocycle::from_function(GroupRef group, FieldRef field,
                               std::function<Scalar(const GroupElement&, const GroupElement&)> fn) {
  Cocycle c;
  c.impl_ = std::make_shared<FunctionImpl>(std::move(fn));
  c.group_ = std::move(group);
  c.field_ = std::move(field);
  return c;
}

Cocycle Cocycle::operator*(const Cocycle& rhs) const {
  if (group_ != rhs.group_) throw Error(ErrorCode::GroupMismatch, "cocycles on different groups");
  if (field_ != rhs.field_) throw Error(ErrorCode::FieldMismatch, "cocycles over different fields");
  Cocycle c;
  c.impl_ = std::make_shared<ProductImpl>(impl_, rhs.impl_);
  c.group_ = group_;
  c.field_ = field_;
  return c;
}

CocycleCheck validate_cocycle(const Cocycle& lambda, int radius, std::uint32_t prufer_level) {
  const Group& G = lambda.group();
  const auto B = G.box(radius, prufer_level);
  const std::size_t m = B.size();
  CocycleCheck result;
  std::vector<GroupElement> prod(m * m);
  std::vector<Scalar> lam(m * m);
  for (std::size_t i = 0; i < m; ++i)
    for (std::size_t j = 0; j < m; ++j) {
      prod[i * m + j] = G.mul(B[i], B[j]);
      lam[i * m + j] = lambda(B[i], B[j]);
      if (lam[i * m + j].is_zero()) {
        result.valid = false;
        result.reason = "zero value";
        result.counterexample = Triple{B[i], B[j], G.identity()};
        return result;
      }
    }
  for (std::size_t i = 0; i < m; ++i)
    for (std::size_t j = 0; j < m; ++j) {
      const GroupElement& gh = prod[i * m + j];
      const Scalar& l_gh = lam[i * m + j];
      for (std::size_t k = 0; k < m; ++k) {
        ++result.triples_checked;
        const GroupElement& hk = prod[j * m + k];
        const Scalar lhs = l_gh * lambda(gh, B[k]);
        const Scalar rhs = lam[j * m + k] * lambda(B[i], hk);
        if (lhs != rhs) {
          result.valid = false;
          result.reason = "identity";
          result.counterexample = Triple{B[i], B[j], B[k]};
          return result;
        }
      }
    }
  const GroupElement e = G.identity();
  if (!lambda(e, e).is_one()) {
    result.valid = false;
    result.reason = "normalization";
    result.counterexample = Triple{e, e, e};
  }
  return result;
}

Cocycle coboundary(GroupRef group, FieldRef field, std::function<Scalar(const GroupElement&)> mu) {
  const Group* G = group.get();
  const GroupElement e = G->identity();
  auto norm_mu = [mu, e, one = field->one()](const GroupElement& g) { return g == e ? one : mu(g); };
  return Cocycle::from_function(std::move(group), std::move(field),
                                [G, norm_mu](const GroupElement& g, const GroupElement& h) {
                                  const Scalar d = norm_mu(G->mul(g, h));
                                  if (d.is_zero()) throw Error(ErrorCode::ZeroValue, "coboundary function is zero");
                                  return norm_mu(g) * norm_mu(h) / d;
                                });
}

Cocycle coboundary(GroupRef group, FieldRef field, const std::vector<Scalar>& torsion_values,
                   const std::vector<Scalar>& free_values) {
  if (torsion_values.size() != group->torsion_order())
    throw Error(ErrorCode::Schema, "need one coboundary value per torsion element");
  if (free_values.size() != group->rank()) throw Error(ErrorCode::Schema, "need one value per free generator");
  for (const auto& v : torsion_values)
    if (v.is_zero()) throw Error(ErrorCode::ZeroValue, "coboundary value is zero");
  for (const auto& v : free_values)
    if (v.is_zero()) throw Error(ErrorCode::ZeroValue, "coboundary value is zero");
  const std::uint32_t r = group->rank();
  return coboundary(std::move(group), std::move(field), [torsion_values, free_values, r](const GroupElement& g) {
    Scalar v = torsion_values[g.torsion];
    for (std::uint32_t i = 0; i < r; ++i)
      if (g.free[i] != 0) v *= free_values[i].pow(g.free[i]);
    return v;
  });
}

Scalar lambda_g(const Cocycle& lambda, const GroupElement& g) {
  const Group& G = lambda.group();
  const auto n = G.element_order(g);
  if (!n) throw Error(ErrorCode::InfiniteOrder, G.format(g) + " has infinite order");
  Scalar acc = lambda.field().one();
  GroupElement power = g;  // g^i
  for (std::uint64_t i = 1; i < *n; ++i) {
    acc *= lambda(g, power);
    power = G.mul(power, g);
  }
  return acc;
}

Scalar commutator_scalar(const Cocycle& lambda, const GroupElement& a, const GroupElement& b) {
  const Group& G = lambda.group();
  const GroupElement ai = G.inv(a), bi = G.inv(b);
  const GroupElement aibi = G.mul(ai, bi);
  const GroupElement aibia = G.mul(aibi, a);
  return lambda(ai, a).inv() * lambda(bi, b).inv() * lambda(ai, bi) * lambda(aibi, a) * lambda(aibia, b);
}

std::set<Scalar> condition4_set(const Cocycle& lambda, const GroupElement& g, std::uint32_t prufer_level) {
  return condition4_set(lambda, g, lambda.group().torsion_elements(prufer_level));
}

std::set<Scalar> condition4_set(const Cocycle& lambda, const GroupElement& g, const std::vector<GroupElement>& hs) {
  const Group& G = lambda.group();
  std::set<Scalar> out;
  for (const auto& h : hs) {
    const GroupElement hi = G.inv(h);
    out.insert(lambda(h, hi).inv() * lambda(hi, g) * lambda(G.mul(hi, g), h));
  }
  return out;
}

SymmetryCheck is_symmetric_on_torsion(const Cocycle& lambda, int radius, std::uint32_t prufer_level) {
  const Group& G = lambda.group();
  SymmetryCheck out;
  const auto tors = G.torsion_elements(prufer_level);
  for (const auto& g : G.box(radius, prufer_level))
    for (const auto& h : tors)
      if (lambda(g, h) != lambda(h, g)) {
        out.symmetric = false;
        out.witness = std::make_pair(g, h);
        return out;
      }
  return out;
}

}  // namespace fcu
