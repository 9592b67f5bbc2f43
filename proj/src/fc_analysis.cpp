#include "fcunits/fc_analysis.hpp"

#include <algorithm>
#include <map>
#include <random>
#include <set>
#include <sstream>

namespace fcu {

namespace {

const char* const kReadingNote =
    "condition-2 sets {lambda_{h,h^-1}^-1 lambda_{h^-1,g} lambda_{h^-1 g,h}} are read with h ranging over t(G)";

Json element_json(const Group& G, const GroupElement& g) {
  return Json{{"element", encode_element(G, g)}, {"text", G.format(g)}};
}

Json pair_json(const Group& G, const GroupElement& a, const GroupElement& b) {
  return Json{{"a", element_json(G, a)}, {"b", element_json(G, b)}};
}

Json scalar_set_json(const std::set<Scalar>& s) {
  Json out = Json::array();
  for (const auto& x : s) out.push_back(encode_scalar(x));
  return out;
}

Json algebra_json(const AlgebraElement& x) {
  return Json{{"terms", encode_algebra_element(x)}, {"text", x.to_string()}};
}

Condition make_condition(std::string id, std::optional<bool> pass, std::string detail, Json witness = nullptr) {
  return Condition{std::move(id), pass, std::move(detail), std::move(witness)};
}

std::vector<GroupElement> probe_generators(const Instance& inst) {
  const Group& G = inst.group();
  return G.generators(G.has_prufer() ? std::max<std::uint32_t>(inst.level(), 1) : 1);
}

/// First basis pair (a, b) of K_lambda W with u_a u_b != u_b u_a.
std::optional<std::pair<GroupElement, GroupElement>> noncommuting_pair(const Instance& inst,
                                                                       const std::vector<GroupElement>& W) {
  const Group& G = inst.group();
  const Cocycle& lam = inst.cocycle();
  for (std::size_t i = 0; i < W.size(); ++i)
    for (std::size_t j = i + 1; j < W.size(); ++j) {
      const auto& a = W[i];
      const auto& b = W[j];
      if (G.mul(a, b) != G.mul(b, a) || lam(a, b) != lam(b, a)) return std::make_pair(a, b);
    }
  return std::nullopt;
}

/// First (x, g) with u_g x != x u_g.
std::optional<GroupElement> noncentral_generator(const AlgebraElement& x, const std::vector<GroupElement>& gens) {
  for (const auto& g : gens)
    if (!centrality_check(x, {g})) return g;
  return std::nullopt;
}

Json decomposition_json(const FiniteSubalgebra& S, const FieldsDecomposition& fd) {
  Json comps = Json::array();
  for (const auto& c : fd.decomposition.components) {
    Json cj{{"dimension", c.dimension},
            {"is_field", c.is_field},
            {"certificate", c.certificate},
            {"idempotent", algebra_json(S.to_element(c.idempotent))}};
    if (c.field_polynomial) cj["field_polynomial"] = encode_poly(*c.field_polynomial);
    comps.push_back(std::move(cj));
  }
  Json out{{"dimension", S.alg.dim()},
           {"radical_dimension", fd.decomposition.radical.size()},
           {"sum_of_fields", fd.is_sum_of_fields},
           {"components", comps}};
  if (fd.witness) out["witness"] = Json{{"kind", fd.witness_kind}, {"element", algebra_json(S.to_element(*fd.witness))}};
  return out;
}

std::string dims_text(const FieldsDecomposition& fd) {
  std::ostringstream s;
  s << "components of dimension";
  for (const auto& c : fd.decomposition.components) s << " " << c.dimension;
  return s.str();
}

bool any_order_divisible(const Group& G, const std::vector<GroupElement>& W, std::uint32_t p) {
  if (p == 0) return false;
  for (const auto& t : W)
    if (*G.element_order(t) % p == 0) return true;
  return false;
}

Condition fc_condition(const Group& G) {
  const auto c = G.is_fc();
  return make_condition("fc", c.is_fc, c.reason, Json{{"class_size_bound", c.class_size_bound}});
}

Condition condition4_condition(const Instance& inst, const std::vector<GroupElement>& hs, const std::string& over) {
  const Group& G = inst.group();
  Json sets = Json::array();
  for (const auto& g : probe_generators(inst)) {
    const auto s = condition4_set(inst.cocycle(), g, hs);
    sets.push_back(Json{{"g", element_json(G, g)}, {"size", s.size()}, {"set", scalar_set_json(s)}});
  }
  return make_condition("4", true, "finite for every generator, h over " + over, Json{{"sets", sets}});
}

void finish(Verdict& v) {
  const bool all = std::all_of(v.conditions.begin(), v.conditions.end(),
                               [](const Condition& c) { return c.pass.has_value() && *c.pass; });
  if (all) {
    v.result = Verdict::Result::FC;
    return;
  }
  v.result = Verdict::Result::NotFC;
  for (const auto& c : v.conditions)
    if (c.pass.has_value() && !*c.pass) {
      v.evidence["first_failure"] = c.id;
      return;
    }
  // Only unevaluated conditions: nothing was refuted.
  v.result = Verdict::Result::Inapplicable;
  v.notes.push_back("no condition failed but some could not be evaluated");
}

AlgebraElement random_element(const TwistedGroupAlgebra& A, const std::vector<GroupElement>& pool, std::mt19937_64& rng) {
  std::uniform_int_distribution<std::size_t> pick(0, pool.size() - 1), len(1, 3);
  std::vector<AlgebraElement::Term> terms;
  const std::size_t n = len(rng);
  for (std::size_t i = 0; i < n; ++i) terms.emplace_back(pool[pick(rng)], A.field().random_nonzero(rng));
  return A.from_terms(std::move(terms));
}

}  // namespace

// ---------------------------------------------------------------------------

std::uint32_t Instance::level() const {
  if (!group().has_prufer()) return 0;
  return caps.truncation_level ? caps.truncation_level : group().prufer_levels();
}

std::vector<GroupElement> Instance::torsion() const { return group().torsion_elements(level()); }

Instance make_instance(std::string name, Cocycle lambda, InstanceCaps caps, std::uint64_t seed) {
  const Group& G = lambda.group();
  const std::uint32_t level =
      G.has_prufer() ? (caps.truncation_level ? caps.truncation_level : G.prufer_levels()) : 0;
  Instance inst;
  inst.name = std::move(name);
  inst.algebra = TwistedGroupAlgebra::make(std::move(lambda), caps.box_radius, level);
  inst.caps = caps;
  inst.seed = seed;
  return inst;
}

std::string to_string(Verdict::Result r) {
  switch (r) {
    case Verdict::Result::FC: return "FC";
    case Verdict::Result::NotFC: return "NotFC";
    case Verdict::Result::EvidenceOnly: return "EvidenceOnly";
    case Verdict::Result::Inapplicable: return "Inapplicable";
  }
  return "?";
}

Json Verdict::to_json() const {
  Json conds = Json::array();
  for (const auto& c : conditions) {
    Json cj{{"id", c.id}, {"detail", c.detail}};
    cj["pass"] = c.pass ? Json(*c.pass) : Json(nullptr);
    if (!c.witness.is_null()) cj["witness"] = c.witness;
    conds.push_back(std::move(cj));
  }
  return Json{{"result", to_string(result)},
              {"theorem", theorem},
              {"conditions", conds},
              {"notes", notes},
              {"evidence", evidence}};
}

// ---------------------------------------------------------------------------

std::vector<Condition> necessary_conditions(const Instance& inst) {
  const Group& G = inst.group();
  const Field& K = inst.field();
  const Cocycle& lam = inst.cocycle();
  const auto tor = inst.torsion();
  std::vector<Condition> out;

  // (i) K_lambda t(G) commutative.
  bool commutative = true;
  for (std::size_t i = 0; i < tor.size() && commutative; ++i)
    for (std::size_t j = i + 1; j < tor.size(); ++j)
      if (G.mul(tor[i], tor[j]) != G.mul(tor[j], tor[i])) {
        out.push_back(make_condition("necessary-i", false, "t(G) is not abelian", pair_json(G, tor[i], tor[j])));
        commutative = false;
        break;
      }
  if (commutative)
    for (std::size_t i = 0; i < tor.size() && commutative; ++i)
      for (std::size_t j = i + 1; j < tor.size(); ++j)
        if (lam(tor[i], tor[j]) != lam(tor[j], tor[i])) {
          Json w = pair_json(G, tor[i], tor[j]);
          w["lambda_ab"] = encode_scalar(lam(tor[i], tor[j]));
          w["lambda_ba"] = encode_scalar(lam(tor[j], tor[i]));
          out.push_back(make_condition("necessary-i", false, "lambda is not symmetric on t(G)", w));
          commutative = false;
          break;
        }

  // (ii) primitive idempotents of K_lambda t(G) central.
  if (commutative && !any_order_divisible(G, tor, K.characteristic()) && tor.size() <= kMaxTorsionOrder) {
    const FiniteSubalgebra S = span_subalgebra(inst.algebra, tor);
    const auto gens = probe_generators(inst);
    for (const auto& e : primitive_idempotents(S.alg)) {
      const AlgebraElement x = S.to_element(e);
      if (auto g = noncentral_generator(x, gens)) {
        out.push_back(make_condition("necessary-ii", false, "a primitive idempotent of K_lambda t(G) is not central",
                                     Json{{"idempotent", algebra_json(x)}, {"generator", element_json(G, *g)}}));
        break;
      }
    }
  }

  // (iii) K infinite: t(G) central and lambda symmetric against t(G).
  if (!K.is_finite()) {
    bool central = true;
    for (const auto& t : tor) {
      if (!central) break;
      for (const auto& g : probe_generators(inst))
        if (G.mul(t, g) != G.mul(g, t)) {
          out.push_back(make_condition("necessary-iii", false, "t(G) is not central", pair_json(G, t, g)));
          central = false;
          break;
        }
    }
    if (central) {
      const auto sym = is_symmetric_on_torsion(lam, inst.caps.box_radius, inst.level());
      if (!sym.symmetric)
        out.push_back(make_condition("necessary-iii", false, "lambda(g, h) != lambda(h, g) for torsion h",
                                     pair_json(G, sym.witness->first, sym.witness->second)));
    }
  }
  return out;
}

// ---------------------------------------------------------------------------

Verdict check_theorem3(const Instance& inst) {
  const Group& G = inst.group();
  const Field& K = inst.field();
  const std::uint32_t p = K.characteristic();
  if (p == 0) throw Error(ErrorCode::InapplicableCharacteristic, "characteristic 0");
  if (G.has_prufer()) throw Error(ErrorCode::InapplicableTorsion, "t(G) has a Prufer component");
  const auto tor = inst.torsion();
  if (!any_order_divisible(G, tor, p))
    throw Error(ErrorCode::InapplicableCharacteristic, "t(G) has no " + std::to_string(p) + "-element");

  Verdict v;
  v.theorem = "T3";
  v.notes.push_back(kReadingNote);
  v.notes.push_back("finite fields are perfect");
  v.conditions.push_back(fc_condition(G));

  const auto Gp = G.commutator_subgroup();
  {
    Json w{{"p", p}, {"commutator_subgroup_order", Gp.size()}, {"commutator_subgroup", Json::array()}};
    for (const auto& g : Gp) w["commutator_subgroup"].push_back(element_json(G, g));
    v.conditions.push_back(make_condition("1", p == 2 && Gp.size() == 2,
                                          "p = " + std::to_string(p) + ", |G'| = " + std::to_string(Gp.size()), w));
  }

  std::optional<std::vector<GroupElement>> H;
  {
    std::optional<std::pair<GroupElement, GroupElement>> noncentral;
    for (const auto& t : tor) {
      for (const auto& g : probe_generators(inst))
        if (G.mul(t, g) != G.mul(g, t)) {
          noncentral = std::make_pair(t, g);
          break;
        }
      if (noncentral) break;
    }
    if (noncentral) {
      v.conditions.push_back(
          make_condition("2", false, "t(G) is not central", pair_json(G, noncentral->first, noncentral->second)));
    } else {
      std::vector<GroupElement> odd;
      for (const auto& t : tor)
        if (*G.element_order(t) % 2 == 1) odd.push_back(t);
      H = odd;
      std::size_t meet = 0;
      for (const auto& g : Gp) meet += std::binary_search(odd.begin(), odd.end(), g);
      const bool ok = meet == 1 && Gp.size() * odd.size() == tor.size();
      Json w{{"torsion_order", tor.size()}, {"commutator_subgroup_order", Gp.size()}, {"odd_part_order", odd.size()}};
      v.conditions.push_back(make_condition(
          "2", ok,
          ok ? "t(G) central and t(G) = G' x H with H the odd part" : "t(G) is not G' x H with H of odd order", w));
    }
  }

  if (H) {
    const FiniteSubalgebra S = span_subalgebra(inst.algebra, *H);
    if (auto nc = noncommuting_pair(inst, *H)) {
      v.conditions.push_back(make_condition("3", false, "K_lambda H is not commutative", pair_json(G, nc->first, nc->second)));
    } else {
      const auto fd = fields_decomposition(S.alg);
      v.conditions.push_back(make_condition(
          "3", fd.is_sum_of_fields,
          fd.is_sum_of_fields ? "K_lambda H is a sum of fields, " + dims_text(fd) : "K_lambda H is not a sum of fields",
          decomposition_json(S, fd)));
    }
    v.conditions.push_back(condition4_condition(inst, *H, "H"));
  } else {
    v.conditions.push_back(make_condition("3", std::nullopt, "H is undefined since condition 2 fails"));
    v.conditions.push_back(make_condition("4", std::nullopt, "H is undefined since condition 2 fails"));
  }
  finish(v);
  return v;
}

// ---------------------------------------------------------------------------

std::pair<GroupElement, int> QuotientAlgebra::split(const GroupElement& g) const {
  const GroupElement b = map.lift(map.project(g));
  if (b == g) return {b, 0};
  const Group& G = *map.source;
  if (G.mul(b, a) != g) throw std::logic_error("coset representative does not split g");
  return {b, 1};
}

AlgebraElement QuotientAlgebra::project(const AlgebraElement& x) const {
  std::vector<AlgebraElement::Term> terms;
  for (const auto& [g, c] : x.terms()) {
    const auto [b, s] = split(g);
    Scalar coeff = c;
    if (s == 1) coeff = coeff / lambda(b, a) * mu_root;
    terms.emplace_back(map.project(g), coeff);
  }
  return target->from_terms(std::move(terms));
}

QuotientAlgebra build_quotient_algebra(const Instance& inst, std::optional<GroupElement> explicit_a,
                                       std::size_t sample_pairs) {
  const Group& G = inst.group();
  const Field& K = inst.field();
  const Cocycle& lam = inst.cocycle();
  std::vector<GroupElement> kernel;
  if (explicit_a) {
    G.check(*explicit_a);
    if (K.characteristic() != 2 || G.element_order(*explicit_a) != std::optional<std::uint64_t>{2} ||
        !G.is_central(*explicit_a))
      throw Error(ErrorCode::ConditionsNotMet, "a must be a central involution in characteristic 2");
    kernel = {G.identity(), *explicit_a};
  } else {
    const Verdict v = check_theorem3(inst);
    for (const auto& c : v.conditions)
      if ((c.id == "1" || c.id == "2") && !(c.pass && *c.pass))
        throw Error(ErrorCode::ConditionsNotMet, "condition " + c.id + " fails: " + c.detail);
    kernel = G.commutator_subgroup();
  }

  QuotientAlgebra Q;
  Q.lambda = lam;
  Q.a = kernel[1];
  const auto roots = solve_power_equation(K, 2, lam(Q.a, Q.a));
  if (roots.empty()) throw Error(ErrorCode::NoSquareRoot, "x^2 = " + lam(Q.a, Q.a).to_string() + " has no solution");
  Q.mu_root = roots.front();
  Q.map = G.quotient_by(kernel);

  const QuotientMap map = Q.map;
  const GroupElement a = Q.a;
  const Scalar root = Q.mu_root;
  const Group* Gptr = &G;
  auto split = [map](const GroupElement& g) -> std::pair<GroupElement, int> {
    const GroupElement b = map.lift(map.project(g));
    if (b == g) return {b, 0};
    return {b, 1};
  };
  Cocycle mu = Cocycle::from_function(Q.map.target, inst.algebra->cocycle().field_ref(),
                                      [map, a, root, lam, split, Gptr](const GroupElement& h1, const GroupElement& h2) {
                                        const GroupElement b1 = map.lift(h1), b2 = map.lift(h2);
                                        const auto [bk, s] = split(Gptr->mul(b1, b2));
                                        Scalar v = lam(b1, b2);
                                        if (s == 1) v = v / lam(bk, a) * root;
                                        return v;
                                      });
  Q.mu_check = validate_cocycle(mu, inst.caps.box_radius);
  Q.target = TwistedGroupAlgebra::make_trusted(mu);

  const TwistedGroupAlgebra& A = *inst.algebra;
  Q.ideal_generator = A.basis(Q.a) - A.scalar(Q.mu_root);
  Q.ideal_square_zero = (Q.ideal_generator * Q.ideal_generator).is_zero();

  std::mt19937_64 rng(inst.seed ^ 0x9a0f1u);
  const auto pool = G.box(1);
  Q.projection_multiplicative = true;
  for (std::size_t i = 0; i < sample_pairs; ++i) {
    const AlgebraElement x = random_element(A, pool, rng), y = random_element(A, pool, rng);
    ++Q.pairs_checked;
    if (Q.project(x * y) != Q.project(x) * Q.project(y)) {
      Q.projection_multiplicative = false;
      Q.failing_pair = std::make_pair(x, y);
      break;
    }
  }
  return Q;
}

// ---------------------------------------------------------------------------

namespace {

struct T4Context {
  FiniteSubalgebra S;
  std::vector<AlgebraElement> idempotents;
  bool commutative = false;
};

void theorem4_gate(const Instance& inst) {
  const Group& G = inst.group();
  if (G.has_prufer()) throw Error(ErrorCode::InapplicableTorsion, "t(G) has a Prufer component");
  if (any_order_divisible(G, inst.torsion(), inst.field().characteristic()))
    throw Error(ErrorCode::InapplicableCharacteristic,
                "characteristic " + std::to_string(inst.field().characteristic()) + " divides a torsion order");
}

}  // namespace

Verdict check_theorem4(const Instance& inst) {
  theorem4_gate(inst);
  const Group& G = inst.group();
  const Field& K = inst.field();
  const auto tor = inst.torsion();
  const auto gens = probe_generators(inst);

  Verdict v;
  v.theorem = "T4";
  v.notes.push_back(kReadingNote);
  v.notes.push_back("t(G) is finite, so K_lambda t(G) is finite-dimensional with finitely many idempotents");
  v.conditions.push_back(fc_condition(G));

  const FiniteSubalgebra S = span_subalgebra(inst.algebra, tor);
  const auto nc = noncommuting_pair(inst, tor);

  std::optional<FieldsDecomposition> fd;
  if (!nc) {
    fd = fields_decomposition(S.alg);
    Json idems = Json::array();
    std::optional<Json> failure;
    for (const auto& e : primitive_idempotents(S.alg)) {
      const AlgebraElement x = S.to_element(e);
      idems.push_back(algebra_json(x));
      if (!failure)
        if (auto g = noncentral_generator(x, gens))
          failure = Json{{"idempotent", algebra_json(x)}, {"generator", element_json(G, *g)}};
    }
    const auto count = count_idempotents(S.alg);
    v.evidence["idempotent_count"] = count.count;
    if (failure)
      v.conditions.push_back(make_condition("1", false, "a primitive idempotent is not central", *failure));
    else
      v.conditions.push_back(make_condition("1", true,
                                            "all " + std::to_string(idems.size()) + " primitive idempotents central",
                                            Json{{"idempotents", idems}}));
  } else {
    v.conditions.push_back(
        make_condition("1", std::nullopt, "not evaluated: K_lambda t(G) is not commutative (see condition 3)"));
  }

  v.conditions.push_back(condition4_condition(inst, tor, "t(G)"));
  v.conditions.back().id = "2";

  if (nc) {
    v.conditions.push_back(
        make_condition("3", false, "K_lambda t(G) is not commutative", pair_json(G, nc->first, nc->second)));
  } else {
    v.conditions.push_back(make_condition("3", fd->is_sum_of_fields,
                                          fd->is_sum_of_fields ? "K_lambda t(G) is a sum of fields, " + dims_text(*fd)
                                                               : "K_lambda t(G) is not a sum of fields",
                                          decomposition_json(S, *fd)));
    v.evidence["decomposition"] = decomposition_json(S, *fd);
  }

  if (K.is_finite()) {
    v.conditions.push_back(make_condition("4", true, "K is finite; the condition is vacuous"));
  } else {
    std::optional<Json> failure;
    for (const auto& t : tor) {
      if (auto g = noncentral_generator(S.ambient->basis(t), gens)) {
        failure = pair_json(G, t, *g);
        break;
      }
    }
    if (failure)
      v.conditions.push_back(make_condition("4", false, "some u_t does not commute with a generator", *failure));
    else
      v.conditions.push_back(make_condition("4", true, "every u_t, t in t(G), commutes with every generator"));
  }
  finish(v);
  return v;
}

// ---------------------------------------------------------------------------

GroupElement CrossedProduct::rep(const GroupElement& g) const { return algebra->group().torsion_coset_rep(g); }

AlgebraElement CrossedProduct::factor(const GroupElement& a, const GroupElement& b) const {
  const Group& G = algebra->group();
  const Cocycle& lam = algebra->cocycle();
  const GroupElement ab = G.mul(a, b);
  const GroupElement c = rep(ab);
  const GroupElement h = G.mul(G.inv(c), ab);
  return algebra->term(h, lam(a, b) / lam(c, h)) * idempotent;
}

AlgebraElement CrossedProduct::w(const GroupElement& c) const { return idempotent * algebra->basis(c); }

AlgebraElement CrossedProduct::apply_sigma(const GroupElement& c, const AlgebraElement& alpha) const {
  const Group& G = algebra->group();
  const GroupElement ci = G.inv(c);
  const AlgebraElement inv = algebra->term(ci, algebra->cocycle()(ci, c).inv());
  return inv * alpha * algebra->basis(c);
}

std::optional<std::pair<GroupElement, AlgebraElement>> CrossedProduct::unit_normal_form(const AlgebraElement& y) const {
  if (y.is_zero()) return std::nullopt;
  const Group& G = algebra->group();
  const GroupElement c = rep(y.terms().front().first);
  for (const auto& [g, coeff] : y.terms())
    if (rep(g) != c) return std::nullopt;
  const GroupElement ci = G.inv(c);
  const AlgebraElement gamma = algebra->term(ci, algebra->cocycle()(ci, c).inv()) * y;
  if (gamma * idempotent != gamma) return std::nullopt;
  return std::make_pair(c, gamma);
}

CrossedProduct build_crossed_product(const Instance& inst, std::size_t component) {
  const Verdict v = check_theorem4(inst);
  if (v.result != Verdict::Result::FC) throw Error(ErrorCode::ConditionsNotMet, "the T4 conditions do not all hold");

  const Group& G = inst.group();
  const Field& K = inst.field();
  const FiniteSubalgebra S = span_subalgebra(inst.algebra, inst.torsion());
  const auto idems = primitive_idempotents(S.alg);
  if (component >= idems.size())
    throw Error(ErrorCode::Schema, "component " + std::to_string(component) + " out of range");

  CrossedProduct cp;
  cp.algebra = inst.algebra;
  cp.component = component;
  cp.idempotent = S.to_element(idems[component]);
  const EmbeddedAlgebra F = corner_algebra(S.alg, idems[component]);
  for (std::size_t i = 0; i < F.alg.dim(); ++i) cp.field_basis.push_back(S.to_element(F.to_parent(F.alg.basis(i))));

  for (std::uint32_t i = 0; i < G.rank(); ++i) {
    CrossedProduct::Sigma s;
    s.c = G.free_generator(i);
    s.identity = std::all_of(cp.field_basis.begin(), cp.field_basis.end(),
                             [&](const AlgebraElement& x) { return cp.apply_sigma(s.c, x) == x; });
    if (K.is_finite()) {
      const std::uint32_t p = K.characteristic();
      const std::uint32_t steps = K.degree() * static_cast<std::uint32_t>(F.alg.dim());
      std::vector<AlgebraElement> images;
      for (const auto& x : cp.field_basis) images.push_back(cp.apply_sigma(s.c, x));
      std::vector<AlgebraElement> powers = cp.field_basis;
      for (std::uint32_t j = 0; j < steps && !s.frobenius_exponent; ++j) {
        if (powers == images) s.frobenius_exponent = j;
        for (auto& x : powers) x = power(x, p);
      }
    } else if (s.identity) {
      s.frobenius_exponent = 0;
    }
    cp.sigma.push_back(s);
  }

  // The generator box of H = Z^r.
  std::vector<GroupElement> reps;
  if (G.rank() <= 2) {
    for (const auto& g : G.box(1))
      if (g.torsion == 0) reps.push_back(g);
  } else {
    reps.push_back(G.identity());
    for (std::uint32_t i = 0; i < G.rank(); ++i) {
      reps.push_back(G.free_generator(i));
      reps.push_back(G.inv(G.free_generator(i)));
    }
    std::sort(reps.begin(), reps.end());
  }
  cp.factor_set_identity = true;
  cp.automorphism_identity = true;
  for (const auto& a : reps)
    for (const auto& b : reps) {
      const GroupElement ab = cp.rep(G.mul(a, b));
      const AlgebraElement mab = cp.factor(a, b);
      for (const auto& c : reps) {
        ++cp.triples_checked;
        const GroupElement bc = cp.rep(G.mul(b, c));
        const AlgebraElement lhs = cp.factor(a, bc) * cp.factor(b, c);
        const AlgebraElement rhs = cp.factor(ab, c) * cp.apply_sigma(c, mab);
        if (lhs != rhs && cp.factor_set_identity) {
          cp.factor_set_identity = false;
          cp.failing_triple = std::array<GroupElement, 3>{a, b, c};
        }
      }
      // alpha^(sigma(a) sigma(b)) = mu_{a,b}^-1 alpha^sigma(ab) mu_{a,b}; F_q is commutative.
      for (const auto& x : cp.field_basis)
        if (cp.apply_sigma(b, cp.apply_sigma(a, x)) != cp.apply_sigma(ab, x)) cp.automorphism_identity = false;
    }
  return cp;
}

// ---------------------------------------------------------------------------

Verdict check_theorem5_truncated(const Instance& inst, std::uint32_t level) {
  const Group& G = inst.group();
  const Field& K = inst.field();
  if (!G.has_prufer()) throw Error(ErrorCode::InapplicableTorsion, "no Prufer component");
  if (!G.torsion_is_abelian()) throw Error(ErrorCode::InapplicableTorsion, "torsion part is not abelian");
  const std::uint32_t k = level ? level : inst.level();
  const std::uint32_t q = G.prufer_q();
  const std::uint32_t p = K.characteristic();
  const auto tor = G.torsion_elements(k);
  if (p == q || any_order_divisible(G, tor, p))
    throw Error(ErrorCode::InapplicableCharacteristic,
                "characteristic " + std::to_string(p) + " divides a torsion order at level " + std::to_string(k));

  const TwistedGroupAlgebra& A = *inst.algebra;
  const auto gens = G.generators(std::max<std::uint32_t>(k, 1));
  Verdict v;
  v.result = Verdict::Result::EvidenceOnly;
  v.theorem = "T5-truncated";
  v.notes.push_back(kReadingNote);
  v.notes.push_back("evidence at truncation C_" + std::to_string(q) + "^" + std::to_string(k) +
                    "; the hypotheses concern infinitely many idempotents and are not decided");
  v.conditions.push_back(fc_condition(G));

  // Root-of-unity profile: least n with no primitive q^n-th root in K.
  Json profile = Json::array();
  std::optional<std::uint32_t> n;
  {
    std::uint64_t qn = 1;
    for (std::uint32_t j = 1; j <= 62; ++j) {
      if (qn > kMaxPruferDenominator / q) break;
      qn *= q;
      const bool present = has_primitive_root_of_unity(K, qn);
      profile.push_back(Json{{"n", j}, {"order", qn}, {"present", present}});
      if (!present) {
        n = j;
        break;
      }
    }
  }

  // (1) K_lambda t(G) central, and a minimal idempotent.
  {
    std::optional<Json> failure;
    for (const auto& t : tor) {
      if (auto g = noncentral_generator(A.basis(t), gens)) {
        failure = pair_json(G, t, *g);
        break;
      }
    }
    Json w{{"root_profile", profile}};
    if (failure) w["noncentral"] = *failure;
    const bool ok = !failure && n.has_value();
    v.conditions.push_back(make_condition(
        "1", ok,
        failure ? "some u_t does not commute with a generator"
                : (n ? "K_lambda t_k(G) central; finite root stock, so K_lambda C_q^inf has a minimal idempotent"
                     : "no bound on the q-power roots of unity found"),
        w));
  }

  // (2) condition-4 sets over t_k(G).
  {
    Json sets = Json::array();
    for (const auto& g : gens) {
      const auto s = condition4_set(inst.cocycle(), g, tor);
      sets.push_back(Json{{"g", element_json(G, g)}, {"size", s.size()}, {"set", scalar_set_json(s)}});
    }
    v.conditions.push_back(make_condition("2", true, "finite at level " + std::to_string(k), Json{{"sets", sets}}));
  }

  // (3) roots of unity; the commutator-subgroup comparison is only sampled.
  {
    const auto Gp = G.commutator_subgroup();
    Json scalars = Json::array();
    bool box_trivial = true;
    for (std::size_t i = 0; i < gens.size(); ++i)
      for (std::size_t j = i + 1; j < gens.size(); ++j) {
        const Scalar s = commutator_scalar(inst.cocycle(), gens[i], gens[j]);
        box_trivial = box_trivial && s.is_one();
        scalars.push_back(Json{{"a", element_json(G, gens[i])},
                               {"b", element_json(G, gens[j])},
                               {"commutator", element_json(G, G.commutator(gens[i], gens[j]))},
                               {"scalar", encode_scalar(s)}});
      }
    Json w{{"root_profile", profile},
           {"commutator_subgroup_order", Gp.size()},
           {"commutator_scalars", scalars},
           {"commutator_scalars_trivial_on_generators", box_trivial},
           {"commutator_subgroup_isomorphism", "not finitely decidable; generator pairs only"}};
    if (n) w["n"] = *n;
    v.conditions.push_back(make_condition(
        "3", n.has_value(),
        n ? "K has no primitive " + std::to_string(q) + "^" + std::to_string(*n) + "-th root of unity"
          : "every tested q-power root of unity is present",
        w));
  }

  // (4) e_H for H = G' and the corner K_lambda t_k(G)(1 - e_H).
  {
    const auto Gp = G.commutator_subgroup();
    try {
      const AlgebraElement eH = averaging_idempotent(A, Gp);
      const AlgebraElement rest = A.one() - eH;
      Json w{{"e_H", algebra_json(eH)}};
      if (rest.is_zero()) {
        v.conditions.push_back(make_condition("4", true, "e_H = 1, so K_lambda t(G)(1 - e_H) = 0", w));
      } else {
        const FiniteSubalgebra S = span_subalgebra(inst.algebra, tor);
        const EmbeddedAlgebra C = corner_algebra(S.alg, S.to_vec(rest));
        try {
          const auto fd = fields_decomposition(C.alg);
          w["corner_dimension"] = C.alg.dim();
          w["corner_radical_dimension"] = fd.decomposition.radical.size();
          w["corner_components"] = fd.decomposition.components.size();
          v.conditions.push_back(make_condition("4", fd.is_sum_of_fields,
                                                fd.is_sum_of_fields ? "corner is a sum of fields, " + dims_text(fd)
                                                                    : "corner is not a sum of fields",
                                                w));
        } catch (const Error& e) {
          if (e.code() != ErrorCode::NotCommutative) throw;
          v.conditions.push_back(make_condition("4", false, "corner is not commutative", w));
        }
      }
    } catch (const Error& e) {
      if (e.code() != ErrorCode::NotAGroupSection && e.code() != ErrorCode::SubgroupTooLarge) throw;
      v.conditions.push_back(make_condition("4", std::nullopt, e.what()));
    }
  }

  // Chain e_1 ... e_k and the commutator identity.
  std::vector<AlgebraElement> chain;
  {
    const bool roots = primitive_root_of_unity(K, [&] {
                         std::uint64_t m = 1;
                         for (std::uint32_t i = 0; i < k; ++i) m *= q;
                         return m;
                       }()).has_value();
    try {
      const PruferChain pc = prufer_idempotent_chain(A, k, roots);
      chain = pc.idempotents;
      bool idem = true, nested = true;
      for (std::size_t i = 0; i < chain.size(); ++i) {
        idem = idem && is_idempotent(chain[i]);
        if (i + 1 < chain.size()) nested = nested && chain[i] * chain[i + 1] == chain[i + 1];
      }
      Json w{{"levels", k}, {"roots_of_unity_used", roots}, {"idempotent", idem}, {"nested", nested}};
      if (!roots) v.notes.push_back("chain built with trivial epsilon: K lacks a primitive q^k-th root");
      v.conditions.push_back(make_condition("chain", idem && nested, "e_j e_{j+1} = e_{j+1} for j < k", w));
    } catch (const Error& e) {
      if (e.code() != ErrorCode::CapExceeded && e.code() != ErrorCode::NotAGroupSection) throw;
      v.conditions.push_back(make_condition("chain", std::nullopt, e.what()));
    }
  }
  {
    std::size_t checked = 0;
    bool holds = true;
    for (std::size_t i = 0; i < chain.size(); ++i)
      for (std::size_t j = i + 1; j < chain.size(); ++j)
        for (std::size_t x = 0; x < gens.size(); ++x)
          for (std::size_t y = x + 1; y < gens.size(); ++y) {
            const AlgebraElement c = unit_commutator(A.basis(gens[x]), A.basis(gens[y]));
            ++checked;
            if (!((chain[i] - chain[j]) * (A.one() - c)).is_zero()) holds = false;
          }
    v.conditions.push_back(make_condition("commutator-identity", holds,
                                          "(f_i - f_j)(1 - [u_a, u_b]) = 0 on " + std::to_string(checked) + " cases",
                                          Json{{"cases", checked}}));
  }
  return v;
}

// ---------------------------------------------------------------------------

CommutatorOrder commutator_order_check(const Instance& inst, const GroupElement& a, const GroupElement& b) {
  const Group& G = inst.group();
  const Field& K = inst.field();
  CommutatorOrder out;
  out.commutator = G.commutator(a, b);
  const auto n = G.element_order(out.commutator);
  if (!n) throw Error(ErrorCode::InfiniteOrder, "[a, b] has infinite order");
  out.group_order = *n;
  out.scalar = commutator_scalar(inst.cocycle(), a, b);
  // [u_a, u_b]^m is a scalar only for n | m, and its n-th power is s^n lambda_c.
  const Scalar top = out.scalar.pow(static_cast<std::int64_t>(*n)) * lambda_g(inst.cocycle(), out.commutator);
  if (auto m = K.multiplicative_order(top)) out.unit_order = *n * *m;
  out.equal = out.unit_order && *out.unit_order == out.group_order;
  return out;
}

// ---------------------------------------------------------------------------

std::vector<ProbeUnit> default_probe_units(const Instance& inst, std::uint32_t max_depth, bool trivial_only) {
  const Group& G = inst.group();
  const TwistedGroupAlgebra& A = *inst.algebra;
  const auto gens = probe_generators(inst);
  std::vector<ProbeUnit> out;
  for (const auto& g : gens) {
    const AlgebraElement u = A.basis(g);
    out.push_back({"u" + G.format(g), u, inverse_or_throw(u), 1});
  }
  if (trivial_only) return out;

  const auto tor = inst.torsion();
  if (tor.size() > kMaxTorsionOrder || noncommuting_pair(inst, tor)) return out;
  const FiniteSubalgebra S = span_subalgebra(inst.algebra, tor);
  const auto rad = jacobson_radical(S.alg);
  const std::vector<GroupElement> free_gens(gens.begin(), gens.begin() + G.rank());
  if (!rad.basis.empty()) {
    const AlgebraElement r = S.to_element(rad.basis.front());
    for (std::uint32_t m = 1; m <= max_depth; ++m)
      for (const auto& g : free_gens) {
        const GroupElement gm = G.pow(g, 1 + std::int64_t{m - 1} * static_cast<std::int64_t>(tor.size()));
        const AlgebraElement n = r * A.basis(gm);
        // 1 + n with n nilpotent: inverse by the finite Neumann series.
        AlgebraElement inv = A.one(), term = A.one();
        bool nil = false;
        for (std::size_t i = 0; i <= S.alg.dim() + 1; ++i) {
          term = -(term * n);
          if (term.is_zero()) {
            nil = true;
            break;
          }
          inv = inv + term;
        }
        const AlgebraElement v = A.one() + n;
        if (nil && v * inv == A.one() && inv * v == A.one()) out.push_back({"1 + r u" + G.format(gm), v, inv, m});
      }
    return out;
  }
  for (const auto& e : primitive_idempotents(S.alg)) {
    const AlgebraElement x = S.to_element(e);
    if (x == A.one() || !centrality_check(x, gens)) continue;
    for (std::uint32_t m = 1; m <= max_depth; ++m)
      for (const auto& g : free_gens) {
        const GroupElement gm = G.pow(g, 1 + std::int64_t{m - 1} * static_cast<std::int64_t>(tor.size()));
        const AlgebraElement v = (A.one() - x) + x * A.basis(gm);
        const AlgebraElement inv = (A.one() - x) + x * inverse_or_throw(A.basis(gm));
        if (v * inv == A.one() && inv * v == A.one()) out.push_back({"1 - e + e u" + G.format(gm), v, inv, m});
      }
    break;
  }
  return out;
}

OrbitProbe probe_conjugates(const Instance& inst, const AlgebraElement& x, const std::vector<ProbeUnit>& units,
                            std::uint32_t depth, std::size_t cap) {
  (void)inst;
  if (depth > 12) throw Error(ErrorCode::CapExceeded, "orbit depth above 12");
  const auto r = try_invert(x);
  if (r.status != InverseResult::Status::Unit) throw Error(ErrorCode::NotUnit, "probe element is not a certified unit");

  using Key = std::vector<AlgebraElement::Term>;
  std::map<Key, AlgebraElement> seen;
  seen.emplace(x.terms(), x);
  std::vector<AlgebraElement> frontier{x};
  OrbitProbe out;
  out.size_per_depth.push_back(1);
  auto act = [&](const AlgebraElement& y, const ProbeUnit& v, std::vector<AlgebraElement>& next) {
    for (const AlgebraElement& z : {v.inverse * y * v.unit, v.unit * y * v.inverse})
      if (seen.size() <= cap && seen.emplace(z.terms(), z).second) next.push_back(z);
  };
  for (std::uint32_t d = 1; d <= depth && !out.hit_cap; ++d) {
    std::vector<AlgebraElement> next;
    std::vector<AlgebraElement> all;
    for (const auto& [k, y] : seen) all.push_back(y);
    for (const auto& v : units) {
      if (v.from_depth > d) continue;
      for (const auto& y : v.from_depth == d ? all : frontier) act(y, v, next);
    }
    out.size_per_depth.push_back(seen.size());
    out.hit_cap = seen.size() > cap;
    frontier = std::move(next);
  }
  const auto& s = out.size_per_depth;
  out.stabilized = !out.hit_cap && s.size() >= 2 && s[s.size() - 1] == s[s.size() - 2];
  if (out.stabilized) {
    std::size_t i = s.size() - 1;
    while (i > 0 && s[i - 1] == s.back()) --i;
    out.stabilized_at = static_cast<std::uint32_t>(i);
  }
  if (seen.size() <= 64)
    for (const auto& [k, y] : seen) out.orbit.push_back(y);
  return out;
}

// ---------------------------------------------------------------------------

Verdict verdict(const Instance& inst) {
  const Group& G = inst.group();
  const Field& K = inst.field();
  Verdict v;
  v.theorem = "none";

  if (G.is_finite() && K.is_finite()) {
    v.result = Verdict::Result::Inapplicable;
    v.notes.push_back(kReadingNote);
    v.notes.push_back("K_lambda G is finite, so U(K_lambda G) is finite; the theorems assume an infinite algebra");
    return v;
  }

  const auto violations = necessary_conditions(inst);
  const auto tor = inst.torsion();
  const std::uint32_t p = K.characteristic();
  if (!violations.empty()) {
    v.result = Verdict::Result::NotFC;
    v.theorem = "necessary-only";
    v.conditions = violations;
    v.notes.push_back(kReadingNote);
    v.evidence["first_failure"] = violations.front().id;
  } else if (G.has_prufer()) {
    if (!G.torsion_is_abelian() || p == G.prufer_q() || any_order_divisible(G, tor, p)) {
      v.result = Verdict::Result::Inapplicable;
      v.notes.push_back(kReadingNote);
      v.notes.push_back("Prufer torsion with a characteristic dividing a torsion order");
    } else {
      v = check_theorem5_truncated(inst);
    }
  } else if (any_order_divisible(G, tor, p)) {
    v = check_theorem3(inst);
  } else {
    v = check_theorem4(inst);
  }

  // Orbit samples of the generator units; evidence only.
  Json orbits = Json::array();
  if (v.result != Verdict::Result::Inapplicable) {
    const auto units = default_probe_units(inst, inst.caps.orbit_depth);
    for (const auto& g : probe_generators(inst)) {
      const auto probe = probe_conjugates(inst, inst.algebra->basis(g), units, inst.caps.orbit_depth);
      orbits.push_back(Json{{"g", element_json(G, g)},
                            {"sizes", probe.size_per_depth},
                            {"stabilized", probe.stabilized},
                            {"hit_cap", probe.hit_cap},
                            {"reading", probe.stabilized ? "consistent with FC" : "consistent with NotFC"}});
    }
  }
  v.evidence["orbits"] = orbits;
  return v;
}

}  // namespace fcu
