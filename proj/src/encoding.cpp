#include "fcunits/encoding.hpp"

#include <algorithm>
#include <cstdio>

namespace fcu {

namespace {

[[noreturn]] void schema(const std::string& msg) { throw Error(ErrorCode::Schema, msg); }

const Json& field_of(const Json& j, const char* key) {
  if (!j.is_object() || !j.contains(key)) schema(std::string("missing key \"") + key + "\"");
  return j.at(key);
}

std::int64_t as_int(const Json& j, const std::string& what) {
  if (!j.is_number_integer()) schema(what + " must be an integer");
  return j.get<std::int64_t>();
}

std::uint32_t as_uint(const Json& j, const std::string& what) {
  const std::int64_t v = as_int(j, what);
  if (v < 0 || v > 0xffffffffLL) schema(what + " out of range");
  return static_cast<std::uint32_t>(v);
}

std::vector<std::uint32_t> as_uint_list(const Json& j, const std::string& what) {
  if (!j.is_array()) schema(what + " must be an array");
  std::vector<std::uint32_t> out;
  for (const auto& x : j) out.push_back(as_uint(x, what));
  return out;
}

std::vector<std::vector<std::int64_t>> as_int_matrix(const Json& j, const std::string& what) {
  if (!j.is_array()) schema(what + " must be an array of arrays");
  std::vector<std::vector<std::int64_t>> out;
  for (const auto& row : j) {
    if (!row.is_array()) schema(what + " must be an array of arrays");
    std::vector<std::int64_t> r;
    for (const auto& x : row) r.push_back(as_int(x, what));
    out.push_back(std::move(r));
  }
  return out;
}

std::vector<std::vector<std::uint32_t>> as_table(const Json& j) {
  if (!j.is_array()) schema("table must be an array of arrays");
  std::vector<std::vector<std::uint32_t>> out;
  for (const auto& row : j) out.push_back(as_uint_list(row, "table entry"));
  return out;
}

BigInt parse_bigint(const std::string& s) {
  if (s.empty() || s.find_first_not_of("+-0123456789") != std::string::npos) schema("bad integer \"" + s + "\"");
  try {
    return BigInt(s);
  } catch (const std::exception&) {
    schema("bad integer \"" + s + "\"");
  }
}

}  // namespace

Json encode_scalar(const Scalar& s) {
  const Field& K = *s.field();
  if (!K.is_finite()) return s.to_string();
  if (K.degree() == 1) return s.index();
  return s.coefficients();
}

Scalar decode_scalar(const Field& K, const Json& j) {
  if (!K.is_finite()) {
    if (j.is_number_integer()) return K.from_int(j.get<std::int64_t>());
    if (!j.is_string()) schema("rational scalars are strings \"a/b\"");
    const std::string s = j.get<std::string>();
    const auto slash = s.find('/');
    const BigInt num = parse_bigint(s.substr(0, slash));
    const BigInt den = slash == std::string::npos ? BigInt(1) : parse_bigint(s.substr(slash + 1));
    if (den == 0) throw Error(ErrorCode::DivisionByZero, "zero denominator in \"" + s + "\"");
    return K.from_rational(Rational(num, den));
  }
  if (j.is_number_integer()) return K.from_int(j.get<std::int64_t>());
  if (!j.is_array() || j.size() != K.degree()) schema("GF(p^k) scalars are arrays of k coefficients");
  std::vector<std::uint32_t> c;
  for (const auto& x : j) {
    const std::int64_t v = as_int(x, "coefficient");
    const std::int64_t p = K.characteristic();
    c.push_back(static_cast<std::uint32_t>(((v % p) + p) % p));
  }
  return K.from_coefficients(c);
}

Json encode_field(const FieldSpec& spec) {
  if (spec.kind == FieldSpec::Kind::Rationals) return {{"kind", "rationals"}};
  Json j = {{"kind", "prime-power"}, {"p", spec.p}, {"k", spec.k}};
  if (spec.k > 1) j["modulus"] = spec.modulus;
  return j;
}

FieldSpec decode_field(const Json& j) {
  const std::string kind = field_of(j, "kind").is_string() ? j.at("kind").get<std::string>() : "";
  if (kind == "rationals") return FieldSpec::rationals();
  if (kind != "prime-power") schema("field kind must be \"prime-power\" or \"rationals\"");
  const std::uint32_t p = as_uint(field_of(j, "p"), "p");
  const std::uint32_t k = j.contains("k") ? as_uint(j.at("k"), "k") : 1;
  if (k == 0) schema("k must be at least 1");
  if (k == 1) return FieldSpec::prime(p);
  auto modulus = as_uint_list(field_of(j, "modulus"), "modulus");
  if (modulus.size() != std::size_t{k} + 1) schema("modulus must have k+1 coefficients");
  FieldSpec s = FieldSpec::extension(p, std::move(modulus));
  return s;
}

Json encode_group(const GroupSpec& spec) {
  if (spec.kind == GroupSpec::Kind::Cayley) return {{"kind", "cayley"}, {"table", spec.table}};
  Json j = {{"kind", "central-extension"}, {"rank", spec.rank}};
  if (!spec.table.empty()) {
    j["torsion"] = {{"table", spec.table}};
  } else {
    j["torsion"] = {{"invariants", spec.invariants}};
  }
  j["pairing"] = {{"target_index", spec.target}, {"matrix", spec.matrix}};
  if (spec.prufer_q) j["prufer"] = {{"q", spec.prufer_q}, {"levels", spec.prufer_levels}};
  return j;
}

GroupSpec decode_group(const Json& j) {
  GroupSpec s;
  const std::string kind = field_of(j, "kind").is_string() ? j.at("kind").get<std::string>() : "";
  if (kind == "cayley") {
    s.kind = GroupSpec::Kind::Cayley;
    s.table = as_table(field_of(j, "table"));
    return s;
  }
  if (kind != "central-extension") schema("group kind must be \"cayley\" or \"central-extension\"");
  s.kind = GroupSpec::Kind::CentralExtension;
  s.rank = j.contains("rank") ? as_uint(j.at("rank"), "rank") : 0;
  if (j.contains("torsion")) {
    const Json& t = j.at("torsion");
    if (t.contains("table")) {
      s.table = as_table(t.at("table"));
    } else {
      s.invariants = as_uint_list(field_of(t, "invariants"), "invariants");
    }
  }
  if (j.contains("pairing")) {
    const Json& p = j.at("pairing");
    s.target = p.contains("target_index") ? as_uint(p.at("target_index"), "target_index") : 0;
    if (p.contains("matrix")) s.matrix = as_int_matrix(p.at("matrix"), "pairing matrix");
  }
  if (s.matrix.empty()) s.matrix.assign(s.rank, std::vector<std::int64_t>(s.rank, 0));
  if (j.contains("prufer")) {
    const Json& p = j.at("prufer");
    s.prufer_q = as_uint(field_of(p, "q"), "prufer q");
    s.prufer_levels = as_uint(field_of(p, "levels"), "prufer levels");
  }
  return s;
}

Json encode_element(const Group& G, const GroupElement& g) {
  const GroupSpec& s = G.spec();
  if (s.kind == GroupSpec::Kind::Cayley) return g.torsion;
  Json j = Json::object();
  std::vector<std::int64_t> u(g.free.begin(), g.free.begin() + s.rank);
  j["free"] = u;
  if (s.table.empty()) {
    j["torsion"] = G.t_coords(g.torsion);
  } else {
    j["torsion"] = g.torsion;
  }
  if (G.has_prufer()) j["prufer"] = {g.prufer.num, g.prufer.level};
  return j;
}

GroupElement decode_element(const Group& G, const Json& j) {
  const GroupSpec& s = G.spec();
  if (s.kind == GroupSpec::Kind::Cayley) {
    const std::uint32_t t = as_uint(j, "element index");
    if (t >= G.torsion_order()) schema("element index out of range");
    return G.torsion_element(t);
  }
  if (!j.is_object()) schema("group elements are objects");
  std::array<std::int64_t, kMaxRank> u{};
  if (j.contains("free")) {
    const Json& f = j.at("free");
    if (!f.is_array() || f.size() != s.rank) schema("free part must have rank entries");
    for (std::size_t i = 0; i < s.rank; ++i) u[i] = as_int(f[i], "free coordinate");
  } else if (s.rank) {
    schema("missing free part");
  }
  std::uint32_t t = 0;
  if (j.contains("torsion")) {
    const Json& tj = j.at("torsion");
    if (tj.is_array()) {
      auto c = as_uint_list(tj, "torsion coordinate");
      if (c.size() != s.invariants.size()) schema("torsion coordinates must match the invariants");
      for (std::size_t i = 0; i < c.size(); ++i) c[i] %= s.invariants[i];
      t = G.t_from_coords(c);
    } else {
      t = as_uint(tj, "torsion index");
      if (t >= G.torsion_order()) schema("torsion index out of range");
    }
  }
  GroupElement g = G.make_element(u, t);
  if (j.contains("prufer")) {
    const Json& pj = j.at("prufer");
    if (!pj.is_array() || pj.size() != 2) schema("prufer part is [num, level]");
    const std::uint32_t level = as_uint(pj[1], "prufer level");
    const std::int64_t num = as_int(pj[0], "prufer numerator");
    if (num < 0) schema("prufer numerator must be nonnegative");
    g = G.mul(g, G.prufer_element(static_cast<std::uint64_t>(num), level));
  }
  return g;
}

Json encode_algebra_element(const AlgebraElement& x) {
  Json out = Json::array();
  for (const auto& [g, c] : x.terms())
    out.push_back({{"g", encode_element(x.algebra().group(), g)}, {"c", encode_scalar(c)}});
  return out;
}

AlgebraElement decode_algebra_element(const TwistedGroupAlgebra& A, const Json& j) {
  if (!j.is_array()) schema("algebra elements are arrays of {g, c}");
  std::vector<AlgebraElement::Term> terms;
  for (const auto& t : j) terms.emplace_back(decode_element(A.group(), field_of(t, "g")),
                                             decode_scalar(A.field(), field_of(t, "c")));
  return A.from_terms(std::move(terms));
}

Json encode_cocycle(const Cocycle& c) {
  const StructuredCocycle* d = c.structured_data();
  if (!d) schema("only stored-form cocycles can be encoded");
  const std::uint32_t n = c.group().torsion_order();
  Json table = Json::object();
  for (std::uint32_t a = 0; a < n; ++a)
    for (std::uint32_t b = 0; b < n; ++b) {
      const Scalar& v = d->tau[std::size_t{a} * n + b];
      if (!v.is_one()) table["(" + std::to_string(a) + "," + std::to_string(b) + ")"] = encode_scalar(v);
    }
  return {{"torsion_table", table}, {"bilinear", {{"zeta", encode_scalar(d->zeta)}, {"matrix", d->N}}}};
}

Cocycle decode_cocycle(const GroupRef& G, const FieldRef& K, const Json& j) {
  if (!j.is_object()) schema("cocycle must be an object");
  const std::uint32_t n = G->torsion_order(), r = G->rank();
  StructuredCocycle d;
  d.tau.assign(std::size_t{n} * n, K->one());
  if (j.contains("torsion_table")) {
    const Json& t = j.at("torsion_table");
    if (!t.is_object()) schema("torsion_table must be an object");
    for (const auto& [key, val] : t.items()) {
      unsigned a = 0, b = 0;
      char tail = 0;
      if (std::sscanf(key.c_str(), "(%u,%u%c", &a, &b, &tail) != 3 || tail != ')')
        schema("torsion_table keys look like \"(i,j)\", got \"" + key + "\"");
      if (a >= n || b >= n) schema("torsion_table key " + key + " out of range");
      d.tau[std::size_t{a} * n + b] = decode_scalar(*K, val);
    }
  }
  d.zeta = K->one();
  d.N.assign(r, std::vector<std::int64_t>(r, 0));
  if (j.contains("bilinear")) {
    const Json& b = j.at("bilinear");
    if (b.contains("zeta")) d.zeta = decode_scalar(*K, b.at("zeta"));
    if (b.contains("matrix")) d.N = as_int_matrix(b.at("matrix"), "bilinear matrix");
    if (d.N.empty()) d.N.assign(r, std::vector<std::int64_t>(r, 0));
  }
  return Cocycle::structured(G, K, std::move(d));
}

Json encode_poly(const Poly& f) {
  Json out = Json::array();
  for (const auto& c : f.coeffs()) out.push_back(encode_scalar(c));
  return out;
}

}  // namespace fcu
