#include "fcunits/io.hpp"

#include <openssl/evp.h>

#include <algorithm>
#include <charconv>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <sstream>

#include "fcunits/oracle.hpp"
#include "fcunits/structure.hpp"

#ifndef FCUNITS_VERSION
#define FCUNITS_VERSION "0.0.0"
#endif

namespace fcu {

namespace {

[[noreturn]] void schema(const std::string& msg) { throw Error(ErrorCode::Schema, msg); }

std::uint32_t cap_value(const Json& caps, const char* key, std::uint32_t fallback) {
  if (!caps.contains(key)) return fallback;
  const Json& v = caps.at(key);
  if (!v.is_number_integer() || v.get<std::int64_t>() < 0 || v.get<std::int64_t>() > 0xffffffff) schema(std::string("caps.") + key + " must be a non-negative integer");
  return v.get<std::uint32_t>();
}

Json triple_json(const Group& G, const Triple& t) {
  Json out = Json::array();
  for (const auto& g : t) out.push_back(Json{{"element", encode_element(G, g)}, {"text", G.format(g)}});
  return out;
}

std::uint64_t ipow(std::uint64_t b, std::size_t e) {
  std::uint64_t r = 1;
  while (e--) r *= b;
  return r;
}

}  // namespace

std::string version() { return FCUNITS_VERSION; }

Json read_json_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot open " + path);
  std::stringstream buf;
  buf << in.rdbuf();
  try {
    return Json::parse(buf.str());
  } catch (const Json::parse_error& e) {
    throw IoError(path + ": " + e.what());
  }
}

InstanceFile parse_instance(const Json& j) {
  if (!j.is_object()) schema("instance must be an object");
  for (const char* key : {"field", "group", "cocycle"})
    if (!j.contains(key)) schema(std::string("missing key \"") + key + "\"");
  InstanceFile f;
  f.raw = j;
  if (j.contains("name")) {
    if (!j.at("name").is_string()) schema("name must be a string");
    f.name = j.at("name").get<std::string>();
  }
  f.field = decode_field(j.at("field"));
  f.group = decode_group(j.at("group"));
  f.cocycle = j.at("cocycle");
  if (j.contains("caps")) {
    const Json& c = j.at("caps");
    if (!c.is_object()) schema("caps must be an object");
    f.caps.box_radius = static_cast<int>(cap_value(c, "box_radius", 2));
    f.caps.orbit_depth = cap_value(c, "orbit_depth", 6);
    f.caps.truncation_level = cap_value(c, "truncation_level", 0);
  }
  return f;
}

Json encode_instance(const InstanceFile& f) {
  return Json{{"name", f.name},
              {"field", encode_field(f.field)},
              {"group", encode_group(f.group)},
              {"cocycle", f.cocycle},
              {"caps",
               {{"box_radius", f.caps.box_radius},
                {"orbit_depth", f.caps.orbit_depth},
                {"truncation_level", f.caps.truncation_level}}}};
}

Instance build_instance(const InstanceFile& f, std::uint64_t seed) {
  const FieldRef K = Field::make(f.field);
  const GroupRef G = Group::make(f.group);
  Cocycle lambda = decode_cocycle(G, K, f.cocycle);
  return make_instance(f.name, std::move(lambda), f.caps, seed);
}

ValidationOutcome validate_file(const std::string& path) {
  ValidationOutcome out;
  InstanceFile f;
  try {
    f = parse_instance(read_json_file(path));
  } catch (const IoError& e) {
    return {2, e.what(), nullptr};
  } catch (const Error& e) {
    return {2, e.what(), nullptr};
  }
  try {
    const FieldRef K = Field::make(f.field);
    const GroupRef G = Group::make(f.group);
    Cocycle lambda = decode_cocycle(G, K, f.cocycle);
    const std::uint32_t level =
        G->has_prufer() ? (f.caps.truncation_level ? f.caps.truncation_level : G->prufer_levels()) : 0;
    const CocycleCheck check = validate_cocycle(lambda, f.caps.box_radius, level);
    if (!check.valid) {
      const Triple& t = *check.counterexample;
      out.exit_code = 1;
      out.message = "invalid cocycle: " + check.reason + " fails at (" + G->format(t[0]) + ", " + G->format(t[1]) +
                    ", " + G->format(t[2]) + ")";
      out.counterexample = triple_json(*G, t);
      return out;
    }
    out.message = "valid: " + K->name() + ", " + std::to_string(check.triples_checked) + " triples checked";
  } catch (const Error& e) {
    out.exit_code = e.code() == ErrorCode::Schema ? 2 : 1;
    out.message = e.what();
  }
  return out;
}

std::string canonical_dump(const Json& j) { return j.dump(); }

std::string digest(const Json& j) {
  const std::string s = canonical_dump(j);
  unsigned char md[EVP_MAX_MD_SIZE];
  unsigned int len = 0;
  EVP_Digest(s.data(), s.size(), md, &len, EVP_sha256(), nullptr);
  std::string hex = "sha256:";
  char buf[3];
  for (unsigned int i = 0; i < len; ++i) {
    std::snprintf(buf, sizeof buf, "%02x", md[i]);
    hex += buf;
  }
  return hex;
}

Json structure_report(const Instance& inst) {
  const Group& G = inst.group();
  const auto tor = inst.torsion();
  const FiniteSubalgebra S = span_subalgebra(inst.algebra, tor);
  Json out{{"scope", "K_lambda t(G)"}, {"dimension", S.alg.dim()}, {"level", inst.level()}};
  Json W = Json::array();
  for (const auto& t : tor) W.push_back(G.format(t));
  out["torsion"] = W;

  const RadicalResult rad = jacobson_radical(S.alg);
  Json basis = Json::array();
  for (const auto& v : rad.basis) basis.push_back(encode_algebra_element(S.to_element(v)));
  out["radical"] = Json{{"dimension", rad.basis.size()},
                        {"method", rad.method},
                        {"basis", basis},
                        {"certified", rad.certified()}};
  if (rad.nilpotency_index) out["radical"]["nilpotency_index"] = *rad.nilpotency_index;
  out["semisimple"] = rad.basis.empty();
  out["commutative"] = S.alg.is_commutative();
  if (!S.alg.is_commutative()) return out;

  const auto idems = primitive_idempotents(S.alg);
  Json comps = Json::array();
  for (const auto& e : idems) {
    const EmbeddedAlgebra C = corner_algebra(S.alg, e);
    const FieldsDecomposition fd = fields_decomposition(C.alg);
    Json c{{"idempotent", encode_algebra_element(S.to_element(e))},
           {"dimension", C.alg.dim()},
           {"is_field", fd.is_sum_of_fields && fd.decomposition.components.size() == 1}};
    if (fd.is_sum_of_fields && fd.decomposition.components.size() == 1) {
      const auto& comp = fd.decomposition.components.front();
      c["certificate"] = comp.certificate;
      if (comp.field_polynomial) c["field_polynomial"] = encode_poly(*comp.field_polynomial);
    }
    comps.push_back(std::move(c));
  }
  out["components"] = comps;
  try {
    const auto count = count_idempotents(S.alg);
    out["idempotent_count"] = Json{{"count", count.count}, {"cross_checked", count.cross_checked}};
  } catch (const Error& e) {
    if (e.code() != ErrorCode::TooLargeToCount) throw;
    out["idempotent_count"] = nullptr;
  }
  out["sum_of_fields"] = rad.basis.empty() && std::all_of(comps.begin(), comps.end(), [](const Json& c) {
                           return c.at("is_field").get<bool>();
                         });
  return out;
}

Json oracle_report(const Instance& inst, const InstanceFile& f) {
  const Group& G = inst.group();
  const Field& K = inst.field();
  const OracleCounts oc = oracle_enumerate(f.group, inst.cocycle());

  const FiniteSubalgebra S = span_subalgebra(inst.algebra, G.torsion_elements(0));
  const RadicalResult rad = jacobson_radical(S.alg);
  Json structure{{"radical_dimension", rad.basis.size()}};
  std::uint64_t idems = 0;
  std::optional<std::uint64_t> units;
  if (S.alg.is_commutative()) {
    idems = count_idempotents(S.alg).count;
    const FactorAlgebra Q = quotient_algebra(S.alg, rad.basis);
    std::uint64_t u = ipow(K.order(), rad.basis.size());
    for (const auto& e : primitive_idempotents(Q.alg)) u *= ipow(K.order(), corner_algebra(Q.alg, e).alg.dim()) - 1;
    units = u;
  } else {
    idems = count_idempotents_exhaustive(S.alg);
  }
  structure["idempotents"] = idems;
  structure["units"] = units ? Json(*units) : Json(nullptr);

  const bool agree = oc.radical_dimension == rad.basis.size() && oc.idempotents == idems &&
                     (!units || *units == oc.units);
  Json out{{"scope", G.is_finite() ? "K_lambda G" : "K_lambda T"},
           {"oracle",
            {{"dimension", oc.dimension},
             {"elements", oc.elements},
             {"units", oc.units},
             {"idempotents", oc.idempotents},
             {"nilpotents", oc.nilpotents},
             {"radical_dimension", oc.radical_dimension}}},
           {"structure", structure},
           {"agree", agree}};
  if (!units) out["note"] = "noncommutative: the unit count is not derived structurally";
  return out;
}

Json orbit_report(const Instance& inst, const std::vector<GroupElement>& elements, std::uint32_t depth) {
  const Group& G = inst.group();
  const auto units = default_probe_units(inst, depth);
  Json labels = Json::array();
  for (const auto& u : units) labels.push_back(Json{{"label", u.label}, {"from_depth", u.from_depth}});
  Json probes = Json::array();
  for (const auto& g : elements) {
    const OrbitProbe p = probe_conjugates(inst, inst.algebra->basis(g), units, depth);
    Json pj{{"g", Json{{"element", encode_element(G, g)}, {"text", G.format(g)}}},
            {"sizes", p.size_per_depth},
            {"stabilized", p.stabilized},
            {"hit_cap", p.hit_cap},
            {"reading", p.stabilized ? "consistent with FC" : "consistent with NotFC"}};
    pj["stabilized_at"] = p.stabilized_at ? Json(*p.stabilized_at) : Json(nullptr);
    if (!p.orbit.empty()) {
      Json orbit = Json::array();
      for (const auto& y : p.orbit) orbit.push_back(encode_algebra_element(y));
      pj["orbit"] = orbit;
    }
    probes.push_back(std::move(pj));
  }
  return Json{{"depth", depth}, {"units", labels}, {"probes", probes}};
}

Json make_report(const InstanceFile& f, const Instance& inst, const std::string& mode, Json result) {
  return Json{{"tool", {{"name", "fcunits"}, {"version", version()}}},
              {"instance", {{"name", f.name}, {"digest", digest(encode_instance(f))}}},
              {"seed", inst.seed},
              {"caps",
               {{"box_radius", inst.caps.box_radius},
                {"orbit_depth", inst.caps.orbit_depth},
                {"truncation_level", inst.caps.truncation_level}}},
              {"mode", mode},
              {"result", std::move(result)}};
}

std::string render_text(const Json& report) {
  std::ostringstream s;
  s << report.at("instance").at("name").get<std::string>() << " [" << report.at("mode").get<std::string>() << "]\n";
  const Json& r = report.at("result");
  const std::string mode = report.at("mode").get<std::string>();
  if (mode == "verdict") {
    s << "  " << r.at("result").get<std::string>() << " via " << r.at("theorem").get<std::string>() << "\n";
    for (const auto& c : r.at("conditions")) {
      const std::string mark = c.at("pass").is_null() ? "?" : (c.at("pass").get<bool>() ? "ok" : "FAIL");
      s << "  [" << mark << "] " << c.at("id").get<std::string>() << ": " << c.at("detail").get<std::string>() << "\n";
    }
    for (const auto& n : r.at("notes")) s << "  note: " << n.get<std::string>() << "\n";
  } else if (mode == "oracle") {
    const Json& o = r.at("oracle");
    s << "  " << r.at("scope").get<std::string>() << ": |U| = " << o.at("units") << ", idempotents "
      << o.at("idempotents") << ", radical " << o.at("radical_dimension") << "; agree "
      << (r.at("agree").get<bool>() ? "yes" : "no") << "\n";
  } else {
    s << r.dump(2) << "\n";
  }
  return s.str();
}

std::uint64_t seed_from_env() {
  const char* v = std::getenv("FC_UNITS_SEED");
  if (!v || !*v) return 0;
  std::uint64_t out = 0;
  const char* end = v + std::char_traits<char>::length(v);
  const auto res = std::from_chars(v, end, out);
  if (res.ec != std::errc() || res.ptr != end) schema(std::string("FC_UNITS_SEED is not an integer: ") + v);
  return out;
}

}  // namespace fcu
