// fcunits: validate and analyze instance files.
//
//   fcunits validate <file>
//   fcunits analyze <file> [--verdict|--structure|--orbits <gens>|--oracle]
//                          [--depth N] [--level K] [--out report.json] [--text]
//
// Exit codes: 0 success, 1 invalid instance, 2 I/O or schema error,
// 3 analysis error (a cap was exceeded, a theorem does not apply, ...).

#include <CLI11.hpp>

#include <fstream>
#include <iostream>
#include <optional>

#include "fcunits/io.hpp"

namespace {

int cmd_validate(const std::string& path) {
  const fcu::ValidationOutcome v = fcu::validate_file(path);
  (v.exit_code == 0 ? std::cout : std::cerr) << v.message << "\n";
  if (!v.counterexample.is_null()) std::cout << v.counterexample.dump() << "\n";
  return v.exit_code;
}

struct AnalyzeOptions {
  std::string path;
  bool verdict = false, structure = false, oracle = false, text = false;
  std::string orbits;
  std::optional<std::uint32_t> depth, level;
  std::string out;
};

std::vector<fcu::GroupElement> parse_elements(const fcu::Group& G, const std::string& text) {
  fcu::Json j;
  try {
    j = fcu::Json::parse(text);
  } catch (const fcu::Json::parse_error& e) {
    throw fcu::Error(fcu::ErrorCode::Schema, std::string("--orbits expects a JSON list of elements: ") + e.what());
  }
  if (!j.is_array()) j = fcu::Json::array({j});
  std::vector<fcu::GroupElement> out;
  for (const auto& e : j) out.push_back(fcu::decode_element(G, e));
  return out;
}

int cmd_analyze(const AnalyzeOptions& o) {
  fcu::InstanceFile f;
  std::uint64_t seed = 0;
  try {
    f = fcu::parse_instance(fcu::read_json_file(o.path));
    seed = fcu::seed_from_env();
  } catch (const fcu::IoError& e) {
    std::cerr << e.what() << "\n";
    return 2;
  } catch (const fcu::Error& e) {
    std::cerr << e.what() << "\n";
    return 2;
  }
  if (o.depth) f.caps.orbit_depth = *o.depth;
  if (o.level) f.caps.truncation_level = *o.level;

  std::optional<fcu::Instance> inst;
  try {
    inst = fcu::build_instance(f, seed);
  } catch (const fcu::Error& e) {
    std::cerr << e.what() << "\n";
    return e.code() == fcu::ErrorCode::Schema ? 2 : 1;
  }

  fcu::Json report;
  try {
    if (o.structure) {
      report = fcu::make_report(f, *inst, "structure", fcu::structure_report(*inst));
    } else if (o.oracle) {
      report = fcu::make_report(f, *inst, "oracle", fcu::oracle_report(*inst, f));
    } else if (!o.orbits.empty()) {
      const auto elements = parse_elements(inst->group(), o.orbits);
      report = fcu::make_report(f, *inst, "orbits", fcu::orbit_report(*inst, elements, f.caps.orbit_depth));
    } else {
      report = fcu::make_report(f, *inst, "verdict", fcu::verdict(*inst).to_json());
    }
  } catch (const fcu::Error& e) {
    std::cerr << e.what() << "\n";
    return e.code() == fcu::ErrorCode::Schema ? 2 : 3;
  }

  const std::string body = o.text ? fcu::render_text(report) : report.dump(2) + "\n";
  if (o.out.empty()) {
    std::cout << body;
  } else {
    std::ofstream out(o.out);
    if (!out) {
      std::cerr << "cannot write " << o.out << "\n";
      return 2;
    }
    out << body;
  }
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Finite conjugacy classes in unit groups of twisted group algebras"};
  app.require_subcommand(1);
  app.set_version_flag("--version", fcu::version());

  std::string validate_path;
  auto* validate = app.add_subcommand("validate", "Check the field, group and cocycle of an instance file");
  validate->add_option("file", validate_path, "instance file")->required();

  AnalyzeOptions ao;
  auto* analyze = app.add_subcommand("analyze", "Run an analysis and print a JSON report");
  analyze->add_option("file", ao.path, "instance file")->required();
  auto* v = analyze->add_flag("--verdict", ao.verdict, "FC verdict (default)");
  auto* s = analyze->add_flag("--structure", ao.structure, "radical, idempotents and decomposition of K_lambda t(G)");
  auto* ob = analyze->add_option("--orbits", ao.orbits, "JSON list of group elements whose basis units are probed");
  auto* oc = analyze->add_flag("--oracle", ao.oracle, "exhaustive enumeration cross-check");
  v->excludes(s, ob, oc);
  s->excludes(ob, oc);
  ob->excludes(oc);
  analyze->add_option("--depth", ao.depth, "orbit depth (at most 12)");
  analyze->add_option("--level", ao.level, "Prufer truncation level");
  analyze->add_option("--out", ao.out, "write the report here instead of stdout");
  analyze->add_flag("--text", ao.text, "human-readable rendering");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }
  if (validate->parsed()) return cmd_validate(validate_path);
  return cmd_analyze(ao);
}
