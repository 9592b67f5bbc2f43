#pragma once

// Instance files and reports.
//
// Instance file: {"name", "field", "group", "cocycle", "caps": {"box_radius",
// "orbit_depth", "truncation_level"}}, with the field, group and cocycle
// encodings of encoding.hpp. Reports are JSON with sorted keys and no
// timestamps, so identical inputs give byte-identical output.

#include <cstdint>
#include <optional>
#include <string>

#include "fcunits/encoding.hpp"
#include "fcunits/fc_analysis.hpp"

namespace fcu {

std::string version();

/// Unreadable file or malformed JSON text.
class IoError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct InstanceFile {
  std::string name;
  FieldSpec field;
  GroupSpec group;
  Json cocycle;
  InstanceCaps caps;
  Json raw;
};

/// Throws IoError.
Json read_json_file(const std::string& path);
/// Throws Schema.
InstanceFile parse_instance(const Json& j);
Json encode_instance(const InstanceFile& f);

/// Builds field, group and cocycle and validates the cocycle. Throws the
/// construction errors (NonPrimeCharacteristic, InvalidGroup, ZeroValue,
/// InvalidCocycle, ...).
Instance build_instance(const InstanceFile& f, std::uint64_t seed = 0);

struct ValidationOutcome {
  int exit_code = 0;  // 0 valid, 1 invalid, 2 I/O or schema
  std::string message;
  Json counterexample;  // the failing triple, when the cocycle is invalid
};
ValidationOutcome validate_file(const std::string& path);

/// Sorted keys, no whitespace.
std::string canonical_dump(const Json& j);
/// "sha256:<hex>" of the canonical dump.
std::string digest(const Json& j);

/// Radical, idempotents and decomposition of K_lambda t(G).
Json structure_report(const Instance& inst);
/// Exhaustive counts against the structure modules, for K_lambda G when G
/// is finite and K_lambda t(G) otherwise. Throws CapExceeded.
Json oracle_report(const Instance& inst, const InstanceFile& f);
/// Orbit probes of the basis units u_g.
Json orbit_report(const Instance& inst, const std::vector<GroupElement>& elements, std::uint32_t depth);

Json make_report(const InstanceFile& f, const Instance& inst, const std::string& mode, Json result);
/// Short human-readable rendering of a report.
std::string render_text(const Json& report);

/// FC_UNITS_SEED, or 0.
std::uint64_t seed_from_env();

}  // namespace fcu
