#pragma once

// Brute-force enumeration of a finite twisted group algebra.
//
// Deliberately independent of the group, cocycle, algebra and structure
// modules: the multiplication table is rebuilt from the raw group spec and
// the stored cocycle table, and only Scalar arithmetic is shared. Agreement
// with the structural answers is therefore a real cross-check.

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "fcunits/cocycles.hpp"
#include "fcunits/groups.hpp"
#include "fcunits/scalars.hpp"

namespace fcu {

inline constexpr std::uint64_t kOracleCap = 10'000'000;

struct OracleCounts {
  std::uint32_t dimension = 0;
  std::uint64_t elements = 0;
  std::uint64_t units = 0;
  std::uint64_t idempotents = 0;
  std::uint64_t nilpotents = 0;
  std::uint32_t radical_dimension = 0;
};

/// Enumerates K_tau T for the torsion part T of `group` with the stored
/// torsion table of `lambda` (free and Prufer parts are ignored). Throws
/// CapExceeded when |K|^|T| exceeds `cap` or K is infinite, Schema when
/// lambda has no stored form.
OracleCounts oracle_enumerate(const GroupSpec& group, const Cocycle& lambda, std::uint64_t cap = kOracleCap);

}  // namespace fcu
