#pragma once

// JSON encodings of fields, scalars, groups, elements and cocycles.
//
// Scalars: prime field -> integer; GF(p^k) -> array of k coefficients,
// constant term first; Q -> "a/b" (integers also accepted on input).
// Group elements: an index for Cayley groups, otherwise an object
// {"free": [...], "torsion": coords or index, "prufer": [num, level]}.

#include <json.hpp>

#include "fcunits/algebra.hpp"
#include "fcunits/cocycles.hpp"
#include "fcunits/groups.hpp"
#include "fcunits/poly.hpp"
#include "fcunits/scalars.hpp"

namespace fcu {

using Json = nlohmann::json;

Json encode_scalar(const Scalar& s);
/// Throws Schema.
Scalar decode_scalar(const Field& K, const Json& j);

Json encode_field(const FieldSpec& spec);
FieldSpec decode_field(const Json& j);

Json encode_group(const GroupSpec& spec);
GroupSpec decode_group(const Json& j);

Json encode_element(const Group& G, const GroupElement& g);
GroupElement decode_element(const Group& G, const Json& j);

/// Terms in canonical (sorted) order.
Json encode_algebra_element(const AlgebraElement& x);
AlgebraElement decode_algebra_element(const TwistedGroupAlgebra& A, const Json& j);

/// Stored-form cocycles only (Schema otherwise).
Json encode_cocycle(const Cocycle& c);
Cocycle decode_cocycle(const GroupRef& G, const FieldRef& K, const Json& j);

Json encode_poly(const Poly& f);

}  // namespace fcu
