#pragma once

#include <string>

#include "json.hpp"
#include "latfm/finite_form.hpp"
#include "latfm/isometry_oracle.hpp"
#include "latfm/lattice.hpp"
#include "latfm/rank2_family.hpp"

namespace latfm {

using Json = nlohmann::ordered_json;

/// Integers fitting in int64 are JSON numbers; larger ones are decimal strings.
Json integer_to_json(const Integer& x);
/// Accepts a JSON integer or a decimal string. Throws InvalidArgument.
Integer integer_from_json(const Json& j);

/// Always "a/b", also for integers ("3/1").
std::string rational_to_string(const Rational& q);
/// Accepts "a/b" or "a". Throws InvalidArgument.
Rational rational_from_string(const std::string& s);

Json matrix_to_json(const IntMatrix& m);
IntMatrix matrix_from_json(const Json& j);

/// {"rank": n, "gram": [[...]]}
Json lattice_to_json(const Lattice& l);
Lattice lattice_from_json(const Json& j);

/// {"factors": [...], "q": ["a/b", ...], "b": [["a/b", ...], ...]}; "q" is
/// omitted for modules without a quadratic form.
Json module_to_json(const FiniteQuadraticModule& m);
FiniteQuadraticModule module_from_json(const Json& j);

Json module_isometry_to_json(const ModuleIsometry& f);

/// {n, members[], witnesses[], certificates[], attestations[], ...}
Json family_to_json(const FamilyBundle& f);

/// Parses a Gram matrix from JSON text ("[[2,1],[1,0]]" or a lattice object)
/// or from the compact form "2,1;1,0".
IntMatrix parse_gram(const std::string& text);

}  // namespace latfm
