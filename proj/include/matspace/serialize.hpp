#pragma once

// JSON forms of fields, scalars, matrices, subspaces and verdicts. Every
// emitted basis is canonical; readers re-canonicalize whatever they are given.

#include <json.hpp>

#include "matspace/predicates.hpp"

namespace matspace {

using json = nlohmann::ordered_json;

json to_json(const Field& f);
Field field_from_json(const json& j);

/// Integers for GF(p), "a/b" strings for Q.
json to_json(const Scalar& s);
/// Accepts integers or "a/b" / "a" strings; GF(p) entries are reduced mod p.
Scalar scalar_from_json(const Field& f, const json& j);

json to_json(const Vector& v);
Vector vector_from_json(const Field& f, const json& j);

/// {"n":..,"rows":[[..],..]}; a bare array of rows is also read.
json to_json(const Matrix& m);
Matrix matrix_from_json(const Field& f, const json& j);

json to_json(const VecSpace& w);
VecSpace vecspace_from_json(const Field& f, const json& j);

/// {"field":..,"n":..,"basis":[matrix,..]}
json to_json(const MatSpace& v);
/// Reads "basis" (or "generators") and takes the field from the document
/// unless override_field is given; a conflicting document field is an error.
MatSpace subspace_from_json(const json& j, const std::optional<Field>& override_field = std::nullopt);

/// {"status","reason","witness"}; callers add "reverified" where a context exists.
json to_json(const Verdict& v);
Verdict verdict_from_json(const Field& f, const json& j);

}  // namespace matspace
