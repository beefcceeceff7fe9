#pragma once

#include <string>

#include "json.hpp"
#include "quoric/cech.hpp"
#include "quoric/char_functor.hpp"
#include "quoric/reps.hpp"

namespace quoric::io {

using json = nlohmann::json;

// Reads and parses a JSON file; failures become input_error with position
// diagnostics from the parser.
json load_json_file(const std::string& path);

// Schemas:
//   quaternion       [a, b, c, d]
//   group element    [[a,b,c,d], ...] (one quaternion per coordinate, unit)
//   conjugacy class  [[1],[2,3]]      (sorted 1-based index lists)
//   face complex     { "n", "facets", "maximal_simplices", "homotopy_polytope"? }
//   pair             { "complex", "ambient"?, "classes": [{"simplex", "class"}] }
//   nerve            { "patches", "edges", "triples"? }   (0-based patches;
//                      omitted triples default to all triangles of the graph)
//   cochain values   [{"edge": [a,b], "element": <group element>}]
//   rep expression   { "n", "terms": [[entry,...],...] }, entry = m or [m,...]
//   complex vector   [entry,...], entry = x or [re, im]

Quaternion parse_quaternion(const json& j);
GroupElement parse_group_element(const json& j);
ConjClass parse_class(const json& j, int ambient);
FaceComplex parse_complex(const json& j);
CharacteristicPair parse_pair(const json& j);
cech::Nerve parse_nerve(const json& j);
cech::Cochain1 parse_cochain(const json& j, const cech::Nerve& n, int rank);
reps::RepExpr parse_rep(const json& j);
reps::CVector parse_cvector(const json& j, long dim);

json quaternion_json(const Quaternion& q);
json group_element_json(const GroupElement& g);
json class_json(const ConjClass& c);
json complex_json(const FaceComplex& k);
json pair_json(const CharacteristicPair& p);

}  // namespace quoric::io
