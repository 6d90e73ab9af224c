#pragma once

#include "etkk/hom.hpp"
#include "etkk/paths.hpp"

#include <nlohmann/json_fwd.hpp>

namespace etkk {

using json = nlohmann::json;

// Integers serialize as JSON numbers while they fit the 53-bit safe range
// and as decimal strings beyond it; rationals always as "a/b" strings.
// Matrices are arrays of row arrays; a matrix with a zero dimension gets
// companion "<field>_rows"/"<field>_cols" keys so shapes survive the trip.

json int_to_json(const Int& x);
Int int_from_json(const json& j);
json rat_to_json(const Rat& r);
Rat rat_from_json(const json& j);

json matrix_to_json(const IntMatrix& m);
IntMatrix matrix_from_json(const json& j, const char* what);
json vec_to_json(const IntVec& v);
IntVec vec_from_json(const json& j, const char* what);

void emit_matrix_field(json& obj, const std::string& key, const IntMatrix& m);
IntMatrix read_matrix_field(const json& obj, const std::string& key);

json algebra_to_json(const AlgebraPresentation& a);
AlgebraPresentation algebra_from_json(const json& j);

json diagram_to_json(const DiagramPair& d);
DiagramPair diagram_from_json(const json& j);

json standard_hom_to_json(const StandardHom& h);
StandardHom standard_hom_from_json(const json& j);

json m_standard_hom_to_json(const MStandardHom& h);
MStandardHom m_standard_hom_from_json(const json& j);

json pl_hom_to_json(const PLHom& h);
PLHom pl_hom_from_json(const json& j);

json certificate_to_json(const HomotopyCertificate& c);
HomotopyCertificate certificate_from_json(const json& j);

// Canonical text: sorted keys, no whitespace, trailing newline. Fixed inputs
// give byte-identical documents.
std::string dump_document(const json& j);
json parse_document(const std::string& text);

} // namespace etkk
