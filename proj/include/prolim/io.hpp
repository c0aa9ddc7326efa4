#pragma once

#include <json.hpp>

#include "prolim/bisystem.hpp"
#include "prolim/linalg.hpp"
#include "prolim/nerve.hpp"
#include "prolim/posetlim.hpp"
#include "prolim/simplicial.hpp"
#include "prolim/towers.hpp"

namespace prolim::io {

using json = nlohmann::json;

/// Integers are written as decimal strings; plain JSON numbers are accepted on input.
json to_json(const Integer& x);
Integer integer_from_json(const json& j);
json to_json(const Rational& x);  // [num, den]
Rational rational_from_json(const json& j);

json to_json(const IntVector& v);
IntVector vector_from_json(const json& j);
json to_json(const IntMatrix& m);
IntMatrix matrix_from_json(const json& j);

json to_json(const FgAbGroup& g);
FgAbGroup group_from_json(const json& j);
json to_json(const GroupHom& h);
GroupHom hom_from_json(const json& j);
/// Matrix of a hom whose ends are already known.
GroupHom hom_from_json(const json& j, const FgAbGroup& source, const FgAbGroup& target);

json to_json(const SnfDecomposition& d);

json to_json(const Tower& t);
Tower tower_from_json(const json& j);
json to_json(const MlCertificate& c);
json to_json(const Lim1Class& c);
json to_json(const LimResult& r);
/// {lim, lim1, lim1_fg, ml_certificate}
json tower_report(const Tower& t, std::size_t depth);

json to_json(const SimplicialComplex& k);
SimplicialComplex complex_from_json(const json& j);
json to_json(const SimplicialMap& f);
SimplicialMap map_from_json(const json& j);

json to_json(const Cover& c);
Cover cover_from_json(const json& j);

json to_json(const FinitePosetDiagram& d);
FinitePosetDiagram diagram_from_json(const json& j);

json to_json(const BiSystem& s);
BiSystem bisystem_from_json(const json& j);
json to_json(const SideValue& v);
json to_json(const TauReport& r);

json to_json(const std::vector<JunctionReport>& r);

}  // namespace prolim::io
