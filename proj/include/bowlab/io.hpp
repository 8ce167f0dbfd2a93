#pragma once

#include <json.hpp>

#include "bowlab/elliptic.hpp"
#include "bowlab/envelope.hpp"

namespace bowlab {

using Json = nlohmann::ordered_json;

Json diagram_to_json(const BraneDiagram& d);
BraneDiagram diagram_from_json(const Json& j);

Json margins_to_json(const MarginData& md);
MarginData margins_from_json(const Json& j);

Json bct_to_json(const BCT& t, const MarginData& md);
BCT bct_from_json(const Json& j);

Json tie_to_json(const TieDiagram& td);
TieDiagram tie_from_json(const Json& j);

Json poly_to_json(const LaurentPoly& p);
LaurentPoly poly_from_json(const Json& j, const SpacePtr& space);

Json restriction_to_json(const BCT& f, const MarginData& md, const RestrictionEntry& e);

Json butterfly_to_json(const Butterfly& b);

Json envelope_table_to_json(const EnvelopeTable& t, const MarginData& md);

Json curve_graph_to_json(const CurveGraph& g, const MarginData& md);
CurveGraph curve_graph_from_json(const Json& j);

Json theta_to_json(const ThetaProduct& t);
Json elliptic_table_to_json(const EllipticTable& t);
EllipticTable elliptic_table_from_json(const Json& j);

/// Fixture table: entries given as integer-coefficient products of forms
/// (u_p - u_m + k*h), an extra h power, and an integer coefficient.
/// {"diagram": "...", "points": [[row,...],...], "entries": [[entry|0,...],...]}
/// entry = {"coeff": c, "hpow": s, "factors": [{"p":i,"m":j,"h":k},...]}
struct TableFixture {
    BraneDiagram diagram;
    std::vector<BCT> points;  // in the fixture's own row order
    std::vector<std::vector<LaurentPoly>> entries;
    SpacePtr space;
};
TableFixture table_fixture_from_json(const Json& j);

Json read_json_file(const std::string& path);

}  // namespace bowlab
