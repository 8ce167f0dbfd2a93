#pragma once

#include <string>

#include "bowlab/envelope.hpp"

namespace bowlab {

enum class EmitFormat { TikZ, Svg };

/// Brane line with dashed tie arcs above (NS5 on the left) or below.
/// Output is byte-stable for a fixed input.
std::string emit_tie_diagram(const BraneDiagram& d, const TieDiagram& td, EmitFormat fmt);

/// Dot-and-arrow butterfly pictures, one per D5 brane with ties.
std::string emit_butterflies(const BraneDiagram& d, const TieDiagram& td, EmitFormat fmt);

/// Moment-graph picture: vertices layered by the partial order, labeled edges.
std::string emit_gkm_graph(const CurveGraph& g, EmitFormat fmt);

}  // namespace bowlab
