#pragma once

#include "tmesh/mesh.hpp"
#include "tmesh/region.hpp"

#include <json.hpp>

#include <string>
#include <vector>

namespace tmesh::io {

using json = nlohmann::json;

inline constexpr int kFormatVersion = 1;

// integers stay numbers, other rationals become "num/den"
json rat_to_json(const Rat& q);
Rat rat_from_json(const json& j);

// Directions are 1-based in every file format.
json mesh_to_json(const TMesh& mesh);
TMesh mesh_from_json(const json& j);

TMesh load_mesh(const std::string& path);
void save_mesh(const TMesh& mesh, const std::string& path);
json parse_file(const std::string& path);

// [{"point": q} | {"interval": [a, b]}, ...] per box
json region_to_json(const BoxRegion& r);
BoxRegion region_from_json(const json& j, int dim);

struct SvgOptions {
    int dir = -1;  // slice direction, 0-based; -1 for a 2D mesh
    int index = 0; // slice index
    bool skeleton = true, atj = false, gtj = false, anchors = false;
    double scale = 24.0;
};
std::string render_svg(const TMesh& mesh, const SvgOptions& opt);

// the regions an SVG layer was drawn from, keyed by direction (1-based)
struct SliceLayers {
    std::vector<BoxRegion> atj, gtj; // per direction, restricted to the slice
};
SliceLayers slice_layers(const TMesh& mesh, const SvgOptions& opt);

} // namespace tmesh::io
