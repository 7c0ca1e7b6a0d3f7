#pragma once

#include "tmesh/anchors.hpp"
#include "tmesh/topology.hpp"

#include <cstdint>
#include <vector>

namespace tmesh {

using PieceMask = std::vector<std::uint8_t>; // one flag per lattice piece

struct AbstractExtension {
    int dir = 0;
    int n = 0;
    BoxRegion region;
};

// ATJ_j(n)
AbstractExtension atj_slice(const TMesh& mesh, const AnchorTable& table, int j, int n);
AbstractExtension atj_slice(const TMesh& mesh, int j, int n);

// ATJ_j = union over n of ATJ_j(n), as lattice masks, one per direction
std::vector<PieceMask> atj_masks(const TMesh& mesh, const AnchorTable& table);

// closed region covered by the flagged pieces (the flag set must be closed)
BoxRegion mask_to_region(const TMesh& mesh, const PieceMask& mask);
PieceMask region_to_mask(const TMesh& mesh, const BoxRegion& r); // integer boxes only

BoxRegion atj_region(const TMesh& mesh, const AnchorTable& table, int i);

struct AasWitness {
    int i = 0, n = 0, j = 0, m = 0; // ATJ_i(n) meets ATJ_j(m)
    BoxRegion intersection;
};

struct AasResult {
    bool aas = true;
    std::vector<AasWitness> witnesses;
};

AasResult is_aas(const TMesh& mesh, const AnchorTable& table);
AasResult is_aas(const TMesh& mesh);

struct GeometricExtension {
    TJunction tjunction;
    std::vector<KnotVector> vectors; // v^T_k
    Box region;                      // product of conv(v^T_k)
};

GeometricExtension gtj(const TMesh& mesh, const TJunction& t);
std::vector<GeometricExtension> all_gtj(const TMesh& mesh);
BoxRegion gtj_region(const TMesh& mesh, const std::vector<GeometricExtension>& g, int i);

struct GasWitness {
    TJunction first, second;
    Box intersection;
};

struct GasResult {
    bool ok = true;
    std::vector<GasWitness> witnesses;
};

GasResult is_sgas(const TMesh& mesh, const std::vector<GeometricExtension>& g);
GasResult is_wgas(const TMesh& mesh, const std::vector<GeometricExtension>& g);
GasResult is_sgas(const TMesh& mesh);
GasResult is_wgas(const TMesh& mesh);

} // namespace tmesh
