#pragma once

#include "tmesh/anchors.hpp"

#include <vector>

namespace tmesh {

// v1 and v2 agree as sets on the intersection of their convex hulls
bool knots_overlap(const KnotVector& v1, const KnotVector& v2);

bool weakly_partially_overlap(const AnchorInfo& a1, const AnchorInfo& a2);
bool strongly_partially_overlap(const AnchorInfo& a1, const AnchorInfo& a2);

struct DcWitness {
    Entity first, second;
    std::vector<KnotVector> v1, v2;
    std::vector<bool> overlap; // per direction
};

struct DcResult {
    bool ok = true;
    std::vector<DcWitness> witnesses;
};

DcResult is_wdc(const TMesh& mesh, const AnchorTable& table);
DcResult is_sdc(const TMesh& mesh, const AnchorTable& table);
DcResult is_wdc(const TMesh& mesh);
DcResult is_sdc(const TMesh& mesh);

} // namespace tmesh
