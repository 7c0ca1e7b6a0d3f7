#pragma once

#include "tmesh/mesh.hpp"

#include <vector>

namespace tmesh {

using KnotVector = std::vector<int>; // strictly increasing indices

// bit mask of the odd-degree directions
unsigned anchor_kappa(const TMesh& mesh);

std::vector<Entity> anchor_set(const TMesh& mesh);

Entity project(const Entity& e, int j, int n);

KnotVector global_knot_vector(const TMesh& mesh, const Entity& e, int j);
// p_j+2 consecutive entries of K^A_j centred on A_j
KnotVector local_knot_vector(const TMesh& mesh, const Entity& a, int j);
KnotVector local_window(const KnotVector& global, const Entity& a, int j, int p);

struct AnchorInfo {
    Entity entity;
    std::vector<KnotVector> global; // per direction
    std::vector<KnotVector> local;  // per direction

    int lo(int k) const { return local[k].front(); }
    int hi(int k) const { return local[k].back(); }
};

// anchors with all knot vectors materialised once
class AnchorTable {
public:
    AnchorTable() = default;
    explicit AnchorTable(const TMesh& mesh);

    const std::vector<AnchorInfo>& anchors() const { return anchors_; }
    std::size_t size() const { return anchors_.size(); }
    const AnchorInfo& operator[](std::size_t i) const { return anchors_[i]; }
    // index of an anchor entity, or -1
    int find(const Entity& e) const;

private:
    std::vector<AnchorInfo> anchors_;
};

// closed index support box of an anchor
Box index_support(const AnchorInfo& a);
bool support_overlaps(const AnchorInfo& a, const AnchorInfo& b);

} // namespace tmesh
