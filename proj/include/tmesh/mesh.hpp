#pragma once

#include "tmesh/entity.hpp"
#include "tmesh/region.hpp"

#include <memory>
#include <string>
#include <vector>

namespace tmesh {

struct Refinement {
    Entity cell;
    int dir = 0; // 0-based
    bool operator==(const Refinement&) const = default;
};

// Every mesh entity is a union of lattice "pieces": in doubled coordinates
// u_k in [0, 2 N_k], even u_k is the point u_k/2 and odd u_k the open unit
// interval (floor(u_k/2), floor(u_k/2)+1).
class Lattice {
public:
    Lattice() = default;
    explicit Lattice(const std::vector<int>& extents);

    int dim() const { return static_cast<int>(ext_.size()); }
    int ext(int k) const { return ext_[k]; }
    std::size_t stride(int k) const { return stride_[k]; }
    std::size_t size() const { return size_; }

    std::size_t offset(const int* u) const
    {
        std::size_t off = 0;
        for (int k = 0; k < dim(); ++k)
            off += stride_[k] * static_cast<std::size_t>(u[k]);
        return off;
    }
    std::size_t offset(const std::vector<int>& u) const { return offset(u.data()); }
    std::vector<int> coords(std::size_t off) const;

    // invoke f(offset) for every piece of the doubled box [lo_k, hi_k]
    template <class F>
    void for_box(const int* lo, const int* hi, F&& f) const
    {
        int d = dim();
        int cur[8];
        for (int k = 0; k < d; ++k) {
            if (lo[k] > hi[k])
                return;
            cur[k] = lo[k];
        }
        std::size_t inner = stride_[d - 1];
        while (true) {
            std::size_t off = 0;
            for (int k = 0; k < d - 1; ++k)
                off += stride_[k] * static_cast<std::size_t>(cur[k]);
            for (int v = lo[d - 1]; v <= hi[d - 1]; ++v)
                if (!f(off + inner * static_cast<std::size_t>(v)))
                    return;
            int k = d - 2;
            while (k >= 0 && cur[k] == hi[k]) {
                cur[k] = lo[k];
                --k;
            }
            if (k < 0)
                return;
            ++cur[k];
        }
    }

private:
    std::vector<int> ext_;
    std::vector<std::size_t> stride_;
    std::size_t size_ = 0;
};

class TMesh {
public:
    TMesh() = default;

    const IndexDomain& domain() const { return data_->domain; }
    int dim() const { return data_->domain.dim; }
    int extent(int k) const { return data_->domain.extents[k]; }
    int degree(int k) const { return data_->domain.degrees[k]; }
    int frame_width(int k) const { return data_->domain.frame_width(k); }

    const std::vector<Entity>& entities() const { return data_->entities; }
    std::vector<Entity> entities_of_dim(int j) const;
    std::vector<Entity> cells() const { return entities_of_dim(dim()); }
    std::size_t count(int j) const;

    const std::vector<std::vector<int>>& initial_breakpoints() const { return data_->breakpoints; }
    const std::vector<Refinement>& refinement_log() const { return data_->log; }

    const Lattice& lattice() const { return data_->lattice; }
    // index into entities() of the entity holding a lattice piece
    int entity_at(std::size_t piece) const { return data_->label[piece]; }
    // bit j set iff the piece lies in the j-orthogonal skeleton Sk_j
    unsigned skeleton_bits(std::size_t piece) const { return data_->skel[piece]; }

    // entity containing a point of the closed domain
    const Entity& locate(const std::vector<Rat>& x) const;
    bool in_skeleton(int j, const std::vector<Rat>& x) const;
    // every piece of the doubled box [lo, hi] lies in Sk_j
    bool skeleton_covers(int j, const int* lo, const int* hi) const;
    // no piece of the doubled box [lo, hi] lies in Sk_j
    bool skeleton_misses(int j, const int* lo, const int* hi) const;

    bool in_active_region(const Entity& e) const;

    static TMesh from_entities(IndexDomain dom, std::vector<std::vector<int>> breakpoints,
                               std::vector<Entity> ents, std::vector<Refinement> log);

    bool same_entities(const TMesh& o) const { return entities() == o.entities(); }

private:
    struct Data {
        IndexDomain domain;
        std::vector<std::vector<int>> breakpoints;
        std::vector<Entity> entities;
        std::vector<Refinement> log;
        Lattice lattice;
        std::vector<std::int32_t> label;
        std::vector<std::uint8_t> skel;
    };
    std::shared_ptr<const Data> data_;
};

// doubled index of a rational coordinate
int doubled_coord(const Rat& x);

TMesh create_tensor_mesh(const IndexDomain& dom, const std::vector<std::vector<int>>& breakpoints);
// breakpoints: 0..f, then every `width`-th index, then N-f..N, for `cells` active cells per direction
std::vector<std::vector<int>> frame_breakpoints(const std::vector<int>& degrees, const std::vector<int>& cells,
                                                const std::vector<int>& width, std::vector<int>& extents);
// stretches the active part of every direction by 2^levels, keeping the frame slices unit-spaced,
// so that `levels` nested bisections of any initial active cell stay integral
std::vector<std::vector<int>> scale_breakpoints(const std::vector<int>& degrees,
                                                const std::vector<std::vector<int>>& breakpoints, int levels,
                                                std::vector<int>& extents);

// Bisects `cell` in direction j (0-based). Where the cell touches the frame, the new
// hyperface is extended through the frame to the domain boundary.
TMesh subdiv(const TMesh& mesh, const Entity& cell, int j);
TMesh subdiv_at(const TMesh& mesh, const std::vector<Rat>& point, int j);
TMesh replay(const TMesh& initial, const std::vector<Refinement>& log);

BoxRegion active_region(const TMesh& mesh);
BoxRegion frame_region(const TMesh& mesh);
BoxRegion frame_region_k(const TMesh& mesh, int k);
BoxRegion slice_region(const TMesh& mesh, int k, int n);
BoxRegion skeleton(const TMesh& mesh, int j);

// entities whose singleton directions are exactly `kappa` (bit mask)
std::vector<Entity> orth_entities(const TMesh& mesh, unsigned kappa);

struct AdmissibilityReport {
    bool admissible = true;
    std::vector<std::string> violations;
};
AdmissibilityReport is_admissible(const TMesh& mesh);

bool check_three_direction_assumption(const TMesh& mesh);

} // namespace tmesh
