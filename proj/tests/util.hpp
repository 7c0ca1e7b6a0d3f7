#pragma once

#include "tmesh/mesh.hpp"

#include <algorithm>
#include <random>
#include <vector>

namespace testutil {

using namespace tmesh;

inline Entity E(std::vector<Component> c) { return Entity(std::move(c)); }
inline Component I(int a, int b) { return Component::interval(a, b); }
inline Component S(int n) { return Component::singleton(n); }

inline std::vector<Rat> P(std::initializer_list<Rat> x) { return std::vector<Rat>(x); }

// {0,2,4,6,8}^2 with the given degrees
inline TMesh grid8(std::vector<int> p = {1, 1})
{
    std::vector<int> bp{0, 2, 4, 6, 8};
    return create_tensor_mesh(IndexDomain::make({8, 8}, p), {bp, bp});
}

inline TMesh tensor(std::vector<int> degrees, std::vector<std::vector<int>> bp)
{
    std::vector<int> ext;
    for (auto& b : bp)
        ext.push_back(b.back());
    return create_tensor_mesh(IndexDomain::make(ext, degrees), bp);
}

inline bool has(const TMesh& m, const Entity& e)
{
    return std::binary_search(m.entities().begin(), m.entities().end(), e);
}

// integer boxes given as (lo, hi) per direction
inline BoxRegion boxes(int d, std::vector<std::vector<std::pair<int, int>>> bs)
{
    BoxRegion r(d);
    for (auto& b : bs) {
        std::vector<Interval1> c;
        for (auto [lo, hi] : b)
            c.push_back({Rat(lo), Rat(hi)});
        r.add(Box(c));
    }
    return r;
}

// random admissible mesh: unit frame, `cells` active cells of width 4 per direction
inline TMesh random_mesh(std::mt19937& rng, int d, int steps, int cells = 3)
{
    std::vector<int> ext, deg(d), cs(d, cells), width(d, 4);
    for (int k = 0; k < d; ++k)
        deg[k] = 1 + static_cast<int>(rng() % 3);
    auto bp = frame_breakpoints(deg, cs, width, ext);
    TMesh m = create_tensor_mesh(IndexDomain::make(ext, deg), bp);
    for (int s = 0; s < steps; ++s) {
        auto all = m.cells();
        const Entity& q = all[rng() % all.size()];
        int j = static_cast<int>(rng() % d);
        if (!m.in_active_region(q) || (q[j].lo + q[j].hi) % 2)
            continue;
        m = subdiv(m, q, j);
    }
    return m;
}

} // namespace testutil
