#include "tmesh/anchors.hpp"
#include "tmesh/errors.hpp"

#include <algorithm>

namespace tmesh {

unsigned anchor_kappa(const TMesh& mesh)
{
    unsigned kappa = 0;
    for (int k = 0; k < mesh.dim(); ++k)
        if (mesh.degree(k) % 2 == 1)
            kappa |= 1u << k;
    return kappa;
}

std::vector<Entity> anchor_set(const TMesh& mesh)
{
    std::vector<Entity> out;
    unsigned kappa = anchor_kappa(mesh);
    for (const auto& e : mesh.entities())
        if (e.singleton_mask() == kappa && mesh.in_active_region(e))
            out.push_back(e);
    return out;
}

Entity project(const Entity& e, int j, int n)
{
    Entity p = e;
    p[j] = Component::singleton(n);
    return p;
}

KnotVector global_knot_vector(const TMesh& mesh, const Entity& e, int j)
{
    const int d = mesh.dim();
    int lo[kMaxDim], hi[kMaxDim];
    for (int k = 0; k < d; ++k) {
        lo[k] = e[k].dlo();
        hi[k] = e[k].dhi();
    }
    KnotVector out;
    for (int n = 0; n <= mesh.extent(j); ++n) {
        lo[j] = hi[j] = 2 * n;
        if (mesh.skeleton_covers(j, lo, hi))
            out.push_back(n);
    }
    return out;
}

KnotVector local_window(const KnotVector& g, const Entity& a, int j, int p)
{
    auto it = std::lower_bound(g.begin(), g.end(), a[j].lo);
    if (it == g.end() || *it != a[j].lo)
        throw Error(ErrorKind::InsufficientKnots, "inf A_j of " + a.str() + " is not a global knot");
    long pos = it - g.begin();
    long start = pos - (p + 1) / 2;
    long stop = start + p + 1;
    if (start < 0 || stop >= static_cast<long>(g.size()))
        throw Error(ErrorKind::InsufficientKnots, "global knot vector too short around " + a.str() +
                                                      " in direction " + std::to_string(j + 1));
    if (!a[j].is_singleton() && g[pos + 1] != a[j].hi)
        throw Error(ErrorKind::InsufficientKnots, "interval component of " + a.str() + " is not a knot span");
    return KnotVector(g.begin() + start, g.begin() + stop + 1);
}

KnotVector local_knot_vector(const TMesh& mesh, const Entity& a, int j)
{
    return local_window(global_knot_vector(mesh, a, j), a, j, mesh.degree(j));
}

AnchorTable::AnchorTable(const TMesh& mesh)
{
    for (const auto& e : anchor_set(mesh)) {
        AnchorInfo info;
        info.entity = e;
        for (int j = 0; j < mesh.dim(); ++j) {
            info.global.push_back(global_knot_vector(mesh, e, j));
            info.local.push_back(local_window(info.global.back(), e, j, mesh.degree(j)));
        }
        anchors_.push_back(std::move(info));
    }
}

int AnchorTable::find(const Entity& e) const
{
    auto it = std::lower_bound(anchors_.begin(), anchors_.end(), e,
                               [](const AnchorInfo& a, const Entity& x) { return a.entity < x; });
    if (it == anchors_.end() || !(it->entity == e))
        return -1;
    return static_cast<int>(it - anchors_.begin());
}

Box index_support(const AnchorInfo& a)
{
    std::vector<Interval1> c;
    for (const auto& v : a.local)
        c.push_back({Rat(v.front()), Rat(v.back())});
    return Box(std::move(c));
}

bool support_overlaps(const AnchorInfo& a, const AnchorInfo& b)
{
    for (std::size_t k = 0; k < a.local.size(); ++k)
        if (std::max(a.lo(k), b.lo(k)) > std::min(a.hi(k), b.hi(k)))
            return false;
    return true;
}

} // namespace tmesh
