#include "tmesh/dual_compat.hpp"
#include "tmesh/errors.hpp"

#include <algorithm>

namespace tmesh {

bool knots_overlap(const KnotVector& v1, const KnotVector& v2)
{
    if (v1.empty() || v2.empty())
        return true;
    int lo = std::max(v1.front(), v2.front());
    int hi = std::min(v1.back(), v2.back());
    if (lo > hi)
        return true;
    auto a = std::lower_bound(v1.begin(), v1.end(), lo);
    auto b = std::lower_bound(v2.begin(), v2.end(), lo);
    while (true) {
        bool ea = a == v1.end() || *a > hi;
        bool eb = b == v2.end() || *b > hi;
        if (ea || eb)
            return ea && eb;
        if (*a != *b)
            return false;
        ++a;
        ++b;
    }
}

namespace {

void require_distinct(const AnchorInfo& a1, const AnchorInfo& a2)
{
    if (a1.entity == a2.entity)
        throw Error(ErrorKind::SameAnchor, a1.entity.str());
}

} // namespace

bool weakly_partially_overlap(const AnchorInfo& a1, const AnchorInfo& a2)
{
    require_distinct(a1, a2);
    for (std::size_t l = 0; l < a1.local.size(); ++l)
        if (a1.local[l] != a2.local[l] && knots_overlap(a1.local[l], a2.local[l]))
            return true;
    return false;
}

bool strongly_partially_overlap(const AnchorInfo& a1, const AnchorInfo& a2)
{
    require_distinct(a1, a2);
    if (!support_overlaps(a1, a2))
        return true;
    int d = static_cast<int>(a1.local.size());
    int n = 0;
    for (int k = 0; k < d; ++k)
        n += knots_overlap(a1.local[k], a2.local[k]);
    return n >= d - 1;
}

namespace {

DcWitness witness(const AnchorInfo& a, const AnchorInfo& b)
{
    DcWitness w{a.entity, b.entity, a.local, b.local, {}};
    for (std::size_t k = 0; k < a.local.size(); ++k)
        w.overlap.push_back(knots_overlap(a.local[k], b.local[k]));
    return w;
}

// anchors differing only in direction l share K_l
void check_aligned(const AnchorInfo& a, const AnchorInfo& b)
{
    int d = a.entity.size(), diff = -1;
    for (int k = 0; k < d; ++k)
        if (!(a.entity[k] == b.entity[k])) {
            if (diff >= 0)
                return;
            diff = k;
        }
    if (diff >= 0 && a.global[diff] != b.global[diff])
        throw Error(ErrorKind::ComplexIntegrity,
                    "aligned anchors " + a.entity.str() + ", " + b.entity.str() + " have different global vectors");
}

} // namespace

DcResult is_wdc(const TMesh&, const AnchorTable& t)
{
    DcResult res;
    for (std::size_t i = 0; i < t.size(); ++i)
        for (std::size_t j = i + 1; j < t.size(); ++j) {
            if (!support_overlaps(t[i], t[j]))
                continue; // differ and overlap vacuously where the hulls are disjoint
            if (!weakly_partially_overlap(t[i], t[j])) {
                res.ok = false;
                res.witnesses.push_back(witness(t[i], t[j]));
            }
        }
    return res;
}

DcResult is_sdc(const TMesh&, const AnchorTable& t)
{
    DcResult res;
    for (std::size_t i = 0; i < t.size(); ++i)
        for (std::size_t j = i + 1; j < t.size(); ++j) {
            if (!support_overlaps(t[i], t[j]))
                continue;
            check_aligned(t[i], t[j]);
            if (!strongly_partially_overlap(t[i], t[j])) {
                res.ok = false;
                res.witnesses.push_back(witness(t[i], t[j]));
            }
        }
    return res;
}

DcResult is_wdc(const TMesh& mesh)
{
    return is_wdc(mesh, AnchorTable(mesh));
}

DcResult is_sdc(const TMesh& mesh)
{
    return is_sdc(mesh, AnchorTable(mesh));
}

} // namespace tmesh
