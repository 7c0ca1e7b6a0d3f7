#include "tmesh/suitability.hpp"
#include "tmesh/errors.hpp"

#include <algorithm>
#include <map>
#include <tuple>

namespace tmesh {

namespace {

Interval1 piece_interval(int u)
{
    if (u % 2 == 0)
        return {Rat(u / 2), Rat(u / 2)};
    return {Rat((u - 1) / 2), Rat((u + 1) / 2)};
}

// closed region from a sorted list of pieces forming a closed set
BoxRegion pieces_to_region(const TMesh& mesh, const std::vector<std::size_t>& pieces)
{
    const auto& lat = mesh.lattice();
    const int d = mesh.dim();
    BoxRegion r(d);
    for (std::size_t off : pieces) {
        auto u = lat.coords(off);
        bool maximal = true;
        for (int k = 0; k < d && maximal; ++k) {
            if (u[k] % 2)
                continue;
            for (int s : {-1, 1}) {
                int v = u[k] + s;
                if (v < 0 || v >= lat.ext(k))
                    continue;
                std::size_t nb = off + (s > 0 ? lat.stride(k) : 0) - (s < 0 ? lat.stride(k) : 0);
                if (std::binary_search(pieces.begin(), pieces.end(), nb)) {
                    maximal = false;
                    break;
                }
            }
        }
        if (!maximal)
            continue;
        std::vector<Interval1> c(d);
        for (int k = 0; k < d; ++k)
            c[k] = piece_interval(u[k]);
        r.add(Box(std::move(c)));
    }
    return r.normalized();
}

void full_slice(const TMesh& mesh, int j, int n, int* lo, int* hi)
{
    for (int k = 0; k < mesh.dim(); ++k) {
        lo[k] = 0;
        hi[k] = 2 * mesh.extent(k);
    }
    lo[j] = hi[j] = 2 * n;
}

bool in_vector(const KnotVector& v, int n)
{
    return std::binary_search(v.begin(), v.end(), n);
}

// paints ATJ_j(n) into `out` (set to 1); scratch must be zero and is left zero
bool paint_slice(const TMesh& mesh, const AnchorTable& table, const std::vector<int>& bucket, int j, int n,
                 PieceMask& scratch, PieceMask& out)
{
    bool any_in = false, any_out = false;
    for (int a : bucket) {
        if (in_vector(table[a].local[j], n))
            any_in = true;
        else
            any_out = true;
    }
    if (!any_in || !any_out)
        return false;
    const auto& lat = mesh.lattice();
    const int d = mesh.dim();
    int lo[kMaxDim], hi[kMaxDim];
    for (int a : bucket) {
        const auto& A = table[a];
        std::uint8_t bit = in_vector(A.local[j], n) ? 1 : 2;
        for (int k = 0; k < d; ++k) {
            lo[k] = 2 * A.lo(k);
            hi[k] = 2 * A.hi(k);
        }
        lo[j] = hi[j] = 2 * n;
        lat.for_box(lo, hi, [&](std::size_t off) {
            scratch[off] |= bit;
            return true;
        });
    }
    bool nonempty = false;
    full_slice(mesh, j, n, lo, hi);
    lat.for_box(lo, hi, [&](std::size_t off) {
        if (scratch[off] == 3) {
            out[off] = 1;
            nonempty = true;
        }
        scratch[off] = 0;
        return true;
    });
    return nonempty;
}

std::vector<std::vector<int>> buckets_for(const TMesh& mesh, const AnchorTable& table, int j)
{
    std::vector<std::vector<int>> b(mesh.extent(j) + 1);
    for (std::size_t a = 0; a < table.size(); ++a)
        for (int n = table[a].lo(j); n <= table[a].hi(j); ++n)
            b[n].push_back(static_cast<int>(a));
    return b;
}

} // namespace

BoxRegion mask_to_region(const TMesh& mesh, const PieceMask& mask)
{
    std::vector<std::size_t> pieces;
    for (std::size_t off = 0; off < mask.size(); ++off)
        if (mask[off])
            pieces.push_back(off);
    return pieces_to_region(mesh, pieces);
}

PieceMask region_to_mask(const TMesh& mesh, const BoxRegion& r)
{
    PieceMask m(mesh.lattice().size(), 0);
    int lo[kMaxDim], hi[kMaxDim];
    for (const auto& b : r.boxes()) {
        for (int k = 0; k < mesh.dim(); ++k) {
            if (b[k].lo.denominator() != 1 || b[k].hi.denominator() != 1)
                throw Error(ErrorKind::PreconditionViolated, "region_to_mask needs integer boxes");
            lo[k] = std::max<int>(0, 2 * static_cast<int>(b[k].lo.numerator()));
            hi[k] = std::min<int>(2 * mesh.extent(k), 2 * static_cast<int>(b[k].hi.numerator()));
        }
        mesh.lattice().for_box(lo, hi, [&](std::size_t off) {
            m[off] = 1;
            return true;
        });
    }
    return m;
}

AbstractExtension atj_slice(const TMesh& mesh, const AnchorTable& table, int j, int n)
{
    if (j < 0 || j >= mesh.dim() || n < 0 || n > mesh.extent(j))
        throw Error(ErrorKind::PreconditionViolated, "slice out of range");
    std::vector<int> bucket;
    for (std::size_t a = 0; a < table.size(); ++a)
        if (table[a].lo(j) <= n && n <= table[a].hi(j))
            bucket.push_back(static_cast<int>(a));
    PieceMask scratch(mesh.lattice().size(), 0), out(mesh.lattice().size(), 0);
    AbstractExtension ext{j, n, BoxRegion(mesh.dim())};
    if (paint_slice(mesh, table, bucket, j, n, scratch, out))
        ext.region = mask_to_region(mesh, out);
    return ext;
}

AbstractExtension atj_slice(const TMesh& mesh, int j, int n)
{
    return atj_slice(mesh, AnchorTable(mesh), j, n);
}

std::vector<PieceMask> atj_masks(const TMesh& mesh, const AnchorTable& table)
{
    std::vector<PieceMask> masks;
    PieceMask scratch(mesh.lattice().size(), 0);
    for (int j = 0; j < mesh.dim(); ++j) {
        PieceMask m(mesh.lattice().size(), 0);
        auto buckets = buckets_for(mesh, table, j);
        for (int n = 0; n <= mesh.extent(j); ++n)
            paint_slice(mesh, table, buckets[n], j, n, scratch, m);
        masks.push_back(std::move(m));
    }
    return masks;
}

BoxRegion atj_region(const TMesh& mesh, const AnchorTable& table, int i)
{
    return mask_to_region(mesh, atj_masks(mesh, table)[i]);
}

AasResult is_aas(const TMesh& mesh, const AnchorTable& table)
{
    auto masks = atj_masks(mesh, table);
    const auto& lat = mesh.lattice();
    const int d = mesh.dim();
    AasResult res;
    for (int i = 0; i < d; ++i)
        for (int j = i + 1; j < d; ++j) {
            std::map<std::tuple<int, int>, std::vector<std::size_t>> groups;
            for (std::size_t off = 0; off < lat.size(); ++off)
                if (masks[i][off] && masks[j][off]) {
                    auto u = lat.coords(off);
                    groups[{u[i] / 2, u[j] / 2}].push_back(off);
                }
            for (auto& [key, pieces] : groups) {
                res.aas = false;
                res.witnesses.push_back(
                    {i, std::get<0>(key), j, std::get<1>(key), pieces_to_region(mesh, pieces)});
            }
        }
    return res;
}

AasResult is_aas(const TMesh& mesh)
{
    return is_aas(mesh, AnchorTable(mesh));
}

namespace {

long position(const KnotVector& v, int x)
{
    auto it = std::lower_bound(v.begin(), v.end(), x);
    if (it == v.end() || *it != x)
        return -1;
    return it - v.begin();
}

// Windows reaching past index 0 or N_k are cut at the domain boundary; this
// happens for T-junctions inside a frame region of a third direction.
KnotVector window(const KnotVector& g, long start, long len)
{
    long stop = std::min<long>(start + len, static_cast<long>(g.size()));
    start = std::max<long>(start, 0);
    return KnotVector(g.begin() + start, g.begin() + stop);
}

} // namespace

GeometricExtension gtj(const TMesh& mesh, const TJunction& t)
{
    const int d = mesh.dim();
    GeometricExtension g;
    g.tjunction = t;
    std::vector<Interval1> box(d);
    for (int k = 0; k < d; ++k) {
        int p = mesh.degree(k);
        KnotVector v;
        if (k == t.odir) {
            v = {t.entity[k].lo};
        } else {
            auto K = global_knot_vector(mesh, t.entity, k);
            if (k == t.pdir) {
                if (p % 2 == 0) {
                    long pos = position(K, t.entity[k].lo);
                    if (pos < 0)
                        throw Error(ErrorKind::InsufficientKnots, "T_j is not a global knot");
                    v = window(K, pos - p / 2, p + 1);
                } else {
                    long a = position(K, t.ascell[k].lo), b = position(K, t.ascell[k].hi);
                    if (a < 0 || b != a + 1)
                        throw Error(ErrorKind::NonAdjacentCellBounds, "ascell of " + t.entity.str());
                    v = window(K, a - p / 2, p + 1);
                }
            } else {
                int c = p % 2;
                long a = position(K, t.entity[k].lo), b = position(K, t.entity[k].hi);
                if (a < 0 || b != a + 1)
                    throw Error(ErrorKind::NonAdjacentCellBounds, "component " + std::to_string(k + 1) + " of " +
                                                                      t.entity.str());
                v = window(K, a - (p + 1) / 2, p + 2 + c);
            }
        }
        box[k] = {Rat(v.front()), Rat(v.back())};
        g.vectors.push_back(std::move(v));
    }
    g.region = Box(std::move(box));
    return g;
}

std::vector<GeometricExtension> all_gtj(const TMesh& mesh)
{
    std::vector<GeometricExtension> out;
    for (const auto& t : find_tjunctions(mesh))
        out.push_back(gtj(mesh, t));
    return out;
}

BoxRegion gtj_region(const TMesh& mesh, const std::vector<GeometricExtension>& g, int i)
{
    BoxRegion r(mesh.dim());
    for (const auto& e : g)
        if (e.tjunction.odir == i)
            r.add(e.region);
    return r;
}

namespace {

GasResult pairwise(const std::vector<GeometricExtension>& g, bool weak)
{
    GasResult res;
    Box tmp;
    for (std::size_t a = 0; a < g.size(); ++a)
        for (std::size_t b = a + 1; b < g.size(); ++b) {
            const auto &ta = g[a].tjunction, &tb = g[b].tjunction;
            if (ta.odir == tb.odir || (weak && ta.pdir == tb.pdir))
                continue;
            if (g[a].region.intersect(g[b].region, tmp)) {
                res.ok = false;
                res.witnesses.push_back({ta, tb, tmp});
            }
        }
    return res;
}

} // namespace

GasResult is_sgas(const TMesh&, const std::vector<GeometricExtension>& g)
{
    return pairwise(g, false);
}

GasResult is_wgas(const TMesh&, const std::vector<GeometricExtension>& g)
{
    return pairwise(g, true);
}

GasResult is_sgas(const TMesh& mesh)
{
    return is_sgas(mesh, all_gtj(mesh));
}

GasResult is_wgas(const TMesh& mesh)
{
    return is_wgas(mesh, all_gtj(mesh));
}

} // namespace tmesh
