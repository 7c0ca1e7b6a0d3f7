#include "tmesh/region.hpp"
#include "tmesh/errors.hpp"

#include <algorithm>
#include <numeric>
#include <sstream>

namespace tmesh {

std::string to_string(const Rat& q)
{
    if (q.denominator() == 1)
        return std::to_string(q.numerator());
    return std::to_string(q.numerator()) + "/" + std::to_string(q.denominator());
}

Rat parse_rational(const std::string& s)
{
    try {
        auto slash = s.find('/');
        if (slash == std::string::npos) {
            std::size_t used = 0;
            long long v = std::stoll(s, &used);
            if (used != s.size())
                throw Error(ErrorKind::MalformedInput, "bad rational '" + s + "'");
            return Rat(v);
        }
        std::size_t u1 = 0, u2 = 0;
        std::string ns = s.substr(0, slash), ds = s.substr(slash + 1);
        long long n = std::stoll(ns, &u1);
        long long d = std::stoll(ds, &u2);
        if (u1 != ns.size() || u2 != ds.size() || d == 0)
            throw Error(ErrorKind::MalformedInput, "bad rational '" + s + "'");
        return Rat(n, d);
    } catch (const std::logic_error&) {
        throw Error(ErrorKind::MalformedInput, "bad rational '" + s + "'");
    }
}

Box::Box(std::vector<Interval1> comps) : c_(std::move(comps))
{
    for (auto& c : c_)
        if (c.hi < c.lo)
            throw Error(ErrorKind::PreconditionViolated, "box with reversed bounds");
}

Box Box::point(const std::vector<Rat>& x)
{
    std::vector<Interval1> c;
    c.reserve(x.size());
    for (auto& v : x)
        c.push_back({v, v});
    return Box(std::move(c));
}

bool Box::contains(const std::vector<Rat>& x) const
{
    if (static_cast<int>(x.size()) != dim())
        throw Error(ErrorKind::DimensionMismatch, "point/box dimension");
    for (int k = 0; k < dim(); ++k)
        if (x[k] < c_[k].lo || c_[k].hi < x[k])
            return false;
    return true;
}

bool Box::contains(const Box& o) const
{
    if (o.dim() != dim())
        throw Error(ErrorKind::DimensionMismatch, "box dimension");
    for (int k = 0; k < dim(); ++k)
        if (o.c_[k].lo < c_[k].lo || c_[k].hi < o.c_[k].hi)
            return false;
    return true;
}

bool Box::intersects(const Box& o) const
{
    if (o.dim() != dim())
        throw Error(ErrorKind::DimensionMismatch, "box dimension");
    for (int k = 0; k < dim(); ++k)
        if (std::max(c_[k].lo, o.c_[k].lo) > std::min(c_[k].hi, o.c_[k].hi))
            return false;
    return true;
}

bool Box::intersect(const Box& o, Box& out) const
{
    if (!intersects(o))
        return false;
    std::vector<Interval1> c(dim());
    for (int k = 0; k < dim(); ++k)
        c[k] = {std::max(c_[k].lo, o.c_[k].lo), std::min(c_[k].hi, o.c_[k].hi)};
    out = Box(std::move(c));
    return true;
}

bool Box::operator<(const Box& o) const
{
    for (int k = 0; k < std::min(dim(), o.dim()); ++k) {
        if (c_[k].lo != o.c_[k].lo)
            return c_[k].lo < o.c_[k].lo;
        if (c_[k].hi != o.c_[k].hi)
            return c_[k].hi < o.c_[k].hi;
    }
    return dim() < o.dim();
}

std::string Box::str() const
{
    std::ostringstream os;
    for (int k = 0; k < dim(); ++k) {
        if (k)
            os << " x ";
        if (c_[k].is_point())
            os << "{" << to_string(c_[k].lo) << "}";
        else
            os << "[" << to_string(c_[k].lo) << "," << to_string(c_[k].hi) << "]";
    }
    return os.str();
}

BoxRegion::BoxRegion(int dim, std::vector<Box> boxes) : dim_(dim)
{
    for (auto& b : boxes)
        add(b);
}

void BoxRegion::add(const Box& b)
{
    if (b.dim() != dim_)
        throw Error(ErrorKind::DimensionMismatch, "box dimension " + std::to_string(b.dim()) +
                                                      " vs region " + std::to_string(dim_));
    boxes_.push_back(b);
}

void BoxRegion::add(const BoxRegion& r)
{
    if (r.dim() != dim_)
        throw Error(ErrorKind::DimensionMismatch, "region dimension");
    for (auto& b : r.boxes_)
        boxes_.push_back(b);
}

bool BoxRegion::contains_point(const std::vector<Rat>& x) const
{
    if (static_cast<int>(x.size()) != dim_)
        throw Error(ErrorKind::DimensionMismatch, "point dimension");
    for (auto& b : boxes_)
        if (b.contains(x))
            return true;
    return false;
}

std::string BoxRegion::str() const
{
    if (boxes_.empty())
        return "{}";
    std::string s;
    for (std::size_t i = 0; i < boxes_.size(); ++i) {
        if (i)
            s += " u ";
        s += boxes_[i].str();
    }
    return s;
}

namespace {

// Compressed grid over the box endpoints. Per direction, cell 2t is the point
// coords[t] and cell 2t+1 the open interval (coords[t], coords[t+1]).
struct CellGrid {
    int d = 0;
    std::vector<std::vector<Rat>> coords;
    std::vector<int> ext;
    std::vector<std::size_t> stride;
    std::vector<std::uint8_t> flag;

    explicit CellGrid(int dim) : d(dim), coords(dim) {}

    void collect(const std::vector<Box>& boxes)
    {
        for (auto& b : boxes)
            for (int k = 0; k < d; ++k) {
                coords[k].push_back(b[k].lo);
                coords[k].push_back(b[k].hi);
            }
    }

    void finish()
    {
        ext.assign(d, 0);
        stride.assign(d, 1);
        std::size_t total = 1;
        for (int k = d - 1; k >= 0; --k) {
            auto& c = coords[k];
            std::sort(c.begin(), c.end());
            c.erase(std::unique(c.begin(), c.end()), c.end());
            ext[k] = c.empty() ? 0 : static_cast<int>(2 * c.size() - 1);
            stride[k] = total;
            total *= static_cast<std::size_t>(ext[k]);
        }
        flag.assign(total, 0);
    }

    int index_of(int k, const Rat& v) const
    {
        auto it = std::lower_bound(coords[k].begin(), coords[k].end(), v);
        return static_cast<int>(it - coords[k].begin());
    }

    template <class F>
    void for_box(const Box& b, F&& f)
    {
        std::vector<int> lo(d), hi(d), cur(d);
        for (int k = 0; k < d; ++k) {
            lo[k] = 2 * index_of(k, b[k].lo);
            hi[k] = 2 * index_of(k, b[k].hi);
        }
        cur = lo;
        while (true) {
            std::size_t off = 0;
            for (int k = 0; k < d; ++k)
                off += stride[k] * cur[k];
            f(off);
            int k = d - 1;
            while (k >= 0 && cur[k] == hi[k]) {
                cur[k] = lo[k];
                --k;
            }
            if (k < 0)
                break;
            ++cur[k];
        }
    }

    void mark(const std::vector<Box>& boxes, std::uint8_t bit)
    {
        for (auto& b : boxes)
            for_box(b, [&](std::size_t off) { flag[off] |= bit; });
    }

    std::vector<int> unravel(std::size_t off) const
    {
        std::vector<int> e(d);
        for (int k = 0; k < d; ++k) {
            e[k] = static_cast<int>(off / stride[k]);
            off %= stride[k];
        }
        return e;
    }
};

Box closure_of_cell(const CellGrid& g, const std::vector<int>& e)
{
    std::vector<Interval1> c(g.d);
    for (int k = 0; k < g.d; ++k) {
        int t = e[k] / 2;
        if (e[k] % 2 == 0)
            c[k] = {g.coords[k][t], g.coords[k][t]};
        else
            c[k] = {g.coords[k][t], g.coords[k][t + 1]};
    }
    return Box(std::move(c));
}

// Drop coordinates across which membership does not change.
void compress(CellGrid& g)
{
    for (int k = 0; k < g.d; ++k) {
        int m = static_cast<int>(g.coords[k].size());
        if (m <= 2)
            continue;
        std::vector<bool> keep(m, true);
        std::size_t slab = g.stride[k];
        std::size_t outer = g.flag.size() / (slab * g.ext[k]);
        for (int t = 1; t < m - 1; ++t) {
            bool same = true;
            for (std::size_t o = 0; o < outer && same; ++o)
                for (std::size_t s = 0; s < slab && same; ++s) {
                    std::size_t base = o * slab * g.ext[k] + s;
                    auto a = g.flag[base + slab * (2 * t - 1)];
                    auto b = g.flag[base + slab * (2 * t)];
                    auto c = g.flag[base + slab * (2 * t + 1)];
                    same = (a == b && b == c);
                }
            keep[t] = !same;
        }
        if (std::all_of(keep.begin(), keep.end(), [](bool v) { return v; }))
            continue;
        // representative old cell for each new cell along k
        std::vector<int> rep;
        std::vector<Rat> nc;
        for (int t = 0; t < m; ++t) {
            if (!keep[t])
                continue;
            if (!nc.empty())
                rep.push_back(2 * (static_cast<int>(std::find(g.coords[k].begin(), g.coords[k].end(), nc.back()) -
                                                    g.coords[k].begin())) +
                              1);
            nc.push_back(g.coords[k][t]);
            rep.push_back(2 * t);
        }
        CellGrid h(g.d);
        h.coords = g.coords;
        h.coords[k] = nc;
        h.finish();
        for (std::size_t off = 0; off < h.flag.size(); ++off) {
            auto e = h.unravel(off);
            std::size_t old = 0;
            for (int l = 0; l < g.d; ++l)
                old += g.stride[l] * (l == k ? rep[e[l]] : e[l]);
            h.flag[off] = g.flag[old];
        }
        g = std::move(h);
    }
}

bool merge_pass(std::vector<Box>& boxes, int k)
{
    bool changed = false;
    std::sort(boxes.begin(), boxes.end());
    for (std::size_t i = 0; i < boxes.size(); ++i) {
        for (std::size_t j = i + 1; j < boxes.size();) {
            bool same = true;
            for (int l = 0; l < boxes[i].dim() && same; ++l)
                if (l != k && !(boxes[i][l] == boxes[j][l]))
                    same = false;
            if (same && boxes[j][k].lo <= boxes[i][k].hi && boxes[i][k].lo <= boxes[j][k].hi) {
                boxes[i][k].lo = std::min(boxes[i][k].lo, boxes[j][k].lo);
                boxes[i][k].hi = std::max(boxes[i][k].hi, boxes[j][k].hi);
                boxes.erase(boxes.begin() + static_cast<std::ptrdiff_t>(j));
                changed = true;
            } else {
                ++j;
            }
        }
    }
    return changed;
}

} // namespace

BoxRegion BoxRegion::normalized() const
{
    if (boxes_.empty())
        return BoxRegion(dim_);
    CellGrid g(dim_);
    g.collect(boxes_);
    g.finish();
    g.mark(boxes_, 1);
    compress(g);

    std::vector<Box> out;
    for (std::size_t off = 0; off < g.flag.size(); ++off) {
        if (!g.flag[off])
            continue;
        auto e = g.unravel(off);
        bool maximal = true;
        for (int k = 0; k < dim_ && maximal; ++k) {
            if (e[k] % 2)
                continue;
            for (int s : {-1, 1}) {
                int v = e[k] + s;
                if (v < 0 || v >= g.ext[k])
                    continue;
                if (g.flag[off + static_cast<std::ptrdiff_t>(s) * static_cast<std::ptrdiff_t>(g.stride[k])]) {
                    maximal = false;
                    break;
                }
            }
        }
        if (maximal)
            out.push_back(closure_of_cell(g, e));
    }
    bool changed = true;
    while (changed) {
        changed = false;
        for (int k = 0; k < dim_; ++k)
            changed = merge_pass(out, k) || changed;
    }
    std::sort(out.begin(), out.end());
    BoxRegion r(dim_);
    r.boxes_ = std::move(out);
    return r;
}

BoxRegion intersect(const BoxRegion& a, const BoxRegion& b)
{
    if (a.dim() != b.dim())
        throw Error(ErrorKind::DimensionMismatch, "intersect");
    BoxRegion r(a.dim());
    Box tmp;
    for (auto& x : a.boxes())
        for (auto& y : b.boxes())
            if (x.intersect(y, tmp))
                r.add(tmp);
    return r;
}

BoxRegion unite(const BoxRegion& a, const BoxRegion& b)
{
    if (a.dim() != b.dim())
        throw Error(ErrorKind::DimensionMismatch, "unite");
    BoxRegion r = a;
    r.add(b);
    return r;
}

bool subset(const BoxRegion& a, const BoxRegion& b)
{
    if (a.dim() != b.dim())
        throw Error(ErrorKind::DimensionMismatch, "subset");
    if (a.is_empty())
        return true;
    if (b.is_empty())
        return false;
    // difference a \ b is empty iff every grid cell of a is also in b
    CellGrid g(a.dim());
    g.collect(a.boxes());
    g.collect(b.boxes());
    g.finish();
    g.mark(b.boxes(), 2);
    bool ok = true;
    for (auto& box : a.boxes()) {
        g.for_box(box, [&](std::size_t off) {
            if (!(g.flag[off] & 2))
                ok = false;
        });
        if (!ok)
            return false;
    }
    return true;
}

bool equals(const BoxRegion& a, const BoxRegion& b)
{
    return subset(a, b) && subset(b, a);
}

} // namespace tmesh
