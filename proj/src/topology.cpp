#include "tmesh/topology.hpp"
#include "tmesh/errors.hpp"

#include <algorithm>
#include <set>

namespace tmesh {

namespace {

bool on_boundary(const TMesh& mesh, const Entity& e)
{
    for (int k = 0; k < mesh.dim(); ++k)
        if (e[k].is_singleton() && (e[k].lo == 0 || e[k].lo == mesh.extent(k)))
            return true;
    return false;
}

// representative piece of an entity, shifted by s along direction a
std::size_t neighbour_piece(const TMesh& mesh, const Entity& e, int a, int s)
{
    int u[kMaxDim];
    for (int k = 0; k < mesh.dim(); ++k)
        u[k] = e[k].dlo();
    u[a] += s;
    return mesh.lattice().offset(u);
}

std::pair<int, int> singleton_pair(const Entity& e)
{
    int first = -1, second = -1;
    for (int k = 0; k < e.size(); ++k)
        if (e[k].is_singleton()) {
            if (first < 0)
                first = k;
            else
                second = k;
        }
    return {first, second};
}

} // namespace

int valence(const TMesh& mesh, const Entity& t)
{
    auto [i, j] = singleton_pair(t);
    int v = 0;
    for (int a : {i, j})
        for (int s : {-1, 1}) {
            const auto& nb = mesh.entities()[mesh.entity_at(neighbour_piece(mesh, t, a, s))];
            v += nb.entity_dim() == mesh.dim() - 1;
        }
    return v;
}

std::vector<TJunction> find_tjunctions(const TMesh& mesh)
{
    const int d = mesh.dim();
    std::vector<TJunction> out;
    if (d < 2)
        return out;
    const auto& ents = mesh.entities();
    for (const auto& t : ents) {
        if (t.entity_dim() != d - 2 || on_boundary(mesh, t))
            continue;
        auto [i, j] = singleton_pair(t);
        int v = 0;
        int miss_a = -1, miss_s = 0;
        for (int a : {i, j})
            for (int s : {-1, 1}) {
                const auto& nb = ents[mesh.entity_at(neighbour_piece(mesh, t, a, s))];
                if (nb.entity_dim() == d - 1)
                    ++v;
                else {
                    miss_a = a;
                    miss_s = s;
                }
            }
        if (v == 4)
            continue;
        if (v < 3)
            throw Error(ErrorKind::ComplexIntegrity,
                        "entity " + t.str() + " has valence " + std::to_string(v));
        // the missing face would be orthogonal to the other singleton direction
        // and extend along miss_a
        TJunction tj;
        tj.entity = t;
        tj.pdir = miss_a;
        tj.odir = miss_a == i ? j : i;
        tj.valence = v;
        tj.ascell = ents[mesh.entity_at(neighbour_piece(mesh, t, miss_a, miss_s))];
        const auto& q = tj.ascell;
        int to = t[tj.odir].lo, tp = t[tj.pdir].lo;
        if (q.entity_dim() != d || !(q[tj.odir].lo < to && to < q[tj.odir].hi) ||
            !(tp == q[tj.pdir].lo || tp == q[tj.pdir].hi))
            throw Error(ErrorKind::ClassificationAmbiguous, "cannot classify " + t.str());
        out.push_back(tj);
    }
    return out;
}

std::vector<TJunction> tjunctions_by_odir(const TMesh& mesh, int i)
{
    std::vector<TJunction> out;
    for (auto& t : find_tjunctions(mesh))
        if (t.odir == i)
            out.push_back(t);
    return out;
}

Rat segment_box_entry(const Box& b, const std::vector<Rat>& x, const std::vector<Rat>& y)
{
    Rat lo(0), hi(1);
    for (int k = 0; k < b.dim(); ++k) {
        Rat dx = y[k] - x[k];
        if (dx == 0) {
            if (x[k] < b[k].lo || x[k] > b[k].hi)
                return Rat(-1);
            continue;
        }
        Rat t0 = (b[k].lo - x[k]) / dx, t1 = (b[k].hi - x[k]) / dx;
        if (t1 < t0)
            std::swap(t0, t1);
        lo = std::max(lo, t0);
        hi = std::min(hi, t1);
        if (lo > hi)
            return Rat(-1);
    }
    return lo;
}

bool separates(const TJunction& t, const std::vector<Rat>& x, const std::vector<Rat>& y, int i)
{
    if (t.odir != i)
        return false;
    if (segment_box_entry(t.entity.closure(), x, y) < 0)
        return false;
    int j = t.pdir;
    if (x[j] == y[j])
        return false;
    Rat a = std::min(x[j], y[j]), b = std::max(x[j], y[j]);
    return b > t.ascell[j].lo && a < t.ascell[j].hi;
}

SeparatingResult find_separating_tjunction(const TMesh& mesh, const std::vector<Rat>& x,
                                           const std::vector<Rat>& y, int i)
{
    const int d = mesh.dim();
    if (static_cast<int>(x.size()) != d || static_cast<int>(y.size()) != d)
        throw Error(ErrorKind::DimensionMismatch, "point dimension");
    if (i < 0 || i >= d || x == y || x[i] != y[i] || !mesh.in_skeleton(i, x) || mesh.in_skeleton(i, y))
        throw Error(ErrorKind::PreconditionViolated, "need x_i = y_i, x in Sk_i, y not in Sk_i");

    // parameters where the segment crosses an integer hyperplane
    std::set<Rat> events{Rat(0), Rat(1)};
    for (int k = 0; k < d; ++k) {
        if (x[k] == y[k])
            continue;
        Rat a = std::min(x[k], y[k]), b = std::max(x[k], y[k]);
        auto n = boost::rational_cast<std::int64_t>(a);
        if (Rat(n) < a)
            ++n;
        for (; Rat(n) <= b; ++n)
            events.insert((Rat(n) - x[k]) / (y[k] - x[k]));
    }
    auto at = [&](const Rat& t) {
        std::vector<Rat> z(d);
        for (int k = 0; k < d; ++k)
            z[k] = x[k] + t * (y[k] - x[k]);
        return z;
    };

    auto tjs = tjunctions_by_odir(mesh, i);
    std::vector<Rat> ev(events.begin(), events.end());
    for (std::size_t e = 0; e + 1 < ev.size(); ++e) {
        // the skeleton is closed, so leaving it happens right after an event
        if (!mesh.in_skeleton(i, at(ev[e])) || mesh.in_skeleton(i, at((ev[e] + ev[e + 1]) / 2)))
            continue;
        auto z = at(ev[e]);
        for (const auto& t : tjs)
            if (t.entity.closure().contains(z) && separates(t, x, y, i))
                return {t, ev[e], z};
    }
    // contact away from the exit points: nearest admissible T-junction along the segment
    const TJunction* best = nullptr;
    Rat best_t(2);
    for (const auto& t : tjs) {
        if (!separates(t, x, y, i))
            continue;
        Rat s = segment_box_entry(t.entity.closure(), x, y);
        if (s < best_t) {
            best_t = s;
            best = &t;
        }
    }
    if (!best)
        throw Error(ErrorKind::NotFound, "no separating T-junction");
    return {*best, best_t, at(best_t)};
}

Box MBox::closure() const
{
    std::vector<Interval1> b;
    for (auto& k : c)
        b.push_back({Rat(k.lo), Rat(k.hi)});
    return Box(std::move(b));
}

std::string MBox::str() const
{
    std::string s;
    for (std::size_t k = 0; k < c.size(); ++k) {
        if (k)
            s += "x";
        if (c[k].lo == c[k].hi)
            s += "{" + std::to_string(c[k].lo) + "}";
        else if (c[k].open)
            s += "(" + std::to_string(c[k].lo) + "," + std::to_string(c[k].hi) + ")";
        else
            s += "[" + std::to_string(c[k].lo) + "," + std::to_string(c[k].hi) + "]";
    }
    return s;
}

MBox mbox(const Entity& e, const Entity& f)
{
    if (e.size() != f.size())
        throw Error(ErrorKind::DimensionMismatch, "mbox");
    MBox r;
    for (int l = 0; l < e.size(); ++l) {
        const auto &a = e[l], &b = f[l];
        MBox::Comp c;
        if (!a.is_singleton() && !b.is_singleton() && std::max(a.lo, b.lo) < std::min(a.hi, b.hi)) {
            c = {std::max(a.lo, b.lo), std::min(a.hi, b.hi), true};
        } else if (a.is_singleton() && b.is_singleton() && a.lo == b.lo) {
            c = {a.lo, a.lo, false};
        } else if (a.is_singleton() && !b.is_singleton() && b.lo < a.lo && a.lo < b.hi) {
            c = {a.lo, a.lo, false};
        } else if (b.is_singleton() && !a.is_singleton() && a.lo < b.lo && b.lo < a.hi) {
            c = {b.lo, b.lo, false};
        } else if (a.hi <= b.lo) {
            c = {a.hi, b.lo, false};
        } else {
            c = {b.hi, a.lo, false};
        }
        r.c.push_back(c);
    }
    return r;
}

AdmissibilityReport is_admissible(const TMesh& mesh)
{
    AdmissibilityReport rep;
    const int d = mesh.dim();
    for (int k = 0; k < d; ++k) {
        int f = mesh.frame_width(k), n = mesh.extent(k);
        std::vector<int> slices;
        for (int s = 0; s <= f; ++s)
            slices.push_back(s);
        for (int s = n - f; s <= n; ++s)
            if (s > f)
                slices.push_back(s);
        for (int s : slices) {
            int lo[kMaxDim], hi[kMaxDim];
            for (int l = 0; l < d; ++l) {
                lo[l] = 0;
                hi[l] = 2 * mesh.extent(l);
            }
            lo[k] = hi[k] = 2 * s;
            if (!mesh.skeleton_covers(k, lo, hi)) {
                rep.admissible = false;
                rep.violations.push_back("S_" + std::to_string(k + 1) + "(" + std::to_string(s) + ") not in Sk_" +
                                         std::to_string(k + 1));
            }
        }
    }
    for (const auto& t : find_tjunctions(mesh))
        for (int k : {t.odir, t.pdir}) {
            int v = t.entity[k].lo, f = mesh.frame_width(k), n = mesh.extent(k);
            if (v <= f || v >= n - f) {
                rep.admissible = false;
                rep.violations.push_back("T-junction " + t.entity.str() + " lies in frame region " +
                                         std::to_string(k + 1));
            }
        }
    return rep;
}

} // namespace tmesh
