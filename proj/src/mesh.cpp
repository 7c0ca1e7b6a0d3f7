#include "tmesh/mesh.hpp"
#include "tmesh/errors.hpp"

#include <algorithm>
#include <boost/rational.hpp>

namespace tmesh {

Lattice::Lattice(const std::vector<int>& extents)
{
    int d = static_cast<int>(extents.size());
    ext_.resize(d);
    stride_.resize(d);
    size_ = 1;
    for (int k = d - 1; k >= 0; --k) {
        ext_[k] = 2 * extents[k] + 1;
        stride_[k] = size_;
        size_ *= static_cast<std::size_t>(ext_[k]);
    }
}

std::vector<int> Lattice::coords(std::size_t off) const
{
    std::vector<int> u(dim());
    for (int k = 0; k < dim(); ++k) {
        u[k] = static_cast<int>(off / stride_[k]);
        off %= stride_[k];
    }
    return u;
}

int doubled_coord(const Rat& x)
{
    auto fl = boost::rational_cast<std::int64_t>(x); // truncates toward zero
    if (Rat(fl) > x)
        --fl;
    if (Rat(fl) == x)
        return static_cast<int>(2 * fl);
    return static_cast<int>(2 * fl + 1);
}

std::vector<Entity> TMesh::entities_of_dim(int j) const
{
    std::vector<Entity> out;
    for (auto& e : entities())
        if (e.entity_dim() == j)
            out.push_back(e);
    return out;
}

std::size_t TMesh::count(int j) const
{
    std::size_t n = 0;
    for (auto& e : entities())
        n += e.entity_dim() == j;
    return n;
}

TMesh TMesh::from_entities(IndexDomain dom, std::vector<std::vector<int>> breakpoints,
                           std::vector<Entity> ents, std::vector<Refinement> log)
{
    auto data = std::make_shared<Data>();
    data->domain = std::move(dom);
    data->breakpoints = std::move(breakpoints);
    std::sort(ents.begin(), ents.end());
    data->entities = std::move(ents);
    data->log = std::move(log);
    data->lattice = Lattice(data->domain.extents);

    const int d = data->domain.dim;
    auto& lat = data->lattice;
    data->label.assign(lat.size(), -1);
    data->skel.assign(lat.size(), 0);
    int lo[kMaxDim], hi[kMaxDim];
    for (std::size_t id = 0; id < data->entities.size(); ++id) {
        const auto& e = data->entities[id];
        for (int k = 0; k < d; ++k) {
            if (e[k].lo < 0 || e[k].hi > data->domain.extents[k])
                throw Error(ErrorKind::ComplexIntegrity, "entity " + e.str() + " leaves the domain");
            lo[k] = e[k].dlo();
            hi[k] = e[k].dhi();
        }
        bool clash = false;
        lat.for_box(lo, hi, [&](std::size_t off) {
            if (data->label[off] != -1) {
                clash = true;
                return false;
            }
            data->label[off] = static_cast<std::int32_t>(id);
            return true;
        });
        if (clash)
            throw Error(ErrorKind::ComplexIntegrity, "entity " + e.str() + " overlaps another entity");
    }
    for (auto v : data->label)
        if (v < 0)
            throw Error(ErrorKind::ComplexIntegrity, "entities do not cover the closed domain");

    for (const auto& e : data->entities) {
        if (e.entity_dim() != d - 1)
            continue;
        unsigned m = e.singleton_mask();
        for (int k = 0; k < d; ++k) {
            lo[k] = 2 * e[k].lo;
            hi[k] = 2 * e[k].hi;
        }
        lat.for_box(lo, hi, [&](std::size_t off) {
            data->skel[off] |= static_cast<std::uint8_t>(m);
            return true;
        });
    }

    TMesh mesh;
    mesh.data_ = std::move(data);
    return mesh;
}

const Entity& TMesh::locate(const std::vector<Rat>& x) const
{
    if (static_cast<int>(x.size()) != dim())
        throw Error(ErrorKind::DimensionMismatch, "point dimension");
    int u[kMaxDim];
    for (int k = 0; k < dim(); ++k) {
        if (x[k] < 0 || x[k] > extent(k))
            throw Error(ErrorKind::PreconditionViolated, "point outside the closed index domain");
        u[k] = doubled_coord(x[k]);
    }
    return entities()[entity_at(lattice().offset(u))];
}

bool TMesh::in_skeleton(int j, const std::vector<Rat>& x) const
{
    int u[kMaxDim];
    for (int k = 0; k < dim(); ++k) {
        if (x[k] < 0 || x[k] > extent(k))
            return false;
        u[k] = doubled_coord(x[k]);
    }
    return (skeleton_bits(lattice().offset(u)) >> j) & 1u;
}

bool TMesh::skeleton_covers(int j, const int* lo, const int* hi) const
{
    bool all = true;
    unsigned bit = 1u << j;
    lattice().for_box(lo, hi, [&](std::size_t off) {
        if (!(data_->skel[off] & bit)) {
            all = false;
            return false;
        }
        return true;
    });
    return all;
}

bool TMesh::skeleton_misses(int j, const int* lo, const int* hi) const
{
    bool none = true;
    unsigned bit = 1u << j;
    lattice().for_box(lo, hi, [&](std::size_t off) {
        if (data_->skel[off] & bit) {
            none = false;
            return false;
        }
        return true;
    });
    return none;
}

bool TMesh::in_active_region(const Entity& e) const
{
    for (int k = 0; k < dim(); ++k)
        if (e[k].lo < frame_width(k) || e[k].hi > extent(k) - frame_width(k))
            return false;
    return true;
}

TMesh create_tensor_mesh(const IndexDomain& dom, const std::vector<std::vector<int>>& breakpoints)
{
    dom.validate();
    const int d = dom.dim;
    if (static_cast<int>(breakpoints.size()) != d)
        throw Error(ErrorKind::InvalidBreakpoints, "one breakpoint list per direction required");
    // per direction: all singletons and open intervals of the breakpoint list
    std::vector<std::vector<Component>> comps(d);
    for (int k = 0; k < d; ++k) {
        const auto& b = breakpoints[k];
        if (b.size() < 2)
            throw Error(ErrorKind::InvalidBreakpoints, "fewer than 2 breakpoints in direction " + std::to_string(k + 1));
        if (b.front() != 0 || b.back() != dom.extents[k])
            throw Error(ErrorKind::InvalidBreakpoints, "breakpoints must start at 0 and end at N_k");
        for (std::size_t i = 0; i < b.size(); ++i) {
            if (b[i] < 0 || b[i] > dom.extents[k])
                throw Error(ErrorKind::InvalidBreakpoints, "breakpoint outside the domain");
            if (i && b[i] <= b[i - 1])
                throw Error(ErrorKind::InvalidBreakpoints, "breakpoints must increase strictly");
            comps[k].push_back(Component::singleton(b[i]));
            if (i + 1 < b.size())
                comps[k].push_back(Component::interval(b[i], b[i + 1]));
        }
    }
    std::vector<Entity> ents;
    std::vector<std::size_t> idx(d, 0);
    while (true) {
        Entity e;
        e.d = static_cast<std::uint8_t>(d);
        for (int k = 0; k < d; ++k)
            e[k] = comps[k][idx[k]];
        ents.push_back(e);
        int k = d - 1;
        while (k >= 0 && idx[k] + 1 == comps[k].size()) {
            idx[k] = 0;
            --k;
        }
        if (k < 0)
            break;
        ++idx[k];
    }
    return TMesh::from_entities(dom, breakpoints, std::move(ents), {});
}

std::vector<std::vector<int>> frame_breakpoints(const std::vector<int>& degrees, const std::vector<int>& cells,
                                                const std::vector<int>& width, std::vector<int>& extents)
{
    std::size_t d = degrees.size();
    std::vector<std::vector<int>> bp(d);
    extents.assign(d, 0);
    for (std::size_t k = 0; k < d; ++k) {
        int f = (degrees[k] + 1) / 2;
        for (int i = 0; i <= f; ++i)
            bp[k].push_back(i);
        int x = f;
        for (int c = 0; c < cells[k]; ++c) {
            x += width[k];
            bp[k].push_back(x);
        }
        for (int i = 1; i <= f; ++i)
            bp[k].push_back(x + i);
        extents[k] = x + f;
    }
    return bp;
}

std::vector<std::vector<int>> scale_breakpoints(const std::vector<int>& degrees,
                                                const std::vector<std::vector<int>>& breakpoints, int levels,
                                                std::vector<int>& extents)
{
    std::vector<std::vector<int>> out(breakpoints.size());
    extents.assign(breakpoints.size(), 0);
    const int s = 1 << levels;
    for (std::size_t k = 0; k < breakpoints.size(); ++k) {
        int f = (degrees[k] + 1) / 2;
        int n = breakpoints[k].back();
        for (int x : breakpoints[k]) {
            if (x <= f)
                out[k].push_back(x);
            else if (x < n - f)
                out[k].push_back(f + s * (x - f));
            else
                out[k].push_back(f + s * (n - 2 * f) + (x - (n - f)));
        }
        extents[k] = out[k].back();
    }
    return out;
}

TMesh subdiv(const TMesh& mesh, const Entity& cell, int j)
{
    const int d = mesh.dim();
    if (j < 0 || j >= d)
        throw Error(ErrorKind::PreconditionViolated, "direction out of range");
    if (cell.size() != d || cell.entity_dim() != d ||
        !std::binary_search(mesh.entities().begin(), mesh.entities().end(), cell))
        throw Error(ErrorKind::NotACell, cell.str() + " is not a cell of the mesh");
    if (!mesh.in_active_region(cell))
        throw Error(ErrorKind::CellOutsideActiveRegion, cell.str());
    const Component qj = cell[j];
    if ((qj.lo + qj.hi) % 2 != 0)
        throw Error(ErrorKind::NonIntegerMidpoint, cell.str() + " in direction " + std::to_string(j + 1));
    const int m = (qj.lo + qj.hi) / 2;

    int dlo[kMaxDim], dhi[kMaxDim];
    for (int l = 0; l < d; ++l) {
        dlo[l] = cell[l].lo;
        dhi[l] = cell[l].hi;
        if (l == j)
            continue;
        if (dlo[l] == mesh.frame_width(l))
            dlo[l] = 0;
        if (dhi[l] == mesh.extent(l) - mesh.frame_width(l))
            dhi[l] = mesh.extent(l);
    }

    std::vector<Entity> ents;
    ents.reserve(mesh.entities().size() + 64);
    for (const auto& e : mesh.entities()) {
        bool inside = e[j] == qj;
        for (int l = 0; l < d && inside; ++l)
            inside = e[l].lo >= dlo[l] && e[l].hi <= dhi[l];
        if (!inside) {
            ents.push_back(e);
            continue;
        }
        Entity a = e, b = e, c = e;
        a[j] = Component::interval(qj.lo, m);
        b[j] = Component::singleton(m);
        c[j] = Component::interval(m, qj.hi);
        ents.push_back(a);
        ents.push_back(b);
        ents.push_back(c);
    }
    auto log = mesh.refinement_log();
    log.push_back({cell, j});
    return TMesh::from_entities(mesh.domain(), mesh.initial_breakpoints(), std::move(ents), std::move(log));
}

TMesh subdiv_at(const TMesh& mesh, const std::vector<Rat>& point, int j)
{
    const Entity& e = mesh.locate(point);
    if (e.entity_dim() != mesh.dim())
        throw Error(ErrorKind::NotACell, "point lies on a lower-dimensional entity " + e.str());
    return subdiv(mesh, e, j);
}

TMesh replay(const TMesh& initial, const std::vector<Refinement>& log)
{
    TMesh m = initial;
    for (const auto& r : log)
        m = subdiv(m, r.cell, r.dir);
    return m;
}

BoxRegion active_region(const TMesh& mesh)
{
    std::vector<Interval1> c(mesh.dim());
    for (int k = 0; k < mesh.dim(); ++k)
        c[k] = {Rat(mesh.frame_width(k)), Rat(mesh.extent(k) - mesh.frame_width(k))};
    BoxRegion r(mesh.dim());
    r.add(Box(std::move(c)));
    return r;
}

namespace {

std::vector<Interval1> full_box(const TMesh& mesh)
{
    std::vector<Interval1> c(mesh.dim());
    for (int k = 0; k < mesh.dim(); ++k)
        c[k] = {Rat(0), Rat(mesh.extent(k))};
    return c;
}

} // namespace

BoxRegion frame_region_k(const TMesh& mesh, int k)
{
    BoxRegion r(mesh.dim());
    auto lo = full_box(mesh), hi = full_box(mesh);
    int f = mesh.frame_width(k), n = mesh.extent(k);
    lo[k] = {Rat(0), Rat(f)};
    hi[k] = {Rat(n - f), Rat(n)};
    r.add(Box(lo));
    r.add(Box(hi));
    return r;
}

BoxRegion frame_region(const TMesh& mesh)
{
    BoxRegion r(mesh.dim());
    for (int k = 0; k < mesh.dim(); ++k)
        if (mesh.frame_width(k) > 0)
            r.add(frame_region_k(mesh, k));
    return r;
}

BoxRegion slice_region(const TMesh& mesh, int k, int n)
{
    auto c = full_box(mesh);
    c[k] = {Rat(n), Rat(n)};
    BoxRegion r(mesh.dim());
    r.add(Box(std::move(c)));
    return r;
}

BoxRegion skeleton(const TMesh& mesh, int j)
{
    BoxRegion r(mesh.dim());
    for (const auto& e : orth_entities(mesh, 1u << j))
        r.add(e.closure());
    return r;
}

std::vector<Entity> orth_entities(const TMesh& mesh, unsigned kappa)
{
    std::vector<Entity> out;
    for (const auto& e : mesh.entities())
        if (e.singleton_mask() == kappa)
            out.push_back(e);
    return out;
}

bool check_three_direction_assumption(const TMesh& mesh)
{
    const int d = mesh.dim();
    if (d < 3)
        throw Error(ErrorKind::DimensionTooSmall, "the three-direction assumption needs d >= 3");
    const auto& lat = mesh.lattice();
    const auto& ents = mesh.entities();
    for (const auto& q : ents) {
        if (q.entity_dim() != d || !mesh.in_active_region(q))
            continue;
        int dirs = 0;
        for (int k = 0; k < d; ++k) {
            bool found = false;
            for (int side : {-1, 1}) {
                int face = side < 0 ? q[k].lo : q[k].hi;
                if (face == 0 || face == mesh.extent(k))
                    continue;
                int lo[kMaxDim], hi[kMaxDim];
                for (int l = 0; l < d; ++l) {
                    lo[l] = q[l].dlo();
                    hi[l] = q[l].dhi();
                }
                lo[k] = hi[k] = 2 * face + side;
                lat.for_box(lo, hi, [&](std::size_t off) {
                    const auto& nb = ents[mesh.entity_at(off)];
                    if (nb.entity_dim() == d && mesh.in_active_region(nb)) {
                        found = true;
                        return false;
                    }
                    return true;
                });
                if (found)
                    break;
            }
            dirs += found;
        }
        if (dirs < 3)
            return false;
    }
    return true;
}

} // namespace tmesh
