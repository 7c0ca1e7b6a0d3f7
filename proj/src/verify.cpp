#include "tmesh/verify.hpp"
#include "tmesh/dual_compat.hpp"
#include "tmesh/errors.hpp"
#include "tmesh/splines.hpp"
#include "tmesh/suitability.hpp"
#include "tmesh/topology.hpp"

#include <Eigen/Dense>
#include <boost/math/special_functions/legendre.hpp>

#include <algorithm>
#include <cmath>
#include <random>
#include <set>
#include <sstream>

namespace tmesh::verify {

namespace {

double to_double(const Rat& q) { return boost::rational_cast<double>(q); }

// Gauss-Legendre nodes on [0,1]
std::vector<double> gauss_nodes(int n)
{
    std::vector<double> out;
    for (double z : boost::math::legendre_p_zeros<double>(n)) {
        out.push_back(0.5 * (1.0 + z));
        if (z != 0.0)
            out.push_back(0.5 * (1.0 - z));
    }
    std::sort(out.begin(), out.end());
    return out;
}

// Accumulates the R factor of a tall matrix block by block.
class StreamingQR {
public:
    explicit StreamingQR(std::size_t cols, std::size_t batch) : n_(cols), batch_(batch)
    {
        buf_.resize(static_cast<Eigen::Index>(n_ + batch_), static_cast<Eigen::Index>(n_));
        buf_.setZero();
    }

    void next_row()
    {
        if (fill_ == batch_)
            flush();
        ++rows_;
        ++fill_;
    }
    void set(std::size_t col, double v) { buf_(static_cast<Eigen::Index>(n_ + fill_ - 1), static_cast<Eigen::Index>(col)) += v; }

    Eigen::MatrixXd finish()
    {
        flush();
        return buf_.topRows(static_cast<Eigen::Index>(n_)).triangularView<Eigen::Upper>();
    }
    std::size_t rows() const { return rows_; }

private:
    void flush()
    {
        if (fill_ == 0)
            return;
        auto used = static_cast<Eigen::Index>(n_ + fill_);
        Eigen::HouseholderQR<Eigen::MatrixXd> qr(buf_.topRows(used));
        Eigen::MatrixXd r = qr.matrixQR().topRows(std::min<Eigen::Index>(used, static_cast<Eigen::Index>(n_)))
                                .triangularView<Eigen::Upper>();
        buf_.setZero();
        buf_.topRows(r.rows()) = r;
        fill_ = 0;
    }

    std::size_t n_, batch_;
    std::size_t fill_ = 0, rows_ = 0;
    Eigen::MatrixXd buf_;
};

std::vector<double> singular_values(const Eigen::MatrixXd& r)
{
    Eigen::BDCSVD<Eigen::MatrixXd> svd(r);
    auto s = svd.singularValues();
    return std::vector<double>(s.data(), s.data() + s.size());
}

bool holds(const TMesh& m, Filter f)
{
    switch (f) {
    case Filter::None:
        return true;
    case Filter::Sgas:
        return is_sgas(m).ok;
    case Filter::Wgas:
        return is_wgas(m).ok;
    case Filter::Aas:
        return is_aas(m).aas;
    case Filter::Sdc:
        return is_sdc(m).ok;
    }
    return true;
}

std::string seed_str(std::uint64_t s) { return "seed " + std::to_string(s); }

} // namespace

std::size_t numerical_rank(const std::vector<double>& singular, double rel_threshold)
{
    if (singular.empty())
        return 0;
    double top = *std::max_element(singular.begin(), singular.end());
    return static_cast<std::size_t>(
        std::count_if(singular.begin(), singular.end(), [&](double s) { return s > rel_threshold * top; }));
}

RankResult rank_of_columns(const TMesh& mesh, const AnchorTable& table, const std::vector<std::size_t>& cols,
                           double rel_threshold)
{
    int d = mesh.dim();
    RankResult res;
    res.anchors = cols.size();
    if (cols.empty()) {
        res.independent = true;
        return res;
    }

    // Bezier element breaks: every index used by some local knot vector
    std::vector<std::vector<int>> breaks(d);
    for (int k = 0; k < d; ++k) {
        std::set<int> s{0, mesh.extent(k)};
        for (std::size_t c : cols)
            s.insert(table[c].local[k].begin(), table[c].local[k].end());
        breaks[k].assign(s.begin(), s.end());
    }
    std::vector<std::vector<double>> nodes(d);
    for (int k = 0; k < d; ++k)
        nodes[k] = gauss_nodes(mesh.degree(k) + 1);

    SplineBasis basis(mesh, table);
    StreamingQR qr(cols.size(), 4096);

    std::vector<int> el(d, 0);
    std::vector<std::size_t> live;
    std::vector<double> x(d);
    while (true) {
        live.clear();
        for (std::size_t c = 0; c < cols.size(); ++c) {
            const auto& a = table[cols[c]];
            bool in = true;
            for (int k = 0; k < d && in; ++k)
                in = a.lo(k) <= breaks[k][el[k]] && breaks[k][el[k] + 1] <= a.hi(k);
            if (in)
                live.push_back(c);
        }
        if (!live.empty()) {
            std::vector<double> lo(d), len(d);
            for (int k = 0; k < d; ++k) {
                lo[k] = to_double(mesh.domain().knots[k][breaks[k][el[k]]]);
                len[k] = to_double(mesh.domain().knots[k][breaks[k][el[k] + 1]]) - lo[k];
            }
            std::vector<int> g(d, 0);
            while (true) {
                for (int k = 0; k < d; ++k)
                    x[k] = lo[k] + len[k] * nodes[k][g[k]];
                qr.next_row();
                for (std::size_t c : live)
                    qr.set(c, basis.eval(cols[c], x));
                int k = d - 1;
                while (k >= 0 && ++g[k] == static_cast<int>(nodes[k].size()))
                    g[k--] = 0;
                if (k < 0)
                    break;
            }
        }
        int k = d - 1;
        while (k >= 0 && ++el[k] + 1 == static_cast<int>(breaks[k].size()))
            el[k--] = 0;
        if (k < 0)
            break;
    }

    res.rows = qr.rows();
    res.singular = singular_values(qr.finish());
    std::sort(res.singular.rbegin(), res.singular.rend());
    res.rank = numerical_rank(res.singular, rel_threshold);
    res.independent = res.rank == res.anchors;
    for (double t : {1e-10, 1e-9, 1e-8, 1e-7, 1e-6})
        res.stable = res.stable && ((numerical_rank(res.singular, t) == res.anchors) == res.independent);
    return res;
}

RankResult linear_independence_rank(const TMesh& mesh, double rel_threshold)
{
    AnchorTable table(mesh);
    std::vector<std::size_t> cols(table.size());
    for (std::size_t i = 0; i < cols.size(); ++i)
        cols[i] = i;
    return rank_of_columns(mesh, table, cols, rel_threshold);
}

bool ParamBox::empty() const
{
    for (std::size_t k = 0; k < lo.size(); ++k)
        if (!(lo[k] < hi[k]))
            return true;
    return lo.empty();
}

ParamBox unity_region(const TMesh& mesh)
{
    int d = mesh.dim();
    ParamBox b;
    for (int k = 0; k < d; ++k) {
        std::vector<int> full;
        std::vector<int> lo(d), hi(d);
        for (int l = 0; l < d; ++l)
            hi[l] = 2 * mesh.extent(l);
        for (int n = 0; n <= mesh.extent(k); ++n) {
            lo[k] = hi[k] = 2 * n;
            if (mesh.skeleton_covers(k, lo.data(), hi.data()))
                full.push_back(n);
        }
        int p = mesh.degree(k);
        if (static_cast<int>(full.size()) <= 2 * p) {
            b.lo.push_back(0);
            b.hi.push_back(0);
            continue;
        }
        b.lo.push_back(to_double(mesh.domain().knots[k][full[p]]));
        b.hi.push_back(to_double(mesh.domain().knots[k][full[full.size() - 1 - p]]));
    }
    return b;
}

double partition_of_unity(const TMesh& mesh, int samples, std::uint64_t seed)
{
    ParamBox box = unity_region(mesh);
    if (box.empty())
        return std::nan("");
    AnchorTable table(mesh);
    SplineBasis basis(mesh, table);
    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<double> u(0.0, 1.0);
    std::vector<double> x(mesh.dim());
    double worst = 0.0;
    for (int s = 0; s < samples; ++s) {
        for (int k = 0; k < mesh.dim(); ++k)
            x[k] = box.lo[k] + u(rng) * (box.hi[k] - box.lo[k]);
        double sum = 0.0;
        for (std::size_t i = 0; i < basis.size(); ++i)
            sum += basis.eval(i, x);
        worst = std::max(worst, std::abs(sum - 1.0));
    }
    return worst;
}

GeneratedMesh random_mesh(std::uint64_t seed, const GenOptions& opt)
{
    std::mt19937_64 rng(seed);
    int d = opt.dim;
    std::vector<int> deg = opt.degrees;
    if (deg.empty())
        for (int k = 0; k < d; ++k)
            deg.push_back(1 + static_cast<int>(rng() % 3));
    std::vector<int> ext;
    auto bp = frame_breakpoints(deg, std::vector<int>(d, opt.cells), std::vector<int>(d, opt.width), ext);
    GeneratedMesh g;
    g.seed = seed;
    g.mesh = create_tensor_mesh(IndexDomain::make(ext, deg), bp);

    int steps = static_cast<int>(rng() % (opt.max_steps + 1));
    int done = 0;
    for (int attempt = 0; attempt < 4 * steps + 8 && done < steps; ++attempt) {
        auto cells = g.mesh.cells();
        std::vector<const Entity*> active;
        for (const auto& c : cells)
            if (g.mesh.in_active_region(c))
                active.push_back(&c);
        const Entity& q = *active[rng() % active.size()];
        int j = static_cast<int>(rng() % d);
        if ((q[j].lo + q[j].hi) % 2) {
            ++g.rejected;
            continue;
        }
        TMesh next = subdiv(g.mesh, q, j);
        if (!holds(next, opt.filter)) {
            ++g.rejected;
            continue;
        }
        g.mesh = next;
        ++done;
    }
    return g;
}

GenOptions corpus_options(std::uint64_t seed)
{
    GenOptions opt;
    opt.dim = 2 + static_cast<int>(seed / 5 % 2);
    opt.filter = static_cast<Filter>(seed % 5);
    return opt;
}

std::vector<GeneratedMesh> corpus(std::uint64_t first_seed, int count)
{
    std::vector<GeneratedMesh> out;
    for (int i = 0; i < count; ++i)
        out.push_back(random_mesh(first_seed + i, corpus_options(first_seed + i)));
    return out;
}

GenOptions wgas_options(std::uint64_t seed)
{
    GenOptions opt;
    opt.dim = 2 + static_cast<int>(seed % 2);
    opt.filter = Filter::Wgas;
    return opt;
}

std::vector<GeneratedMesh> wgas_corpus(std::uint64_t first_seed, int count)
{
    std::vector<GeneratedMesh> out;
    for (int i = 0; i < count; ++i)
        out.push_back(random_mesh(first_seed + i, wgas_options(first_seed + i)));
    return out;
}

std::vector<PointRefinement> point_log(const TMesh& mesh)
{
    std::vector<PointRefinement> out;
    for (const auto& r : mesh.refinement_log())
        out.push_back({r.cell.center(), r.dir});
    return out;
}

TMesh replay_points(const TMesh& initial, const std::vector<PointRefinement>& log, int* skipped)
{
    TMesh m = initial;
    int skip = 0;
    for (const auto& r : log) {
        try {
            m = subdiv_at(m, r.point, r.dir);
        } catch (const Error&) {
            ++skip;
        }
    }
    if (skipped)
        *skipped = skip;
    return m;
}

TMesh shrink(const TMesh& mesh, const std::function<bool(const TMesh&)>& keep)
{
    TMesh initial = create_tensor_mesh(mesh.domain(), mesh.initial_breakpoints());
    auto log = point_log(mesh);
    TMesh best = mesh;
    bool changed = true;
    while (changed) {
        changed = false;
        for (std::size_t i = 0; i < log.size(); ++i) {
            auto cand = log;
            cand.erase(cand.begin() + static_cast<long>(i));
            TMesh m = replay_points(initial, cand);
            if (keep(m)) {
                log = point_log(m);
                best = m;
                changed = true;
                break;
            }
        }
    }
    return best;
}

bool overlap_bruteforce(const KnotVector& v1, const KnotVector& v2)
{
    std::size_t n1 = v1.size(), n2 = v2.size();
    for (std::size_t n = std::max(n1, n2); n <= n1 + n2; ++n)
        for (std::size_t k1 = 0; k1 + n1 <= n; ++k1)
            for (std::size_t k2 = 0; k2 + n2 <= n; ++k2) {
                std::vector<int> xi(n, 0);
                std::vector<bool> set(n, false);
                bool ok = true;
                for (std::size_t i = 0; i < n1; ++i) {
                    xi[i + k1] = v1[i];
                    set[i + k1] = true;
                }
                for (std::size_t i = 0; i < n2 && ok; ++i) {
                    if (set[i + k2] && xi[i + k2] != v2[i])
                        ok = false;
                    xi[i + k2] = v2[i];
                    set[i + k2] = true;
                }
                // free slots can repeat a neighbour, so only the fixed ones must be ordered
                int last = std::numeric_limits<int>::min();
                for (std::size_t i = 0; i < n && ok; ++i)
                    if (set[i]) {
                        ok = xi[i] >= last;
                        last = xi[i];
                    }
                if (ok)
                    return true;
            }
    return false;
}

CheckSummary crosscheck_aas_sdc(const std::vector<GeneratedMesh>& corpus)
{
    CheckSummary s;
    for (const auto& g : corpus) {
        ++s.meshes;
        ++s.applicable;
        AnchorTable tab(g.mesh);
        bool aas = is_aas(g.mesh, tab).aas;
        bool sdc = is_sdc(g.mesh, tab).ok;
        if (aas != sdc) {
            ++s.failures;
            s.failing_seeds.push_back(g.seed);
            s.messages.push_back(seed_str(g.seed) + ": AAS " + std::to_string(aas) + " but SDC " + std::to_string(sdc));
        }
    }
    return s;
}

CheckSummary crosscheck_sgas_aas(const std::vector<GeneratedMesh>& corpus)
{
    CheckSummary s;
    for (const auto& g : corpus) {
        ++s.meshes;
        auto gt = all_gtj(g.mesh);
        if (!is_sgas(g.mesh, gt).ok)
            continue;
        ++s.applicable;
        AnchorTable tab(g.mesh);
        bool bad = false;
        if (!is_aas(g.mesh, tab).aas) {
            bad = true;
            s.messages.push_back(seed_str(g.seed) + ": SGAS but not AAS");
        }
        for (int i = 0; i < g.mesh.dim(); ++i)
            if (!subset(atj_region(g.mesh, tab, i), gtj_region(g.mesh, gt, i))) {
                bad = true;
                s.messages.push_back(seed_str(g.seed) + ": ATJ_" + std::to_string(i + 1) + " not inside GTJ");
            }
        if (bad) {
            ++s.failures;
            s.failing_seeds.push_back(g.seed);
        }
    }
    return s;
}

ConjectureReport conjecture_wgas_wdc(const std::vector<GeneratedMesh>& corpus,
                                     const std::function<GenOptions(std::uint64_t)>& options)
{
    ConjectureReport rep;
    auto counterexample = [](const TMesh& m) { return is_wgas(m).ok && !is_wdc(m).ok; };
    for (const auto& g : corpus) {
        ++rep.meshes;
        if (!is_wgas(g.mesh).ok)
            continue;
        ++rep.wgas;
        auto dc = is_wdc(g.mesh);
        if (dc.ok)
            continue;
        if (!random_mesh(g.seed, options(g.seed)).mesh.same_entities(g.mesh))
            ++rep.replay_failures;
        Candidate c;
        c.seed = g.seed;
        c.mesh = shrink(g.mesh, counterexample);
        auto w = is_wdc(c.mesh);
        if (!w.witnesses.empty())
            c.witness = w.witnesses[0].first.str() + " / " + w.witnesses[0].second.str();
        rep.candidates.push_back(std::move(c));
    }
    return rep;
}

CheckSummary property_separating_tjunction(const TMesh& mesh, int probes, std::uint64_t seed)
{
    CheckSummary s;
    s.meshes = 1;
    int d = mesh.dim();
    std::mt19937_64 rng(seed);
    // x and y share x_i, so only planes partly inside Sk_i can hold a valid pair
    std::vector<std::pair<int, int>> planes;
    std::vector<int> lo(d, 0), hi(d);
    for (int i = 0; i < d; ++i)
        for (int n = 0; n <= mesh.extent(i); ++n) {
            for (int k = 0; k < d; ++k)
                hi[k] = 2 * mesh.extent(k);
            lo[i] = hi[i] = 2 * n;
            if (!mesh.skeleton_covers(i, lo.data(), hi.data()) && !mesh.skeleton_misses(i, lo.data(), hi.data()))
                planes.emplace_back(i, n);
            lo[i] = 0;
        }
    if (planes.empty())
        return s;
    for (long attempt = 0; attempt < 400L * probes && s.applicable < probes; ++attempt) {
        auto [i, n] = planes[rng() % planes.size()];
        std::vector<Rat> x(d), y(d);
        for (int k = 0; k < d; ++k) {
            x[k] = Rat(static_cast<std::int64_t>(rng() % (2 * mesh.extent(k) + 1)), 2);
            y[k] = Rat(static_cast<std::int64_t>(rng() % (2 * mesh.extent(k) + 1)), 2);
        }
        x[i] = y[i] = Rat(n);
        if (!mesh.in_skeleton(i, x) || mesh.in_skeleton(i, y))
            continue;
        ++s.applicable;
        try {
            auto r = find_separating_tjunction(mesh, x, y, i);
            if (r.tjunction.odir != i || !separates(r.tjunction, x, y, i)) {
                ++s.failures;
                s.messages.push_back("postcondition fails for " + r.tjunction.entity.str());
            }
        } catch (const Error& e) {
            ++s.failures;
            s.messages.push_back(e.what());
        }
    }
    return s;
}

namespace {

// P_{j,m}(e) lies wholly inside Sk_j or misses it
bool dichotomy(const TMesh& mesh, const Entity& e, int j, int m)
{
    int lo[8], hi[8];
    for (int k = 0; k < mesh.dim(); ++k) {
        lo[k] = e[k].dlo();
        hi[k] = e[k].dhi();
    }
    lo[j] = hi[j] = 2 * m;
    return mesh.skeleton_covers(j, lo, hi) || mesh.skeleton_misses(j, lo, hi);
}

} // namespace

CheckSummary property_projection_dichotomy(const TMesh& mesh)
{
    CheckSummary s;
    s.meshes = 1;
    AnchorTable tab(mesh);
    auto report = [&](const Entity& e, int j, int m) {
        ++s.applicable;
        if (!dichotomy(mesh, e, j, m)) {
            ++s.failures;
            s.messages.push_back("P_" + std::to_string(j + 1) + "," + std::to_string(m) + "(" + e.str() +
                                 ") partially in Sk");
        }
    };
    for (const auto& a : tab.anchors())
        for (int j = 0; j < mesh.dim(); ++j)
            for (int m = a.lo(j); m <= a.hi(j); ++m)
                report(a.entity, j, m);
    for (const auto& g : all_gtj(mesh))
        for (int j = 0; j < mesh.dim(); ++j)
            for (int m = g.vectors[j].front(); m <= g.vectors[j].back(); ++m)
                report(g.tjunction.entity, j, m);
    return s;
}

CheckSummary property_sgas_overlap(const TMesh& mesh)
{
    CheckSummary s;
    s.meshes = 1;
    AnchorTable tab(mesh);
    auto gt = all_gtj(mesh);
    for (const auto& a : tab.anchors()) {
        Box sup = index_support(a);
        for (const auto& g : gt) {
            if (!sup.intersects(g.tjunction.entity.closure()))
                continue;
            ++s.applicable;
            for (int k = 0; k < mesh.dim(); ++k) {
                if (k == g.tjunction.odir || knots_overlap(a.local[k], g.vectors[k]))
                    continue;
                ++s.failures;
                s.messages.push_back(a.entity.str() + " vs " + g.tjunction.entity.str() + " in direction " +
                                     std::to_string(k + 1));
            }
        }
    }
    return s;
}

CheckSummary property_child_anchors(const TMesh& before, const TMesh& after, int j)
{
    CheckSummary s;
    s.meshes = 1;
    AnchorTable old_tab(before), new_tab(after);
    for (const auto& a : new_tab.anchors()) {
        if (old_tab.find(a.entity) >= 0)
            continue;
        ++s.applicable;
        Box sup = index_support(a);
        bool found = false;
        for (const auto& o : old_tab.anchors()) {
            bool same = true;
            for (int l = 0; l < after.dim() && same; ++l)
                same = l == j || o.local[l] == a.local[l];
            if (same && index_support(o).contains(sup)) {
                found = true;
                break;
            }
        }
        if (!found) {
            ++s.failures;
            s.messages.push_back("no parent for " + a.entity.str());
        }
    }
    return s;
}

CheckSummary property_child_anchors_on_steps(std::uint64_t first_seed, int steps)
{
    CheckSummary s;
    GenOptions opt;
    opt.dim = 3;
    opt.filter = Filter::Wgas;
    for (std::uint64_t seed = first_seed; s.applicable < steps && seed < first_seed + 100 * steps; ++seed) {
        auto g = random_mesh(seed, opt);
        ++s.meshes;
        const auto& log = g.mesh.refinement_log();
        TMesh before = create_tensor_mesh(g.mesh.domain(), g.mesh.initial_breakpoints());
        bool before_ok = check_three_direction_assumption(before);
        for (std::size_t k = 0; k < log.size() && s.applicable < steps; ++k) {
            TMesh after = subdiv(before, log[k].cell, log[k].dir);
            bool after_ok = check_three_direction_assumption(after);
            if (before_ok && after_ok) {
                auto r = property_child_anchors(before, after, log[k].dir);
                ++s.applicable;
                s.failures += r.failures;
                for (auto& m : r.messages)
                    s.messages.push_back(seed_str(seed) + ", step " + std::to_string(k) + ": " + m);
                if (r.failures)
                    s.failing_seeds.push_back(seed);
            }
            before = after;
            before_ok = after_ok;
        }
    }
    return s;
}

} // namespace tmesh::verify
