#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "tmesh/fixtures.hpp"
#include "tmesh/suitability.hpp"
#include "util.hpp"

using namespace tmesh;
using namespace testutil;

namespace {

// ATJ_j(n) by direct enumeration: every half-integer point of the slice is tested
// against the anchor supports.
std::vector<std::vector<Rat>> slice_points(const TMesh& m, int j, int n)
{
    std::vector<std::vector<Rat>> pts{{}};
    for (int k = 0; k < m.dim(); ++k) {
        std::vector<Rat> vals;
        if (k == j)
            vals.push_back(Rat(n));
        else
            for (int u = 0; u <= 2 * m.extent(k); ++u)
                vals.push_back(Rat(u, 2));
        std::vector<std::vector<Rat>> next;
        for (auto& p : pts)
            for (auto& v : vals) {
                next.push_back(p);
                next.back().push_back(v);
            }
        pts = std::move(next);
    }
    return pts;
}

bool oracle_atj(const AnchorTable& tab, int j, int n, const std::vector<Rat>& x)
{
    bool with = false, without = false;
    for (const auto& a : tab.anchors()) {
        if (!index_support(a).contains(x))
            continue;
        bool in = std::binary_search(a.global[j].begin(), a.global[j].end(), n);
        (in ? with : without) = true;
    }
    return with && without;
}

// the computed slice region agrees with the oracle at every sample point
void check_slice(const TMesh& m, const AnchorTable& tab, int j, int n)
{
    auto r = atj_slice(m, tab, j, n).region;
    for (auto& x : slice_points(m, j, n)) {
        CAPTURE(j);
        CAPTURE(n);
        CHECK(r.contains_point(x) == oracle_atj(tab, j, n, x));
    }
}

BoxRegion pt_box(int d, std::vector<std::pair<Rat, Rat>> c)
{
    std::vector<Interval1> v;
    for (auto [a, b] : c)
        v.push_back({a, b});
    return BoxRegion(d, {Box(v)});
}

} // namespace

TEST_CASE("tensor meshes are analysis-suitable")
{
    std::vector<int> ext;
    auto bp = frame_breakpoints({3, 2}, {3, 3}, {2, 1}, ext);
    auto m = create_tensor_mesh(IndexDomain::make(ext, {3, 2}), bp);
    AnchorTable tab(m);
    for (int j = 0; j < 2; ++j)
        for (int n = 0; n <= ext[j]; ++n)
            CHECK(atj_slice(m, tab, j, n).region.is_empty());
    CHECK(is_aas(m).aas);
    CHECK(is_sgas(m).ok);
    CHECK(is_wgas(m).ok);
}

TEST_CASE("opposing hanging vertices")
{
    for (int p1 : {1, 2, 3}) {
        auto f = fixtures::fig10(p1);
        AnchorTable tab(f.mesh);
        auto atj = atj_region(f.mesh, tab, 1).normalized();
        auto g = all_gtj(f.mesh);
        REQUIRE(g.size() == 2);
        auto gtj = gtj_region(f.mesh, g, 1);
        CAPTURE(p1);
        if (p1 % 2) {
            CHECK(atj.is_empty());
        } else {
            CHECK_FALSE(atj.is_empty());
            CHECK(equals(gtj, atj));
            CHECK(equals(atj, boxes(2, {{{f.m - 1, f.m + 2}, {f.n, f.n}}})));
        }
        if (p1 == 1) {
            for (auto& e : g)
                CHECK(equals(BoxRegion(2, {e.region}), boxes(2, {{{f.m, f.m + 1}, {f.n, f.n}}})));
        }
        for (int n = 0; n <= f.mesh.extent(1); ++n)
            check_slice(f.mesh, tab, 1, n);
    }
}

TEST_CASE("AAS but not SGAS")
{
    auto f = fixtures::fig10e();
    int m = f.m, n = f.n;
    AnchorTable tab(f.mesh);
    CHECK(is_aas(f.mesh, tab).aas);

    auto g = all_gtj(f.mesh);
    auto t3 = std::find_if(g.begin(), g.end(), [&](auto& e) { return e.tjunction.entity == E({S(m - 1), S(n + 1)}); });
    REQUIRE(t3 != g.end());
    CHECK(equals(BoxRegion(2, {t3->region}), boxes(2, {{{m - 1, m - 1}, {n - 1, n + 2}}})));
    CHECK(equals(atj_slice(f.mesh, tab, 0, m - 1).region, boxes(2, {{{m - 1, m - 1}, {n - 1, n + 2}}})));

    auto s = is_sgas(f.mesh, g);
    CHECK_FALSE(s.ok);
    REQUIRE_FALSE(s.witnesses.empty());
    // both horizontal T-junctions on the line n reach T^(3) at the same point
    for (auto& w : s.witnesses) {
        bool has_t3 = w.first.entity == t3->tjunction.entity || w.second.entity == t3->tjunction.entity;
        CHECK(has_t3);
        CHECK(w.first.odir != w.second.odir);
        CHECK(w.intersection == Box::point({Rat(m - 1), Rat(n)}));
    }
    for (int j = 0; j < 2; ++j)
        for (int k = 0; k <= f.mesh.extent(j); ++k)
            check_slice(f.mesh, tab, j, k);
}

TEST_CASE("WGAS but not SGAS in 3D")
{
    for (auto p : {std::vector<int>{1, 1, 1}, {2, 2, 2}, {3, 2, 1}}) {
        auto f = fixtures::fig11(p[0], p[1], p[2]);
        CAPTURE(p[0]);
        CHECK(is_admissible(f.mesh).admissible);
        CHECK(is_wgas(f.mesh).ok);
        CHECK_FALSE(is_sgas(f.mesh).ok);
        CHECK_FALSE(is_aas(f.mesh).aas);
    }
}

TEST_CASE("recursive corner bisection: GTJ strictly inside ATJ")
{
    auto f = fixtures::fig12();
    AnchorTable tab(f.mesh);
    for (int j = 0; j < 2; ++j)
        for (int n = 0; n <= f.mesh.extent(j); ++n)
            check_slice(f.mesh, tab, j, n);
    auto atj = atj_region(f.mesh, tab, 0);
    auto gtj = gtj_region(f.mesh, all_gtj(f.mesh), 0);
    // goldens frozen from the slice enumeration above
    CHECK(equals(atj, boxes(2, {{{3, 3}, {2, 10}}, {{4, 4}, {2, 18}}, {{6, 6}, {2, 19}}})));
    CHECK(equals(gtj, boxes(2, {{{3, 3}, {3, 10}}, {{4, 4}, {4, 18}}, {{6, 6}, {6, 19}}})));
    CHECK(subset(gtj, atj));
    CHECK_FALSE(subset(atj, gtj));
}

TEST_CASE("3D refined block, slice S_3(2)")
{
    auto m = fixtures::fig7();
    AnchorTable tab(m);
    check_slice(m, tab, 2, 2);
    auto r = atj_slice(m, tab, 2, 2).region;
    auto want = boxes(3, {{{3, 6}, {4, 9}, {2, 2}},
                          {{4, 13}, {3, 4}, {2, 2}},
                          {{4, 13}, {9, 10}, {2, 2}},
                          {{11, 14}, {4, 9}, {2, 2}},
                          {{6, 11}, {4, 5}, {2, 2}},
                          {{6, 11}, {8, 9}, {2, 2}},
                          {{6, 7}, {5, 6}, {2, 2}},
                          {{6, 7}, {7, 8}, {2, 2}},
                          {{10, 11}, {5, 6}, {2, 2}},
                          {{10, 11}, {7, 8}, {2, 2}}});
    CHECK(equals(r, want));
    auto gtj = gtj_region(m, all_gtj(m), 2);
    CHECK(subset(r, gtj));
    CHECK_FALSE(subset(gtj, r));
}

TEST_CASE("slice regions against enumeration on random meshes")
{
    std::mt19937 rng(31);
    for (int trial = 0; trial < 6; ++trial) {
        int d = 2 + trial % 2;
        auto m = random_mesh(rng, d, 15, 2);
        AnchorTable tab(m);
        for (int j = 0; j < d; ++j)
            for (int n = 0; n <= m.extent(j); ++n)
                check_slice(m, tab, j, n);
        auto masks = atj_masks(m, tab);
        for (int j = 0; j < d; ++j)
            CHECK(equals(mask_to_region(m, masks[j]), atj_region(m, tab, j)));
    }
}

TEST_CASE("SGAS and WGAS coincide in 2D")
{
    std::mt19937 rng(37);
    int differ = 0, sgas = 0;
    for (int trial = 0; trial < 40; ++trial) {
        auto m = random_mesh(rng, 2, 12);
        auto g = all_gtj(m);
        bool s = is_sgas(m, g).ok;
        differ += s != is_wgas(m, g).ok;
        sgas += s;
    }
    CHECK(differ == 0);
    CHECK(sgas > 0);
}

TEST_CASE("region witness of an intersection")
{
    auto a = pt_box(2, {{Rat(3), Rat(3)}, {Rat(2), Rat(5)}});
    auto b = pt_box(2, {{Rat(2), Rat(6)}, {Rat(3), Rat(3)}});
    CHECK(equals(intersect(a, b), pt_box(2, {{Rat(3), Rat(3)}, {Rat(3), Rat(3)}})));
}
