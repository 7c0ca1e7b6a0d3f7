#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "tmesh/dual_compat.hpp"
#include "tmesh/errors.hpp"
#include "tmesh/fixtures.hpp"
#include "tmesh/suitability.hpp"
#include "util.hpp"

#include <set>

using namespace tmesh;
using namespace testutil;

namespace {

// both vectors are consecutive runs of their merged knot vector
bool oracle_overlap(const KnotVector& a, const KnotVector& b)
{
    std::set<int> u(a.begin(), a.end());
    u.insert(b.begin(), b.end());
    KnotVector merged(u.begin(), u.end());
    auto run = [&](const KnotVector& v) {
        auto it = std::search(merged.begin(), merged.end(), v.begin(), v.end());
        return it != merged.end();
    };
    return run(a) && run(b);
}

KnotVector random_vector(std::mt19937& rng)
{
    int len = 1 + static_cast<int>(rng() % 8);
    std::set<int> s;
    while (static_cast<int>(s.size()) < len)
        s.insert(static_cast<int>(rng() % 21));
    return KnotVector(s.begin(), s.end());
}

} // namespace

TEST_CASE("knot vector overlap")
{
    CHECK(knots_overlap({0, 2, 3}, {0, 2, 3}));
    CHECK(knots_overlap({0, 2, 3}, {2, 3, 4}));
    CHECK_FALSE(knots_overlap({0, 2, 4}, {0, 3, 4}));
    CHECK(knots_overlap({0, 1, 2}, {3, 4, 5}));
}

TEST_CASE("overlap against the merged-vector oracle")
{
    std::mt19937 rng(41);
    int agree = 0, positive = 0;
    for (int i = 0; i < 10000; ++i) {
        auto a = random_vector(rng);
        auto b = rng() % 4 == 0 ? a : random_vector(rng);
        bool want = oracle_overlap(a, b);
        agree += knots_overlap(a, b) == want;
        positive += want;
    }
    CHECK(agree == 10000);
    CHECK(positive > 1000);
}

TEST_CASE("partial overlap relations")
{
    auto m = tensor({1}, {{0, 1, 2, 3, 4, 5, 6}});
    AnchorTable tab(m);
    REQUIRE(tab.size() == 5);
    try {
        weakly_partially_overlap(tab[0], tab[0]);
        FAIL("expected an error");
    } catch (const Error& e) {
        CHECK(e.kind() == ErrorKind::SameAnchor);
    }
    CHECK_THROWS_AS(strongly_partially_overlap(tab[1], tab[1]), Error);
    // (0,1,2) and (3,4,5): disjoint supports
    CHECK(strongly_partially_overlap(tab[0], tab[3]));
    CHECK(weakly_partially_overlap(tab[0], tab[3]));
}

TEST_CASE("tensor meshes are dual-compatible")
{
    std::vector<int> ext;
    auto bp = frame_breakpoints({2, 3}, {3, 2}, {2, 2}, ext);
    auto m = create_tensor_mesh(IndexDomain::make(ext, {2, 3}), bp);
    CHECK(is_wdc(m).ok);
    CHECK(is_sdc(m).ok);
}

TEST_CASE("WDC but not SDC in 3D")
{
    for (auto p : {std::vector<int>{1, 1, 1}, {2, 2, 2}, {3, 2, 1}}) {
        auto f = fixtures::fig11(p[0], p[1], p[2]);
        AnchorTable tab(f.mesh);
        CAPTURE(p[0]);
        for (std::size_t i = 0; i < tab.size(); ++i)
            for (std::size_t j = i + 1; j < tab.size(); ++j)
                CHECK(weakly_partially_overlap(tab[i], tab[j]));
        CHECK(is_wdc(f.mesh, tab).ok);
        auto s = is_sdc(f.mesh, tab);
        CHECK_FALSE(s.ok);
        for (auto& w : s.witnesses) {
            // the failing pairs sit on either side of the two interfaces in direction 1
            int a = w.first[0].lo, b = w.second[0].lo;
            CHECK(std::min(a, b) <= f.m + 1);
            CHECK(std::max(a, b) >= f.m + 1);
            CHECK(std::count(w.overlap.begin(), w.overlap.end(), true) < 2);
        }
    }
}

TEST_CASE("AAS mesh is SDC")
{
    CHECK(is_sdc(fixtures::fig10e().mesh).ok);
    CHECK(is_aas(fixtures::fig10e().mesh).aas);
}

TEST_CASE("SDC implies WDC")
{
    std::mt19937 rng(43);
    for (int trial = 0; trial < 30; ++trial) {
        auto m = random_mesh(rng, 2 + trial % 2, 15, 2);
        AnchorTable tab(m);
        bool sdc = is_sdc(m, tab).ok;
        CHECK((!sdc || is_wdc(m, tab).ok));
        for (std::size_t i = 0; i < tab.size(); ++i)
            for (std::size_t j = i + 1; j < tab.size(); ++j)
                if (strongly_partially_overlap(tab[i], tab[j]))
                    CHECK(weakly_partially_overlap(tab[i], tab[j]));
    }
}
