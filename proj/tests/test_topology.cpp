#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "tmesh/errors.hpp"
#include "tmesh/fixtures.hpp"
#include "tmesh/topology.hpp"
#include "util.hpp"

using namespace tmesh;
using namespace testutil;

namespace {

TMesh refined8() { return subdiv(grid8(), E({I(2, 4), I(2, 4)}), 0); }

// hyperfaces whose closure holds the entity, by direct enumeration
int count_incident_faces(const TMesh& m, const Entity& t)
{
    int n = 0;
    for (const auto& f : m.entities_of_dim(m.dim() - 1))
        n += f.closure_contains(t);
    return n;
}

bool on_boundary(const TMesh& m, const Entity& e)
{
    for (int k = 0; k < m.dim(); ++k)
        if (e[k].is_singleton() && (e[k].lo == 0 || e[k].lo == m.extent(k)))
            return true;
    return false;
}

} // namespace

TEST_CASE("tensor meshes have no T-junctions")
{
    CHECK(find_tjunctions(grid8()).empty());
    CHECK(find_tjunctions(tensor({0, 0, 0}, {{0, 1, 2}, {0, 2}, {0, 1, 3}})).empty());
}

TEST_CASE("T-junctions of the refined 2D grid")
{
    auto ts = find_tjunctions(refined8());
    REQUIRE(ts.size() == 2);
    CHECK(ts[0].entity == E({S(3), S(2)}));
    CHECK(ts[1].entity == E({S(3), S(4)}));
    for (auto& t : ts) {
        CHECK(t.odir == 0);
        CHECK(t.pdir == 1);
        CHECK(t.valence == 3);
    }
    CHECK(ts[0].ascell == E({I(2, 4), I(0, 2)}));
    CHECK(ts[1].ascell == E({I(2, 4), I(4, 6)}));
    CHECK(tjunctions_by_odir(refined8(), 0).size() == 2);
    CHECK(tjunctions_by_odir(refined8(), 1).empty());
}

TEST_CASE("hanging edge in 3D")
{
    // two cubes side by side, the left one split in direction 3
    auto m = tensor({0, 0, 0}, {{0, 2, 4}, {0, 2}, {0, 2}});
    m = subdiv(m, E({I(0, 2), I(0, 2), I(0, 2)}), 2);
    auto ts = find_tjunctions(m);
    REQUIRE(ts.size() == 1);
    CHECK(ts[0].entity == E({S(2), I(0, 2), S(1)}));
    CHECK(ts[0].odir == 2);
    CHECK(ts[0].pdir == 0);
    CHECK(ts[0].ascell == E({I(2, 4), I(0, 2), I(0, 2)}));
}

TEST_CASE("valence against face enumeration")
{
    std::mt19937 rng(5);
    for (int trial = 0; trial < 6; ++trial) {
        int d = 2 + trial % 2;
        auto m = random_mesh(rng, d, 20);
        auto ts = find_tjunctions(m);
        for (const auto& e : m.entities_of_dim(d - 2)) {
            if (on_boundary(m, e))
                continue;
            int v = count_incident_faces(m, e);
            CHECK(v == valence(m, e));
            CHECK((v == 3 || v == 4));
            bool listed = std::any_of(ts.begin(), ts.end(), [&](auto& t) { return t.entity == e; });
            CHECK(listed == (v == 3));
        }
        for (const auto& t : ts) {
            CHECK(t.odir != t.pdir);
            CHECK(t.entity[t.odir].is_singleton());
            CHECK(t.entity[t.pdir].is_singleton());
            const Entity& q = t.ascell;
            CHECK(q.entity_dim() == d);
            // T_odir inside Q_odir, T_pdir on the boundary of Q_pdir
            CHECK((q[t.odir].lo < t.entity[t.odir].lo && t.entity[t.odir].lo < q[t.odir].hi));
            CHECK((t.entity[t.pdir].lo == q[t.pdir].lo || t.entity[t.pdir].lo == q[t.pdir].hi));
            CHECK(q.closure_contains(t.entity));
        }
    }
}

TEST_CASE("separating T-junction")
{
    auto m = refined8();
    auto x = P({Rat(3), Rat(3)}), y = P({Rat(3), Rat(5)});
    auto r = find_separating_tjunction(m, x, y, 0);
    CHECK(r.tjunction.entity == E({S(3), S(4)}));
    CHECK(r.t == Rat(1, 2));
    CHECK(separates(r.tjunction, x, y, 0));
    // nearest to x wins when both ends qualify
    auto r2 = find_separating_tjunction(m, P({Rat(3), Rat(5, 2)}), P({Rat(3), Rat(1)}), 0);
    CHECK(r2.tjunction.entity == E({S(3), S(2)}));

    for (auto [a, b] : {std::pair{x, x}, std::pair{x, P({Rat(7, 2), Rat(3)})}, std::pair{x, P({Rat(3), Rat(2)})}}) {
        try {
            find_separating_tjunction(m, a, b, 0);
            FAIL("expected an error");
        } catch (const Error& e) {
            CHECK(e.kind() == ErrorKind::PreconditionViolated);
        }
    }
}

TEST_CASE("separating T-junction always exists")
{
    std::mt19937 rng(17);
    int probes = 0;
    for (int trial = 0; trial < 8; ++trial) {
        int d = 2 + trial % 2;
        auto m = random_mesh(rng, d, 25);
        int valid = 0;
        for (int s = 0; s < 400000 && valid < 1000; ++s) {
            int i = static_cast<int>(rng() % d);
            std::vector<Rat> x(d), y(d);
            for (int k = 0; k < d; ++k) {
                x[k] = Rat(static_cast<int>(rng() % (2 * m.extent(k) + 1)), 2);
                y[k] = Rat(static_cast<int>(rng() % (2 * m.extent(k) + 1)), 2);
            }
            y[i] = x[i];
            if (!m.in_skeleton(i, x) || m.in_skeleton(i, y))
                continue;
            ++probes;
            ++valid;
            auto r = find_separating_tjunction(m, x, y, i);
            CHECK(r.tjunction.odir == i);
            CHECK(separates(r.tjunction, x, y, i));
        }
    }
    CHECK(probes >= 4000);
}

TEST_CASE("mbox")
{
    auto e = E({I(0, 1), S(2)});
    CHECK(mbox(e, e).str() == "(0,1)x{2}");
    CHECK(mbox(E({I(0, 1), S(2)}), E({I(3, 4), S(2)})).str() == "[1,3]x{2}");
    CHECK(mbox(E({I(0, 4), S(0)}), E({I(2, 6), S(5)})).str() == "(2,4)x[0,5]");
    CHECK(equals(BoxRegion(2, {mbox(E({I(0, 4), S(0)}), E({I(2, 6), S(5)})).closure()}),
                 boxes(2, {{{2, 4}, {0, 5}}})));
}
