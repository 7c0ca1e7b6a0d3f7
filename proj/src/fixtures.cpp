#include "tmesh/fixtures.hpp"

#include <numeric>

namespace tmesh::fixtures {

namespace {

Entity cell(std::initializer_list<std::pair<int, int>> r)
{
    std::vector<Component> c;
    for (auto [a, b] : r)
        c.push_back(Component::interval(a, b));
    return Entity(std::move(c));
}

std::vector<int> range(int a, int b)
{
    std::vector<int> v(b - a + 1);
    std::iota(v.begin(), v.end(), a);
    return v;
}

TMesh tensor(std::vector<int> degrees, std::vector<std::vector<int>> bp)
{
    std::vector<int> ext;
    for (auto& b : bp)
        ext.push_back(b.back());
    return create_tensor_mesh(IndexDomain::make(ext, degrees), bp);
}

} // namespace

Fig10 fig10(int p1, int p2)
{
    int f1 = (p1 + 1) / 2, f2 = (p2 + 1) / 2;
    Fig10 r;
    r.m = f1 + 1;
    r.n = f2 + 1;
    std::vector<int> y = range(0, f2);
    for (int i = 0; i <= f2; ++i)
        y.push_back(f2 + 2 + i);
    TMesh t = tensor({p1, p2}, {range(0, 2 * f1 + 3), y});
    t = subdiv(t, cell({{r.m - 1, r.m}, {f2, f2 + 2}}), 1);
    r.mesh = subdiv(t, cell({{r.m + 1, r.m + 2}, {f2, f2 + 2}}), 1);
    return r;
}

Fig10e fig10e()
{
    Fig10e r;
    r.m = 4;
    r.n = 3;
    TMesh t = tensor({3, 3}, {{0, 1, 2, 4, 5, 6, 7, 8}, {0, 1, 2, 4, 5, 6, 7}});
    t = subdiv(t, cell({{2, 4}, {2, 4}}), 1);
    t = subdiv(t, cell({{5, 6}, {2, 4}}), 1);
    r.mesh = subdiv(t, cell({{2, 4}, {4, 5}}), 0);
    return r;
}

Fig11 fig11(int p1, int p2, int p3)
{
    int f1 = (p1 + 1) / 2, f2 = (p2 + 1) / 2, f3 = (p3 + 1) / 2;
    Fig11 r;
    r.m = f1;
    r.n = f2;
    r.r = f3;
    auto coarse = [](int f) {
        std::vector<int> v = range(0, f);
        for (int i = 0; i <= f; ++i)
            v.push_back(f + 2 + i);
        return v;
    };
    TMesh t = tensor({p1, p2, p3}, {range(0, 2 * f1 + 3), coarse(f2), coarse(f3)});
    t = subdiv(t, cell({{r.m, r.m + 1}, {r.n, r.n + 2}, {r.r, r.r + 2}}), 2);
    r.mesh = subdiv(t, cell({{r.m + 2, r.m + 3}, {r.n, r.n + 2}, {r.r, r.r + 2}}), 1);
    return r;
}

Fig12 fig12(int levels)
{
    Fig12 r;
    r.origin = 2;
    std::vector<int> bp{0, 1, 2, 10, 18, 19, 20};
    TMesh t = tensor({3, 3}, {bp, bp});
    int s = 8;
    for (int l = 0; l < levels; ++l) {
        int o = r.origin, h = s / 2;
        t = subdiv(t, cell({{o, o + s}, {o, o + s}}), 0);
        t = subdiv(t, cell({{o, o + h}, {o, o + s}}), 1);
        t = subdiv(t, cell({{o + h, o + s}, {o, o + s}}), 1);
        s = h;
    }
    r.mesh = t;
    return r;
}

TMesh fig7()
{
    TMesh t = tensor({3, 2, 1}, {range(0, 17), range(0, 13), {0, 1, 3, 4}});
    // refined block [5,12]x[5,8] u [6,11]x[4,9]
    for (int x = 5; x < 12; ++x)
        for (int y = 4; y < 9; ++y) {
            bool inner = y >= 5 && y < 8;
            bool wide = x >= 6 && x < 11;
            if (inner || wide)
                t = subdiv(t, cell({{x, x + 1}, {y, y + 1}, {1, 3}}), 2);
        }
    return t;
}

TMesh fig6(bool refine_center)
{
    std::vector<int> bp{0, 1, 3, 5, 7, 8};
    TMesh t = tensor({1, 1, 1}, {bp, bp, {0, 1, 3, 4}});
    t = subdiv(t, cell({{3, 5}, {1, 3}, {1, 3}}), 0);
    t = subdiv(t, cell({{3, 5}, {5, 7}, {1, 3}}), 0);
    if (refine_center)
        t = subdiv(t, cell({{3, 5}, {3, 5}, {1, 3}}), 1);
    return t;
}

namespace {

// top row fully refined in direction 1, bottom row keeps the cells (6,8) and (10,12)
TMesh fig5_mesh(std::vector<int> degrees, std::vector<int> z)
{
    TMesh t = tensor(degrees, {{0, 1, 2, 4, 6, 8, 10, 12, 13, 14}, {0, 1, 3, 5, 6}, z});
    std::pair<int, int> zc{(degrees[2] + 1) / 2, z.back() - (degrees[2] + 1) / 2};
    for (int x = 2; x < 12; x += 2)
        t = subdiv(t, cell({{x, x + 2}, {3, 5}, zc}), 0);
    for (int x : {2, 4, 8})
        t = subdiv(t, cell({{x, x + 2}, {1, 3}, zc}), 0);
    return t;
}

} // namespace

Fig5 fig5a()
{
    Fig5 r;
    r.mesh = fig5_mesh({3, 2, 2}, {0, 1, 3, 4});
    r.mbar = 6;
    r.top = Entity({Component::singleton(6), Component::interval(3, 5), Component::interval(1, 3)});
    r.bottom = Entity({Component::singleton(6), Component::interval(1, 3), Component::interval(1, 3)});
    return r;
}

Fig5 fig5b()
{
    Fig5 r;
    r.mesh = fig5_mesh({4, 2, 3}, {0, 1, 2, 4, 5, 6});
    r.mbar = 6;
    r.top = Entity({Component::interval(6, 7), Component::interval(3, 5), Component::singleton(2)});
    r.bottom = Entity({Component::interval(6, 8), Component::interval(1, 3), Component::singleton(2)});
    return r;
}

} // namespace tmesh::fixtures
