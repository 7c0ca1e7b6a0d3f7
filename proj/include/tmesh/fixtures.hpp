#pragma once

// Small meshes with known T-junction and anchor structure, shared by tests and the CLI.

#include "tmesh/mesh.hpp"

namespace tmesh::fixtures {

// 2D, three columns over one row of height two; the outer columns are split
// horizontally so that {m}x{n} and {m+1}x{n} hang. p2 must be odd.
struct Fig10 {
    TMesh mesh;
    int m = 0, n = 0;
};
Fig10 fig10(int p1, int p2 = 1);

// 2D, p = (3,3), AAS but not SGAS.
struct Fig10e {
    TMesh mesh;
    int m = 0, n = 0;
};
Fig10e fig10e();

// 3D, two hanging interfaces with equal pointing direction.
struct Fig11 {
    TMesh mesh;
    int m = 0, n = 0, r = 0;
};
Fig11 fig11(int p1, int p2, int p3);

// 2D, p = (3,3), lower-left cell bisected recursively in both directions.
struct Fig12 {
    TMesh mesh;
    int origin = 0; // index of the active region's lower-left corner
};
Fig12 fig12(int levels = 3);

// 3D, p = (3,2,1), N = (17,13,4), with a 3-orthogonal refined block.
TMesh fig7();

// 3D, active region of 3x3x1 cells; the centre cell's neighbours in direction 2 are
// bisected in direction 1, then (optionally) the centre cell in direction 2.
TMesh fig6(bool refine_center = true);

// 3D, p = (3,2,2) resp. (4,2,3); top and bottom anchor share their first component.
struct Fig5 {
    TMesh mesh;
    Entity top, bottom;
    int mbar = 0; // m-bar resp. m_1
};
Fig5 fig5a();
Fig5 fig5b();

} // namespace tmesh::fixtures
