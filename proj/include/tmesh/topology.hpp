#pragma once

#include "tmesh/mesh.hpp"

#include <string>
#include <vector>

namespace tmesh {

struct TJunction {
    Entity entity;
    int odir = 0; // 0-based
    int pdir = 0; // 0-based
    Entity ascell;
    int valence = 3;

    bool operator==(const TJunction&) const = default;
};

// all hanging (d-2)-entities, sorted by entity
std::vector<TJunction> find_tjunctions(const TMesh& mesh);
std::vector<TJunction> tjunctions_by_odir(const TMesh& mesh, int i);

// number of hyperfaces whose boundary contains the (d-2)-entity t
int valence(const TMesh& mesh, const Entity& t);

struct SeparatingResult {
    TJunction tjunction;
    Rat t;                // segment parameter of the first contact, x + t (y - x)
    std::vector<Rat> hit; // that contact point
};

SeparatingResult find_separating_tjunction(const TMesh& mesh, const std::vector<Rat>& x,
                                           const std::vector<Rat>& y, int i);

// the three postconditions, checked without reference to the search
bool separates(const TJunction& t, const std::vector<Rat>& x, const std::vector<Rat>& y, int i);

// smallest t in [0,1] with x + t (y - x) in the closed box, or -1
Rat segment_box_entry(const Box& b, const std::vector<Rat>& x, const std::vector<Rat>& y);

struct MBox {
    struct Comp {
        int lo = 0, hi = 0;
        bool open = false; // (lo,hi) if open, else [lo,hi] (a point when lo == hi)
        bool operator==(const Comp&) const = default;
    };
    std::vector<Comp> c;

    Box closure() const;
    std::string str() const;
    bool operator==(const MBox&) const = default;
};

MBox mbox(const Entity& e, const Entity& f);

} // namespace tmesh
