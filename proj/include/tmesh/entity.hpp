#pragma once

#include "tmesh/region.hpp"

#include <array>
#include <cstdint>
#include <functional>
#include <string>
#include <vector>

namespace tmesh {

inline constexpr int kMaxDim = 4;

// Singleton {lo} when lo == hi, open interval (lo, hi) otherwise.
struct Component {
    int lo = 0, hi = 0;

    static Component singleton(int n) { return {n, n}; }
    static Component interval(int a, int b) { return {a, b}; }

    bool is_singleton() const { return lo == hi; }
    // doubled lattice range covered by this component
    int dlo() const { return is_singleton() ? 2 * lo : 2 * lo + 1; }
    int dhi() const { return is_singleton() ? 2 * hi : 2 * hi - 1; }

    auto operator<=>(const Component&) const = default;
};

struct Entity {
    std::array<Component, kMaxDim> c{};
    std::uint8_t d = 0;

    Entity() = default;
    explicit Entity(std::vector<Component> comps);

    int size() const { return d; }
    Component& operator[](int k) { return c[k]; }
    const Component& operator[](int k) const { return c[k]; }

    int entity_dim() const;
    // bit k set iff component k is a singleton
    unsigned singleton_mask() const;

    bool closure_contains(const Entity& other) const;
    Box closure() const;
    std::vector<Rat> center() const;

    std::string str() const;

    auto operator<=>(const Entity& o) const
    {
        if (auto r = d <=> o.d; r != 0)
            return r;
        for (int k = 0; k < d; ++k)
            if (auto r = c[k] <=> o.c[k]; r != 0)
                return r;
        return std::strong_ordering::equal;
    }
    bool operator==(const Entity& o) const { return (*this <=> o) == 0; }
};

struct EntityHash {
    std::size_t operator()(const Entity& e) const;
};

struct IndexDomain {
    int dim = 0;
    std::vector<int> extents;             // N_k
    std::vector<int> degrees;             // p_k
    std::vector<std::vector<Rat>> knots;  // parametric knots per direction, N_k + 1 entries

    static IndexDomain make(std::vector<int> extents, std::vector<int> degrees,
                            std::vector<std::vector<Rat>> knots = {});

    int frame_width(int k) const { return (degrees[k] + 1) / 2; }
    void validate() const;
    bool operator==(const IndexDomain&) const = default;
};

} // namespace tmesh
