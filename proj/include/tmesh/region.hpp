#pragma once

// Exact finite unions of closed axis-aligned boxes. A component is either a
// point or a closed interval with rational endpoints.

#include <boost/rational.hpp>

#include <cstdint>
#include <string>
#include <vector>

namespace tmesh {

using Rat = boost::rational<std::int64_t>;

// Boost's mixed integer/rational equality recurses forever under the C++20
// rewritten-candidate rules; these exact overloads take precedence.
inline bool operator==(const Rat& a, int b) { return a == Rat(b); }
inline bool operator==(int a, const Rat& b) { return Rat(a) == b; }
inline bool operator==(const Rat& a, std::int64_t b) { return a == Rat(b); }
inline bool operator==(std::int64_t a, const Rat& b) { return Rat(a) == b; }

std::string to_string(const Rat& q);
Rat parse_rational(const std::string& s);

struct Interval1 {
    Rat lo, hi; // lo == hi encodes a point

    bool is_point() const { return lo == hi; }
    bool operator==(const Interval1&) const = default;
};

class Box {
public:
    Box() = default;
    explicit Box(std::vector<Interval1> comps);

    static Box point(const std::vector<Rat>& x);

    int dim() const { return static_cast<int>(c_.size()); }
    const Interval1& operator[](int k) const { return c_[k]; }
    Interval1& operator[](int k) { return c_[k]; }
    const std::vector<Interval1>& components() const { return c_; }

    bool contains(const std::vector<Rat>& x) const;
    bool contains(const Box& other) const;
    // nullopt-free variant: returns false and leaves out untouched on empty
    bool intersect(const Box& other, Box& out) const;
    bool intersects(const Box& other) const;

    bool operator==(const Box&) const = default;
    bool operator<(const Box& o) const;

    std::string str() const;

private:
    std::vector<Interval1> c_;
};

class BoxRegion {
public:
    BoxRegion() = default;
    explicit BoxRegion(int dim) : dim_(dim) {}
    BoxRegion(int dim, std::vector<Box> boxes);

    int dim() const { return dim_; }
    const std::vector<Box>& boxes() const { return boxes_; }

    void add(const Box& b);
    void add(const BoxRegion& r);

    bool is_empty() const { return boxes_.empty(); }
    bool contains_point(const std::vector<Rat>& x) const;

    // canonical representation: depends only on the point set
    BoxRegion normalized() const;

    std::string str() const;

private:
    int dim_ = 0;
    std::vector<Box> boxes_;
};

BoxRegion intersect(const BoxRegion& a, const BoxRegion& b);
BoxRegion unite(const BoxRegion& a, const BoxRegion& b);
bool subset(const BoxRegion& a, const BoxRegion& b);
bool equals(const BoxRegion& a, const BoxRegion& b);

} // namespace tmesh
