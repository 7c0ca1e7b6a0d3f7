#pragma once

#include "tmesh/anchors.hpp"

#include <vector>

namespace tmesh {

// Single B-spline on p+2 knots. Right-continuous; with right_closed the last
// knot span is treated as closed on the right (used at the domain's right end).
double bspline_eval(const std::vector<double>& knots, int p, double t, bool right_closed = false);

// parametric images of the local index vectors
std::vector<std::vector<double>> parametric_knots(const TMesh& mesh, const AnchorInfo& a);

double tspline_eval(const TMesh& mesh, const AnchorInfo& a, const std::vector<double>& x);

// precomputed parametric data for fast repeated evaluation
class SplineBasis {
public:
    explicit SplineBasis(const TMesh& mesh, const AnchorTable& table);

    std::size_t size() const { return knots_.size(); }
    double eval(std::size_t i, const std::vector<double>& x) const;
    // parametric bounding box of basis function i
    double lo(std::size_t i, int k) const { return knots_[i][k].front(); }
    double hi(std::size_t i, int k) const { return knots_[i][k].back(); }

private:
    std::vector<int> degrees_;
    std::vector<double> right_end_;
    std::vector<std::vector<std::vector<double>>> knots_;
};

} // namespace tmesh
