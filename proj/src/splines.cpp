#include "tmesh/splines.hpp"
#include "tmesh/errors.hpp"

#include <boost/rational.hpp>

namespace tmesh {

double bspline_eval(const std::vector<double>& knots, int p, double t, bool right_closed)
{
    if (p < 0 || p > 14 || static_cast<int>(knots.size()) != p + 2)
        throw Error(ErrorKind::PreconditionViolated, "need p+2 knots and 0 <= p <= 14");
    if (!(knots.front() < knots.back()))
        throw Error(ErrorKind::DegenerateKnots, "first knot equals last knot");
    if (t < knots.front() || t > knots.back())
        return 0.0;
    bool left = right_closed && t == knots.back();
    if (t == knots.back() && !left)
        return 0.0;

    double n[16];
    for (int i = 0; i <= p; ++i) {
        double a = knots[i], b = knots[i + 1];
        n[i] = left ? (a < t && t <= b) : (a <= t && t < b);
    }
    for (int r = 1; r <= p; ++r)
        for (int i = 0; i + r <= p; ++i) {
            double v = 0.0;
            double d1 = knots[i + r] - knots[i];
            double d2 = knots[i + r + 1] - knots[i + 1];
            if (d1 > 0)
                v += (t - knots[i]) / d1 * n[i];
            if (d2 > 0)
                v += (knots[i + r + 1] - t) / d2 * n[i + 1];
            n[i] = v;
        }
    return n[0];
}

std::vector<std::vector<double>> parametric_knots(const TMesh& mesh, const AnchorInfo& a)
{
    std::vector<std::vector<double>> out(mesh.dim());
    for (int k = 0; k < mesh.dim(); ++k)
        for (int idx : a.local[k])
            out[k].push_back(boost::rational_cast<double>(mesh.domain().knots[k][idx]));
    return out;
}

double tspline_eval(const TMesh& mesh, const AnchorInfo& a, const std::vector<double>& x)
{
    auto kn = parametric_knots(mesh, a);
    double v = 1.0;
    for (int k = 0; k < mesh.dim() && v != 0.0; ++k) {
        double end = boost::rational_cast<double>(mesh.domain().knots[k].back());
        v *= bspline_eval(kn[k], mesh.degree(k), x[k], x[k] == end);
    }
    return v;
}

SplineBasis::SplineBasis(const TMesh& mesh, const AnchorTable& table)
{
    degrees_ = mesh.domain().degrees;
    for (int k = 0; k < mesh.dim(); ++k)
        right_end_.push_back(boost::rational_cast<double>(mesh.domain().knots[k].back()));
    for (const auto& a : table.anchors())
        knots_.push_back(parametric_knots(mesh, a));
}

double SplineBasis::eval(std::size_t i, const std::vector<double>& x) const
{
    double v = 1.0;
    for (std::size_t k = 0; k < degrees_.size() && v != 0.0; ++k)
        v *= bspline_eval(knots_[i][k], degrees_[k], x[k], x[k] == right_end_[k]);
    return v;
}

} // namespace tmesh
