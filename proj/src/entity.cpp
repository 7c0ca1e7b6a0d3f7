#include "tmesh/entity.hpp"
#include "tmesh/errors.hpp"

#include <sstream>

namespace tmesh {

const char* to_string(ErrorKind k)
{
    switch (k) {
    case ErrorKind::InvalidDomain: return "InvalidDomain";
    case ErrorKind::InvalidBreakpoints: return "InvalidBreakpoints";
    case ErrorKind::NonIntegerMidpoint: return "NonIntegerMidpoint";
    case ErrorKind::CellOutsideActiveRegion: return "CellOutsideActiveRegion";
    case ErrorKind::NotACell: return "NotACell";
    case ErrorKind::DimensionTooSmall: return "DimensionTooSmall";
    case ErrorKind::DimensionMismatch: return "DimensionMismatch";
    case ErrorKind::ClassificationAmbiguous: return "ClassificationAmbiguous";
    case ErrorKind::ComplexIntegrity: return "ComplexIntegrity";
    case ErrorKind::PreconditionViolated: return "PreconditionViolated";
    case ErrorKind::NotFound: return "NotFound";
    case ErrorKind::InsufficientKnots: return "InsufficientKnots";
    case ErrorKind::NonAdjacentCellBounds: return "NonAdjacentCellBounds";
    case ErrorKind::DegenerateKnots: return "DegenerateKnots";
    case ErrorKind::SameAnchor: return "SameAnchor";
    case ErrorKind::MalformedInput: return "MalformedInput";
    }
    return "Unknown";
}

Entity::Entity(std::vector<Component> comps)
{
    if (comps.empty() || comps.size() > kMaxDim)
        throw Error(ErrorKind::DimensionMismatch, "entity dimension out of range");
    d = static_cast<std::uint8_t>(comps.size());
    for (int k = 0; k < d; ++k) {
        if (comps[k].hi < comps[k].lo)
            throw Error(ErrorKind::PreconditionViolated, "component with reversed bounds");
        c[k] = comps[k];
    }
}

int Entity::entity_dim() const
{
    int n = 0;
    for (int k = 0; k < d; ++k)
        n += c[k].is_singleton() ? 0 : 1;
    return n;
}

unsigned Entity::singleton_mask() const
{
    unsigned m = 0;
    for (int k = 0; k < d; ++k)
        if (c[k].is_singleton())
            m |= 1u << k;
    return m;
}

bool Entity::closure_contains(const Entity& o) const
{
    for (int k = 0; k < d; ++k)
        if (o.c[k].lo < c[k].lo || o.c[k].hi > c[k].hi)
            return false;
    return true;
}

Box Entity::closure() const
{
    std::vector<Interval1> b(d);
    for (int k = 0; k < d; ++k)
        b[k] = {Rat(c[k].lo), Rat(c[k].hi)};
    return Box(std::move(b));
}

std::vector<Rat> Entity::center() const
{
    std::vector<Rat> x(d);
    for (int k = 0; k < d; ++k)
        x[k] = Rat(c[k].lo + c[k].hi, 2);
    return x;
}

std::string Entity::str() const
{
    std::ostringstream os;
    for (int k = 0; k < d; ++k) {
        if (k)
            os << "x";
        if (c[k].is_singleton())
            os << "{" << c[k].lo << "}";
        else
            os << "(" << c[k].lo << "," << c[k].hi << ")";
    }
    return os.str();
}

std::size_t EntityHash::operator()(const Entity& e) const
{
    std::size_t h = e.d;
    for (int k = 0; k < e.d; ++k) {
        h = h * 1000003u ^ static_cast<std::size_t>(e.c[k].lo);
        h = h * 1000003u ^ static_cast<std::size_t>(e.c[k].hi);
    }
    return h;
}

IndexDomain IndexDomain::make(std::vector<int> extents, std::vector<int> degrees,
                              std::vector<std::vector<Rat>> knots)
{
    IndexDomain dom;
    dom.dim = static_cast<int>(extents.size());
    dom.extents = std::move(extents);
    dom.degrees = std::move(degrees);
    if (knots.empty()) {
        knots.resize(dom.extents.size());
        for (std::size_t k = 0; k < dom.extents.size(); ++k)
            for (int i = 0; i <= dom.extents[k]; ++i)
                knots[k].push_back(Rat(i));
    }
    dom.knots = std::move(knots);
    dom.validate();
    return dom;
}

void IndexDomain::validate() const
{
    if (dim < 1 || dim > kMaxDim)
        throw Error(ErrorKind::InvalidDomain, "dimension must be in [1," + std::to_string(kMaxDim) + "]");
    if (static_cast<int>(extents.size()) != dim || static_cast<int>(degrees.size()) != dim ||
        static_cast<int>(knots.size()) != dim)
        throw Error(ErrorKind::InvalidDomain, "extents, degrees and knots need one entry per direction");
    for (int k = 0; k < dim; ++k) {
        if (degrees[k] < 0)
            throw Error(ErrorKind::InvalidDomain, "negative degree");
        if (extents[k] < 2 * frame_width(k) + 1)
            throw Error(ErrorKind::InvalidDomain, "empty active region in direction " + std::to_string(k + 1));
        if (static_cast<int>(knots[k].size()) != extents[k] + 1)
            throw Error(ErrorKind::InvalidDomain, "parametric knots need N_k+1 entries");
        for (int i = 1; i <= extents[k]; ++i)
            if (!(knots[k][i - 1] < knots[k][i]))
                throw Error(ErrorKind::InvalidDomain, "parametric knots must increase strictly");
    }
}

} // namespace tmesh
