#include "tmesh/io.hpp"
#include "tmesh/anchors.hpp"
#include "tmesh/errors.hpp"
#include "tmesh/suitability.hpp"

#include <fstream>
#include <sstream>

namespace tmesh::io {

namespace {

template <class T>
T field(const json& j, const char* key)
{
    if (!j.is_object() || !j.contains(key))
        throw Error(ErrorKind::MalformedInput, std::string("missing field '") + key + "'");
    try {
        return j.at(key).get<T>();
    } catch (const json::exception& e) {
        throw Error(ErrorKind::MalformedInput, std::string("field '") + key + "': " + e.what());
    }
}

std::string fmt(double v)
{
    std::ostringstream s;
    s << v;
    return s.str();
}

} // namespace

json rat_to_json(const Rat& q)
{
    if (q.denominator() == 1)
        return q.numerator();
    return to_string(q);
}

Rat rat_from_json(const json& j)
{
    if (j.is_number_integer())
        return Rat(j.get<std::int64_t>());
    if (j.is_string()) {
        try {
            return parse_rational(j.get<std::string>());
        } catch (const std::exception& e) {
            throw Error(ErrorKind::MalformedInput, "bad rational " + j.dump());
        }
    }
    throw Error(ErrorKind::MalformedInput, "expected an integer or a \"num/den\" string, got " + j.dump());
}

json mesh_to_json(const TMesh& mesh)
{
    const auto& dom = mesh.domain();
    json knots = json::array();
    for (const auto& kv : dom.knots) {
        json row = json::array();
        for (const auto& q : kv)
            row.push_back(rat_to_json(q));
        knots.push_back(row);
    }
    json refs = json::array();
    for (const auto& r : mesh.refinement_log()) {
        json pt = json::array();
        for (const auto& q : r.cell.center())
            pt.push_back(rat_to_json(q));
        refs.push_back({{"point", pt}, {"direction", r.dir + 1}});
    }
    return {
        {"format_version", kFormatVersion},
        {"dim", dom.dim},
        {"extents", dom.extents},
        {"degrees", dom.degrees},
        {"parametric_knots", knots},
        {"breakpoints", mesh.initial_breakpoints()},
        {"refinements", refs},
    };
}

TMesh mesh_from_json(const json& j)
{
    int version = field<int>(j, "format_version");
    if (version != kFormatVersion)
        throw Error(ErrorKind::MalformedInput, "unsupported format_version " + std::to_string(version));
    int dim = field<int>(j, "dim");
    auto ext = field<std::vector<int>>(j, "extents");
    auto deg = field<std::vector<int>>(j, "degrees");
    auto bp = field<std::vector<std::vector<int>>>(j, "breakpoints");
    if (static_cast<int>(ext.size()) != dim)
        throw Error(ErrorKind::MalformedInput, "extents do not match dim");

    std::vector<std::vector<Rat>> knots;
    if (j.contains("parametric_knots")) {
        const auto& pk = j.at("parametric_knots");
        if (!pk.is_array())
            throw Error(ErrorKind::MalformedInput, "parametric_knots must be an array");
        for (const auto& row : pk) {
            if (!row.is_array())
                throw Error(ErrorKind::MalformedInput, "parametric_knots rows must be arrays");
            knots.emplace_back();
            for (const auto& q : row)
                knots.back().push_back(rat_from_json(q));
        }
    }
    TMesh m = create_tensor_mesh(IndexDomain::make(ext, deg, knots), bp);

    if (j.contains("refinements")) {
        const auto& refs = j.at("refinements");
        if (!refs.is_array())
            throw Error(ErrorKind::MalformedInput, "refinements must be an array");
        for (const auto& r : refs) {
            if (!r.is_object() || !r.contains("point") || !r.at("point").is_array())
                throw Error(ErrorKind::MalformedInput, "refinement needs a point");
            std::vector<Rat> pt;
            for (const auto& q : r.at("point"))
                pt.push_back(rat_from_json(q));
            if (static_cast<int>(pt.size()) != dim)
                throw Error(ErrorKind::MalformedInput, "refinement point has the wrong dimension");
            int dir = field<int>(r, "direction");
            if (dir < 1 || dir > dim)
                throw Error(ErrorKind::MalformedInput, "refinement direction out of range");
            m = subdiv_at(m, pt, dir - 1);
        }
    }
    return m;
}

json parse_file(const std::string& path)
{
    std::ifstream in(path);
    if (!in)
        throw Error(ErrorKind::MalformedInput, "cannot read " + path);
    try {
        return json::parse(in);
    } catch (const json::parse_error& e) {
        throw Error(ErrorKind::MalformedInput, path + ": " + e.what());
    }
}

TMesh load_mesh(const std::string& path) { return mesh_from_json(parse_file(path)); }

void save_mesh(const TMesh& mesh, const std::string& path)
{
    std::ofstream out(path);
    if (!out)
        throw Error(ErrorKind::MalformedInput, "cannot write " + path);
    out << mesh_to_json(mesh).dump(1) << "\n";
}

json region_to_json(const BoxRegion& r)
{
    json out = json::array();
    BoxRegion n = r.normalized();
    for (const auto& b : n.boxes()) {
        json box = json::array();
        for (const auto& c : b.components()) {
            if (c.is_point())
                box.push_back(json::object({{"point", rat_to_json(c.lo)}}));
            else
                box.push_back(json::object({{"interval", json::array({rat_to_json(c.lo), rat_to_json(c.hi)})}}));
        }
        out.push_back(box);
    }
    return out;
}

BoxRegion region_from_json(const json& j, int dim)
{
    if (!j.is_array())
        throw Error(ErrorKind::MalformedInput, "region must be an array of boxes");
    BoxRegion r(dim);
    for (const auto& b : j) {
        if (!b.is_array() || static_cast<int>(b.size()) != dim)
            throw Error(ErrorKind::MalformedInput, "box has the wrong dimension");
        std::vector<Interval1> c;
        for (const auto& comp : b) {
            if (comp.contains("point")) {
                Rat q = rat_from_json(comp.at("point"));
                c.push_back({q, q});
            } else if (comp.contains("interval") && comp.at("interval").is_array() && comp.at("interval").size() == 2) {
                c.push_back({rat_from_json(comp.at("interval")[0]), rat_from_json(comp.at("interval")[1])});
            } else {
                throw Error(ErrorKind::MalformedInput, "component needs 'point' or 'interval'");
            }
        }
        r.add(Box(std::move(c)));
    }
    return r;
}

namespace {

struct Plane {
    int a = 0, b = 1; // drawn directions
    int k = -1, n = 0;
};

Plane plane_of(const TMesh& mesh, const SvgOptions& opt)
{
    Plane p;
    if (mesh.dim() == 2 && opt.dir < 0)
        return p;
    if (mesh.dim() != 3 || opt.dir < 0 || opt.dir > 2)
        throw Error(ErrorKind::PreconditionViolated, "SVG export needs a 2D mesh or a slice k=n of a 3D mesh");
    if (opt.index < 0 || opt.index > mesh.extent(opt.dir))
        throw Error(ErrorKind::PreconditionViolated, "slice index out of range");
    p.k = opt.dir;
    p.n = opt.index;
    p.a = opt.dir == 0 ? 1 : 0;
    p.b = opt.dir == 2 ? 1 : 2;
    return p;
}

class Svg {
public:
    Svg(const TMesh& mesh, const Plane& p, double scale) : p_(p), s_(scale)
    {
        w_ = mesh.extent(p.a) * s_ + 2 * pad_;
        h_ = mesh.extent(p.b) * s_ + 2 * pad_;
        ext_b_ = mesh.extent(p.b);
    }

    double x(double u) const { return pad_ + u * s_; }
    double y(double v) const { return pad_ + (ext_b_ - v) * s_; }

    void line(double u0, double v0, double u1, double v1, const std::string& style)
    {
        out_ << "<line x1=\"" << fmt(x(u0)) << "\" y1=\"" << fmt(y(v0)) << "\" x2=\"" << fmt(x(u1)) << "\" y2=\""
             << fmt(y(v1)) << "\" " << style << "/>\n";
    }
    void rect(double u0, double v0, double u1, double v1, const std::string& style)
    {
        out_ << "<rect x=\"" << fmt(x(u0)) << "\" y=\"" << fmt(y(v1)) << "\" width=\"" << fmt((u1 - u0) * s_)
             << "\" height=\"" << fmt((v1 - v0) * s_) << "\" " << style << "/>\n";
    }
    void circle(double u, double v, const std::string& style)
    {
        out_ << "<circle cx=\"" << fmt(x(u)) << "\" cy=\"" << fmt(y(v)) << "\" r=\"" << fmt(s_ / 8) << "\" " << style
             << "/>\n";
    }
    void raw(const std::string& s) { out_ << s; }

    std::string str() const
    {
        std::ostringstream o;
        o << "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n"
          << "<svg xmlns=\"http://www.w3.org/2000/svg\" version=\"1.1\" width=\"" << fmt(w_) << "\" height=\""
          << fmt(h_) << "\" data-format-version=\"" << kFormatVersion << "\">\n"
          << out_.str() << "</svg>\n";
        return o.str();
    }

private:
    Plane p_;
    double s_, pad_ = 10, w_ = 0, h_ = 0;
    int ext_b_ = 0;
    std::ostringstream out_;
};

// a box of the slice, in drawing coordinates
void box_shape(Svg& svg, const Box& b, const Plane& p, const std::string& fill, const std::string& stroke)
{
    double u0 = boost::rational_cast<double>(b[p.a].lo), u1 = boost::rational_cast<double>(b[p.a].hi);
    double v0 = boost::rational_cast<double>(b[p.b].lo), v1 = boost::rational_cast<double>(b[p.b].hi);
    if (u0 == u1 || v0 == v1)
        svg.line(u0, v0, u1, v1, "stroke=\"" + stroke + "\" stroke-width=\"5\" stroke-opacity=\"0.5\"");
    else
        svg.rect(u0, v0, u1, v1, "fill=\"" + fill + "\" fill-opacity=\"0.45\" stroke=\"none\"");
}

} // namespace

SliceLayers slice_layers(const TMesh& mesh, const SvgOptions& opt)
{
    Plane p = plane_of(mesh, opt);
    SliceLayers out;
    AnchorTable tab(mesh);
    auto g = all_gtj(mesh);
    for (int i = 0; i < mesh.dim(); ++i) {
        BoxRegion a = atj_region(mesh, tab, i), t = gtj_region(mesh, g, i);
        if (p.k >= 0) {
            BoxRegion s = slice_region(mesh, p.k, p.n);
            a = intersect(a, s);
            t = intersect(t, s);
        }
        out.atj.push_back(a.normalized());
        out.gtj.push_back(t.normalized());
    }
    return out;
}

std::string render_svg(const TMesh& mesh, const SvgOptions& opt)
{
    Plane p = plane_of(mesh, opt);
    Svg svg(mesh, p, opt.scale);
    int na = 2 * mesh.extent(p.a), nb = 2 * mesh.extent(p.b);
    std::vector<int> u(mesh.dim(), 0);
    if (p.k >= 0)
        u[p.k] = 2 * p.n;
    auto bits = [&](int ua, int ub) {
        u[p.a] = ua;
        u[p.b] = ub;
        return mesh.skeleton_bits(mesh.lattice().offset(u));
    };

    SliceLayers layers;
    if (opt.atj || opt.gtj)
        layers = slice_layers(mesh, opt);

    if (p.k >= 0 && opt.skeleton) {
        // faces of the slice plane that belong to Sk_k, merged along rows
        svg.raw("<g id=\"slice-faces\">\n");
        for (int ub = 1; ub < nb; ub += 2)
            for (int ua = 1; ua < na; ua += 2) {
                if (!(bits(ua, ub) >> p.k & 1))
                    continue;
                int end = ua;
                while (end + 2 < na && (bits(end + 2, ub) >> p.k & 1))
                    end += 2;
                svg.rect((ua - 1) / 2.0, (ub - 1) / 2.0, (end + 1) / 2.0, (ub + 1) / 2.0,
                         "fill=\"#dddddd\" stroke=\"none\"");
                ua = end;
            }
        svg.raw("</g>\n");
    }

    auto region_group = [&](const char* kind, const std::vector<BoxRegion>& regs, const char* colour) {
        for (int i = 0; i < mesh.dim(); ++i) {
            if (regs[i].is_empty())
                continue;
            svg.raw(std::string("<g id=\"") + kind + "-" + std::to_string(i + 1) + "\" data-direction=\"" +
                    std::to_string(i + 1) + "\" data-region='" + region_to_json(regs[i]).dump() + "'>\n");
            for (const auto& b : regs[i].boxes())
                box_shape(svg, b, p, colour, colour);
            svg.raw("</g>\n");
        }
    };
    if (opt.gtj)
        region_group("gtj", layers.gtj, "#4a7fd0");
    if (opt.atj)
        region_group("atj", layers.atj, "#e0a020");

    if (opt.skeleton) {
        svg.raw("<g id=\"skeleton\" stroke=\"black\" stroke-width=\"1.5\">\n");
        // segments parallel to b lying in Sk_a, then parallel to a lying in Sk_b
        for (int ua = 0; ua <= na; ua += 2)
            for (int ub = 1; ub < nb; ub += 2) {
                if (!(bits(ua, ub) >> p.a & 1))
                    continue;
                int end = ub;
                while (end + 2 < nb && (bits(ua, end + 2) >> p.a & 1))
                    end += 2;
                svg.line(ua / 2.0, (ub - 1) / 2.0, ua / 2.0, (end + 1) / 2.0, "");
                ub = end;
            }
        for (int ub = 0; ub <= nb; ub += 2)
            for (int ua = 1; ua < na; ua += 2) {
                if (!(bits(ua, ub) >> p.b & 1))
                    continue;
                int end = ua;
                while (end + 2 < na && (bits(end + 2, ub) >> p.b & 1))
                    end += 2;
                svg.line((ua - 1) / 2.0, ub / 2.0, (end + 1) / 2.0, ub / 2.0, "");
                ua = end;
            }
        svg.raw("</g>\n");
    }

    if (opt.anchors) {
        svg.raw("<g id=\"anchors\" fill=\"#c02020\" stroke=\"#c02020\">\n");
        for (const auto& a : anchor_set(mesh)) {
            if (p.k >= 0 && (a[p.k].lo > p.n || a[p.k].hi < p.n))
                continue;
            double u0 = a[p.a].lo, u1 = a[p.a].hi, v0 = a[p.b].lo, v1 = a[p.b].hi;
            if (u0 == u1 && v0 == v1)
                svg.circle(u0, v0, "");
            else if (u0 == u1 || v0 == v1)
                svg.line(u0, v0, u1, v1, "stroke-width=\"2\" stroke-dasharray=\"2,3\"");
            else
                svg.rect(u0 + 0.15, v0 + 0.15, u1 - 0.15, v1 - 0.15, "fill=\"none\" stroke-dasharray=\"2,3\"");
        }
        svg.raw("</g>\n");
    }
    return svg.str();
}

} // namespace tmesh::io
