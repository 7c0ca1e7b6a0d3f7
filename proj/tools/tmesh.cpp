// tmesh: command-line front end for building, refining and classifying T-meshes.
//
// Exit codes: 0 ok, 1 a requested check failed, 2 precondition violated,
// 3 non-integer midpoint, 4 malformed input, 5 bad command line.

#include "tmesh/dual_compat.hpp"
#include "tmesh/errors.hpp"
#include "tmesh/fixtures.hpp"
#include "tmesh/io.hpp"
#include "tmesh/suitability.hpp"
#include "tmesh/verify.hpp"

#include <CLI11.hpp>

#include <fstream>
#include <iostream>
#include <sstream>

using namespace tmesh;
using io::json;

namespace {

enum Exit { kOk = 0, kCheckFailed = 1, kPrecondition = 2, kMidpoint = 3, kMalformed = 4, kUsage = 5 };

std::vector<std::string> split(const std::string& s, char sep)
{
    std::vector<std::string> out;
    std::stringstream in(s);
    std::string item;
    while (std::getline(in, item, sep))
        out.push_back(item);
    return out;
}

std::vector<int> int_list(const std::string& s)
{
    std::vector<int> out;
    for (const auto& t : split(s, ','))
        try {
            out.push_back(std::stoi(t));
        } catch (const std::logic_error&) {
            throw Error(ErrorKind::MalformedInput, "not an integer list: '" + s + "'");
        }
    return out;
}

void write_text(const std::string& path, const std::string& text)
{
    if (path.empty() || path == "-") {
        std::cout << text;
        return;
    }
    std::ofstream out(path);
    if (!out)
        throw Error(ErrorKind::MalformedInput, "cannot write " + path);
    out << text;
}

const char* yes(bool b) { return b ? "yes" : "no"; }

json tj_json(const TJunction& t)
{
    return {{"entity", t.entity.str()}, {"odir", t.odir + 1}, {"pdir", t.pdir + 1}, {"ascell", t.ascell.str()}};
}

json box_json(const Box& b, int d) { return io::region_to_json(BoxRegion(d, {b})); }

// ---- new ----

struct NewArgs {
    int dim = 2;
    std::string extents, degrees, breakpoints, out;
};

int cmd_new(const NewArgs& a)
{
    auto ext = int_list(a.extents);
    auto deg = int_list(a.degrees);
    if (static_cast<int>(ext.size()) != a.dim || static_cast<int>(deg.size()) != a.dim)
        throw Error(ErrorKind::PreconditionViolated, "--extents and --degrees need --dim entries");
    std::vector<std::vector<int>> bp;
    if (a.breakpoints.empty()) {
        for (int n : ext) {
            bp.emplace_back();
            for (int i = 0; i <= n; ++i)
                bp.back().push_back(i);
        }
    } else {
        for (const auto& row : split(a.breakpoints, ';'))
            bp.push_back(int_list(row));
    }
    TMesh m = create_tensor_mesh(IndexDomain::make(ext, deg), bp);
    write_text(a.out, io::mesh_to_json(m).dump(1) + "\n");
    return kOk;
}

// ---- refine ----

struct RefineArgs {
    std::string mesh, at, out;
    int dir = 1;
};

int cmd_refine(const RefineArgs& a)
{
    TMesh m = io::load_mesh(a.mesh);
    std::vector<Rat> pt;
    for (const auto& t : split(a.at, ','))
        pt.push_back(parse_rational(t));
    if (static_cast<int>(pt.size()) != m.dim())
        throw Error(ErrorKind::PreconditionViolated, "--at needs one coordinate per direction");
    if (a.dir < 1 || a.dir > m.dim())
        throw Error(ErrorKind::PreconditionViolated, "--dir must be in 1.." + std::to_string(m.dim()));
    m = subdiv_at(m, pt, a.dir - 1);
    std::string out = a.out.empty() ? a.mesh : a.out;
    write_text(out, io::mesh_to_json(m).dump(1) + "\n");
    return kOk;
}

// ---- check ----

struct CheckArgs {
    std::string mesh, which = "all", report;
};

int cmd_check(const CheckArgs& a)
{
    TMesh m = io::load_mesh(a.mesh);
    int d = m.dim();
    std::vector<std::string> which;
    if (a.which == "all")
        which = {"admissible", "aas", "sgas", "wgas", "sdc", "wdc"};
    else
        which = split(a.which, ',');

    AnchorTable tab(m);
    std::vector<GeometricExtension> g;
    bool have_g = false;
    auto gtjs = [&]() -> const std::vector<GeometricExtension>& {
        if (!have_g)
            g = all_gtj(m);
        have_g = true;
        return g;
    };

    json report = {{"format_version", io::kFormatVersion}, {"checks", json::object()}};
    bool all_ok = true;
    for (const auto& w : which) {
        json entry;
        bool ok = false;
        if (w == "admissible") {
            auto r = is_admissible(m);
            ok = r.admissible;
            entry["witnesses"] = r.violations;
        } else if (w == "aas") {
            auto r = is_aas(m, tab);
            ok = r.aas;
            entry["witnesses"] = json::array();
            for (const auto& x : r.witnesses)
                entry["witnesses"].push_back({{"i", x.i + 1},
                                              {"n", x.n},
                                              {"j", x.j + 1},
                                              {"m", x.m},
                                              {"intersection", io::region_to_json(x.intersection)}});
        } else if (w == "sgas" || w == "wgas") {
            auto r = w == "sgas" ? is_sgas(m, gtjs()) : is_wgas(m, gtjs());
            ok = r.ok;
            entry["witnesses"] = json::array();
            for (const auto& x : r.witnesses)
                entry["witnesses"].push_back(
                    {{"first", tj_json(x.first)}, {"second", tj_json(x.second)}, {"intersection", box_json(x.intersection, d)}});
        } else if (w == "sdc" || w == "wdc") {
            auto r = w == "sdc" ? is_sdc(m, tab) : is_wdc(m, tab);
            ok = r.ok;
            entry["witnesses"] = json::array();
            for (const auto& x : r.witnesses) {
                std::vector<bool> ov(x.overlap.begin(), x.overlap.end());
                entry["witnesses"].push_back({{"first", x.first.str()},
                                              {"second", x.second.str()},
                                              {"first_vectors", x.v1},
                                              {"second_vectors", x.v2},
                                              {"overlap", ov}});
            }
        } else {
            throw Error(ErrorKind::PreconditionViolated, "unknown check '" + w + "'");
        }
        entry["verdict"] = ok;
        all_ok = all_ok && ok;
        std::string label = w;
        for (auto& c : label)
            c = static_cast<char>(std::toupper(static_cast<unsigned char>(c)));
        if (w == "admissible")
            label = "admissible";
        std::cout << label << ": " << yes(ok);
        if (!ok)
            std::cout << " (" << entry["witnesses"].size() << " witnesses)";
        std::cout << "\n";
        for (std::size_t i = 0; i < entry["witnesses"].size() && i < 5 && !ok; ++i)
            std::cout << "  " << entry["witnesses"][i].dump() << "\n";
        report["checks"][w] = entry;
    }
    if (!a.report.empty())
        write_text(a.report, report.dump(1) + "\n");
    return all_ok ? kOk : kCheckFailed;
}

// ---- lin-indep ----

struct LinArgs {
    std::string mesh;
    double threshold = 1e-8;
};

int cmd_lin_indep(const LinArgs& a)
{
    TMesh m = io::load_mesh(a.mesh);
    auto r = verify::linear_independence_rank(m, a.threshold);
    std::cout << "anchors: " << r.anchors << "\n"
              << "rank: " << r.rank << "\n"
              << "rows: " << r.rows << "\n"
              << "independent: " << yes(r.independent) << "\n"
              << "stable over [1e-10, 1e-6]: " << yes(r.stable) << "\n";
    return r.independent ? kOk : kCheckFailed;
}

// ---- verify ----

struct VerifyArgs {
    std::string suite, out;
    int seeds = 200;
    std::uint64_t seed = 1;
};

json summary_json(const verify::CheckSummary& s)
{
    return {{"meshes", s.meshes},
            {"applicable", s.applicable},
            {"failures", s.failures},
            {"messages", s.messages},
            {"failing_seeds", s.failing_seeds}};
}

int cmd_verify(const VerifyArgs& a)
{
    json report = {{"format_version", io::kFormatVersion}, {"suite", a.suite}, {"first_seed", a.seed}};
    bool ok = true;
    auto print = [](const std::string& what, const verify::CheckSummary& s, const char* unit = "meshes") {
        if (std::string(unit) == "meshes")
            std::cout << what << ": " << s.applicable << " of " << s.meshes << " meshes checked, ";
        else
            std::cout << what << ": " << s.applicable << " " << unit << " on " << s.meshes << " meshes, ";
        std::cout << s.failures << " failures\n";
        for (const auto& m : s.messages)
            std::cout << "  " << m << "\n";
    };
    if (a.suite == "thm61" || a.suite == "thm62") {
        auto c = verify::corpus(a.seed, a.seeds);
        auto s = a.suite == "thm61" ? verify::crosscheck_aas_sdc(c) : verify::crosscheck_sgas_aas(c);
        print(a.suite == "thm61" ? "AAS == SDC" : "SGAS => AAS, ATJ in GTJ", s);
        report["result"] = summary_json(s);
        json dumps = json::array();
        for (auto seed : s.failing_seeds)
            for (const auto& g : c)
                if (g.seed == seed)
                    dumps.push_back(io::mesh_to_json(g.mesh));
        report["failing_meshes"] = dumps;
        ok = s.failures == 0;
    } else if (a.suite == "conj63") {
        auto c = verify::wgas_corpus(a.seed, a.seeds);
        auto rep = verify::conjecture_wgas_wdc(c, verify::wgas_options);
        std::cout << "WGAS meshes: " << rep.wgas << " of " << rep.meshes << "\n"
                  << "candidate counterexamples (WGAS, not WDC): " << rep.candidates.size() << "\n";
        json cands = json::array();
        for (const auto& x : rep.candidates) {
            std::cout << "  seed " << x.seed << ": " << x.witness << "\n";
            cands.push_back({{"seed", x.seed}, {"witness", x.witness}, {"mesh", io::mesh_to_json(x.mesh)}});
        }
        report["meshes"] = rep.meshes;
        report["wgas"] = rep.wgas;
        report["candidates"] = cands;
        report["replay_failures"] = rep.replay_failures;
        ok = rep.replay_failures == 0;
    } else if (a.suite == "props") {
        auto c = verify::corpus(a.seed, a.seeds);
        verify::CheckSummary sep, dich, over;
        for (const auto& g : c) {
            auto add = [](verify::CheckSummary& into, const verify::CheckSummary& s) {
                into.meshes += s.meshes;
                into.applicable += s.applicable;
                into.failures += s.failures;
                for (const auto& m : s.messages)
                    into.messages.push_back(m);
            };
            add(sep, verify::property_separating_tjunction(g.mesh, 1000, g.seed));
            if (is_wgas(g.mesh).ok)
                add(dich, verify::property_projection_dichotomy(g.mesh));
            if (is_sgas(g.mesh).ok)
                add(over, verify::property_sgas_overlap(g.mesh));
        }
        print("separating T-junction", sep, "probes");
        print("projection dichotomy (WGAS)", dich, "projections");
        print("anchor/T-junction overlap (SGAS)", over, "pairs");
        report["separating"] = summary_json(sep);
        report["dichotomy"] = summary_json(dich);
        report["overlap"] = summary_json(over);
        ok = sep.failures + dich.failures + over.failures == 0;
    } else {
        throw Error(ErrorKind::PreconditionViolated, "unknown suite '" + a.suite + "'");
    }
    if (!a.out.empty())
        write_text(a.out, report.dump(1) + "\n");
    return ok ? kOk : kCheckFailed;
}

// ---- export ----

struct ExportArgs {
    std::string mesh, slice, layers = "skeleton", out;
};

int cmd_export(const ExportArgs& a)
{
    TMesh m = io::load_mesh(a.mesh);
    io::SvgOptions opt;
    if (!a.slice.empty()) {
        auto kv = split(a.slice, '=');
        if (kv.size() != 2)
            throw Error(ErrorKind::PreconditionViolated, "--slice expects k=n");
        auto k = int_list(kv[0]), n = int_list(kv[1]);
        opt.dir = k.at(0) - 1;
        opt.index = n.at(0);
    }
    opt.skeleton = false;
    for (const auto& l : split(a.layers, ',')) {
        if (l == "skeleton")
            opt.skeleton = true;
        else if (l == "atj")
            opt.atj = true;
        else if (l == "gtj")
            opt.gtj = true;
        else if (l == "anchors")
            opt.anchors = true;
        else
            throw Error(ErrorKind::PreconditionViolated, "unknown layer '" + l + "'");
    }
    write_text(a.out, io::render_svg(m, opt));
    return kOk;
}

// ---- fixture ----

struct FixtureArgs {
    std::string name, degrees, out;
};

int cmd_fixture(const FixtureArgs& a)
{
    std::vector<int> p = a.degrees.empty() ? std::vector<int>{} : int_list(a.degrees);
    auto need = [&](std::size_t n) {
        if (p.size() != n)
            throw Error(ErrorKind::PreconditionViolated, a.name + " needs --degrees with " + std::to_string(n) + " entries");
    };
    TMesh m;
    if (a.name == "fig10") {
        need(1);
        m = fixtures::fig10(p[0]).mesh;
    } else if (a.name == "fig10e") {
        m = fixtures::fig10e().mesh;
    } else if (a.name == "fig11") {
        need(3);
        m = fixtures::fig11(p[0], p[1], p[2]).mesh;
    } else if (a.name == "fig12") {
        m = fixtures::fig12().mesh;
    } else if (a.name == "fig7") {
        m = fixtures::fig7();
    } else if (a.name == "fig6") {
        m = fixtures::fig6();
    } else if (a.name == "fig5a") {
        m = fixtures::fig5a().mesh;
    } else if (a.name == "fig5b") {
        m = fixtures::fig5b().mesh;
    } else {
        throw Error(ErrorKind::PreconditionViolated, "unknown fixture '" + a.name + "'");
    }
    write_text(a.out, io::mesh_to_json(m).dump(1) + "\n");
    return kOk;
}

int exit_code(const Error& e)
{
    switch (e.kind()) {
    case ErrorKind::NonIntegerMidpoint:
        return kMidpoint;
    case ErrorKind::MalformedInput:
        return kMalformed;
    default:
        return kPrecondition;
    }
}

} // namespace

int main(int argc, char** argv)
{
    CLI::App app{"Build, refine and classify T-meshes"};
    app.require_subcommand(1);

    NewArgs na;
    auto* sn = app.add_subcommand("new", "create a tensor mesh");
    sn->add_option("--dim", na.dim, "dimension")->required();
    sn->add_option("--extents", na.extents, "N_1,..,N_d")->required();
    sn->add_option("--degrees", na.degrees, "p_1,..,p_d")->required();
    sn->add_option("--breakpoints", na.breakpoints, "per direction, ';'-separated lists (default: every index)");
    sn->add_option("--out", na.out, "output file (default stdout)");

    RefineArgs ra;
    auto* sr = app.add_subcommand("refine", "bisect the cell containing a point");
    sr->add_option("--mesh", ra.mesh, "mesh file")->required();
    sr->add_option("--at", ra.at, "x_1,..,x_d (rationals as num/den)")->required();
    sr->add_option("--dir", ra.dir, "direction, 1-based")->required();
    sr->add_option("--out", ra.out, "output file (default: overwrite --mesh)");

    CheckArgs ca;
    auto* sc = app.add_subcommand("check", "classify a mesh");
    sc->add_option("--mesh", ca.mesh, "mesh file")->required();
    sc->add_option("--which", ca.which, "admissible|aas|sgas|wgas|sdc|wdc|all, comma-separated");
    sc->add_option("--report", ca.report, "write a JSON report");

    LinArgs la;
    auto* sl = app.add_subcommand("lin-indep", "numerical rank of the T-spline basis");
    sl->add_option("--mesh", la.mesh, "mesh file")->required();
    sl->add_option("--threshold", la.threshold, "relative singular value threshold");

    VerifyArgs va;
    auto* sv = app.add_subcommand("verify", "run a cross-check suite over random meshes");
    sv->add_option("--suite", va.suite, "thm61|thm62|conj63|props")->required();
    sv->add_option("--seeds", va.seeds, "number of meshes");
    sv->add_option("--seed", va.seed, "first seed");
    sv->add_option("--out", va.out, "write a JSON report");

    ExportArgs ea;
    auto* se = app.add_subcommand("export", "render a mesh or a 2D slice as SVG");
    se->add_option("--mesh", ea.mesh, "mesh file")->required();
    se->add_option("--slice", ea.slice, "k=n (required for 3D meshes)");
    se->add_option("--layers", ea.layers, "skeleton,atj,gtj,anchors");
    se->add_option("--out", ea.out, "output file (default stdout)");

    FixtureArgs fa;
    auto* sf = app.add_subcommand("fixture", "write one of the built-in example meshes");
    sf->add_option("--name", fa.name, "fig5a|fig5b|fig6|fig7|fig10|fig10e|fig11|fig12")->required();
    sf->add_option("--degrees", fa.degrees, "degrees for fig10 (p_1) and fig11 (p_1,p_2,p_3)");
    sf->add_option("--out", fa.out, "output file (default stdout)");

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::CallForAllHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return kUsage;
    }

    try {
        if (*sn)
            return cmd_new(na);
        if (*sr)
            return cmd_refine(ra);
        if (*sc)
            return cmd_check(ca);
        if (*sl)
            return cmd_lin_indep(la);
        if (*sv)
            return cmd_verify(va);
        if (*se)
            return cmd_export(ea);
        if (*sf)
            return cmd_fixture(fa);
    } catch (const Error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return exit_code(e);
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kPrecondition;
    }
    return kUsage;
}
