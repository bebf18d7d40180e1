// knotspec command-line front end. Each subcommand maps to one library
// operation and writes a versioned JSON artifact (stdout unless --out).

#include <cstdio>
#include <iostream>
#include <optional>
#include <sstream>

#include <CLI11.hpp>

#include "knotspec/config.hpp"
#include "knotspec/curve.hpp"
#include "knotspec/diagram.hpp"
#include "knotspec/errors.hpp"
#include "knotspec/invariants.hpp"
#include "knotspec/moves.hpp"
#include "knotspec/projection.hpp"
#include "knotspec/rng.hpp"
#include "knotspec/secants.hpp"
#include "knotspec/serialize.hpp"
#include "knotspec/spectrum.hpp"

using namespace knotspec;

namespace {

enum Exit { ok = 0, input = 1, refused = 2, assertion = 3 };

struct CurveInput {
    std::string path;
    std::string bundled;
    std::optional<std::size_t> open_at;

    void add(CLI::App* app, bool with_open_at = true)
    {
        app->add_option("--curve", path, "curve file");
        app->add_option("--bundled", bundled, "bundled curve name (3_1, 4_1, 5_2, kinoshita_terasaka, conway, ...)");
        if (with_open_at) app->add_option("--open-at", open_at, "open a closed curve at this vertex");
    }

    PolyCurve load() const
    {
        if (!path.empty() && !bundled.empty()) throw InputError("give either --curve or --bundled, not both");
        if (!path.empty()) return read_curve(path);
        if (!bundled.empty()) return load_bundled(bundled).with_label(bundled);
        throw InputError("a curve is required (--curve or --bundled)");
    }

    OpenCurve load_open() const
    {
        const PolyCurve c = load();
        if (c.closed()) {
            if (!open_at) throw InputError("curve is closed; pass --open-at to choose the opened vertex");
            return open_at_vertex(c);
        }
        if (open_at) throw InputError("--open-at applies to closed curves only");
        return OpenCurve(c);
    }

    OpenCurve open_at_vertex(const PolyCurve& c) const { return knotspec::open_at(c, *open_at); }
};

void add_common(CLI::App* app, RunConfig& cfg)
{
    app->add_option("--seed", cfg.seed, "top-level seed");
    app->add_option("--workers", cfg.workers, "worker threads (never changes output)");
    app->add_option("--out", cfg.output, "output path (default stdout)");
}

void add_spectrum_knobs(CLI::App* app, RunConfig& cfg)
{
    app->add_option("--dirs", cfg.directions, "projection directions per curve")->check(CLI::PositiveNumber);
    app->add_option_function<std::string>(
        "--scheme", [&cfg](const std::string& s) { cfg.scheme = parse_direction_scheme(s); },
        "direction scheme: uniform | fibonacci");
    app->add_option("--cap", cfg.bracket_cap, "bracket crossing cap");
    app->add_option("--budget", cfg.simplify_budget, "simplification move budget");
    app->add_option("--r3-depth", cfg.r3_depth, "R3 exploration depth");
    app->add_option("--max-retries", cfg.max_retries, "resampling attempts per degenerate direction");
    app->add_option("--degenerate-tol", cfg.degenerate_tol, "projection degeneracy tolerance (relative)");
    app->add_flag("--strict-knot-type", cfg.strict_knot_type, "fail when an open curve shows two knot-type classes");
    app->add_option("--csv", cfg.csv, "also write the entries table as CSV");
}

void emit(const RunConfig& cfg, const Json& j)
{
    const std::string text = dump(j);
    if (cfg.output.empty())
        std::cout << text;
    else
        write_text_file(cfg.output, text);
}

std::vector<double> parse_numbers(const std::string& s)
{
    std::vector<double> out;
    std::string tok;
    std::istringstream in(s);
    while (std::getline(in, tok, ',')) {
        try {
            std::size_t used = 0;
            out.push_back(std::stod(tok, &used));
            if (used != tok.size()) throw std::invalid_argument(tok);
        } catch (const std::exception&) {
            throw InputError("bad number '" + tok + "'");
        }
    }
    return out;
}

Vec3 parse_vec(const std::string& s)
{
    const auto v = parse_numbers(s);
    if (v.size() != 3) throw InputError("expected x,y,z");
    return {v[0], v[1], v[2]};
}

std::vector<std::size_t> parse_bases(const std::string& s, std::size_t n)
{
    std::vector<std::size_t> out;
    if (s.empty() || s == "all") return out;
    for (double x : parse_numbers(s)) {
        if (x < 0 || x >= static_cast<double>(n) || x != static_cast<double>(static_cast<std::size_t>(x)))
            throw InputError("base index out of range", "bad_index");
        out.push_back(static_cast<std::size_t>(x));
    }
    return out;
}

std::map<std::string, std::string> input_provenance(const PolyCurve& c, const std::string& command)
{
    return {{"command", command}, {"curve", format_curve(c)}, {"curve_label", c.label()}};
}

void merge(std::map<std::string, std::string>& into, const std::map<std::string, std::string>& from)
{
    for (const auto& [k, v] : from) into.emplace(k, v);
}

Spectrum apply_view(const Spectrum& s, const std::string& view)
{
    if (view.empty()) return s;
    if (view == "pkspec") return pkspec(s);
    if (view.rfind("H", 0) == 0) return height_subset(s, std::stoi(view.substr(1)));
    throw InputError("unknown view '" + view + "' (pkspec or H<m>)");
}

// -- spectrum computations shared with `reproduce` --------------------------

Spectrum run_spectrum_open(const PolyCurve& c, std::optional<std::size_t> open_at, const RunConfig& cfg)
{
    OpenCurve l = c.closed() ? (open_at ? knotspec::open_at(c, *open_at)
                                        : throw InputError("curve is closed; pass --open-at"))
                             : OpenCurve(c);
    Spectrum s = knotoid_spectrum(l, cfg.spectrum_options());
    merge(s.provenance, input_provenance(c, "spectrum-open"));
    if (open_at) s.provenance["open_at"] = std::to_string(*open_at);
    merge(s.provenance, cfg.echo());
    return s;
}

Spectrum run_spectrum_knot(const PolyCurve& c, const std::string& bases, const std::string& view, const RunConfig& cfg)
{
    if (!c.closed()) throw InputError("spectrum-knot needs a closed curve");
    KnotSpectrumOptions o = cfg.knot_options();
    o.bases = parse_bases(bases, c.vertex_count());
    Spectrum s = apply_view(knot_spectrum(c, o), view);
    merge(s.provenance, input_provenance(c, "spectrum-knot"));
    s.provenance["bases_arg"] = bases.empty() ? "all" : bases;
    s.provenance["view_arg"] = view;
    merge(s.provenance, cfg.echo());
    return s;
}

std::map<std::string, std::string> json_strings(const Json& j)
{
    std::map<std::string, std::string> m;
    for (const auto& [k, v] : j.items()) m[k] = v.get<std::string>();
    return m;
}

PolyCurve curve_from_provenance(const std::map<std::string, std::string>& p)
{
    auto it = p.find("curve");
    if (it == p.end()) throw InputError("artifact has no embedded curve", "bad_artifact");
    auto label = p.find("curve_label");
    return parse_curve(it->second, label == p.end() ? "" : label->second);
}

std::optional<double> opt_at(const std::map<std::string, std::string>& p)
{
    auto it = p.find("at");
    if (it == p.end() || it->second.empty()) return std::nullopt;
    return std::stod(it->second);
}

std::string fmt(double x)
{
    std::ostringstream s;
    s.precision(17);
    s << x;
    return s.str();
}

Json run_fmeasure(const OpenCurve& l, const PolyCurve& source, std::optional<std::size_t> open_at,
                  std::optional<double> at, const RunConfig& cfg)
{
    const FMeasureResult f = f_measure(l, cfg.spectrum_options(), at);
    auto prov = input_provenance(source, "fmeasure");
    if (open_at) prov["open_at"] = std::to_string(*open_at);
    prov["at"] = at ? fmt(*at) : "";
    prov["invariant"] = "normalized Jones (knotoid)";
    merge(prov, cfg.echo());
    return fmeasure_json(f, prov);
}

Json run_quadrisecants(const PolyCurve& c, const RunConfig& cfg, QuadrisecantReport* out = nullptr)
{
    QuadrisecantOptions o;
    o.tol = cfg.quadrisecant_tol;
    o.workers = cfg.workers;
    QuadrisecantReport r = find_quadrisecants(c, o);
    const GenericityReport g = genericity_check(c, cfg.genericity_tol * c.diameter());
    if (!g.all_pass()) r.warnings.push_back("curve fails the genericity check; quadrisecants may not be isolated");
    auto prov = input_provenance(c, "quadrisecants");
    merge(prov, cfg.echo());
    Json j = quadrisecants_json(r, c, prov);
    j["genericity"] = genericity_json(g);
    if (out) *out = std::move(r);
    return j;
}

Json reproduce(const Json& artifact, unsigned workers)
{
    const auto prov = json_strings(artifact.at("provenance"));
    RunConfig cfg = RunConfig::from_echo(prov);
    cfg.workers = workers;
    const std::string command = prov.count("command") ? prov.at("command") : "";
    const PolyCurve c = curve_from_provenance(prov);
    std::optional<std::size_t> open_at;
    if (auto it = prov.find("open_at"); it != prov.end()) open_at = std::stoul(it->second);
    if (command == "spectrum-open") return spectrum_json(run_spectrum_open(c, open_at, cfg));
    if (command == "spectrum-knot")
        return spectrum_json(run_spectrum_knot(c, prov.at("bases_arg") == "all" ? "" : prov.at("bases_arg"),
                                               prov.at("view_arg"), cfg));
    if (command == "fmeasure") {
        const OpenCurve l = c.closed() ? knotspec::open_at(c, open_at.value()) : OpenCurve(c);
        return run_fmeasure(l, c, open_at, opt_at(prov), cfg);
    }
    if (command == "quadrisecants") return run_quadrisecants(c, cfg);
    throw InputError("artifact command '" + command + "' cannot be reproduced", "bad_artifact");
}

Diagram diagram_input(const std::string& code, const CurveInput& ci, const std::string& xi)
{
    if (!code.empty()) {
        if (!ci.path.empty() || !ci.bundled.empty()) throw InputError("give either --code or a curve, not both");
        return Diagram::parse(code);
    }
    if (xi.empty()) throw InputError("projecting a curve needs --xi x,y,z");
    PolyCurve c = ci.load();
    if (c.closed() && ci.open_at) c = ci.open_at_vertex(c).curve();
    return project(c, parse_vec(xi)).to_diagram();
}

std::vector<Vec3> read_vector_file(const std::string& path)
{
    const PolyCurve dummy = read_curve(path); // same text format, header "open"
    return dummy.vertices();
}

int error_exit(const Error& e, int code)
{
    Json env = {{"error", {{"code", e.code()}, {"message", e.what()}, {"exit", code}}}};
    std::cerr << env.dump() << "\n";
    return code;
}

} // namespace

int main(int argc, char** argv)
{
    CLI::App app{"knotoid spectra of open curves and knot neighborhoods"};
    app.require_subcommand(1);
    RunConfig cfg;
    CurveInput ci;

    // spectrum-open
    auto* so = app.add_subcommand("spectrum-open", "knotoid spectrum of an open curve");
    ci.add(so);
    add_common(so, cfg);
    add_spectrum_knobs(so, cfg);

    // spectrum-knot
    std::string bases = "all", view;
    auto* sk = app.add_subcommand("spectrum-knot", "spectrum of the open-curve neighborhood of a knot");
    ci.add(sk, false);
    add_common(sk, cfg);
    add_spectrum_knobs(sk, cfg);
    sk->add_option("--h-frac", cfg.h_frac, "h as a fraction of the tube radius")->check(CLI::Range(0.0, 1.0));
    sk->add_option("--h-abs", cfg.h, "absolute h (overrides --h-frac)");
    sk->add_option("--bases", bases, "'all' or comma-separated vertex indices");
    sk->add_option("--per-base", cfg.per_base, "neighborhood samples per base")->check(CLI::PositiveNumber);
    sk->add_option("--view", view, "pkspec or H<m> (height-bound subset)");

    // jones / height / closure
    std::string code, xi, kind = "under";
    auto* jo = app.add_subcommand("jones", "bracket and normalized Jones of a diagram");
    auto* he = app.add_subcommand("height", "diagrammatic height and closure path");
    auto* cl = app.add_subcommand("closure", "over / under / virtual closure");
    for (auto* sub : {jo, he, cl}) {
        sub->add_option("--code", code, "diagram code (k:... or c:...)");
        ci.add(sub);
        sub->add_option("--xi", xi, "projection direction x,y,z for curve input");
        sub->add_option("--cap", cfg.bracket_cap, "bracket crossing cap");
        sub->add_option("--budget", cfg.simplify_budget, "simplification move budget");
        sub->add_option("--out", cfg.output, "output path");
    }
    cl->add_option("--kind", kind, "over | under | virtual");

    // quadrisecants
    bool with_height3 = false;
    Height3Options h3;
    auto* qs = app.add_subcommand("quadrisecants", "isolated quadrisecants and alternation classes");
    ci.add(qs, false);
    add_common(qs, cfg);
    qs->add_option("--tol", cfg.quadrisecant_tol, "tolerance relative to the diameter");
    qs->add_option("--genericity-tol", cfg.genericity_tol, "genericity tolerance relative to the diameter");
    qs->add_option("--csv", cfg.csv, "class counts as CSV");
    qs->add_flag("--height3", with_height3, "project near each quadrisecant and report heights");
    qs->add_option("--cone", h3.cone, "cone radius (radians) for --height3");
    qs->add_option("--cone-dirs", h3.directions, "directions per quadrisecant for --height3");
    qs->add_option("--point", h3.point, "hit (0..3, curve order) whose edge is opened");

    // fmeasure
    std::optional<double> at;
    auto* fm = app.add_subcommand("fmeasure", "mean normalized Jones over projection directions");
    ci.add(fm);
    add_common(fm, cfg);
    add_spectrum_knobs(fm, cfg);
    fm->add_option("--at", at, "also evaluate at this real value of A");

    // fgradient
    std::size_t base = 0;
    std::string vector_file;
    std::optional<std::uint64_t> vector_seed;
    bool in_plane = false;
    double eps = 0;
    auto* fg = app.add_subcommand("fgradient", "directional derivative of the f-measure at K_x");
    ci.add(fg, false);
    add_common(fg, cfg);
    add_spectrum_knobs(fg, cfg);
    fg->add_option("--base", base, "opened vertex x");
    fg->add_option("--vector", vector_file, "file with one 3-vector per vertex (curve format, header 'open')");
    fg->add_option("--random-vector", vector_seed, "seed for a random unit-bounded vector");
    fg->add_flag("--in-plane", in_plane, "zero the z components of the vector");
    fg->add_option("--eps", eps, "step (default 1e-3 x diameter)");
    fg->add_option("--at", at, "also evaluate at this real value of A");

    // compare
    std::string file_a, file_b;
    bool compare_pk = false;
    auto* cp = app.add_subcommand("compare", "fingerprint-set comparison of two spectra");
    cp->add_option("a", file_a, "spectrum JSON")->required();
    cp->add_option("b", file_b, "spectrum JSON")->required();
    cp->add_flag("--pkspec", compare_pk, "compare pure-knotoid parts only");
    cp->add_option("--out", cfg.output, "output path");

    // neighborhood-sample
    std::size_t count = 1;
    std::string out_dir;
    auto* ns = app.add_subcommand("neighborhood-sample", "jittered open curves near K_x");
    ci.add(ns, false);
    add_common(ns, cfg);
    ns->add_option("--base", base, "opened vertex x");
    ns->add_option("--h-frac", cfg.h_frac, "h as a fraction of the tube radius")->check(CLI::Range(0.0, 1.0));
    ns->add_option("--h-abs", cfg.h, "absolute h (overrides --h-frac)");
    ns->add_option("--count", count, "number of samples")->check(CLI::PositiveNumber);
    ns->add_option("--dir", out_dir, "also write each sample as a curve file into this directory");

    // gen-curve
    std::string gen_kind;
    std::string gen_params;
    auto* gc = app.add_subcommand("gen-curve", "write a generated curve");
    gc->add_option("kind", gen_kind, "planar_ngon | torus_knot | braid")->required();
    gc->add_option("--params", gen_params, "comma-separated parameters (ngon: n[,r]; torus: p,q,n; braid: strands,word...)");
    gc->add_option("--out", cfg.output, "output path");

    // genericity / project / reproduce
    auto* ge = app.add_subcommand("genericity", "genericity diagnostics (i)-(iii)");
    ci.add(ge, false);
    ge->add_option("--tol", cfg.genericity_tol, "tolerance relative to the diameter");
    ge->add_option("--out", cfg.output, "output path");
    auto* pr = app.add_subcommand("project", "raw projected diagram along one direction");
    ci.add(pr);
    pr->add_option("--xi", xi, "direction x,y,z")->required();
    pr->add_option("--out", cfg.output, "output path");
    std::string artifact;
    auto* rp = app.add_subcommand("reproduce", "recompute an artifact from its embedded provenance");
    rp->add_option("artifact", artifact, "JSON artifact")->required();
    rp->add_option("--workers", cfg.workers, "worker threads");
    rp->add_option("--out", cfg.output, "output path");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        if (e.get_exit_code() == 0) return app.exit(e);
        Json env = {{"error", {{"code", "usage"}, {"message", e.what()}, {"exit", 1}}}};
        std::cerr << env.dump() << "\n";
        return Exit::input;
    }

    try {
        if (so->parsed()) {
            const PolyCurve c = ci.load();
            const Spectrum s = run_spectrum_open(c, ci.open_at, cfg);
            if (!cfg.csv.empty()) write_text_file(cfg.csv, spectrum_csv(s));
            emit(cfg, spectrum_json(s));
        } else if (sk->parsed()) {
            const Spectrum s = run_spectrum_knot(ci.load(), bases == "all" ? "" : bases, view, cfg);
            if (!cfg.csv.empty()) write_text_file(cfg.csv, spectrum_csv(s));
            emit(cfg, spectrum_json(s));
        } else if (jo->parsed() || he->parsed() || cl->parsed()) {
            const Diagram d = diagram_input(code, ci, xi);
            Json j = {{"code", d.code()}, {"closed", d.closed()}, {"crossings", d.crossing_count()}};
            if (jo->parsed()) {
                j["schema"] = "knotspec.invariants/1";
                j["writhe"] = writhe(d);
                // The bracket of the input diagram needs it under the cap; the
                // Jones polynomial can come from a simplified diagram.
                if (d.crossing_count() <= cfg.bracket_cap) j["bracket"] = polynomial_json(bracket(d, cfg.bracket_cap));
                Diagram small = d;
                if (d.crossing_count() > cfg.bracket_cap) {
                    SimplifyOptions so;
                    so.budget = cfg.simplify_budget;
                    so.r3_depth = cfg.r3_depth;
                    small = simplify(d, so).diagram;
                    j["simplified_code"] = small.code();
                    j["simplified_crossings"] = small.crossing_count();
                }
                j["jones"] = polynomial_json(jones_normalized(small, cfg.bracket_cap));
                if (!d.closed()) {
                    FingerprintOptions fo;
                    fo.cap = cfg.bracket_cap;
                    const FingerprintResult fr = fingerprint(d, fo);
                    if (fr.fingerprint) {
                        j["under_jones"] = polynomial_json(fr.fingerprint->under_jones);
                        j["over_jones"] = polynomial_json(fr.fingerprint->over_jones);
                        j["height_bound"] = fr.fingerprint->height_bound;
                        j["knot_type"] = fr.fingerprint->knot_type;
                    } else {
                        j["unresolved"] = true;
                    }
                }
            } else if (he->parsed()) {
                j["schema"] = "knotspec.height/1";
                j["height"] = diagrammatic_height(d);
                const FaceStructure f = faces(d);
                j["faces"] = f.face_count();
                j["euler_characteristic"] = f.euler_characteristic();
                if (!d.closed()) {
                    j["leg_face"] = f.leg_face;
                    j["head_face"] = f.head_face;
                    Json path = Json::array();
                    for (const PathStep& s : closure_path(d))
                        path.push_back({{"arc", s.arc}, {"left_to_right", s.left_to_right}});
                    j["closure_path"] = path;
                }
                j["note"] = "height of this diagram; the knotoid height is at most this value";
            } else {
                const ClosureResult r = closure(d, parse_closure_kind(kind));
                j["schema"] = "knotspec.closure/1";
                j["kind"] = to_string(r.kind);
                j["closure_code"] = r.diagram.code();
                j["closure_crossings"] = r.closure_crossings;
                if (r.kind != ClosureKind::virtual_) j["jones"] = polynomial_json(jones_normalized(r.diagram, cfg.bracket_cap));
            }
            emit(cfg, j);
        } else if (qs->parsed()) {
            const PolyCurve c = ci.load();
            QuadrisecantReport r;
            Json j = run_quadrisecants(c, cfg, &r);
            if (with_height3) {
                Json list = Json::array();
                for (std::size_t i = 0; i < r.secants.size(); ++i) {
                    Height3Options o = h3;
                    o.seed = derive_seed(cfg.seed, "height3", {i});
                    list.push_back(height3_json(height3_link(c, r.secants[i], o), {}));
                }
                j["height3"] = list;
            }
            if (!cfg.csv.empty()) write_text_file(cfg.csv, quadrisecants_csv(r));
            emit(cfg, j);
        } else if (fm->parsed()) {
            const PolyCurve c = ci.load();
            const OpenCurve l = ci.load_open();
            Json j = run_fmeasure(l, c, ci.open_at, at, cfg);
            emit(cfg, j);
        } else if (fg->parsed()) {
            const PolyCurve c = ci.load();
            std::vector<Vec3> v;
            if (!vector_file.empty()) {
                v = read_vector_file(vector_file);
            } else if (vector_seed) {
                Rng rng(derive_seed(*vector_seed, "vector"));
                for (std::size_t i = 0; i < c.vertex_count(); ++i)
                    v.push_back({rng.uniform(-1, 1), rng.uniform(-1, 1), rng.uniform(-1, 1)});
            } else {
                throw InputError("fgradient needs --vector or --random-vector");
            }
            if (in_plane)
                for (Vec3& x : v) x.z = 0;
            const FMeasureResult f = f_gradient(c, base, v, eps, cfg.spectrum_options(), at);
            auto prov = input_provenance(c, "fgradient");
            prov["base"] = std::to_string(base);
            prov["eps"] = fmt(eps > 0 ? eps : 1e-3 * c.diameter());
            Json vj = Json::array();
            for (const Vec3& x : v) vj.push_back({x.x, x.y, x.z});
            prov["vector"] = vj.dump();
            merge(prov, cfg.echo());
            Json j = fmeasure_json(f, prov);
            j["kind"] = "central difference with common directions";
            emit(cfg, j);
        } else if (cp->parsed()) {
            Spectrum a = spectrum_from_json(load_json_file(file_a));
            Spectrum b = spectrum_from_json(load_json_file(file_b));
            if (compare_pk) {
                a = pkspec(a);
                b = pkspec(b);
            }
            Json j = comparison_json(compare(a, b));
            j["pkspec_only"] = compare_pk;
            emit(cfg, j);
        } else if (ns->parsed()) {
            const PolyCurve c = ci.load();
            const double tube = tube_radius(c);
            const double h = cfg.h > 0 ? cfg.h : cfg.h_frac * tube;
            const auto samples = sample_neighborhood(c, base, h, count, cfg.seed);
            Json list = Json::array();
            for (std::size_t i = 0; i < samples.size(); ++i) {
                list.push_back(curve_json(samples[i].curve()));
                if (!out_dir.empty())
                    write_curve(samples[i].curve(), out_dir + "/sample_" + std::to_string(i) + ".txt");
            }
            auto prov = input_provenance(c, "neighborhood-sample");
            prov["base"] = std::to_string(base);
            prov["h"] = fmt(h);
            prov["tube_radius"] = fmt(tube);
            merge(prov, cfg.echo());
            Json provj = Json::object();
            for (const auto& [k, v] : prov) provj[k] = v;
            emit(cfg, {{"schema", kCurvesSchema}, {"provenance", provj}, {"curves", list}});
        } else if (gc->parsed()) {
            const PolyCurve c = make_curve(gen_kind, gen_params.empty() ? std::vector<double>{} : parse_numbers(gen_params));
            if (cfg.output.empty())
                std::cout << format_curve(c);
            else
                write_curve(c, cfg.output);
        } else if (ge->parsed()) {
            const PolyCurve c = ci.load();
            emit(cfg, genericity_json(genericity_check(c, cfg.genericity_tol * c.diameter())));
        } else if (pr->parsed()) {
            PolyCurve c = ci.load();
            if (c.closed() && ci.open_at) c = ci.open_at_vertex(c).curve();
            emit(cfg, raw_diagram_json(project(c, parse_vec(xi))));
        } else if (rp->parsed()) {
            emit(cfg, reproduce(load_json_file(artifact), cfg.workers));
        }
    } catch (const AssertionFailure& e) {
        return error_exit(e, Exit::assertion);
    } catch (const ComputationRefused& e) {
        return error_exit(e, Exit::refused);
    } catch (const SamplingError& e) {
        return error_exit(e, Exit::refused);
    } catch (const Error& e) {
        return error_exit(e, Exit::input);
    } catch (const std::exception& e) {
        Json env = {{"error", {{"code", "internal"}, {"message", e.what()}, {"exit", 3}}}};
        std::cerr << env.dump() << "\n";
        return Exit::assertion;
    }
    return Exit::ok;
}
