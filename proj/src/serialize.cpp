#include "knotspec/serialize.hpp"

#include <cmath>
#include <fstream>
#include <sstream>

#include "knotspec/errors.hpp"

namespace knotspec {

namespace {

Json interval_json(const Interval& i) { return Json::array({i.low, i.high}); }

Interval interval_from_json(const Json& j) { return {j.at(0).get<double>(), j.at(1).get<double>()}; }

Json vec_json(const Vec3& v) { return Json::array({v.x, v.y, v.z}); }
Json vec_json(const Vec2& v) { return Json::array({v.x, v.y}); }

Json string_map(const std::map<std::string, std::string>& m)
{
    Json out = Json::object();
    for (const auto& [k, v] : m) out[k] = v;
    return out;
}

Json number_map(const std::map<int, double>& m)
{
    Json out = Json::object();
    for (const auto& [k, v] : m) out[std::to_string(k)] = v;
    return out;
}

template <class T>
Json count_map(const std::map<int, T>& m)
{
    Json out = Json::object();
    for (const auto& [k, v] : m) out[std::to_string(k)] = v;
    return out;
}

std::string csv_field(const std::string& s)
{
    if (s.find_first_of(",\"\n") == std::string::npos) return s;
    std::string out = "\"";
    for (char c : s) {
        if (c == '"') out += '"';
        out += c;
    }
    return out + "\"";
}

std::string fmt(double x)
{
    std::ostringstream s;
    s.precision(17);
    s << x;
    return s.str();
}

} // namespace

Json polynomial_json(const LaurentPolynomial& p)
{
    Json terms = Json::object();
    for (const auto& [e, c] : p.terms()) terms[std::to_string(e)] = c;
    return {{"text", p.to_string()}, {"terms", terms}};
}

LaurentPolynomial polynomial_from_json(const Json& j)
{
    const LaurentPolynomial p = LaurentPolynomial::parse(j.at("text").get<std::string>());
    std::map<int, std::int64_t> terms;
    for (const auto& [e, c] : j.at("terms").items()) terms[std::stoi(e)] = c.get<std::int64_t>();
    if (LaurentPolynomial::from_terms(terms) != p) throw InputError("polynomial text and terms disagree", "bad_artifact");
    return p;
}

Json curve_json(const PolyCurve& c)
{
    Json v = Json::array();
    for (const Vec3& p : c.vertices()) v.push_back(vec_json(p));
    return {{"label", c.label()}, {"closed", c.closed()}, {"vertices", v}};
}

PolyCurve curve_from_json(const Json& j)
{
    std::vector<Vec3> v;
    for (const auto& p : j.at("vertices")) v.push_back({p.at(0).get<double>(), p.at(1).get<double>(), p.at(2).get<double>()});
    return PolyCurve(std::move(v), j.at("closed").get<bool>(), j.value("label", std::string{}));
}

Json spectrum_json(const Spectrum& s)
{
    Json entries = Json::array();
    for (const SpectrumEntry& e : s.entries) {
        entries.push_back({
            {"key", e.key},
            {"jones", polynomial_json(e.fingerprint.jones)},
            {"under_jones", polynomial_json(e.fingerprint.under_jones)},
            {"over_jones", polynomial_json(e.fingerprint.over_jones)},
            {"height_bound", e.fingerprint.height_bound},
            {"knot_type", e.fingerprint.knot_type},
            {"count", e.count},
            {"probability", e.probability},
            {"ci", interval_json(e.ci)},
            {"low_confidence", e.low_confidence},
            {"exceeds_height_ceiling", e.exceeds_height_ceiling},
            {"representative", e.representative},
        });
    }
    Json bases = Json::array();
    for (const BaseRecord& b : s.bases) {
        bases.push_back({
            {"vertex", b.vertex},
            {"samples", b.samples},
            {"projections", b.projections},
            {"unresolved", b.unresolved},
            {"knot_type_keys", b.knot_type_keys},
            {"h_stability_mismatches", b.h_stability_mismatches},
        });
    }
    return {
        {"schema", kSpectrumSchema},
        {"kind", s.kind},
        {"label", s.label},
        {"provenance", string_map(s.provenance)},
        {"total", s.total},
        {"unresolved", s.unresolved},
        {"unresolved_mass", s.unresolved_mass},
        {"unresolved_ci", interval_json(s.unresolved_ci)},
        {"degenerate_resamples", s.degenerate_resamples},
        {"budget_exhausted", s.budget_exhausted},
        {"height_increases", s.height_increases},
        {"knot_type_conflicts", s.knot_type_conflicts},
        {"height_note", "height_bound is an upper bound on the knotoid height"},
        {"entries", entries},
        {"bases", bases},
        {"warnings", s.warnings},
    };
}

Spectrum spectrum_from_json(const Json& j)
{
    try {
        if (j.at("schema").get<std::string>() != kSpectrumSchema)
            throw InputError("unsupported spectrum schema " + j.at("schema").dump(), "bad_artifact");
        Spectrum s;
        s.kind = j.at("kind").get<std::string>();
        s.label = j.at("label").get<std::string>();
        for (const auto& [k, v] : j.at("provenance").items()) s.provenance[k] = v.get<std::string>();
        s.total = j.at("total").get<std::uint64_t>();
        s.unresolved = j.at("unresolved").get<std::uint64_t>();
        s.unresolved_mass = j.at("unresolved_mass").get<double>();
        s.unresolved_ci = interval_from_json(j.at("unresolved_ci"));
        s.degenerate_resamples = j.at("degenerate_resamples").get<std::uint64_t>();
        s.budget_exhausted = j.at("budget_exhausted").get<std::uint64_t>();
        s.height_increases = j.at("height_increases").get<std::uint64_t>();
        s.knot_type_conflicts = j.at("knot_type_conflicts").get<std::uint64_t>();
        for (const Json& e : j.at("entries")) {
            SpectrumEntry x;
            x.key = e.at("key").get<std::string>();
            x.fingerprint.jones = polynomial_from_json(e.at("jones"));
            x.fingerprint.under_jones = polynomial_from_json(e.at("under_jones"));
            x.fingerprint.over_jones = polynomial_from_json(e.at("over_jones"));
            x.fingerprint.height_bound = e.at("height_bound").get<int>();
            x.fingerprint.knot_type = e.at("knot_type").get<bool>();
            x.count = e.at("count").get<std::uint64_t>();
            x.probability = e.at("probability").get<double>();
            x.ci = interval_from_json(e.at("ci"));
            x.low_confidence = e.at("low_confidence").get<bool>();
            x.exceeds_height_ceiling = e.at("exceeds_height_ceiling").get<bool>();
            x.representative = e.at("representative").get<std::string>();
            if (x.key != x.fingerprint.key()) throw InputError("entry key does not match its polynomials", "bad_artifact");
            s.entries.push_back(std::move(x));
        }
        for (const Json& b : j.at("bases")) {
            BaseRecord r;
            r.vertex = b.at("vertex").get<std::size_t>();
            r.samples = b.at("samples").get<std::uint64_t>();
            r.projections = b.at("projections").get<std::uint64_t>();
            r.unresolved = b.at("unresolved").get<std::uint64_t>();
            r.knot_type_keys = b.at("knot_type_keys").get<std::vector<std::string>>();
            r.h_stability_mismatches = b.at("h_stability_mismatches").get<std::uint64_t>();
            s.bases.push_back(std::move(r));
        }
        s.warnings = j.at("warnings").get<std::vector<std::string>>();
        return s;
    } catch (const Json::exception& e) {
        throw InputError(std::string("malformed spectrum artifact: ") + e.what(), "bad_artifact");
    }
}

Json comparison_json(const Comparison& c)
{
    auto level = [](const ComparisonLevel& l) {
        return Json{{"height", l.height}, {"only_a", l.only_a}, {"only_b", l.only_b}, {"not_distinguished", l.common}};
    };
    Json by = Json::array();
    for (const auto& l : c.by_height) by.push_back(level(l));
    return {
        {"schema", kComparisonSchema},
        {"label_a", c.label_a},
        {"label_b", c.label_b},
        {"distinguished", c.distinguished()},
        {"note", "classes listed as not_distinguished share a fingerprint; this does not assert equivalence"},
        {"overall", level(c.overall)},
        {"by_height_bound", by},
        {"unresolved_mass_a", c.unresolved_mass_a},
        {"unresolved_mass_b", c.unresolved_mass_b},
    };
}

Json fmeasure_json(const FMeasureResult& f, const std::map<std::string, std::string>& provenance)
{
    Json j = {
        {"schema", kFMeasureSchema},
        {"provenance", string_map(provenance)},
        {"numerator", polynomial_json(f.numerator)},
        {"denominator", f.denominator},
        {"mean", number_map(f.mean)},
        {"standard_error", number_map(f.standard_error)},
        {"directions", f.directions},
        {"unresolved", f.unresolved},
        {"is_zero", f.is_zero()},
    };
    j["scalar"] = f.scalar ? Json(*f.scalar) : Json(nullptr);
    j["scalar_se"] = f.scalar_se ? Json(*f.scalar_se) : Json(nullptr);
    return j;
}

Json quadrisecants_json(const QuadrisecantReport& r, const PolyCurve& curve,
                        const std::map<std::string, std::string>& provenance)
{
    Json list = Json::array();
    for (const Quadrisecant& q : r.secants) {
        list.push_back({
            {"point", vec_json(q.point)},
            {"direction", vec_json(q.direction)},
            {"edges", q.edges},
            {"curve_params", q.curve_params},
            {"line_params", q.line_params},
            {"line_rank", q.line_rank},
            {"class", to_string(q.alternation)},
            {"residual", q.residual},
        });
    }
    Json degenerate = Json::array();
    for (const auto& d : r.degenerate) degenerate.push_back(d);
    Json counts = Json::object();
    for (const auto& [k, v] : r.class_counts()) counts[k] = v;
    return {
        {"schema", kQuadrisecantSchema},
        {"provenance", string_map(provenance)},
        {"edges", curve.edge_count()},
        {"tolerance", r.tolerance},
        {"quadruples", r.quadruples},
        {"count", r.secants.size()},
        {"class_counts", counts},
        {"upper_bound", quadrisecant_upper_bound(curve.edge_count())},
        {"merged", r.merged},
        {"degenerate_quadruples", degenerate},
        {"note", "alternation is order-based only; essentiality is not computed"},
        {"quadrisecants", list},
        {"warnings", r.warnings},
    };
}

Json raw_diagram_json(const RawDiagram& d)
{
    Json events = Json::array();
    for (const RawEvent& e : d.events)
        events.push_back({{"crossing", e.crossing}, {"over", e.over}, {"sign", e.sign}, {"position", e.position}});
    Json points = Json::array();
    for (const Vec2& p : d.crossing_points) points.push_back(vec_json(p));
    Json ends = Json::array();
    for (const Vec2& p : d.endpoints) ends.push_back(vec_json(p));
    return {
        {"schema", kDiagramSchema},
        {"label", d.label},
        {"xi", vec_json(d.xi)},
        {"closed", d.closed},
        {"events", events},
        {"crossing_points", points},
        {"endpoints", ends},
        {"code", d.to_diagram().code()},
    };
}

Json genericity_json(const GenericityReport& g)
{
    auto cond = [](const GenericityCondition& c) {
        Json j = {{"pass", c.pass}, {"offenders", c.offenders}, {"detail", c.detail}};
        j["residual"] = std::isfinite(c.residual) ? Json(c.residual) : Json(nullptr);
        return j;
    };
    return {
        {"schema", kGenericitySchema},
        {"tolerance", g.tolerance},
        {"all_pass", g.all_pass()},
        {"ruled_surface", cond(g.ruled_surface)},
        {"no_quintisecant", cond(g.no_quintisecant)},
        {"osculating", cond(g.osculating)},
    };
}

Json height3_json(const Height3Report& h, const std::map<std::string, std::string>& provenance)
{
    return {
        {"schema", kHeight3Schema},
        {"provenance", string_map(provenance)},
        {"base", h.base},
        {"opened_edge", h.opened_edge},
        {"cone", h.cone},
        {"directions", h.directions},
        {"degenerate", h.degenerate},
        {"height_counts", count_map(h.height_counts)},
        {"closure_arc_counts", count_map(h.closure_arc_counts)},
        {"max_height", h.max_height},
        {"max_closure_arc", h.max_closure_arc},
        {"height3_fraction", h.height3_fraction},
        {"closure_arc3_fraction", h.closure_arc3_fraction},
    };
}

std::string dump(const Json& j) { return j.dump(2) + "\n"; }

Json load_json_file(const std::string& path)
{
    std::ifstream in(path);
    if (!in) throw InputError("cannot open " + path, "io_error");
    try {
        return Json::parse(in);
    } catch (const Json::exception& e) {
        throw InputError(path + ": " + e.what(), "bad_json");
    }
}

void write_text_file(const std::string& path, const std::string& text)
{
    std::ofstream out(path, std::ios::binary);
    if (!out) throw InputError("cannot write " + path, "io_error");
    out << text;
    if (!out) throw InputError("write failed for " + path, "io_error");
}

std::string spectrum_csv(const Spectrum& s)
{
    std::string out = "jones,under_jones,over_jones,height_bound,knot_type,count,probability,ci_low,ci_high,low_confidence,"
                      "representative\n";
    for (const SpectrumEntry& e : s.entries) {
        out += csv_field(e.fingerprint.jones.to_string()) + "," + csv_field(e.fingerprint.under_jones.to_string()) + "," +
               csv_field(e.fingerprint.over_jones.to_string()) + "," + std::to_string(e.fingerprint.height_bound) + "," +
               (e.fingerprint.knot_type ? "true" : "false") + "," + std::to_string(e.count) + "," + fmt(e.probability) +
               "," + fmt(e.ci.low) + "," + fmt(e.ci.high) + "," + (e.low_confidence ? "true" : "false") + "," +
               csv_field(e.representative) + "\n";
    }
    if (s.unresolved > 0)
        out += "unresolved,,,,," + std::to_string(s.unresolved) + "," + fmt(s.unresolved_mass) + "," +
               fmt(s.unresolved_ci.low) + "," + fmt(s.unresolved_ci.high) + ",,\n";
    return out;
}

std::string quadrisecants_csv(const QuadrisecantReport& r)
{
    std::string out = "class,count\n";
    for (const auto& [k, v] : r.class_counts()) out += k + "," + std::to_string(v) + "\n";
    out += "total," + std::to_string(r.secants.size()) + "\n";
    return out;
}

} // namespace knotspec
