#include "knotspec/spectrum.hpp"

#include <algorithm>
#include <cmath>
#include <set>
#include <sstream>

#include "knotspec/errors.hpp"
#include "knotspec/parallel.hpp"
#include "knotspec/rng.hpp"

namespace knotspec {

Interval wilson_interval(std::uint64_t k, std::uint64_t n, double z)
{
    if (n == 0) return {0, 1};
    const double nn = static_cast<double>(n);
    const double p = static_cast<double>(k) / nn;
    const double z2 = z * z;
    const double denom = 1 + z2 / nn;
    const double center = (p + z2 / (2 * nn)) / denom;
    const double half = z * std::sqrt(p * (1 - p) / nn + z2 / (4 * nn * nn)) / denom;
    Interval ci{std::max(0.0, center - half), std::min(1.0, center + half)};
    // Guard the endpoints against rounding so that p lies inside.
    if (k == 0) ci.low = 0;
    if (k == n) ci.high = 1;
    ci.low = std::min(ci.low, p);
    ci.high = std::max(ci.high, p);
    return ci;
}

int Spectrum::knot_type_entries() const
{
    return static_cast<int>(std::count_if(entries.begin(), entries.end(),
                                          [](const SpectrumEntry& e) { return e.fingerprint.knot_type; }));
}

const SpectrumEntry* Spectrum::knot_type_entry() const
{
    for (const auto& e : entries)
        if (e.fingerprint.knot_type) return &e;
    return nullptr;
}

namespace {

std::string fmt(double x)
{
    std::ostringstream s;
    s.precision(17);
    s << x;
    return s.str();
}

struct ClassAcc {
    Fingerprint fp;
    std::uint64_t count = 0;
    std::string rep;
    int rep_crossings = 0;
};

struct Tally {
    std::map<std::string, ClassAcc> classes;
    std::uint64_t total = 0, unresolved = 0, degenerate = 0, failed = 0, exhausted = 0, increases = 0;

    void add(const FingerprintResult* r, int degenerate_attempts)
    {
        ++total;
        degenerate += static_cast<std::uint64_t>(degenerate_attempts);
        if (!r) {
            ++failed;
            ++unresolved;
            return;
        }
        if (r->budget_exhausted) ++exhausted;
        increases += static_cast<std::uint64_t>(r->height_increases);
        if (!r->fingerprint) {
            ++unresolved;
            return;
        }
        auto [it, inserted] = classes.try_emplace(r->key);
        ClassAcc& a = it->second;
        const int c = r->simplified.crossing_count();
        if (inserted) {
            a.fp = *r->fingerprint;
            a.rep = r->simplified.code();
            a.rep_crossings = c;
        } else {
            a.fp.height_bound = std::min(a.fp.height_bound, r->fingerprint->height_bound);
            if (std::tie(c, r->simplified.code()) < std::tie(a.rep_crossings, a.rep)) {
                a.rep = r->simplified.code();
                a.rep_crossings = c;
            }
        }
        a.fp.knot_type = a.fp.height_bound == 0;
        ++a.count;
    }

    void merge(const Tally& o)
    {
        total += o.total;
        unresolved += o.unresolved;
        degenerate += o.degenerate;
        failed += o.failed;
        exhausted += o.exhausted;
        increases += o.increases;
        for (const auto& [key, b] : o.classes) {
            auto [it, inserted] = classes.try_emplace(key, b);
            if (inserted) continue;
            ClassAcc& a = it->second;
            a.count += b.count;
            a.fp.height_bound = std::min(a.fp.height_bound, b.fp.height_bound);
            a.fp.knot_type = a.fp.height_bound == 0;
            if (std::tie(b.rep_crossings, b.rep) < std::tie(a.rep_crossings, a.rep)) {
                a.rep = b.rep;
                a.rep_crossings = b.rep_crossings;
            }
        }
    }
};

struct Classified {
    const FingerprintResult* result = nullptr; ///< null when every attempt was degenerate
    int degenerate_attempts = 0;
};

Classified classify(const PolyCurve& c, std::uint64_t dir_seed, std::size_t i, const SpectrumOptions& o,
                    FingerprintCache& cache)
{
    Classified out;
    for (int attempt = 0; attempt <= o.max_retries; ++attempt) {
        const Direction dir = direction_at(dir_seed, i, o.directions, o.scheme, attempt);
        try {
            const RawDiagram raw = project(c, dir.xi, o.degenerate_tol);
            out.result = &cache.get(raw.to_diagram());
            return out;
        } catch (const DegenerateProjection&) {
            ++out.degenerate_attempts;
        }
    }
    return out;
}

std::vector<FingerprintCache> make_caches(const SpectrumOptions& o)
{
    return std::vector<FingerprintCache>(std::max(1u, o.workers), FingerprintCache(o.fingerprint));
}

void common_provenance(Spectrum& s, const SpectrumOptions& o)
{
    s.provenance["seed"] = std::to_string(o.seed);
    s.provenance["directions"] = std::to_string(o.directions);
    s.provenance["direction_scheme"] = to_string(o.scheme);
    s.provenance["max_retries"] = std::to_string(o.max_retries);
    s.provenance["degenerate_tol"] = fmt(o.degenerate_tol);
    s.provenance["bracket_cap"] = std::to_string(o.fingerprint.cap);
    s.provenance["simplify_budget"] = std::to_string(o.fingerprint.simplify.budget);
    s.provenance["r3_depth"] = std::to_string(o.fingerprint.simplify.r3_depth);
    s.provenance["strict_knot_type"] = o.strict_knot_type ? "true" : "false";
    s.provenance["ci"] = "wilson95";
    s.provenance["height"] = "upper bound: minimum diagrammatic height over visited diagrams";
    s.provenance["class_identity"] = "fingerprint coincidence means not distinguished";
}

void finish(Spectrum& s, const Tally& t, std::size_t directions_requested)
{
    s.total = t.total;
    s.unresolved = t.unresolved;
    s.degenerate_resamples = t.degenerate;
    s.budget_exhausted = t.exhausted;
    s.height_increases = t.increases;
    const double n = static_cast<double>(std::max<std::uint64_t>(t.total, 1));
    s.unresolved_mass = static_cast<double>(t.unresolved) / n;
    s.unresolved_ci = wilson_interval(t.unresolved, t.total);
    s.entries.clear();
    for (const auto& [key, a] : t.classes) {
        SpectrumEntry e;
        e.key = key;
        e.fingerprint = a.fp;
        e.count = a.count;
        e.probability = static_cast<double>(a.count) / n;
        e.ci = wilson_interval(a.count, t.total);
        e.low_confidence = a.count < 5;
        e.exceeds_height_ceiling = a.fp.height_bound > kHeightCeiling;
        e.representative = a.rep;
        if (e.exceeds_height_ceiling)
            s.warnings.push_back("class with height bound " + std::to_string(a.fp.height_bound) +
                                 " exceeds the ceiling of 3; flagged for review: " + a.rep);
        s.entries.push_back(std::move(e));
    }
    if (t.failed > 0) {
        if (static_cast<double>(t.failed) > 0.01 * static_cast<double>(directions_requested))
            throw SamplingError("persistent degeneracy: " + std::to_string(t.failed) +
                                " directions stayed degenerate after all retries");
        s.warnings.push_back(std::to_string(t.failed) + " directions stayed degenerate and are counted as unresolved");
    }
    if (t.exhausted > 0)
        s.warnings.push_back(std::to_string(t.exhausted) + " projections exhausted the simplification budget");
    if (t.increases > 0)
        s.warnings.push_back(std::to_string(t.increases) + " simplification steps increased the diagrammatic height");
}

constexpr std::size_t kChunk = 64;

Tally tally_directions(const PolyCurve& c, std::uint64_t dir_seed, const SpectrumOptions& o)
{
    const std::size_t chunks = (o.directions + kChunk - 1) / kChunk;
    std::vector<Tally> parts(chunks);
    auto caches = make_caches(o);
    parallel_for(chunks, std::max(1u, o.workers), [&](std::size_t k, unsigned w) {
        const std::size_t end = std::min(o.directions, (k + 1) * kChunk);
        for (std::size_t i = k * kChunk; i < end; ++i) {
            const Classified r = classify(c, dir_seed, i, o, caches[w]);
            parts[k].add(r.result, r.degenerate_attempts);
        }
    });
    Tally t;
    for (const Tally& p : parts) t.merge(p);
    return t;
}

int knot_type_classes(const Tally& t)
{
    int k = 0;
    for (const auto& [key, a] : t.classes)
        if (a.fp.knot_type) ++k;
    return k;
}

} // namespace

Spectrum knotoid_spectrum(const OpenCurve& l, const SpectrumOptions& options)
{
    if (options.directions < 1) throw InputError("at least one direction is required");
    Spectrum s;
    s.kind = "open-curve";
    s.label = l.curve().label();
    common_provenance(s, options);
    s.provenance["label"] = s.label;
    s.provenance["vertices"] = std::to_string(l.curve().vertex_count());
    s.provenance["gap"] = fmt(l.gap());
    const Tally t = tally_directions(l.curve(), derive_seed(options.seed, "dirs"), options);
    finish(s, t, options.directions);
    if (const int k = knot_type_classes(t); k > 1) {
        if (options.strict_knot_type)
            throw AssertionFailure("open-curve spectrum of " + s.label + " has " + std::to_string(k) + " knot-type classes");
        s.knot_type_conflicts = 1;
        s.warnings.push_back("knot-type uniqueness violated: " + std::to_string(k) + " knot-type classes");
    }
    return s;
}

Spectrum knot_spectrum(const PolyCurve& knot, const KnotSpectrumOptions& options)
{
    if (!knot.closed()) throw InputError("knot_spectrum needs a closed curve");
    const SpectrumOptions& so = options.spectrum;
    if (so.directions < 1 || options.per_base < 1) throw InputError("directions and samples per base must be positive");
    const double tube = tube_radius(knot);
    const double h = options.h > 0 ? options.h : options.h_frac * tube;
    if (!(h > 0) || !(h < tube))
        throw ComputationRefused("h = " + fmt(h) + " must lie in (0, tube radius = " + fmt(tube) +
                                     "); pick --h-frac in (0, 1)",
                                 "h_too_large");
    std::vector<std::size_t> bases = options.bases;
    if (bases.empty())
        for (std::size_t x = 0; x < knot.vertex_count(); ++x) bases.push_back(x);
    for (std::size_t x : bases)
        if (x >= knot.vertex_count()) throw InputError("base vertex " + std::to_string(x) + " out of range", "bad_index");

    const unsigned workers = std::max(1u, so.workers);
    const std::size_t nb = bases.size();

    // Neighborhood samples per base.
    std::vector<std::vector<OpenCurve>> samples(nb);
    parallel_for(nb, workers, [&](std::size_t b, unsigned) {
        samples[b] = sample_neighborhood(knot, bases[b], h, options.per_base,
                                         derive_seed(so.seed, "neighborhood"), options.neighborhood);
    });

    // Reference classes of K_x at the shared directions of each base.
    std::vector<std::vector<std::string>> reference(nb, std::vector<std::string>(so.directions));
    auto caches = make_caches(so);
    parallel_for(nb, workers, [&](std::size_t b, unsigned w) {
        const OpenCurve kx = open_at(knot, bases[b]);
        const std::uint64_t dir_seed = derive_seed(so.seed, "dirs", {bases[b]});
        for (std::size_t i = 0; i < so.directions; ++i) {
            const Classified r = classify(kx.curve(), dir_seed, i, so, caches[w]);
            if (r.result) reference[b][i] = r.result->key;
        }
    });

    struct Unit {
        Tally tally;
        std::uint64_t mismatches = 0;
        std::set<std::string> knot_keys;
    };
    const std::size_t units = nb * options.per_base;
    std::vector<Unit> out(units);
    parallel_for(units, workers, [&](std::size_t u, unsigned w) {
        const std::size_t b = u / options.per_base;
        const std::size_t k = u % options.per_base;
        const PolyCurve& c = samples[b][k].curve();
        const std::uint64_t dir_seed = derive_seed(so.seed, "dirs", {bases[b]});
        Unit& unit = out[u];
        for (std::size_t i = 0; i < so.directions; ++i) {
            const Classified r = classify(c, dir_seed, i, so, caches[w]);
            unit.tally.add(r.result, r.degenerate_attempts);
            const std::string key = r.result ? r.result->key : std::string();
            if (key != reference[b][i]) ++unit.mismatches;
            if (r.result && r.result->fingerprint && r.result->fingerprint->knot_type) unit.knot_keys.insert(key);
        }
        if (unit.knot_keys.size() > 1 && so.strict_knot_type)
            throw AssertionFailure("neighborhood sample " + c.label() + " has " +
                                   std::to_string(unit.knot_keys.size()) + " knot-type classes");
    });

    Spectrum s;
    s.kind = "knot-neighborhood";
    s.label = knot.label();
    common_provenance(s, so);
    s.provenance["label"] = knot.label();
    s.provenance["vertices"] = std::to_string(knot.vertex_count());
    s.provenance["tube_radius"] = fmt(tube);
    s.provenance["h"] = fmt(h);
    s.provenance["h_frac"] = fmt(options.h_frac);
    s.provenance["h_abs"] = fmt(options.h);
    s.provenance["h_over_tube"] = fmt(h / tube);
    s.provenance["per_base"] = std::to_string(options.per_base);
    s.provenance["jitter_amplitude"] = fmt(options.neighborhood.amplitude);
    s.provenance["jitter_max_attempts"] = std::to_string(options.neighborhood.max_attempts);
    s.provenance["weights"] = "uniform over (base, sample, direction)";
    {
        std::string list;
        for (std::size_t x : bases) list += (list.empty() ? "" : ",") + std::to_string(x);
        s.provenance["bases"] = list;
    }

    Tally all;
    std::uint64_t mismatches = 0;
    for (std::size_t b = 0; b < nb; ++b) {
        BaseRecord rec;
        rec.vertex = bases[b];
        rec.samples = options.per_base;
        std::set<std::string> keys;
        Tally base_tally;
        for (std::size_t k = 0; k < options.per_base; ++k) {
            const Unit& unit = out[b * options.per_base + k];
            if (unit.knot_keys.size() > 1) ++s.knot_type_conflicts;
            base_tally.merge(unit.tally);
            rec.h_stability_mismatches += unit.mismatches;
            keys.insert(unit.knot_keys.begin(), unit.knot_keys.end());
        }
        rec.projections = base_tally.total;
        rec.unresolved = base_tally.unresolved;
        rec.knot_type_keys.assign(keys.begin(), keys.end());
        if (keys.size() != 1)
            s.warnings.push_back("base " + std::to_string(rec.vertex) + ": " + std::to_string(keys.size()) +
                                 " knot-type classes observed (expected exactly one)");
        mismatches += rec.h_stability_mismatches;
        all.merge(base_tally);
        s.bases.push_back(std::move(rec));
    }
    std::set<std::string> knot_keys;
    for (const auto& rec : s.bases) knot_keys.insert(rec.knot_type_keys.begin(), rec.knot_type_keys.end());
    if (s.knot_type_conflicts > 0)
        s.warnings.push_back("knot-type uniqueness violated in " + std::to_string(s.knot_type_conflicts) +
                             " neighborhood samples (" + std::to_string(knot_keys.size()) + " knot-type classes overall)");
    if (mismatches > 0)
        s.warnings.push_back("h-stability: " + std::to_string(mismatches) +
                             " sampled projections differ in class from K_x at the matched direction; consider a smaller h");
    finish(s, all, units * so.directions);
    return s;
}

Spectrum pkspec(const Spectrum& s)
{
    Spectrum out = s;
    out.entries.clear();
    for (const auto& e : s.entries)
        if (!e.fingerprint.knot_type) out.entries.push_back(e);
    out.provenance["view"] = "pkspec (knot-type class removed)";
    return out;
}

Spectrum height_subset(const Spectrum& s, int m)
{
    Spectrum out = s;
    out.entries.clear();
    for (const auto& e : s.entries)
        if (e.fingerprint.height_bound == m) out.entries.push_back(e);
    out.provenance["view"] = "H_" + std::to_string(m) + " (height bound equal to " + std::to_string(m) + ")";
    return out;
}

Comparison compare(const Spectrum& a, const Spectrum& b)
{
    Comparison c;
    c.label_a = a.label;
    c.label_b = b.label;
    c.unresolved_mass_a = a.unresolved_mass;
    c.unresolved_mass_b = b.unresolved_mass;
    c.overall.height = -1;
    std::map<std::string, int> ha, hb;
    for (const auto& e : a.entries) ha[e.key] = e.fingerprint.height_bound;
    for (const auto& e : b.entries) hb[e.key] = e.fingerprint.height_bound;
    std::set<int> heights;
    for (auto& [k, h] : ha) {
        heights.insert(h);
        (hb.count(k) ? c.overall.common : c.overall.only_a).push_back(k);
    }
    for (auto& [k, h] : hb) {
        heights.insert(h);
        if (!ha.count(k)) c.overall.only_b.push_back(k);
    }
    for (int h : heights) {
        ComparisonLevel lv;
        lv.height = h;
        std::set<std::string> ka, kb;
        for (auto& [k, x] : ha)
            if (x == h) ka.insert(k);
        for (auto& [k, x] : hb)
            if (x == h) kb.insert(k);
        for (const auto& k : ka) (kb.count(k) ? lv.common : lv.only_a).push_back(k);
        for (const auto& k : kb)
            if (!ka.count(k)) lv.only_b.push_back(k);
        c.by_height.push_back(std::move(lv));
    }
    return c;
}

namespace {

// Mean and standard error of per-direction polynomial values given as
// (value, multiplicity) pairs over n directions.
void moments(FMeasureResult& r, const std::vector<std::pair<const LaurentPolynomial*, std::uint64_t>>& values,
             std::uint64_t n, double scale, std::optional<double> at)
{
    r.directions = n;
    std::set<int> exps;
    for (const auto& [p, k] : values)
        for (const auto& [e, c] : p->terms()) exps.insert(e);
    const double nn = static_cast<double>(std::max<std::uint64_t>(n, 1));
    r.denominator = nn * scale;
    for (int e : exps) {
        double sum = 0, sum2 = 0;
        for (const auto& [p, k] : values) {
            const double c = static_cast<double>(p->coefficient(e));
            sum += c * static_cast<double>(k);
            sum2 += c * c * static_cast<double>(k);
        }
        const double mean = sum / nn;
        const double var = n > 1 ? std::max(0.0, (sum2 - nn * mean * mean) / (nn - 1)) : 0.0;
        r.mean[e] = mean / scale;
        r.standard_error[e] = std::sqrt(var / nn) / scale;
    }
    if (at) {
        double sum = 0, sum2 = 0;
        for (const auto& [p, k] : values) {
            const double v = p->evaluate(*at);
            sum += v * static_cast<double>(k);
            sum2 += v * v * static_cast<double>(k);
        }
        const double mean = sum / nn;
        const double var = n > 1 ? std::max(0.0, (sum2 - nn * mean * mean) / (nn - 1)) : 0.0;
        r.scalar = mean / scale;
        r.scalar_se = std::sqrt(var / nn) / scale;
    }
}

} // namespace

FMeasureResult f_measure_from_spectrum(const Spectrum& s, std::optional<double> at)
{
    FMeasureResult r;
    r.unresolved = s.unresolved;
    std::vector<std::pair<const LaurentPolynomial*, std::uint64_t>> values;
    for (const auto& e : s.entries) {
        r.numerator += e.fingerprint.jones.scaled(static_cast<std::int64_t>(e.count));
        values.emplace_back(&e.fingerprint.jones, e.count);
    }
    moments(r, values, s.total, 1.0, at);
    return r;
}

FMeasureResult f_measure(const OpenCurve& l, const SpectrumOptions& options, std::optional<double> at)
{
    return f_measure_from_spectrum(knotoid_spectrum(l, options), at);
}

FMeasureResult f_gradient(const PolyCurve& knot, std::size_t x, const std::vector<Vec3>& v, double eps,
                          const SpectrumOptions& options, std::optional<double> at)
{
    if (!knot.closed()) throw InputError("f_gradient needs a closed curve");
    if (v.size() != knot.vertex_count())
        throw InputError("direction vector needs one 3-vector per vertex (" + std::to_string(knot.vertex_count()) + ")");
    if (x >= knot.vertex_count()) throw InputError("base vertex out of range", "bad_index");
    if (eps <= 0) eps = 1e-3 * knot.diameter();
    double vmax = 0;
    for (const Vec3& d : v) vmax = std::max(vmax, norm(d));
    const double tube = tube_radius(knot);
    if (eps * vmax >= tube)
        throw InputError("step eps*|v| = " + fmt(eps * vmax) + " is not below the tube radius " + fmt(tube), "step_error");

    auto shifted = [&](double sgn) {
        std::vector<Vec3> p = knot.vertices();
        for (std::size_t i = 0; i < p.size(); ++i) p[i] += v[i] * (sgn * eps);
        try {
            return open_at(PolyCurve(std::move(p), true, knot.label()), x);
        } catch (const InputError& e) {
            throw InputError(std::string("perturbed curve is invalid: ") + e.what(), "step_error");
        }
    };
    const OpenCurve plus = shifted(1), minus = shifted(-1);

    const std::uint64_t dir_seed = derive_seed(options.seed, "dirs");
    const std::size_t n = options.directions;
    std::vector<const FingerprintResult*> rp(n), rm(n);
    auto caches = make_caches(options);
    std::vector<std::uint64_t> fails(n, 0);
    parallel_for(n, std::max(1u, options.workers), [&](std::size_t i, unsigned w) {
        rp[i] = classify(plus.curve(), dir_seed, i, options, caches[w]).result;
        rm[i] = classify(minus.curve(), dir_seed, i, options, caches[w]).result;
    });

    FMeasureResult r;
    std::map<std::string, std::pair<LaurentPolynomial, std::uint64_t>> diffs;
    const LaurentPolynomial zero;
    for (std::size_t i = 0; i < n; ++i) {
        const bool okp = rp[i] && rp[i]->fingerprint, okm = rm[i] && rm[i]->fingerprint;
        if (!okp || !okm) ++r.unresolved;
        const LaurentPolynomial& jp = okp ? rp[i]->fingerprint->jones : zero;
        const LaurentPolynomial& jm = okm ? rm[i]->fingerprint->jones : zero;
        LaurentPolynomial d = jp - jm;
        r.numerator += d;
        auto& slot = diffs[d.to_string()];
        if (slot.second == 0) slot.first = d;
        ++slot.second;
    }
    std::vector<std::pair<const LaurentPolynomial*, std::uint64_t>> values;
    for (const auto& [k, pv] : diffs) values.emplace_back(&pv.first, pv.second);
    const LaurentPolynomial numerator = r.numerator;
    moments(r, values, n, 2 * eps, at);
    r.numerator = numerator;
    return r;
}

} // namespace knotspec
