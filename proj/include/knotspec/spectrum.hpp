#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "knotspec/curve.hpp"
#include "knotspec/invariants.hpp"
#include "knotspec/projection.hpp"

namespace knotspec {

inline constexpr double kWilsonZ = 1.959963984540054;
inline constexpr int kHeightCeiling = 3;

struct Interval {
    double low = 0, high = 0;
    bool operator==(const Interval&) const = default;
};

/// 95% Wilson score interval for k successes out of n.
Interval wilson_interval(std::uint64_t k, std::uint64_t n, double z = kWilsonZ);

struct SpectrumEntry {
    Fingerprint fingerprint;
    std::uint64_t count = 0;
    double probability = 0;
    Interval ci;
    bool low_confidence = false;        ///< count < 5
    bool exceeds_height_ceiling = false; ///< height bound > 3, flagged for review
    std::string representative;          ///< smallest simplified code seen
    std::string key;                     ///< fingerprint bucketing key

    bool operator==(const SpectrumEntry&) const = default;
};

struct BaseRecord {
    std::size_t vertex = 0;
    std::uint64_t samples = 0;
    std::uint64_t projections = 0;
    std::uint64_t unresolved = 0;
    std::vector<std::string> knot_type_keys; ///< distinct knot-type classes seen at this base
    /// Directions where a neighborhood sample's class differed from K_x's.
    std::uint64_t h_stability_mismatches = 0;
    bool operator==(const BaseRecord&) const = default;
};

struct Spectrum {
    std::string kind = "open-curve"; ///< or "knot-neighborhood"
    std::string label;
    std::vector<SpectrumEntry> entries; ///< sorted by fingerprint key
    std::uint64_t total = 0;            ///< classified projections (entries + unresolved)
    std::uint64_t unresolved = 0;
    double unresolved_mass = 0;
    Interval unresolved_ci;
    std::uint64_t degenerate_resamples = 0;
    std::uint64_t budget_exhausted = 0; ///< projections whose simplification ran out of budget
    std::uint64_t height_increases = 0; ///< greedy steps that raised the diagrammatic height
    std::vector<BaseRecord> bases;
    std::vector<std::string> warnings;
    /// Open curves (one for an open-curve spectrum, one per neighborhood
    /// sample otherwise) that showed more than one knot-type class.
    std::uint64_t knot_type_conflicts = 0;
    /// Configuration echo (seed, counts, h, scheme, caps, ...).
    std::map<std::string, std::string> provenance;

    int knot_type_entries() const;
    const SpectrumEntry* knot_type_entry() const;
    bool operator==(const Spectrum&) const = default;
};

struct SpectrumOptions {
    std::size_t directions = 1000;
    std::uint64_t seed = 0;
    DirectionScheme scheme = DirectionScheme::uniform;
    int max_retries = 10;
    double degenerate_tol = 1e-9;
    unsigned workers = 1;
    FingerprintOptions fingerprint;
    /// Abort (AssertionFailure) when one open curve shows more than one
    /// knot-type class. Off by default: finite-gap polygons do show it in a
    /// small fraction of directions; the spectrum then carries a warning.
    bool strict_knot_type = false;
};

/// gspec of an open curve: fingerprint classes over sampled directions with
/// Wilson intervals. Output depends only on (curve, options minus workers).
Spectrum knotoid_spectrum(const OpenCurve& l, const SpectrumOptions& options);

struct KnotSpectrumOptions {
    SpectrumOptions spectrum;
    double h_frac = 0.1;           ///< h as a fraction of tube_radius, used when h <= 0
    double h = 0;                  ///< absolute h; overrides h_frac when positive
    std::vector<std::size_t> bases; ///< empty = all vertices
    std::size_t per_base = 10;
    NeighborhoodOptions neighborhood;
};

/// Knot-neighborhood spectrum: union over bases and neighborhood samples,
/// probabilities weighted uniformly over (base, sample, direction). Every
/// base reuses one direction set for its samples and for K_x, so each
/// sample's class can be compared with K_x's at matched directions.
Spectrum knot_spectrum(const PolyCurve& knot, const KnotSpectrumOptions& options);

/// Entries without the knot-type flag.
Spectrum pkspec(const Spectrum& s);
/// Entries whose height bound equals m (probabilities not renormalized).
Spectrum height_subset(const Spectrum& s, int m);

struct ComparisonLevel {
    int height = 0; ///< -1 for the overall level
    std::vector<std::string> only_a, only_b, common;
};

struct Comparison {
    std::string label_a, label_b;
    ComparisonLevel overall;
    std::vector<ComparisonLevel> by_height;
    double unresolved_mass_a = 0, unresolved_mass_b = 0;
    bool distinguished() const { return !overall.only_a.empty() || !overall.only_b.empty(); }
};

/// Fingerprint-set comparison; classes present in both are "not
/// distinguished", which never asserts equivalence.
Comparison compare(const Spectrum& a, const Spectrum& b);

/// Rational-coefficient polynomial sum / denominator with per-coefficient
/// standard errors of the mean.
struct FMeasureResult {
    LaurentPolynomial numerator; ///< exact sum over directions
    double denominator = 1;      ///< number of directions (times 2 eps for gradients)
    std::map<int, double> mean;
    std::map<int, double> standard_error;
    std::uint64_t directions = 0;
    std::uint64_t unresolved = 0;
    std::optional<double> scalar;    ///< evaluation at a supplied A
    std::optional<double> scalar_se;

    bool is_zero() const { return numerator.is_zero(); }
};

/// Mean of the normalized Jones polynomial over sampled directions;
/// unresolved directions contribute 0 and are disclosed.
FMeasureResult f_measure(const OpenCurve& l, const SpectrumOptions& options, std::optional<double> at = std::nullopt);

/// f-measure from a spectrum: sum_i p_i J_i with per-coefficient SEs.
FMeasureResult f_measure_from_spectrum(const Spectrum& s, std::optional<double> at = std::nullopt);

/// Central difference (f(K_x + eps v) - f(K_x - eps v)) / (2 eps) with
/// common directions. eps <= 0 selects 1e-3 * diameter.
FMeasureResult f_gradient(const PolyCurve& knot, std::size_t x, const std::vector<Vec3>& v, double eps,
                          const SpectrumOptions& options, std::optional<double> at = std::nullopt);

} // namespace knotspec
