#pragma once

#include <cstdint>
#include <map>
#include <string>

#include "knotspec/spectrum.hpp"

namespace knotspec {

/// Every knob a CLI run can set. `echo()` goes into artifact provenance;
/// the worker count and output paths are left out because they must not
/// change output bytes.
struct RunConfig {
    std::uint64_t seed = 0;
    std::size_t directions = 1000;
    DirectionScheme scheme = DirectionScheme::uniform;
    std::size_t per_base = 10;
    double h_frac = 0.1;
    double h = 0; ///< absolute; overrides h_frac when positive
    int bracket_cap = kDefaultBracketCap;
    int simplify_budget = 500;
    int r3_depth = 3;
    int max_retries = 10;
    double degenerate_tol = 1e-9;
    double genericity_tol = 1e-9;
    double quadrisecant_tol = 1e-9;
    bool strict_knot_type = false;
    std::string output; ///< empty: stdout
    std::string csv;    ///< optional CSV path
    unsigned workers = 1;

    SpectrumOptions spectrum_options() const;
    KnotSpectrumOptions knot_options() const;
    std::map<std::string, std::string> echo() const;
    /// Inverse of echo(), reading only the keys it knows.
    static RunConfig from_echo(const std::map<std::string, std::string>& m);
};

} // namespace knotspec
