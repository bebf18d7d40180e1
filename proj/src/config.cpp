#include "knotspec/config.hpp"

#include <sstream>

#include "knotspec/errors.hpp"

namespace knotspec {

namespace {

std::string fmt(double x)
{
    std::ostringstream s;
    s.precision(17);
    s << x;
    return s.str();
}

template <class T>
void read(const std::map<std::string, std::string>& m, const std::string& key, T& out)
{
    auto it = m.find(key);
    if (it == m.end()) return;
    std::istringstream in(it->second);
    T v{};
    if (!(in >> v)) throw InputError("bad provenance value for " + key, "bad_artifact");
    out = v;
}

} // namespace

SpectrumOptions RunConfig::spectrum_options() const
{
    SpectrumOptions o;
    o.directions = directions;
    o.seed = seed;
    o.scheme = scheme;
    o.max_retries = max_retries;
    o.degenerate_tol = degenerate_tol;
    o.workers = workers;
    o.fingerprint.cap = bracket_cap;
    o.fingerprint.simplify.budget = simplify_budget;
    o.fingerprint.simplify.r3_depth = r3_depth;
    o.strict_knot_type = strict_knot_type;
    return o;
}

KnotSpectrumOptions RunConfig::knot_options() const
{
    KnotSpectrumOptions o;
    o.spectrum = spectrum_options();
    o.h_frac = h_frac;
    o.h = h;
    o.per_base = per_base;
    return o;
}

std::map<std::string, std::string> RunConfig::echo() const
{
    return {
        {"seed", std::to_string(seed)},
        {"directions", std::to_string(directions)},
        {"direction_scheme", to_string(scheme)},
        {"per_base", std::to_string(per_base)},
        {"h_frac", fmt(h_frac)},
        {"h_abs", fmt(h)},
        {"bracket_cap", std::to_string(bracket_cap)},
        {"simplify_budget", std::to_string(simplify_budget)},
        {"r3_depth", std::to_string(r3_depth)},
        {"max_retries", std::to_string(max_retries)},
        {"degenerate_tol", fmt(degenerate_tol)},
        {"genericity_tol", fmt(genericity_tol)},
        {"quadrisecant_tol", fmt(quadrisecant_tol)},
        {"strict_knot_type", strict_knot_type ? "true" : "false"},
    };
}

RunConfig RunConfig::from_echo(const std::map<std::string, std::string>& m)
{
    RunConfig c;
    read(m, "seed", c.seed);
    read(m, "directions", c.directions);
    if (auto it = m.find("direction_scheme"); it != m.end()) c.scheme = parse_direction_scheme(it->second);
    read(m, "per_base", c.per_base);
    read(m, "h_frac", c.h_frac);
    read(m, "h_abs", c.h);
    read(m, "bracket_cap", c.bracket_cap);
    read(m, "simplify_budget", c.simplify_budget);
    read(m, "r3_depth", c.r3_depth);
    read(m, "max_retries", c.max_retries);
    read(m, "degenerate_tol", c.degenerate_tol);
    read(m, "genericity_tol", c.genericity_tol);
    read(m, "quadrisecant_tol", c.quadrisecant_tol);
    if (auto it = m.find("strict_knot_type"); it != m.end()) c.strict_knot_type = it->second == "true";
    return c;
}

} // namespace knotspec
