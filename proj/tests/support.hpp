#pragma once

#include <cmath>
#include <cstdio>
#include <fstream>
#include <sys/wait.h>
#include <sstream>
#include <string>
#include <vector>

#include "knotspec/diagram.hpp"
#include "knotspec/laurent.hpp"
#include "knotspec/moves.hpp"
#include "knotspec/rng.hpp"
#include "knotspec/vec3.hpp"
#include "oracles.hpp"

namespace support {

// Standard diagrams. The right-handed trefoil is the one trefoil32 projects
// to up to mirror image; see the chirality test in test_projection.cpp.
inline const std::string kTrefoil = "c:O1+U2+O3+U1+O2+U3+";
inline const std::string kTrefoilMirror = "c:O1-U2-O3-U1-O2-U3-";
inline const std::string kTrefoilKnotoid = "k:O1+U2+O3+U1+O2+U3+";
inline const std::string kHeightOne = "k:O1+U2+U1+O2+";

inline oracle::Poly to_oracle(const knotspec::LaurentPolynomial& p)
{
    oracle::Poly out;
    for (auto [e, c] : p.terms()) out[e] = c;
    return out;
}

inline knotspec::Mat3 random_rotation(knotspec::Rng& rng)
{
    const double z = rng.uniform(-1, 1), phi = rng.uniform(0, 2 * M_PI);
    const double r = std::sqrt(1 - z * z);
    return knotspec::Mat3::rotation({r * std::cos(phi), r * std::sin(phi), z}, rng.uniform(0, 2 * M_PI));
}

inline knotspec::Vec3 random_unit(knotspec::Rng& rng)
{
    const double z = rng.uniform(-1, 1), phi = rng.uniform(0, 2 * M_PI);
    const double r = std::sqrt(1 - z * z);
    return {r * std::cos(phi), r * std::sin(phi), z};
}

/// Apply `moves` random valid moves starting from `start`.
inline knotspec::Diagram scramble(knotspec::Diagram d, int moves, knotspec::Rng& rng, int max_crossings = 12)
{
    for (int i = 0; i < moves; ++i) {
        auto m = knotspec::random_move(d, rng, max_crossings);
        if (!m) break;
        d = knotspec::apply_move(d, *m);
    }
    return d;
}

struct CliResult {
    int exit = -1;
    std::string out;
    std::string err;
};

inline std::string slurp(const std::string& path)
{
    std::ifstream in(path);
    std::stringstream s;
    s << in.rdbuf();
    return s.str();
}

/// Run the CLI binary with `args` (already shell-quoted as needed).
inline CliResult run_cli(const std::string& args)
{
    static int counter = 0;
    const std::string err_path = std::string(KNOTSPEC_TEST_TMP) + "/stderr_" + std::to_string(counter++) + ".txt";
    const std::string cmd = std::string(KNOTSPEC_CLI_PATH) + " " + args + " 2>" + err_path;
    CliResult r;
    FILE* pipe = popen(cmd.c_str(), "r");
    if (!pipe) return r;
    char buf[4096];
    std::size_t got;
    while ((got = fread(buf, 1, sizeof buf, pipe)) > 0) r.out.append(buf, got);
    const int status = pclose(pipe);
    r.exit = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
    r.err = slurp(err_path);
    return r;
}

inline std::string tmp_path(const std::string& name) { return std::string(KNOTSPEC_TEST_TMP) + "/" + name; }

} // namespace support
