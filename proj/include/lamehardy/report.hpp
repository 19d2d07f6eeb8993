#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <string>
#include <vector>

#include "lamehardy/fit.hpp"
#include "lamehardy/io.hpp"
#include "lamehardy/lame_params.hpp"

namespace lamehardy {

struct CheckRecord {
    std::string name;
    double residual = 0.0;
    double tolerance = 0.0;
    bool pass = false;
};

inline CheckRecord make_check(std::string name, double residual, double tolerance) {
    // A residual that went non-finite is a failure no matter the tolerance.
    const bool pass = std::isfinite(residual) && residual <= tolerance;
    return CheckRecord{std::move(name), residual, tolerance, pass};
}

struct ConvergenceRow {
    int level = 0;
    double h = 0.0;
    double residual = 0.0;
};

struct ExponentRecord {
    std::string name;
    ExponentFit fit;
};

struct SuiteReport {
    std::string suite;
    ordered_json params;
    std::vector<CheckRecord> checks;
    std::vector<ConvergenceRow> convergence;
    std::vector<ExponentRecord> exponents;

    bool all_pass() const {
        for (const auto& c : checks)
            if (!c.pass) return false;
        return true;
    }
};

inline ordered_json to_json(const SuiteReport& r) {
    ordered_json j;
    j["suite"] = r.suite;
    j["params"] = r.params;
    ordered_json checks = ordered_json::array();
    for (const auto& c : r.checks) {
        ordered_json jc;
        jc["name"] = c.name;
        jc["residual"] = c.residual;
        jc["tolerance"] = c.tolerance;
        jc["pass"] = c.pass;
        checks.push_back(std::move(jc));
    }
    j["checks"] = std::move(checks);
    if (!r.convergence.empty()) {
        ordered_json rows = ordered_json::array();
        for (const auto& row : r.convergence) {
            ordered_json jr;
            jr["level"] = row.level;
            jr["h"] = row.h;
            jr["residual"] = row.residual;
            rows.push_back(std::move(jr));
        }
        j["convergence"] = std::move(rows);
    }
    if (!r.exponents.empty()) {
        ordered_json fits = ordered_json::array();
        for (const auto& e : r.exponents) {
            ordered_json je;
            je["name"] = e.name;
            je["slope"] = e.fit.slope;
            je["intercept"] = e.fit.intercept;
            je["r2"] = e.fit.r2;
            je["points"] = e.fit.points;
            je["flat"] = e.fit.flat;
            fits.push_back(std::move(je));
        }
        j["exponents"] = std::move(fits);
    }
    j["all_pass"] = r.all_pass();
    return j;
}

// One bag of knobs shared by every suite.  A fresh instance carries the
// canonical desk-scale defaults; validate() is the single admissibility gate
// and is what the command line maps onto exit code 2.
struct RunConfig {
    int m = 3;
    double mu = 1.0;
    double lambda = 1.0;
    int level = 3;
    double alpha = 1.0;
    std::uint64_t seed = 42;
    int resolution = -1; // volume grids; negative means derive from level

    void validate() const {
        if (m < 3 || m > kMaxM) throw config_error("config: m must lie in [3, 6]");
        if (!(mu > 0.0) || !(3.0 * lambda + 2.0 * mu > 0.0))
            throw config_error("config: require mu > 0 and lambda > -(2/3) mu");
        if (!(alpha > 0.0) || alpha > 1.0) throw config_error("config: alpha must lie in (0, 1]");
        if (m <= 4) {
            const int cap = (m == 3) ? 6 : 3;
            if (level < 0 || level > cap)
                throw config_error("config: level out of range for this dimension");
        }
        if (resolution > 6) throw config_error("config: resolution out of range");
    }

    LameParams material() const { return LameParams(mu, lambda); }

    // Volume resolution riding along with the surface level unless pinned.
    int grid_resolution() const {
        if (resolution >= 0) return resolution;
        return std::clamp(level - 2, 0, 3);
    }

    ordered_json echo() const {
        ordered_json j;
        j["m"] = m;
        j["mu"] = mu;
        j["lambda"] = lambda;
        j["level"] = level;
        j["alpha"] = alpha;
        j["seed"] = seed;
        j["resolution"] = grid_resolution();
        return j;
    }
};

} // namespace lamehardy
