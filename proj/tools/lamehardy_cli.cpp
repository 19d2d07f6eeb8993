// Command line front end: verify runs one named suite and emits its report,
// decompose splits a stored jet into its Hardy parts, converge tabulates a
// suite's headline residual over mesh levels.  Exit codes: 0 all checks pass,
// 1 some check failed, 2 the configuration was rejected.

#include <chrono>
#include <cstdio>
#include <fstream>
#include <iostream>

#include "CLI11.hpp"

#include "lamehardy/io.hpp"
#include "lamehardy/suites.hpp"

namespace {

using namespace lamehardy;
using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point t0) {
    return std::chrono::duration<double>(Clock::now() - t0).count();
}

void add_config_options(CLI::App* cmd, RunConfig& cfg) {
    cmd->add_option("--m", cfg.m, "space dimension (3..6)");
    cmd->add_option("--mu", cfg.mu, "shear material constant");
    cmd->add_option("--lambda", cfg.lambda, "second material constant");
    cmd->add_option("--level", cfg.level, "surface refinement level");
    cmd->add_option("--alpha", cfg.alpha, "smoothness index in (0, 1]");
    cmd->add_option("--seed", cfg.seed, "seed for every random draw");
    cmd->add_option("--resolution", cfg.resolution,
                    "volume grid resolution (default: derived from level)");
}

int run_verify(const std::string& suite, const RunConfig& cfg, const std::string& out_path) {
    const auto t0 = Clock::now();
    const SuiteReport rep = run_suite(suite, cfg);
    std::fprintf(stderr, "[lamehardy] suite %s finished in %.2fs\n", suite.c_str(),
                 seconds_since(t0));
    const ordered_json j = to_json(rep);
    if (out_path.empty()) {
        std::cout << j.dump(2) << '\n';
    } else {
        write_json_file(out_path, j);
        std::fprintf(stderr, "[lamehardy] report written to %s\n", out_path.c_str());
    }
    return rep.all_pass() ? 0 : 1;
}

int run_decompose(const std::string& jet_path, const std::string& prefix, const RunConfig& cfg,
                  bool check_m, bool check_level) {
    const auto t0 = Clock::now();
    const LipschitzJet jet = jet_from_json(read_json_file(jet_path));
    if (check_m && jet.m() != cfg.m)
        throw config_error("decompose: jet dimension disagrees with --m");
    if (check_level && jet.surface().desc.level != cfg.level)
        throw config_error("decompose: mesh level in the jet file disagrees with --level");
    const LameParams p(cfg.mu, cfg.lambda);

    auto [plus, minus] = hardy_projections(jet, p);
    LipschitzJet rec = plus;
    rec += minus;
    rec -= jet;
    const double reconstruction = jet_norm(rec) / std::max(1e-300, jet_norm(jet));

    // plus - minus is the one-pass image of the singular operator; a second
    // pass measures how far the discretization is from a true involution.
    LipschitzJet sjet = plus;
    sjet -= minus;
    LipschitzJet invo = singular_boundary_operator(sjet, p);
    invo -= jet;
    const double involution = jet_norm(invo) / std::max(1e-300, jet_norm(jet));

    write_json_file(prefix + "_plus.json", to_json(plus));
    write_json_file(prefix + "_minus.json", to_json(minus));

    SuiteReport rep;
    rep.suite = "decompose";
    rep.params = cfg.echo();
    rep.params["jet"] = jet_path;
    rep.params["mesh"] = to_json(jet.surface().desc);
    rep.checks.push_back(make_check("reconstruction", reconstruction, 1e-12));
    rep.checks.push_back(make_check("involution_quality", involution, 1.0));
    write_json_file(prefix + "_report.json", to_json(rep));
    std::fprintf(stderr,
                 "[lamehardy] decompose finished in %.2fs (reconstruction %.3e, "
                 "involution %.3e)\n",
                 seconds_since(t0), reconstruction, involution);
    return rep.all_pass() ? 0 : 1;
}

int run_converge(const std::string& suite, const std::vector<int>& levels,
                 const RunConfig& base, const std::string& csv_path) {
    if (levels.empty()) throw config_error("converge: need at least one level");
    const std::string headline = headline_check(suite);
    std::vector<ConvergenceRow> rows;
    bool all_pass = true;
    for (const int level : levels) {
        RunConfig cfg = base;
        cfg.level = level;
        const auto t0 = Clock::now();
        const SuiteReport rep = run_suite(suite, cfg);
        all_pass = all_pass && rep.all_pass();
        double residual = -1.0;
        for (const auto& c : rep.checks)
            if (c.name == headline) residual = c.residual;
        if (residual < 0.0)
            throw config_error("converge: suite has no headline check at this level");
        double h = 0.0;
        if (cfg.m <= 4) h = build_sphere_surface(cfg.m, level).h;
        rows.push_back({level, h, residual});
        std::fprintf(stderr, "[lamehardy] %s level %d: %s = %.3e (%.2fs)\n", suite.c_str(),
                     level, headline.c_str(), residual, seconds_since(t0));
    }

    std::ostream* os = &std::cout;
    std::ofstream file;
    if (!csv_path.empty()) {
        file.open(csv_path);
        if (!file) throw config_error("cannot open '" + csv_path + "' for writing");
        os = &file;
    }
    (*os) << "suite,check,level,h,residual,observed_order\n";
    for (std::size_t i = 0; i < rows.size(); ++i) {
        (*os) << suite << ',' << headline << ',' << rows[i].level << ',' << rows[i].h << ','
              << rows[i].residual << ',';
        if (i > 0 && rows[i].residual > 0.0 && rows[i - 1].residual > 0.0)
            (*os) << std::log2(rows[i - 1].residual / rows[i].residual);
        (*os) << '\n';
    }
    if (!csv_path.empty())
        std::fprintf(stderr, "[lamehardy] table written to %s\n", csv_path.c_str());
    return all_pass ? 0 : 1;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"numerical boundary-operator toolkit for the Lame-Navier system"};
    app.require_subcommand(1);

    RunConfig cfg;
    std::string suite, out_path, jet_path, prefix, csv_path, levels_arg = "2,3,4";

    CLI::App* verify = app.add_subcommand("verify", "run one verification suite");
    verify->add_option("--suite", suite, "one of: algebra kernels cauchy borel_pompeiu "
                                         "involution hardy recovery holder")
        ->required();
    add_config_options(verify, cfg);
    verify->add_option("--out", out_path, "write the report here instead of stdout");

    CLI::App* decompose = app.add_subcommand("decompose", "split a jet into Hardy parts");
    decompose->add_option("--jet", jet_path, "input jet file")->required();
    decompose->add_option("--out-prefix", prefix, "prefix for the output files")->required();
    add_config_options(decompose, cfg);

    CLI::App* converge = app.add_subcommand("converge", "headline residual across levels");
    converge->add_option("--suite", suite, "suite to sweep")->required();
    converge->add_option("--levels", levels_arg, "comma separated levels, e.g. 2,3,4");
    add_config_options(converge, cfg);
    converge->add_option("--csv", csv_path, "write the table here instead of stdout");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : 2;
    }

    try {
        if (verify->parsed()) return run_verify(suite, cfg, out_path);
        if (decompose->parsed()) {
            return run_decompose(jet_path, prefix, cfg, decompose->count("--m") > 0,
                                 decompose->count("--level") > 0);
        }
        std::vector<int> levels;
        for (std::size_t pos = 0; pos < levels_arg.size();) {
            const std::size_t comma = levels_arg.find(',', pos);
            const std::string tok = levels_arg.substr(
                pos, comma == std::string::npos ? std::string::npos : comma - pos);
            try {
                levels.push_back(std::stoi(tok));
            } catch (const std::exception&) {
                throw config_error("converge: bad level token '" + tok + "'");
            }
            if (comma == std::string::npos) break;
            pos = comma + 1;
        }
        return run_converge(suite, levels, cfg, csv_path);
    } catch (const config_error& e) {
        std::fprintf(stderr, "[lamehardy] configuration error: %s\n", e.what());
        return 2;
    } catch (const std::invalid_argument& e) {
        std::fprintf(stderr, "[lamehardy] configuration error: %s\n", e.what());
        return 2;
    } catch (const nlohmann::json::exception& e) {
        std::fprintf(stderr, "[lamehardy] input error: %s\n", e.what());
        return 2;
    } catch (const std::exception& e) {
        std::fprintf(stderr, "[lamehardy] error: %s\n", e.what());
        return 1;
    }
}
