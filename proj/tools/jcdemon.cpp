// jcdemon: scenario runner and expansion comparison for the resonant JC demon model.

#include <cmath>
#include <cstdio>
#include <iostream>
#include <map>
#include <optional>
#include <string>

#include "CLI11.hpp"
#include "jcdemon/errors.hpp"
#include "jcdemon/experiment.hpp"

namespace {

enum Exit { kOk = 0, kConfig = 1, kTruncation = 2, kInvariant = 3 };

struct Flags {
    std::optional<std::string> scenario, config, n0, nbar, phi0, nph, gt_max, steps, init, method, rank_tol, out,
        n0_list, threads, prominence;
};

void add_common(CLI::App* app, Flags& f) {
    app->add_option("--config", f.config, "key=value configuration file");
    app->add_option("--n0", f.n0, "mean coherent photon number |alpha0|^2");
    app->add_option("--nbar", f.nbar, "thermal occupation of the undisplaced cavity");
    app->add_option("--phi0", f.phi0, "phase of the displacement");
    app->add_option("--nph", f.nph, "Fock cutoff (0 = automatic)");
    app->add_option("--gt-max", f.gt_max, "end of the g*t grid (0 = scenario default)");
    app->add_option("--steps", f.steps, "number of grid points");
    app->add_option("--init", f.init, "initial qubit Bloch vector rx,ry,rz");
    app->add_option("--method", f.method, "dense | branches | auto");
    app->add_option("--rank-tol", f.rank_tol, "discarded branch weight budget");
    app->add_option("--threads", f.threads, "worker threads (0 = all cores)");
    app->add_option("--prominence", f.prominence, "minimum S_Q extremum prominence in nats");
    app->add_option("--out", f.out, "output CSV path")->required();
}

jcdemon::ScenarioConfig resolve(const Flags& f, jcdemon::Scenario fallback) {
    std::map<std::string, std::string> kv;
    if (f.config) kv = jcdemon::read_config_file(*f.config);
    auto put = [&](const char* key, const std::optional<std::string>& v) {
        if (v) kv[key] = *v;
    };
    put("scenario", f.scenario);
    put("n0", f.n0);
    put("nbar", f.nbar);
    put("phi0", f.phi0);
    put("nph", f.nph);
    put("gt_max", f.gt_max);
    put("steps", f.steps);
    put("init", f.init);
    put("method", f.method);
    put("rank_tol", f.rank_tol);
    put("threads", f.threads);
    put("prominence", f.prominence);
    put("out", f.out);
    put("n0_list", f.n0_list);
    return jcdemon::build_config(kv, fallback);
}

void print_summary(const jcdemon::RunReport& rep) {
    using jcdemon::format_real;
    const auto& s = rep.summary;
    const auto& c = rep.config;
    std::printf("run %s -> %s\n", jcdemon::scenario_name(c.scenario).c_str(), c.out_path.c_str());
    std::printf("  n0=%s nbar=%s n_ph=%d method=%s points=%zu\n", format_real(c.n0).c_str(),
                format_real(c.nbar).c_str(), s.n_ph, s.method == jcdemon::Representation::dense ? "dense" : "branches",
                rep.records.size());
    for (const auto& [k, v] : s.max_deviation)
        std::printf("  max|exact-oracle| %-9s %s\n", k.c_str(), format_real(v).c_str());
    for (const auto& e : s.extrema)
        std::printf("  S_Q %s at gt=%s value=%s\n", e.kind == jcdemon::Extremum::Kind::minimum ? "min" : "max",
                    format_real(e.gt).c_str(), format_real(e.value).c_str());
    if (s.t_min_observed) std::printf("  t_min_observed=%s\n", format_real(*s.t_min_observed).c_str());
    if (s.tc_index) std::printf("  t_c(overlap<=0.01)=%s\n", format_real(rep.records[*s.tc_index].gt).c_str());
    if (s.tc_cross_index)
        std::printf("  t_c(|cross|<=0.05)=%s\n", format_real(rep.records[*s.tc_cross_index].gt).c_str());
    std::printf("  demon_margin=%s landauer_margin=%s\n", format_real(s.demon_margin).c_str(),
                format_real(s.landauer_margin).c_str());
    std::printf("  first_law_residual=%s min_sigma_Q=%s S_QC_drift=%s excitation_drift=%s\n",
                format_real(s.first_law_residual).c_str(), format_real(s.min_sigma_Q).c_str(),
                format_real(s.S_QC_drift).c_str(), format_real(s.excitation_drift).c_str());
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Resonant Jaynes-Cummings demon simulator"};
    app.require_subcommand(1);

    Flags run_flags, cmp_flags;
    auto* run = app.add_subcommand("run", "simulate a scenario and write its thermodynamic ledger as CSV");
    run->add_option("--scenario", run_flags.scenario, "fig1 | fig2 | fig3 | fig4 | custom");
    add_common(run, run_flags);

    auto* cmp = app.add_subcommand("compare", "tabulate first-order expansion residuals across n0");
    cmp->add_option("--n0-list", cmp_flags.n0_list, "comma-separated n0 values");
    add_common(cmp, cmp_flags);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? kOk : kConfig;
    }

    try {
        if (*run) {
            const auto cfg = resolve(run_flags, jcdemon::Scenario::custom);
            const auto reports = jcdemon::run(cfg);
            for (const auto& rep : reports) print_summary(rep);
        } else {
            const auto cfg = resolve(cmp_flags, jcdemon::Scenario::custom);
            const auto rows = jcdemon::compare(cfg);
            jcdemon::write_text(cfg.out_path, jcdemon::scaling_to_csv(rows));
            for (const auto& r : rows)
                std::printf("n0=%-6s %-9s max_dev=%-24s n0^2*dev=%-22s ratio=%s\n", jcdemon::format_real(r.n0).c_str(),
                            r.quantity.c_str(), jcdemon::format_real(r.max_abs_dev).c_str(),
                            jcdemon::format_real(r.scaled_dev).c_str(), jcdemon::format_real(r.ratio).c_str());
        }
    } catch (const jcdemon::ConfigError& e) {
        std::cerr << "config error: " << e.what() << '\n';
        return kConfig;
    } catch (const jcdemon::TruncationError& e) {
        std::cerr << "truncation error: " << e.what() << '\n';
        return kTruncation;
    } catch (const jcdemon::InvariantViolation& e) {
        std::cerr << "invariant violation: " << e.what() << '\n';
        return kInvariant;
    } catch (const jcdemon::DomainError& e) {
        std::cerr << "invariant violation: " << e.what() << '\n';
        return kInvariant;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kConfig;
    }
    return kOk;
}
