#pragma once

#include <array>
#include <cstddef>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "jcdemon/dynamics.hpp"
#include "jcdemon/observables.hpp"
#include "jcdemon/oracle.hpp"
#include "jcdemon/thermo.hpp"

namespace jcdemon {

enum class Scenario { fig1, fig2, fig3, fig4, custom };
enum class Method { dense, branches, automatic };

using BlochVector = std::array<double, 3>;

struct ScenarioConfig {
    Scenario scenario = Scenario::custom;
    double n0 = 0.0;
    double nbar = 0.0;
    double phi0 = 0.0;
    int n_ph = 0;          // 0 selects auto_truncation()
    double gt_max = 0.0;
    int steps = 200;
    std::optional<BlochVector> init;  // unset: the scenario's default state(s)
    Method method = Method::automatic;
    double rank_tol = kDefaultRankTol;
    double tail_tol = kDefaultTailTol;
    double prominence = 0.05;  // nats; minimum prominence for S_Q extrema
    unsigned threads = 0;      // 0: hardware concurrency
    std::vector<double> n0_list;
    std::string out_path;
};

// Paths above this cutoff use branches under Method::automatic.
inline constexpr int kDenseCutoff = 200;

Scenario parse_scenario(const std::string& name);
std::string scenario_name(Scenario s);
Method parse_method(const std::string& name);
BlochVector parse_bloch(const std::string& text);
std::vector<double> parse_real_list(const std::string& text);

// Flat key=value text; '#' starts a comment. Keys may use '-' or '_'.
std::map<std::string, std::string> read_config_file(const std::string& path);
std::map<std::string, std::string> parse_config_text(const std::string& text);

ScenarioConfig preset(Scenario s);
// Preset for the scenario named in overrides (or `fallback`), then each override applied in turn.
ScenarioConfig build_config(const std::map<std::string, std::string>& overrides, Scenario fallback = Scenario::custom);
void apply_override(ScenarioConfig& cfg, const std::string& key, const std::string& value);
void validate(const ScenarioConfig& cfg);

int resolve_nph(const ScenarioConfig& cfg);
Representation resolve_method(const ScenarioConfig& cfg);
std::vector<double> time_grid(const ScenarioConfig& cfg);

struct Extremum {
    enum class Kind { minimum, maximum };
    Kind kind = Kind::minimum;
    std::size_t index = 0;  // grid index of the discrete extremum
    double gt = 0.0;        // parabolically refined location
    double value = 0.0;     // parabolically refined value
    double prominence = 0.0;
};

// Interior discrete extrema whose topographic prominence reaches min_prominence, refined by a
// parabola through the three neighbouring samples. Ordered by gt.
std::vector<Extremum> locate_extrema(const std::vector<double>& gt, const std::vector<double>& values,
                                     double min_prominence = 0.05);
std::vector<Extremum> locate_extrema(const std::vector<ThermoRecord>& records, double min_prominence = 0.05);

// Lowest interior S_Q minimum inside each window [(2k-2) pi sqrt(n0), 2k pi sqrt(n0)], k = 1 .. count.
// Windows with no sampled minimum are skipped, so the result may be shorter than count.
std::vector<Extremum> principal_minima(const std::vector<ThermoRecord>& records, double n0, int count);

struct RunSummary {
    int n_ph = 0;
    Representation method = Representation::dense;
    std::map<std::string, double> max_deviation;  // exact vs first-order oracle, theta <= 2 pi
    std::vector<Extremum> extrema;
    std::optional<double> t_min_observed;
    std::optional<std::size_t> t_min_index;
    std::optional<std::size_t> tc_index;      // first normalized branch overlap <= 0.01
    std::optional<std::size_t> tc_cross_index;  // first |cross trace| <= 0.05
    double t_c_nominal = 1.0;
    double demon_margin = 0.0;      // min (lhs - rhs) on [t_c, t_min]
    double landauer_margin = 0.0;   // W_C(t_min) - ln2 / beta_C(0)
    double first_law_residual = 0.0;
    double min_sigma_Q = 0.0;
    double S_QC_drift = 0.0;
    double excitation_drift = 0.0;
};

struct RunReport {
    ScenarioConfig config;
    std::vector<ThermoRecord> records;
    std::vector<ExpansionPrediction> oracle;
    std::vector<Observation> observations;
    RunSummary summary;
};

inline constexpr double kOverlapThreshold = 0.01;
inline constexpr double kCrossThreshold = 0.05;

// Exact numerics plus ledger and oracle for a single initial qubit state (cfg.init or |e>).
RunReport simulate(const ScenarioConfig& cfg);

// Throws InvariantViolation when first-law closure, Clausius, S_QC constancy or
// excitation conservation fails.
void enforce_invariants(const RunReport& report);

// Scenario presets without an explicit init fan out into several runs (fig1: three states,
// fig3: both pointer states); each gets its own output path.
std::vector<ScenarioConfig> expand_runs(const ScenarioConfig& cfg);

// expand_runs + simulate + enforce_invariants + CSV output for each run.
std::vector<RunReport> run(const ScenarioConfig& cfg);

struct ScalingRow {
    double n0 = 0.0;
    std::string quantity;
    double max_abs_dev = 0.0;
    double scaled_dev = 0.0;  // max_abs_dev * n0^2
    double ratio = 0.0;       // previous n0's deviation over this one; NaN for the first
};

// First-order expansion residuals over theta in [0, 2 pi] for each n0 in cfg.n0_list.
std::vector<ScalingRow> compare(const ScenarioConfig& cfg);

// CSV output.
extern const std::vector<std::string> kRecordColumns;
std::string format_real(double v);
std::string records_to_csv(const std::vector<ThermoRecord>& records);
void write_records_csv(const std::string& path, const std::vector<ThermoRecord>& records);
std::string scaling_to_csv(const std::vector<ScalingRow>& rows);
void write_text(const std::string& path, const std::string& text);

}  // namespace jcdemon
