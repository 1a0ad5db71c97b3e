#include "jcdemon/experiment.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>

#include "jcdemon/errors.hpp"
#include "jcdemon/parallel.hpp"

namespace jcdemon {

namespace {

constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();
constexpr double kPi = std::numbers::pi;

// Vertex of the parabola through (x0,y0), (x1,y1), (x2,y2); falls back to the middle sample.
std::pair<double, double> parabola_vertex(double x0, double y0, double x1, double y1, double x2, double y2) {
    const double d01 = (y1 - y0) / (x1 - x0);
    const double d12 = (y2 - y1) / (x2 - x1);
    const double a = (d12 - d01) / (x2 - x0);
    if (a == 0.0 || !std::isfinite(a)) return {x1, y1};
    const double b = d01 - a * (x0 + x1);
    const double xv = std::clamp(-b / (2.0 * a), x0, x2);
    return {xv, y0 + d01 * (xv - x0) + a * (xv - x0) * (xv - x1)};
}

// Prominence of a local maximum of v at index i.
double peak_prominence(const std::vector<double>& v, std::size_t i) {
    const double h = v[i];
    double left_min = h;
    for (std::size_t j = i; j-- > 0;) {
        if (v[j] > h) break;
        left_min = std::min(left_min, v[j]);
    }
    double right_min = h;
    for (std::size_t j = i + 1; j < v.size(); ++j) {
        if (v[j] > h) break;
        right_min = std::min(right_min, v[j]);
    }
    return h - std::max(left_min, right_min);
}

bool is_excited(const BlochVector& r) { return r[0] == 0.0 && r[1] == 0.0 && r[2] == 1.0; }

std::string with_suffix(const std::string& path, const std::string& suffix) {
    const auto slash = path.find_last_of('/');
    const auto dot = path.find_last_of('.');
    if (dot == std::string::npos || (slash != std::string::npos && dot < slash)) return path + suffix;
    return path.substr(0, dot) + suffix + path.substr(dot);
}

}  // namespace

std::vector<Extremum> locate_extrema(const std::vector<double>& gt, const std::vector<double>& values,
                                     double min_prominence) {
    std::vector<Extremum> out;
    const std::size_t n = values.size();
    if (n < 3 || gt.size() != n) return out;
    std::vector<double> neg(n);
    for (std::size_t i = 0; i < n; ++i) neg[i] = -values[i];

    for (std::size_t i = 1; i + 1 < n; ++i) {
        const double l = values[i - 1], c = values[i], r = values[i + 1];
        Extremum e;
        double prom = 0.0;
        if (c < l && c <= r) {
            e.kind = Extremum::Kind::minimum;
            prom = peak_prominence(neg, i);
        } else if (c > l && c >= r) {
            e.kind = Extremum::Kind::maximum;
            prom = peak_prominence(values, i);
        } else {
            continue;
        }
        if (prom < min_prominence) continue;
        const auto [x, y] = parabola_vertex(gt[i - 1], l, gt[i], c, gt[i + 1], r);
        e.index = i;
        e.gt = x;
        e.value = y;
        e.prominence = prom;
        out.push_back(e);
    }
    return out;
}

std::vector<Extremum> locate_extrema(const std::vector<ThermoRecord>& records, double min_prominence) {
    std::vector<double> gt, s;
    gt.reserve(records.size());
    s.reserve(records.size());
    for (const auto& r : records) {
        gt.push_back(r.gt);
        s.push_back(r.S_Q);
    }
    return locate_extrema(gt, s, min_prominence);
}

std::vector<Extremum> principal_minima(const std::vector<ThermoRecord>& records, double n0, int count) {
    const auto all = locate_extrema(records, 0.0);
    const double w = 2.0 * kPi * std::sqrt(n0);
    std::vector<Extremum> out;
    for (int k = 1; k <= count; ++k) {
        const double lo = (k - 1) * w, hi = k * w;
        const Extremum* best = nullptr;
        for (const auto& e : all) {
            if (e.kind != Extremum::Kind::minimum || e.gt < lo || e.gt >= hi) continue;
            if (!best || e.value < best->value) best = &e;
        }
        if (best) out.push_back(*best);
    }
    return out;
}

RunReport simulate(const ScenarioConfig& cfg) {
    validate(cfg);
    RunReport rep;
    rep.config = cfg;
    const SpaceConfig space{resolve_nph(cfg), cfg.tail_tol};
    const Representation repr = resolve_method(cfg);
    const BlochVector r = cfg.init.value_or(BlochVector{0.0, 0.0, 1.0});
    const Matrix2 rho_q0 = bloch_to_density(r[0], r[1], r[2]);
    const cplx alpha0 = std::polar(std::sqrt(cfg.n0), cfg.phi0);
    const Simulator sim(space, rho_q0, alpha0, cfg.nbar, repr, cfg.rank_tol);

    const auto grid = time_grid(cfg);
    const std::size_t n = grid.size();
    auto spot = [&](std::size_t i) {
        return repr == Representation::branches || i == 0 || i == n / 3 || i == (2 * n) / 3 || i + 1 == n;
    };
    rep.observations.resize(n);
    parallel_for(n, cfg.threads, [&](std::size_t i) { rep.observations[i] = sim.observe(grid[i], spot(i)); });

    const auto& o0 = rep.observations.front();
    const double S_QC0 = o0.S_Q + o0.S_C;
    rep.records.resize(n);
    rep.oracle.resize(n);
    std::optional<std::size_t> tc, tc_cross;
    for (std::size_t i = 0; i < n; ++i) {
        const Observation& o = rep.observations[i];
        ThermoRecord& rec = rep.records[i];
        rec.gt = grid[i];
        rec.theta = 2.0 * grid[i] * std::sqrt(cfg.n0);
        rec.P_e = o.P_e;
        rec.C_eg = o.C_eg;
        rec.E_Q = o.P_e;
        rec.E_C = o.moments.mean_n;
        rec.S_Q = o.S_Q;
        rec.S_C = o.S_C;
        rec.S_QC = S_QC0;
        rec.mean_a = o.moments.mean_a;
        rec.cross_trace = o.cross_trace;
        rec.branch_overlap = o.branch_overlap;
        rep.oracle[i] = unitary_expansion(rec.theta, cfg.n0, cfg.nbar, cfg.phi0);
        if (!tc && o.overlap_normalized <= kOverlapThreshold) tc = i;
        if (!tc_cross && std::abs(o.cross_trace) <= kCrossThreshold) tc_cross = i;
    }
    complete_ledger(rep.records, cfg.nbar, tc);

    RunSummary& s = rep.summary;
    s.n_ph = space.n_ph;
    s.method = repr;
    s.tc_index = tc;
    s.tc_cross_index = tc_cross;
    s.extrema = locate_extrema(rep.records, cfg.prominence);
    const double after = tc ? grid[*tc] : 0.0;
    for (const auto& e : s.extrema) {
        if (e.kind == Extremum::Kind::minimum && e.gt > after) {
            s.t_min_observed = e.gt;
            s.t_min_index = e.index;
            break;
        }
    }
    if (!s.t_min_index) {
        const double target = kPi * std::sqrt(cfg.n0);
        std::size_t best = 0;
        for (std::size_t i = 1; i < n; ++i)
            if (std::abs(grid[i] - target) < std::abs(grid[best] - target)) best = i;
        s.t_min_index = best;
    }

    s.demon_margin = kNaN;
    if (tc && *s.t_min_index >= *tc) {
        double m = std::numeric_limits<double>::infinity();
        for (std::size_t i = *tc; i <= *s.t_min_index; ++i)
            m = std::min(m, rep.records[i].demon_lhs - rep.records[i].demon_rhs);
        s.demon_margin = m;
    }
    const double beta0 = thermal_beta(cfg.nbar);
    s.landauer_margin =
        std::isfinite(beta0) ? rep.records[*s.t_min_index].W_C - std::log(2.0) / beta0 : kNaN;

    const ThermoRecord& r0 = rep.records.front();
    s.first_law_residual = 0.0;
    s.min_sigma_Q = kNaN;
    s.S_QC_drift = 0.0;
    s.excitation_drift = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        const ThermoRecord& rec = rep.records[i];
        s.first_law_residual = std::max({s.first_law_residual, std::abs(rec.W_C + rec.Q_C + (rec.E_C - r0.E_C)),
                                         std::abs(rec.W_Q + rec.Q_Q + (rec.E_Q - r0.E_Q))});
        if (!std::isnan(rec.sigma_Q)) s.min_sigma_Q = std::isnan(s.min_sigma_Q) ? rec.sigma_Q : std::min(s.min_sigma_Q, rec.sigma_Q);
        const Observation& o = rep.observations[i];
        if (!std::isnan(o.S_QC)) s.S_QC_drift = std::max(s.S_QC_drift, std::abs(o.S_QC - S_QC0));
        s.excitation_drift = std::max(s.excitation_drift, std::abs(o.excitation - o0.excitation));
    }

    if (is_excited(r)) {
        std::map<std::string, double> dev{{"P_e", 0.0}, {"C_eg", 0.0}, {"Q_C", 0.0}, {"sqrt_detV", 0.0},
                                          {"mean_n", 0.0}, {"mean_a", 0.0}, {"S_Q", 0.0}};
        for (std::size_t i = 0; i < n; ++i) {
            const ThermoRecord& rec = rep.records[i];
            if (rec.theta > 2.0 * kPi * (1.0 + 1e-12)) continue;
            const ExpansionPrediction& p = rep.oracle[i];
            const Observation& o = rep.observations[i];
            auto upd = [&](const char* k, double d) { dev[k] = std::max(dev[k], d); };
            upd("P_e", std::abs(rec.P_e - p.P_e_first()));
            upd("C_eg", std::abs(rec.C_eg - p.C_eg_first()));
            upd("Q_C", std::abs(rec.Q_C - p.Q_C1_pred));
            upd("sqrt_detV", std::abs(std::sqrt(covariance(o.moments).det()) - p.sqrt_detV_pred));
            upd("mean_n", std::abs(o.moments.mean_n - p.mean_n_pred));
            upd("mean_a", std::abs(o.moments.mean_a - p.mean_a_pred));
            upd("S_Q", std::abs(rec.S_Q - p.S_Q_pred));
        }
        s.max_deviation = dev;
    }
    return rep;
}

void enforce_invariants(const RunReport& rep) {
    const RunSummary& s = rep.summary;
    if (!(s.first_law_residual <= 1e-10))
        throw InvariantViolation("first-law closure residual " + format_real(s.first_law_residual));
    if (!std::isnan(s.min_sigma_Q) && s.min_sigma_Q < -1e-6)
        throw InvariantViolation("Clausius inequality violated: min sigma_Q = " + format_real(s.min_sigma_Q));
    if (!(s.S_QC_drift <= 1e-7)) throw InvariantViolation("S_QC drift " + format_real(s.S_QC_drift));
    if (!(s.excitation_drift <= 1e-8 * rep.config.n0))
        throw InvariantViolation("excitation drift " + format_real(s.excitation_drift));
}

std::vector<ScenarioConfig> expand_runs(const ScenarioConfig& cfg) {
    if (cfg.init) return {cfg};
    auto variant = [&](const std::string& suffix, BlochVector r) {
        ScenarioConfig c = cfg;
        c.init = r;
        c.out_path = with_suffix(cfg.out_path, suffix);
        return c;
    };
    if (cfg.scenario == Scenario::fig1) {
        const double h = 1.0 / std::sqrt(2.0);
        return {variant("_psi1", {0.0, 0.0, 1.0}), variant("_psi2", {h, h, 0.0}), variant("_psi3", {0.0, 1.0, 0.0})};
    }
    if (cfg.scenario == Scenario::fig3) {
        const double sp = std::sin(cfg.phi0), cp = std::cos(cfg.phi0);
        return {variant("_plus", {sp, cp, 0.0}), variant("_minus", {-sp, -cp, 0.0})};
    }
    ScenarioConfig c = cfg;
    c.init = BlochVector{0.0, 0.0, 1.0};
    return {c};
}

std::vector<RunReport> run(const ScenarioConfig& cfg) {
    validate(cfg);
    if (cfg.out_path.empty()) throw ConfigError("an output path is required");
    std::vector<RunReport> reports;
    for (const auto& c : expand_runs(cfg)) {
        reports.push_back(simulate(c));
        write_records_csv(c.out_path, reports.back().records);
    }
    for (const auto& rep : reports) enforce_invariants(rep);
    return reports;
}

std::vector<ScalingRow> compare(const ScenarioConfig& cfg) {
    if (cfg.init && !is_excited(*cfg.init))
        throw ConfigError("compare evaluates the excited-state expansions; init must be 0,0,1");
    std::vector<double> list = cfg.n0_list.empty() ? std::vector<double>{25.0, 100.0, 400.0} : cfg.n0_list;
    std::vector<ScalingRow> rows;
    std::map<std::string, double> prev;
    const char* quantities[] = {"P_e", "C_eg", "Q_C", "sqrt_detV"};
    for (double n0 : list) {
        ScenarioConfig c = cfg;
        c.scenario = Scenario::custom;
        c.n0 = n0;
        c.init = BlochVector{0.0, 0.0, 1.0};
        c.gt_max = kPi / std::sqrt(n0);  // theta = 2 pi
        const RunReport rep = simulate(c);
        enforce_invariants(rep);
        for (const char* q : quantities) {
            ScalingRow row;
            row.n0 = n0;
            row.quantity = q;
            row.max_abs_dev = rep.summary.max_deviation.at(q);
            row.scaled_dev = row.max_abs_dev * n0 * n0;
            row.ratio = prev.count(q) ? prev[q] / row.max_abs_dev : kNaN;
            prev[q] = row.max_abs_dev;
            rows.push_back(row);
        }
    }
    return rows;
}

}  // namespace jcdemon
