#include "jcdemon/thermo.hpp"

#include <cmath>
#include <limits>
#include <string>

#include <Eigen/Eigenvalues>

#include "jcdemon/errors.hpp"

namespace jcdemon {

namespace {

constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();
const double kLn2 = std::log(2.0);

double xlogx(double x) { return x > 0.0 ? x * std::log(x) : 0.0; }

// Bisection on an increasing function until the bracket stops shrinking.
template <class F>
double bisect_increasing(F f, double target, double lo, double hi) {
    for (int it = 0; it < 4000; ++it) {
        const double mid = 0.5 * (lo + hi);
        if (mid <= lo || mid >= hi) break;
        if (f(mid) < target) lo = mid; else hi = mid;
    }
    const double flo = std::abs(f(lo) - target), fhi = std::abs(f(hi) - target);
    return flo <= fhi ? lo : hi;
}

}  // namespace

double entropy_of_spectrum(const Eigen::VectorXd& ev) {
    double s = 0.0;
    for (Eigen::Index i = 0; i < ev.size(); ++i) {
        double l = ev(i);
        if (l < -kNegativeEigenTol)
            throw DomainError("density operator has eigenvalue " + std::to_string(l) + " below -1e-10");
        if (l <= 0.0) continue;
        if (l > 1.0) l = 1.0;
        s -= l * std::log(l);
    }
    return s;
}

double von_neumann_entropy(const Matrix& rho) {
    Eigen::SelfAdjointEigenSolver<Matrix> es(rho, Eigen::EigenvaluesOnly);
    return entropy_of_spectrum(es.eigenvalues());
}

double von_neumann_entropy(const DensityOperator& rho) { return von_neumann_entropy(rho.rho); }

double gram_entropy(const Matrix& F) {
    const Matrix G = F.cols() <= F.rows() ? Matrix(F.adjoint() * F) : Matrix(F * F.adjoint());
    return von_neumann_entropy(G);
}

double binary_entropy(double p) { return -xlogx(p) - xlogx(1.0 - p); }

double bose_entropy(double x) {
    if (x <= 0.0) return 0.0;
    return (1.0 + x) * std::log1p(x) - x * std::log(x);
}

double qubit_effective_occupation(double S) {
    if (S > kLn2 + 1e-9) throw DomainError("qubit entropy " + std::to_string(S) + " exceeds ln 2");
    if (S <= 0.0) return 0.0;
    if (S >= kLn2) return 0.5;
    return bisect_increasing(binary_entropy, S, 0.0, 0.5);
}

double cavity_effective_occupation(double S) {
    if (S <= 0.0) return 0.0;
    const double hi = std::max(1.0, std::exp(S));
    return bisect_increasing(bose_entropy, S, 0.0, hi);
}

double mutual_information(double S_Q, double S_C, double S_QC) { return S_Q + S_C - S_QC; }

double thermal_beta(double nbar) {
    if (nbar < 0.0) throw DomainError("nbar must be non-negative");
    if (nbar == 0.0) return std::numeric_limits<double>::infinity();
    return std::log1p(1.0 / nbar);
}

double gaussian_h(double x) {
    if (x < 0.5) throw DomainError("symplectic eigenvalue below 1/2");
    return xlogx(x + 0.5) - xlogx(x - 0.5);
}

double gaussian_entropy(const CovarianceMatrix& V) {
    const double det = V.det();
    if (det < 0.25 - 1e-6) throw DomainError("covariance violates the uncertainty bound: det=" + std::to_string(det));
    const double x = det <= 0.25 ? 0.5 : std::sqrt(det);
    return gaussian_h(x);
}

HeatWork heat_and_work(const ThermoRecord& r0, const ThermoRecord& r) {
    HeatWork hw;
    hw.Q_Q = -(r.Eth_Q - r0.Eth_Q);
    hw.W_Q = -(r.E_Q - r0.E_Q) - hw.Q_Q;
    hw.Q_C = -(r.Eth_C - r0.Eth_C);
    hw.W_C = -(r.E_C - r0.E_C) - hw.Q_C;
    return hw;
}

double clausius_sigma(const ThermoRecord& r0, const ThermoRecord& r, double beta_c0) {
    if (!std::isfinite(beta_c0)) return kNaN;
    return (r.S_Q - r0.S_Q) - beta_c0 * r.Q_C;
}

std::pair<double, double> demon_check(const ThermoRecord& r_tc, const ThermoRecord& r) {
    const double beta_tc = thermal_beta(r_tc.nbar_eff_C);
    const double dQ = r.Q_C - r_tc.Q_C;
    const double lhs = (r.S_Q - r_tc.S_Q) - (dQ == 0.0 ? 0.0 : beta_tc * dQ);
    return {lhs, r.I_QC - r_tc.I_QC};
}

void complete_ledger(std::vector<ThermoRecord>& records, double nbar, std::optional<std::size_t> tc_index) {
    if (records.empty()) return;
    for (auto& r : records) {
        r.I_QC = mutual_information(r.S_Q, r.S_C, r.S_QC);
        r.p_eff_Q = qubit_effective_occupation(std::min(r.S_Q, kLn2));
        r.nbar_eff_C = cavity_effective_occupation(r.S_C);
        r.Eth_Q = r.p_eff_Q;
        r.Eth_C = r.nbar_eff_C;
    }
    const ThermoRecord r0 = records.front();
    const double beta0 = thermal_beta(nbar);
    for (auto& r : records) {
        const HeatWork hw = heat_and_work(r0, r);
        r.Q_Q = hw.Q_Q;
        r.W_Q = hw.W_Q;
        r.Q_C = hw.Q_C;
        r.W_C = hw.W_C;
        r.sigma_Q = clausius_sigma(r0, r, beta0);
        r.demon_lhs = kNaN;
        r.demon_rhs = kNaN;
    }
    if (tc_index && *tc_index < records.size()) {
        const ThermoRecord rtc = records[*tc_index];
        for (std::size_t i = *tc_index; i < records.size(); ++i) {
            const auto [lhs, rhs] = demon_check(rtc, records[i]);
            records[i].demon_lhs = lhs;
            records[i].demon_rhs = rhs;
        }
    }
}

}  // namespace jcdemon
