#pragma once

#include <cstddef>
#include <optional>
#include <utility>
#include <vector>

#include "jcdemon/fock.hpp"

namespace jcdemon {

// Eigenvalues in [-1e-10, 0) count as zero; anything more negative is a positivity violation.
inline constexpr double kNegativeEigenTol = 1e-10;

double entropy_of_spectrum(const Eigen::VectorXd& eigenvalues);
double von_neumann_entropy(const Matrix& rho);
double von_neumann_entropy(const DensityOperator& rho);
// Entropy of F F^dagger, computed from whichever Gram product is smaller.
double gram_entropy(const Matrix& F);

// -p ln p - (1-p) ln(1-p)
double binary_entropy(double p);
// (1+x) ln(1+x) - x ln x: entropy of a thermal mode with mean occupation x.
double bose_entropy(double x);

// Inverse of binary_entropy on [0, 1/2]. Throws DomainError for S > ln2 + 1e-9.
double qubit_effective_occupation(double S);
// Inverse of bose_entropy on [0, inf).
double cavity_effective_occupation(double S);

double mutual_information(double S_Q, double S_C, double S_QC);

// ln(1 + 1/nbar) in units of 1/(hbar omega0); +inf for nbar = 0.
double thermal_beta(double nbar);

// h(x) = (x+1/2) ln(x+1/2) - (x-1/2) ln(x-1/2), h(1/2) = 0.
double gaussian_h(double x);
double gaussian_entropy(const CovarianceMatrix& V);

struct ThermoRecord {
    double gt = 0.0;
    double theta = 0.0;
    double P_e = 0.0;
    cplx C_eg{0.0, 0.0};
    double E_Q = 0.0;
    double E_C = 0.0;
    double S_Q = 0.0;
    double S_C = 0.0;
    double S_QC = 0.0;
    double I_QC = 0.0;
    double p_eff_Q = 0.0;
    double nbar_eff_C = 0.0;
    double Eth_Q = 0.0;
    double Eth_C = 0.0;
    double Q_Q = 0.0;
    double Q_C = 0.0;
    double W_Q = 0.0;
    double W_C = 0.0;
    double sigma_Q = 0.0;
    double demon_lhs = 0.0;
    double demon_rhs = 0.0;
    cplx mean_a{0.0, 0.0};
    cplx cross_trace{0.0, 0.0};
    double branch_overlap = 0.0;
};

struct HeatWork {
    double Q_Q = 0.0;
    double W_Q = 0.0;
    double Q_C = 0.0;
    double W_C = 0.0;
};

// Cumulative from r0. Q_j = -(Eth_j(t) - Eth_j(0)); W_j = -(E_j(t) - E_j(0)) - Q_j.
HeatWork heat_and_work(const ThermoRecord& r0, const ThermoRecord& r);

// Delta S_Q - beta_C(0) Q_C. NaN when beta_C(0) is infinite.
double clausius_sigma(const ThermoRecord& r0, const ThermoRecord& r, double beta_c0);

// (Delta S_Q - beta_C(t_c) Q_C(t_c -> t), Delta I(t_c -> t)).
std::pair<double, double> demon_check(const ThermoRecord& r_tc, const ThermoRecord& r);

// Fills I_QC, effective occupations, thermal energies, heat, work, sigma_Q and, when a
// reference index is given, the demon columns (NaN before it). Requires records[0] at t = 0
// and the raw E_*, S_* columns already set.
void complete_ledger(std::vector<ThermoRecord>& records, double nbar, std::optional<std::size_t> tc_index);

}  // namespace jcdemon
