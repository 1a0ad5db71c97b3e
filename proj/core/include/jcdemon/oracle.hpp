#pragma once

#include <array>
#include <utility>
#include <vector>

#include "jcdemon/fock.hpp"

namespace jcdemon {

using QubitVector = Eigen::Vector2cd;  // (|e>, |g>) components

// Large-n0 expansion for a qubit starting in |e> and a displaced thermal cavity,
// parameterised by the Bloch rotation angle theta = 2 g t sqrt(n0).
struct ExpansionPrediction {
    double theta = 0.0;
    double n0 = 1.0;
    double nbar = 0.0;
    double phi0 = 0.0;
    double P_e0 = 1.0;
    double dP_e = 0.0;  // coefficient of 1/n0
    cplx C_eg0{0.0, 0.0};
    cplx dC_eg{0.0, 0.0};  // coefficient of 1/n0, phase included
    double S_Q_pred = 0.0;
    cplx mean_a_pred{0.0, 0.0};
    cplx mean_a2_pred{0.0, 0.0};
    double mean_n_pred = 0.0;
    double sqrt_detV_pred = 0.5;
    double Q_C_pred = 0.0;    // square-root form
    double Q_C1_pred = 0.0;   // first order in 1/n0
    double dE_C_pred = 0.0;
    double W_C_pred = 0.0;
    double sigma_Q_pred = 0.0;
    bool valid = true;        // false once theta / sqrt(n0) > 1

    double P_e_first() const { return P_e0 + dP_e / n0; }
    cplx C_eg_first() const { return C_eg0 + dC_eg / n0; }
};

double delta_P_e(double theta, double nbar);
double delta_P_e_second(double theta, double nbar);      // coefficient of 1/n0^2
double delta_C_eg(double theta, double nbar);            // real bracket coefficient of 1/n0
double delta_C_eg_second(double theta, double nbar);     // real bracket coefficient of 1/n0^2
double epsilon_Q(double theta, double nbar);
double heat_shape(double theta, double nbar);            // theta^2 + sin^2 + 2(1+2nbar) theta sin

ExpansionPrediction unitary_expansion(double theta, double n0, double nbar, double phi0 = 0.0);

// i (alpha sigma_+ - conj(alpha) sigma_-), g = 1.
Matrix2 effective_hamiltonian(cplx alpha);

struct QubitBasis {
    QubitVector plus;
    QubitVector minus;
};

// Eigenbasis of the t = 0 effective drive, (e^{i phi0}, +-i)/sqrt2.
QubitBasis measurement_basis(double phi0);
// Same basis co-rotating with the conditional field axes, (e^{i phi0}, +-i e^{-+i eps})/sqrt2, eps = gt/(2 sqrt n0).
QubitBasis measurement_basis_at(double gt, double n0, double phi0);

// alpha_+- = sqrt(n0) e^{i phi0} e^{+- i gt/(2 sqrt n0)}.
std::pair<cplx, cplx> conditional_amplitudes(double gt, double n0, double phi0 = 0.0);
double chi_phase(double gt, double n0);

// Trace of the off-diagonal cavity block rho_C^{s,-s}, s = +1 or -1, full finite-n0 form.
cplx cross_trace(double gt, double n0, double nbar, int s = +1);
// Large-n0 limit form.
cplx cross_trace_limit(double gt, double n0, double nbar, int s = +1);
// Same phase as cross_trace, modulus from the thermal characteristic function
// exp(-|alpha_+ - alpha_-|^2 (nbar + 1/2)).
cplx cross_trace_characteristic(double gt, double n0, double nbar, int s = +1);

// Tr[rho_C^{++} rho_C^{--}] for displaced thermal conditional states.
double branch_overlap(double gt, double n0, double nbar);

Matrix2 feedback_drive(double gt, double n0, int branch, double phi0 = 0.0);

struct PurificationSchedule {
    double t_c = 1.0;
    double t_min = 0.0;
    std::vector<double> t_k;
    QubitVector target;
};

PurificationSchedule purification_schedule(double n0, double phi0 = 0.0, int count = 3);

struct DemonPrediction {
    double S_C_tc_pred = 0.0;
    double nbar_tc_pred = 0.0;
    double Q_C_plateau_pred = 0.0;
    std::array<double, 3> I_targets{};  // at 0, t_c, t_min
};

DemonPrediction demon_predictions(double n0, double nbar);

}  // namespace jcdemon
