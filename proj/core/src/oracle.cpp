#include "jcdemon/oracle.hpp"

#include <cmath>
#include <limits>
#include <numbers>

#include "jcdemon/thermo.hpp"

namespace jcdemon {

namespace {

constexpr double kPi = std::numbers::pi;
const cplx kI{0.0, 1.0};

}  // namespace

double delta_P_e(double th, double nb) {
    return -th / 16.0 * ((1.0 + 2.0 * nb) * th * std::cos(th) + (3.0 + 2.0 * nb) * std::sin(th));
}

double delta_P_e_second(double th, double nb) {
    return -th * (1.0 + nb) * (1.0 + 2.0 * nb) * (th * std::cos(th) - std::sin(th)) / 16.0;
}

double delta_C_eg(double th, double nb) {
    return (-2.0 * th + (3.0 + 2.0 * nb) * th * std::cos(th) - (1.0 + 2.0 * nb) * (1.0 + th * th) * std::sin(th)) /
           16.0;
}

double delta_C_eg_second(double th, double nb) {
    const double c = std::cos(th), s = std::sin(th);
    return ((5.0 + 8.0 * nb) * 2.0 * th - (11.0 + 4.0 * nb * (11.0 + 9.0 * nb)) * 2.0 * th * c +
            (12.0 + 72.0 * nb * (1.0 + nb) - (9.0 + 8.0 * nb * (4.0 + 3.0 * nb)) * th * th) * s) /
           64.0;
}

double epsilon_Q(double th, double nb) {
    return ((1.0 + 2.0 * nb) * (1.0 + 2.0 * th * th - std::cos(2.0 * th)) + 4.0 * th * std::sin(th)) / 32.0;
}

double heat_shape(double th, double nb) {
    const double s = std::sin(th);
    return th * th + s * s + 2.0 * (1.0 + 2.0 * nb) * th * s;
}

ExpansionPrediction unitary_expansion(double th, double n0, double nb, double phi0) {
    ExpansionPrediction p;
    p.theta = th;
    p.n0 = n0;
    p.nbar = nb;
    p.phi0 = phi0;
    p.valid = th / std::sqrt(n0) <= 1.0;

    const double c = std::cos(th), s = std::sin(th);
    const double sh2 = std::sin(0.5 * th) * std::sin(0.5 * th);
    const cplx ph = std::polar(1.0, phi0);

    p.P_e0 = std::cos(0.5 * th) * std::cos(0.5 * th);
    p.dP_e = delta_P_e(th, nb);
    p.C_eg0 = -ph * (0.5 * s);
    p.dC_eg = -ph * delta_C_eg(th, nb);

    const double eps = epsilon_Q(th, nb);
    p.S_Q_pred = eps > 0.0 ? eps * (-(std::log(eps) - 1.0) + std::log(n0)) / n0 : 0.0;

    const double t2 = th * th;
    const double a1 = sh2 / (2.0 * n0);
    const double a2 = (-2.0 * sh2 * (1.0 + t2 / 2.0) + th / 2.0 * s + nb * th * (th * c - s)) / (16.0 * n0 * n0);
    const double a3 = (13.0 + 5.0 * t2 / 4.0 + 8.0 * nb * (7.0 + 6.0 * nb + t2 / 4.0) +
                       (-13.0 + 9.0 * t2 / 4.0 + 8.0 * nb * (-7.0 - 6.0 * nb + (4.0 + 3.0 * nb) * t2 / 4.0)) * c -
                       2.0 * (5.0 + nb * (19.0 + 15.0 * nb)) * th * s) /
                      (32.0 * n0 * n0 * n0);
    p.mean_a_pred = ph * (std::sqrt(n0) * (1.0 + a1 + a2 + a3));

    const double b1 = sh2 / n0;
    const double b2 = ((1.0 + 2.0 * nb) * ((1.0 + t2 / 4.0) * c - 1.0) + (3.0 + 2.0 * nb) * th / 4.0 * s - t2 / 2.0) /
                      (4.0 * n0 * n0);
    const double b3 = (5.0 + 3.0 * t2 / 4.0 + 6.0 * nb * (4.0 + 4.0 * nb + t2 / 4.0) +
                       (-5.0 + t2 + 3.0 * nb * (-8.0 * (1.0 + nb) + (5.0 + 4.0 * nb) * t2 / 4.0)) * c -
                       (17.0 + 69.0 * nb + 60.0 * nb * nb) * th / 4.0 * s) /
                      (4.0 * n0 * n0 * n0);
    p.mean_a2_pred = ph * ph * (n0 * (1.0 + b1 + b2 + b3));

    p.mean_n_pred = nb + n0 + sh2 - p.dP_e / n0 - delta_P_e_second(th, nb) / (n0 * n0);

    const double shape = heat_shape(th, nb);
    const double root = std::sqrt(1.0 + shape / (4.0 * n0 * (2.0 * nb + 1.0)));
    p.sqrt_detV_pred = (nb + 0.5) * root;
    p.Q_C_pred = (nb + 0.5) * (1.0 - root);
    p.Q_C1_pred = -shape / (16.0 * n0);
    p.dE_C_pred = 1.0 - p.P_e_first();
    p.W_C_pred = -p.dE_C_pred - p.Q_C_pred;
    const double beta = thermal_beta(nb);
    p.sigma_Q_pred = std::isfinite(beta) ? p.S_Q_pred - beta * p.Q_C1_pred : std::numeric_limits<double>::quiet_NaN();
    return p;
}

Matrix2 effective_hamiltonian(cplx alpha) {
    Matrix2 h;
    h << 0.0, kI * alpha, -kI * std::conj(alpha), 0.0;
    return h;
}

QubitBasis measurement_basis(double phi0) {
    const double r = 1.0 / std::sqrt(2.0);
    QubitBasis b;
    b.plus << std::polar(r, phi0), kI * r;
    b.minus << std::polar(r, phi0), -kI * r;
    return b;
}

QubitBasis measurement_basis_at(double gt, double n0, double phi0) {
    const double r = 1.0 / std::sqrt(2.0);
    const double eps = gt / (2.0 * std::sqrt(n0));
    QubitBasis b;
    b.plus << std::polar(r, phi0), kI * std::polar(r, -eps);
    b.minus << std::polar(r, phi0), -kI * std::polar(r, eps);
    return b;
}

std::pair<cplx, cplx> conditional_amplitudes(double gt, double n0, double phi0) {
    const double r = std::sqrt(n0);
    const double eps = gt / (2.0 * r);
    return {std::polar(r, phi0 + eps), std::polar(r, phi0 - eps)};
}

double chi_phase(double gt, double n0) { return gt * (std::sqrt(n0) + 1.0 / std::sqrt(n0)); }

namespace {

double cross_phase(double gt, double n0) { return chi_phase(gt, n0) + n0 * std::sin(gt / std::sqrt(n0)); }

}  // namespace

cplx cross_trace(double gt, double n0, double nbar, int s) {
    const double sn = std::sin(gt / (2.0 * std::sqrt(n0)));
    const double damp = -2.0 * n0 * sn * sn - 4.0 * n0 * nbar / ((1.0 + nbar) * (1.0 + nbar)) * sn * sn;
    return std::polar(std::exp(damp), s * cross_phase(gt, n0));
}

cplx cross_trace_limit(double gt, double n0, double nbar, int s) {
    const double g2 = gt * gt;
    const double k = nbar / ((1.0 + nbar) * (1.0 + nbar));
    const double damp = -g2 / 2.0 - g2 * k + k * g2 * g2 / (12.0 * n0);
    return std::polar(std::exp(damp), s * 2.0 * gt * std::sqrt(n0));
}

cplx cross_trace_characteristic(double gt, double n0, double nbar, int s) {
    const double sn = std::sin(gt / (2.0 * std::sqrt(n0)));
    const double beta2 = 4.0 * n0 * sn * sn;
    return std::polar(std::exp(-beta2 * (nbar + 0.5)), s * cross_phase(gt, n0));
}

double branch_overlap(double gt, double n0, double nbar) {
    const double sn = std::sin(gt / (2.0 * std::sqrt(n0)));
    const double k = 2.0 * nbar + 1.0;
    return std::exp(-4.0 * n0 * sn * sn / k) / k;
}

Matrix2 feedback_drive(double gt, double n0, int branch, double phi0) {
    const auto [ap, am] = conditional_amplitudes(gt, n0, phi0);
    return effective_hamiltonian(branch >= 0 ? ap : am);
}

PurificationSchedule purification_schedule(double n0, double phi0, int count) {
    PurificationSchedule s;
    s.t_c = 1.0;
    s.t_min = kPi * std::sqrt(n0);
    for (int k = 1; k <= count; ++k) s.t_k.push_back((2.0 * k - 1.0) * kPi * std::sqrt(n0));
    const double r = 1.0 / std::sqrt(2.0);
    s.target << std::polar(r, phi0), r;
    return s;
}

DemonPrediction demon_predictions(double /*n0*/, double nbar) {
    DemonPrediction d;
    const double ln2 = std::log(2.0);
    d.S_C_tc_pred = bose_entropy(nbar) + ln2;
    d.nbar_tc_pred = cavity_effective_occupation(d.S_C_tc_pred);
    d.Q_C_plateau_pred = nbar - d.nbar_tc_pred;
    d.I_targets = {0.0, ln2, 0.0};
    return d;
}

}  // namespace jcdemon
