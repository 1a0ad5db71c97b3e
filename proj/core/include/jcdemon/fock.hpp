#pragma once

#include <complex>
#include <vector>

#include <Eigen/Dense>

namespace jcdemon {

using cplx = std::complex<double>;
using Matrix = Eigen::MatrixXcd;
using Vector = Eigen::VectorXcd;
using Matrix2 = Eigen::Matrix2cd;

inline constexpr double kDefaultTailTol = 1e-10;

// Fock space |0> .. |n_ph - 1>. Energies in units of hbar*omega0, times as g*t.
struct SpaceConfig {
    int n_ph = 2;
    double tail_tol = kDefaultTailTol;
};

void validate(const SpaceConfig& cfg);

// Smallest n_ph satisfying the default adequacy margin n0 + 12 sqrt(n0 (2 nbar + 1)) + 20.
int auto_truncation(double n0, double nbar);

struct DensityOperator {
    Matrix rho;
    double trace_deficit = 0.0;  // 1 - Tr(rho)

    int dim() const { return static_cast<int>(rho.rows()); }
};

Matrix annihilation(const SpaceConfig& cfg);

// Matrix of exp(alpha a^dag - conj(alpha) a) restricted to the first `ncols` columns
// (all columns when ncols < 0). Built from closed-form Laguerre matrix elements.
Matrix displacement_columns(cplx alpha, int ncols, const SpaceConfig& cfg);
Matrix displacement(cplx alpha, const SpaceConfig& cfg);

// Raw Bose-Einstein weights nbar^n / (1 + nbar)^(n + 1), n = 0 .. count-1.
std::vector<double> thermal_populations(double nbar, int count);

DensityOperator thermal_state(double nbar, const SpaceConfig& cfg);
DensityOperator displaced_thermal(cplx alpha, double nbar, const SpaceConfig& cfg);

// Qubit density matrix from a Bloch vector, basis order (|e>, |g>).
Matrix2 bloch_to_density(double rx, double ry, double rz);

// Joint operators are ordered qubit (x) cavity: index = q * n_ph + n, q = 0 for |e>.
DensityOperator tensor(const DensityOperator& q, const DensityOperator& c);
Matrix kron_qubit_cavity(const Matrix& q, const Matrix& c);
DensityOperator partial_trace_cavity(const DensityOperator& joint, int n_ph);
DensityOperator partial_trace_qubit(const DensityOperator& joint, int n_ph);
Matrix trace_out_cavity(const Matrix& joint, int n_ph);
Matrix trace_out_qubit(const Matrix& joint, int n_ph);

struct CavityMoments {
    cplx mean_a{0.0, 0.0};
    cplx mean_a2{0.0, 0.0};
    double mean_n = 0.0;
};

// Quadratures q = (a + a^dag)/sqrt2, p = (a - a^dag)/(i sqrt2).
struct CovarianceMatrix {
    double var_q = 0.5;
    double var_p = 0.5;
    double cov_qp = 0.0;

    double det() const { return var_q * var_p - cov_qp * cov_qp; }
};

CavityMoments cavity_moments(const DensityOperator& rho_c);
CavityMoments cavity_moments(const Matrix& rho_c);
CovarianceMatrix covariance(const CavityMoments& m);

}  // namespace jcdemon
