#include "jcdemon/fock.hpp"

#include <cmath>
#include <string>

#include "jcdemon/errors.hpp"

namespace jcdemon {

namespace {

constexpr double kRescale = 1e150;
const double kLogRescale = std::log(kRescale);

// Associated Laguerre L_j^(k)(x), j = 0..count-1, as (sign, log|L|) pairs.
// Forward three-term recurrence; the running pair is rescaled to stay finite.
void laguerre_log(int k, double x, int count, std::vector<double>& sign, std::vector<double>& logabs) {
    sign.assign(count, 0.0);
    logabs.assign(count, 0.0);
    if (count <= 0) return;
    double prev = 1.0;
    double scale = 0.0;
    auto store = [&](int j, double v) {
        if (v == 0.0) {
            sign[j] = 0.0;
            logabs[j] = -INFINITY;
        } else {
            sign[j] = v > 0 ? 1.0 : -1.0;
            logabs[j] = std::log(std::abs(v)) + scale;
        }
    };
    store(0, prev);
    if (count == 1) return;
    double cur = 1.0 + k - x;
    store(1, cur);
    for (int j = 1; j + 1 < count; ++j) {
        double next = ((2.0 * j + 1.0 + k - x) * cur - (j + k) * prev) / (j + 1.0);
        prev = cur;
        cur = next;
        if (std::abs(cur) > kRescale) {
            cur /= kRescale;
            prev /= kRescale;
            scale += kLogRescale;
        }
        store(j + 1, cur);
    }
}

}  // namespace

void validate(const SpaceConfig& cfg) {
    if (cfg.n_ph < 2) throw ConfigError("n_ph must be >= 2, got " + std::to_string(cfg.n_ph));
    if (!(cfg.tail_tol > 0.0)) throw ConfigError("tail_tol must be positive");
}

int auto_truncation(double n0, double nbar) {
    return static_cast<int>(std::ceil(n0 + 12.0 * std::sqrt(n0 * (2.0 * nbar + 1.0)) + 20.0));
}

Matrix annihilation(const SpaceConfig& cfg) {
    validate(cfg);
    Matrix a = Matrix::Zero(cfg.n_ph, cfg.n_ph);
    for (int n = 1; n < cfg.n_ph; ++n) a(n - 1, n) = std::sqrt(static_cast<double>(n));
    return a;
}

Matrix displacement_columns(cplx alpha, int ncols, const SpaceConfig& cfg) {
    validate(cfg);
    const int N = cfg.n_ph;
    if (ncols < 0 || ncols > N) ncols = N;
    Matrix D = Matrix::Zero(N, ncols);
    const double r = std::abs(alpha);
    if (r == 0.0) {
        for (int n = 0; n < ncols; ++n) D(n, n) = 1.0;
        return D;
    }
    const double x = r * r;
    const double phi = std::arg(alpha);
    const double logr = std::log(r);

    std::vector<double> lf(N + 1);
    for (int n = 0; n <= N; ++n) lf[n] = std::lgamma(n + 1.0);

    std::vector<double> sgn, logl;
    for (int k = 0; k < N; ++k) {
        const int count = N - k;
        laguerre_log(k, x, count, sgn, logl);
        const cplx below = std::polar(1.0, k * phi);                            // alpha^k / |alpha|^k
        const cplx above = std::polar((k % 2) ? -1.0 : 1.0, -k * phi);         // (-conj alpha)^k / |alpha|^k
        for (int j = 0; j < count; ++j) {
            if (sgn[j] == 0.0) continue;
            const double mag = std::exp(0.5 * (lf[j] - lf[j + k]) + k * logr - 0.5 * x + logl[j]) * sgn[j];
            if (j < ncols) D(j + k, j) = mag * below;              // m = j + k >= n = j
            if (k > 0 && j + k < ncols) D(j, j + k) = mag * above;  // m = j < n = j + k
        }
    }

    const double norm0 = D.col(0).squaredNorm();
    if (std::abs(1.0 - norm0) > cfg.tail_tol) {
        throw TruncationError("displacement |alpha|^2=" + std::to_string(x) + " leaks " +
                              std::to_string(1.0 - norm0) + " beyond n_ph=" + std::to_string(N));
    }
    return D;
}

Matrix displacement(cplx alpha, const SpaceConfig& cfg) { return displacement_columns(alpha, -1, cfg); }

std::vector<double> thermal_populations(double nbar, int count) {
    if (nbar < 0.0) throw DomainError("nbar must be non-negative");
    std::vector<double> p(count > 0 ? count : 0, 0.0);
    if (count <= 0) return p;
    if (nbar == 0.0) {
        p[0] = 1.0;
        return p;
    }
    const double ratio = nbar / (1.0 + nbar);
    double v = 1.0 / (1.0 + nbar);
    for (int n = 0; n < count; ++n) {
        p[n] = v;
        v *= ratio;
    }
    return p;
}

DensityOperator thermal_state(double nbar, const SpaceConfig& cfg) {
    validate(cfg);
    const auto p = thermal_populations(nbar, cfg.n_ph);
    DensityOperator out;
    out.rho = Matrix::Zero(cfg.n_ph, cfg.n_ph);
    for (int n = 0; n < cfg.n_ph; ++n) out.rho(n, n) = p[n];
    out.trace_deficit = nbar == 0.0 ? 0.0 : std::pow(nbar / (1.0 + nbar), cfg.n_ph);
    return out;
}

DensityOperator displaced_thermal(cplx alpha, double nbar, const SpaceConfig& cfg) {
    validate(cfg);
    const auto p = thermal_populations(nbar, cfg.n_ph);
    int K = 0;
    while (K < cfg.n_ph && p[K] > 0.0) ++K;
    const Matrix D = displacement_columns(alpha, K, cfg);
    Matrix X = D;
    for (int n = 0; n < K; ++n) X.col(n) *= std::sqrt(p[n]);
    DensityOperator out;
    out.rho = X * X.adjoint();
    out.trace_deficit = 1.0 - out.rho.trace().real();
    if (out.trace_deficit > cfg.tail_tol) {
        throw TruncationError("displaced thermal state loses " + std::to_string(out.trace_deficit) +
                              " of its trace at n_ph=" + std::to_string(cfg.n_ph));
    }
    return out;
}

Matrix2 bloch_to_density(double rx, double ry, double rz) {
    Matrix2 r;
    r << cplx(1.0 + rz, 0.0), cplx(rx, -ry), cplx(rx, ry), cplx(1.0 - rz, 0.0);
    return 0.5 * r;
}

Matrix kron_qubit_cavity(const Matrix& q, const Matrix& c) {
    if (q.rows() != 2 || q.cols() != 2) throw DimensionMismatch("qubit factor must be 2x2");
    if (c.rows() != c.cols()) throw DimensionMismatch("cavity factor must be square");
    const Eigen::Index N = c.rows();
    Matrix out(2 * N, 2 * N);
    for (int a = 0; a < 2; ++a)
        for (int b = 0; b < 2; ++b) out.block(a * N, b * N, N, N) = q(a, b) * c;
    return out;
}

DensityOperator tensor(const DensityOperator& q, const DensityOperator& c) {
    DensityOperator out;
    out.rho = kron_qubit_cavity(q.rho, c.rho);
    out.trace_deficit = 1.0 - out.rho.trace().real();
    return out;
}

Matrix trace_out_cavity(const Matrix& joint, int n_ph) {
    if (joint.rows() != 2 * n_ph || joint.cols() != 2 * n_ph)
        throw DimensionMismatch("joint operator is not 2*n_ph square");
    Matrix out(2, 2);
    for (int a = 0; a < 2; ++a)
        for (int b = 0; b < 2; ++b) out(a, b) = joint.block(a * n_ph, b * n_ph, n_ph, n_ph).trace();
    return out;
}

Matrix trace_out_qubit(const Matrix& joint, int n_ph) {
    if (joint.rows() != 2 * n_ph || joint.cols() != 2 * n_ph)
        throw DimensionMismatch("joint operator is not 2*n_ph square");
    return joint.topLeftCorner(n_ph, n_ph) + joint.bottomRightCorner(n_ph, n_ph);
}

DensityOperator partial_trace_cavity(const DensityOperator& joint, int n_ph) {
    DensityOperator out;
    out.rho = trace_out_cavity(joint.rho, n_ph);
    out.trace_deficit = joint.trace_deficit;
    return out;
}

DensityOperator partial_trace_qubit(const DensityOperator& joint, int n_ph) {
    DensityOperator out;
    out.rho = trace_out_qubit(joint.rho, n_ph);
    out.trace_deficit = joint.trace_deficit;
    return out;
}

CavityMoments cavity_moments(const Matrix& rho) {
    if (rho.rows() != rho.cols()) throw DimensionMismatch("cavity state must be square");
    CavityMoments m;
    const Eigen::Index N = rho.rows();
    for (Eigen::Index n = 0; n < N; ++n) {
        const double dn = static_cast<double>(n);
        m.mean_n += dn * rho(n, n).real();
        if (n >= 1) m.mean_a += std::sqrt(dn) * rho(n, n - 1);
        if (n >= 2) m.mean_a2 += std::sqrt(dn * (dn - 1.0)) * rho(n, n - 2);
    }
    return m;
}

CavityMoments cavity_moments(const DensityOperator& rho_c) { return cavity_moments(rho_c.rho); }

CovarianceMatrix covariance(const CavityMoments& m) {
    CovarianceMatrix v;
    const double ra = m.mean_a.real(), ia = m.mean_a.imag();
    v.var_q = m.mean_a2.real() + m.mean_n + 0.5 - 2.0 * ra * ra;
    v.var_p = -m.mean_a2.real() + m.mean_n + 0.5 - 2.0 * ia * ia;
    v.cov_qp = m.mean_a2.imag() - 2.0 * ra * ia;
    return v;
}

}  // namespace jcdemon
