#include "jcdemon/observables.hpp"

#include <cmath>
#include <limits>

#include "jcdemon/errors.hpp"
#include "jcdemon/oracle.hpp"
#include "jcdemon/thermo.hpp"

namespace jcdemon {

namespace {

constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();

void fill_qubit(Observation& o) {
    o.P_e = o.rho_q(0, 0).real();
    o.C_eg = o.rho_q(0, 1);
    o.S_Q = von_neumann_entropy(Matrix(o.rho_q));
}

// Moments of rho_C = sum_j x_j x_j^dagger for the columns of X (n_ph rows).
void accumulate_moments(const Matrix& X, CavityMoments& m) {
    const Eigen::Index N = X.rows();
    for (Eigen::Index j = 0; j < X.cols(); ++j) {
        const cplx* x = X.col(j).data();
        for (Eigen::Index n = 0; n < N; ++n) {
            const double dn = static_cast<double>(n);
            m.mean_n += dn * std::norm(x[n]);
            if (n + 1 < N) m.mean_a += std::conj(x[n]) * std::sqrt(dn + 1.0) * x[n + 1];
            if (n + 2 < N) m.mean_a2 += std::conj(x[n]) * std::sqrt((dn + 1.0) * (dn + 2.0)) * x[n + 2];
        }
    }
}

Matrix block_sideways(const Matrix& F, int N) {
    Matrix out(N, 2 * F.cols());
    out << F.topRows(N), F.bottomRows(N);
    return out;
}

double hs_inner(const Matrix& a, const Matrix& b) { return (a.cwiseProduct(b.conjugate())).sum().real(); }

}  // namespace

Observation observe(const JointState& state, bool joint_entropy) {
    Observation o;
    o.S_QC = kNaN;
    const int N = state.cfg.n_ph;
    if (state.repr == Representation::dense) {
        const Matrix& rho = state.dense.rho;
        o.rho_q = trace_out_cavity(rho, N);
        const Matrix rc = trace_out_qubit(rho, N);
        o.S_C = von_neumann_entropy(rc);
        o.moments = cavity_moments(rc);
        if (joint_entropy) o.S_QC = von_neumann_entropy(rho);
    } else {
        const Matrix F = branch_factor(state);
        const auto E = F.topRows(N);
        const auto G = F.bottomRows(N);
        o.rho_q(0, 0) = E.squaredNorm();
        o.rho_q(1, 1) = G.squaredNorm();
        o.rho_q(0, 1) = (E.cwiseProduct(G.conjugate())).sum();
        o.rho_q(1, 0) = std::conj(o.rho_q(0, 1));
        o.S_C = gram_entropy(block_sideways(F, N));
        accumulate_moments(E, o.moments);
        accumulate_moments(G, o.moments);
        if (joint_entropy) o.S_QC = gram_entropy(F);
    }
    fill_qubit(o);
    o.excitation = o.moments.mean_n + o.P_e;
    return o;
}

Simulator::Simulator(const SpaceConfig& cfg, const Matrix2& rho_q0, cplx alpha0, double nbar, Representation repr,
                     double rank_tol)
    : alpha0_(alpha0), nbar_(nbar) {
    validate(cfg);
    if (std::abs(alpha0) == 0.0) throw ConfigError("the displacement amplitude must be nonzero");
    const double phi0 = std::arg(alpha0);
    const auto basis = measurement_basis(phi0);
    const int N = cfg.n_ph;
    if (repr == Representation::dense) {
        const DensityOperator rc = displaced_thermal(alpha0, nbar, cfg);
        DensityOperator rq;
        rq.rho = rho_q0;
        state0_ = make_dense_state(tensor(rq, rc), cfg);
        rho_c0_ = rc.rho;
    } else {
        state0_ = decompose_thermal_branches(rho_q0, alpha0, nbar, rank_tol, cfg);
        const int K = branch_levels(nbar, rank_tol);
        const Matrix D = displacement_columns(alpha0, K, cfg);
        const auto p = thermal_populations(nbar, K);
        probe_plus_.resize(2 * N, K);
        probe_minus_.resize(2 * N, K);
        for (int n = 0; n < K; ++n) {
            const Vector col = std::sqrt(p[n]) * D.col(n);
            probe_plus_.col(n) << basis.plus(0) * col, basis.plus(1) * col;
            probe_minus_.col(n) << basis.minus(0) * col, basis.minus(1) * col;
        }
    }
}

void Simulator::measurement_probes(const Propagator& u, Observation& o) const {
    const int N = state0_.cfg.n_ph;
    const double n0 = std::norm(alpha0_);
    const auto b0 = measurement_basis(std::arg(alpha0_));
    const auto bt = measurement_basis_at(u.gt, n0, std::arg(alpha0_));
    Matrix2 M;
    double overlap = 0.0, pur_p = 0.0, pur_m = 0.0;
    if (state0_.repr == Representation::dense) {
        auto evolved = [&](const QubitVector& a, const QubitVector& b) {
            return u.conjugate(kron_qubit_cavity(Matrix(a * b.adjoint()), rho_c0_));
        };
        M = trace_out_cavity(evolved(b0.plus, b0.minus), N);
        const Matrix rpp = trace_out_qubit(evolved(b0.plus, b0.plus), N);
        const Matrix rmm = trace_out_qubit(evolved(b0.minus, b0.minus), N);
        overlap = hs_inner(rpp, rmm);
        pur_p = hs_inner(rpp, rpp);
        pur_m = hs_inner(rmm, rmm);
    } else {
        Matrix Xp = probe_plus_, Xm = probe_minus_;
        u.apply_left(Xp);
        u.apply_left(Xm);
        for (int a = 0; a < 2; ++a)
            for (int b = 0; b < 2; ++b)
                M(a, b) = (Xp.middleRows(a * N, N).cwiseProduct(Xm.middleRows(b * N, N).conjugate())).sum();
        const Matrix Fp = block_sideways(Xp, N), Fm = block_sideways(Xm, N);
        overlap = (Fp.adjoint() * Fm).squaredNorm();
        pur_p = (Fp.adjoint() * Fp).squaredNorm();
        pur_m = (Fm.adjoint() * Fm).squaredNorm();
    }
    o.cross_trace = bt.plus.dot(M * bt.minus);
    o.branch_overlap = overlap;
    o.overlap_normalized = overlap / std::sqrt(pur_p * pur_m);
}

Observation Simulator::observe(double gt, bool joint_entropy) const {
    const JointState st = evolve(state0_, gt);
    Observation o = jcdemon::observe(st, joint_entropy);
    o.gt = gt;
    measurement_probes(build_propagator(gt, state0_.cfg), o);
    return o;
}

}  // namespace jcdemon
