#include "jcdemon/dynamics.hpp"

#include <cmath>
#include <string>

#include <Eigen/Eigenvalues>

#include "jcdemon/errors.hpp"

namespace jcdemon {

Propagator build_propagator(double gt, const SpaceConfig& cfg) {
    validate(cfg);
    Propagator u;
    u.gt = gt;
    u.n_ph = cfg.n_ph;
    u.c.resize(cfg.n_ph - 1);
    u.s.resize(cfg.n_ph - 1);
    for (int n = 0; n + 1 < cfg.n_ph; ++n) {
        const double w = gt * std::sqrt(n + 1.0);
        u.c[n] = std::cos(w);
        u.s[n] = std::sin(w);
    }
    return u;
}

void Propagator::apply_left(Matrix& X) const {
    if (X.rows() != 2 * n_ph) throw DimensionMismatch("propagator applied to wrong row count");
    const Eigen::Index cols = X.cols();
    for (Eigen::Index j = 0; j < cols; ++j) {
        cplx* col = X.col(j).data();
        for (int n = 0; n + 1 < n_ph; ++n) {
            cplx& e = col[n];
            cplx& g = col[n_ph + n + 1];
            const cplx e0 = e;
            e = c[n] * e0 + s[n] * g;
            g = -s[n] * e0 + c[n] * g;
        }
    }
}

void Propagator::apply_right_adjoint(Matrix& X) const {
    if (X.cols() != 2 * n_ph) throw DimensionMismatch("propagator applied to wrong column count");
    for (int n = 0; n + 1 < n_ph; ++n) {
        const Eigen::Index ie = n, ig = n_ph + n + 1;
        const double cn = c[n], sn = s[n];
        Vector e = X.col(ie);
        Vector g = X.col(ig);
        X.col(ie) = cn * e + sn * g;
        X.col(ig) = -sn * e + cn * g;
    }
}

Matrix Propagator::conjugate(const Matrix& rho) const {
    Matrix out = rho;
    apply_left(out);
    apply_right_adjoint(out);
    return out;
}

Matrix Propagator::dense() const {
    Matrix U = Matrix::Identity(2 * n_ph, 2 * n_ph);
    apply_left(U);
    return U;
}

JointState make_dense_state(const DensityOperator& joint, const SpaceConfig& cfg) {
    validate(cfg);
    if (joint.dim() != 2 * cfg.n_ph) throw DimensionMismatch("joint state must have dimension 2*n_ph");
    JointState s;
    s.cfg = cfg;
    s.repr = Representation::dense;
    s.dense = joint;
    return s;
}

namespace {

double top_population(const JointState& s) {
    const int top = s.cfg.n_ph - 1;  // |e, n_ph-1>
    if (s.repr == Representation::dense) return s.dense.rho(top, top).real();
    double p = 0.0;
    for (const auto& b : s.branches) p += b.weight * std::norm(b.vec(top));
    return p;
}

}  // namespace

JointState evolve(const JointState& state0, double gt) {
    const Propagator u = build_propagator(gt, state0.cfg);
    JointState out;
    out.cfg = state0.cfg;
    out.repr = state0.repr;
    if (state0.repr == Representation::dense) {
        out.dense.rho = u.conjugate(state0.dense.rho);
        out.dense.trace_deficit = state0.dense.trace_deficit;
    } else {
        out.branches = state0.branches;
        for (auto& b : out.branches) {
            Matrix v = b.vec;
            u.apply_left(v);
            b.vec = v.col(0);
        }
    }
    const double top = top_population(out);
    if (top > out.cfg.tail_tol) {
        throw TruncationError("population " + std::to_string(top) + " on the cutoff level n_ph=" +
                              std::to_string(out.cfg.n_ph) + " exceeds tail_tol");
    }
    return out;
}

int branch_levels(double nbar, double rank_tol) {
    if (nbar < 0.0) throw DomainError("nbar must be non-negative");
    if (!(rank_tol > 0.0)) throw DomainError("rank_tol must be positive");
    if (nbar == 0.0) return 1;
    const double ratio = nbar / (1.0 + nbar);
    const double budget = 0.5 * rank_tol;
    int K = 1;
    double tail = ratio;
    while (tail > budget) {
        tail *= ratio;
        ++K;
    }
    return K;
}

JointState decompose_thermal_branches(const Matrix2& rho_q0, cplx alpha, double nbar, double rank_tol,
                                      const SpaceConfig& cfg) {
    validate(cfg);
    const int K = branch_levels(nbar, rank_tol);
    if (K > cfg.n_ph) throw TruncationError("branch rank exceeds the Fock cutoff");
    const Matrix D = displacement_columns(alpha, K, cfg);
    const auto p = thermal_populations(nbar, K);

    Eigen::SelfAdjointEigenSolver<Matrix2> es(rho_q0);
    JointState s;
    s.cfg = cfg;
    s.repr = Representation::branches;
    const int N = cfg.n_ph;
    for (int k = 1; k >= 0; --k) {  // larger qubit eigenvalue first
        const double q = es.eigenvalues()(k);
        if (q <= 0.5 * rank_tol) continue;
        const auto v = es.eigenvectors().col(k);
        for (int n = 0; n < K; ++n) {
            Branch b;
            b.weight = q * p[n];
            b.vec.resize(2 * N);
            b.vec.head(N) = v(0) * D.col(n);
            b.vec.tail(N) = v(1) * D.col(n);
            s.branches.push_back(std::move(b));
        }
    }
    return s;
}

Matrix branch_factor(const JointState& state) {
    if (state.repr != Representation::branches) throw DimensionMismatch("state is not branch-represented");
    const int dim = 2 * state.cfg.n_ph;
    Matrix F(dim, static_cast<Eigen::Index>(state.branches.size()));
    for (std::size_t i = 0; i < state.branches.size(); ++i)
        F.col(static_cast<Eigen::Index>(i)) = std::sqrt(state.branches[i].weight) * state.branches[i].vec;
    return F;
}

DensityOperator to_dense(const JointState& state) {
    if (state.repr == Representation::dense) return state.dense;
    const Matrix F = branch_factor(state);
    DensityOperator out;
    out.rho = F * F.adjoint();
    out.trace_deficit = 1.0 - out.rho.trace().real();
    return out;
}

double conserved_excitation(const JointState& state) {
    const int N = state.cfg.n_ph;
    double value = 0.0;
    if (state.repr == Representation::dense) {
        const Matrix& r = state.dense.rho;
        for (int n = 0; n < N; ++n) value += (n + 1.0) * r(n, n).real() + n * r(N + n, N + n).real();
        return value;
    }
    for (const auto& b : state.branches) {
        double v = 0.0;
        for (int n = 0; n < N; ++n) v += (n + 1.0) * std::norm(b.vec(n)) + n * std::norm(b.vec(N + n));
        value += b.weight * v;
    }
    return value;
}

}  // namespace jcdemon
