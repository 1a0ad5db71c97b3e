#include <cmath>
#include <numbers>

#include <gtest/gtest.h>

#include "jcdemon/dynamics.hpp"
#include "jcdemon/observables.hpp"
#include "jcdemon/oracle.hpp"
#include "jcdemon/thermo.hpp"
#include "oracles.hpp"

using namespace jcdemon;

namespace {

constexpr double kPi = std::numbers::pi;
const double kLn2 = std::log(2.0);
const cplx kI{0.0, 1.0};

double op_norm(const Matrix2& m) {
    Eigen::JacobiSVD<Matrix2> svd(m);
    return svd.singularValues()(0);
}

}  // namespace

TEST(Expansion, ZeroAngle) {
    const auto p = unitary_expansion(0.0, 100.0, 1.0);
    EXPECT_EQ(p.P_e_first(), 1.0);
    EXPECT_EQ(std::abs(p.C_eg_first()), 0.0);
    EXPECT_EQ(p.Q_C_pred, 0.0);
    EXPECT_EQ(p.Q_C1_pred, 0.0);
    EXPECT_NEAR(p.sqrt_detV_pred, 1.5, 1e-15);
    EXPECT_NEAR(p.mean_n_pred, 101.0, 1e-12);
    EXPECT_NEAR(std::abs(p.mean_a_pred - 10.0), 0.0, 1e-12);
    EXPECT_EQ(p.S_Q_pred, 0.0);
}

TEST(Expansion, HalfTurnCoefficients) {
    EXPECT_NEAR(delta_P_e(kPi, 1.0), 3.0 * kPi * kPi / 16.0, 1e-14);
    EXPECT_NEAR(delta_P_e(kPi, 1.0), 1.8506, 1e-4);
    EXPECT_NEAR(delta_C_eg(kPi, 1.0), -7.0 * kPi / 16.0, 1e-14);
    EXPECT_NEAR(unitary_expansion(kPi, 500.0, 1.0).Q_C1_pred, -kPi * kPi / 8000.0, 1e-15);
    EXPECT_NEAR(unitary_expansion(kPi, 500.0, 1.0).Q_C1_pred, -1.234e-3, 1e-6);
}

TEST(Expansion, ValidityFlag) {
    EXPECT_TRUE(unitary_expansion(9.9, 100.0, 1.0).valid);
    EXPECT_FALSE(unitary_expansion(10.1, 100.0, 1.0).valid);
}

TEST(Expansion, PhaseRotation) {
    const double phi = 0.9;
    const auto a = unitary_expansion(2.0, 100.0, 1.0, 0.0), b = unitary_expansion(2.0, 100.0, 1.0, phi);
    EXPECT_NEAR(std::abs(b.C_eg_first() - std::polar(1.0, phi) * a.C_eg_first()), 0.0, 1e-15);
    EXPECT_NEAR(std::abs(b.mean_a2_pred - std::polar(1.0, 2 * phi) * a.mean_a2_pred), 0.0, 1e-12);
    EXPECT_EQ(a.P_e_first(), b.P_e_first());
}

TEST(Expansion, FirstMomentsAgainstExactNumerics) {
    const double n0 = 100.0, nb = 1.0;
    const SpaceConfig cfg{auto_truncation(n0, nb)};
    const Simulator sim(cfg, bloch_to_density(0, 0, 1), std::sqrt(n0), nb, Representation::branches);
    for (double th : {kPi / 2, kPi, 1.5 * kPi, 2 * kPi}) {
        const auto o = sim.observe(th / (2 * std::sqrt(n0)));
        const auto p = unitary_expansion(th, n0, nb);
        EXPECT_LT(std::abs(o.moments.mean_a - p.mean_a_pred), 1e-3) << th;
        EXPECT_LT(std::abs(o.moments.mean_a2 - p.mean_a2_pred), 2e-2) << th;
        EXPECT_NEAR(o.moments.mean_n, p.mean_n_pred, 1e-2) << th;
        // Gaussian shortcut for the cavity entropy, good to O(1/n0) in this regime.
        EXPECT_NEAR(gaussian_h(p.sqrt_detV_pred), o.S_C, 5.0 / n0) << th;
        const double sd = std::sqrt(covariance(o.moments).det());
        EXPECT_NEAR(gaussian_entropy(covariance(o.moments)), gaussian_h(sd), 1e-14);
    }
}

TEST(Measurement, YBasisAtZeroPhase) {
    const auto b = measurement_basis(0.0);
    const double r = 1.0 / std::sqrt(2.0);
    EXPECT_NEAR(std::abs(b.plus(0) - r), 0.0, 1e-15);
    EXPECT_NEAR(std::abs(b.plus(1) - kI * r), 0.0, 1e-15);
    EXPECT_NEAR(std::abs(b.minus(1) + kI * r), 0.0, 1e-15);
    EXPECT_NEAR(std::abs(b.plus.dot(b.minus)), 0.0, 1e-15);
}

TEST(Measurement, HalfTurnSwapsPair) {
    const auto a = measurement_basis(0.0), b = measurement_basis(kPi);
    EXPECT_NEAR(std::abs(a.plus.dot(b.minus)), 1.0, 1e-14);
    EXPECT_NEAR(std::abs(a.minus.dot(b.plus)), 1.0, 1e-14);
    EXPECT_NEAR(std::abs(a.plus.dot(b.plus)), 0.0, 1e-14);
}

TEST(Measurement, EigenvectorsOfEffectiveDrive) {
    for (double phi : {0.0, 0.4, 2.0, -2.7}) {
        const cplx alpha = std::polar(7.0, phi);
        const Matrix2 h = effective_hamiltonian(alpha);
        EXPECT_LT((h - h.adjoint()).norm(), 1e-15);
        Eigen::SelfAdjointEigenSolver<Matrix2> es(h);
        const auto b = measurement_basis(phi);
        for (const QubitVector& v : {b.plus, b.minus}) {
            const QubitVector hv = h * v;
            const cplx lambda = v.dot(hv);
            EXPECT_LT((hv - lambda * v).norm(), 1e-10);
            EXPECT_NEAR(std::abs(std::abs(lambda.real()) - 7.0), 0.0, 1e-12);
        }
        EXPECT_NEAR(b.plus.dot(h * b.plus).real(), -b.minus.dot(h * b.minus).real(), 1e-12);
    }
}

TEST(Measurement, ComovingBasisStartsAtStaticBasis) {
    const auto a = measurement_basis(0.3), b = measurement_basis_at(0.0, 50.0, 0.3);
    EXPECT_LT((a.plus - b.plus).norm(), 1e-15);
    EXPECT_LT((a.minus - b.minus).norm(), 1e-15);
}

TEST(Conditional, AmplitudesOnCircle) {
    const double n0 = 64.0;
    for (double gt : {0.0, 1.0, 13.0, 40.0}) {
        const auto [ap, am] = conditional_amplitudes(gt, n0, 0.2);
        EXPECT_NEAR(std::abs(ap), 8.0, 1e-13);
        EXPECT_NEAR(std::abs(am), 8.0, 1e-13);
    }
    const auto [a0p, a0m] = conditional_amplitudes(0.0, n0);
    EXPECT_EQ(a0p, a0m);
    // At t_min the two branches sit on opposite ends of the circle.
    const auto [ap, am] = conditional_amplitudes(kPi * 8.0, n0);
    EXPECT_NEAR(std::abs(ap + am), 0.0, 1e-12);
}

TEST(Conditional, CrossTraceAndOverlapAtZero) {
    EXPECT_NEAR(std::abs(cross_trace(0.0, 100.0, 1.0) - 1.0), 0.0, 1e-15);
    EXPECT_NEAR(branch_overlap(0.0, 100.0, 1.0), 1.0 / 3.0, 1e-15);
    EXPECT_NEAR(branch_overlap(0.0, 100.0, 0.0), 1.0, 1e-15);
}

TEST(Conditional, LimitMagnitude) {
    EXPECT_NEAR(std::abs(cross_trace_limit(1.0, 1e12, 1.0)), std::exp(-0.75), 1e-12);
    EXPECT_NEAR(std::abs(cross_trace_limit(1.0, 1e12, 1.0)), 0.472, 5e-4);
    EXPECT_NEAR(std::abs(cross_trace(1.0, 1e8, 1.0)), std::exp(-0.75), 1e-6);
}

TEST(Conditional, CrossTraceMagnitudeMonotone) {
    for (double nb : {0.0, 0.5, 1.0, 4.0}) {
        double prev = 2.0;
        for (int k = 0; k <= 300; ++k) {
            const double m = std::abs(cross_trace(3.0 * k / 300.0, 100.0, nb));
            EXPECT_LE(m, prev + 1e-15);
            prev = m;
        }
    }
}

TEST(Conditional, ConjugateBranch) {
    EXPECT_NEAR(std::abs(cross_trace(1.3, 50.0, 1.0, -1) - std::conj(cross_trace(1.3, 50.0, 1.0, +1))), 0.0, 1e-15);
}

TEST(Probes, MatchGeneratorOracle) {
    // Small system: rebuild the probes from the matrix-exponential propagator.
    const double n0 = 9.0, nb = 0.5;
    const int N = auto_truncation(n0, nb);
    const SpaceConfig cfg{N};
    const Simulator dense(cfg, bloch_to_density(0, 0, 1), 3.0, nb, Representation::dense);
    const Simulator br(cfg, bloch_to_density(0, 0, 1), 3.0, nb, Representation::branches);

    const Matrix D = oracle::displacement(3.0, N);
    Matrix w = Matrix::Zero(N, N);
    for (int n = 0; n < N; ++n) w(n, n) = std::pow(nb, n) / std::pow(1.0 + nb, n + 1);
    const Matrix rc = D * w * D.adjoint();

    for (double gt : {0.4, 1.5}) {
        const Matrix U = oracle::jc_propagator(gt, N);
        const auto b0 = measurement_basis(0.0);
        const auto bt = measurement_basis_at(gt, n0, 0.0);
        auto joint = [&](const QubitVector& a, const QubitVector& b) {
            const Matrix q = a * b.adjoint();
            Matrix X = Matrix::Zero(2 * N, 2 * N);
            for (int i = 0; i < 2; ++i)
                for (int j = 0; j < 2; ++j) X.block(i * N, j * N, N, N) = q(i, j) * rc;
            return Matrix(U * X * U.adjoint());
        };
        const Matrix Xpm = joint(b0.plus, b0.minus);
        cplx cross = 0.0;
        for (int i = 0; i < 2; ++i)
            for (int j = 0; j < 2; ++j) cross += std::conj(bt.plus(i)) * Xpm.block(i * N, j * N, N, N).trace() * bt.minus(j);
        const Matrix Xpp = joint(b0.plus, b0.plus), Xmm = joint(b0.minus, b0.minus);
        const Matrix rpp = Xpp.topLeftCorner(N, N) + Xpp.bottomRightCorner(N, N);
        const Matrix rmm = Xmm.topLeftCorner(N, N) + Xmm.bottomRightCorner(N, N);
        const double overlap = (rpp * rmm).trace().real();

        for (const Simulator* s : {&dense, &br}) {
            const auto o = s->observe(gt);
            EXPECT_NEAR(std::abs(o.cross_trace - cross), 0.0, 1e-9) << gt;
            EXPECT_NEAR(o.branch_overlap, overlap, 1e-9) << gt;
        }
    }
}

TEST(Conditional, EntropySandwich) {
    // S_C lies between the average conditional entropy and that plus the mixing entropy.
    const double n0 = 25.0, nb = 1.0;
    const int N = auto_truncation(n0, nb);
    const SpaceConfig cfg{N};
    const Matrix2 rq = bloch_to_density(0, 0, 0);
    const Simulator sim(cfg, rq, 5.0, nb, Representation::dense);
    DensityOperator q;
    q.rho = rq;
    const auto s0 = make_dense_state(tensor(q, displaced_thermal(5.0, nb, cfg)), cfg);
    for (double gt : {0.5, 2.0, 8.0, kPi * 5.0}) {
        const Matrix rho = evolve(s0, gt).dense.rho;
        // Orthonormal split; the co-rotating pair b+-(t) is not orthogonal for t > 0.
        const auto bt = measurement_basis(0.0);
        double avg = 0.0, mix = 0.0;
        for (const QubitVector& b : {bt.plus, bt.minus}) {
            Matrix blk = Matrix::Zero(N, N);
            for (int i = 0; i < 2; ++i)
                for (int j = 0; j < 2; ++j) blk += std::conj(b(i)) * b(j) * rho.block(i * N, j * N, N, N);
            const double p = blk.trace().real();
            avg += p * von_neumann_entropy(Matrix(blk / p));
            mix -= p * std::log(p);
        }
        const double sc = sim.observe(gt).S_C;
        EXPECT_GE(sc, avg - 1e-6) << gt;
        EXPECT_LE(sc, avg + mix + 1e-6) << gt;
    }
}

TEST(Feedback, BranchDrivesNearStaticDriveAtCollapse) {
    for (double n0 : {25.0, 100.0, 400.0}) {
        const Matrix2 h0 = effective_hamiltonian(std::sqrt(n0));
        for (int br : {+1, -1}) {
            const double rel = op_norm(feedback_drive(1.0, n0, br) - h0) / op_norm(h0);
            EXPECT_LE(rel, 1.0 / std::sqrt(n0)) << n0;
        }
    }
}

TEST(Feedback, ScheduleAndTarget) {
    const auto s = purification_schedule(100.0);
    EXPECT_EQ(s.t_c, 1.0);
    EXPECT_NEAR(s.t_min, 10.0 * kPi, 1e-13);
    ASSERT_EQ(s.t_k.size(), 3u);
    EXPECT_NEAR(s.t_k[0], 10.0 * kPi, 1e-13);
    EXPECT_NEAR(s.t_k[2], 50.0 * kPi, 1e-12);
    const double r = 1.0 / std::sqrt(2.0);
    EXPECT_NEAR(std::abs(s.target(0) - r), 0.0, 1e-15);
    EXPECT_NEAR(std::abs(s.target(1) - r), 0.0, 1e-15);
    const auto s2 = purification_schedule(100.0, 0.5);
    EXPECT_NEAR(std::abs(s2.target(0) - std::polar(r, 0.5)), 0.0, 1e-15);
}

TEST(Demon, Predictions) {
    const auto d = demon_predictions(50.0, 1.0);
    EXPECT_NEAR(d.S_C_tc_pred, 3.0 * kLn2, 1e-14);
    EXPECT_NEAR(d.nbar_tc_pred, 2.457213781448021, 1e-11);
    EXPECT_NEAR(d.Q_C_plateau_pred, 1.0 - 2.457213781448021, 1e-11);
    EXPECT_EQ(d.I_targets[0], 0.0);
    EXPECT_NEAR(d.I_targets[1], kLn2, 1e-15);
    EXPECT_EQ(d.I_targets[2], 0.0);

    const auto z = demon_predictions(50.0, 0.0);
    EXPECT_NEAR(z.nbar_tc_pred, 0.293815373340415493, 1e-12);
    EXPECT_NEAR(z.Q_C_plateau_pred, -0.293815373340415493, 1e-12);
}

TEST(Demon, OccupationBounds) {
    const std::pair<double, double> frozen[] = {
        {0.5, 1.43343034005674872}, {2.0, 4.47476647385320753}, {5.0, 10.4886147585945631}};
    for (const auto& [nb, ref] : frozen) EXPECT_NEAR(demon_predictions(50.0, nb).nbar_tc_pred, ref, 1e-10 * ref);
    for (double nb : {0.0, 0.01, 0.3, 1.0, 3.0, 10.0, 100.0}) {
        const double x = demon_predictions(50.0, nb).nbar_tc_pred;
        EXPECT_GE(x, nb);
        EXPECT_LE(x, 2.0 * nb + 0.5);
    }
}
