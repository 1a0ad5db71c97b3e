#pragma once

#include "jcdemon/dynamics.hpp"

namespace jcdemon {

struct Observation {
    double gt = 0.0;
    Matrix2 rho_q = Matrix2::Zero();
    double P_e = 0.0;
    cplx C_eg{0.0, 0.0};  // <e| rho_Q |g>
    double S_Q = 0.0;
    double S_C = 0.0;
    double S_QC = 0.0;     // NaN unless the joint entropy was requested
    CavityMoments moments;
    double excitation = 0.0;
    cplx cross_trace{0.0, 0.0};     // Tr of the off-diagonal cavity block in the measurement basis
    double branch_overlap = 0.0;    // Tr[rho_C^{++} rho_C^{--}]
    double overlap_normalized = 0.0;
};

// Reduced-state observables of an evolved joint state.
Observation observe(const JointState& state, bool joint_entropy = false);

// Holds the t = 0 state for a displaced thermal cavity with amplitude alpha0 and evaluates
// observables at arbitrary g*t. Thread-safe: observe() only reads member data.
class Simulator {
public:
    Simulator(const SpaceConfig& cfg, const Matrix2& rho_q0, cplx alpha0, double nbar,
              Representation repr, double rank_tol = kDefaultRankTol);

    Observation observe(double gt, bool joint_entropy = false) const;

    const JointState& initial_state() const { return state0_; }
    Representation representation() const { return state0_.repr; }
    const SpaceConfig& space() const { return state0_.cfg; }
    double n0() const { return std::norm(alpha0_); }

private:
    void measurement_probes(const Propagator& u, Observation& obs) const;

    JointState state0_;
    cplx alpha0_;
    double nbar_;
    Matrix rho_c0_;      // dense path only
    Matrix probe_plus_;  // branch path: b_+ (x) sqrt(p_n) D|n>
    Matrix probe_minus_;
};

}  // namespace jcdemon
