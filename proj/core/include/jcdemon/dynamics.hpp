#pragma once

#include <vector>

#include "jcdemon/fock.hpp"

namespace jcdemon {

inline constexpr double kDefaultRankTol = 1e-12;

// Resonant Jaynes-Cummings propagator in the interaction picture. Each excitation
// block n acts on span{|e,n>, |g,n+1>} as [[c, s], [-s, c]] with c = cos(gt sqrt(n+1)),
// s = sin(gt sqrt(n+1)); |g,0> is left fixed. At the cutoff, |e,n_ph-1> has no partner
// inside the space and is also left fixed, so the truncated operator stays unitary.
struct Propagator {
    double gt = 0.0;
    int n_ph = 0;
    std::vector<double> c;  // index n = 0 .. n_ph-2
    std::vector<double> s;

    // X <- U X for a matrix whose rows are joint indices.
    void apply_left(Matrix& X) const;
    // X <- X U^dagger. U is real, so U^dagger = U^T.
    void apply_right_adjoint(Matrix& X) const;
    // U rho U^dagger.
    Matrix conjugate(const Matrix& rho) const;
    Matrix dense() const;
};

Propagator build_propagator(double gt, const SpaceConfig& cfg);

enum class Representation { dense, branches };

struct Branch {
    double weight = 0.0;
    Vector vec;  // length 2 * n_ph, joint ordering
};

struct JointState {
    SpaceConfig cfg;
    Representation repr = Representation::dense;
    DensityOperator dense;          // used when repr == dense
    std::vector<Branch> branches;   // used when repr == branches
};

JointState make_dense_state(const DensityOperator& joint, const SpaceConfig& cfg);

// Always evolves the supplied state by the exact propagator for gt; never composes steps.
// Throws TruncationError if the population of the uncoupled top level |e,n_ph-1> exceeds tail_tol.
JointState evolve(const JointState& state0, double gt);

// Number of cavity levels kept so that the geometric tail (nbar/(1+nbar))^K is <= rank_tol/2.
int branch_levels(double nbar, double rank_tol);

// rho_Q(0) (x) D(alpha) w D(alpha)^dagger as weighted pure branches q_k p_n, |k> (x) D(alpha)|n>.
// Qubit eigenvalues <= rank_tol/2 and cavity levels beyond branch_levels() are discarded.
JointState decompose_thermal_branches(const Matrix2& rho_q0, cplx alpha, double nbar, double rank_tol,
                                      const SpaceConfig& cfg);

// Columns sqrt(w_i) v_i, so that rho = F F^dagger.
Matrix branch_factor(const JointState& state);

DensityOperator to_dense(const JointState& state);

// <a^dag a> + P_e.
double conserved_excitation(const JointState& state);

}  // namespace jcdemon
