#pragma once

#include <vector>

#include "dgbdt/io.hpp"
#include "dgbdt/spectral.hpp"

namespace dgbdt {

/// Sample sets shared by `verify` and the acceptance suite.
std::vector<Complex> real_samples();                                // 20 real points
std::vector<Complex> weyl_samples(const GbdtSequence& seq);         // 10 half-plane points
std::vector<Complex> fundamental_grid();                            // 20 points
std::vector<double> unitarity_lambdas();                            // 10 real points
/// Test point for the Weyl partial sums: −2i, or i·max(5, threshold) for skew.
Complex weyl_sum_point(const GbdtSequence& seq);

// Each measurement below scans k = 0..k_max of an already built sequence.

double max_identity_residual(const GbdtSequence& seq, int k_max);

struct PotentialStats {
  double min_eigenvalue = 0.0;   // self-adjoint: smallest eigenvalue over all C_k
  double max_j_defect = 0.0;     // self-adjoint: ‖C j C − j‖
  double max_hermitian = 0.0;    // skew: ‖C − C^*‖
  double max_involution = 0.0;   // skew: ‖C² − I‖
  double max_trace_defect = 0.0; // skew: |tr C − (m1 − m2)|
};
PotentialStats potential_stats(const GbdtSequence& seq, int k_max);

struct MonotonicityStats {
  double min_r_step = 0.0;  // λ_min(R_{k+1} − R_k)
  /// λ_min(R_{k+1} − G R_k G^*) / ‖R_{k+1}‖; congruent to Q_{k+1} − Q_k.
  double min_q_step = 0.0;
};
MonotonicityStats monotonicity(const GbdtSequence& seq, int k_max);

/// Largest relative gap between the direct product and the closed form of
/// the fundamental solution; pole-adjacent grid points are skipped.
struct GridError {
  double max_error = 0.0;
  int evaluated = 0;
  int skipped = 0;
};
GridError fundamental_equivalence(const GbdtSequence& seq, std::span<const Complex> grid,
                                  int k_max);
/// max ‖w^* j w − j‖ over real λ and k ≤ k_max (self-adjoint).
GridError transfer_j_unitarity(const GbdtSequence& seq, std::span<const double> lambdas,
                               int k_max);
/// Relative gap between transfer_at and transfer_block_rep.
GridError block_rep_agreement(const GbdtSequence& seq, std::span<const Complex> grid, int k_max);

/// Self-adjoint: max ‖F_K(z)(I+izj)^{-K} − I‖ over real z.
/// Skew: max ‖(1 − i/z)^{-K} Y_K(z) − [0; I]‖.
GridError asymptotic_residual(const GbdtSequence& seq, const LimitPair& lim,
                              std::span<const Complex> points, int k);

struct VerifyOptions {
  int kmax = kDefaultHorizon;
  double tol = 1e-7;
};

/// Runs the whole invariant suite on one triple. Never throws for
/// mathematical failures; they show up as failed checks.
ReportDocument run_verification(const ParameterTriple& t, const VerifyOptions& options);

}  // namespace dgbdt
