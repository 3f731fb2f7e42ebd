#pragma once

#include <span>
#include <string>
#include <vector>

#include "dgbdt/transfer.hpp"

namespace dgbdt {

/// Which resolvent the skew-kind closed form uses: the corrected
/// (zI + A^×)⁻¹ or the variant (zI + zA^×)⁻¹. Ignored for the self-adjoint kind.
enum class SkewRule { Corrected, Printed };

/// Closed-form reflection coefficient / Weyl function
///   self-adjoint: z ↦ −iz · left · (I + z·core)⁻¹ · right,  core = A + iϑ₂ϑ₂^*S₀⁻¹
///   skew:         z ↦ −i  · left · (zI + core)⁻¹ · right,   core = A − iϑ₂ϑ₂^*S₀⁻¹
/// with left = ϑ₁^* S₀⁻¹ and right = ϑ₂.
struct RationalRealization {
  SystemKind kind = SystemKind::SelfAdjoint;
  Matrix left;
  Matrix core;
  Matrix right;

  static RationalRealization from_triple(const ParameterTriple& t);

  Matrix evaluate(Complex z, SkewRule rule = SkewRule::Corrected) const;
  /// Points z where the evaluation rule is singular.
  std::vector<Complex> poles(SkewRule rule = SkewRule::Corrected) const;
};

Matrix reflection_closed(const ParameterTriple& t, Complex z,
                         SkewRule rule = SkewRule::Corrected);

/// φ(z) = b d⁻¹ from the blocks of w_A(0, −1/z) (self-adjoint) or w_A(0, −z)
/// (skew). Throws SingularError if the d block is singular at z.
Matrix weyl_value(const GbdtSequence& seq, Complex z);

struct OracleResult {
  Matrix value;
  int truncation = 0;
  double increment = 0.0;
  bool converged = false;
};

/// Reflection coefficient from the one-step recursion and the Jost
/// asymptotics alone: F₀ ≈ W_K⁻¹(I+izj)^K (self-adjoint, real z) or
/// Y₀ ≈ w_K⁻¹ (1 − i/z)^K [0; I] (skew, z ≠ 0), then the block ratio.
/// Truncation grows in steps of 5 up to K until successive estimates differ
/// by less than tol; throws ConvergenceError otherwise.
OracleResult reflection_oracle(const GbdtSequence& seq, Complex z, int max_k, double tol);

/// Same computation without the convergence error.
OracleResult reflection_oracle_estimate(const GbdtSequence& seq, Complex z, int max_k,
                                        double tol);

struct WeylSumResult {
  std::vector<double> terms;
  std::vector<double> partial_sums;
  double tail_ratio = 0.0;
  bool nondecreasing = true;
};

/// Partial sums of the Weyl quadratic forms with φ = weyl_value(z):
/// self-adjoint Σ q(z)^k tr([φ^*, I] W_k^* C_k W_k [φ; I]), q = (1+|z|²)⁻¹, z ∈ ℂ₋;
/// skew Σ tr([φ^*, I] w_k^* w_k [φ; I]), Im z > 0.
/// W_k[φ; I] is propagated as w_A(k,·)[0; λ₂^k d⁻¹], using w_A(0,·)⁻¹[φ; I] = [0; d⁻¹];
/// the tail ratio is the geometric rate fitted to the second half of the terms.
WeylSumResult weyl_sum_check(const GbdtSequence& seq, Complex z, int max_k);

/// Terms of the same sums, with W_k taken from the direct product. Accurate
/// only while roundoff in the growing direction stays below the decaying terms.
std::vector<double> weyl_terms_direct(const GbdtSequence& seq, Complex z, int max_k);

/// Lower bound on Im z used for skew Weyl points: 2(1 + max_k ‖C_k‖).
double skew_weyl_threshold(const GbdtSequence& seq);

struct SampleResult {
  Complex z;
  bool real_axis = false;
  bool skipped = false;
  bool shifted = false;
  bool oracle_converged = true;
  double difference = 0.0;          // |oracle − closed| or |weyl − closed|
  double printed_difference = 0.0;  // skew: |printed rule − oracle or weyl|
  std::string note;
};

struct EqualityReport {
  SystemKind kind = SystemKind::SelfAdjoint;
  std::vector<SampleResult> samples;
  double max_oracle_diff = 0.0;
  double max_weyl_diff = 0.0;
  /// Skew only: largest and smallest discrepancy of the printed rule.
  double max_printed_diff = 0.0;
  double min_printed_diff = 0.0;
  bool oracle_pass = false;
  bool weyl_pass = false;
  bool printed_rule_matches = false;
  bool pass = false;
};

/// Oracle truncation horizon used by certify_theorems. Non-normal A with
/// ρ(G) near the sampling cap carries polynomial factors k^{n−1}, so the
/// oracle can need ~75 steps to settle to 1e-9.
inline constexpr int kCertifyHorizon = 120;

/// Real samples are compared oracle ↔ closed form, the others Weyl ↔ closed form.
/// Samples at poles are skipped and flagged; a singular d block shifts the
/// sample by 1e-6 and flags it.
EqualityReport certify_theorems(const ParameterTriple& t, std::span<const Complex> samples,
                                double tol, int horizon = kCertifyHorizon);

}  // namespace dgbdt
