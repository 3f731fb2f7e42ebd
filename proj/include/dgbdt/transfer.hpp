#pragma once

#include <span>

#include "dgbdt/gbdt.hpp"

namespace dgbdt {

/// a/b/c/d partition of an m×m matrix along j = diag(I_{m1}, −I_{m2}).
struct BlockDecomposition {
  Matrix a, b, c, d;

  static BlockDecomposition split(const Matrix& w, const Signature& sig);
  Matrix assemble() const;
};

struct ChiPair {
  Matrix chi1;
  Matrix chi2;
};

/// Relative distance (in units of max(1, ‖A‖)) below which a resolvent
/// argument is treated as a pole.
inline constexpr double kPoleMargin = 1e-6;

/// Throws PoleError if lambda is within kPoleMargin·max(1,‖A‖) of σ(A).
void check_pole(const GbdtSequence& seq, Complex lambda);

/// w_A(k, λ) = I − i (j) Π_k^* S_k⁻¹ (A − λI)⁻¹ Π_k; the j factor is present
/// for the self-adjoint kind only.
Matrix transfer_eval(const GbdtSequence& seq, int k, Complex lambda);

/// w_A at the argument the fundamental solution uses: w_A(k, −1/z) for the
/// self-adjoint kind (well defined at z = 0) and w_A(k, −z) for the skew kind.
Matrix transfer_at(const GbdtSequence& seq, int k, Complex z);

/// Block representation through R_k⁻¹, Q_k⁻¹ and G(A)^k, with R_k taken from
/// the propagated scaled frame. Self-adjoint: the full m×m value of w_A(k, −1/z). Skew: the m×m₂
/// block column w_A(k, −z)[0; I_{m2}].
Matrix transfer_block_rep(const GbdtSequence& seq, int k, Complex z);

/// One step of the Dirac recursion: I + iz j C_k or I + (i/z) C_k.
Matrix one_step(const GbdtSequence& seq, int k, Complex z);

/// (I + izj)^k or (I + (i/z) j)^k, computed blockwise from scalar powers.
Matrix free_power(SystemKind kind, const Signature& sig, Complex z, int k);

/// Fundamental solution by the product of one-step matrices, W_0 = I.
Matrix fundamental_direct(const GbdtSequence& seq, int k, Complex z);

/// Fundamental solution as w_A(k,·) (free power) w_A(0,·)⁻¹.
Matrix fundamental_closed(const GbdtSequence& seq, int k, Complex z);

/// χ₁(z) = I − iz ϑ₁^* κ_R (I+zA)⁻¹ ϑ₁, χ₂(z) = I + iz ϑ₂^* κ_Q (I+zA)⁻¹ ϑ₂.
ChiPair chi_functions(const ParameterTriple& t, const LimitPair& lim, Complex z);

/// Jost solution of the self-adjoint system at real z:
/// F_k = W_k w_A(0,−1/z) diag(χ₁⁻¹, χ₂⁻¹) = w_A(k,−1/z) (I+izj)^k diag(χ₁⁻¹, χ₂⁻¹).
Matrix jost_closed(const GbdtSequence& seq, const LimitPair& lim, int k, double z);

/// m×m₂ solution of the skew system with Y_k ~ (1 − i/z)^k [0; I_{m2}].
Matrix y_closed(const GbdtSequence& seq, int k, Complex z);

/// Slope of a least-squares fit of log(values) against the index, returned
/// as a per-step rate exp(slope). Non-positive entries are skipped.
double fit_geometric_rate(std::span<const double> values);

}  // namespace dgbdt
