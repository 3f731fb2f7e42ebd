#pragma once

#include <vector>

#include <Eigen/Cholesky>

#include "dgbdt/triples.hpp"

namespace dgbdt {

inline constexpr int kDefaultHorizon = 40;

/// Π_{k+1} = Π_k + i A⁻¹ Π_k j (same rule for both system kinds).
Matrix advance_pi(const Matrix& pi_k, const Matrix& a, const Signature& sig);

/// S_{k+1} = S_k + A⁻¹ S_k A^{-*} + A⁻¹ Π_k (I or j) Π_k^* A^{-*}, Hermitian-symmetrised.
Matrix advance_s(const Matrix& s_k, const Matrix& pi_k, const Matrix& a, SystemKind kind,
                 const Signature& sig);

enum class GVariant { G, GTilde };

/// G(A) = (I + iA⁻¹)⁻¹(I − iA⁻¹) or G̃(A) = (A − iI)⁻¹(A + iI).
Matrix g_matrix(const Matrix& a, GVariant variant);

/// Cached GBDT sequences for one triple, k = 0..K.
///
/// Π_k and S_k follow the defining recursions literally. S_k becomes badly
/// conditioned quickly (different eigen-directions of A grow at different
/// rates), so everything that needs S_k⁻¹ uses the congruent matrices
///   R_k = P^{-k} S_k P^{-k*},  Θ_k = P^{-k} Π_k = [ϑ₁, G^k ϑ₂],  P = I + iA⁻¹,
/// for which Π_k^* S_k⁻¹ X Π_k = Θ_k^* R_k⁻¹ X Θ_k whenever X commutes with A.
/// R_k stays bounded and well conditioned for strongly admissible triples.
class GbdtSequence {
 public:
  static GbdtSequence build(const ParameterTriple& t, int horizon = kDefaultHorizon,
                            double tol = kDefaultTol);

  const ParameterTriple& source() const { return source_; }
  int horizon() const { return horizon_; }

  /// k = 0..K+1
  const Matrix& pi(int k) const { return pi_.at(k); }
  const Matrix& s(int k) const { return s_.at(k); }
  const Matrix& r(int k) const { return r_.at(k); }
  const Matrix& theta(int k) const { return theta_.at(k); }
  /// Θ_k^* R_k⁻¹ Θ_k (= Π_k^* S_k⁻¹ Π_k).
  const Matrix& gram(int k) const { return gram_.at(k); }

  /// Potential, k = 0..K.
  const Matrix& c(int k) const { return c_.at(k); }

  Matrix r_solve(int k, const Matrix& rhs) const { return r_llt_.at(k).solve(rhs); }
  Matrix r_inverse(int k) const;
  /// Q_k⁻¹ = (G^k)^* R_k⁻¹ G^k.
  Matrix q_inverse(int k) const;

  const Matrix& a_inverse() const { return a_inv_; }
  const Matrix& g() const { return g_; }
  const Matrix& g_power(int k) const { return g_pow_.at(k); }
  const Spectrum& a_spectrum() const { return a_eig_; }
  double a_norm() const { return a_norm_; }

  /// Relative residual of A S_k − S_k A^* − i Π_k (j or I) Π_k^*, k = 0..K+1.
  /// Only the self-adjoint kind is asserted anywhere.
  const std::vector<double>& identity_residuals() const { return identity_residuals_; }
  /// λ_max/λ_min of the literal S_k (infinite if it lost positivity).
  double s_condition(int k) const { return s_condition_.at(k); }

 private:
  GbdtSequence() = default;

  ParameterTriple source_;
  int horizon_ = 0;
  Matrix a_inv_, p_inv_, g_;
  Spectrum a_eig_;
  double a_norm_ = 0.0;
  std::vector<Matrix> pi_, s_, r_, theta_, gram_, c_, g_pow_;
  std::vector<Eigen::LLT<Matrix>> r_llt_;
  std::vector<double> identity_residuals_, s_condition_;
};

inline GbdtSequence build_sequence(const ParameterTriple& t, int horizon = kDefaultHorizon,
                                   double tol = kDefaultTol) {
  return GbdtSequence::build(t, horizon, tol);
}

struct RqPair {
  Matrix r;
  Matrix q;
};

/// R_k = (I+iA⁻¹)^{-k} S_k (I−iA^{-*})^{-k}, Q_k = (I−iA⁻¹)^{-k} S_k (I+iA^{-*})^{-k},
/// evaluated literally from the stored S_k.
RqPair rq_matrices(const GbdtSequence& seq, int k);

struct LimitPair {
  Matrix kappa_r;
  Matrix kappa_q;
  int iterations = 0;
  double r_increment = 0.0;
  double q_increment = 0.0;
  /// Skew kind: ‖Q_k⁻¹‖ and ‖Q_k⁻¹ G̃(A)^k ϑ₁‖ at the final step.
  double q_inverse_norm = 0.0;
  double q_theta_norm = 0.0;
  bool converged = false;
};

/// κ_R = lim R_k⁻¹, κ_Q = lim Q_k⁻¹. Stops once the relative R⁻¹ increment and
/// the Q⁻¹ increment fall below tol (skew: once ‖Q_k⁻¹‖ and ‖Q_k⁻¹G̃^kϑ₁‖ do).
LimitPair limits(const GbdtSequence& seq, double tol);
/// Same iteration without the error: returns the state at the stopping step
/// (or at K+1) with `converged` set accordingly.
LimitPair limits_estimate(const GbdtSequence& seq, double tol);
LimitPair limits(const ParameterTriple& t, double tol, int k_max);

}  // namespace dgbdt
