#include "dgbdt/gbdt.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

#include <Eigen/Eigenvalues>

namespace dgbdt {

Matrix advance_pi(const Matrix& pi_k, const Matrix& a, const Signature& sig) {
  const Matrix a_inv = checked_inverse(a, "advance_pi: A");
  return pi_k + kI * a_inv * pi_k * sig.j();
}

Matrix advance_s(const Matrix& s_k, const Matrix& pi_k, const Matrix& a, SystemKind kind,
                 const Signature& sig) {
  const Matrix a_inv = checked_inverse(a, "advance_s: A");
  const Matrix middle = kind == SystemKind::SelfAdjoint ? identity(sig.m()) : sig.j();
  const Matrix next = s_k + a_inv * s_k * a_inv.adjoint() +
                      a_inv * pi_k * middle * pi_k.adjoint() * a_inv.adjoint();
  return hermitian_part(next);
}

Matrix g_matrix(const Matrix& a, GVariant variant) {
  require_square(a, "g_matrix");
  const Matrix id = identity(a.rows());
  if (variant == GVariant::G) {
    const Matrix a_inv = checked_inverse(a, "g_matrix: A");
    return checked_solve(id + kI * a_inv, id - kI * a_inv, "g_matrix: I + iA^-1");
  }
  return checked_solve(a - kI * id, a + kI * id, "g_matrix: A - iI");
}

namespace {

double hermitian_condition(const Matrix& s) {
  Eigen::SelfAdjointEigenSolver<Matrix> es(hermitian_part(s), Eigen::EigenvaluesOnly);
  const auto& ev = es.eigenvalues();
  if (ev(0) <= 0.0) return std::numeric_limits<double>::infinity();
  return ev(ev.size() - 1) / ev(0);
}

}  // namespace

GbdtSequence GbdtSequence::build(const ParameterTriple& t, int horizon, double tol) {
  t.check_dimensions();
  if (horizon < 0) throw DimensionError("build_sequence: horizon must be >= 0");

  GbdtSequence seq;
  seq.source_ = t;
  seq.horizon_ = horizon;
  const int n = t.n();
  const Matrix id = identity(n);
  const Matrix j = t.sig.j();
  const Matrix base = t.kind == SystemKind::SelfAdjoint ? identity(t.sig.m()) : j;
  // Middle factor of the S-recursion: I (self-adjoint), j (skew).
  const Matrix s_middle = t.kind == SystemKind::SelfAdjoint ? identity(t.sig.m()) : j;

  seq.a_inv_ = checked_inverse(t.a, "build_sequence: A");
  seq.p_inv_ = checked_inverse(id + kI * seq.a_inv_, "build_sequence: I + iA^-1");
  seq.g_ = seq.p_inv_ * (id - kI * seq.a_inv_);
  seq.a_eig_ = spectrum(t.a);
  seq.a_norm_ = norm2(t.a);

  const int count = horizon + 2;
  seq.pi_.reserve(count);
  seq.s_.reserve(count);
  seq.r_.reserve(count);
  seq.theta_.reserve(count);
  seq.gram_.reserve(count);
  seq.g_pow_.reserve(count);
  seq.r_llt_.reserve(count);

  const Matrix th1 = t.theta1();
  const Matrix th2 = t.theta2();
  seq.pi_.push_back(t.pi0);
  seq.s_.push_back(hermitian_part(t.s0));
  seq.r_.push_back(hermitian_part(t.s0));
  seq.g_pow_.push_back(id);

  for (int k = 0; k < count; ++k) {
    if (k > 0) {
      const Matrix& pk = seq.pi_[k - 1];
      seq.pi_.push_back(pk + kI * seq.a_inv_ * pk * j);
      const Matrix& sk = seq.s_[k - 1];
      seq.s_.push_back(hermitian_part(sk + seq.a_inv_ * sk * seq.a_inv_.adjoint() +
                                      seq.a_inv_ * pk * s_middle * pk.adjoint() *
                                          seq.a_inv_.adjoint()));
      // Same recursion, conjugated by P^{-k}.
      const Matrix& rk = seq.r_[k - 1];
      const Matrix& tk = seq.theta_[k - 1];
      const Matrix inner = rk + seq.a_inv_ * rk * seq.a_inv_.adjoint() +
                           seq.a_inv_ * tk * s_middle * tk.adjoint() * seq.a_inv_.adjoint();
      seq.r_.push_back(hermitian_part(seq.p_inv_ * inner * seq.p_inv_.adjoint()));
      seq.g_pow_.push_back(seq.g_ * seq.g_pow_[k - 1]);
    }
    Matrix theta(n, t.sig.m());
    theta << th1, seq.g_pow_[k] * th2;
    seq.theta_.push_back(std::move(theta));

    const PositivityResult pd = is_positive_definite(seq.r_[k], tol);
    if (!pd.positive) {
      throw ConditioningError("build_sequence: S_" + std::to_string(k) +
                                  " lost positivity (pivot margin " + std::to_string(pd.margin) + ")",
                              k);
    }
    seq.r_llt_.emplace_back(seq.r_[k]);
    seq.gram_.push_back(hermitian_part(seq.theta_[k].adjoint() * seq.r_llt_[k].solve(seq.theta_[k])));
    seq.identity_residuals_.push_back(identity_residual(t, seq.s_[k], seq.pi_[k]));
    seq.s_condition_.push_back(hermitian_condition(seq.s_[k]));
  }

  seq.c_.reserve(horizon + 1);
  for (int k = 0; k <= horizon; ++k) {
    seq.c_.push_back(base + seq.gram_[k] - seq.gram_[k + 1]);
  }
  return seq;
}

Matrix GbdtSequence::r_inverse(int k) const {
  return r_llt_.at(k).solve(identity(source_.n()));
}

Matrix GbdtSequence::q_inverse(int k) const {
  const Matrix& gk = g_pow_.at(k);
  return hermitian_part(gk.adjoint() * r_llt_.at(k).solve(gk));
}

RqPair rq_matrices(const GbdtSequence& seq, int k) {
  if (k < 0 || k > seq.horizon() + 1) throw DimensionError("rq_matrices: k outside the horizon");
  const Matrix& a = seq.source().a;
  const double margin = 1e-6 * std::max(1.0, norm2(a));
  for (Eigen::Index i = 0; i < seq.a_spectrum().size(); ++i) {
    const Complex ev = seq.a_spectrum()(i);
    if (std::abs(ev - kI) <= margin || std::abs(ev + kI) <= margin) {
      throw SingularError("rq_matrices: +-i is (numerically) an eigenvalue of A");
    }
  }
  const Matrix id = identity(a.rows());
  const Matrix p_inv_k = matrix_power(checked_inverse(id + kI * seq.a_inverse(), "rq_matrices: I + iA^-1"), k);
  const Matrix m_inv_k = matrix_power(checked_inverse(id - kI * seq.a_inverse(), "rq_matrices: I - iA^-1"), k);
  const Matrix& s = seq.s(k);
  return {hermitian_part(p_inv_k * s * p_inv_k.adjoint()),
          hermitian_part(m_inv_k * s * m_inv_k.adjoint())};
}

LimitPair limits_estimate(const GbdtSequence& seq, double tol) {
  const bool skew = seq.source().kind == SystemKind::SkewSelfAdjoint;
  const Matrix th1 = seq.source().theta1();
  LimitPair out;
  Matrix r_prev = seq.r_inverse(0);
  Matrix q_prev = seq.q_inverse(0);
  for (int k = 0; k + 1 <= seq.horizon() + 1; ++k) {
    const Matrix r_next = seq.r_inverse(k + 1);
    const Matrix q_next = seq.q_inverse(k + 1);
    out.iterations = k + 1;
    out.r_increment = (r_next - r_prev).norm();
    out.q_increment = (q_next - q_prev).norm();
    out.kappa_r = r_next;
    out.kappa_q = q_next;
    // Q_k⁻¹ G̃^k ϑ₁ = (G^k)^* R_k⁻¹ ϑ₁ since G̃ = G⁻¹.
    out.q_inverse_norm = q_next.norm();
    out.q_theta_norm = (seq.g_power(k + 1).adjoint() * seq.r_solve(k + 1, th1)).norm();
    const bool r_settled = out.r_increment <= tol * std::max(1.0, r_next.norm());
    const bool q_settled = skew ? (out.q_inverse_norm <= tol && out.q_theta_norm <= tol)
                                : out.q_increment <= tol;
    if (r_settled && q_settled) {
      out.converged = true;
      return out;
    }
    r_prev = r_next;
    q_prev = q_next;
  }
  return out;
}

LimitPair limits(const GbdtSequence& seq, double tol) {
  LimitPair out = limits_estimate(seq, tol);
  if (out.converged) return out;
  throw ConvergenceError("limits: no convergence by k = " + std::to_string(out.iterations) +
                         " (R^-1 increment " + std::to_string(out.r_increment) +
                         ", Q^-1 increment " + std::to_string(out.q_increment) + ")");
}

LimitPair limits(const ParameterTriple& t, double tol, int k_max) {
  return limits(GbdtSequence::build(t, k_max), tol);
}

}  // namespace dgbdt
