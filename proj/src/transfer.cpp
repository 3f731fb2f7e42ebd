#include "dgbdt/transfer.hpp"

#include <algorithm>
#include <cmath>
#include <string>

namespace dgbdt {

namespace {

void require_k(const GbdtSequence& /*seq*/, int k, int max_k, const char* what) {
  if (k < 0 || k > max_k) {
    throw DimensionError(std::string(what) + ": k = " + std::to_string(k) +
                         " outside 0.." + std::to_string(max_k));
  }
}

bool self_adjoint(const GbdtSequence& seq) {
  return seq.source().kind == SystemKind::SelfAdjoint;
}

void check_pole_in(const Spectrum& eig, double a_norm, Complex lambda) {
  const double margin = kPoleMargin * std::max(1.0, a_norm);
  for (Eigen::Index i = 0; i < eig.size(); ++i) {
    if (std::abs(eig(i) - lambda) <= margin) {
      throw PoleError("evaluation point lambda = (" + std::to_string(lambda.real()) + ", " +
                      std::to_string(lambda.imag()) + ") is at a pole of the resolvent");
    }
  }
}

// (I + zA)⁻¹ X with pole guard; z = 0 allowed.
Matrix inverse_pencil_solve(const Matrix& a, const Spectrum& eig, double a_norm, Complex z,
                            const Matrix& x) {
  if (z != Complex(0.0)) check_pole_in(eig, a_norm, -1.0 / z);
  return checked_solve(identity(a.rows()) + z * a, x, "resolvent I + zA");
}

}  // namespace

BlockDecomposition BlockDecomposition::split(const Matrix& w, const Signature& sig) {
  if (w.rows() != sig.m() || w.cols() != sig.m()) {
    throw DimensionError("BlockDecomposition::split: matrix must be m x m");
  }
  return {w.topLeftCorner(sig.m1, sig.m1), w.topRightCorner(sig.m1, sig.m2),
          w.bottomLeftCorner(sig.m2, sig.m1), w.bottomRightCorner(sig.m2, sig.m2)};
}

Matrix BlockDecomposition::assemble() const {
  Matrix out(a.rows() + c.rows(), a.cols() + b.cols());
  out << a, b, c, d;
  return out;
}

void check_pole(const GbdtSequence& seq, Complex lambda) {
  check_pole_in(seq.a_spectrum(), seq.a_norm(), lambda);
}

Matrix transfer_eval(const GbdtSequence& seq, int k, Complex lambda) {
  require_k(seq, k, seq.horizon() + 1, "transfer_eval");
  check_pole(seq, lambda);
  const ParameterTriple& t = seq.source();
  const Matrix& theta = seq.theta(k);
  const Matrix x = checked_solve(t.a - lambda * identity(t.n()), theta, "resolvent A - lambda I");
  Matrix h = theta.adjoint() * seq.r_solve(k, x);
  if (self_adjoint(seq)) h = t.sig.j() * h;
  return identity(t.sig.m()) - kI * h;
}

Matrix transfer_at(const GbdtSequence& seq, int k, Complex z) {
  require_k(seq, k, seq.horizon() + 1, "transfer_at");
  const ParameterTriple& t = seq.source();
  const Matrix& theta = seq.theta(k);
  if (self_adjoint(seq)) {
    // w_A(k, −1/z) = I − iz j Θ^* R⁻¹ (I + zA)⁻¹ Θ.
    const Matrix x = inverse_pencil_solve(t.a, seq.a_spectrum(), seq.a_norm(), z, theta);
    return identity(t.sig.m()) - kI * z * t.sig.j() * theta.adjoint() * seq.r_solve(k, x);
  }
  check_pole(seq, -z);
  const Matrix x = checked_solve(z * identity(t.n()) + t.a, theta, "resolvent zI + A");
  return identity(t.sig.m()) - kI * theta.adjoint() * seq.r_solve(k, x);
}

Matrix transfer_block_rep(const GbdtSequence& seq, int k, Complex z) {
  require_k(seq, k, seq.horizon() + 1, "transfer_block_rep");
  const ParameterTriple& t = seq.source();
  const Matrix th1 = t.theta1();
  const Matrix th2 = t.theta2();
  // R_k and Q_k⁻¹ = (G^k)^* R_k⁻¹ G^k come from the propagated scaled frame;
  // the literal S_k is too badly conditioned beyond a handful of steps.
  const Matrix& gk = seq.g_power(k);

  if (self_adjoint(seq)) {
    const Matrix x1 = inverse_pencil_solve(t.a, seq.a_spectrum(), seq.a_norm(), z, th1);
    const Matrix x2 = inverse_pencil_solve(t.a, seq.a_spectrum(), seq.a_norm(), z, th2);
    const Matrix r_x1 = seq.r_solve(k, x1);
    const Matrix r_gx2 = seq.r_solve(k, gk * x2);
    BlockDecomposition blocks{th1.adjoint() * r_x1, th1.adjoint() * r_gx2,
                              th2.adjoint() * gk.adjoint() * r_x1,
                              th2.adjoint() * gk.adjoint() * r_gx2};
    return identity(t.sig.m()) - kI * z * t.sig.j() * blocks.assemble();
  }

  check_pole(seq, -z);
  const Matrix x2 = checked_solve(z * identity(t.n()) + t.a, th2, "resolvent zI + A");
  // G̃ = G⁻¹, so (G̃^k)^* Q_k⁻¹ = R_k⁻¹ G^k.
  const Matrix r_gx2 = seq.r_solve(k, gk * x2);
  Matrix column = Matrix::Zero(t.sig.m(), t.sig.m2);
  column.bottomRows(t.sig.m2) = identity(t.sig.m2);
  column.topRows(t.sig.m1) -= kI * th1.adjoint() * r_gx2;
  column.bottomRows(t.sig.m2) -= kI * th2.adjoint() * gk.adjoint() * r_gx2;
  return column;
}

Matrix one_step(const GbdtSequence& seq, int k, Complex z) {
  require_k(seq, k, seq.horizon(), "one_step");
  const ParameterTriple& t = seq.source();
  if (self_adjoint(seq)) return identity(t.sig.m()) + kI * z * t.sig.j() * seq.c(k);
  if (z == Complex(0.0)) throw SingularError("skew system: z = 0 is a singular argument");
  return identity(t.sig.m()) + (kI / z) * seq.c(k);
}

Matrix free_power(SystemKind kind, const Signature& sig, Complex z, int k) {
  Complex up, down;
  if (kind == SystemKind::SelfAdjoint) {
    up = 1.0 + kI * z;
    down = 1.0 - kI * z;
  } else {
    if (z == Complex(0.0)) throw SingularError("skew system: z = 0 is a singular argument");
    up = 1.0 + kI / z;
    down = 1.0 - kI / z;
  }
  Eigen::VectorXcd d(sig.m());
  d.head(sig.m1).setConstant(std::pow(up, k));
  d.tail(sig.m2).setConstant(std::pow(down, k));
  return d.asDiagonal();
}

Matrix fundamental_direct(const GbdtSequence& seq, int k, Complex z) {
  require_k(seq, k, seq.horizon() + 1, "fundamental_direct");
  if (!self_adjoint(seq) && z == Complex(0.0)) {
    throw SingularError("skew system: z = 0 is a singular argument");
  }
  Matrix w = identity(seq.source().sig.m());
  for (int i = 0; i < k; ++i) w = one_step(seq, i, z) * w;
  return w;
}

Matrix fundamental_closed(const GbdtSequence& seq, int k, Complex z) {
  require_k(seq, k, seq.horizon() + 1, "fundamental_closed");
  const ParameterTriple& t = seq.source();
  const Matrix power = free_power(t.kind, t.sig, z, k);
  const Matrix w0 = transfer_at(seq, 0, z);
  Matrix w0_inv;
  try {
    w0_inv = checked_inverse(w0, "fundamental_closed: normalizer w_A(0, .)", 1e-12);
  } catch (const SingularError&) {
    throw SingularError("fundamental_closed: normalizer w_A(0, .) is not invertible at this z");
  }
  return transfer_at(seq, k, z) * power * w0_inv;
}

ChiPair chi_functions(const ParameterTriple& t, const LimitPair& lim, Complex z) {
  const Spectrum eig = spectrum(t.a);
  const double a_norm = norm2(t.a);
  const Matrix th1 = t.theta1();
  const Matrix th2 = t.theta2();
  const Matrix x1 = inverse_pencil_solve(t.a, eig, a_norm, z, th1);
  const Matrix x2 = inverse_pencil_solve(t.a, eig, a_norm, z, th2);
  return {identity(t.sig.m1) - kI * z * th1.adjoint() * lim.kappa_r * x1,
          identity(t.sig.m2) + kI * z * th2.adjoint() * lim.kappa_q * x2};
}

Matrix jost_closed(const GbdtSequence& seq, const LimitPair& lim, int k, double z) {
  if (!self_adjoint(seq)) throw Error("jost_closed: defined for the self-adjoint kind");
  const ParameterTriple& t = seq.source();
  const ChiPair chi = chi_functions(t, lim, z);
  Matrix right = Matrix::Zero(t.sig.m(), t.sig.m());
  right.topLeftCorner(t.sig.m1, t.sig.m1) = checked_inverse(chi.chi1, "jost_closed: chi1", 1e-12);
  right.bottomRightCorner(t.sig.m2, t.sig.m2) = checked_inverse(chi.chi2, "jost_closed: chi2", 1e-12);
  // W_k w_A(0,·) collapses to w_A(k,·) (I+izj)^k.
  return transfer_at(seq, k, z) * free_power(t.kind, t.sig, z, k) * right;
}

Matrix y_closed(const GbdtSequence& seq, int k, Complex z) {
  if (self_adjoint(seq)) throw Error("y_closed: defined for the skew kind");
  if (z == Complex(0.0)) throw SingularError("skew system: z = 0 is a singular argument");
  const Signature& sig = seq.source().sig;
  return std::pow(1.0 - kI / z, k) * transfer_at(seq, k, z).rightCols(sig.m2);
}

double fit_geometric_rate(std::span<const double> values) {
  double sx = 0, sy = 0, sxx = 0, sxy = 0;
  int count = 0;
  for (std::size_t i = 0; i < values.size(); ++i) {
    if (!(values[i] > 0.0) || !std::isfinite(values[i])) continue;
    const double x = static_cast<double>(i);
    const double y = std::log(values[i]);
    sx += x;
    sy += y;
    sxx += x * x;
    sxy += x * y;
    ++count;
  }
  if (count < 2) return 0.0;
  const double slope = (count * sxy - sx * sy) / (count * sxx - sx * sx);
  return std::exp(slope);
}

}  // namespace dgbdt
