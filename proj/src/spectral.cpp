#include "dgbdt/spectral.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace dgbdt {

RationalRealization RationalRealization::from_triple(const ParameterTriple& t) {
  t.check_dimensions();
  const Matrix s0_inv = checked_inverse(t.s0, "realization: S0");
  const Matrix th2 = t.theta2();
  const Matrix correction = kI * th2 * th2.adjoint() * s0_inv;
  RationalRealization r;
  r.kind = t.kind;
  r.left = t.theta1().adjoint() * s0_inv;
  r.core = t.kind == SystemKind::SelfAdjoint ? Matrix(t.a + correction) : Matrix(t.a - correction);
  r.right = th2;
  return r;
}

std::vector<Complex> RationalRealization::poles(SkewRule rule) const {
  const Spectrum eig = spectrum(core);
  std::vector<Complex> out;
  if (kind == SystemKind::SelfAdjoint) {
    for (Eigen::Index i = 0; i < eig.size(); ++i) {
      if (std::abs(eig(i)) > 0.0) out.push_back(-1.0 / eig(i));
    }
  } else if (rule == SkewRule::Corrected) {
    for (Eigen::Index i = 0; i < eig.size(); ++i) out.push_back(-eig(i));
  } else {
    out.push_back(0.0);
    // z(I + A^×) is singular where −1 ∈ σ(A^×), for every z.
  }
  return out;
}

Matrix RationalRealization::evaluate(Complex z, SkewRule rule) const {
  const Eigen::Index n = core.rows();
  const double margin = kPoleMargin * std::max(1.0, norm2(core));
  for (const Complex p : poles(rule)) {
    if (std::abs(z - p) <= margin) throw PoleError("reflection_closed: z is at a pole");
  }
  if (kind == SystemKind::SelfAdjoint) {
    return -kI * z * left * checked_solve(identity(n) + z * core, right, "realization resolvent");
  }
  const Matrix pencil = rule == SkewRule::Corrected ? Matrix(z * identity(n) + core)
                                                    : Matrix(z * identity(n) + z * core);
  return -kI * left * checked_solve(pencil, right, "realization resolvent");
}

Matrix reflection_closed(const ParameterTriple& t, Complex z, SkewRule rule) {
  return RationalRealization::from_triple(t).evaluate(z, rule);
}

Matrix weyl_value(const GbdtSequence& seq, Complex z) {
  const BlockDecomposition w = BlockDecomposition::split(transfer_at(seq, 0, z), seq.source().sig);
  Matrix d_inv;
  try {
    d_inv = checked_inverse(w.d, "weyl_value: d block", 1e-12);
  } catch (const SingularError&) {
    throw SingularError("weyl_value: isolated singularity (d block not invertible)");
  }
  return w.b * d_inv;
}

namespace {

Matrix bottom_selector(const Signature& sig) {
  Matrix e = Matrix::Zero(sig.m(), sig.m2);
  e.bottomRows(sig.m2) = identity(sig.m2);
  return e;
}

Matrix block_ratio(const Matrix& top, const Matrix& bottom) {
  return top * checked_inverse(bottom, "reflection_oracle: trailing block", 1e-12);
}

}  // namespace

OracleResult reflection_oracle_estimate(const GbdtSequence& seq, Complex z, int max_k,
                                        double tol) {
  const ParameterTriple& t = seq.source();
  const Signature& sig = t.sig;
  const bool sa = t.kind == SystemKind::SelfAdjoint;
  if (sa && z.imag() != 0.0) throw Error("reflection_oracle: self-adjoint kind needs real z");
  if (!sa && z == Complex(0.0)) throw SingularError("reflection_oracle: z = 0 is singular");
  max_k = std::min(max_k, seq.horizon() + 1);
  if (max_k < 1) throw DimensionError("reflection_oracle: horizon too small");

  // One-step matrices and the free solution are normalised by the modulus of
  // the decaying free multiplier so the product stays O(1).
  const Complex down = sa ? 1.0 - kI * z : 1.0 - kI / z;
  const double scale = std::abs(down);
  const Matrix e2 = bottom_selector(sig);

  OracleResult out;
  Matrix w = identity(sig.m());
  bool have_prev = false;
  const int first = std::min(10, max_k);
  for (int k = 1; k <= max_k; ++k) {
    w = (one_step(seq, k - 1, z) / scale) * w;
    if (k != max_k && (k < first || (k - first) % 5 != 0)) continue;
    Matrix value;
    if (sa) {
      const Matrix free = free_power(t.kind, sig, z, k) / std::pow(scale, k);
      const Matrix f0 = checked_solve(w, free, "reflection_oracle: W_K");
      value = block_ratio(f0.topRightCorner(sig.m1, sig.m2), f0.bottomRightCorner(sig.m2, sig.m2));
    } else {
      const Matrix y0 = checked_solve(w, std::pow(down / scale, k) * e2, "reflection_oracle: w_K");
      value = block_ratio(y0.topRows(sig.m1), y0.bottomRows(sig.m2));
    }
    out.truncation = k;
    if (have_prev) {
      out.increment = (value - out.value).norm();
      out.value = std::move(value);
      if (out.increment < tol) {
        out.converged = true;
        return out;
      }
    } else {
      out.value = std::move(value);
      out.increment = std::numeric_limits<double>::infinity();
      have_prev = true;
    }
  }
  return out;
}

OracleResult reflection_oracle(const GbdtSequence& seq, Complex z, int max_k, double tol) {
  OracleResult out = reflection_oracle_estimate(seq, z, max_k, tol);
  if (!out.converged) {
    throw ConvergenceError("reflection_oracle: increment " + std::to_string(out.increment) +
                           " at truncation " + std::to_string(out.truncation));
  }
  return out;
}

WeylSumResult weyl_sum_check(const GbdtSequence& seq, Complex z, int max_k) {
  const ParameterTriple& t = seq.source();
  const Signature& sig = t.sig;
  const bool sa = t.kind == SystemKind::SelfAdjoint;
  if (sa && !(z.imag() < 0.0)) throw Error("weyl_sum_check: self-adjoint kind needs z in C_-");
  if (!sa && !(z.imag() > 0.0)) throw Error("weyl_sum_check: skew kind needs Im z > 0");
  max_k = std::min(max_k, seq.horizon());

  const BlockDecomposition w0 = BlockDecomposition::split(transfer_at(seq, 0, z), sig);
  const Matrix d_inv = checked_inverse(w0.d, "weyl_sum_check: d block", 1e-12);
  const Complex down = sa ? 1.0 - kI * z : 1.0 - kI / z;
  const double q = sa ? 1.0 / (1.0 + std::norm(z)) : 1.0;

  WeylSumResult out;
  double total = 0.0;
  Matrix tail = Matrix::Zero(sig.m(), sig.m2);
  for (int k = 0; k <= max_k; ++k) {
    tail.bottomRows(sig.m2) = std::pow(down, k) * d_inv;
    const Matrix v = transfer_at(seq, k, z) * tail;
    const Matrix form = sa ? Matrix(v.adjoint() * seq.c(k) * v) : Matrix(v.adjoint() * v);
    const double term = std::pow(q, k) * form.trace().real();
    out.nondecreasing = out.nondecreasing && term >= 0.0;
    total += term;
    out.terms.push_back(term);
    out.partial_sums.push_back(total);
  }
  const std::size_t half = out.terms.size() / 2;
  out.tail_ratio = fit_geometric_rate(std::span<const double>(out.terms).subspan(half));
  return out;
}

std::vector<double> weyl_terms_direct(const GbdtSequence& seq, Complex z, int max_k) {
  const ParameterTriple& t = seq.source();
  const Signature& sig = t.sig;
  const bool sa = t.kind == SystemKind::SelfAdjoint;
  max_k = std::min(max_k, seq.horizon());
  Matrix v(sig.m(), sig.m2);
  v << weyl_value(seq, z), identity(sig.m2);
  const double q = sa ? 1.0 / (1.0 + std::norm(z)) : 1.0;
  std::vector<double> terms;
  for (int k = 0; k <= max_k; ++k) {
    const Matrix form = sa ? Matrix(v.adjoint() * seq.c(k) * v) : Matrix(v.adjoint() * v);
    terms.push_back(std::pow(q, k) * form.trace().real());
    v = one_step(seq, k, z) * v;
  }
  return terms;
}

double skew_weyl_threshold(const GbdtSequence& seq) {
  double c_max = 0.0;
  for (int k = 0; k <= seq.horizon(); ++k) c_max = std::max(c_max, norm2(seq.c(k)));
  return 2.0 * (1.0 + c_max);
}

EqualityReport certify_theorems(const ParameterTriple& t, std::span<const Complex> samples,
                                double tol, int horizon) {
  const GbdtSequence seq = GbdtSequence::build(t, horizon);
  const RationalRealization realization = RationalRealization::from_triple(t);
  const bool skew = t.kind == SystemKind::SkewSelfAdjoint;

  EqualityReport report;
  report.kind = t.kind;
  report.min_printed_diff = std::numeric_limits<double>::infinity();
  int evaluated = 0;
  for (const Complex z0 : samples) {
    SampleResult s;
    s.z = z0;
    s.real_axis = z0.imag() == 0.0;
    try {
      Complex z = z0;
      Matrix reference;
      if (s.real_axis) {
        const OracleResult oracle = reflection_oracle_estimate(seq, z, horizon + 1, tol * 1e-2);
        s.oracle_converged = oracle.converged;
        reference = oracle.value;
      } else {
        try {
          reference = weyl_value(seq, z);
        } catch (const SingularError&) {
          z += Complex(1e-6, 0.0);
          s.z = z;
          s.shifted = true;
          s.note = "d block singular; shifted by 1e-6";
          reference = weyl_value(seq, z);
        }
      }
      const Matrix closed = realization.evaluate(z);
      s.difference = (reference - closed).norm();
      if (skew) {
        try {
          s.printed_difference = (reference - realization.evaluate(z, SkewRule::Printed)).norm();
        } catch (const PoleError&) {
          s.printed_difference = std::numeric_limits<double>::infinity();
        }
        report.max_printed_diff = std::max(report.max_printed_diff, s.printed_difference);
        report.min_printed_diff = std::min(report.min_printed_diff, s.printed_difference);
      }
      if (s.real_axis) {
        report.max_oracle_diff = std::max(report.max_oracle_diff, s.difference);
      } else {
        report.max_weyl_diff = std::max(report.max_weyl_diff, s.difference);
      }
      ++evaluated;
    } catch (const PoleError& e) {
      s.skipped = true;
      s.note = e.what();
    }
    report.samples.push_back(std::move(s));
  }
  report.oracle_pass = report.max_oracle_diff <= tol;
  report.weyl_pass = report.max_weyl_diff <= tol;
  for (const auto& s : report.samples) {
    if (!s.skipped && s.real_axis && !s.oracle_converged) report.oracle_pass = false;
  }
  report.printed_rule_matches = skew && evaluated > 0 && report.max_printed_diff <= tol;
  if (!skew) report.min_printed_diff = 0.0;
  report.pass = evaluated > 0 && report.oracle_pass && report.weyl_pass;
  return report;
}

}  // namespace dgbdt
