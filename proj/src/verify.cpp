#include "dgbdt/verify.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <limits>
#include <optional>

#include <Eigen/Eigenvalues>

#include "dgbdt/version.hpp"

namespace dgbdt {

namespace {

constexpr int kLimitHorizon = 60;
constexpr int kBlockRepHorizon = 30;

double min_eigenvalue(const Matrix& h) {
  Eigen::SelfAdjointEigenSolver<Matrix> es(hermitian_part(h), Eigen::EigenvaluesOnly);
  return es.eigenvalues().minCoeff();
}

Matrix block_diag(const Matrix& top, const Matrix& bottom) {
  Matrix out = Matrix::Zero(top.rows() + bottom.rows(), top.cols() + bottom.cols());
  out.topLeftCorner(top.rows(), top.cols()) = top;
  out.bottomRightCorner(bottom.rows(), bottom.cols()) = bottom;
  return out;
}

class CheckList {
 public:
  explicit CheckList(std::vector<ReportCheck>& out) : out_(out) {}

  // value ≤ tol
  void at_most(std::string name, double value, double tol) {
    out_.push_back({std::move(name), value, tol, std::isfinite(value) && value <= tol});
  }
  // value ≥ −tol
  void at_least_neg(std::string name, double value, double tol) {
    out_.push_back({std::move(name), value, tol, std::isfinite(value) && value >= -tol});
  }
  void exceeds(std::string name, double value, double tol) {
    out_.push_back({std::move(name), value, tol, value > tol});
  }
  void flag(std::string name, bool ok, double value = 0.0, double tol = 0.0) {
    out_.push_back({std::move(name), value, tol, ok});
  }

 private:
  std::vector<ReportCheck>& out_;
};

}  // namespace

std::vector<Complex> real_samples() {
  std::vector<Complex> out;
  for (const double x : {0.1, 0.25, 0.5, 0.75, 1.0, 1.5, 2.0, 3.0, 4.0, 5.0}) {
    out.emplace_back(x, 0.0);
    out.emplace_back(-x, 0.0);
  }
  return out;
}

std::vector<Complex> weyl_samples(const GbdtSequence& seq) {
  if (seq.source().kind == SystemKind::SelfAdjoint) {
    return {{0, -1},   {0, -2},    {1, -1},   {-1, -1}, {0.5, -0.5},
            {-0.5, -2}, {2, -0.5}, {-2, -3}, {3, -1},  {0, -0.3}};
  }
  const double m = skew_weyl_threshold(seq);
  return {{0, m},          {0, 1.25 * m},  {0, 1.5 * m},   {0, 2 * m},
          {0, 3 * m},      {1, 1.1 * m},   {-1, 1.1 * m},  {2.5, 1.6 * m},
          {-2.5, 1.6 * m}, {0.5, 2.5 * m}};
}

std::vector<Complex> fundamental_grid() {
  std::vector<Complex> out;
  for (const double x : {0.3, 0.7, 1.0, 1.5, 2.5, 4.0}) {
    out.emplace_back(x, 0.0);
    out.emplace_back(-x, 0.0);
  }
  for (const Complex z : {Complex(0.5, 0.5), Complex(-1, 0.25), Complex(2, 1), Complex(-0.3, 0.8)}) {
    out.push_back(z);
    out.push_back(std::conj(z));
  }
  return out;
}

std::vector<double> unitarity_lambdas() {
  return {-3.0, -2.0, -1.0, -0.5, -0.1, 0.1, 0.5, 1.0, 2.0, 3.0};
}

Complex weyl_sum_point(const GbdtSequence& seq) {
  if (seq.source().kind == SystemKind::SelfAdjoint) return {0.0, -2.0};
  return {0.0, std::max(5.0, skew_weyl_threshold(seq))};
}

double max_identity_residual(const GbdtSequence& seq, int k_max) {
  const auto& res = seq.identity_residuals();
  double out = 0.0;
  for (int k = 0; k <= k_max && k < static_cast<int>(res.size()); ++k) out = std::max(out, res[k]);
  return out;
}

PotentialStats potential_stats(const GbdtSequence& seq, int k_max) {
  const Signature& sig = seq.source().sig;
  const Matrix j = sig.j();
  const Matrix eye = identity(sig.m());
  PotentialStats out;
  out.min_eigenvalue = std::numeric_limits<double>::infinity();
  for (int k = 0; k <= k_max; ++k) {
    const Matrix& c = seq.c(k);
    if (seq.source().kind == SystemKind::SelfAdjoint) {
      out.min_eigenvalue = std::min(out.min_eigenvalue, min_eigenvalue(c));
      out.max_j_defect = std::max(out.max_j_defect, norm2(c * j * c - j));
    } else {
      out.max_hermitian = std::max(out.max_hermitian, norm2(c - c.adjoint()));
      out.max_involution = std::max(out.max_involution, norm2(c * c - eye));
      out.max_trace_defect =
          std::max(out.max_trace_defect, std::abs(c.trace() - Complex(sig.m1 - sig.m2)));
    }
  }
  return out;
}

MonotonicityStats monotonicity(const GbdtSequence& seq, int k_max) {
  MonotonicityStats out;
  out.min_r_step = std::numeric_limits<double>::infinity();
  out.min_q_step = std::numeric_limits<double>::infinity();
  const Matrix& g = seq.g();
  for (int k = 0; k <= k_max; ++k) {
    const Matrix& r0 = seq.r(k);
    const Matrix& r1 = seq.r(k + 1);
    out.min_r_step = std::min(out.min_r_step, min_eigenvalue(r1 - r0));
    out.min_q_step = std::min(out.min_q_step, min_eigenvalue(r1 - g * r0 * g.adjoint()) / norm2(r1));
  }
  return out;
}

GridError fundamental_equivalence(const GbdtSequence& seq, std::span<const Complex> grid,
                                  int k_max) {
  GridError out;
  for (const Complex z : grid) {
    try {
      Matrix direct = identity(seq.source().sig.m());
      double worst = 0.0;
      for (int k = 0; k <= k_max; ++k) {
        const Matrix closed = fundamental_closed(seq, k, z);
        worst = std::max(worst, norm2(closed - direct) / norm2(direct));
        direct = one_step(seq, k, z) * direct;
      }
      out.max_error = std::max(out.max_error, worst);
      ++out.evaluated;
    } catch (const PoleError&) {
      ++out.skipped;
    } catch (const SingularError&) {
      ++out.skipped;
    }
  }
  return out;
}

GridError transfer_j_unitarity(const GbdtSequence& seq, std::span<const double> lambdas,
                               int k_max) {
  GridError out;
  const Matrix j = seq.source().sig.j();
  for (const double lambda : lambdas) {
    try {
      for (int k = 0; k <= k_max; ++k) {
        const Matrix w = transfer_eval(seq, k, lambda);
        out.max_error = std::max(out.max_error, norm2(w.adjoint() * j * w - j));
      }
      ++out.evaluated;
    } catch (const PoleError&) {
      ++out.skipped;
    }
  }
  return out;
}

GridError block_rep_agreement(const GbdtSequence& seq, std::span<const Complex> grid, int k_max) {
  GridError out;
  const bool sa = seq.source().kind == SystemKind::SelfAdjoint;
  const int m2 = seq.source().sig.m2;
  for (const Complex z : grid) {
    try {
      for (int k = 0; k <= k_max; ++k) {
        Matrix reference = transfer_at(seq, k, z);
        if (!sa) reference = reference.rightCols(m2).eval();
        const Matrix block = transfer_block_rep(seq, k, z);
        out.max_error = std::max(out.max_error, norm2(block - reference) / norm2(reference));
      }
      ++out.evaluated;
    } catch (const PoleError&) {
      ++out.skipped;
    } catch (const SingularError&) {
      ++out.skipped;
    }
  }
  return out;
}

GridError asymptotic_residual(const GbdtSequence& seq, const LimitPair& lim,
                              std::span<const Complex> points, int k) {
  GridError out;
  const ParameterTriple& t = seq.source();
  for (const Complex z : points) {
    try {
      double err = 0.0;
      if (t.kind == SystemKind::SelfAdjoint) {
        const Matrix f = jost_closed(seq, lim, k, z.real());
        const Complex up = std::pow(1.0 + kI * z, -k);
        const Complex down = std::pow(1.0 - kI * z, -k);
        const Matrix scale = block_diag(up * identity(t.sig.m1), down * identity(t.sig.m2));
        err = norm2(f * scale - identity(t.sig.m()));
      } else {
        Matrix target = Matrix::Zero(t.sig.m(), t.sig.m2);
        target.bottomRows(t.sig.m2) = identity(t.sig.m2);
        const Matrix y = y_closed(seq, k, z) / std::pow(1.0 - kI / z, k);
        err = norm2(y - target);
      }
      out.max_error = std::max(out.max_error, err);
      ++out.evaluated;
    } catch (const PoleError&) {
      ++out.skipped;
    } catch (const SingularError&) {
      ++out.skipped;
    }
  }
  return out;
}

ReportDocument run_verification(const ParameterTriple& t, const VerifyOptions& options) {
  const auto started = std::chrono::steady_clock::now();
  ReportDocument report;
  report.version = kVersion;
  report.triple_sha256 = sha256_hex(triple_to_json(t));
  CheckList checks(report.checks);
  const bool sa = t.kind == SystemKind::SelfAdjoint;
  const int kmax = options.kmax;
  const double tol = options.tol;

  auto finish = [&]() {
    report.finalize();
    report.seconds =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - started).count();
    return report;
  };

  const ValidationReport validation = validate(t);
  for (const Check& c : validation.checks) {
    report.checks.push_back({"triple_" + c.name, c.value, c.threshold, c.pass});
  }
  checks.flag("triple_strongly_admissible", validation.strongly_admissible,
              validation.strongly_admissible ? 1.0 : 0.0, 0.0);
  if (!validation.strongly_admissible) return finish();

  std::optional<GbdtSequence> built;
  try {
    built = GbdtSequence::build(t, std::max(kmax, kLimitHorizon));
  } catch (const ConditioningError& e) {
    checks.flag("sequence_positive_definite", false, e.step(), 0.0);
    return finish();
  }
  const GbdtSequence& seq = *built;

  // Sequence-level laws.
  if (sa) checks.at_most("sequence_identity_residual", max_identity_residual(seq, kmax), 1e-10);
  const PotentialStats pot = potential_stats(seq, kmax);
  if (sa) {
    checks.exceeds("potential_positive_definite", pot.min_eigenvalue, 0.0);
    checks.at_most("potential_j_unitary", pot.max_j_defect, 1e-9);
  } else {
    checks.at_most("potential_hermitian", pot.max_hermitian, 1e-9);
    checks.at_most("potential_involution", pot.max_involution, 1e-9);
    checks.at_most("potential_trace_signature", pot.max_trace_defect, 1e-9);
  }
  if (sa) {
    const MonotonicityStats mono = monotonicity(seq, kmax);
    checks.at_least_neg("monotonicity_r", mono.min_r_step, 1e-10);
    checks.at_least_neg("monotonicity_q", mono.min_q_step, 1e-10);
  }

  const LimitPair lim = limits_estimate(seq, 1e-8);
  if (sa) {
    checks.at_most("limit_r_inverse_increment", lim.r_increment / std::max(1.0, norm2(lim.kappa_r)),
                   1e-8);
    checks.at_most("limit_q_inverse_increment", lim.q_increment, 1e-8);
    checks.at_least_neg("limit_kappa_r_psd", min_eigenvalue(lim.kappa_r), 1e-10);
    checks.at_least_neg("limit_kappa_q_psd", min_eigenvalue(lim.kappa_q), 1e-10);
  } else {
    checks.at_most("limit_q_inverse_norm", lim.q_inverse_norm, 1e-8);
    checks.at_most("limit_q_inverse_theta_norm", lim.q_theta_norm, 1e-8);
  }

  // Transfer matrix and fundamental solutions.
  const std::vector<Complex> grid = fundamental_grid();
  const GridError equiv = fundamental_equivalence(seq, grid, std::min(kmax, 30));
  checks.at_most("fundamental_direct_matches_closed", equiv.max_error, 1e-9);
  checks.at_most("transfer_block_rep_matches_eval",
                 block_rep_agreement(seq, grid, std::min(kmax, kBlockRepHorizon)).max_error, 1e-10);
  if (sa) {
    const std::vector<double> lambdas = unitarity_lambdas();
    checks.at_most("transfer_j_unitary", transfer_j_unitarity(seq, lambdas, std::min(kmax, 20)).max_error,
                   1e-9);
  }
  const std::vector<Complex> reals = real_samples();
  if (sa) {
    checks.at_most("jost_asymptotics", asymptotic_residual(seq, lim, reals, kmax).max_error, 1e-6);
  } else {
    const std::vector<Complex> pts = {{2, 0}, {-1.5, 0}, {0, 3}, {1, 2}};
    checks.at_most("skew_solution_asymptotics", asymptotic_residual(seq, lim, pts, kmax).max_error,
                   1e-6);
  }

  // Weyl functions and reflection coefficients.
  const std::vector<Complex> half_plane = weyl_samples(seq);
  if (sa) {
    double worst = 0.0;
    for (const Complex z : half_plane) {
      try {
        worst = std::max(worst, norm2(weyl_value(seq, z)));
      } catch (const SingularError&) {
      }
    }
    checks.at_most("weyl_function_contractive", worst, 1.0 + 1e-9);
  }
  const WeylSumResult sums = weyl_sum_check(seq, weyl_sum_point(seq), kmax);
  double min_term = std::numeric_limits<double>::infinity();
  for (const double term : sums.terms) min_term = std::min(min_term, term);
  checks.flag("weyl_sum_nondecreasing", sums.nondecreasing, min_term, 0.0);
  checks.at_most("weyl_sum_tail_ratio", sums.tail_ratio, 0.9);

  std::vector<Complex> samples = reals;
  samples.insert(samples.end(), half_plane.begin(), half_plane.end());
  const EqualityReport eq = certify_theorems(t, samples, tol);
  int real_count = 0;
  int plane_count = 0;
  for (const auto& s : eq.samples) {
    if (s.skipped) continue;
    (s.real_axis ? real_count : plane_count) += 1;
  }
  checks.flag("theorem_samples_evaluated", real_count >= 20 && plane_count >= 10,
              real_count + plane_count, 30.0);
  const double weyl_tol = std::min(tol, 1e-9);
  if (sa) {
    checks.flag("reflection_oracle_matches_closed_form", eq.oracle_pass && eq.max_oracle_diff <= tol,
                eq.max_oracle_diff, tol);
    checks.at_most("weyl_function_matches_closed_form", eq.max_weyl_diff, weyl_tol);
  } else {
    checks.flag("skew_reflection_corrected_rule_matches_oracle",
                eq.oracle_pass && eq.max_oracle_diff <= tol, eq.max_oracle_diff, tol);
    checks.at_most("skew_weyl_function_matches_corrected_rule", eq.max_weyl_diff, weyl_tol);
    // With a vanishing reflection coefficient both rules agree and there is
    // nothing to discriminate.
    double scale = 0.0;
    const RationalRealization realization = RationalRealization::from_triple(t);
    for (const auto& s : eq.samples) {
      if (!s.skipped) scale = std::max(scale, norm2(realization.evaluate(s.z)));
    }
    if (scale > 1e-3) {
      checks.exceeds("skew_reflection_printed_rule_discrepancy", eq.max_printed_diff, 1e-3);
    }
  }
  return finish();
}

}  // namespace dgbdt
