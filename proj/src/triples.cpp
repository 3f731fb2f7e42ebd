#include "dgbdt/triples.hpp"

#include <algorithm>
#include <cmath>
#include <optional>
#include <random>

#include <Eigen/Eigenvalues>
#include <Eigen/QR>
#include <Eigen/SVD>

namespace dgbdt {

std::string_view to_string(SystemKind kind) {
  return kind == SystemKind::SelfAdjoint ? "self_adjoint" : "skew";
}

SystemKind parse_kind(std::string_view text) {
  if (text == "self_adjoint" || text == "sa") return SystemKind::SelfAdjoint;
  if (text == "skew" || text == "skew_self_adjoint") return SystemKind::SkewSelfAdjoint;
  throw Error("unknown system kind '" + std::string(text) + "'");
}

Matrix Signature::j() const {
  Eigen::VectorXcd d(m());
  d.head(m1).setOnes();
  d.tail(m2).setConstant(-1.0);
  return d.asDiagonal();
}

void Signature::check() const {
  if (m1 < 1 || m2 < 1) throw DimensionError("signature requires m1 >= 1 and m2 >= 1");
}

Matrix ParameterTriple::identity_middle() const {
  return kind == SystemKind::SelfAdjoint ? sig.j() : identity(sig.m());
}

void ParameterTriple::check_dimensions() const {
  sig.check();
  const auto n = a.rows();
  if (n < 1 || a.cols() != n) throw DimensionError("triple: A must be square and non-empty");
  if (s0.rows() != n || s0.cols() != n) throw DimensionError("triple: S0 must match A");
  if (pi0.rows() != n || pi0.cols() != sig.m()) {
    throw DimensionError("triple: Pi0 must be n x (m1+m2)");
  }
  if (!all_finite(a) || !all_finite(s0) || !all_finite(pi0)) {
    throw DimensionError("triple: entries must be finite");
  }
}

const Check& ValidationReport::at(std::string_view name) const {
  for (const auto& c : checks) {
    if (c.name == name) return c;
  }
  throw Error("validation report has no check '" + std::string(name) + "'");
}

double identity_residual(const ParameterTriple& t, const Matrix& s, const Matrix& pi) {
  const Matrix lhs = t.a * s - s * t.a.adjoint();
  const Matrix rhs = kI * pi * t.identity_middle() * pi.adjoint();
  const double scale = norm2(t.a) * norm2(s) + std::pow(norm2(pi), 2);
  return (lhs - rhs).norm() / std::max(scale, 1e-300);
}

ValidationReport validate(const ParameterTriple& t, double tol) {
  t.check_dimensions();
  ValidationReport report;
  auto add = [&](std::string name, double value, double threshold, bool pass) {
    report.checks.push_back({std::move(name), value, threshold, pass});
    return pass;
  };

  Eigen::JacobiSVD<Matrix> svd(t.a);
  const auto& sv = svd.singularValues();
  const double a_norm = sv(0);
  const double sigma_min_rel = sv(sv.size() - 1) / a_norm;
  const bool invertible = add("det_a_nonzero", sigma_min_rel, tol, sigma_min_rel > tol);

  const double s_norm = std::max(norm2(t.s0), 1e-300);
  const double defect = hermitian_defect(t.s0) / s_norm;
  const bool hermitian = add("s0_hermitian", defect, tol, defect <= tol);

  const PositivityResult pd = is_positive_definite(t.s0, tol);
  const bool positive = add("s0_positive_definite", pd.margin, tol, pd.positive);

  const double residual = identity_residual(t, t.s0, t.pi0);
  const bool identity_ok = add("identity_residual", residual, tol, residual <= tol);

  const Spectrum eig = spectrum(t.a);
  double i_distance = std::numeric_limits<double>::infinity();
  double min_imag = std::numeric_limits<double>::infinity();
  for (Eigen::Index k = 0; k < eig.size(); ++k) {
    i_distance = std::min(i_distance, std::abs(eig(k) - kI));
    min_imag = std::min(min_imag, eig(k).imag());
  }
  const double scale = std::max(1.0, a_norm);
  const bool i_ok = add("i_not_eigenvalue", i_distance, tol * scale, i_distance > tol * scale);

  if (t.kind == SystemKind::SelfAdjoint) {
    report.admissible = invertible && hermitian && positive && identity_ok;
    const bool upper =
        add("spectrum_in_upper_half_plane", min_imag, tol * scale, min_imag > tol * scale);
    report.strongly_admissible = report.admissible && upper && i_ok;
  } else {
    const int rank = controllability_rank(t.a, t.theta1(), tol);
    const bool controllable =
        add("controllability_rank", rank, t.n(), rank == t.n());
    report.admissible = invertible && hermitian && positive && identity_ok && controllable;
    report.strongly_admissible = report.admissible && i_ok;
  }
  return report;
}

Matrix derive_s0(SystemKind kind, const Signature& sig, const Matrix& a, const Matrix& pi0,
                 double tol) {
  sig.check();
  require_square(a, "derive_s0");
  if (pi0.rows() != a.rows() || pi0.cols() != sig.m()) {
    throw DimensionError("derive_s0: Pi0 must be n x (m1+m2)");
  }
  const Matrix middle = kind == SystemKind::SelfAdjoint ? sig.j() : identity(sig.m());
  const Matrix rhs = kI * pi0 * middle * pi0.adjoint();
  return hermitian_part(solve_sylvester(a, a.adjoint(), rhs, tol));
}

Matrix limit_gramian(const ParameterTriple& t, double tol) {
  const Matrix th1 = t.theta1();
  return hermitian_part(solve_sylvester(t.a, t.a.adjoint(), kI * th1 * th1.adjoint(), tol));
}

namespace {

double eigen_ratio(const Matrix& h) {
  Eigen::SelfAdjointEigenSolver<Matrix> es(h, Eigen::EigenvaluesOnly);
  const auto& ev = es.eigenvalues();
  return ev(ev.size() - 1) > 0.0 ? ev(0) / ev(ev.size() - 1) : -1.0;
}

class Sampler {
 public:
  explicit Sampler(std::uint64_t seed) : rng_(seed) {}

  double uniform(double lo, double hi) { return std::uniform_real_distribution<double>(lo, hi)(rng_); }

  Complex gaussian() {
    std::normal_distribution<double> g(0.0, 1.0);
    const double re = g(rng_);
    const double im = g(rng_);
    return Complex(re, im) / std::sqrt(2.0);
  }

  Matrix gaussian(Eigen::Index rows, Eigen::Index cols) {
    Matrix out(rows, cols);
    for (Eigen::Index c = 0; c < cols; ++c) {
      for (Eigen::Index r = 0; r < rows; ++r) out(r, c) = gaussian();
    }
    return out;
  }

  Matrix unitary(Eigen::Index n) {
    Eigen::HouseholderQR<Matrix> qr(gaussian(n, n));
    return qr.householderQ() * identity(n);
  }

 private:
  std::mt19937_64 rng_;
};

// Empty when the box admits (almost) no eigenvalue; the caller counts that
// as a rejected attempt.
std::optional<Complex> draw_eigenvalue(Sampler& s, const GenerateOptions& o) {
  for (int tries = 0; tries < 1000; ++tries) {
    const Complex z(s.uniform(o.re_min, o.re_max), s.uniform(o.im_min, o.im_max));
    if (std::abs(z - kI) <= o.i_exclusion) continue;
    if (std::abs(z - kI) / std::abs(z + kI) > o.rho_max) continue;
    return z;
  }
  return std::nullopt;
}

}  // namespace

ParameterTriple generate(SystemKind kind, int n, const Signature& sig, std::uint64_t seed,
                         const GenerateOptions& options) {
  if (n < 1) throw DimensionError("generate: n must be >= 1");
  sig.check();
  Sampler sampler(seed);
  for (int attempt = 1; attempt <= options.max_attempts; ++attempt) {
    Matrix upper = Matrix::Zero(n, n);
    bool drawn = true;
    for (int i = 0; i < n && drawn; ++i) {
      const std::optional<Complex> ev = draw_eigenvalue(sampler, options);
      drawn = ev.has_value();
      if (drawn) upper(i, i) = *ev;
      for (int k = i + 1; k < n; ++k) upper(i, k) = options.nonnormal_scale * sampler.gaussian();
    }
    if (!drawn) continue;
    const Matrix u = sampler.unitary(n);

    ParameterTriple t;
    t.kind = kind;
    t.sig = sig;
    t.a = u * upper * u.adjoint();
    t.pi0 = sampler.gaussian(n, sig.m());
    if (kind == SystemKind::SelfAdjoint) {
      t.pi0.rightCols(sig.m2) *= std::pow(10.0, sampler.uniform(options.theta2_log10_min, 0.0));
    }
    try {
      t.s0 = derive_s0(kind, sig, t.a, t.pi0, options.tol);
      if (eigen_ratio(t.s0) < options.s0_margin) continue;
      if (!validate(t, options.tol).strongly_admissible) continue;
      if (eigen_ratio(limit_gramian(t, options.tol)) < options.limit_margin) continue;
    } catch (const SingularError&) {
      continue;
    }
    return t;
  }
  throw GenerationError("generate: no strongly admissible triple after " +
                           std::to_string(options.max_attempts) + " attempts",
                       options.max_attempts);
}

ParameterTriple unitary_similarity(const ParameterTriple& t, const Matrix& u) {
  ParameterTriple out = t;
  out.a = u * t.a * u.adjoint();
  out.s0 = u * t.s0 * u.adjoint();
  out.pi0 = u * t.pi0;
  return out;
}

}  // namespace dgbdt
