#pragma once

#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

#include "dgbdt/matcore.hpp"

namespace dgbdt {

enum class SystemKind { SelfAdjoint, SkewSelfAdjoint };

std::string_view to_string(SystemKind kind);
/// Accepts "self_adjoint"/"sa" and "skew"/"skew_self_adjoint".
SystemKind parse_kind(std::string_view text);

/// Block sizes of j = diag(I_{m1}, −I_{m2}).
struct Signature {
  int m1 = 1;
  int m2 = 1;

  int m() const { return m1 + m2; }
  Matrix j() const;
  void check() const;
  bool operator==(const Signature&) const = default;
};

/// GBDT parameter triple {A, S₀, Π₀} together with the system it determines.
struct ParameterTriple {
  SystemKind kind = SystemKind::SelfAdjoint;
  Signature sig;
  Matrix a;
  Matrix s0;
  Matrix pi0;

  int n() const { return static_cast<int>(a.rows()); }
  Matrix theta1() const { return pi0.leftCols(sig.m1); }
  Matrix theta2() const { return pi0.rightCols(sig.m2); }

  /// Middle factor of the identity A S − S A^* = i Π (·) Π^*: j for the
  /// self-adjoint kind, I_m for the skew kind.
  Matrix identity_middle() const;

  /// Throws DimensionError unless A, S₀ are n×n and Π₀ is n×m.
  void check_dimensions() const;
};

struct Check {
  std::string name;
  double value = 0.0;
  double threshold = 0.0;
  bool pass = false;
};

struct ValidationReport {
  std::vector<Check> checks;
  bool admissible = false;
  bool strongly_admissible = false;

  const Check& at(std::string_view name) const;
};

/// Relative residual of the triple identity at (S, Π).
double identity_residual(const ParameterTriple& t, const Matrix& s, const Matrix& pi);

/// Evaluates every admissibility condition; mathematical failures are
/// reported, only structural problems throw.
ValidationReport validate(const ParameterTriple& t, double tol = kDefaultTol);

/// Unique Hermitian solution of A S₀ − S₀ A^* = i Π₀ (j or I) Π₀^*.
/// Positivity is not guaranteed and must be checked by the caller.
Matrix derive_s0(SystemKind kind, const Signature& sig, const Matrix& a, const Matrix& pi0,
                 double tol = kDefaultTol);

/// Solution X₁ of A X₁ − X₁ A^* = i ϑ₁ ϑ₁^*; the limit of the scaled
/// sequence R_k for strongly admissible triples of either kind.
Matrix limit_gramian(const ParameterTriple& t, double tol = kDefaultTol);

struct GenerateOptions {
  double re_min = -2.0;
  double re_max = 2.0;
  double im_min = 0.3;
  double im_max = 2.5;
  /// Eigenvalues are kept at least this far from i.
  double i_exclusion = 0.2;
  /// Per-eigenvalue cap on |a − i| / |a + i|, i.e. on ρ(G(A)).
  double rho_max = 0.65;
  /// Size of the strictly upper-triangular (non-normal) part of A.
  double nonnormal_scale = 0.3;
  /// ϑ₂ is scaled by 10^u, u ~ U[theta2_log10_min, 0] (self-adjoint only).
  double theta2_log10_min = -3.0;
  /// λ_min/λ_max required of S₀ and of the limit Gramian X₁.
  double s0_margin = 1e-4;
  double limit_margin = 1e-5;
  int max_attempts = 100000;
  double tol = kDefaultTol;
};

/// Rejection sampler for strongly admissible triples; deterministic per seed.
ParameterTriple generate(SystemKind kind, int n, const Signature& sig, std::uint64_t seed,
                         const GenerateOptions& options = {});

/// Applies the unitary similarity (U A U^*, U S₀ U^*, U Π₀).
ParameterTriple unitary_similarity(const ParameterTriple& t, const Matrix& u);

}  // namespace dgbdt
