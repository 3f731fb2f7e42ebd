#pragma once

#include <complex>
#include <optional>
#include <vector>

#include <Eigen/Dense>

#include "dgbdt/errors.hpp"

namespace dgbdt {

using Complex = std::complex<double>;
using Matrix = Eigen::MatrixXcd;
using Spectrum = Eigen::VectorXcd;

inline constexpr double kDefaultTol = 1e-10;
inline const Complex kI{0.0, 1.0};

/// Result of a positive-definiteness test; `factor` is the lower Cholesky
/// factor L with L L^* = M when the test succeeds.
struct PositivityResult {
  bool positive = false;
  /// Smallest Cholesky pivot squared divided by the spectral norm of M.
  double margin = 0.0;
  std::optional<Matrix> factor;

  explicit operator bool() const { return positive; }
};

void require_square(const Matrix& m, const char* what);
bool all_finite(const Matrix& m);

/// Spectral norm.
double norm2(const Matrix& m);

Matrix hermitian_part(const Matrix& m);
double hermitian_defect(const Matrix& m);

/// True iff M is Hermitian within tol·‖M‖ and a Cholesky factorisation with
/// every pivot above tol·‖M‖ exists.
PositivityResult is_positive_definite(const Matrix& m, double tol = kDefaultTol);

/// Solves A·X − X·B = C through the vectorised n²×n² Kronecker system.
/// Throws SingularError when σ(A) and σ(B) are closer than tol·(‖A‖+‖B‖).
Matrix solve_sylvester(const Matrix& a, const Matrix& b, const Matrix& c,
                       double tol = kDefaultTol);

Spectrum spectrum(const Matrix& m);
double spectral_radius(const Matrix& m);

/// Smallest eigenvalue of the Hermitian part of M.
double min_hermitian_eigenvalue(const Matrix& m);

/// Numerical rank of the Krylov matrix [T, AT, …, A^{n−1}T].
int controllability_rank(const Matrix& a, const Matrix& t,
                         double tol = kDefaultTol);

/// Numerical rank from singular values above tol·σ_max.
int numerical_rank(const Matrix& m, double tol = kDefaultTol);

/// Inverse through partial-pivot LU; throws SingularError when the
/// reciprocal condition estimate drops below `rcond_min`.
Matrix checked_inverse(const Matrix& m, const char* what,
                       double rcond_min = 1e-14);

/// Solves M·X = B with the same guard as checked_inverse.
Matrix checked_solve(const Matrix& m, const Matrix& b, const char* what,
                     double rcond_min = 1e-14);

Matrix identity(Eigen::Index n);
Matrix matrix_power(const Matrix& m, int k);

}  // namespace dgbdt
