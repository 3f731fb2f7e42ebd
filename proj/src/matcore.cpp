#include "dgbdt/matcore.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

#include <Eigen/Eigenvalues>
#include <Eigen/SVD>

namespace dgbdt {

void require_square(const Matrix& m, const char* what) {
  if (m.rows() != m.cols() || m.rows() == 0) {
    throw DimensionError(std::string(what) + ": expected a non-empty square matrix, got " +
                         std::to_string(m.rows()) + "x" + std::to_string(m.cols()));
  }
}

bool all_finite(const Matrix& m) {
  return m.unaryExpr([](const Complex& z) { return std::isfinite(z.real()) && std::isfinite(z.imag()); })
      .all();
}

double norm2(const Matrix& m) {
  if (m.size() == 0) return 0.0;
  if (m.rows() == 1 || m.cols() == 1) return m.norm();
  Eigen::JacobiSVD<Matrix> svd(m);
  return svd.singularValues()(0);
}

Matrix hermitian_part(const Matrix& m) { return 0.5 * (m + m.adjoint()); }

double hermitian_defect(const Matrix& m) { return (m - m.adjoint()).norm(); }

PositivityResult is_positive_definite(const Matrix& m, double tol) {
  require_square(m, "is_positive_definite");
  PositivityResult out;
  const double scale = std::max(norm2(m), std::numeric_limits<double>::min());
  if (hermitian_defect(m) > tol * scale) return out;
  Eigen::LLT<Matrix> llt(hermitian_part(m));
  if (llt.info() != Eigen::Success) return out;
  Matrix l = llt.matrixL();
  double min_pivot = std::numeric_limits<double>::infinity();
  for (Eigen::Index i = 0; i < l.rows(); ++i) {
    min_pivot = std::min(min_pivot, std::norm(l(i, i)));
  }
  out.margin = min_pivot / scale;
  out.positive = out.margin > tol;
  if (out.positive) out.factor = std::move(l);
  return out;
}

Matrix solve_sylvester(const Matrix& a, const Matrix& b, const Matrix& c, double tol) {
  require_square(a, "solve_sylvester(A)");
  require_square(b, "solve_sylvester(B)");
  const Eigen::Index n = a.rows();
  const Eigen::Index p = b.rows();
  if (c.rows() != n || c.cols() != p) {
    throw DimensionError("solve_sylvester: C must be " + std::to_string(n) + "x" +
                         std::to_string(p));
  }
  const double scale = norm2(a) + norm2(b);
  const Spectrum sa = spectrum(a);
  const Spectrum sb = spectrum(b);
  double separation = std::numeric_limits<double>::infinity();
  for (Eigen::Index i = 0; i < sa.size(); ++i) {
    for (Eigen::Index k = 0; k < sb.size(); ++k) {
      separation = std::min(separation, std::abs(sa(i) - sb(k)));
    }
  }
  if (separation <= tol * std::max(scale, 1.0)) {
    throw SingularError("solve_sylvester: spectra of A and B overlap (separation " +
                        std::to_string(separation) + ")");
  }

  // vec(A X − X B) = (I ⊗ A − Bᵀ ⊗ I) vec(X), column-major vec.
  Matrix kron = Matrix::Zero(n * p, n * p);
  for (Eigen::Index col = 0; col < p; ++col) {
    kron.block(col * n, col * n, n, n) += a;
    for (Eigen::Index row = 0; row < p; ++row) {
      kron.block(row * n, col * n, n, n) -= b(col, row) * Matrix::Identity(n, n);
    }
  }
  Eigen::VectorXcd rhs = Eigen::Map<const Eigen::VectorXcd>(c.data(), n * p);
  Eigen::PartialPivLU<Matrix> lu(kron);
  Eigen::VectorXcd x = lu.solve(rhs);
  Matrix out = Eigen::Map<Matrix>(x.data(), n, p);
  if (!all_finite(out)) throw SingularError("solve_sylvester: non-finite solution");
  return out;
}

Spectrum spectrum(const Matrix& m) {
  require_square(m, "spectrum");
  Eigen::ComplexEigenSolver<Matrix> es(m, /*computeEigenvectors=*/false);
  if (es.info() != Eigen::Success) throw SingularError("spectrum: eigensolver failed");
  return es.eigenvalues();
}

double spectral_radius(const Matrix& m) { return spectrum(m).cwiseAbs().maxCoeff(); }

double min_hermitian_eigenvalue(const Matrix& m) {
  require_square(m, "min_hermitian_eigenvalue");
  Eigen::SelfAdjointEigenSolver<Matrix> es(hermitian_part(m), Eigen::EigenvaluesOnly);
  return es.eigenvalues()(0);
}

int numerical_rank(const Matrix& m, double tol) {
  if (m.size() == 0) return 0;
  Eigen::JacobiSVD<Matrix> svd(m);
  const auto& sv = svd.singularValues();
  if (sv.size() == 0 || sv(0) == 0.0) return 0;
  int rank = 0;
  for (Eigen::Index i = 0; i < sv.size(); ++i) {
    if (sv(i) > tol * sv(0)) ++rank;
  }
  return rank;
}

int controllability_rank(const Matrix& a, const Matrix& t, double tol) {
  require_square(a, "controllability_rank");
  if (t.rows() != a.rows()) throw DimensionError("controllability_rank: row mismatch between A and T");
  const Eigen::Index n = a.rows();
  const Eigen::Index p = t.cols();
  Matrix krylov(n, n * p);
  krylov.leftCols(p) = t;
  for (Eigen::Index i = 1; i < n; ++i) {
    krylov.middleCols(i * p, p) = a * krylov.middleCols((i - 1) * p, p);
  }
  return numerical_rank(krylov, tol);
}

Matrix checked_inverse(const Matrix& m, const char* what, double rcond_min) {
  require_square(m, what);
  Eigen::PartialPivLU<Matrix> lu(m);
  if (!(lu.rcond() > rcond_min)) {
    throw SingularError(std::string(what) + ": matrix is numerically singular");
  }
  return lu.inverse();
}

Matrix checked_solve(const Matrix& m, const Matrix& b, const char* what, double rcond_min) {
  require_square(m, what);
  if (b.rows() != m.rows()) throw DimensionError(std::string(what) + ": right-hand side row mismatch");
  Eigen::PartialPivLU<Matrix> lu(m);
  if (!(lu.rcond() > rcond_min)) {
    throw SingularError(std::string(what) + ": matrix is numerically singular");
  }
  return lu.solve(b);
}

Matrix identity(Eigen::Index n) { return Matrix::Identity(n, n); }

Matrix matrix_power(const Matrix& m, int k) {
  require_square(m, "matrix_power");
  if (k < 0) return matrix_power(checked_inverse(m, "matrix_power"), -k);
  Matrix result = identity(m.rows());
  Matrix base = m;
  while (k > 0) {
    if (k & 1) result = result * base;
    base = base * base;
    k >>= 1;
  }
  return result;
}

}  // namespace dgbdt
