#include <gtest/gtest.h>

#include <cmath>

#include "dgbdt/transfer.hpp"
#include "fixtures.hpp"

using namespace dgbdt;

namespace {

double rel(const Matrix& a, const Matrix& b) { return norm2(a - b) / std::max(1e-300, norm2(b)); }

Matrix column_target(const Signature& sig) {
  Matrix e = Matrix::Zero(sig.m(), sig.m2);
  e.bottomRows(sig.m2) = identity(sig.m2);
  return e;
}

}  // namespace

TEST(Transfer, BlockSplitRoundTrip) {
  const Signature sig{2, 3};
  const Matrix w = Matrix::Random(5, 5);
  const auto blocks = BlockDecomposition::split(w, sig);
  EXPECT_EQ(blocks.b.rows(), 2);
  EXPECT_EQ(blocks.b.cols(), 3);
  EXPECT_EQ(blocks.assemble(), w);
}

TEST(Transfer, T1AtMinusOneMatchesHandFormula) {
  const auto t = fixtures::t1();
  const auto seq = build_sequence(t, 5);
  const Matrix w = transfer_eval(seq, 0, -1.0);
  // S₀⁻¹ = 4/3, (A + I)⁻¹ = (2i + 1)⁻¹.
  const Matrix expected = identity(2) - kI * t.sig.j() * t.pi0.adjoint() * (4.0 / 3.0) /
                                            Complex(1, 2) * t.pi0;
  EXPECT_LT(rel(w, expected), 1e-14);
  EXPECT_LT(rel(transfer_block_rep(seq, 0, 1.0), w), 1e-12);
}

TEST(Transfer, DecaysToIdentityAtInfinity) {
  const auto seq = build_sequence(generate(SystemKind::SelfAdjoint, 3, {1, 2}, 4), 5);
  EXPECT_LT(norm2(transfer_eval(seq, 3, Complex(1e8, 0)) - identity(3)), 1e-6);
}

TEST(Transfer, T2DBlockAtMinusOne) {
  const auto seq = build_sequence(fixtures::t2(), 2);
  const auto blocks = BlockDecomposition::split(transfer_eval(seq, 0, -1.0), seq.source().sig);
  const Complex expected = 1.0 - kI * 0.8 / Complex(1, 2);
  EXPECT_NEAR(std::abs(blocks.d(0, 0) - expected), 0.0, 1e-14);
}

TEST(Transfer, PoleIsRejected) {
  const auto seq = build_sequence(fixtures::t1(), 2);
  EXPECT_THROW(transfer_eval(seq, 1, Complex(0, 2)), PoleError);
  EXPECT_THROW(transfer_at(seq, 1, Complex(0, 0.5)), PoleError);  // −1/z = 2i
  EXPECT_THROW(transfer_eval(seq, 9, 1.0), DimensionError);
}

TEST(Transfer, OffDiagonalBlocksDecayLikeGPower) {
  const auto seq = build_sequence(fixtures::t1(), 12);
  const Matrix w = transfer_block_rep(seq, 10, 0.5);
  const auto blocks = BlockDecomposition::split(w, seq.source().sig);
  EXPECT_LE(std::abs(blocks.b(0, 0)) / norm2(w), 1e-4);
  EXPECT_LE(std::abs(blocks.c(0, 0)) / norm2(w), 1e-4);
}

TEST(Transfer, BlockRepresentationAgreesWithEvaluation) {
  const std::vector<Complex> grid{{0.5, 0}, {-2, 0}, {1, 1}, {-0.4, -0.7}, {3, 0.2}};
  for (const auto kind : {SystemKind::SelfAdjoint, SystemKind::SkewSelfAdjoint}) {
    for (std::uint64_t seed = 1; seed <= 4; ++seed) {
      const auto t = generate(kind, 2 + int(seed), {2, 1}, seed);
      const auto seq = build_sequence(t, 30);
      for (int k = 0; k <= 30; k += 3) {
        for (const Complex z : grid) {
          Matrix reference = transfer_at(seq, k, z);
          if (kind == SystemKind::SkewSelfAdjoint) reference = reference.rightCols(t.sig.m2).eval();
          EXPECT_LT(rel(transfer_block_rep(seq, k, z), reference), 1e-10);
        }
      }
    }
  }
}

TEST(Transfer, SkewColumnFlattens) {
  const auto seq = build_sequence(fixtures::t2(), 60);
  const Matrix col = transfer_block_rep(seq, 60, Complex(1.5, 0.5));
  EXPECT_LT(norm2(col - column_target(seq.source().sig)), 1e-10);
}

TEST(Transfer, FundamentalNormalization) {
  const auto seq = build_sequence(fixtures::t1(), 5);
  EXPECT_EQ(fundamental_direct(seq, 0, 0.7), identity(2));
  EXPECT_LT(norm2(fundamental_closed(seq, 0, 0.7) - identity(2)), 1e-14);
}

TEST(Transfer, TrivialPotentialGivesFreeSolution) {
  const auto t = fixtures::trivial_potential();
  const auto seq = build_sequence(t, 6);
  const Complex z(0.3, -0.2);
  EXPECT_LT(rel(fundamental_direct(seq, 6, z), free_power(t.kind, t.sig, z, 6)), 1e-14);
  EXPECT_LT(rel(fundamental_closed(seq, 6, z), free_power(t.kind, t.sig, z, 6)), 1e-14);
}

TEST(Transfer, FixtureFundamentalRoutesAgree) {
  const auto s1 = build_sequence(fixtures::t1(), 10);
  EXPECT_LT(rel(fundamental_closed(s1, 3, Complex(0.7, 0.1)), fundamental_direct(s1, 3, Complex(0.7, 0.1))), 1e-10);
  EXPECT_LT(rel(fundamental_closed(s1, 5, 1.0), fundamental_direct(s1, 5, 1.0)), 1e-10);
  const auto s2 = build_sequence(fixtures::t2(), 10);
  EXPECT_LT(rel(fundamental_closed(s2, 5, Complex(2, 3)), fundamental_direct(s2, 5, Complex(2, 3))), 1e-10);
}

TEST(Transfer, FundamentalRoutesAgreeOnRandomTriples) {
  const std::vector<Complex> grid{{0.3, 0}, {-1, 0}, {2.5, 0}, {0.5, 0.5}, {-1, -0.25}, {2, 1}};
  for (const auto kind : {SystemKind::SelfAdjoint, SystemKind::SkewSelfAdjoint}) {
    for (std::uint64_t seed = 1; seed <= 4; ++seed) {
      const auto t = generate(kind, 1 + int(seed) + 1, {1 + int(seed % 3), 2}, 100 + seed);
      const auto seq = build_sequence(t, 30);
      for (const Complex z : grid) {
        Matrix direct = identity(t.sig.m());
        for (int k = 0; k <= 30; ++k) {
          EXPECT_LT(rel(fundamental_closed(seq, k, z), direct), 1e-9);
          direct = one_step(seq, k, z) * direct;
        }
      }
    }
  }
}

TEST(Transfer, SkewRejectsZeroArgument) {
  const auto seq = build_sequence(fixtures::t2(), 3);
  EXPECT_THROW(fundamental_direct(seq, 2, 0.0), SingularError);
  EXPECT_THROW(one_step(seq, 0, 0.0), SingularError);
  EXPECT_THROW(y_closed(seq, 1, 0.0), SingularError);
}

TEST(Transfer, JUnitarityOnRealAxis) {
  const auto t = generate(SystemKind::SelfAdjoint, 5, {2, 2}, 8);
  const auto seq = build_sequence(t, 20);
  const Matrix j = t.sig.j();
  for (int k = 0; k <= 20; ++k) {
    for (const double lambda : {-3.0, -0.5, 0.1, 2.0}) {
      const Matrix w = transfer_eval(seq, k, lambda);
      EXPECT_LT(norm2(w.adjoint() * j * w - j), 1e-9);
    }
  }
}

TEST(Transfer, ChiFunctions) {
  const auto t = fixtures::t1();
  const LimitPair lim = limits(t, 1e-12, 80);
  const ChiPair at_zero = chi_functions(t, lim, 0.0);
  EXPECT_EQ(at_zero.chi1, identity(1));
  EXPECT_EQ(at_zero.chi2, identity(1));
  const auto seq = build_sequence(t, 40);
  const auto blocks = BlockDecomposition::split(transfer_block_rep(seq, 40, 1.0), t.sig);
  const ChiPair chi = chi_functions(t, lim, 1.0);
  EXPECT_LT(norm2(blocks.a - chi.chi1), 1e-8);
  EXPECT_LT(norm2(blocks.d - chi.chi2), 1e-8);

  const auto flat = fixtures::zero_theta2(SystemKind::SelfAdjoint);
  const ChiPair chi_flat = chi_functions(flat, limits(flat, 1e-10, 60), Complex(0.4, -0.3));
  EXPECT_LT(norm2(chi_flat.chi2 - identity(1)), 1e-15);
}

TEST(Transfer, JostSolution) {
  const auto t = fixtures::t1();
  const auto seq = build_sequence(t, 40);
  const LimitPair lim = limits(t, 1e-12, 80);
  const Matrix f30 = jost_closed(seq, lim, 30, 1.0);
  const Matrix normalized = f30 * free_power(t.kind, t.sig, 1.0, 30).inverse();
  EXPECT_LT(norm2(normalized - identity(2)), 1e-6);
  for (int k = 0; k < 20; ++k) {
    const Matrix next = one_step(seq, k, 1.0) * jost_closed(seq, lim, k, 1.0);
    EXPECT_LT(rel(jost_closed(seq, lim, k + 1, 1.0), next), 1e-10);
  }
}

TEST(Transfer, JostResidualDecaysAtGRate) {
  const auto t = fixtures::t1();
  const auto seq = build_sequence(t, 40);
  const LimitPair lim = limits(t, 1e-13, 100);
  std::vector<double> residuals;
  for (int k = 5; k <= 25; ++k) {
    const Matrix f = jost_closed(seq, lim, k, 0.5);
    residuals.push_back(norm2(f * free_power(t.kind, t.sig, 0.5, k).inverse() - identity(2)));
  }
  const double rate = fit_geometric_rate(residuals);
  const double rho = spectral_radius(seq.g());
  EXPECT_GT(rate, rho / 2);
  EXPECT_LT(rate, rho * 2);
}

TEST(Transfer, TrivialPotentialJostIsFree) {
  const auto t = fixtures::trivial_potential();
  const auto seq = build_sequence(t, 10);
  LimitPair lim;
  lim.kappa_r = identity(2);
  lim.kappa_q = identity(2);
  const Matrix f = jost_closed(seq, lim, 7, 0.8);
  EXPECT_LT(rel(f, free_power(t.kind, t.sig, 0.8, 7)), 1e-14);
}

TEST(Transfer, SkewSolutionY) {
  const auto t = fixtures::t2();
  const auto seq = build_sequence(t, 40);
  const Complex z(0, 3);
  const Matrix next = one_step(seq, 2, z) * y_closed(seq, 2, z);
  EXPECT_LT(rel(y_closed(seq, 3, z), next), 1e-10);
  const Matrix y = y_closed(seq, 40, 2.0) / std::pow(1.0 - kI / 2.0, 40);
  EXPECT_LT(norm2(y - column_target(t.sig)), 1e-6);

  const auto flat = fixtures::zero_theta2(SystemKind::SkewSelfAdjoint);
  const auto flat_seq = build_sequence(flat, 5);
  const Matrix y_flat = y_closed(flat_seq, 4, z);
  EXPECT_LT(norm2(y_flat - std::pow(1.0 - kI / z, 4) * column_target(flat.sig)), 1e-13);
}

TEST(Transfer, GeometricRateFit) {
  std::vector<double> values;
  for (int k = 0; k < 10; ++k) values.push_back(3.0 * std::pow(0.4, k));
  EXPECT_NEAR(fit_geometric_rate(values), 0.4, 1e-12);
}
