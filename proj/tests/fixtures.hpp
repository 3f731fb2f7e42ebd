#pragma once

#include "dgbdt/triples.hpp"

namespace fixtures {

using dgbdt::Complex;
using dgbdt::Matrix;

inline dgbdt::ParameterTriple scalar(dgbdt::SystemKind kind, Complex a, double s0, Complex th1,
                                     Complex th2) {
  dgbdt::ParameterTriple t;
  t.kind = kind;
  t.sig = {1, 1};
  t.a = Matrix::Constant(1, 1, a);
  t.s0 = Matrix::Constant(1, 1, s0);
  t.pi0 = Matrix(1, 2);
  t.pi0 << th1, th2;
  return t;
}

// A = 2i, S₀ = 3/4, Π₀ = [2, 1].
inline dgbdt::ParameterTriple t1() {
  return scalar(dgbdt::SystemKind::SelfAdjoint, Complex(0, 2), 0.75, 2.0, 1.0);
}

// A = 2i, S₀ = 5/4, Π₀ = [2, 1].
inline dgbdt::ParameterTriple t2() {
  return scalar(dgbdt::SystemKind::SkewSelfAdjoint, Complex(0, 2), 1.25, 2.0, 1.0);
}

// ϑ₂ = 0: everything reflection-related vanishes.
inline dgbdt::ParameterTriple zero_theta2(dgbdt::SystemKind kind) {
  return scalar(kind, Complex(0, 2), 1.0, 2.0, 0.0);
}

// Hermitian A with Π₀ = 0: admissible, potential identically I.
inline dgbdt::ParameterTriple trivial_potential() {
  dgbdt::ParameterTriple t;
  t.kind = dgbdt::SystemKind::SelfAdjoint;
  t.sig = {1, 1};
  t.a = Matrix::Zero(2, 2);
  t.a.diagonal() << 2.0, -3.0;
  t.s0 = dgbdt::identity(2);
  t.pi0 = Matrix::Zero(2, 2);
  return t;
}

}  // namespace fixtures
