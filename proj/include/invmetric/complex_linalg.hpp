#pragma once

#include <Eigen/Dense>
#include <cmath>
#include <complex>
#include <stdexcept>
#include <utility>

#include "invmetric/rng.hpp"

namespace invmetric {

using Complex = std::complex<double>;
using CVector = Eigen::VectorXcd;
using CMatrix = Eigen::MatrixXcd;

/// <z,w> = sum_k z_k * conj(w_k): conjugate-linear in the second slot.
inline Complex hermitian_inner(const CVector& z, const CVector& w) {
  if (z.size() != w.size())
    throw std::invalid_argument("hermitian_inner: dimension mismatch");
  return w.dot(z);  // Eigen's dot conjugates its *first* argument
}

inline CVector cvector1(Complex z) {
  CVector v(1);
  v(0) = z;
  return v;
}

/// Orthogonal split of a vector against the complex line through p.
/// alpha is the angle between u and [p], in [0, pi/2].
struct AngleDecomposition {
  CVector parallel;
  CVector orthogonal;
  double alpha;
};

inline AngleDecomposition decompose_along(const CVector& u, const CVector& p) {
  if (u.size() != p.size())
    throw std::invalid_argument("decompose_along: dimension mismatch");
  if (p.norm() == 0.0)
    throw std::invalid_argument("decompose_along: undefined complex line");
  AngleDecomposition d;
  const Complex coeff = hermitian_inner(u, p) / hermitian_inner(p, p);
  d.parallel = coeff * p;
  d.orthogonal = u - d.parallel;
  d.alpha = std::atan2(d.orthogonal.norm(), d.parallel.norm());
  return d;
}

/// Largest singular value of J together with a maximizing input direction.
/// Power iteration on J*J; relative tolerance 1e-10, at most 10000 rounds.
inline std::pair<double, CVector> operator_norm_with_direction(const CMatrix& J) {
  if (!J.allFinite())
    throw std::invalid_argument("operator_norm: non-finite entries");
  const Eigen::Index n = J.cols();
  if (n == 0 || J.rows() == 0) return {0.0, CVector::Zero(n)};
  const CMatrix A = J.adjoint() * J;
  if (A.norm() == 0.0) {
    CVector e = CVector::Zero(n);
    e(0) = 1.0;
    return {0.0, e};
  }
  // Deterministic start; mildly random so it is not orthogonal to the
  // top eigenspace for any fixed test matrix.
  SampleRng rng(0xA11CE5ULL, static_cast<std::uint64_t>(n));
  CVector v(n);
  for (Eigen::Index i = 0; i < n; ++i) v(i) = Complex(1.0 + 0.25 * rng.normal(), 0.125 * rng.normal());
  v.normalize();
  double prev = 0.0;
  for (int it = 0; it < 10000; ++it) {
    CVector w = A * v;
    const double nw = w.norm();
    if (nw == 0.0) break;  // v in the kernel: restart from a basis vector
    v = w / nw;
    const double sigma2 = std::real(hermitian_inner(A * v, v));
    const double sigma = std::sqrt(std::max(0.0, sigma2));
    if (std::abs(sigma - prev) <= 1e-10 * std::max(1.0, sigma)) return {sigma, v};
    prev = sigma;
  }
  return {prev, v};
}

inline double operator_norm(const CMatrix& J) {
  return operator_norm_with_direction(J).first;
}

/// Central-difference complex Jacobian of a holomorphic map, entrywise
/// (f(a + h e_k) - f(a - h e_k)) / (2h). The callable must throw when
/// evaluated outside its domain; that error propagates.
template <class F>
CMatrix fd_jacobian(F&& f, const CVector& a, double h = 0.0) {
  if (h <= 0.0) h = 1e-6 * std::max(1.0, a.norm());
  const CVector f0 = f(a);
  CMatrix J(f0.size(), a.size());
  for (Eigen::Index k = 0; k < a.size(); ++k) {
    CVector ap = a, am = a;
    ap(k) += h;
    am(k) -= h;
    J.col(k) = (f(ap) - f(am)) / (2.0 * h);
  }
  return J;
}

}  // namespace invmetric
