#pragma once

#include <cmath>
#include <stdexcept>

#include "invmetric/holomap.hpp"
#include "invmetric/planar.hpp"

namespace invmetric {

/// Point of the unit ball B_n with its cached s = sqrt(1 - |p|^2).
struct BallPoint {
  CVector p;
  double s;

  explicit BallPoint(CVector point) : p(std::move(point)) {
    const double n2 = p.squaredNorm();
    if (n2 >= 1.0) throw std::domain_error("BallPoint: |p| >= 1");
    s = std::sqrt(1.0 - n2);
  }
};

/// phi_a(z) = (a - P z - s_a Q z) / (1 - <z,a>); phi_0 = -identity.
/// Involutive automorphism of B_n swapping 0 and a.
inline CVector mobius_apply(const BallPoint& a, const CVector& z) {
  if (z.size() != a.p.size())
    throw std::invalid_argument("mobius_apply: dimension mismatch");
  if (z.norm() >= 1.0) throw std::domain_error("mobius_apply: |z| >= 1");
  const double aa = a.p.squaredNorm();
  if (aa == 0.0) return -z;
  const CVector Pz = (hermitian_inner(z, a.p) / aa) * a.p;
  const CVector Qz = z - Pz;
  const Complex den = 1.0 - hermitian_inner(z, a.p);
  return (a.p - Pz - a.s * Qz) / den;
}

/// Exact Jacobian of phi_a at z (quotient rule on the closed form).
inline CMatrix mobius_derivative(const BallPoint& a, const CVector& z) {
  if (z.size() != a.p.size())
    throw std::invalid_argument("mobius_derivative: dimension mismatch");
  if (z.norm() >= 1.0) throw std::domain_error("mobius_derivative: |z| >= 1");
  const Eigen::Index n = a.p.size();
  const double aa = a.p.squaredNorm();
  if (aa == 0.0) return -CMatrix::Identity(n, n);
  const CMatrix P = (a.p * a.p.adjoint()) / aa;
  const CMatrix L = a.s * CMatrix::Identity(n, n) + (1.0 - a.s) * P;
  const CVector N = a.p - L * z;
  const Complex den = 1.0 - hermitian_inner(z, a.p);
  return (-den * L + N * a.p.adjoint()) / (den * den);
}

inline HoloMap mobius_ball_map(const CVector& a) { return HoloMap::mobius_ball(a); }

/// Euclidean stretch of d(phi_p) at p in direction u:
///   M(p,u) = sqrt(cos^2(alpha)/s^4 + sin^2(alpha)/s^2),
/// alpha the angle between u and the complex line through p.
/// Satisfies 1/s <= M <= 1/s^2; M(0,u) = 1.
inline double distortion_M(const BallPoint& p, const CVector& u) {
  if (u.norm() == 0.0) throw std::invalid_argument("distortion_M: zero tangent");
  if (p.p.norm() == 0.0) return 1.0;
  const auto d = decompose_along(u, p.p);
  const double u2 = u.squaredNorm();
  const double cos2 = d.parallel.squaredNorm() / u2;
  const double sin2 = d.orthogonal.squaredNorm() / u2;
  const double s2 = p.s * p.s;
  return std::sqrt(cos2 / (s2 * s2) + sin2 / s2);
}

/// (base point, direction, norm value, normalization) record for a
/// Finsler-norm evaluation. Values are always Kobayashi-normalized.
struct FinslerValue {
  CVector base;
  CVector dir;
  double value;
  MetricNorm normalization = MetricNorm::Kob;
};

/// Kob(p,u) = M(p,u) |u|_e on the unit ball.
inline FinslerValue kob_norm_ball(const BallPoint& p, const CVector& u) {
  FinslerValue f{p.p, u, 0.0, MetricNorm::Kob};
  const double nu = u.norm();
  if (nu == 0.0) return f;
  f.value = distortion_M(p, u) * nu;
  return f;
}

/// Kobayashi distance on B_n. The closed form artanh|phi_a(b)| is adopted
/// here and certified against the path oracle; Hyp doubles it.
inline double kob_dist_ball(const BallPoint& a, const BallPoint& b, MetricNorm norm) {
  const double d = mobius_apply(a, b.p).norm();
  return norm == MetricNorm::Kob ? std::atanh(d) : std::log((1.0 + d) / (1.0 - d));
}

/// Df(z): the vector of holomorphic partials of a scalar map.
inline CVector gradient_D(const HoloMap& f, const CVector& z) {
  if (f.out_dim() != 1)
    throw std::invalid_argument("gradient_D: map must be scalar-valued");
  return f.deriv(z).row(0).transpose();
}

/// Invariant gradient: D(f . phi_z)(0) = Df(z) * d(phi_z)_0, by the exact
/// chain rule (never by nested finite differences).
inline CVector invariant_gradient(const HoloMap& f, const CVector& z) {
  if (f.out_dim() != 1)
    throw std::invalid_argument("invariant_gradient: map must be scalar-valued");
  const BallPoint bp(z);
  const CMatrix J0 = mobius_derivative(bp, CVector::Zero(z.size()));
  return (f.deriv(z).row(0) * J0).transpose();
}

}  // namespace invmetric
