#pragma once

#include <cmath>
#include <stdexcept>

#include "invmetric/holomap.hpp"

namespace invmetric {

/// Harmonic (or pluriharmonic) map derived from an analytic one:
/// either Re F componentwise, or Re F + i a Im F (the g_a construction).
/// Gradients come from F's exact derivative, never from differencing.
struct HarmonicMap {
  enum class Part { RealPart, RealPlusScaledImag };

  HoloMap analytic;
  Part part = Part::RealPart;
  double imag_scale = 0.0;  // the a in Re F + i a Im F

  static HarmonicMap real_part(HoloMap F) {
    return HarmonicMap{std::move(F), Part::RealPart, 0.0};
  }
  static HarmonicMap real_plus_scaled_imag(HoloMap F, double a) {
    return HarmonicMap{std::move(F), Part::RealPlusScaledImag, a};
  }

  int in_dim() const { return analytic.in_dim(); }
  int out_dim() const { return analytic.out_dim(); }
  const DomainDesc& domain() const { return analytic.domain(); }

  CVector value(const CVector& z) const {
    CVector w = analytic.eval(z);
    for (Eigen::Index i = 0; i < w.size(); ++i) w(i) = combine(w(i));
    return w;
  }
  Complex value1(Complex z) const { return combine(analytic.eval1(z)); }
  double real_value1(Complex z) const { return analytic.eval1(z).real(); }

  /// Wirtinger pieces of a scalar map on a planar source:
  /// f = alpha F + beta conj(F) with alpha=(1+a)/2, beta=(1-a)/2.
  Complex d_holo1(Complex z) const { return alpha() * analytic.deriv1(z); }
  Complex d_anti1(Complex z) const { return beta() * std::conj(analytic.deriv1(z)); }

  /// Real differential applied to h in T_z C: df_z(h) = d_holo*h + d_anti*conj(h).
  Complex differential1(Complex z, Complex h) const {
    return d_holo1(z) * h + d_anti1(z) * std::conj(h);
  }

  /// Operator norm of the real differential. For Re F this is |F'| (or
  /// |DF| on B_n); for Re F + i a Im F it is max(1,|a|) |F'|, via the
  /// |d_holo| + |d_anti| formula for real-linear maps.
  double gradient_norm(const CVector& z) const {
    if (out_dim() != 1)
      throw std::invalid_argument("gradient_norm: scalar maps only");
    const double dF = analytic.deriv(z).row(0).norm();
    return (std::abs(alpha()) + std::abs(beta())) * dF;
  }
  double gradient_norm1(Complex z) const { return gradient_norm(cvector1(z)); }

 private:
  double alpha() const {
    return part == Part::RealPart ? 0.5 : (1.0 + imag_scale) / 2.0;
  }
  double beta() const {
    return part == Part::RealPart ? 0.5 : (1.0 - imag_scale) / 2.0;
  }
  Complex combine(Complex w) const {
    if (part == Part::RealPart) return Complex(w.real(), 0.0);
    return Complex(w.real(), imag_scale * w.imag());
  }
};

}  // namespace invmetric
