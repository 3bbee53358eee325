#pragma once

#include <cmath>
#include <stdexcept>

#include "invmetric/holomap.hpp"

namespace invmetric {

/// Every density and distance carries an explicit normalization tag.
/// Hyp is the curvature -1 density (2/(1-|z|^2) on the disk); Kob is
/// half of it, the normalization in which the extremal holomorphic disk
/// has unit speed at the origin. Nothing in this library returns an
/// untagged metric quantity.
enum class MetricNorm { Hyp, Kob };

struct DensityValue {
  Complex at;
  double hyp;
  double kob;  // always hyp / 2
};

namespace detail {
inline void require_inside(const PlanarDomain& dom, Complex z, const char* who) {
  if (!dom.contains(z))
    throw std::domain_error(std::string(who) + ": point outside domain " + dom.name());
}
}  // namespace detail

/// Conformal chart of a simply connected model domain onto the unit disk,
/// as a HoloMap with exact derivative.
inline HoloMap chart_to_disk(const PlanarDomain& dom) {
  const auto src = DomainDesc::planar_dom(dom);
  switch (dom.kind) {
    case PlanarDomain::Kind::Disk:
      return HoloMap::identity(DomainDesc::disk());
    case PlanarDomain::Kind::HalfPlane:
      return HoloMap::halfplane_to_disk(Complex(1.0, 0.0));
    case PlanarDomain::Kind::Strip: {
      if (std::isinf(dom.b)) {
        // translate onto the right half-plane, then Cayley
        const auto hp = DomainDesc::planar_dom(PlanarDomain::halfplane());
        const HoloMap shift = HoloMap::affine(1.0, Complex(-dom.a, 0.0), src, hp);
        return compose(HoloMap::halfplane_to_disk(Complex(1.0, 0.0)), shift);
      }
      // affine onto S_0, then w -> tan(pi w / 4)
      const double c1 = (M_PI / 2.0) / (dom.b - dom.a);
      const double c0 = -(M_PI / 4.0) * (dom.a + dom.b) / (dom.b - dom.a);
      const auto s1 = DomainDesc::planar_dom(PlanarDomain::strip(-M_PI / 4.0, M_PI / 4.0));
      const HoloMap aff = HoloMap::affine(Complex(c1, 0.0), Complex(c0, 0.0), src, s1);
      return compose(HoloMap::tan_block(s1, DomainDesc::disk()), aff);
    }
    case PlanarDomain::Kind::PuncturedDisk:
      throw std::invalid_argument("chart_to_disk: punctured disk is not simply connected");
  }
  throw std::logic_error("unreachable");
}

/// Inverse chart: disk onto the domain (simply connected only).
inline HoloMap chart_from_disk(const PlanarDomain& dom) {
  const auto dst = DomainDesc::planar_dom(dom);
  switch (dom.kind) {
    case PlanarDomain::Kind::Disk:
      return HoloMap::identity(DomainDesc::disk());
    case PlanarDomain::Kind::HalfPlane:
      return HoloMap::cayley();
    case PlanarDomain::Kind::Strip: {
      if (std::isinf(dom.b)) {
        const HoloMap back = HoloMap::affine(1.0, Complex(dom.a, 0.0),
                                             DomainDesc::planar_dom(PlanarDomain::halfplane()), dst);
        return compose(back, HoloMap::cayley());
      }
      // (4/pi) atan onto S_0, then affine onto S(a,b)
      const Complex c1((dom.b - dom.a) / 2.0, 0.0);
      const Complex c0((dom.a + dom.b) / 2.0, 0.0);
      const HoloMap aff = HoloMap::affine(c1, c0,
                                          DomainDesc::planar_dom(PlanarDomain::strip0()), dst);
      return compose(aff, HoloMap::atan_chart());
    }
    case PlanarDomain::Kind::PuncturedDisk:
      throw std::invalid_argument("chart_from_disk: punctured disk is not simply connected");
  }
  throw std::logic_error("unreachable");
}

inline DensityValue density(const PlanarDomain& dom, Complex z) {
  detail::require_inside(dom, z, "density");
  double hyp = 0.0;
  switch (dom.kind) {
    case PlanarDomain::Kind::Disk:
      hyp = 2.0 / (1.0 - std::norm(z));
      break;
    case PlanarDomain::Kind::HalfPlane:
      hyp = 1.0 / z.real();
      break;
    case PlanarDomain::Kind::Strip: {
      if (std::isinf(dom.b)) {
        hyp = 1.0 / (z.real() - dom.a);  // translate of Hyp_Pi
      } else {
        // conformal transport from S_0 through the affine chart
        const double u = (2.0 * z.real() - dom.a - dom.b) / (dom.b - dom.a);
        const double scale = 2.0 / (dom.b - dom.a);
        hyp = scale * (M_PI / 2.0) / std::cos(M_PI * u / 2.0);
      }
      break;
    }
    case PlanarDomain::Kind::PuncturedDisk: {
      const double r = std::abs(z);
      hyp = -1.0 / (r * std::log(r));
      break;
    }
  }
  return DensityValue{z, hyp, hyp / 2.0};
}

inline double density_value(const PlanarDomain& dom, Complex z, MetricNorm norm) {
  const DensityValue d = density(dom, z);
  return norm == MetricNorm::Hyp ? d.hyp : d.kob;
}

/// delta(z1,z2) = |T_{z1}(z2)| on the disk; transported by conformal
/// charts elsewhere. In [0,1); zero iff the points coincide.
inline double pseudo_hyperbolic(const PlanarDomain& dom, Complex z1, Complex z2) {
  if (!dom.simply_connected())
    throw std::invalid_argument("pseudo_hyperbolic: domain not simply connected");
  detail::require_inside(dom, z1, "pseudo_hyperbolic");
  detail::require_inside(dom, z2, "pseudo_hyperbolic");
  switch (dom.kind) {
    case PlanarDomain::Kind::Disk:
      return std::abs((z2 - z1) / (1.0 - std::conj(z1) * z2));
    case PlanarDomain::Kind::HalfPlane:
      return std::abs((z2 - z1) / (z2 + std::conj(z1)));
    case PlanarDomain::Kind::Strip: {
      const HoloMap chart = chart_to_disk(dom);
      return pseudo_hyperbolic(PlanarDomain::disk(), chart.eval1(z1), chart.eval1(z2));
    }
    default:
      throw std::logic_error("unreachable");
  }
}

/// Hyp normalization: ln((1+delta)/(1-delta)); Kob normalization: artanh(delta).
inline double hyp_distance(const PlanarDomain& dom, Complex z1, Complex z2,
                           MetricNorm norm) {
  const double d = pseudo_hyperbolic(dom, z1, z2);
  return norm == MetricNorm::Hyp ? std::log((1.0 + d) / (1.0 - d)) : std::atanh(d);
}

/// Ahlfors-Schwarz slack at z for holomorphic F: Disk -> G:
///   2 (1-|z|^2)^{-1} - Hyp_G(F z) |F'(z)|.
/// Nonnegative for every holomorphic F; zero exactly for conformal charts.
inline double ahlfors_schwarz_slack(const HoloMap& F, Complex z) {
  if (F.domain().kind != DomainDesc::Kind::Planar ||
      F.domain().planar.kind != PlanarDomain::Kind::Disk)
    throw std::invalid_argument("ahlfors_schwarz_slack: F must be defined on the disk");
  if (F.codomain().kind != DomainDesc::Kind::Planar)
    throw std::invalid_argument("ahlfors_schwarz_slack: F must map into a planar domain");
  const Complex w = F.eval1(z);
  const PlanarDomain& G = F.codomain().planar;
  detail::require_inside(G, w, "ahlfors_schwarz_slack");
  const double lhs = density(G, w).hyp * std::abs(F.deriv1(z));
  return 2.0 / (1.0 - std::norm(z)) - lhs;
}

}  // namespace invmetric
