#pragma once

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>
#include <string>
#include <vector>

#include <json.hpp>

#include "invmetric/complex_linalg.hpp"

namespace invmetric {

using json = nlohmann::json;

/// Model planar domain: unit disk, right half-plane {Re z > 0},
/// vertical strip {a < Re z < b} (b may be +infinity), punctured disk.
struct PlanarDomain {
  enum class Kind { Disk, HalfPlane, Strip, PuncturedDisk };

  Kind kind = Kind::Disk;
  double a = 0.0;  // strip bounds; unused otherwise
  double b = 0.0;

  static PlanarDomain disk() { return {Kind::Disk, 0.0, 0.0}; }
  static PlanarDomain halfplane() { return {Kind::HalfPlane, 0.0, 0.0}; }
  static PlanarDomain strip(double a, double b) {
    if (!(a < b)) throw std::invalid_argument("strip: requires a < b");
    if (std::isinf(a)) throw std::invalid_argument("strip: a must be finite");
    return {Kind::Strip, a, b};
  }
  static PlanarDomain strip0() { return strip(-1.0, 1.0); }
  static PlanarDomain punctured() { return {Kind::PuncturedDisk, 0.0, 0.0}; }

  bool simply_connected() const { return kind != Kind::PuncturedDisk; }

  /// Distance to the boundary (+inf direction of a half-infinite strip and
  /// the half-plane counts only the finite walls).
  double boundary_margin(Complex z) const {
    switch (kind) {
      case Kind::Disk:
        return 1.0 - std::abs(z);
      case Kind::HalfPlane:
        return z.real();
      case Kind::Strip:
        if (std::isinf(b)) return z.real() - a;
        return std::min(z.real() - a, b - z.real());
      case Kind::PuncturedDisk:
        return std::min(std::abs(z), 1.0 - std::abs(z));
    }
    return 0.0;
  }

  bool contains(Complex z, double margin = 0.0) const {
    return boundary_margin(z) > margin;
  }

  bool operator==(const PlanarDomain& o) const {
    return kind == o.kind && a == o.a && b == o.b;
  }

  std::string name() const {
    switch (kind) {
      case Kind::Disk: return "disk";
      case Kind::HalfPlane: return "halfplane";
      case Kind::Strip: {
        auto fmt = [](double x) {
          if (std::isinf(x)) return std::string("inf");
          char buf[64];
          std::snprintf(buf, sizeof buf, "%g", x);
          return std::string(buf);
        };
        return "strip:" + fmt(a) + ":" + fmt(b);
      }
      case Kind::PuncturedDisk: return "punctured";
    }
    return "?";
  }
};

inline void to_json(json& j, const PlanarDomain& d) {
  switch (d.kind) {
    case PlanarDomain::Kind::Disk: j = json{{"kind", "disk"}}; break;
    case PlanarDomain::Kind::HalfPlane: j = json{{"kind", "halfplane"}}; break;
    case PlanarDomain::Kind::Strip:
      j = json{{"kind", "strip"}, {"a", d.a}};
      if (std::isinf(d.b)) j["b"] = "inf"; else j["b"] = d.b;
      break;
    case PlanarDomain::Kind::PuncturedDisk: j = json{{"kind", "punctured"}}; break;
  }
}

inline void from_json(const json& j, PlanarDomain& d) {
  const std::string k = j.at("kind").get<std::string>();
  if (k == "disk") d = PlanarDomain::disk();
  else if (k == "halfplane") d = PlanarDomain::halfplane();
  else if (k == "punctured") d = PlanarDomain::punctured();
  else if (k == "strip") {
    const double a = j.at("a").get<double>();
    double b = std::numeric_limits<double>::infinity();
    if (!j.at("b").is_string()) b = j.at("b").get<double>();
    d = PlanarDomain::strip(a, b);
  } else {
    throw std::invalid_argument("unknown planar domain kind: " + k);
  }
}

/// Source/target descriptor for maps: a planar model domain, the unit
/// ball B_n, the polydisk U^n, a product of two planar domains, or all
/// of C^n (used for scalar maps with unconstrained range).
struct DomainDesc {
  enum class Kind { Planar, Ball, Polydisk, ProductPlanar, Full };

  Kind kind = Kind::Planar;
  PlanarDomain planar;            // Kind::Planar
  int n = 1;                      // complex dimension
  PlanarDomain factor1, factor2;  // Kind::ProductPlanar

  static DomainDesc planar_dom(const PlanarDomain& d) {
    DomainDesc x;
    x.kind = Kind::Planar;
    x.planar = d;
    x.n = 1;
    return x;
  }
  static DomainDesc disk() { return planar_dom(PlanarDomain::disk()); }
  static DomainDesc ball(int n) {
    DomainDesc x;
    x.kind = Kind::Ball;
    x.n = n;
    return x;
  }
  static DomainDesc polydisk(int n) {
    DomainDesc x;
    x.kind = Kind::Polydisk;
    x.n = n;
    return x;
  }
  static DomainDesc product(const PlanarDomain& d, const PlanarDomain& g) {
    DomainDesc x;
    x.kind = Kind::ProductPlanar;
    x.factor1 = d;
    x.factor2 = g;
    x.n = 2;
    return x;
  }
  static DomainDesc full(int n) {
    DomainDesc x;
    x.kind = Kind::Full;
    x.n = n;
    return x;
  }

  int dim() const { return n; }

  double boundary_margin(const CVector& z) const {
    switch (kind) {
      case Kind::Planar:
        return planar.boundary_margin(z(0));
      case Kind::Ball:
        return 1.0 - z.norm();
      case Kind::Polydisk: {
        double m = std::numeric_limits<double>::infinity();
        for (Eigen::Index i = 0; i < z.size(); ++i)
          m = std::min(m, 1.0 - std::abs(z(i)));
        return m;
      }
      case Kind::ProductPlanar:
        return std::min(factor1.boundary_margin(z(0)),
                        factor2.boundary_margin(z(1)));
      case Kind::Full:
        return std::numeric_limits<double>::infinity();
    }
    return 0.0;
  }

  bool contains(const CVector& z, double margin = 0.0) const {
    if (z.size() != n) return false;
    return boundary_margin(z) > margin;
  }

  bool operator==(const DomainDesc& o) const {
    return kind == o.kind && n == o.n &&
           (kind != Kind::Planar || planar == o.planar) &&
           (kind != Kind::ProductPlanar ||
            (factor1 == o.factor1 && factor2 == o.factor2));
  }
};

inline void to_json(json& j, const DomainDesc& d) {
  switch (d.kind) {
    case DomainDesc::Kind::Planar:
      j = json{{"space", "planar"}, {"domain", d.planar}};
      break;
    case DomainDesc::Kind::Ball:
      j = json{{"space", "ball"}, {"n", d.n}};
      break;
    case DomainDesc::Kind::Polydisk:
      j = json{{"space", "polydisk"}, {"n", d.n}};
      break;
    case DomainDesc::Kind::ProductPlanar:
      j = json{{"space", "product"}, {"factor1", d.factor1}, {"factor2", d.factor2}};
      break;
    case DomainDesc::Kind::Full:
      j = json{{"space", "full"}, {"n", d.n}};
      break;
  }
}

inline void from_json(const json& j, DomainDesc& d) {
  const std::string s = j.at("space").get<std::string>();
  if (s == "planar") d = DomainDesc::planar_dom(j.at("domain").get<PlanarDomain>());
  else if (s == "ball") d = DomainDesc::ball(j.at("n").get<int>());
  else if (s == "polydisk") d = DomainDesc::polydisk(j.at("n").get<int>());
  else if (s == "product")
    d = DomainDesc::product(j.at("factor1").get<PlanarDomain>(),
                            j.at("factor2").get<PlanarDomain>());
  else if (s == "full") d = DomainDesc::full(j.at("n").get<int>());
  else throw std::invalid_argument("unknown space: " + s);
}

}  // namespace invmetric
