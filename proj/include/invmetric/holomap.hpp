#pragma once

#include <cmath>
#include <memory>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "invmetric/domains.hpp"

namespace invmetric {

namespace detail {

inline json complex_to_json(Complex z) { return json::array({z.real(), z.imag()}); }
inline Complex complex_from_json(const json& j) {
  return Complex(j.at(0).get<double>(), j.at(1).get<double>());
}
inline json cvector_to_json(const CVector& v) {
  json a = json::array();
  for (Eigen::Index i = 0; i < v.size(); ++i) a.push_back(complex_to_json(v(i)));
  return a;
}
inline CVector cvector_from_json(const json& j) {
  CVector v(j.size());
  for (std::size_t i = 0; i < j.size(); ++i) v(static_cast<Eigen::Index>(i)) = complex_from_json(j.at(i));
  return v;
}
inline json cmatrix_to_json(const CMatrix& m) {
  json rows = json::array();
  for (Eigen::Index r = 0; r < m.rows(); ++r) {
    json row = json::array();
    for (Eigen::Index c = 0; c < m.cols(); ++c) row.push_back(complex_to_json(m(r, c)));
    rows.push_back(row);
  }
  return rows;
}
inline CMatrix cmatrix_from_json(const json& j) {
  const Eigen::Index rows = static_cast<Eigen::Index>(j.size());
  const Eigen::Index cols = rows ? static_cast<Eigen::Index>(j.at(0).size()) : 0;
  CMatrix m(rows, cols);
  for (Eigen::Index r = 0; r < rows; ++r)
    for (Eigen::Index c = 0; c < cols; ++c) m(r, c) = complex_from_json(j.at(r).at(c));
  return m;
}

/// One node of a holomorphic expression tree. eval/jac are exact; the
/// chain rule is applied structurally at Compose nodes.
struct Expr {
  enum class Op {
    Identity,        // C^n -> C^n
    Constant,        // C^n -> C^m, value vec
    Affine,          // z -> ca*z + cb (scalar)
    Proj,            // z -> z_k
    Linear,          // z -> mat*z
    Blaschke,        // z -> (z-a)/(1-conj(a)z)
    MobiusDisk,      // z -> e^{i theta} * Blaschke_a(z)
    MobiusBall,      // phi_a on B_n; phi_0 = -identity
    Tan,             // scalar tan
    AtanChart,       // z -> (4/pi) atan z   (disk -> strip S_0)
    Exp,             // scalar exp
    Log,             // scalar principal log
    Pow,             // z -> z^k, integer k >= 0
    Cayley,          // z -> (1+z)/(1-z)     (disk -> right half-plane)
    HalfplaneToDisk, // w -> (w-w0)/(w+conj(w0))
    Tuple,           // stack children outputs, shared input
    InnerConst,      // z -> <z,c> = sum z_i conj(c_i)
    Product,         // scalar product of two children
    Compose          // children[0] after children[1]
  };

  Op op;
  Complex ca{0.0, 0.0};
  Complex cb{0.0, 0.0};
  double ra = 0.0;
  int k = 0;   // pow exponent / proj index / constant in_dim
  CVector vec; // constant value / mobius-ball center / inner-product coeffs
  CMatrix mat;
  std::vector<std::shared_ptr<const Expr>> kids;
  int in_dim = 1;
  int out_dim = 1;

  CVector eval(const CVector& z) const {
    switch (op) {
      case Op::Identity:
        return z;
      case Op::Constant:
        return vec;
      case Op::Affine:
        return cvector1(ca * z(0) + cb);
      case Op::Proj:
        return cvector1(z(k));
      case Op::Linear:
        return mat * z;
      case Op::Blaschke:
        return cvector1(blaschke_value(z(0)));
      case Op::MobiusDisk:
        return cvector1(std::polar(1.0, ra) * blaschke_value(z(0)));
      case Op::MobiusBall:
        return mobius_ball_value(z);
      case Op::Tan:
        return cvector1(std::tan(z(0)));
      case Op::AtanChart:
        return cvector1((4.0 / M_PI) * std::atan(z(0)));
      case Op::Exp:
        return cvector1(std::exp(z(0)));
      case Op::Log: {
        const Complex w = z(0);
        if (w.imag() == 0.0 && w.real() <= 0.0)
          throw std::domain_error("log: principal branch violation");
        return cvector1(std::log(w));
      }
      case Op::Pow:
        return cvector1(int_pow(z(0), k));
      case Op::Cayley: {
        const Complex w = z(0);
        if (w == Complex(1.0, 0.0)) throw std::domain_error("cayley: pole at z=1");
        return cvector1((1.0 + w) / (1.0 - w));
      }
      case Op::HalfplaneToDisk:
        return cvector1((z(0) - ca) / (z(0) + std::conj(ca)));
      case Op::Tuple: {
        CVector out(out_dim);
        Eigen::Index at = 0;
        for (const auto& kid : kids) {
          out.segment(at, kid->out_dim) = kid->eval(z);
          at += kid->out_dim;
        }
        return out;
      }
      case Op::InnerConst:
        return cvector1(hermitian_inner(z, vec));
      case Op::Product:
        return cvector1(kids[0]->eval(z)(0) * kids[1]->eval(z)(0));
      case Op::Compose:
        return kids[0]->eval(kids[1]->eval(z));
    }
    throw std::logic_error("unreachable");
  }

  CMatrix jac(const CVector& z) const {
    switch (op) {
      case Op::Identity:
        return CMatrix::Identity(in_dim, in_dim);
      case Op::Constant:
        return CMatrix::Zero(out_dim, in_dim);
      case Op::Affine:
        return scalar_jac(ca);
      case Op::Proj: {
        CMatrix J = CMatrix::Zero(1, in_dim);
        J(0, k) = 1.0;
        return J;
      }
      case Op::Linear:
        return mat;
      case Op::Blaschke:
        return scalar_jac(blaschke_deriv(z(0)));
      case Op::MobiusDisk:
        return scalar_jac(std::polar(1.0, ra) * blaschke_deriv(z(0)));
      case Op::MobiusBall:
        return mobius_ball_jac(z);
      case Op::Tan: {
        const Complex c = std::cos(z(0));
        return scalar_jac(1.0 / (c * c));
      }
      case Op::AtanChart:
        return scalar_jac((4.0 / M_PI) / (1.0 + z(0) * z(0)));
      case Op::Exp:
        return scalar_jac(std::exp(z(0)));
      case Op::Log: {
        const Complex w = z(0);
        if (w.imag() == 0.0 && w.real() <= 0.0)
          throw std::domain_error("log: principal branch violation");
        return scalar_jac(1.0 / w);
      }
      case Op::Pow:
        return scalar_jac(k == 0 ? Complex(0.0) : Complex(double(k)) * int_pow(z(0), k - 1));
      case Op::Cayley: {
        const Complex d = 1.0 - z(0);
        return scalar_jac(2.0 / (d * d));
      }
      case Op::HalfplaneToDisk: {
        const Complex d = z(0) + std::conj(ca);
        return scalar_jac(2.0 * ca.real() / (d * d));
      }
      case Op::Tuple: {
        CMatrix J(out_dim, in_dim);
        Eigen::Index at = 0;
        for (const auto& kid : kids) {
          J.block(at, 0, kid->out_dim, in_dim) = kid->jac(z);
          at += kid->out_dim;
        }
        return J;
      }
      case Op::InnerConst:
        return vec.adjoint();
      case Op::Product: {
        const Complex f = kids[0]->eval(z)(0);
        const Complex g = kids[1]->eval(z)(0);
        return g * kids[0]->jac(z) + f * kids[1]->jac(z);
      }
      case Op::Compose: {
        const CVector gz = kids[1]->eval(z);
        return kids[0]->jac(gz) * kids[1]->jac(z);
      }
    }
    throw std::logic_error("unreachable");
  }

 private:
  static Complex int_pow(Complex z, int e) {
    Complex r{1.0, 0.0};
    for (int i = 0; i < e; ++i) r *= z;
    return r;
  }
  CMatrix scalar_jac(Complex d) const {
    CMatrix J(1, 1);
    J(0, 0) = d;
    return J;
  }
  Complex blaschke_value(Complex z) const {
    return (z - ca) / (1.0 - std::conj(ca) * z);
  }
  Complex blaschke_deriv(Complex z) const {
    const Complex d = 1.0 - std::conj(ca) * z;
    return (1.0 - std::norm(ca)) / (d * d);
  }
  CVector mobius_ball_value(const CVector& z) const {
    if (z.norm() >= 1.0) throw std::domain_error("mobius_ball: |z| >= 1");
    const CVector& a = vec;
    const double aa = a.squaredNorm();
    if (aa == 0.0) return -z;
    const double s = std::sqrt(1.0 - aa);
    const CVector Pz = (hermitian_inner(z, a) / aa) * a;
    const CVector Qz = z - Pz;
    const Complex den = 1.0 - hermitian_inner(z, a);
    return (a - Pz - s * Qz) / den;
  }
  CMatrix mobius_ball_jac(const CVector& z) const {
    if (z.norm() >= 1.0) throw std::domain_error("mobius_ball: |z| >= 1");
    const CVector& a = vec;
    const Eigen::Index n = a.size();
    const double aa = a.squaredNorm();
    if (aa == 0.0) return -CMatrix::Identity(n, n);
    const double s = std::sqrt(1.0 - aa);
    const CMatrix P = (a * a.adjoint()) / aa;
    const CMatrix L = s * CMatrix::Identity(n, n) + (1.0 - s) * P;
    const CVector N = a - L * z;
    const Complex den = 1.0 - hermitian_inner(z, a);
    return (-den * L + N * a.adjoint()) / (den * den);
  }
};

using ExprPtr = std::shared_ptr<const Expr>;

inline const char* op_name(Expr::Op op) {
  switch (op) {
    case Expr::Op::Identity: return "identity";
    case Expr::Op::Constant: return "constant";
    case Expr::Op::Affine: return "affine";
    case Expr::Op::Proj: return "proj";
    case Expr::Op::Linear: return "linear";
    case Expr::Op::Blaschke: return "blaschke";
    case Expr::Op::MobiusDisk: return "mobius_disk";
    case Expr::Op::MobiusBall: return "mobius_ball";
    case Expr::Op::Tan: return "tan";
    case Expr::Op::AtanChart: return "atan_chart";
    case Expr::Op::Exp: return "exp";
    case Expr::Op::Log: return "log";
    case Expr::Op::Pow: return "pow";
    case Expr::Op::Cayley: return "cayley";
    case Expr::Op::HalfplaneToDisk: return "halfplane_to_disk";
    case Expr::Op::Tuple: return "tuple";
    case Expr::Op::InnerConst: return "inner_const";
    case Expr::Op::Product: return "product";
    case Expr::Op::Compose: return "compose";
  }
  return "?";
}

json expr_to_json(const Expr& e);
ExprPtr expr_from_json(const json& j);

inline json expr_to_json(const Expr& e) {
  json j{{"op", op_name(e.op)}, {"in", e.in_dim}, {"out", e.out_dim}};
  switch (e.op) {
    case Expr::Op::Constant:
      j["value"] = cvector_to_json(e.vec);
      break;
    case Expr::Op::Affine:
      j["a"] = complex_to_json(e.ca);
      j["b"] = complex_to_json(e.cb);
      break;
    case Expr::Op::Proj:
    case Expr::Op::Pow:
      j["k"] = e.k;
      break;
    case Expr::Op::Linear:
      j["m"] = cmatrix_to_json(e.mat);
      break;
    case Expr::Op::Blaschke:
      j["a"] = complex_to_json(e.ca);
      break;
    case Expr::Op::MobiusDisk:
      j["a"] = complex_to_json(e.ca);
      j["theta"] = e.ra;
      break;
    case Expr::Op::MobiusBall:
    case Expr::Op::InnerConst:
      j["c"] = cvector_to_json(e.vec);
      break;
    case Expr::Op::HalfplaneToDisk:
      j["w0"] = complex_to_json(e.ca);
      break;
    default:
      break;
  }
  if (!e.kids.empty()) {
    json kids = json::array();
    for (const auto& kid : e.kids) kids.push_back(expr_to_json(*kid));
    j["children"] = kids;
  }
  return j;
}

inline ExprPtr expr_from_json(const json& j) {
  auto e = std::make_shared<Expr>();
  const std::string name = j.at("op").get<std::string>();
  e->in_dim = j.at("in").get<int>();
  e->out_dim = j.at("out").get<int>();
  auto match = [&name](const char* s) { return name == s; };
  if (match("identity")) e->op = Expr::Op::Identity;
  else if (match("constant")) { e->op = Expr::Op::Constant; e->vec = cvector_from_json(j.at("value")); }
  else if (match("affine")) { e->op = Expr::Op::Affine; e->ca = complex_from_json(j.at("a")); e->cb = complex_from_json(j.at("b")); }
  else if (match("proj")) { e->op = Expr::Op::Proj; e->k = j.at("k").get<int>(); }
  else if (match("linear")) { e->op = Expr::Op::Linear; e->mat = cmatrix_from_json(j.at("m")); }
  else if (match("blaschke")) { e->op = Expr::Op::Blaschke; e->ca = complex_from_json(j.at("a")); }
  else if (match("mobius_disk")) { e->op = Expr::Op::MobiusDisk; e->ca = complex_from_json(j.at("a")); e->ra = j.at("theta").get<double>(); }
  else if (match("mobius_ball")) { e->op = Expr::Op::MobiusBall; e->vec = cvector_from_json(j.at("c")); }
  else if (match("tan")) e->op = Expr::Op::Tan;
  else if (match("atan_chart")) e->op = Expr::Op::AtanChart;
  else if (match("exp")) e->op = Expr::Op::Exp;
  else if (match("log")) e->op = Expr::Op::Log;
  else if (match("pow")) { e->op = Expr::Op::Pow; e->k = j.at("k").get<int>(); }
  else if (match("cayley")) e->op = Expr::Op::Cayley;
  else if (match("halfplane_to_disk")) { e->op = Expr::Op::HalfplaneToDisk; e->ca = complex_from_json(j.at("w0")); }
  else if (match("tuple")) e->op = Expr::Op::Tuple;
  else if (match("inner_const")) { e->op = Expr::Op::InnerConst; e->vec = cvector_from_json(j.at("c")); }
  else if (match("product")) e->op = Expr::Op::Product;
  else if (match("compose")) e->op = Expr::Op::Compose;
  else throw std::invalid_argument("unknown map op: " + name);
  if (j.contains("children"))
    for (const auto& kid : j.at("children")) e->kids.push_back(expr_from_json(kid));
  return e;
}

}  // namespace detail

/// Holomorphic map between model domains, represented as a composition
/// tree of primitive blocks. Evaluation and the Jacobian are exact
/// (structural chain rule); finite differences are only ever used to
/// cross-check them.
class HoloMap {
 public:
  HoloMap() = default;

  bool valid() const { return static_cast<bool>(root_); }
  int in_dim() const { return root_->in_dim; }
  int out_dim() const { return root_->out_dim; }
  const DomainDesc& domain() const { return domain_; }
  const DomainDesc& codomain() const { return codomain_; }

  CVector eval(const CVector& z) const {
    if (!domain_.contains(z))
      throw std::domain_error("holomap eval: point outside source domain");
    return root_->eval(z);
  }
  CMatrix deriv(const CVector& z) const {
    if (!domain_.contains(z))
      throw std::domain_error("holomap deriv: point outside source domain");
    return root_->jac(z);
  }
  Complex eval1(Complex z) const { return eval(cvector1(z))(0); }
  Complex deriv1(Complex z) const { return deriv(cvector1(z))(0, 0); }

  HoloMap with_domains(const DomainDesc& src, const DomainDesc& dst) const {
    HoloMap h = *this;
    h.domain_ = src;
    h.codomain_ = dst;
    return h;
  }

  json to_json() const {
    return json{{"domain", domain_}, {"codomain", codomain_},
                {"expr", detail::expr_to_json(*root_)}};
  }
  static HoloMap from_json(const json& j) {
    HoloMap h;
    h.domain_ = j.at("domain").get<DomainDesc>();
    h.codomain_ = j.at("codomain").get<DomainDesc>();
    h.root_ = detail::expr_from_json(j.at("expr"));
    return h;
  }

  // -- primitive blocks ------------------------------------------------

  static HoloMap identity(const DomainDesc& dom) {
    auto e = std::make_shared<detail::Expr>();
    e->op = detail::Expr::Op::Identity;
    e->in_dim = e->out_dim = dom.dim();
    return make(std::move(e), dom, dom);
  }

  static HoloMap constant(const CVector& value, const DomainDesc& src,
                          const DomainDesc& dst) {
    auto e = std::make_shared<detail::Expr>();
    e->op = detail::Expr::Op::Constant;
    e->vec = value;
    e->in_dim = src.dim();
    e->out_dim = static_cast<int>(value.size());
    return make(std::move(e), src, dst);
  }

  static HoloMap affine(Complex a, Complex b, const DomainDesc& src,
                        const DomainDesc& dst) {
    auto e = std::make_shared<detail::Expr>();
    e->op = detail::Expr::Op::Affine;
    e->ca = a;
    e->cb = b;
    return make(std::move(e), src, dst);
  }

  static HoloMap proj(int index, const DomainDesc& src, const DomainDesc& dst) {
    auto e = std::make_shared<detail::Expr>();
    e->op = detail::Expr::Op::Proj;
    e->k = index;
    e->in_dim = src.dim();
    return make(std::move(e), src, dst);
  }

  static HoloMap linear(const CMatrix& m, const DomainDesc& src,
                        const DomainDesc& dst) {
    auto e = std::make_shared<detail::Expr>();
    e->op = detail::Expr::Op::Linear;
    e->mat = m;
    e->in_dim = static_cast<int>(m.cols());
    e->out_dim = static_cast<int>(m.rows());
    return make(std::move(e), src, dst);
  }

  static HoloMap blaschke(Complex a) {
    if (std::abs(a) >= 1.0) throw std::invalid_argument("blaschke: |a| >= 1");
    auto e = std::make_shared<detail::Expr>();
    e->op = detail::Expr::Op::Blaschke;
    e->ca = a;
    return make(std::move(e), DomainDesc::disk(), DomainDesc::disk());
  }

  static HoloMap mobius_disk(Complex a, double theta) {
    if (std::abs(a) >= 1.0) throw std::invalid_argument("mobius_disk: |a| >= 1");
    auto e = std::make_shared<detail::Expr>();
    e->op = detail::Expr::Op::MobiusDisk;
    e->ca = a;
    e->ra = theta;
    return make(std::move(e), DomainDesc::disk(), DomainDesc::disk());
  }

  static HoloMap mobius_ball(const CVector& a) {
    if (a.norm() >= 1.0) throw std::invalid_argument("mobius_ball: |a| >= 1");
    auto e = std::make_shared<detail::Expr>();
    e->op = detail::Expr::Op::MobiusBall;
    e->vec = a;
    e->in_dim = e->out_dim = static_cast<int>(a.size());
    const auto B = DomainDesc::ball(static_cast<int>(a.size()));
    return make(std::move(e), B, B);
  }

  static HoloMap tan_block(const DomainDesc& src, const DomainDesc& dst) {
    return make(simple(detail::Expr::Op::Tan), src, dst);
  }
  /// (4/pi) arctan: the conformal chart of the disk onto the strip S_0.
  static HoloMap atan_chart() {
    return make(simple(detail::Expr::Op::AtanChart), DomainDesc::disk(),
                DomainDesc::planar_dom(PlanarDomain::strip0()));
  }
  static HoloMap exp_block(const DomainDesc& src, const DomainDesc& dst) {
    return make(simple(detail::Expr::Op::Exp), src, dst);
  }
  static HoloMap log_block(const DomainDesc& src, const DomainDesc& dst) {
    return make(simple(detail::Expr::Op::Log), src, dst);
  }
  static HoloMap pow_block(int k, const DomainDesc& src, const DomainDesc& dst) {
    if (k < 0) throw std::invalid_argument("pow: negative exponent");
    auto e = simple(detail::Expr::Op::Pow);
    e->k = k;
    return make(std::move(e), src, dst);
  }
  /// (1+z)/(1-z): disk onto the right half-plane.
  static HoloMap cayley() {
    return make(simple(detail::Expr::Op::Cayley), DomainDesc::disk(),
                DomainDesc::planar_dom(PlanarDomain::halfplane()));
  }
  /// (w-w0)/(w+conj w0): right half-plane onto the disk, w0 -> 0.
  static HoloMap halfplane_to_disk(Complex w0) {
    if (w0.real() <= 0.0)
      throw std::invalid_argument("halfplane_to_disk: Re w0 must be positive");
    auto e = simple(detail::Expr::Op::HalfplaneToDisk);
    e->ca = w0;
    return make(std::move(e), DomainDesc::planar_dom(PlanarDomain::halfplane()),
                DomainDesc::disk());
  }

  static HoloMap tuple(const std::vector<HoloMap>& parts, const DomainDesc& dst) {
    if (parts.empty()) throw std::invalid_argument("tuple: no parts");
    auto e = std::make_shared<detail::Expr>();
    e->op = detail::Expr::Op::Tuple;
    e->in_dim = parts[0].in_dim();
    e->out_dim = 0;
    for (const auto& p : parts) {
      if (p.in_dim() != e->in_dim)
        throw std::invalid_argument("tuple: mismatched source dimensions");
      e->kids.push_back(p.root_);
      e->out_dim += p.out_dim();
    }
    return make(std::move(e), parts[0].domain(), dst);
  }

  static HoloMap inner_const(const CVector& c, const DomainDesc& src,
                             const DomainDesc& dst) {
    auto e = std::make_shared<detail::Expr>();
    e->op = detail::Expr::Op::InnerConst;
    e->vec = c;
    e->in_dim = static_cast<int>(c.size());
    return make(std::move(e), src, dst);
  }

  static HoloMap product(const HoloMap& f, const HoloMap& g, const DomainDesc& dst) {
    if (f.out_dim() != 1 || g.out_dim() != 1 || f.in_dim() != g.in_dim())
      throw std::invalid_argument("product: needs two scalar maps on one source");
    auto e = std::make_shared<detail::Expr>();
    e->op = detail::Expr::Op::Product;
    e->in_dim = f.in_dim();
    e->kids = {f.root_, g.root_};
    return make(std::move(e), f.domain(), dst);
  }

  /// f after g.
  friend HoloMap compose(const HoloMap& f, const HoloMap& g) {
    if (f.in_dim() != g.out_dim())
      throw std::invalid_argument("compose: dimension mismatch");
    auto e = std::make_shared<detail::Expr>();
    e->op = detail::Expr::Op::Compose;
    e->in_dim = g.in_dim();
    e->out_dim = f.out_dim();
    e->kids = {f.root_, g.root_};
    return make(std::move(e), g.domain(), f.codomain());
  }

 private:
  static std::shared_ptr<detail::Expr> simple(detail::Expr::Op op) {
    auto e = std::make_shared<detail::Expr>();
    e->op = op;
    return e;
  }
  static HoloMap make(detail::ExprPtr root, const DomainDesc& src,
                      const DomainDesc& dst) {
    HoloMap h;
    h.root_ = std::move(root);
    h.domain_ = src;
    h.codomain_ = dst;
    return h;
  }

  detail::ExprPtr root_;
  DomainDesc domain_ = DomainDesc::disk();
  DomainDesc codomain_ = DomainDesc::disk();
};

inline HoloMap compose3(const HoloMap& f, const HoloMap& g, const HoloMap& h) {
  return compose(f, compose(g, h));
}

/// Exact complex Jacobian of a HoloMap via the expression tree.
inline CMatrix exact_jacobian(const HoloMap& f, const CVector& a) { return f.deriv(a); }

/// FD cross-check entry point for maps (central differences).
inline CMatrix fd_jacobian(const HoloMap& f, const CVector& a, double h = 0.0) {
  if (h <= 0.0) h = 1e-6 * std::max(1.0, a.norm());
  if (f.domain().boundary_margin(a) <= 2.0 * h)
    throw std::domain_error("fd_jacobian: point too close to the boundary");
  return fd_jacobian([&f](const CVector& z) { return f.eval(z); }, a, h);
}

}  // namespace invmetric
