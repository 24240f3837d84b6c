#pragma once

/// \file quadrature.hpp
/// Sample domains (ball, axis-aligned box, explicit node cloud), the
/// quadrature rules attached to them, magnetization fields, and the
/// reference evaluation of the coefficient integrals int_Omega M . grad W_alpha dx.

#include <cmath>
#include <cstddef>
#include <fstream>
#include <functional>
#include <numbers>
#include <optional>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include "strayfield/basis.hpp"
#include "strayfield/kahan.hpp"
#include "strayfield/multi_index.hpp"

namespace strayfield {

/// Gauss-Legendre nodes and weights on [-1, 1], by Newton iteration on the
/// Legendre recurrence.  Accurate to ~2 ulp for the node counts used here.
struct GaussLegendre {
  std::vector<double> nodes;
  std::vector<double> weights;
};

inline GaussLegendre gauss_legendre(int n) {
  if (n < 1) throw std::invalid_argument("gauss_legendre: need n >= 1");
  GaussLegendre out;
  out.nodes.resize(n);
  out.weights.resize(n);
  const int half = (n + 1) / 2;
  for (int i = 0; i < half; ++i) {
    // Chebyshev-like initial guess
    double x = std::cos(std::numbers::pi * (i + 0.75) / (n + 0.5));
    double pp = 0.0;
    for (int it = 0; it < 100; ++it) {
      double p0 = 1.0, p1 = x;
      for (int j = 2; j <= n; ++j) {
        const double p2 = ((2.0 * j - 1.0) * x * p1 - (j - 1.0) * p0) / j;
        p0 = p1;
        p1 = p2;
      }
      pp = n * (x * p1 - p0) / (x * x - 1.0);
      const double dx = p1 / pp;
      x -= dx;
      if (std::abs(dx) < 1e-15) {
        // one polishing step after convergence
        p0 = 1.0;
        p1 = x;
        for (int j = 2; j <= n; ++j) {
          const double p2 = ((2.0 * j - 1.0) * x * p1 - (j - 1.0) * p0) / j;
          p0 = p1;
          p1 = p2;
        }
        pp = n * (x * p1 - p0) / (x * x - 1.0);
        break;
      }
    }
    out.nodes[i] = -x;
    out.nodes[n - 1 - i] = x;
    const double w = 2.0 / ((1.0 - x * x) * pp * pp);
    out.weights[i] = w;
    out.weights[n - 1 - i] = w;
  }
  if (n % 2 == 1) out.nodes[n / 2] = 0.0;
  return out;
}

struct BallDomain {
  double radius = 1.0;
  Vec3 center{0.0, 0.0, 0.0};
};

struct BoxDomain {
  Vec3 lo{0.0, 0.0, 0.0};
  Vec3 hi{1.0, 1.0, 1.0};
};

struct CloudDomain {
  std::vector<Vec3> nodes;
  std::vector<double> weights;
};

/// Geometric description of the sample Omega.
class SampleDomain {
 public:
  enum class Kind { ball, box, cloud };

  static SampleDomain make_ball(double radius, Vec3 center = {0.0, 0.0, 0.0}) {
    if (!(radius > 0.0)) throw std::invalid_argument("ball radius must be positive");
    SampleDomain d;
    d.kind_ = Kind::ball;
    d.ball_ = {radius, center};
    d.volume_ = 4.0 / 3.0 * std::numbers::pi * radius * radius * radius;
    return d;
  }

  static SampleDomain make_box(const Vec3& lo, const Vec3& hi) {
    for (int i = 0; i < 3; ++i)
      if (!(lo[i] < hi[i])) throw std::invalid_argument("box requires lo < hi componentwise");
    SampleDomain d;
    d.kind_ = Kind::box;
    d.box_ = {lo, hi};
    d.volume_ = (hi[0] - lo[0]) * (hi[1] - lo[1]) * (hi[2] - lo[2]);
    return d;
  }

  static SampleDomain make_cloud(std::vector<Vec3> nodes, std::vector<double> weights) {
    if (nodes.size() != weights.size() || nodes.empty())
      throw std::invalid_argument("cloud requires matching, nonempty node/weight lists");
    KahanSum vol;
    for (double w : weights) {
      if (!(w > 0.0)) throw std::invalid_argument("cloud weights must be positive");
      vol += w;
    }
    SampleDomain d;
    d.kind_ = Kind::cloud;
    d.cloud_ = {std::move(nodes), std::move(weights)};
    d.volume_ = vol.value();
    return d;
  }

  Kind kind() const { return kind_; }
  double volume() const { return volume_; }
  const BallDomain& ball() const { return ball_; }
  const BoxDomain& box() const { return box_; }
  const CloudDomain& cloud() const { return cloud_; }

 private:
  Kind kind_ = Kind::box;
  BallDomain ball_;
  BoxDomain box_;
  CloudDomain cloud_;
  double volume_ = 0.0;
};

/// Tensor structure of a ball rule, kept alongside the flat node list so the
/// coefficient assembly can run in factorized form.
struct BallTensorLayout {
  double radius = 0.0;
  Vec3 center{0.0, 0.0, 0.0};
  std::vector<double> r_nodes, r_weights;  // radial weight includes r^2
  std::vector<double> t_nodes, t_weights;  // t = cos(theta)
  int n_phi = 0;                           // uniform azimuthal grid, weight 2pi/n
};

/// Node/weight rule over one sample domain.  `order` is the per-axis
/// polynomial exactness.  Node ordering is fixed and documented per builder;
/// all reductions over nodes follow that order.
struct QuadratureRule {
  std::vector<Vec3> nodes;
  std::vector<double> weights;
  int order = 0;
  std::string identity;  // cache/provenance key, e.g. "ball r=0.5 16x16x32"
  std::optional<BallTensorLayout> ball_tensor;

  std::size_t size() const { return nodes.size(); }
};

/// Tensor-product Gauss-Legendre rule over a box, n nodes per axis,
/// exactness 2n-1 per axis.  Node order: x outer, then y, then z.
inline QuadratureRule build_box_rule(const SampleDomain& domain, int n_per_axis) {
  if (domain.kind() != SampleDomain::Kind::box)
    throw std::invalid_argument("build_box_rule: domain is not a box");
  if (n_per_axis < 2) throw std::invalid_argument("build_box_rule: need n_per_axis >= 2");
  const auto& b = domain.box();
  const GaussLegendre gl = gauss_legendre(n_per_axis);
  std::array<std::vector<double>, 3> xs, ws;
  for (int axis = 0; axis < 3; ++axis) {
    const double mid = 0.5 * (b.lo[axis] + b.hi[axis]);
    const double half = 0.5 * (b.hi[axis] - b.lo[axis]);
    xs[axis].resize(n_per_axis);
    ws[axis].resize(n_per_axis);
    for (int i = 0; i < n_per_axis; ++i) {
      xs[axis][i] = mid + half * gl.nodes[i];
      ws[axis][i] = half * gl.weights[i];
    }
  }
  QuadratureRule rule;
  rule.order = 2 * n_per_axis - 1;
  rule.nodes.reserve(static_cast<std::size_t>(n_per_axis) * n_per_axis * n_per_axis);
  rule.weights.reserve(rule.nodes.capacity());
  for (int i = 0; i < n_per_axis; ++i)
    for (int j = 0; j < n_per_axis; ++j)
      for (int k = 0; k < n_per_axis; ++k) {
        rule.nodes.push_back({xs[0][i], xs[1][j], xs[2][k]});
        rule.weights.push_back(ws[0][i] * ws[1][j] * ws[2][k]);
      }
  std::ostringstream id;
  id << "box n=" << n_per_axis;
  rule.identity = id.str();
  return rule;
}

/// Product rule over a ball in spherical coordinates: Gauss-Legendre in r
/// (r^2 factor folded into the weights), Gauss-Legendre in cos(theta), and a
/// uniform periodic grid in phi.  No node sits at r = 0.  Node order:
/// radius outer, then theta, then phi.
inline QuadratureRule build_ball_rule(const SampleDomain& domain, int n_radial, int n_theta,
                                      int n_phi) {
  if (domain.kind() != SampleDomain::Kind::ball)
    throw std::invalid_argument("build_ball_rule: domain is not a ball");
  if (n_radial < 2 || n_theta < 2 || n_phi < 2)
    throw std::invalid_argument("build_ball_rule: all node counts must be >= 2");
  const auto& b = domain.ball();
  const GaussLegendre glr = gauss_legendre(n_radial);
  const GaussLegendre glt = gauss_legendre(n_theta);

  BallTensorLayout lay;
  lay.radius = b.radius;
  lay.center = b.center;
  lay.n_phi = n_phi;
  lay.r_nodes.resize(n_radial);
  lay.r_weights.resize(n_radial);
  for (int i = 0; i < n_radial; ++i) {
    const double r = 0.5 * b.radius * (glr.nodes[i] + 1.0);
    lay.r_nodes[i] = r;
    lay.r_weights[i] = 0.5 * b.radius * glr.weights[i] * r * r;
  }
  lay.t_nodes = glt.nodes;
  lay.t_weights = glt.weights;

  QuadratureRule rule;
  rule.order = std::min({2 * n_radial - 3, 2 * n_theta - 1, n_phi - 1});
  const double wphi = 2.0 * std::numbers::pi / n_phi;
  rule.nodes.reserve(static_cast<std::size_t>(n_radial) * n_theta * n_phi);
  rule.weights.reserve(rule.nodes.capacity());
  for (int i = 0; i < n_radial; ++i)
    for (int j = 0; j < n_theta; ++j) {
      const double st = std::sqrt(std::max(0.0, 1.0 - lay.t_nodes[j] * lay.t_nodes[j]));
      for (int k = 0; k < n_phi; ++k) {
        const double phi = wphi * k;
        rule.nodes.push_back({b.center[0] + lay.r_nodes[i] * st * std::cos(phi),
                              b.center[1] + lay.r_nodes[i] * st * std::sin(phi),
                              b.center[2] + lay.r_nodes[i] * lay.t_nodes[j]});
        rule.weights.push_back(lay.r_weights[i] * lay.t_weights[j] * wphi);
      }
    }
  rule.ball_tensor = std::move(lay);
  std::ostringstream id;
  id << "ball r=" << b.radius << " " << n_radial << "x" << n_theta << "x" << n_phi;
  rule.identity = id.str();
  return rule;
}

/// Rule over an explicit node cloud; exact only for the weight sum.
inline QuadratureRule build_cloud_rule(const SampleDomain& domain) {
  if (domain.kind() != SampleDomain::Kind::cloud)
    throw std::invalid_argument("build_cloud_rule: domain is not a cloud");
  QuadratureRule rule;
  rule.nodes = domain.cloud().nodes;
  rule.weights = domain.cloud().weights;
  rule.order = 0;
  rule.identity = "cloud n=" + std::to_string(rule.nodes.size());
  return rule;
}

/// Magnetization evaluator M(x) plus the metadata the engines dispatch on.
/// When `node_values` is set the field is defined by per-node samples tied
/// to the rule named in `node_rule_identity` (the cloud-file case).
struct MagnetizationField {
  std::function<Vec3(const Vec3&)> evaluator;
  bool is_constant = false;
  bool divergence_free_tangential = false;  // |M| = const and M.n = 0 on the boundary
  std::optional<Vec3> constant_value;
  std::optional<std::vector<Vec3>> node_values;
  std::string node_rule_identity;

  Vec3 at(const Vec3& x, std::size_t node_pos) const {
    if (node_values) return (*node_values)[node_pos];
    return evaluator(x);
  }
};

inline MagnetizationField constant_field(const Vec3& value) {
  MagnetizationField f;
  f.evaluator = [value](const Vec3&) { return value; };
  f.is_constant = true;
  f.constant_value = value;
  return f;
}

/// Reference evaluation of c_alpha = int_Omega M . grad W_alpha dx:
/// a compensated sum over the rule's nodes in their stored order.  The
/// result is deterministic; the optimized table assembly in
/// coefficients.hpp is checked against this path.
inline double coefficient(const MultiIndex& a, const MagnetizationField& field,
                          const QuadratureRule& rule) {
  require_valid(a);
  KahanSum acc;
  for (std::size_t i = 0; i < rule.size(); ++i) {
    const GradientSample g = grad_w_alpha(a, rule.nodes[i]);
    acc += rule.weights[i] * dot(field.at(rule.nodes[i], i), g.grad);
  }
  return acc.value();
}

/// Node cloud ingestion: CSV with header x,y,z,weight,Mx,My,Mz.  Parse
/// errors report 1-based line numbers.
struct CloudData {
  SampleDomain domain;
  QuadratureRule rule;
  MagnetizationField field;
};

inline CloudData load_cloud_csv(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open cloud file: " + path);
  std::string line;
  if (!std::getline(in, line)) throw std::runtime_error(path + ": empty file");
  if (!line.empty() && line.back() == '\r') line.pop_back();
  if (line != "x,y,z,weight,Mx,My,Mz")
    throw std::runtime_error(path + ":1: expected header 'x,y,z,weight,Mx,My,Mz'");
  std::vector<Vec3> nodes;
  std::vector<double> weights;
  std::vector<Vec3> values;
  std::size_t lineno = 1;
  while (std::getline(in, line)) {
    ++lineno;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty()) continue;
    std::array<double, 7> v{};
    std::size_t pos = 0;
    for (int col = 0; col < 7; ++col) {
      const std::size_t next = line.find(',', pos);
      const std::string tok = line.substr(pos, next == std::string::npos ? next : next - pos);
      try {
        std::size_t used = 0;
        v[col] = std::stod(tok, &used);
        if (used != tok.size()) throw std::invalid_argument(tok);
      } catch (const std::exception&) {
        throw std::runtime_error(path + ":" + std::to_string(lineno) + ": bad numeric field '" +
                                 tok + "'");
      }
      if (next == std::string::npos) {
        if (col != 6)
          throw std::runtime_error(path + ":" + std::to_string(lineno) + ": expected 7 columns");
        pos = line.size();
      } else {
        pos = next + 1;
      }
    }
    if (!(v[3] > 0.0))
      throw std::runtime_error(path + ":" + std::to_string(lineno) + ": weight must be positive");
    nodes.push_back({v[0], v[1], v[2]});
    weights.push_back(v[3]);
    values.push_back({v[4], v[5], v[6]});
  }
  if (nodes.empty()) throw std::runtime_error(path + ": no data rows");
  CloudData out{SampleDomain::make_cloud(nodes, weights), QuadratureRule{}, MagnetizationField{}};
  out.rule = build_cloud_rule(out.domain);
  out.field.node_values = std::move(values);
  out.field.node_rule_identity = out.rule.identity;
  out.field.evaluator = [](const Vec3&) -> Vec3 {
    throw std::logic_error("cloud field is defined only at its nodes");
  };
  return out;
}

}  // namespace strayfield
