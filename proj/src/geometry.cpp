#include "geometry.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <limits>
#include <numbers>
#include <random>
#include <string>

#include "errors.hpp"
#include "special_fn.hpp"

namespace conespec {

namespace {

constexpr double kPi = std::numbers::pi;

double binomial2(int n) { return 0.5 * n * (n - 1); }

// Cone factor of a join: its sphere-fraction and its boundary faces.
struct ConeFactor {
  double fraction;
  std::vector<double> face_fractions;
  double face_angle;  // dihedral angle between this factor's own faces, if two
};

ConeFactor cone_factor(const DomainExpr& atom) {
  const auto& node = atom.node();
  if (std::holds_alternative<AtomS0>(node)) return {1.0, {}, 0.0};
  if (std::holds_alternative<AtomT0>(node)) return {0.5, {1.0}, 0.0};
  if (const auto* arc = std::get_if<Arc>(&node)) return {arc->angle / (2.0 * kPi), {0.5, 0.5}, arc->angle};
  throw Error(ErrorCode::UnsupportedDomain, "no cone data for " + print_domain(atom));
}

DomainGeometry join_geometry(const std::vector<DomainExpr>& atoms, int n) {
  std::vector<ConeFactor> cf;
  for (const auto& a : atoms) cf.push_back(cone_factor(a));
  DomainGeometry g;
  g.n = n;
  double fraction = 1.0;
  for (const auto& f : cf) fraction *= f.fraction;
  g.area = fraction * sphere_size(n);

  // Product of whole-factor fractions, skipping indices i and j.
  auto others = [&](std::size_t i, std::size_t j) {
    double p = 1.0;
    for (std::size_t k = 0; k < cf.size(); ++k)
      if (k != i && k != j) p *= cf[k].fraction;
    return p;
  };

  for (std::size_t i = 0; i < cf.size(); ++i)
    for (double ff : cf[i].face_fractions) g.boundary += ff * others(i, i) * sphere_size(n - 1);

  if (n >= 3) {
    const double locus = sphere_size(n - 2);
    for (std::size_t i = 0; i < cf.size(); ++i) {
      if (cf[i].face_fractions.size() == 2) g.corners.push_back({cf[i].face_angle, others(i, i) * locus});
      for (std::size_t j = i + 1; j < cf.size(); ++j)
        for (double fi : cf[i].face_fractions)
          for (double fj : cf[j].face_fractions) g.corners.push_back({kPi / 2.0, fi * fj * others(i, j) * locus});
    }
  }
  g.bulk_R_integral = (n - 1.0) * (n - 2.0) * g.area;
  return g;
}

double cap_area(double theta, int n) {
  if (n == 3) return 2.0 * kPi * (1.0 - std::cos(theta));
  if (n == 2) return 2.0 * theta;
  const auto r = special::integrate_adaptive([n](double t) { return std::pow(std::sin(t), n - 2); }, 0.0, theta,
                                             {1e-15, 1e-13, 4000});
  return sphere_size(n - 1) * r.value;
}

}  // namespace

double sphere_size(int n) {
  if (n < 1) throw Error(ErrorCode::Dimension, "sphere_size needs n >= 1");
  if (n == 1) return 2.0;
  return 2.0 * std::pow(kPi, 0.5 * n) / special::gamma_fn(0.5 * n);
}

DomainGeometry catalog_geometry(const DomainExpr& d, BoundaryCondition bc) {
  const DomainCapabilities caps = capabilities(d);
  if (!caps.geometry_known) throw Error(ErrorCode::UnsupportedDomain, "no geometry for " + print_domain(d));
  const int n = caps.ambient_dim;
  const DomainExpr expanded = expand_named(d);
  DomainGeometry g;
  if (caps.spectrum_exact) {
    g = join_geometry(expanded.factors(), n);
  } else if (const auto* cap = std::get_if<Cap>(&expanded.node())) {
    g.n = n;
    g.area = cap_area(cap->theta, n);
    g.boundary = sphere_size(n - 1) * std::pow(std::sin(cap->theta), n - 2);
    g.boundary_K_integral = (n - 2) * g.boundary / std::tan(cap->theta);
    g.bulk_R_integral = (n - 1.0) * (n - 2.0) * g.area;
  } else if (const auto* sec = std::get_if<Sector>(&expanded.node())) {
    g.n = 3;
    g.area = sec->phi * (1.0 - std::cos(sec->theta));
    g.boundary = sec->phi * std::sin(sec->theta) + 2.0 * sec->theta;
    g.boundary_K_integral = sec->phi * std::cos(sec->theta);
    g.bulk_R_integral = 2.0 * g.area;
    g.corners = {{sec->phi, 1.0}, {kPi / 2.0, 1.0}, {kPi / 2.0, 1.0}};
  } else if (const auto* rt = std::get_if<RegularT>(&expanded.node())) {
    g.n = n;
    g.area = regular_t_size(n, rt->rho);
    g.boundary = regular_t_boundary_size(n, rt->rho);
    g.bulk_R_integral = (n - 1.0) * (n - 2.0) * g.area;
    const double corner_measure = regular_t_size(n - 2, rt->rho / (1.0 + 2.0 * rt->rho));
    const int count = static_cast<int>(binomial2(n));
    for (int i = 0; i < count; ++i) g.corners.push_back({std::acos(-rt->rho), corner_measure});
  } else {
    throw Error(ErrorCode::UnsupportedDomain, "no geometry for " + print_domain(d));
  }
  g.bc = bc;
  return g;
}

double regular_t_fraction(int n, double rho) {
  if (n < 0) throw Error(ErrorCode::Dimension, "regular_t_fraction needs n >= 0");
  if (!(rho >= 0.0 && rho < 1.0)) throw Error(ErrorCode::DomainError, "rho must lie in [0, 1)");
  if (n <= 1 || rho == 0.0) return 1.0;
  const double scale = std::sqrt(rho / (1.0 - rho));
  if (scale <= 3.5) {
    auto f = [&](double u) { return std::pow(special::erfc_fn(scale * u), n); };
    double previous = special::integrate(*special::cached_rule(special::RuleKind::Hermite, 64), f) / std::sqrt(kPi);
    for (int order = 128; order <= 1024; order *= 2) {
      const double current =
          special::integrate(*special::cached_rule(special::RuleKind::Hermite, order), f) / std::sqrt(kPi);
      if (std::abs(current - previous) <= 1e-9 * std::abs(current)) return current;
      previous = current;
    }
  }
  // A sharp step in erfc(scale u)^n defeats Hermite rules, which can even agree
  // on a wrong value; integrate in v = scale u on each side of the step instead.
  auto g = [&](double v) { return std::exp(-v * v / (scale * scale)) * std::pow(special::erfc_fn(v), n); };
  const special::Tolerance tol{1e-14, 1e-12, 20000};
  const auto left = special::integrate_adaptive(g, -std::numeric_limits<double>::infinity(), 0.0, tol);
  const auto right = special::integrate_adaptive(g, 0.0, std::numeric_limits<double>::infinity(), tol);
  const double value = (left.value + right.value) / (scale * std::sqrt(kPi));
  const double error = (left.error + right.error) / (scale * std::sqrt(kPi));
  if (!(error <= 1e-9 * std::abs(value)))
    throw Error(ErrorCode::QuadratureFailure,
                "quadrature did not reach 1e-9 for n=" + std::to_string(n) + ", rho=" + std::to_string(rho));
  return value;
}

double regular_t_size(int n, double rho) {
  if (n < 1) throw Error(ErrorCode::Dimension, "regular_t_size needs n >= 1");
  return std::ldexp(sphere_size(n), -n) * regular_t_fraction(n, rho);
}

double regular_t_boundary_size(int n, double rho) {
  if (n < 2) throw Error(ErrorCode::Dimension, "regular_t_boundary_size needs n >= 2");
  return n * regular_t_size(n - 1, rho / (1.0 + rho));
}

double regular_t_recursion_residual(int n, double rho) {
  if (n < 2) throw Error(ErrorCode::Dimension, "recursion needs n >= 2");
  constexpr double h = 1e-4;
  if (!(rho - h >= 0.0 && rho + h < 1.0)) throw Error(ErrorCode::DomainError, "rho too close to the ends of [0, 1)");
  const double derivative = (regular_t_fraction(n, rho + h) - regular_t_fraction(n, rho - h)) / (2.0 * h);
  const double rhs =
      n * (n - 1.0) / (kPi * std::sqrt(1.0 - rho * rho)) * regular_t_fraction(n - 2, rho / (1.0 + 2.0 * rho));
  return std::abs(derivative - rhs);
}

double regular_t_small_rho_residual(int n, double rho) {
  const double nn = n;
  const double expansion =
      1.0 + nn * (nn - 1) * rho / kPi + nn * (nn - 1) * (nn - 2) * (nn - 3) * rho * rho / (2.0 * kPi * kPi);
  return regular_t_fraction(n, rho) - expansion;
}

OrthantFraction general_t_size_fraction(const std::vector<std::vector<double>>& rho) {
  const std::size_t n = rho.size();
  if (n == 0) throw Error(ErrorCode::InvalidArgument, "empty correlation matrix");
  for (std::size_t i = 0; i < n; ++i) {
    if (rho[i].size() != n) throw Error(ErrorCode::InvalidArgument, "correlation matrix must be square");
    if (std::abs(rho[i][i] - 1.0) > 1e-12) throw Error(ErrorCode::InvalidArgument, "diagonal entries must be 1");
    for (std::size_t j = 0; j < i; ++j)
      if (std::abs(rho[i][j] - rho[j][i]) > 1e-12)
        throw Error(ErrorCode::InvalidArgument, "correlation matrix must be symmetric");
  }

  std::vector<std::vector<double>> chol(n, std::vector<double>(n, 0.0));
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j <= i; ++j) {
      double sum = rho[i][j];
      for (std::size_t k = 0; k < j; ++k) sum -= chol[i][k] * chol[j][k];
      if (i == j) {
        if (!(sum > 1e-14)) throw Error(ErrorCode::NotPositiveDefinite, "correlation matrix is not positive definite");
        chol[i][i] = std::sqrt(sum);
      } else {
        chol[i][j] = sum / chol[j][j];
      }
    }
  }

  if (n == 1) return {0.5, 0.0};
  if (n == 2) return {std::acos(-rho[0][1]) / (2.0 * kPi), 0.0};
  if (n == 3)
    return {0.125 + (std::asin(rho[0][1]) + std::asin(rho[0][2]) + std::asin(rho[1][2])) / (4.0 * kPi), 0.0};

  // Genz separation of variables for P(Y <= 0), Y = -X, over a Richtmyer lattice
  // with random shifts; the spread across shifts gives the standard error.
  constexpr int kShifts = 10;
  constexpr int kPointsPerShift = 100000;
  constexpr std::array<double, 12> kPrimes = {2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37};
  std::vector<double> alpha(n - 1);
  for (std::size_t i = 0; i + 1 < n; ++i) {
    const double p = i < kPrimes.size() ? kPrimes[i] : 41.0 + 2.0 * i;
    alpha[i] = std::sqrt(p) - std::floor(std::sqrt(p));
  }
  std::mt19937_64 rng(20240611);
  std::uniform_real_distribution<double> uniform(0.0, 1.0);
  std::vector<double> estimates;
  std::vector<double> y(n);
  for (int s = 0; s < kShifts; ++s) {
    std::vector<double> shift(n - 1);
    for (double& v : shift) v = uniform(rng);
    double total = 0.0;
    for (int k = 1; k <= kPointsPerShift; ++k) {
      double e = special::normal_cdf(0.0);
      double product = e;
      for (std::size_t i = 1; i < n; ++i) {
        const double x = std::fmod(k * alpha[i - 1] + shift[i - 1], 1.0);
        const double w = std::abs(2.0 * x - 1.0);
        y[i - 1] = special::normal_quantile(std::clamp(w * e, 1e-300, 1.0 - 1e-16));
        double acc = 0.0;
        for (std::size_t j = 0; j < i; ++j) acc += chol[i][j] * y[j];
        e = special::normal_cdf(-acc / chol[i][i]);
        product *= e;
      }
      total += product;
    }
    estimates.push_back(total / kPointsPerShift);
  }
  double mean = 0.0;
  for (double v : estimates) mean += v;
  mean /= kShifts;
  double var = 0.0;
  for (double v : estimates) var += (v - mean) * (v - mean);
  var /= (kShifts - 1.0);
  return {mean, std::sqrt(var / kShifts)};
}

HeatCoeffs heat_coeffs(const DomainGeometry& g) {
  HeatCoeffs h;
  h.a0 = g.area;
  const double sign = g.bc == BoundaryCondition::Dirichlet ? -1.0 : 1.0;
  h.a1 = sign * 0.5 * std::sqrt(kPi) * g.boundary;
  h.a2 = g.bulk_R_integral / 6.0 + g.boundary_K_integral / 3.0;
  for (const Corner& c : g.corners) h.a2 += c.measure * (kPi * kPi / c.angle - c.angle) / 6.0;
  return h;
}

ScalingInputs scaling_inputs(const DomainGeometry& g) {
  const int n = g.n;
  if (n < 2) throw Error(ErrorCode::Dimension, "scaling inputs need n >= 2");
  const double ell = 0.5 * (n - 2);
  const double sign = g.bc == BoundaryCondition::Dirichlet ? 1.0 : -1.0;
  ScalingInputs s;
  s.gamma = sign * 0.5 * (sphere_size(n) / sphere_size(n - 1)) * (g.boundary / g.area);
  s.c0 = 2.0 * g.area / sphere_size(n);
  s.c1 = -0.5 * (1.0 + s.gamma) * s.c0;
  s.p = ell - 0.5 * s.gamma;
  s.q = -ell * ell - 0.25 * (n - 2) * s.gamma * s.gamma + heat_coeffs(g).a2 / g.area;
  return s;
}

GeometricBCoeffs geometric_b_coeffs(const DomainGeometry& g) {
  const ScalingInputs s = scaling_inputs(g);
  const int n = g.n;
  const double ell = 0.5 * (n - 2);
  GeometricBCoeffs b;
  b.b0 = s.c0;
  const double ratio = ell - 0.5 * s.gamma;
  b.b1 = b.b0 * ratio;
  if (n >= 3) {
    const double two_b2_over_b0 = ratio * ratio - ell * ell / (n - 2) - 0.25 * s.gamma * s.gamma +
                                  heat_coeffs(g).a2 / ((n - 2) * g.area);
    b.b2 = 0.5 * b.b0 * two_b2_over_b0;
  } else {
    b.b2 = std::nan("");
  }
  return b;
}

}  // namespace conespec
