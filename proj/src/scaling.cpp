#include "scaling.hpp"

#include <cmath>
#include <functional>
#include <numbers>

#include "errors.hpp"

namespace conespec {

namespace {

constexpr double kPi = std::numbers::pi;

void require_compatible(const DomainGeometry& t, const DomainGeometry& r) {
  if (t.n != r.n)
    throw Error(ErrorCode::DimensionMismatch,
                "target lives on S^" + std::to_string(t.n - 1) + " but reference on S^" + std::to_string(r.n - 1));
  if (t.bc != r.bc) throw Error(ErrorCode::DimensionMismatch, "target and reference boundary conditions differ");
}

std::vector<double> flatten(const SpectralSeries& ref, int modes) {
  if (modes < 1) throw Error(ErrorCode::InvalidArgument, "modes must be at least 1");
  std::vector<double> nu0;
  for (const SpectralTerm& t : ref.terms) {
    for (long long i = 0; i < t.multiplicity && static_cast<int>(nu0.size()) < modes; ++i) nu0.push_back(t.nu);
    if (static_cast<int>(nu0.size()) == modes) break;
  }
  if (static_cast<int>(nu0.size()) < modes)
    throw Error(ErrorCode::InsufficientModes, "reference series holds " + std::to_string(nu0.size()) +
                                                  " modes below its cutoff, " + std::to_string(modes) + " requested");
  return nu0;
}

// Rows for a per-mode map; multiplicity is the size of the group of equal
// reference degrees the mode belongs to.
EstimateReport build(const std::vector<double>& nu0, const SpectralSeries& ref, int n, Method method,
                     BoundaryCondition bc, const std::function<double(double, int)>& map) {
  EstimateReport report;
  report.method = method;
  report.bc = bc;
  report.n = n;
  for (std::size_t i = 0; i < nu0.size(); ++i) {
    EstimateRow row;
    row.k = static_cast<int>(i) + 1;
    row.nu_ref = nu0[i];
    row.nu = map(nu0[i], row.k);
    row.lambda = lambda_of_nu(row.nu, n);
    for (const SpectralTerm& t : ref.terms)
      if (std::abs(t.nu - nu0[i]) <= kExponentMergeTol) row.multiplicity = t.multiplicity;
    report.rows.push_back(row);
  }
  return report;
}

}  // namespace

double lambda_of_nu(double nu, int n) { return nu * (nu + n - 2); }

const char* to_string(Method m) noexcept { return m == Method::Linear ? "linear" : "quadratic"; }

LinearScaling linear_params(const DomainGeometry& target, const DomainGeometry& ref) {
  require_compatible(target, ref);
  const int n = target.n;
  const ScalingInputs st = scaling_inputs(target);
  const ScalingInputs sr = scaling_inputs(ref);
  LinearScaling sc;
  sc.n = n;
  sc.beta = std::pow(ref.area / target.area, 1.0 / (n - 1));
  sc.alpha = 0.5 * (st.gamma - sc.beta * sr.gamma + (sc.beta - 1.0) * (n - 2));
  return sc;
}

QuadraticScaling quadratic_params(const DomainGeometry& target, const DomainGeometry& ref) {
  require_compatible(target, ref);
  const ScalingInputs st = scaling_inputs(target);
  const ScalingInputs sr = scaling_inputs(ref);
  QuadraticScaling sc;
  sc.n = target.n;
  sc.beta = std::pow(ref.area / target.area, 1.0 / (target.n - 1));
  sc.p_t = st.p;
  sc.q_t = st.q;
  sc.p_r = sr.p;
  sc.q_r = sr.q;
  return sc;
}

EstimateReport estimate_linear(const LinearScaling& sc, const SpectralSeries& ref, int modes) {
  return build(flatten(ref, modes), ref, sc.n, Method::Linear, BoundaryCondition::Dirichlet,
               [&](double nu0, int) { return sc.alpha + sc.beta * nu0; });
}

EstimateReport estimate_quadratic(const QuadraticScaling& sc, const SpectralSeries& ref, int modes) {
  return build(flatten(ref, modes), ref, sc.n, Method::Quadratic, BoundaryCondition::Dirichlet,
               [&](double nu0, int k) {
                 const double shifted = nu0 + sc.p_r;
                 const double disc = sc.beta * sc.beta * (shifted * shifted + sc.q_r) - sc.q_t;
                 if (disc < 0.0)
                   throw Error(ErrorCode::NegativeDiscriminant,
                               "quadratic scaling has no real root for mode " + std::to_string(k));
                 return -sc.p_t + std::sqrt(disc);
               });
}

EstimateReport estimate_neumann(const QuadraticScaling& sc, Method method, const SpectralSeries& ref, int modes) {
  const double b = sc.beta;
  if (method == Method::Linear) {
    return build(flatten(ref, modes), ref, sc.n, method, BoundaryCondition::Neumann, [&](double nu0, int k) {
      if (nu0 == 0.0) return 0.0;
      const double disc = sc.p_t * sc.p_t + b * b * nu0 * (nu0 + 2.0 * sc.p_r);
      if (disc < 0.0)
        throw Error(ErrorCode::NegativeDiscriminant, "Neumann linear scaling has no real root for mode " + std::to_string(k));
      return -sc.p_t + std::sqrt(disc);
    });
  }
  auto cubic = [](double nu, double p, double q) { return std::pow(nu + p, 3) + 1.5 * q * nu - p * p * p; };
  return build(flatten(ref, modes), ref, sc.n, method, BoundaryCondition::Neumann, [&](double nu0, int k) {
    if (nu0 == 0.0) return 0.0;
    const double rhs = b * b * b * cubic(nu0, sc.p_r, sc.q_r);
    auto g = [&](double nu) { return cubic(nu, sc.p_t, sc.q_t) - rhs; };
    if (g(0.0) > 0.0)
      throw Error(ErrorCode::RootNotBracketed, "Neumann cubic has no root on nu >= 0 for mode " + std::to_string(k));
    double lo = 0.0;
    double hi = std::max(1.0, nu0);
    int grow = 0;
    while (g(hi) < 0.0) {
      lo = hi;
      hi *= 2.0;
      if (++grow > 200)
        throw Error(ErrorCode::RootNotBracketed, "Neumann cubic root not bracketed for mode " + std::to_string(k));
    }
    for (;;) {
      const double mid = 0.5 * (lo + hi);
      if (mid <= lo || mid >= hi) break;
      const double value = g(mid);
      if (value == 0.0) return mid;
      (value < 0.0 ? lo : hi) = mid;
    }
    return std::abs(g(lo)) <= std::abs(g(hi)) ? lo : hi;
  });
}

SpectralSeries reference_series(const ClosedFormM& m, int modes) {
  double cutoff = 16.0;
  for (int attempt = 0; attempt < 20; ++attempt, cutoff *= 2.0) {
    SpectralSeries s = expand_series(m, cutoff);
    long long count = 0;
    for (const auto& t : s.terms) count += t.multiplicity;
    if (count >= modes) return s;
  }
  throw Error(ErrorCode::InsufficientModes, "could not reach " + std::to_string(modes) + " reference modes");
}

EstimateReport estimate(const DomainExpr& target, const DomainExpr& reference, BoundaryCondition bc, Method method,
                        int modes) {
  const DomainGeometry gt = catalog_geometry(target, bc);
  const DomainGeometry gr = catalog_geometry(reference, bc);
  const SpectralSeries ref = reference_series(domain_m(reference, bc), modes);
  EstimateReport report;
  if (bc == BoundaryCondition::Neumann)
    report = estimate_neumann(quadratic_params(gt, gr), method, ref, modes);
  else if (method == Method::Linear)
    report = estimate_linear(linear_params(gt, gr), ref, modes);
  else
    report = estimate_quadratic(quadratic_params(gt, gr), ref, modes);
  report.target = print_domain(target);
  report.reference = print_domain(reference);
  return report;
}

double cap_formula_nu(double theta, double nu0) {
  const double half = 0.5 * theta;
  return 0.5 * (1.0 / std::tan(half) - 1.0) + nu0 / (std::sqrt(2.0) * std::sin(half));
}

double sector_formula_nu(double theta, double phi, double nu0) {
  const double half = 0.5 * theta;
  const double s = std::sin(half);
  return 0.5 * (1.0 / std::tan(half) + theta / (phi * s * s) - kPi / (std::sqrt(2.0) * phi * s) - 1.0) +
         nu0 / (std::sqrt(2.0) * s);
}

std::vector<double> flat_reference_estimate(double area, double boundary, double area0, double boundary0,
                                            const std::vector<double>& lambda0) {
  const double shift = 0.5 * (boundary / area - boundary0 / std::sqrt(area * area0) - 1.0);
  std::vector<double> out;
  for (double l : lambda0) out.push_back(shift + std::sqrt(area0 * l / area));
  return out;
}

std::vector<double> flat_limit(const FlatDomain& target, const DomainGeometry& ref, const SpectralSeries& ref_series,
                               Method method, int modes) {
  if (ref.n != 3) throw Error(ErrorCode::DimensionMismatch, "flat limits are defined against domains on S^2");
  if (ref.bc != BoundaryCondition::Dirichlet)
    throw Error(ErrorCode::InvalidArgument, "flat limits use the Dirichlet procedures");
  const std::vector<double> nu0 = flatten(ref_series, modes);
  const ScalingInputs sr = scaling_inputs(ref);
  // On S^2 gamma = L/A and beta = sqrt(A0/A); both grow like 1/delta.
  const double gamma_hat = target.boundary_hat / target.area_hat;
  const double beta_hat = std::sqrt(ref.area / target.area_hat);
  std::vector<double> out;
  if (method == Method::Linear) {
    for (double v : nu0) out.push_back(0.5 * (gamma_hat - beta_hat * sr.gamma + beta_hat) + beta_hat * v);
    return out;
  }
  double a2_hat = target.K_hat / 3.0;
  for (const Corner& c : target.corners) a2_hat += c.measure * (kPi * kPi / c.angle - c.angle) / 6.0;
  const double p_hat = -0.5 * gamma_hat;
  const double q_hat = -0.25 * gamma_hat * gamma_hat + a2_hat / target.area_hat;
  for (std::size_t i = 0; i < nu0.size(); ++i) {
    const double shifted = nu0[i] + sr.p;
    const double disc = beta_hat * beta_hat * (shifted * shifted + sr.q) - q_hat;
    if (disc < 0.0)
      throw Error(ErrorCode::NegativeDiscriminant, "flat quadratic limit has no real root for mode " + std::to_string(i + 1));
    out.push_back(-p_hat + std::sqrt(disc));
  }
  return out;
}

}  // namespace conespec
