#include "heat_kernel.hpp"

#include <cmath>
#include <limits>
#include <numbers>
#include <string>

#include "errors.hpp"
#include "geometry.hpp"
#include "special_fn.hpp"
#include "spectral.hpp"

namespace conespec {

namespace {

constexpr double kPi = std::numbers::pi;
constexpr double kInf = std::numeric_limits<double>::infinity();

double free_line(double x, double xp, double tau) {
  return std::exp(-(x - xp) * (x - xp) / (2.0 * tau)) / std::sqrt(2.0 * kPi * tau);
}

double half_line(double x, double xp, double tau, double sign) {
  if (x < 0.0 || xp < 0.0) throw Error(ErrorCode::DomainError, "half-line kernel needs nonnegative coordinates");
  return free_line(x, xp, tau) + sign * free_line(x, -xp, tau);
}

// e^{-y^2} sinh(y^2) without overflow.
double damped_sinh(double y) { return -0.5 * std::expm1(-2.0 * y * y); }

}  // namespace

double kernel_eval(const ExplicitKernel& k, const std::vector<double>& x, const std::vector<double>& xp, double tau) {
  if (!(tau > 0.0)) throw Error(ErrorCode::DomainError, "tau must be positive");
  const std::size_t dim = (k.kind == KernelKind::FreeSpace || k.kind == KernelKind::Orthant) ? k.n : 1;
  if (x.size() != dim || xp.size() != dim)
    throw Error(ErrorCode::InvalidArgument, "kernel expects " + std::to_string(dim) + " coordinates");
  switch (k.kind) {
    case KernelKind::FreeLine:
      return free_line(x[0], xp[0], tau);
    case KernelKind::HalfLineDirichlet:
      return half_line(x[0], xp[0], tau, -1.0);
    case KernelKind::HalfLineNeumann:
      return half_line(x[0], xp[0], tau, 1.0);
    case KernelKind::FreeSpace: {
      double d2 = 0.0;
      for (std::size_t i = 0; i < dim; ++i) d2 += (x[i] - xp[i]) * (x[i] - xp[i]);
      return std::exp(-d2 / (2.0 * tau)) / std::pow(2.0 * kPi * tau, 0.5 * k.n);
    }
    case KernelKind::Orthant: {
      double r2 = 0.0;
      double prod = 1.0;
      for (std::size_t i = 0; i < dim; ++i) {
        if (x[i] < 0.0 || xp[i] < 0.0) throw Error(ErrorCode::DomainError, "orthant kernel needs nonnegative coordinates");
        r2 += x[i] * x[i] + xp[i] * xp[i];
        prod *= std::sinh(x[i] * xp[i] / tau);
      }
      return std::pow(2.0 / (kPi * tau), 0.5 * k.n) * std::exp(-r2 / (2.0 * tau)) * prod;
    }
  }
  throw Error(ErrorCode::Internal, "unknown kernel kind");
}

double arc_trace_identity_residual(double r, const TruncationControl& tc) {
  if (!(r > 0.0) || r > 10.0) throw Error(ErrorCode::DomainError, "arc trace identity needs 0 < r <= 10");
  if (tc.max_terms < 1) throw Error(ErrorCode::InvalidArgument, "max_terms must be at least 1");
  const double x = r * r;
  double series = 0.0;
  for (int k = 1; k <= tc.max_terms; ++k) series += special::bessel_i_scaled(2.0 * k, x);
  const double closed = 0.25 - 0.5 * special::bessel_i_scaled(0.0, x) + 0.25 * std::exp(-2.0 * x);
  const double residual = std::abs(series - closed);
  if (residual > tc.target_tol)
    throw Error(ErrorCode::ToleranceNotMet, "arc trace residual " + std::to_string(residual) + " at r=" +
                                                std::to_string(r) + " with " + std::to_string(tc.max_terms) + " terms");
  return residual;
}

double mzf_numeric_residual(const ExplicitKernel& k, double z) {
  if (!(z >= 0.1 && z <= 0.9)) throw Error(ErrorCode::DomainError, "Mzf check needs z in [0.1, 0.9]");
  const int n = k.n;
  const double c = (1.0 - z) * (1.0 - z) / (2.0 * z);
  const double prefactor = (1.0 - z * z) * std::pow(z, -0.5 * n);
  const special::Tolerance tol{1e-13, 1e-11, 4000};
  double integral = 0.0;
  double closed = 0.0;
  if (k.kind == KernelKind::FreeSpace) {
    // f(x,x,1) = (2 pi)^{-n/2}; integrate radially.
    const auto r = special::integrate_adaptive(
        [&](double rad) { return std::pow(rad, n - 1) * std::exp(-c * rad * rad); }, 0.0, kInf, tol);
    integral = sphere_size(n) * r.value / std::pow(2.0 * kPi, 0.5 * n);
    closed = (1.0 - z * z) * std::pow(1.0 - z, -n);
  } else if (k.kind == KernelKind::Orthant) {
    // f(x,x,1) = (2/pi)^{n/2} prod_i e^{-x_i^2} sinh(x_i^2).
    const double norm = std::pow(2.0 / kPi, 0.5 * n);
    auto weight = [&](double y) { return std::exp(-c * y * y) * damped_sinh(y); };
    if (n == 1) {
      integral = norm * special::integrate_adaptive(weight, 0.0, kInf, tol).value;
    } else if (n == 2) {
      integral = norm * special::integrate_adaptive_2d([&](double a, double b) { return weight(a) * weight(b); }, 0.0,
                                                       kInf, 0.0, kInf, tol)
                            .value;
    } else if (n == 3) {
      const auto outer = special::integrate_adaptive(
          [&](double a) {
            return weight(a) * special::integrate_adaptive_2d(
                                   [&](double b, double d) { return weight(b) * weight(d); }, 0.0, kInf, 0.0, kInf,
                                   {1e-14, 1e-12, 4000})
                                   .value;
          },
          0.0, kInf, tol);
      integral = norm * outer.value;
    } else {
      throw Error(ErrorCode::UnsupportedDomain, "Mzf orthant check is limited to n <= 3");
    }
    closed = std::pow(z, n) * std::pow(1.0 - z * z, 1 - n);
  } else {
    throw Error(ErrorCode::UnsupportedDomain, "Mzf check needs a FreeSpace or Orthant kernel");
  }
  return std::abs(prefactor * integral - closed);
}

double mhk_identity_residual(const DomainExpr& d, BoundaryCondition bc, double s, const TruncationControl& tc) {
  if (!(s >= 0.05 && s <= 2.0)) throw Error(ErrorCode::DomainError, "Mhk check needs s in [0.05, 2]");
  const ClosedFormM m = domain_m(d, bc);
  const int n = d.ambient_dim();
  const double ell = 0.5 * (n - 2);

  // Raise the cutoff until the last block of the trace series, weighted by
  // e^{-s nu}, is negligible.
  double cutoff = 8.0 / s;
  SpectralSeries series;
  for (int attempt = 0;; ++attempt) {
    series = expand_series(m, cutoff);
    double block = 0.0;
    for (const auto& t : series.terms)
      if (t.nu > 0.5 * cutoff) block += t.multiplicity * std::exp(-s * t.nu);
    if (block < 1e-3 * tc.target_tol) break;
    if (attempt > 12) throw Error(ErrorCode::ToleranceNotMet, "trace series cutoff did not converge");
    cutoff *= 2.0;
  }

  // Substituting t = u^2 removes the 1/sqrt(t) endpoint singularity.
  auto integrand = [&](double u) {
    if (u <= 0.0) return 0.0;
    const double g = s * s / (4.0 * u * u);
    double trace = 0.0;
    for (const auto& t : series.terms) {
      const double e = g * t.nu * (t.nu + 2.0 * ell);
      if (e > 745.0) break;
      trace += t.multiplicity * std::exp(-e);
    }
    return 2.0 * std::exp(-u * u - ell * ell * g) * trace;
  };
  double upper = std::sqrt(0.5 * s * (cutoff + ell)) + 4.0;
  while (std::exp(-upper * upper) > 1e-3 * tc.target_tol) upper += 1.0;
  const auto r = special::integrate_adaptive(integrand, 0.0, upper, {1e-3 * tc.target_tol, 1e-12, 8000});
  const double rhs = std::exp(ell * s) / std::sqrt(kPi) * r.value;
  const double residual = std::abs(rhs - m.evaluate_at_s(s));
  if (residual > tc.target_tol)
    throw Error(ErrorCode::ToleranceNotMet,
                "Mhk residual " + std::to_string(residual) + " for " + print_domain(d) + " at s=" + std::to_string(s));
  return residual;
}

double poisson_kernel(int n, double theta, double z) {
  if (n < 2) throw Error(ErrorCode::Dimension, "Poisson kernel needs n >= 2");
  if (!(z >= 0.0 && z < 1.0)) throw Error(ErrorCode::DomainError, "Poisson kernel needs 0 <= z < 1");
  return (1.0 - z * z) / std::pow(1.0 - 2.0 * z * std::cos(theta) + z * z, 0.5 * n) / sphere_size(n);
}

double poisson_normalization(int n, double z) {
  const auto r = special::integrate_adaptive(
      [&](double t) { return poisson_kernel(n, t, z) * std::pow(std::sin(t), n - 2); }, 0.0, kPi,
      {1e-14, 1e-13, 4000});
  return sphere_size(n - 1) * r.value;
}

double gegenbauer(int k, double alpha, double x) {
  if (k == 0) return 1.0;
  double prev = 1.0;
  double cur = 2.0 * alpha * x;
  for (int j = 1; j < k; ++j) {
    const double next = (2.0 * x * (j + alpha) * cur - (j + 2.0 * alpha - 1.0) * prev) / (j + 1.0);
    prev = cur;
    cur = next;
  }
  return cur;
}

double poisson_first_coefficient_residual(int n, double theta) {
  if (n < 3) throw Error(ErrorCode::Dimension, "zonal harmonic normalization needs n >= 3");
  const double p0 = poisson_kernel(n, theta, 0.0);
  auto forward = [&](double h) { return (poisson_kernel(n, theta, h) - p0) / h; };
  // Two Richardson levels on step halving remove the O(h) and O(h^2) errors.
  const double h = 1e-3;
  const double d1 = forward(h), d2 = forward(h / 2), d3 = forward(h / 4);
  const double r1 = 2.0 * d2 - d1, r2 = 2.0 * d3 - d2;
  const double derivative = (4.0 * r2 - r1) / 3.0;
  const double alpha = 0.5 * (n - 2);
  const double zonal = gegenbauer(1, alpha, std::cos(theta)) * (2.0 + n - 2) / ((n - 2) * sphere_size(n));
  return std::abs(derivative - zonal);
}

}  // namespace conespec
