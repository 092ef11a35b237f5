#pragma once

#include <functional>
#include <memory>
#include <vector>

namespace conespec::special {

/// Gamma function for 0 < x <= 171. Throws DomainError for x <= 0.
double gamma_fn(double x);

/// log Gamma(x) for x > 0.
double log_gamma(double x);

/// Complementary error function, accurate to ~1e-14 relative for |x| <= 8.
double erfc_fn(double x);

/// Standard normal distribution function.
double normal_cdf(double x);

/// Inverse of normal_cdf on (0, 1).
double normal_quantile(double p);

/// Modified Bessel function of the first kind, real order nu >= 0, x in [0, 700].
///
/// Evaluated from the ascending series, which has only positive terms, with the
/// running sum kept in log-scaled form so large x neither overflows nor loses
/// relative accuracy. Throws Overflow beyond x = 700 or when the value is not
/// representable.
double bessel_i(double nu, double x);

/// exp(-x) * I_nu(x); same domain as bessel_i but never overflows.
double bessel_i_scaled(double nu, double x);

enum class RuleKind { Hermite, Legendre };

/// Gauss rule. Hermite rules integrate against exp(-u^2) on the real line,
/// Legendre rules against 1 on [-1, 1]. Nodes are stored in ascending order.
///
/// Hermite nodes whose weight underflows double precision (|u| above ~27) are
/// omitted, so nodes.size() may be smaller than order for large orders.
struct QuadratureRule {
  RuleKind kind = RuleKind::Legendre;
  int order = 0;
  std::vector<double> nodes;
  std::vector<double> weights;
};

QuadratureRule gauss_hermite(int order);
QuadratureRule gauss_legendre(int order);

/// Shared, immutable copy of a rule; each (kind, order) is built once.
std::shared_ptr<const QuadratureRule> cached_rule(RuleKind kind, int order);

using Integrand = std::function<double(double)>;
using Integrand2 = std::function<double(double, double)>;

/// Sum of w_i f(x_i) over the rule.
double integrate(const QuadratureRule& rule, const Integrand& f);

/// Legendre rule mapped onto [a, b].
double integrate(const QuadratureRule& rule, const Integrand& f, double a, double b);

struct Tolerance {
  double abs = 1e-12;
  double rel = 1e-10;
  int max_subdivisions = 4000;
};

struct IntegrationResult {
  double value = 0.0;
  double error = 0.0;
  int evaluations = 0;
};

/// Globally adaptive Gauss-Kronrod (7/15) integration on [a, b]. Either bound
/// may be infinite. Throws ToleranceNotMet when the subdivision budget runs out.
IntegrationResult integrate_adaptive(const Integrand& f, double a, double b,
                                     const Tolerance& tol = {});

/// Iterated adaptive integration over the rectangle [ax, bx] x [ay, by].
IntegrationResult integrate_adaptive_2d(const Integrand2& f, double ax, double bx,
                                        double ay, double by, const Tolerance& tol = {});

}  // namespace conespec::special
