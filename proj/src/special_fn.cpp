#include "special_fn.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <limits>
#include <map>
#include <mutex>
#include <numbers>
#include <queue>
#include <string>

#include "errors.hpp"

namespace conespec::special {

namespace {

constexpr double kPi = std::numbers::pi;
constexpr double kEps = std::numeric_limits<double>::epsilon();

// Lanczos approximation, g = 7, nine terms.
constexpr std::array<double, 9> kLanczos = {
    0.99999999999980993,     676.5203681218851,     -1259.1392167224028,
    771.32342877765313,      -176.61502916214059,   12.507343278686905,
    -0.13857109526572012,    9.9843695780195716e-6, 1.5056327351493116e-7};

double lanczos_sum(double xm1) {
  double sum = kLanczos[0];
  for (std::size_t i = 1; i < kLanczos.size(); ++i) sum += kLanczos[i] / (xm1 + static_cast<double>(i));
  return sum;
}

}  // namespace

double gamma_fn(double x) {
  if (!(x > 0.0)) throw Error(ErrorCode::DomainError, "gamma_fn requires x > 0");
  if (x > 171.6) throw Error(ErrorCode::Overflow, "gamma_fn overflows for x > 171.6");
  if (x < 0.5) return kPi / (std::sin(kPi * x) * gamma_fn(1.0 - x));
  // Exact for small integers; avoids the last-ulp wobble of the approximation.
  if (x == std::floor(x) && x <= 23.0) {
    double f = 1.0;
    for (int k = 2; k < static_cast<int>(x); ++k) f *= k;
    return f;
  }
  const double xm1 = x - 1.0;
  const double t = xm1 + 7.5;
  return std::sqrt(2.0 * kPi) * std::pow(t, xm1 + 0.5) * std::exp(-t) * lanczos_sum(xm1);
}

double log_gamma(double x) {
  if (!(x > 0.0)) throw Error(ErrorCode::DomainError, "log_gamma requires x > 0");
  if (x < 0.5) return std::log(kPi / std::sin(kPi * x)) - log_gamma(1.0 - x);
  const double xm1 = x - 1.0;
  const double t = xm1 + 7.5;
  return 0.5 * std::log(2.0 * kPi) + (xm1 + 0.5) * std::log(t) - t + std::log(lanczos_sum(xm1));
}

double erfc_fn(double x) {
  if (std::isnan(x)) return x;
  if (x < 0.0) return 2.0 - erfc_fn(-x);
  if (x < 2.0) {
    // erf(x) = 2/sqrt(pi) exp(-x^2) sum 2^k x^(2k+1) / (2k+1)!!, all terms positive.
    const double x2 = x * x;
    double term = x;
    double sum = x;
    for (int k = 1; k < 200; ++k) {
      term *= 2.0 * x2 / (2.0 * k + 1.0);
      sum += term;
      if (term < 1e-17 * sum) break;
    }
    return 1.0 - 2.0 / std::sqrt(kPi) * std::exp(-x2) * sum;
  }
  if (x > 27.3) return 0.0;
  // Continued fraction x + (1/2)/(x + 1/(x + (3/2)/(x + ...))), modified Lentz.
  constexpr double tiny = 1e-300;
  double f = x;
  double c = x;
  double d = 0.0;
  for (int k = 1; k < 5000; ++k) {
    const double a = 0.5 * k;
    d = x + a * d;
    if (std::abs(d) < tiny) d = tiny;
    c = x + a / c;
    if (std::abs(c) < tiny) c = tiny;
    d = 1.0 / d;
    const double delta = c * d;
    f *= delta;
    if (std::abs(delta - 1.0) < 1e-16) break;
  }
  return std::exp(-x * x) / (std::sqrt(kPi) * f);
}

double normal_cdf(double x) { return 0.5 * erfc_fn(-x / std::numbers::sqrt2); }

double normal_quantile(double p) {
  if (!(p > 0.0 && p < 1.0)) throw Error(ErrorCode::DomainError, "normal_quantile requires 0 < p < 1");
  // Acklam's rational approximation, then one Halley step.
  static constexpr double a[] = {-3.969683028665376e+01, 2.209460984245205e+02, -2.759285104469687e+02,
                                 1.383577518672690e+02,  -3.066479806614716e+01, 2.506628277459239e+00};
  static constexpr double b[] = {-5.447609879822406e+01, 1.615858368580409e+02, -1.556989798598866e+02,
                                 6.680131188771972e+01,  -1.328068155288572e+01};
  static constexpr double c[] = {-7.784894002430293e-03, -3.223964580411365e-01, -2.400758277161838e+00,
                                 -2.549732539343734e+00, 4.374664141464968e+00,  2.938163982698783e+00};
  static constexpr double d[] = {7.784695709041462e-03, 3.224671290700398e-01, 2.445134137142996e+00,
                                 3.754408661907416e+00};
  constexpr double p_low = 0.02425;
  double x = 0.0;
  if (p < p_low) {
    const double q = std::sqrt(-2.0 * std::log(p));
    x = (((((c[0] * q + c[1]) * q + c[2]) * q + c[3]) * q + c[4]) * q + c[5]) /
        ((((d[0] * q + d[1]) * q + d[2]) * q + d[3]) * q + 1.0);
  } else if (p <= 1.0 - p_low) {
    const double q = p - 0.5;
    const double r = q * q;
    x = (((((a[0] * r + a[1]) * r + a[2]) * r + a[3]) * r + a[4]) * r + a[5]) * q /
        (((((b[0] * r + b[1]) * r + b[2]) * r + b[3]) * r + b[4]) * r + 1.0);
  } else {
    const double q = std::sqrt(-2.0 * std::log(1.0 - p));
    x = -(((((c[0] * q + c[1]) * q + c[2]) * q + c[3]) * q + c[4]) * q + c[5]) /
        ((((d[0] * q + d[1]) * q + d[2]) * q + d[3]) * q + 1.0);
  }
  const double e = normal_cdf(x) - p;
  const double u = e * std::sqrt(2.0 * kPi) * std::exp(0.5 * x * x);
  return x - u / (1.0 + 0.5 * x * u);
}

namespace {

// log of I_nu(x); requires x > 0.
double log_bessel_i(double nu, double x) {
  const double log_t0 = nu * std::log(0.5 * x) - log_gamma(nu + 1.0);
  const double q = 0.25 * x * x;
  // Sum of term ratios r_k = t_k / t_0, rescaled whenever it grows large.
  double sum = 1.0;
  double term = 1.0;
  double log_scale = 0.0;
  constexpr double big = 1e200;
  for (int k = 1; k < 100000; ++k) {
    term *= q / (k * (nu + k));
    sum += term;
    if (sum > big) {
      sum /= big;
      term /= big;
      log_scale += std::log(big);
    }
    // Terms peak near k ~ x/2; stop once past the peak and negligible.
    if (term < 1e-17 * sum && k > 0.5 * x) break;
  }
  return log_t0 + log_scale + std::log(sum);
}

void check_bessel_args(double nu, double x) {
  if (!(nu >= 0.0)) throw Error(ErrorCode::DomainError, "bessel_i requires nu >= 0");
  if (!(x >= 0.0)) throw Error(ErrorCode::DomainError, "bessel_i requires x >= 0");
  if (x > 700.0) throw Error(ErrorCode::Overflow, "bessel_i argument above 700");
}

}  // namespace

double bessel_i(double nu, double x) {
  check_bessel_args(nu, x);
  if (x == 0.0) return nu == 0.0 ? 1.0 : 0.0;
  const double lv = log_bessel_i(nu, x);
  if (lv > std::log(std::numeric_limits<double>::max()))
    throw Error(ErrorCode::Overflow, "bessel_i value not representable");
  return std::exp(lv);
}

double bessel_i_scaled(double nu, double x) {
  check_bessel_args(nu, x);
  if (x == 0.0) return nu == 0.0 ? 1.0 : 0.0;
  return std::exp(log_bessel_i(nu, x) - x);
}

namespace {

// Eigenvalues of the symmetric tridiagonal matrix with zero diagonal and
// off-diagonal e[0..n-2], by implicit QL with Wilkinson shifts. Sorted ascending.
std::vector<double> tridiagonal_eigenvalues(std::vector<double> e) {
  const int n = static_cast<int>(e.size()) + 1;
  std::vector<double> d(static_cast<std::size_t>(n), 0.0);
  e.push_back(0.0);
  for (int l = 0; l < n; ++l) {
    int iter = 0;
    int m = l;
    do {
      for (m = l; m < n - 1; ++m) {
        const double dd = std::abs(d[m]) + std::abs(d[m + 1]);
        if (std::abs(e[m]) <= std::numeric_limits<double>::epsilon() * dd) break;
      }
      if (m != l) {
        if (++iter > 60) throw Error(ErrorCode::Internal, "tridiagonal QL iteration did not converge");
        double g = (d[l + 1] - d[l]) / (2.0 * e[l]);
        double r = std::hypot(g, 1.0);
        g = d[m] - d[l] + e[l] / (g + std::copysign(r, g));
        double s = 1.0, c = 1.0, p = 0.0;
        int i = m - 1;
        for (; i >= l; --i) {
          double f = s * e[i];
          const double b = c * e[i];
          r = std::hypot(f, g);
          e[i + 1] = r;
          if (r == 0.0) {
            d[i + 1] -= p;
            e[m] = 0.0;
            break;
          }
          s = f / r;
          c = g / r;
          g = d[i + 1] - p;
          r = (d[i] - g) * s + 2.0 * c * b;
          p = s * r;
          d[i + 1] = g + p;
          g = c * r - b;
        }
        if (r == 0.0 && i >= l) continue;
        d[l] -= p;
        e[l] = g;
        e[m] = 0.0;
      }
    } while (m != l);
  }
  std::sort(d.begin(), d.end());
  return d;
}

// Orthonormal Hermite function recurrence at z, rescaled to stay finite. Returns
// p_n(z) e^{-log_scale}; `deriv` receives the matching derivative factor.
double hermite_orthonormal(int n, double z, double& deriv, double& log_scale) {
  const double pim4 = std::pow(kPi, -0.25);
  double p1 = pim4;
  double p2 = 0.0;
  log_scale = 0.0;
  for (int j = 1; j <= n; ++j) {
    const double p3 = p2;
    p2 = p1;
    p1 = z * std::sqrt(2.0 / j) * p2 - std::sqrt((j - 1.0) / j) * p3;
    if (std::abs(p1) > 1e150) {
      p1 *= 1e-150;
      p2 *= 1e-150;
      log_scale += std::log(1e150);
    }
  }
  deriv = std::sqrt(2.0 * n) * p2;
  return p1;
}

}  // namespace

QuadratureRule gauss_hermite(int order) {
  if (order < 2 || order > 1024)
    throw Error(ErrorCode::InvalidArgument, "Hermite order must be in [2, 1024]");
  const int n = order;
  std::vector<double> offdiag(static_cast<std::size_t>(n - 1));
  for (int j = 1; j < n; ++j) offdiag[static_cast<std::size_t>(j - 1)] = std::sqrt(0.5 * j);
  std::vector<double> x = tridiagonal_eigenvalues(offdiag);
  std::vector<double> logw(static_cast<std::size_t>(n));
  const int m = n / 2;
  for (int i = 0; i < m; ++i) {
    // Polish the positive root, then mirror it.
    double z = x[static_cast<std::size_t>(n - 1 - i)];
    double pp = 0.0;
    double log_scale = 0.0;
    for (int it = 0; it < 8; ++it) {
      const double p = hermite_orthonormal(n, z, pp, log_scale);
      const double step = p / pp;
      z -= step;
      if (std::abs(step) <= 1e-15 * std::max(1.0, std::abs(z))) break;
    }
    hermite_orthonormal(n, z, pp, log_scale);
    const double lw = std::log(2.0) - 2.0 * (std::log(std::abs(pp)) + log_scale);
    x[static_cast<std::size_t>(n - 1 - i)] = z;
    x[static_cast<std::size_t>(i)] = -z;
    logw[static_cast<std::size_t>(n - 1 - i)] = lw;
    logw[static_cast<std::size_t>(i)] = lw;
  }
  if (n % 2 == 1) {
    double pp = 0.0;
    double log_scale = 0.0;
    x[static_cast<std::size_t>(m)] = 0.0;
    hermite_orthonormal(n, 0.0, pp, log_scale);
    logw[static_cast<std::size_t>(m)] = std::log(2.0) - 2.0 * (std::log(std::abs(pp)) + log_scale);
  }
  QuadratureRule rule;
  rule.kind = RuleKind::Hermite;
  rule.order = order;
  for (int i = 0; i < n; ++i) {
    const double w = std::exp(logw[static_cast<std::size_t>(i)]);
    if (w <= std::numeric_limits<double>::min()) continue;
    rule.nodes.push_back(x[static_cast<std::size_t>(i)]);
    rule.weights.push_back(w);
  }
  for (std::size_t i = 1; i < rule.nodes.size(); ++i)
    if (!(rule.nodes[i] > rule.nodes[i - 1]))
      throw Error(ErrorCode::Internal, "Gauss-Hermite nodes not distinct");
  return rule;
}

QuadratureRule gauss_legendre(int order) {
  if (order < 2 || order > 1024)
    throw Error(ErrorCode::InvalidArgument, "Legendre order must be in [2, 1024]");
  const int n = order;
  const int m = (n + 1) / 2;
  std::vector<double> x(static_cast<std::size_t>(n));
  std::vector<double> w(static_cast<std::size_t>(n));
  for (int i = 0; i < m; ++i) {
    double z = std::cos(kPi * (i + 0.75) / (n + 0.5));
    double pp = 0.0;
    for (int it = 0; it < 100; ++it) {
      double p1 = 1.0;
      double p2 = 0.0;
      for (int j = 1; j <= n; ++j) {
        const double p3 = p2;
        p2 = p1;
        p1 = ((2.0 * j - 1.0) * z * p2 - (j - 1.0) * p3) / j;
      }
      pp = n * (z * p1 - p2) / (z * z - 1.0);
      const double z1 = z;
      z = z1 - p1 / pp;
      if (std::abs(z - z1) <= 1e-15) break;
    }
    x[static_cast<std::size_t>(i)] = -z;
    x[static_cast<std::size_t>(n - 1 - i)] = z;
    w[static_cast<std::size_t>(i)] = 2.0 / ((1.0 - z * z) * pp * pp);
    w[static_cast<std::size_t>(n - 1 - i)] = w[static_cast<std::size_t>(i)];
  }
  if (n % 2 == 1) x[static_cast<std::size_t>(m - 1)] = 0.0;
  return QuadratureRule{RuleKind::Legendre, order, std::move(x), std::move(w)};
}

std::shared_ptr<const QuadratureRule> cached_rule(RuleKind kind, int order) {
  static std::mutex mutex;
  static std::map<std::pair<RuleKind, int>, std::shared_ptr<const QuadratureRule>> cache;
  std::lock_guard lock(mutex);
  auto& slot = cache[{kind, order}];
  if (!slot) {
    slot = std::make_shared<const QuadratureRule>(kind == RuleKind::Hermite ? gauss_hermite(order)
                                                                             : gauss_legendre(order));
  }
  return slot;
}

double integrate(const QuadratureRule& rule, const Integrand& f) {
  double sum = 0.0;
  for (std::size_t i = 0; i < rule.nodes.size(); ++i) sum += rule.weights[i] * f(rule.nodes[i]);
  return sum;
}

double integrate(const QuadratureRule& rule, const Integrand& f, double a, double b) {
  if (rule.kind != RuleKind::Legendre)
    throw Error(ErrorCode::InvalidArgument, "interval integration needs a Legendre rule");
  const double half = 0.5 * (b - a);
  const double mid = 0.5 * (b + a);
  double sum = 0.0;
  for (std::size_t i = 0; i < rule.nodes.size(); ++i) sum += rule.weights[i] * f(mid + half * rule.nodes[i]);
  return half * sum;
}

namespace {

constexpr std::array<double, 8> kXgk = {
    0.991455371120812639206854697526329, 0.949107912342758524526189684047851,
    0.864864423359769072789712788640926, 0.741531185599394439863864773280788,
    0.586087235467691130294144845693013, 0.405845151377397166906606412076961,
    0.207784955007898467600689403773245, 0.0};
constexpr std::array<double, 8> kWgk = {
    0.022935322010529224963732008058970, 0.063092092629978553290700663189204,
    0.104790010322250183839876322541518, 0.140653259715525918745189590510238,
    0.169004726639267902826583426598550, 0.190350578064785409913256402421014,
    0.204432940075298892414161999234649, 0.209482141084727828012999174891714};
constexpr std::array<double, 4> kWg = {
    0.129484966168869693270611432679082, 0.279705391489276667901467771423780,
    0.381830050505118944950369775488975, 0.417959183673469387755102040816327};

struct Segment {
  double a;
  double b;
  double value;
  double error;
  bool operator<(const Segment& other) const { return error < other.error; }
};

Segment kronrod15(const Integrand& f, double a, double b) {
  const double center = 0.5 * (a + b);
  const double half = 0.5 * (b - a);
  const double fc = f(center);
  double resk = fc * kWgk[7];
  double resg = fc * kWg[3];
  for (int j = 0; j < 7; ++j) {
    const double dx = half * kXgk[static_cast<std::size_t>(j)];
    const double fsum = f(center - dx) + f(center + dx);
    resk += kWgk[static_cast<std::size_t>(j)] * fsum;
    if (j % 2 == 1) resg += kWg[static_cast<std::size_t>(j / 2)] * fsum;
  }
  return Segment{a, b, resk * half, std::abs((resk - resg) * half)};
}

IntegrationResult adaptive_finite(const Integrand& f, double a, double b, const Tolerance& tol) {
  std::priority_queue<Segment> heap;
  Segment first = kronrod15(f, a, b);
  double total = first.value;
  double error = first.error;
  int evaluations = 15;
  heap.push(first);
  int subdivisions = 0;
  auto target = [&] { return std::max({tol.abs, tol.rel * std::abs(total), 50.0 * kEps * std::abs(total)}); };
  while (error > target()) {
    if (subdivisions >= tol.max_subdivisions) {
      throw Error(ErrorCode::ToleranceNotMet,
                  "adaptive quadrature exhausted " + std::to_string(tol.max_subdivisions) +
                      " subdivisions (error estimate " + std::to_string(error) + ")");
    }
    const Segment worst = heap.top();
    heap.pop();
    const double mid = 0.5 * (worst.a + worst.b);
    if (!(mid > worst.a && mid < worst.b)) {
      // Interval cannot be split further in floating point; accept it.
      error -= worst.error;
      Segment frozen = worst;
      frozen.error = 0.0;
      heap.push(frozen);
      if (heap.top().error == 0.0) break;
      continue;
    }
    const Segment left = kronrod15(f, worst.a, mid);
    const Segment right = kronrod15(f, mid, worst.b);
    evaluations += 30;
    total += left.value + right.value - worst.value;
    error += left.error + right.error - worst.error;
    heap.push(left);
    heap.push(right);
    ++subdivisions;
    if (subdivisions % 64 == 0) {
      // Re-sum to shed accumulated cancellation in the running totals.
      std::priority_queue<Segment> copy = heap;
      total = 0.0;
      error = 0.0;
      while (!copy.empty()) {
        total += copy.top().value;
        error += copy.top().error;
        copy.pop();
      }
    }
  }
  return IntegrationResult{total, error, evaluations};
}

}  // namespace

IntegrationResult integrate_adaptive(const Integrand& f, double a, double b, const Tolerance& tol) {
  if (a == b) return {};
  if (a > b) {
    IntegrationResult r = integrate_adaptive(f, b, a, tol);
    r.value = -r.value;
    return r;
  }
  const bool lo_inf = std::isinf(a);
  const bool hi_inf = std::isinf(b);
  if (lo_inf && hi_inf) {
    auto g = [&f](double t) {
      const double d = 1.0 - t * t;
      const double x = t / d;
      return f(x) * (1.0 + t * t) / (d * d);
    };
    return adaptive_finite(g, -1.0, 1.0, tol);
  }
  if (hi_inf) {
    auto g = [&f, a](double t) {
      const double d = 1.0 - t;
      return f(a + t / d) / (d * d);
    };
    return adaptive_finite(g, 0.0, 1.0, tol);
  }
  if (lo_inf) {
    auto g = [&f, b](double t) {
      const double d = 1.0 - t;
      return f(b - t / d) / (d * d);
    };
    return adaptive_finite(g, 0.0, 1.0, tol);
  }
  return adaptive_finite(f, a, b, tol);
}

IntegrationResult integrate_adaptive_2d(const Integrand2& f, double ax, double bx, double ay,
                                        double by, const Tolerance& tol) {
  Tolerance inner = tol;
  inner.abs = 0.1 * tol.abs;
  inner.rel = 0.1 * tol.rel;
  int evaluations = 0;
  double inner_error = 0.0;
  auto row = [&](double x) {
    IntegrationResult r = integrate_adaptive([&](double y) { return f(x, y); }, ay, by, inner);
    evaluations += r.evaluations;
    inner_error = std::max(inner_error, r.error);
    return r.value;
  };
  IntegrationResult outer = integrate_adaptive(row, ax, bx, tol);
  outer.evaluations = evaluations;
  outer.error += inner_error * (std::isinf(ax) || std::isinf(bx) ? 1.0 : (bx - ax));
  return outer;
}

}  // namespace conespec::special
