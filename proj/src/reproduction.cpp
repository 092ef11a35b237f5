#include "reproduction.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <numbers>

#include "errors.hpp"
#include "geometry.hpp"
#include "heat_kernel.hpp"
#include "scaling.hpp"
#include "special_fn.hpp"
#include "spectral.hpp"

namespace conespec {

namespace {

constexpr double kPi = std::numbers::pi;

class Checks {
 public:
  void add(std::string name, double expected, double tolerance, const std::function<double()>& compute,
           std::string note = {}) {
    CheckRow row{std::move(name), 0.0, expected, tolerance, false, std::move(note)};
    try {
      row.computed = compute();
      row.pass = std::abs(row.computed - row.expected) <= row.tolerance;
    } catch (const std::exception& e) {
      row.computed = std::nan("");
      row.note = e.what();
    }
    rows_.push_back(std::move(row));
  }

  // Residual-style check: expected 0, passes below `tolerance`.
  void residual(std::string name, double tolerance, const std::function<double()>& compute) {
    add(std::move(name), 0.0, tolerance, compute);
  }

  std::vector<CheckRow> take() { return std::move(rows_); }

 private:
  std::vector<CheckRow> rows_;
};

std::string fmt(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%g", v);
  return buf;
}

void bessel_suite(Checks& c) {
  c.add("I_0(1)", 1.2660658777520084, 1e-14, [] { return special::bessel_i(0.0, 1.0); });
  c.residual("sum_k I_2k(2) generating identity", 1e-12, [] {
    double s = 0.0;
    for (int k = 1; k <= 40; ++k) s += special::bessel_i(2.0 * k, 2.0);
    return std::abs(s - (0.25 * (std::exp(2.0) + std::exp(-2.0)) - 0.5 * special::bessel_i(0.0, 2.0)));
  });
  c.residual("Bessel recurrence on grid (relative)", 1e-10, [] {
    double worst = 0.0;
    for (int nu = 1; nu <= 10; ++nu)
      for (double x : {0.5, 1.0, 2.0, 5.0, 10.0, 20.0}) {
        const double lo = special::bessel_i(nu - 1.0, x);
        const double r = lo - special::bessel_i(nu + 1.0, x) - 2.0 * nu / x * special::bessel_i(nu, x);
        worst = std::max(worst, std::abs(r) / lo);
      }
    return worst;
  });
  for (double r : {0.01, 1.0, 3.0}) {
    c.residual("quadrant arc trace identity r=" + fmt(r), 1e-10,
               [r] { return arc_trace_identity_residual(r, {60, 1e-10}); });
  }
}

void mzf_suite(Checks& c, bool orthant3) {
  c.residual("Mzf FreeSpace(2) z=0.5", 1e-8, [] { return mzf_numeric_residual({KernelKind::FreeSpace, 2}, 0.5); });
  for (double z : {0.2, 0.5, 0.8})
    c.residual("Mzf Orthant(2) z=" + fmt(z), 1e-6, [z] { return mzf_numeric_residual({KernelKind::Orthant, 2}, z); });
  if (orthant3)
    c.residual("Mzf Orthant(3) z=0.5", 1e-6, [] { return mzf_numeric_residual({KernelKind::Orthant, 3}, 0.5); });
  c.add("Poisson kernel normalization n=3 z=0.5", 1.0, 1e-8, [] { return poisson_normalization(3, 0.5); });
  c.residual("Poisson kernel z^1 coefficient n=3 theta=0.7", 1e-8,
             [] { return poisson_first_coefficient_residual(3, 0.7); });
}

void mhk_suite(Checks& c) {
  const char* domains[] = {"T(3)", "Sphere(2)", "HalfSphere(3)"};
  for (const char* text : domains)
    for (double s : {0.3, 0.5, 1.0})
      c.residual(std::string("Mhk ") + text + " s=" + fmt(s), 1e-5, [text, s] {
        return mhk_identity_residual(parse_domain(text), BoundaryCondition::Dirichlet, s, {60, 1e-5});
      });
}

void functional_suite(Checks& c) {
  for (int n = 2; n <= 5; ++n) {
    for (const char* family : {"T", "Sphere", "HalfSphere"}) {
      const std::string text = std::string(family) + "(" + std::to_string(n) + ")";
      for (double z : {0.3, 0.5, 0.7})
        c.residual("functional equation " + text + " z=" + fmt(z), 1e-12, [text, n, z] {
          const ClosedFormM m = domain_m(parse_domain(text), BoundaryCondition::Dirichlet);
          return functional_equation_check(m, n, asymptotics_from_form(m).gamma, z);
        });
    }
    for (double z : {0.3, 0.5, 0.7})
      c.residual("Dirichlet/Neumann pairing T(" + std::to_string(n) + ") z=" + fmt(z), 1e-12, [n, z] {
        const DomainExpr d(TDomain{n});
        return dirichlet_neumann_pairing_check(domain_m(d, BoundaryCondition::Dirichlet),
                                               domain_m(d, BoundaryCondition::Neumann), n, z);
      });
  }
}

void sizes_suite(Checks& c) {
  for (int n = 2; n <= 6; ++n) {
    const double expected = sphere_size(n) / (n + 1);
    c.add("|T_(1/2)^" + std::to_string(n - 1) + "|", expected, 1e-8 * expected,
          [n] { return regular_t_size(n, 0.5); });
  }
  for (int i = 1; i <= 9; ++i) {
    const double rho = 0.1 * i;
    const double expected = 3.0 * std::acos(-rho) - kPi;
    c.add("|T_(" + fmt(rho) + ")^2|", expected, 1e-9 * expected, [rho] { return regular_t_size(3, rho); });
  }
  for (int n : {3, 4, 5})
    for (double rho : {0.2, 0.4})
      c.residual("recursion ODE n=" + std::to_string(n) + " rho=" + fmt(rho), 1e-5,
                 [n, rho] { return regular_t_recursion_residual(n, rho); });
  for (int n : {4, 5, 6})
    c.add("small-rho residual ratio r(1e-2)/r(1e-3) n=" + std::to_string(n), 1000.0, 250.0,
          [n] { return regular_t_small_rho_residual(n, 1e-2) / regular_t_small_rho_residual(n, 1e-3); },
          "third-order remainder scales by 10^3");
  c.add("f_3(0.99) closed form", 2.0 * (3.0 * std::acos(-0.99) - kPi) / kPi, 1e-9,
        [] { return regular_t_fraction(3, 0.99); });
  for (int n = 2; n <= 5; ++n) {
    const double target = std::ldexp(1.0, n - 1);
    c.add("f_" + std::to_string(n) + "(0.9999) near 2^(n-1)", target, 0.05 * target,
          [n] { return regular_t_fraction(n, 0.9999); });
    c.add("f_" + std::to_string(n) + " increasing below 2^(n-1) on 0.99 < 0.9999", 1.0, 0.0, [n, target] {
      const double lo = regular_t_fraction(n, 0.99);
      const double hi = regular_t_fraction(n, 0.9999);
      return lo < hi && hi < target ? 1.0 : 0.0;
    });
  }
  c.add("orthant fraction identity n=4", 1.0 / 16.0, 1e-3, [] {
    std::vector<std::vector<double>> m(4, std::vector<double>(4, 0.0));
    for (int i = 0; i < 4; ++i) m[i][i] = 1.0;
    return general_t_size_fraction(m).value;
  });
  c.add("orthant fraction regular rho=1/2 n=4", 1.0 / 5.0, 3e-3, [] {
    std::vector<std::vector<double>> m(4, std::vector<double>(4, 0.5));
    for (int i = 0; i < 4; ++i) m[i][i] = 1.0;
    return general_t_size_fraction(m).value;
  });
}

void weyl_suite(Checks& c) {
  const DomainExpr t3(TDomain{3});
  const ClosedFormM m = domain_m(t3, BoundaryCondition::Dirichlet);
  c.add("W(12) on T(3)", 15.0, 0.0, [&] { return double(counting_function(expand_series(m, 40.0), 12.0)); });
  c.add("Weyl expansion at nu=12 on T(3)", 15.04, 0.005,
        [&] { return weyl_counting(asymptotics_from_form(m), 3, 12.0); });
  c.residual("Weyl relative error at midpoints nu in [12,30]", 0.01, [&] {
    const SpectralSeries s = expand_series(m, 40.0);
    const AsymptoticCoeffs a = asymptotics_from_form(m);
    double worst = 0.0;
    for (std::size_t i = 0; i + 1 < s.terms.size(); ++i) {
      const double mid = 0.5 * (s.terms[i].nu + s.terms[i + 1].nu);
      if (mid < 12.0 || mid > 30.0) continue;
      const double w = double(counting_function(s, mid));
      worst = std::max(worst, std::abs(w - weyl_counting(a, 3, mid)) / w);
    }
    return worst;
  });
}

std::vector<double> distinct_levels(const std::vector<double>& v) {
  std::vector<double> out;
  for (double x : v)
    if (out.empty() || std::abs(x - out.back()) > 1e-9) out.push_back(x);
  return out;
}

}  // namespace

const std::vector<std::string>& verify_suites() {
  static const std::vector<std::string> names = {"bessel", "mzf", "mhk", "functional", "sizes", "weyl"};
  return names;
}

std::vector<CheckRow> run_verify(const std::string& suite, bool include_orthant3) {
  const auto& names = verify_suites();
  if (suite != "all" && std::find(names.begin(), names.end(), suite) == names.end())
    throw Error(ErrorCode::InvalidArgument, "unknown verification suite '" + suite + "'");
  Checks c;
  auto want = [&](const char* name) { return suite == "all" || suite == name; };
  if (want("bessel")) bessel_suite(c);
  if (want("mzf")) mzf_suite(c, include_orthant3);
  if (want("mhk")) mhk_suite(c);
  if (want("functional")) functional_suite(c);
  if (want("sizes")) sizes_suite(c);
  if (want("weyl")) weyl_suite(c);
  return c.take();
}

std::vector<CheckRow> paper_table() {
  const auto D = BoundaryCondition::Dirichlet;
  Checks c;
  const DomainExpr tetra(RegularT{3, 0.5});
  const DomainExpr octant(TDomain{3});
  auto first = [&](const DomainExpr& t, const DomainExpr& r, Method m) { return estimate(t, r, D, m, 1).rows[0]; };

  c.add("tetrahedral nu_1 (linear)", 1.826, 0.001, [&] { return first(tetra, octant, Method::Linear).nu; });
  c.add("tetrahedral lambda_1 (linear)", 5.162, 0.002, [&] { return first(tetra, octant, Method::Linear).lambda; },
        "Rayleigh-type reference value 5.159");
  c.add("tetrahedral lambda_1 (quadratic)", 5.1606, 0.0005,
        [&] { return first(tetra, octant, Method::Quadratic).lambda; });

  const DomainExpr cap(Cap{kPi / 3.0, 3});
  const DomainExpr half(HalfSphere{3});
  c.add("cap theta=pi/3 lambda_1 (linear)", 4.949, 0.001, [&] { return first(cap, half, Method::Linear).lambda; },
        "reference value 4.936");
  c.add("cap theta=pi/3 lambda_1 (quadratic)", 4.949, 0.001,
        [&] { return first(cap, half, Method::Quadratic).lambda; });

  const double phi = 2.0 * kPi / 3.0;
  const DomainExpr sector(Sector{std::acos(-1.0 / std::sqrt(3.0)), phi});
  const DomainExpr sector_ref = join(DomainExpr(Arc{phi}), DomainExpr(AtomT0{}));
  c.add("sector lambda_1 (linear)", 5.1046, 0.001, [&] { return first(sector, sector_ref, Method::Linear).lambda; },
        "reference value 5.0046");
  c.add("sector lambda_1 (quadratic)", 5.0187, 0.001,
        [&] { return first(sector, sector_ref, Method::Quadratic).lambda; });

  const FlatDomain disk{kPi, 2.0 * kPi, 2.0 * kPi, {}};
  const double bessel_zeros[] = {2.4048, 3.8317, 5.1356};
  const double cap_flat[] = {2.4142, 3.8284, 5.2426};
  for (int i = 0; i < 3; ++i)
    c.add("flat cap nu_" + std::to_string(i + 1) + " delta", cap_flat[i], 0.0005,
          [&, i] {
            const auto g = catalog_geometry(half, D);
            const auto s = reference_series(domain_m(half, D), 10);
            return distinct_levels(flat_limit(disk, g, s, Method::Linear, 10)).at(i);
          },
          "disk sqrt(lambda) delta = " + fmt(bessel_zeros[i]));

  const FlatDomain triangle{std::sqrt(3.0) / 4.0, 3.0, 0.0, {{kPi / 3, 1.0}, {kPi / 3, 1.0}, {kPi / 3, 1.0}}};
  auto triangle_levels = [&](Method m) {
    const auto g = catalog_geometry(octant, D);
    const auto s = reference_series(domain_m(octant, D), 6);
    return distinct_levels(flat_limit(triangle, g, s, m, 6));
  };
  c.add("flat equilateral sqrt(lambda_1) delta (linear)", 7.273, 0.001,
        [&] { return triangle_levels(Method::Linear).at(0); }, "Lame 7.255");
  c.add("flat equilateral sqrt(lambda_2) delta (linear)", 11.083, 0.001,
        [&] { return triangle_levels(Method::Linear).at(1); }, "Lame 11.082");
  c.add("flat equilateral sqrt(lambda_1) delta (quadratic)", 7.2613, 0.0005,
        [&] { return triangle_levels(Method::Quadratic).at(0); }, "Lame 7.255");

  for (int n = 2; n <= 6; ++n) {
    const double expected = sphere_size(n) / (n + 1);
    c.add("|T_(1/2)^" + std::to_string(n - 1) + "| = |S^" + std::to_string(n - 1) + "|/" + std::to_string(n + 1),
          expected, 1e-8 * expected, [n] { return regular_t_size(n, 0.5); });
  }
  return c.take();
}

}  // namespace conespec
