#include <doctest.h>

#include <cmath>
#include <numbers>
#include <string>
#include <vector>

#include "domain.hpp"
#include "errors.hpp"
#include "geometry.hpp"
#include "spectral.hpp"

using namespace conespec;

namespace {

constexpr double kPi = std::numbers::pi;
constexpr auto D = BoundaryCondition::Dirichlet;
constexpr auto N = BoundaryCondition::Neumann;

DomainGeometry geom(const std::string& text, BoundaryCondition bc = D) {
  return catalog_geometry(parse_domain(text), bc);
}

double rel_err(double computed, double expected) { return std::abs(computed - expected) / std::abs(expected); }

double corner_total(const DomainGeometry& g) {
  const auto h = heat_coeffs(g);
  return h.a2 - g.bulk_R_integral / 6.0 - g.boundary_K_integral / 3.0;
}

std::vector<std::vector<double>> regular_matrix(int n, double rho) {
  std::vector<std::vector<double>> m(n, std::vector<double>(n, rho));
  for (int i = 0; i < n; ++i) m[i][i] = 1.0;
  return m;
}

const std::vector<std::string>& exact_catalog() {
  static const std::vector<std::string> items = {
      "Sphere(2)", "Sphere(3)",        "Sphere(4)",     "Sphere(5)",   "T(2)",        "T(3)",
      "T(4)",      "T(5)",             "T(6)",          "HalfSphere(2)", "HalfSphere(3)", "HalfSphere(4)",
      "S0 * T0",   "Arc(pi/3)",        "Arc(2*pi/3)",   "Arc(1.3)",    "Arc(5)",      "RegularT(2, 0.5)",
      "Arc(1) * T0", "Arc(2*pi/3) * T0", "T(2) * Arc(pi/4)", "HalfSphere(3) * T0", "Sphere(2) * Arc(2)",
      "Arc(1) * Arc(2)"};
  return items;
}

}  // namespace

TEST_CASE("sphere sizes") {
  CHECK(sphere_size(1) == 2.0);
  CHECK(rel_err(sphere_size(2), 2.0 * kPi) < 1e-15);
  CHECK(rel_err(sphere_size(3), 4.0 * kPi) < 1e-15);
  CHECK(rel_err(sphere_size(4), 2.0 * kPi * kPi) < 1e-15);
  CHECK(rel_err(sphere_size(5), 8.0 * kPi * kPi / 3.0) < 1e-15);
}

TEST_CASE("catalog geometry examples") {
  auto g = geom("RegularT(3, 0.5)");
  CHECK(rel_err(g.area, kPi) < 1e-9);
  CHECK(rel_err(g.boundary, 3.0 * std::acos(-1.0 / 3.0)) < 1e-9);
  CHECK(g.boundary == doctest::Approx(5.7319).epsilon(1e-4));

  g = geom("T(3)");
  CHECK(rel_err(g.area, kPi / 2.0) < 1e-14);
  CHECK(rel_err(g.boundary, 3.0 * kPi / 2.0) < 1e-14);
  CHECK(g.corners.size() == 3);

  g = geom("Cap(pi/3)");
  CHECK(rel_err(g.area, kPi) < 1e-14);
  CHECK(rel_err(g.boundary, kPi * std::sqrt(3.0)) < 1e-14);
  CHECK(rel_err(g.boundary_K_integral, 2.0 * kPi * std::cos(kPi / 3.0)) < 1e-14);
  CHECK(g.corners.empty());

  g = geom("Sector(theta=1.1, phi=2)");
  CHECK(rel_err(g.area, 2.0 * (1.0 - std::cos(1.1))) < 1e-14);
  CHECK(rel_err(g.boundary, 2.0 * std::sin(1.1) + 2.2) < 1e-14);
  CHECK(g.corners.size() == 3);

  g = geom("Sphere(3)");
  CHECK(g.boundary == 0.0);
  CHECK(g.corners.empty());
}

TEST_CASE("caps on higher spheres") {
  const double theta = 0.9;
  const auto g = geom("Cap(theta=0.9, n=4)");
  CHECK(rel_err(g.area, 2.0 * kPi * (theta - std::sin(theta) * std::cos(theta))) < 1e-12);
  CHECK(rel_err(g.boundary, 4.0 * kPi * std::sin(theta) * std::sin(theta)) < 1e-14);
  CHECK(rel_err(g.boundary_K_integral, 2.0 / std::tan(theta) * g.boundary) < 1e-14);
}

TEST_CASE("join geometry from the cone faces") {
  const double phi = 1.0;
  const auto g = geom("Arc(1) * T0");
  CHECK(rel_err(g.area, phi) < 1e-14);
  CHECK(rel_err(g.boundary, phi + kPi) < 1e-14);
  CHECK(std::abs(g.boundary_K_integral) < 1e-14);
  double corner_angles = 0.0;
  for (const auto& c : g.corners) corner_angles += c.angle * c.measure;
  CHECK(rel_err(corner_angles, phi + kPi) < 1e-14);

  const auto h = geom("HalfSphere(3)");
  CHECK(rel_err(h.area, 2.0 * kPi) < 1e-14);
  CHECK(rel_err(h.boundary, 2.0 * kPi) < 1e-14);
  CHECK(h.corners.empty());
}

TEST_CASE("unsupported geometry") {
  CHECK_THROWS_AS(geom("Cap(1) * T0"), Error);
  CHECK_THROWS_AS(geom("T0"), Error);
}

TEST_CASE("size fractions multiply under join") {
  const std::vector<std::string> parts = {"S0", "T0", "Arc(1)", "Arc(2*pi/3)", "T(2)", "Sphere(2)", "HalfSphere(3)"};
  auto fraction_of = [](const std::string& text) {
    const auto d = parse_domain(text);
    if (d.ambient_dim() == 1) return std::holds_alternative<AtomS0>(d.node()) ? 1.0 : 0.5;
    const auto g = catalog_geometry(d, D);
    return g.area / sphere_size(g.n);
  };
  for (const auto& a : parts)
    for (const auto& b : parts) {
      const std::string joined = a + " * " + b;
      INFO(joined);
      CHECK(rel_err(fraction_of(joined), fraction_of(a) * fraction_of(b)) < 1e-13);
    }
}

TEST_CASE("gamma is additive and c0/2 multiplicative under join") {
  const std::vector<std::pair<std::string, std::string>> pairs = {
      {"T(2)", "Arc(1)"}, {"HalfSphere(3)", "T(2)"}, {"Arc(2)", "Arc(0.7)"}, {"Sphere(2)", "T(3)"}};
  for (const auto& [a, b] : pairs) {
    const auto sa = scaling_inputs(geom(a));
    const auto sb = scaling_inputs(geom(b));
    const auto sj = scaling_inputs(geom(a + " * " + b));
    INFO(a << " * " << b);
    CHECK(std::abs(sj.gamma - (sa.gamma + sb.gamma)) < 1e-12);
    CHECK(rel_err(sj.c0 / 2.0, (sa.c0 / 2.0) * (sb.c0 / 2.0)) < 1e-13);
  }
}

TEST_CASE("regular T sizes") {
  for (int n = 2; n <= 6; ++n) {
    INFO("n = " << n);
    CHECK(rel_err(regular_t_size(n, 0.5), sphere_size(n) / (n + 1)) < 1e-8);
    CHECK(rel_err(regular_t_size(n, 0.0), std::ldexp(sphere_size(n), -n)) < 1e-15);
    CHECK(rel_err(regular_t_boundary_size(n, 0.0), n * std::ldexp(sphere_size(n - 1), 1 - n)) < 1e-15);
  }
  for (double rho : {0.05, 0.3, 0.6, 0.95}) {
    INFO("rho = " << rho);
    CHECK(rel_err(regular_t_size(2, rho), std::acos(-rho)) < 1e-9);
    CHECK(rel_err(regular_t_size(3, rho), 3.0 * std::acos(-rho) - kPi) < 1e-9);
    CHECK(rel_err(regular_t_boundary_size(3, rho), 3.0 * std::acos(-rho / (1.0 + rho))) < 1e-9);
  }
  CHECK(rel_err(regular_t_boundary_size(3, 0.5), 3.0 * std::acos(-1.0 / 3.0)) < 1e-9);
}

TEST_CASE("regular T fraction near rho = 1") {
  for (int n = 2; n <= 5; ++n) {
    double previous = 1.0;
    for (double rho : {0.5, 0.9, 0.99, 0.999, 0.9999}) {
      const double f = regular_t_fraction(n, rho);
      CHECK(f > previous);
      CHECK(f < std::ldexp(1.0, n - 1));
      previous = f;
    }
    CHECK(rel_err(previous, std::ldexp(1.0, n - 1)) < 0.05);
  }
  CHECK(rel_err(regular_t_fraction(2, 0.999), 2.0 * std::acos(-0.999) / kPi) < 1e-9);
  CHECK(rel_err(regular_t_fraction(3, 0.999), 2.0 * (3.0 * std::acos(-0.999) - kPi) / kPi) < 1e-9);
}

TEST_CASE("regular T fraction rejects bad arguments") {
  CHECK_THROWS_AS(regular_t_fraction(3, 1.0), Error);
  CHECK_THROWS_AS(regular_t_fraction(3, -0.1), Error);
  CHECK_THROWS_AS(regular_t_fraction(-1, 0.5), Error);
}

TEST_CASE("recursion and small-rho expansion") {
  CHECK(regular_t_recursion_residual(4, 0.3) < 1e-5);
  CHECK(regular_t_recursion_residual(3, 0.4) < 1e-5);
  for (int n = 3; n <= 6; ++n) {
    const double ratio = regular_t_small_rho_residual(n, 1e-2) / regular_t_small_rho_residual(n, 1e-3);
    INFO("n = " << n);
    CHECK(ratio > 750.0);
    CHECK(ratio < 1250.0);
  }
}

TEST_CASE("orthant fractions") {
  for (int n = 1; n <= 3; ++n) CHECK(general_t_size_fraction(regular_matrix(n, 0.0)).value == std::ldexp(1.0, -n));
  CHECK(std::abs(general_t_size_fraction(regular_matrix(3, 0.5)).value - 0.25) < 1e-15);
  CHECK(std::abs(general_t_size_fraction(regular_matrix(2, 0.3)).value - std::acos(-0.3) / (2.0 * kPi)) < 1e-15);
  for (int n = 4; n <= 5; ++n) {
    const auto r = general_t_size_fraction(regular_matrix(n, 0.0));
    CHECK(std::abs(r.value - std::ldexp(1.0, -n)) < 1e-3);
    CHECK(r.std_error <= 1e-3);
    const auto q = general_t_size_fraction(regular_matrix(n, 0.5));
    CHECK(std::abs(q.value - 1.0 / (n + 1.0)) < 3e-3);
  }
  const auto r = general_t_size_fraction(regular_matrix(4, 0.3));
  CHECK(std::abs(r.value - regular_t_size(4, 0.3) / sphere_size(4)) < 3e-3);
}

TEST_CASE("orthant fraction input checks") {
  CHECK_THROWS_AS(general_t_size_fraction(regular_matrix(3, -0.6)), Error);
  CHECK_THROWS_AS(general_t_size_fraction({{1.0, 0.2}, {0.3, 1.0}}), Error);
  CHECK_THROWS_AS(general_t_size_fraction({}), Error);
}

TEST_CASE("heat coefficients") {
  auto h = heat_coeffs(geom("T(3)"));
  CHECK(rel_err(h.a0, kPi / 2.0) < 1e-15);
  CHECK(rel_err(h.a2, 11.0 * kPi / 12.0) < 1e-14);
  CHECK(h.a1 < 0.0);
  CHECK(rel_err(h.a1, -std::sqrt(kPi) / 2.0 * 1.5 * kPi) < 1e-14);
  CHECK(heat_coeffs(geom("T(3)", N)).a1 > 0.0);

  h = heat_coeffs(geom("Sphere(3)"));
  CHECK(rel_err(h.a2, 4.0 * kPi / 3.0) < 1e-14);
  CHECK(h.a1 == 0.0);

  h = heat_coeffs(geom("RegularT(3, 0.5)"));
  CHECK(rel_err(h.a2, 3.0 * kPi / 4.0) < 1e-9);
}

TEST_CASE("T(n) corner contributions") {
  for (int n = 3; n <= 7; ++n) {
    const auto g = geom("T(" + std::to_string(n) + ")");
    INFO("n = " << n);
    CHECK(rel_err(corner_total(g), 0.25 * n * (n - 1.0) * (n - 2.0) * g.area) < 1e-12);
  }
}

TEST_CASE("scaling inputs") {
  auto s = scaling_inputs(geom("T(3)"));
  CHECK(std::abs(s.gamma - 3.0) < 1e-14);
  CHECK(std::abs(s.p + 1.0) < 1e-14);
  CHECK(std::abs(s.q + 2.0 / 3.0) < 1e-14);

  s = scaling_inputs(geom("RegularT(3, 0.5)"));
  CHECK(rel_err(s.gamma, 3.0 * std::acos(-1.0 / 3.0) / kPi) < 1e-9);
  CHECK(s.gamma == doctest::Approx(1.8245).epsilon(1e-4));
  CHECK(s.p == doctest::Approx(-0.41225).epsilon(1e-4));

  for (int n = 2; n <= 6; ++n) {
    const auto h = scaling_inputs(geom("HalfSphere(" + std::to_string(n) + ")"));
    CHECK(std::abs(h.gamma - 1.0) < 1e-14);
    const auto hn = scaling_inputs(geom("HalfSphere(" + std::to_string(n) + ")", N));
    CHECK(std::abs(hn.gamma + 1.0) < 1e-14);
  }
  const auto c = scaling_inputs(geom("Cap(pi/3)"));
  CHECK(rel_err(c.c0, 0.5) < 1e-14);
  CHECK(std::abs(c.c1 + (1.0 + c.gamma) * c.c0 / 2.0) < 1e-15);
}

TEST_CASE("geometry agrees with the closed-form asymptotics") {
  for (const auto& text : exact_catalog())
    for (auto bc : {D, N}) {
      const auto d = parse_domain(text);
      const auto g = catalog_geometry(d, bc);
      const auto s = scaling_inputs(g);
      const auto b = geometric_b_coeffs(g);
      const auto a = asymptotics_from_form(domain_m(d, bc));
      INFO(text << (bc == D ? " Dirichlet" : " Neumann"));
      CHECK(std::abs(s.c0 - a.c0) < 1e-10 * std::abs(a.c0));
      CHECK(std::abs(s.c1 - a.c1) < 1e-10 * std::max(1.0, std::abs(a.c1)));
      CHECK(std::abs(s.gamma - a.gamma) < 1e-10);
      CHECK(std::abs(b.b0 - a.b0) < 1e-10 * std::abs(a.b0));
      CHECK(std::abs(b.b1 - a.b1) < 1e-10 * std::max(1.0, std::abs(a.b1)));
      if (g.n >= 3) CHECK(std::abs(b.b2 - a.b2) < 1e-9 * std::max(1.0, std::abs(a.b2)));
    }
}
