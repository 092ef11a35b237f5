#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <map>
#include <numbers>
#include <random>
#include <string>
#include <vector>

#include "domain.hpp"
#include "errors.hpp"
#include "spectral.hpp"

using namespace conespec;

namespace {

constexpr double kPi = std::numbers::pi;
constexpr auto D = BoundaryCondition::Dirichlet;
constexpr auto N = BoundaryCondition::Neumann;

long long binomial(long long n, long long k) {
  if (k < 0 || n < k) return 0;
  long long r = 1;
  for (long long i = 1; i <= k; ++i) r = r * (n - k + i) / i;
  return r;
}

ClosedFormM m_of(const std::string& text, BoundaryCondition bc = D) { return domain_m(parse_domain(text), bc); }

SpectralSeries series_of(const std::string& text, double nu_max, BoundaryCondition bc = D) {
  return expand_series(m_of(text, bc), nu_max);
}

// Plain double loop over both term lists; exponents within 1e-9 share a key.
std::vector<SpectralTerm> naive_product(const std::vector<SpectralTerm>& a, const std::vector<SpectralTerm>& b,
                                        double cutoff) {
  std::vector<SpectralTerm> out;
  for (const auto& x : a)
    for (const auto& y : b) {
      const double nu = x.nu + y.nu;
      if (nu > cutoff + 1e-9) continue;
      bool merged = false;
      for (auto& t : out)
        if (std::abs(t.nu - nu) < 1e-9) {
          t.multiplicity += x.multiplicity * y.multiplicity;
          merged = true;
          break;
        }
      if (!merged) out.push_back({nu, x.multiplicity * y.multiplicity});
    }
  std::sort(out.begin(), out.end(), [](const SpectralTerm& l, const SpectralTerm& r) { return l.nu < r.nu; });
  return out;
}

void check_same_terms(const std::vector<SpectralTerm>& got, const std::vector<SpectralTerm>& want) {
  REQUIRE(got.size() == want.size());
  for (std::size_t i = 0; i < got.size(); ++i) {
    INFO("term " << i << ": nu " << got[i].nu << " vs " << want[i].nu);
    CHECK(std::abs(got[i].nu - want[i].nu) < 1e-9);
    CHECK(got[i].multiplicity == want[i].multiplicity);
  }
}

const std::vector<std::string>& exact_catalog() {
  static const std::vector<std::string> items = {
      "S0",        "T0",        "Sphere(2)",     "Sphere(3)",     "Sphere(4)",          "T(2)",     "T(3)",
      "T(4)",      "T(5)",      "HalfSphere(2)", "HalfSphere(3)", "HalfSphere(4)",      "Arc(pi/3)", "Arc(2*pi/3)",
      "Arc(pi/2)", "Arc(1.3)",  "Arc(5)",        "S0 * T0",       "RegularT(2, 0.5)",   "T(2) * Arc(pi/4)",
      "HalfSphere(3) * T0",     "Sphere(2) * Arc(2*pi/3)"};
  return items;
}

}  // namespace

TEST_CASE("atomic spectral functions") {
  CHECK(expand_series(atomic_m(parse_domain("S0"), D), 5).terms.size() == 2);
  const auto s0 = expand_series(atomic_m(parse_domain("S0"), D), 5);
  check_same_terms(s0.terms, {{0, 1}, {1, 1}});
  check_same_terms(expand_series(atomic_m(parse_domain("T0"), D), 5).terms, {{1, 1}});
  check_same_terms(expand_series(atomic_m(parse_domain("T0"), N), 5).terms, {{0, 1}});
  check_same_terms(expand_series(atomic_m(parse_domain("Arc(pi/2)"), D), 7).terms, {{2, 1}, {4, 1}, {6, 1}});
  check_same_terms(expand_series(atomic_m(parse_domain("Arc(pi/2)"), N), 5).terms, {{0, 1}, {2, 1}, {4, 1}});
  CHECK_THROWS_AS(atomic_m(parse_domain("Cap(1)"), D), Error);
}

TEST_CASE("join of two Dirichlet T0 is the quadrant arc") {
  const auto t0 = atomic_m(parse_domain("T0"), D);
  const auto joined = join_m(t0, t0);
  CHECK(joined.prefactor_exponent == 2.0);
  REQUIRE(joined.factors.size() == 1);
  CHECK(joined.factors[0] == Factor{2.0, -1});
  check_same_terms(expand_series(joined, 12).terms, expand_series(atomic_m(parse_domain("Arc(pi/2)"), D), 12).terms);
}

TEST_CASE("factor forms of catalog domains") {
  for (int n = 2; n <= 6; ++n) {
    const auto t = m_of("T(" + std::to_string(n) + ")");
    CHECK(t.prefactor_exponent == n);
    REQUIRE(t.factors.size() == 1);
    CHECK(t.factors[0] == Factor{2.0, 1 - n});

    const auto tn = m_of("T(" + std::to_string(n) + ")", N);
    CHECK(tn.prefactor_exponent == 0.0);
    CHECK(tn.factors == t.factors);

    for (auto bc : {D, N}) {
      const auto s = m_of("Sphere(" + std::to_string(n) + ")", bc);
      CHECK(s.prefactor_exponent == 0.0);
      CHECK(s.factors == std::vector<Factor>{{1.0, -n}, {2.0, 1}});
    }

    const auto h = m_of("HalfSphere(" + std::to_string(n) + ")");
    CHECK(h.prefactor_exponent == 1.0);
    CHECK(h.factors == std::vector<Factor>{{1.0, 1 - n}});
  }
  const double phi = 2.0 * kPi / 3.0;
  const auto sector = join_m(atomic_m(DomainExpr(Arc{phi}), D), atomic_m(DomainExpr(AtomT0{}), D));
  CHECK(sector.prefactor_exponent == doctest::Approx(1.0 + kPi / phi).epsilon(1e-15));
  CHECK(sector.factors == std::vector<Factor>{{kPi / phi, -1}, {2.0, -1}});
}

TEST_CASE("domain_m rejects domains without a closed form") {
  CHECK_THROWS_AS(m_of("Cap(1)"), Error);
  CHECK_THROWS_AS(m_of("RegularT(3, 0.5)"), Error);
}

TEST_CASE("series examples") {
  const auto sphere = series_of("Sphere(3)", 6);
  REQUIRE(sphere.terms.size() == 7);
  for (int k = 0; k <= 6; ++k) {
    CHECK(sphere.terms[k].nu == k);
    CHECK(sphere.terms[k].multiplicity == 2 * k + 1);
  }
  check_same_terms(series_of("T(3)", 9).terms, {{3, 1}, {5, 2}, {7, 3}, {9, 4}});
  check_same_terms(series_of("Arc(2*pi/3)", 4.6).terms, {{1.5, 1}, {3, 1}, {4.5, 1}});
}

TEST_CASE("T(n) Dirichlet multiplicities are binomial") {
  for (int n = 1; n <= 8; ++n) {
    const auto s = series_of("T(" + std::to_string(n) + ")", 30);
    std::map<long long, long long> expected;
    for (int k = 1; n + 2 * k - 2 <= 30; ++k) expected[n + 2 * k - 2] = binomial(n + k - 3, k - 1);
    if (n == 1) expected = {{1, 1}};
    INFO("n = " << n);
    REQUIRE(s.terms.size() == expected.size());
    for (const auto& t : s.terms) {
      CHECK(t.nu == std::round(t.nu));
      CHECK(t.multiplicity == expected.at(static_cast<long long>(t.nu)));
    }
  }
}

TEST_CASE("Sphere(n) multiplicities are dimensions of harmonic polynomial spaces") {
  for (int n = 2; n <= 8; ++n) {
    const auto s = series_of("Sphere(" + std::to_string(n) + ")", 30);
    INFO("n = " << n);
    REQUIRE(s.terms.size() == 31);
    for (int k = 0; k <= 30; ++k) {
      const long long dim = binomial(k + n - 1, n - 1) - binomial(k + n - 3, n - 1);
      CHECK(s.terms[k].nu == k);
      CHECK(s.terms[k].multiplicity == dim);
    }
  }
}

TEST_CASE("first Dirichlet eigenvalue is simple") {
  for (const auto& text : exact_catalog()) {
    const auto d = parse_domain(text);
    bool has_boundary = false;
    for (const auto& f : expand_named(d).factors()) has_boundary = has_boundary || !std::holds_alternative<AtomS0>(f.node());
    if (!has_boundary) continue;
    INFO(text);
    CHECK(series_of(text, 20).terms.front().multiplicity == 1);
  }
}

TEST_CASE("pole order equals ambient dimension minus one") {
  for (const auto& text : exact_catalog())
    for (auto bc : {D, N}) {
      INFO(text);
      CHECK(m_of(text, bc).pole_order() == parse_domain(text).ambient_dim() - 1);
    }
}

TEST_CASE("product rule against a direct convolution for random pairs") {
  std::mt19937 rng(7);
  const auto& items = exact_catalog();
  std::uniform_int_distribution<std::size_t> pick(0, items.size() - 1);
  const double cutoff = 25.0;
  std::vector<SpectralTerm> ladder;
  for (int j = 0; 2 * j <= cutoff; ++j) ladder.push_back({2.0 * j, 1});
  for (int trial = 0; trial < 20; ++trial) {
    const auto& a = items[pick(rng)];
    const auto& b = items[pick(rng)];
    for (auto bc : {D, N}) {
      INFO(a << " * " << b << (bc == D ? " Dirichlet" : " Neumann"));
      const auto ma = m_of(a, bc);
      const auto mb = m_of(b, bc);
      const auto joined = expand_series(join_m(ma, mb), cutoff);
      const auto direct =
          naive_product(naive_product(expand_series(ma, cutoff).terms, expand_series(mb, cutoff).terms, cutoff),
                        ladder, cutoff);
      check_same_terms(joined.terms, direct);
      CHECK(std::abs(joined.terms.front().nu -
                     (expand_series(ma, cutoff).terms.front().nu + expand_series(mb, cutoff).terms.front().nu)) <
            1e-12);
    }
  }
}

TEST_CASE("library convolution agrees with the direct product") {
  const auto a = series_of("Arc(2*pi/3)", 20);
  const auto b = series_of("HalfSphere(3)", 20);
  check_same_terms(convolve_series(a, b, 20).terms, naive_product(a.terms, b.terms, 20));
  check_same_terms(ladder_series(9).terms, {{0, 1}, {2, 1}, {4, 1}, {6, 1}, {8, 1}});
}

TEST_CASE("asymptotic coefficients") {
  for (int n = 2; n <= 7; ++n) {
    const auto a = asymptotics_from_form(m_of("T(" + std::to_string(n) + ")"));
    INFO("n = " << n);
    CHECK(a.pole_order == n - 1);
    CHECK(std::abs(a.b0 - std::ldexp(1.0, 1 - n)) < 1e-15);
    CHECK(a.gamma == doctest::Approx(n).epsilon(1e-13));
    CHECK(a.c0 == a.b0);
    CHECK(std::abs(a.gamma - (-2.0 * a.c1 / a.c0 - 1.0)) < 1e-12);
    CHECK(std::abs(a.b1 / a.b0 - ((n - 2.0) / 2.0 - a.gamma / 2.0)) < 1e-12);
  }
  for (int n = 2; n <= 6; ++n) {
    const auto a = asymptotics_from_form(m_of("Sphere(" + std::to_string(n) + ")"));
    CHECK(std::abs(a.gamma) < 1e-13);
    CHECK(std::abs(a.c1 + a.c0 / 2.0) < 1e-13);
    CHECK(std::abs(a.b0 - 2.0) < 1e-13);
  }
  const auto h = asymptotics_from_form(m_of("HalfSphere(3)"));
  CHECK(h.gamma == doctest::Approx(1.0).epsilon(1e-13));
}

TEST_CASE("b2 agrees with a symmetric difference of M(e^-s)") {
  for (const auto& text : exact_catalog()) {
    const auto m = m_of(text);
    const auto a = asymptotics_from_form(m);
    const int p = a.pole_order;
    const double s = 2e-3;
    auto g = [&](double x) { return std::pow(x, p) * m.evaluate(std::exp(-x)); };
    const double estimate = (g(s) + g(-s) - 2.0 * a.b0) / (2.0 * s * s);
    INFO(text);
    CHECK(std::abs(estimate - a.b2) < 1e-5 * std::max(1.0, std::abs(a.b2)));
    CHECK(std::abs((g(s) - g(-s)) / (2.0 * s) - a.b1) < 1e-5 * std::max(1.0, std::abs(a.b1)));
  }
  const auto t3 = asymptotics_from_form(m_of("T(3)"));
  CHECK(std::abs(t3.b2 - 1.0 / 24.0) < 1e-14);
}

TEST_CASE("counting function") {
  const auto t3 = series_of("T(3)", 30);
  CHECK(counting_function(t3, 7) == 6);
  CHECK(counting_function(t3, 2.9) == 0);
  CHECK(counting_function(t3, 12) == 15);
  CHECK(counting_function(series_of("Sphere(3)", 10), 2) == 9);
  CHECK_THROWS_AS(counting_function(t3, 31), Error);
}

TEST_CASE("Weyl expansion for T(3)") {
  const auto a = asymptotics_from_form(m_of("T(3)"));
  CHECK(weyl_counting(a, 3, 12.0) == doctest::Approx(15.0 + 1.0 / 24.0).epsilon(1e-12));
  const auto s = series_of("T(3)", 40);
  for (int k = 6; k <= 14; ++k) {
    const double mid = 2.0 * k;
    const double w = static_cast<double>(counting_function(s, mid));
    CHECK(std::abs(w - weyl_counting(a, 3, mid)) / w < 0.01);
  }
}

TEST_CASE("functional equations") {
  for (int n = 2; n <= 5; ++n) {
    for (const std::string base : {"T(", "Sphere(", "HalfSphere("}) {
      const auto m = m_of(base + std::to_string(n) + ")");
      const double gamma = asymptotics_from_form(m).gamma;
      for (double z : {0.3, 0.5, 0.7}) {
        INFO(base << n << ") at z = " << z);
        CHECK(functional_equation_check(m, n, gamma, z) < 1e-12);
      }
    }
    for (double z : {0.3, 0.5, 0.7}) {
      const auto nn = std::to_string(n);
      CHECK(dirichlet_neumann_pairing_check(m_of("T(" + nn + ")"), m_of("T(" + nn + ")", N), n, z) < 1e-12);
    }
  }
  CHECK(functional_equation_check(m_of("T(3)"), 3, 2.0, 0.5) > 1e-3);
}

TEST_CASE("evaluate matches the expanded series inside the unit disc") {
  for (const auto& text : exact_catalog()) {
    const auto m = m_of(text);
    const auto s = expand_series(m, 200);
    const double z = 0.4;
    double sum = 0.0;
    for (const auto& t : s.terms) sum += t.multiplicity * std::pow(z, t.nu);
    INFO(text);
    CHECK(std::abs(sum - m.evaluate(z)) < 1e-12 * std::max(1.0, m.evaluate(z)));
    CHECK(std::abs(m.evaluate_at_s(0.7) - m.evaluate(std::exp(-0.7))) < 1e-12 * m.evaluate(std::exp(-0.7)));
  }
}
