#include <doctest.h>

#include <cmath>
#include <cstring>
#include <numbers>
#include <string>
#include <thread>

#include "conespec/conespec.h"

namespace {

constexpr double kPi = std::numbers::pi;

cs_domain* parse(const char* text) {
  cs_domain* d = nullptr;
  REQUIRE(cs_domain_parse(text, &d) == CS_OK);
  REQUIRE(d != nullptr);
  return d;
}

}  // namespace

TEST_CASE("version and status names") {
  CHECK(std::string(cs_version()) == "0.1.0");
  CHECK(std::string(cs_status_name(CS_OK)) == "Ok");
  CHECK(std::string(cs_status_name(CS_ERR_PARSE)) == "ParseError");
  CHECK(std::string(cs_status_name(CS_ERR_INTERNAL)) == "InternalError");
  CHECK(cs_lambda_of_nu(3.0, 3) == 12.0);
}

TEST_CASE("parse errors report an offset") {
  cs_domain* d = reinterpret_cast<cs_domain*>(0x1);
  CHECK(cs_domain_parse("T(3", &d) == CS_ERR_PARSE);
  CHECK(d == nullptr);
  CHECK(cs_last_error_offset() == 3);
  CHECK(std::strlen(cs_last_error()) > 0);
  CHECK(cs_domain_parse("T(0)", &d) == CS_ERR_DIMENSION);
  CHECK(cs_domain_parse(nullptr, &d) == CS_ERR_INVALID_ARGUMENT);
  CHECK(cs_domain_parse("T(3)", nullptr) == CS_ERR_INVALID_ARGUMENT);
}

TEST_CASE("successful calls clear the last error") {
  cs_domain* bad = nullptr;
  CHECK(cs_domain_parse("(", &bad) == CS_ERR_PARSE);
  cs_domain* d = parse("T(3)");
  CHECK(std::string(cs_last_error()).empty());
  cs_domain_free(d);
}

TEST_CASE("domain handle") {
  cs_domain* d = parse("RegularT(3, rho=pi/6)");
  CHECK(cs_domain_ambient_dim(d) == 3);
  int exact = -1;
  int known = -1;
  REQUIRE(cs_domain_capabilities(d, &exact, &known) == CS_OK);
  CHECK(exact == 0);
  CHECK(known == 1);

  size_t needed = 0;
  REQUIRE(cs_domain_print(d, nullptr, 0, &needed) == CS_OK);
  std::string text(needed, '\0');
  REQUIRE(cs_domain_print(d, text.data(), text.size(), nullptr) == CS_OK);
  text.resize(needed - 1);
  cs_domain* again = parse(text.c_str());
  size_t needed_again = 0;
  cs_domain_print(again, nullptr, 0, &needed_again);
  CHECK(needed_again == needed);

  char small[6];
  REQUIRE(cs_domain_print(d, small, sizeof small, nullptr) == CS_OK);
  CHECK(std::string(small) == "Regul");

  cs_domain_free(again);
  cs_domain_free(d);
  cs_domain_free(nullptr);
  CHECK(cs_domain_ambient_dim(nullptr) == 0);
}

TEST_CASE("spectrum series") {
  cs_domain* d = parse("T(3)");
  cs_series* s = nullptr;
  REQUIRE(cs_spectrum(d, CS_DIRICHLET, 9.0, &s) == CS_OK);
  REQUIRE(cs_series_size(s) == 4);
  const double nus[] = {3, 5, 7, 9};
  for (size_t i = 0; i < 4; ++i) {
    double nu = 0.0;
    long long m = 0;
    REQUIRE(cs_series_term(s, i, &nu, &m) == CS_OK);
    CHECK(nu == nus[i]);
    CHECK(m == static_cast<long long>(i) + 1);
  }
  double nu = 0.0;
  long long m = 0;
  CHECK(cs_series_term(s, 4, &nu, &m) == CS_ERR_INVALID_ARGUMENT);
  long long count = 0;
  REQUIRE(cs_series_count(s, 7.0, &count) == CS_OK);
  CHECK(count == 6);
  CHECK(cs_series_count(s, 10.0, &count) == CS_ERR_CUTOFF_EXCEEDED);
  cs_series_free(s);

  CHECK(cs_spectrum(d, static_cast<cs_bc>(7), 9.0, &s) == CS_ERR_INVALID_ARGUMENT);
  cs_domain_free(d);

  cs_domain* cap = parse("Cap(1)");
  CHECK(cs_spectrum(cap, CS_DIRICHLET, 9.0, &s) == CS_ERR_UNSUPPORTED_DOMAIN);
  CHECK(s == nullptr);
  cs_domain_free(cap);
}

TEST_CASE("estimate report") {
  cs_domain* target = parse("RegularT(3, 0.5)");
  cs_domain* ref = parse("T(3)");
  cs_report* r = nullptr;
  REQUIRE(cs_estimate(target, ref, CS_DIRICHLET, CS_LINEAR, 3, &r) == CS_OK);
  REQUIRE(cs_report_size(r) == 3);
  cs_estimate_row row{};
  REQUIRE(cs_report_row(r, 0, &row) == CS_OK);
  CHECK(row.k == 1);
  CHECK(std::abs(row.lambda - 5.162) < 0.002);
  CHECK(cs_report_row(r, 3, &row) == CS_ERR_INVALID_ARGUMENT);
  cs_report_free(r);

  REQUIRE(cs_estimate(target, ref, CS_DIRICHLET, CS_QUADRATIC, 1, &r) == CS_OK);
  REQUIRE(cs_report_row(r, 0, &row) == CS_OK);
  CHECK(std::abs(row.lambda - 5.1606) < 0.0005);
  cs_report_free(r);

  cs_domain* t4 = parse("T(4)");
  CHECK(cs_estimate(target, t4, CS_DIRICHLET, CS_LINEAR, 1, &r) == CS_ERR_DIMENSION_MISMATCH);
  CHECK(cs_estimate(target, ref, CS_DIRICHLET, static_cast<cs_method>(9), 1, &r) == CS_ERR_INVALID_ARGUMENT);
  CHECK(cs_estimate(target, target, CS_DIRICHLET, CS_LINEAR, 1, &r) == CS_ERR_UNSUPPORTED_DOMAIN);
  cs_domain_free(t4);
  cs_domain_free(ref);
  cs_domain_free(target);
}

TEST_CASE("coefficients and sizes") {
  cs_domain* d = parse("T(3)");
  cs_coeffs c{};
  REQUIRE(cs_coeffs_compute(d, CS_DIRICHLET, &c) == CS_OK);
  CHECK(c.n == 3);
  CHECK(std::abs(c.gamma - 3.0) < 1e-14);
  CHECK(std::abs(c.p + 1.0) < 1e-14);
  CHECK(std::abs(c.q + 2.0 / 3.0) < 1e-14);
  CHECK(std::abs(c.a2 - 11.0 * kPi / 12.0) < 1e-14);
  CHECK(std::abs(c.b0 - 0.25) < 1e-15);
  CHECK(c.b_from_closed_form == 1);
  cs_domain_free(d);

  d = parse("RegularT(3, 0.5)");
  REQUIRE(cs_coeffs_compute(d, CS_DIRICHLET, &c) == CS_OK);
  CHECK(c.b_from_closed_form == 0);
  CHECK(std::abs(c.area - kPi) < 1e-9);
  cs_domain_free(d);

  d = parse("RegularT(4, 0.5)");
  double area = 0.0;
  double boundary = 0.0;
  REQUIRE(cs_domain_size(d, &area, &boundary) == CS_OK);
  CHECK(std::abs(area - 2.0 * kPi * kPi / 5.0) < 1e-9);
  cs_domain_free(d);

  d = parse("Cap(1) * T0");
  CHECK(cs_domain_size(d, &area, &boundary) == CS_ERR_UNSUPPORTED_DOMAIN);
  cs_domain_free(d);
}

TEST_CASE("check lists") {
  cs_check_list* l = nullptr;
  REQUIRE(cs_verify("weyl", 0, &l) == CS_OK);
  REQUIRE(cs_check_list_size(l) >= 3);
  for (size_t i = 0; i < cs_check_list_size(l); ++i) {
    cs_check c{};
    REQUIRE(cs_check_list_get(l, i, &c) == CS_OK);
    CHECK(c.name != nullptr);
    CHECK(c.pass == 1);
  }
  cs_check c{};
  CHECK(cs_check_list_get(l, cs_check_list_size(l), &c) == CS_ERR_INVALID_ARGUMENT);
  cs_check_list_free(l);

  CHECK(cs_verify("nope", 0, &l) == CS_ERR_INVALID_ARGUMENT);
  CHECK(l == nullptr);

  REQUIRE(cs_paper(&l) == CS_OK);
  CHECK(cs_check_list_size(l) == 18);
  for (size_t i = 0; i < cs_check_list_size(l); ++i) {
    REQUIRE(cs_check_list_get(l, i, &c) == CS_OK);
    INFO(c.name);
    CHECK(c.pass == 1);
  }
  cs_check_list_free(l);
}

TEST_CASE("error state is per thread") {
  cs_domain* d = nullptr;
  CHECK(cs_domain_parse("T(", &d) == CS_ERR_PARSE);
  std::string other;
  std::thread worker([&] { other = cs_last_error(); });
  worker.join();
  CHECK(other.empty());
  CHECK(std::strlen(cs_last_error()) > 0);
}
