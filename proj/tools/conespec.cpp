// Command-line front end; talks to the library only through the C interface.

#include <conespec/conespec.h>

#include <cmath>
#include <cstdio>
#include <memory>
#include <string>
#include <vector>

#include "CLI11.hpp"

namespace {

enum Exit { kOk = 0, kParse = 2, kNumeric = 3, kUnsupported = 4 };

int exit_code_for(cs_status s) {
  switch (s) {
    case CS_OK: return kOk;
    case CS_ERR_PARSE:
    case CS_ERR_DIMENSION:
    case CS_ERR_INVALID_ARGUMENT: return kParse;
    case CS_ERR_UNSUPPORTED_ATOM:
    case CS_ERR_UNSUPPORTED_DOMAIN:
    case CS_ERR_DIMENSION_MISMATCH: return kUnsupported;
    default: return kNumeric;
  }
}

struct Failure {
  int code;
};

void check(cs_status s, const std::string& context = {}) {
  if (s == CS_OK) return;
  std::fprintf(stderr, "error: %s%s%s: %s\n", context.c_str(), context.empty() ? "" : ": ", cs_status_name(s),
               cs_last_error());
  throw Failure{exit_code_for(s)};
}

struct DomainDeleter {
  void operator()(cs_domain* d) const { cs_domain_free(d); }
};
using DomainPtr = std::unique_ptr<cs_domain, DomainDeleter>;

DomainPtr parse(const std::string& text) {
  cs_domain* d = nullptr;
  const cs_status s = cs_domain_parse(text.c_str(), &d);
  if (s == CS_ERR_PARSE) {
    std::fprintf(stderr, "error: cannot parse domain expression: %s\n  %s\n  %*s^\n", cs_last_error(), text.c_str(),
                 static_cast<int>(cs_last_error_offset()), "");
    throw Failure{kParse};
  }
  check(s, "domain \"" + text + "\"");
  return DomainPtr(d);
}

std::string print(const cs_domain* d) {
  std::size_t needed = 0;
  check(cs_domain_print(d, nullptr, 0, &needed));
  std::string out(needed, '\0');
  check(cs_domain_print(d, out.data(), out.size(), nullptr));
  out.resize(needed - 1);
  return out;
}

std::string num(double v, int digits) {
  if (std::isnan(v)) return "nan";
  char buf[48];
  std::snprintf(buf, sizeof buf, "%.*g", digits, v);
  return buf;
}

std::string json_string(const std::string& s) {
  std::string out = "\"";
  for (char c : s) {
    if (c == '"' || c == '\\') out += '\\';
    out += c;
  }
  return out + "\"";
}

std::string json_number(double v) { return std::isfinite(v) ? num(v, 12) : "null"; }

struct ModeRow {
  int k;
  double nu;
  long long multiplicity;
  double lambda;
  double nu_ref = std::nan("");
};

void emit_modes(const std::vector<ModeRow>& rows, const std::string& format, bool with_ref) {
  if (format == "csv") {
    std::printf("k,nu,multiplicity,lambda\n");
    for (const auto& r : rows)
      std::printf("%d,%s,%lld,%s\n", r.k, num(r.nu, 12).c_str(), r.multiplicity, num(r.lambda, 12).c_str());
  } else if (format == "json") {
    for (const auto& r : rows)
      std::printf("{\"k\": %d, \"nu\": %s, \"multiplicity\": %lld, \"lambda\": %s}\n", r.k, json_number(r.nu).c_str(),
                  r.multiplicity, json_number(r.lambda).c_str());
  } else {
    if (with_ref)
      std::printf("%4s  %12s  %12s  %12s  %12s\n", "k", "nu_ref", "nu", "mult", "lambda");
    else
      std::printf("%4s  %12s  %12s  %12s\n", "k", "nu", "mult", "lambda");
    for (const auto& r : rows) {
      if (with_ref)
        std::printf("%4d  %12s  %12s  %12lld  %12s\n", r.k, num(r.nu_ref, 6).c_str(), num(r.nu, 6).c_str(),
                    r.multiplicity, num(r.lambda, 6).c_str());
      else
        std::printf("%4d  %12s  %12lld  %12s\n", r.k, num(r.nu, 6).c_str(), r.multiplicity, num(r.lambda, 6).c_str());
    }
  }
}

cs_bc parse_bc(const std::string& s) { return s == "neumann" ? CS_NEUMANN : CS_DIRICHLET; }

int run_spectrum(const std::string& expr, const std::string& bc, double max_nu, const std::string& format) {
  DomainPtr d = parse(expr);
  cs_series* raw = nullptr;
  check(cs_spectrum(d.get(), parse_bc(bc), max_nu, &raw), "spectrum");
  std::unique_ptr<cs_series, decltype(&cs_series_free)> s(raw, cs_series_free);
  const int n = cs_domain_ambient_dim(d.get());
  std::vector<ModeRow> rows;
  for (std::size_t i = 0; i < cs_series_size(s.get()); ++i) {
    double nu = 0.0;
    long long m = 0;
    check(cs_series_term(s.get(), i, &nu, &m));
    rows.push_back({static_cast<int>(i) + 1, nu, m, cs_lambda_of_nu(nu, n)});
  }
  emit_modes(rows, format, false);
  return kOk;
}

int run_estimate(const std::string& target, const std::string& reference, const std::string& method, int modes,
                 const std::string& bc, const std::string& format) {
  DomainPtr t = parse(target);
  DomainPtr r = parse(reference);
  cs_report* raw = nullptr;
  check(cs_estimate(t.get(), r.get(), parse_bc(bc), method == "quadratic" ? CS_QUADRATIC : CS_LINEAR, modes, &raw),
        "estimate");
  std::unique_ptr<cs_report, decltype(&cs_report_free)> rep(raw, cs_report_free);
  std::vector<ModeRow> rows;
  for (std::size_t i = 0; i < cs_report_size(rep.get()); ++i) {
    cs_estimate_row row{};
    check(cs_report_row(rep.get(), i, &row));
    rows.push_back({row.k, row.nu, row.multiplicity, row.lambda, row.nu_ref});
  }
  if (format == "table")
    std::printf("target %s, reference %s, %s scaling, %s\n", print(t.get()).c_str(), print(r.get()).c_str(),
                method.c_str(), bc.c_str());
  emit_modes(rows, format, true);
  return kOk;
}

int run_size(const std::string& expr) {
  DomainPtr d = parse(expr);
  double area = 0.0, boundary = 0.0;
  check(cs_domain_size(d.get(), &area, &boundary), "size");
  std::printf("domain    %s\n", print(d.get()).c_str());
  std::printf("n         %d\n", cs_domain_ambient_dim(d.get()));
  std::printf("area      %s\n", num(area, 12).c_str());
  std::printf("boundary  %s\n", num(boundary, 12).c_str());
  return kOk;
}

int run_coeffs(const std::string& expr, const std::string& bc) {
  DomainPtr d = parse(expr);
  cs_coeffs c{};
  check(cs_coeffs_compute(d.get(), parse_bc(bc), &c), "coeffs");
  std::printf("domain    %s (%s)\n", print(d.get()).c_str(), bc.c_str());
  const std::pair<const char*, double> rows[] = {
      {"n", double(c.n)}, {"area", c.area}, {"boundary", c.boundary}, {"c0", c.c0}, {"c1", c.c1},
      {"gamma", c.gamma}, {"a0", c.a0},     {"a1", c.a1},             {"a2", c.a2}, {"b0", c.b0},
      {"b1", c.b1},       {"b2", c.b2},     {"p", c.p},               {"q", c.q}};
  for (const auto& [name, value] : rows) std::printf("%-9s %s\n", name, num(value, 12).c_str());
  std::printf("b source  %s\n", c.b_from_closed_form ? "closed-form spectral function" : "geometry");
  return kOk;
}

int emit_checks(cs_check_list* raw, const std::string& format) {
  std::unique_ptr<cs_check_list, decltype(&cs_check_list_free)> list(raw, cs_check_list_free);
  std::size_t failed = 0;
  const std::size_t total = cs_check_list_size(list.get());
  if (format == "csv") std::printf("name,computed,expected,tolerance,pass,note\n");
  for (std::size_t i = 0; i < total; ++i) {
    cs_check c{};
    check(cs_check_list_get(list.get(), i, &c));
    if (!c.pass) ++failed;
    if (format == "csv") {
      std::printf("\"%s\",%s,%s,%s,%s,\"%s\"\n", c.name, num(c.computed, 12).c_str(), num(c.expected, 12).c_str(),
                  num(c.tolerance, 12).c_str(), c.pass ? "pass" : "fail", c.note);
    } else if (format == "json") {
      std::printf("{\"name\": %s, \"computed\": %s, \"expected\": %s, \"tolerance\": %s, \"pass\": %s, \"note\": %s}\n",
                  json_string(c.name).c_str(), json_number(c.computed).c_str(), json_number(c.expected).c_str(),
                  json_number(c.tolerance).c_str(), c.pass ? "true" : "false", json_string(c.note).c_str());
    } else {
      std::printf("%-4s  %-52s  %14s  %14s  %10s  %s\n", c.pass ? "PASS" : "FAIL", c.name, num(c.computed, 8).c_str(),
                  num(c.expected, 8).c_str(), num(c.tolerance, 3).c_str(), c.note);
    }
  }
  if (format == "table") std::printf("%zu/%zu checks passed\n", total - failed, total);
  return failed == 0 ? kOk : kNumeric;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Spectra of the Laplacian on spherical domains from closed-form spectral functions"};
  app.require_subcommand(1);
  app.set_version_flag("--version", std::string(cs_version()));

  const std::vector<std::string> formats = {"table", "csv", "json"};
  const std::vector<std::string> bcs = {"dirichlet", "neumann"};

  std::string expr, target, reference, bc = "dirichlet", format = "table", method = "linear", suite = "all";
  double max_nu = 30.0;
  int modes = 5;
  bool orthant3 = false;

  auto* spectrum = app.add_subcommand("spectrum", "Exact degrees, multiplicities and eigenvalues");
  spectrum->add_option("expr", expr, "Domain expression")->required();
  spectrum->add_option("--bc", bc, "Boundary condition")->check(CLI::IsMember(bcs));
  spectrum->add_option("--max-nu", max_nu, "Largest degree to list")->check(CLI::PositiveNumber);
  spectrum->add_option("--format", format, "Output format")->check(CLI::IsMember(formats));

  auto* estimate = app.add_subcommand("estimate", "Scaling estimates of a target spectrum from a reference");
  estimate->add_option("--target", target, "Target domain expression")->required();
  estimate->add_option("--reference", reference, "Reference domain expression (exact spectrum)")->required();
  estimate->add_option("--method", method, "Scaling method")->check(CLI::IsMember({"linear", "quadratic"}));
  estimate->add_option("--modes", modes, "Number of modes")->check(CLI::PositiveNumber);
  estimate->add_option("--bc", bc, "Boundary condition")->check(CLI::IsMember(bcs));
  estimate->add_option("--format", format, "Output format")->check(CLI::IsMember(formats));

  auto* size = app.add_subcommand("size", "Domain area and boundary size");
  size->add_option("expr", expr, "Domain expression")->required();

  auto* coeffs = app.add_subcommand("coeffs", "Asymptotic and heat-kernel coefficients");
  coeffs->add_option("expr", expr, "Domain expression")->required();
  coeffs->add_option("--bc", bc, "Boundary condition")->check(CLI::IsMember(bcs));

  auto* verify = app.add_subcommand("verify", "Numerical checks of the analytic identities");
  verify->add_option("--suite", suite, "Suite to run")
      ->check(CLI::IsMember({"all", "bessel", "mzf", "mhk", "functional", "sizes", "weyl"}));
  verify->add_flag("--orthant3", orthant3, "Include the three-dimensional orthant integral (slow)");
  verify->add_option("--format", format, "Output format")->check(CLI::IsMember(formats));

  auto* paper = app.add_subcommand("paper", "Reproduce the published comparison table");
  paper->add_option("--format", format, "Output format")->check(CLI::IsMember(formats));

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? kOk : kParse;
  }

  try {
    if (*spectrum) return run_spectrum(expr, bc, max_nu, format);
    if (*estimate) return run_estimate(target, reference, method, modes, bc, format);
    if (*size) return run_size(expr);
    if (*coeffs) return run_coeffs(expr, bc);
    if (*verify) {
      cs_check_list* list = nullptr;
      check(cs_verify(suite.c_str(), orthant3 ? 1 : 0, &list), "verify");
      return emit_checks(list, format);
    }
    if (*paper) {
      cs_check_list* list = nullptr;
      check(cs_paper(&list), "paper");
      return emit_checks(list, format);
    }
  } catch (const Failure& f) {
    return f.code;
  }
  return kOk;
}
