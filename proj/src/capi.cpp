#include "conespec/conespec.h"

#include <cmath>
#include <cstring>
#include <string>

#include "errors.hpp"
#include "geometry.hpp"
#include "reproduction.hpp"
#include "scaling.hpp"
#include "spectral.hpp"

struct cs_domain {
  conespec::DomainExpr expr;
};

struct cs_series {
  conespec::SpectralSeries series;
};

struct cs_report {
  conespec::EstimateReport report;
};

struct cs_check_list {
  std::vector<conespec::CheckRow> rows;
};

namespace {

thread_local std::string g_last_error;
thread_local std::size_t g_last_offset = 0;

cs_status status_of(conespec::ErrorCode code) {
  using conespec::ErrorCode;
  switch (code) {
    case ErrorCode::Parse: return CS_ERR_PARSE;
    case ErrorCode::Dimension: return CS_ERR_DIMENSION;
    case ErrorCode::UnsupportedAtom: return CS_ERR_UNSUPPORTED_ATOM;
    case ErrorCode::UnsupportedDomain: return CS_ERR_UNSUPPORTED_DOMAIN;
    case ErrorCode::DimensionMismatch: return CS_ERR_DIMENSION_MISMATCH;
    case ErrorCode::NonIntegerMultiplicity: return CS_ERR_NON_INTEGER_MULTIPLICITY;
    case ErrorCode::CutoffExceeded: return CS_ERR_CUTOFF_EXCEEDED;
    case ErrorCode::QuadratureFailure: return CS_ERR_QUADRATURE_FAILURE;
    case ErrorCode::ToleranceNotMet: return CS_ERR_TOLERANCE_NOT_MET;
    case ErrorCode::NotPositiveDefinite: return CS_ERR_NOT_POSITIVE_DEFINITE;
    case ErrorCode::InsufficientModes: return CS_ERR_INSUFFICIENT_MODES;
    case ErrorCode::NegativeDiscriminant: return CS_ERR_NEGATIVE_DISCRIMINANT;
    case ErrorCode::RootNotBracketed: return CS_ERR_ROOT_NOT_BRACKETED;
    case ErrorCode::DomainError: return CS_ERR_DOMAIN_ERROR;
    case ErrorCode::Overflow: return CS_ERR_OVERFLOW;
    case ErrorCode::InvalidArgument: return CS_ERR_INVALID_ARGUMENT;
    case ErrorCode::Internal: return CS_ERR_INTERNAL;
  }
  return CS_ERR_INTERNAL;
}

template <typename F>
cs_status guarded(F&& body) {
  g_last_error.clear();
  g_last_offset = 0;
  try {
    body();
    return CS_OK;
  } catch (const conespec::ParseError& e) {
    g_last_error = e.what();
    g_last_offset = e.offset();
    return CS_ERR_PARSE;
  } catch (const conespec::Error& e) {
    g_last_error = e.what();
    return status_of(e.code());
  } catch (const std::exception& e) {
    g_last_error = e.what();
    return CS_ERR_INTERNAL;
  }
}

cs_status null_argument() {
  g_last_error = "null argument";
  g_last_offset = 0;
  return CS_ERR_INVALID_ARGUMENT;
}

conespec::BoundaryCondition to_bc(cs_bc bc) {
  if (bc == CS_DIRICHLET) return conespec::BoundaryCondition::Dirichlet;
  if (bc == CS_NEUMANN) return conespec::BoundaryCondition::Neumann;
  throw conespec::Error(conespec::ErrorCode::InvalidArgument, "unknown boundary condition");
}

}  // namespace

extern "C" {

const char* cs_version(void) { return "0.1.0"; }

const char* cs_status_name(cs_status status) {
  switch (status) {
    case CS_OK: return "Ok";
    case CS_ERR_PARSE: return "ParseError";
    case CS_ERR_DIMENSION: return "DimensionError";
    case CS_ERR_UNSUPPORTED_ATOM: return "UnsupportedAtom";
    case CS_ERR_UNSUPPORTED_DOMAIN: return "UnsupportedDomain";
    case CS_ERR_DIMENSION_MISMATCH: return "DimensionMismatch";
    case CS_ERR_NON_INTEGER_MULTIPLICITY: return "NonIntegerMultiplicity";
    case CS_ERR_CUTOFF_EXCEEDED: return "CutoffExceeded";
    case CS_ERR_QUADRATURE_FAILURE: return "QuadratureFailure";
    case CS_ERR_TOLERANCE_NOT_MET: return "ToleranceNotMet";
    case CS_ERR_NOT_POSITIVE_DEFINITE: return "NotPositiveDefinite";
    case CS_ERR_INSUFFICIENT_MODES: return "InsufficientModes";
    case CS_ERR_NEGATIVE_DISCRIMINANT: return "NegativeDiscriminant";
    case CS_ERR_ROOT_NOT_BRACKETED: return "RootNotBracketed";
    case CS_ERR_DOMAIN_ERROR: return "DomainError";
    case CS_ERR_OVERFLOW: return "OverflowError";
    case CS_ERR_INVALID_ARGUMENT: return "InvalidArgument";
    case CS_ERR_INTERNAL: return "InternalError";
  }
  return "Unknown";
}

const char* cs_last_error(void) { return g_last_error.c_str(); }

size_t cs_last_error_offset(void) { return g_last_offset; }

double cs_lambda_of_nu(double nu, int n) { return conespec::lambda_of_nu(nu, n); }

cs_status cs_domain_parse(const char* text, cs_domain** out) {
  if (!text || !out) return null_argument();
  *out = nullptr;
  return guarded([&] { *out = new cs_domain{conespec::parse_domain(text)}; });
}

void cs_domain_free(cs_domain* d) { delete d; }

int cs_domain_ambient_dim(const cs_domain* d) { return d ? d->expr.ambient_dim() : 0; }

cs_status cs_domain_capabilities(const cs_domain* d, int* spectrum_exact, int* geometry_known) {
  if (!d || !spectrum_exact || !geometry_known) return null_argument();
  return guarded([&] {
    const auto caps = conespec::capabilities(d->expr);
    *spectrum_exact = caps.spectrum_exact;
    *geometry_known = caps.geometry_known;
  });
}

cs_status cs_domain_print(const cs_domain* d, char* buffer, size_t capacity, size_t* needed) {
  if (!d) return null_argument();
  return guarded([&] {
    const std::string text = conespec::print_domain(d->expr);
    if (needed) *needed = text.size() + 1;
    if (buffer && capacity > 0) {
      const std::size_t n = std::min(capacity - 1, text.size());
      std::memcpy(buffer, text.data(), n);
      buffer[n] = '\0';
    }
  });
}

cs_status cs_spectrum(const cs_domain* d, cs_bc bc, double nu_max, cs_series** out) {
  if (!d || !out) return null_argument();
  *out = nullptr;
  return guarded([&] {
    const auto m = conespec::domain_m(d->expr, to_bc(bc));
    *out = new cs_series{conespec::expand_series(m, nu_max)};
  });
}

size_t cs_series_size(const cs_series* s) { return s ? s->series.terms.size() : 0; }

cs_status cs_series_term(const cs_series* s, size_t index, double* nu, long long* multiplicity) {
  if (!s || !nu || !multiplicity) return null_argument();
  if (index >= s->series.terms.size()) {
    g_last_error = "series index out of range";
    return CS_ERR_INVALID_ARGUMENT;
  }
  *nu = s->series.terms[index].nu;
  *multiplicity = s->series.terms[index].multiplicity;
  return CS_OK;
}

cs_status cs_series_count(const cs_series* s, double nu, long long* count) {
  if (!s || !count) return null_argument();
  return guarded([&] { *count = conespec::counting_function(s->series, nu); });
}

void cs_series_free(cs_series* s) { delete s; }

cs_status cs_estimate(const cs_domain* target, const cs_domain* reference, cs_bc bc, cs_method method, int modes,
                      cs_report** out) {
  if (!target || !reference || !out) return null_argument();
  *out = nullptr;
  return guarded([&] {
    if (method != CS_LINEAR && method != CS_QUADRATIC)
      throw conespec::Error(conespec::ErrorCode::InvalidArgument, "unknown scaling method");
    const auto m = method == CS_LINEAR ? conespec::Method::Linear : conespec::Method::Quadratic;
    *out = new cs_report{conespec::estimate(target->expr, reference->expr, to_bc(bc), m, modes)};
  });
}

size_t cs_report_size(const cs_report* r) { return r ? r->report.rows.size() : 0; }

cs_status cs_report_row(const cs_report* r, size_t index, cs_estimate_row* row) {
  if (!r || !row) return null_argument();
  if (index >= r->report.rows.size()) {
    g_last_error = "report index out of range";
    return CS_ERR_INVALID_ARGUMENT;
  }
  const auto& src = r->report.rows[index];
  *row = cs_estimate_row{src.k, src.nu_ref, src.nu, src.multiplicity, src.lambda};
  return CS_OK;
}

void cs_report_free(cs_report* r) { delete r; }

cs_status cs_coeffs_compute(const cs_domain* d, cs_bc bc, cs_coeffs* out) {
  if (!d || !out) return null_argument();
  return guarded([&] {
    const auto b = to_bc(bc);
    const auto g = conespec::catalog_geometry(d->expr, b);
    const auto s = conespec::scaling_inputs(g);
    const auto h = conespec::heat_coeffs(g);
    cs_coeffs c{};
    c.n = g.n;
    c.area = g.area;
    c.boundary = g.boundary;
    c.c0 = s.c0;
    c.c1 = s.c1;
    c.gamma = s.gamma;
    c.a0 = h.a0;
    c.a1 = h.a1;
    c.a2 = h.a2;
    c.p = s.p;
    c.q = s.q;
    if (conespec::capabilities(d->expr).spectrum_exact) {
      const auto a = conespec::asymptotics_from_form(conespec::domain_m(d->expr, b));
      c.b0 = a.b0;
      c.b1 = a.b1;
      c.b2 = a.b2;
      c.b_from_closed_form = 1;
    } else {
      const auto gb = conespec::geometric_b_coeffs(g);
      c.b0 = gb.b0;
      c.b1 = gb.b1;
      c.b2 = gb.b2;
      c.b_from_closed_form = 0;
    }
    *out = c;
  });
}

cs_status cs_domain_size(const cs_domain* d, double* area, double* boundary) {
  if (!d || !area || !boundary) return null_argument();
  return guarded([&] {
    const auto g = conespec::catalog_geometry(d->expr, conespec::BoundaryCondition::Dirichlet);
    *area = g.area;
    *boundary = g.boundary;
  });
}

cs_status cs_verify(const char* suite, int include_orthant3, cs_check_list** out) {
  if (!suite || !out) return null_argument();
  *out = nullptr;
  return guarded([&] { *out = new cs_check_list{conespec::run_verify(suite, include_orthant3 != 0)}; });
}

cs_status cs_paper(cs_check_list** out) {
  if (!out) return null_argument();
  *out = nullptr;
  return guarded([&] { *out = new cs_check_list{conespec::paper_table()}; });
}

size_t cs_check_list_size(const cs_check_list* l) { return l ? l->rows.size() : 0; }

cs_status cs_check_list_get(const cs_check_list* l, size_t index, cs_check* out) {
  if (!l || !out) return null_argument();
  if (index >= l->rows.size()) {
    g_last_error = "check index out of range";
    return CS_ERR_INVALID_ARGUMENT;
  }
  const auto& r = l->rows[index];
  *out = cs_check{r.name.c_str(), r.computed, r.expected, r.tolerance, r.pass ? 1 : 0, r.note.c_str()};
  return CS_OK;
}

void cs_check_list_free(cs_check_list* l) { delete l; }

}  // extern "C"
