#include "spectral.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <string>

#include "errors.hpp"

namespace conespec {

namespace {

constexpr double kPi = std::numbers::pi;

void normalize(ClosedFormM& m) {
  std::sort(m.factors.begin(), m.factors.end(), [](const Factor& x, const Factor& y) { return x.b < y.b; });
  std::vector<Factor> merged;
  for (const Factor& f : m.factors) {
    if (!merged.empty() && std::abs(merged.back().b - f.b) <= kExponentMergeTol)
      merged.back().c += f.c;
    else
      merged.push_back(f);
  }
  std::erase_if(merged, [](const Factor& f) { return f.c == 0; });
  m.factors = std::move(merged);
}

}  // namespace

int ClosedFormM::pole_order() const {
  int sum = 0;
  for (const Factor& f : factors) sum += f.c;
  return -sum;
}

double ClosedFormM::evaluate(double z) const {
  double value = std::pow(z, prefactor_exponent);
  for (const Factor& f : factors) value *= std::pow(1.0 - std::pow(z, f.b), f.c);
  return value;
}

double ClosedFormM::evaluate_at_s(double s) const {
  double value = std::exp(-prefactor_exponent * s);
  for (const Factor& f : factors) value *= std::pow(-std::expm1(-f.b * s), f.c);
  return value;
}

std::vector<double> SpectralSeries::modes() const {
  std::vector<double> out;
  for (const SpectralTerm& t : terms)
    for (long long i = 0; i < t.multiplicity; ++i) out.push_back(t.nu);
  return out;
}

ClosedFormM atomic_m(const DomainExpr& atom, BoundaryCondition bc) {
  const bool dirichlet = bc == BoundaryCondition::Dirichlet;
  const auto& node = atom.node();
  if (std::holds_alternative<AtomS0>(node)) return ClosedFormM{0.0, {{1.0, -1}, {2.0, 1}}};
  if (std::holds_alternative<AtomT0>(node)) return ClosedFormM{dirichlet ? 1.0 : 0.0, {}};
  if (const auto* arc = std::get_if<Arc>(&node)) {
    const double step = kPi / arc->angle;
    return ClosedFormM{dirichlet ? step : 0.0, {{step, -1}}};
  }
  throw Error(ErrorCode::UnsupportedAtom, "no atomic spectral function for " + print_domain(atom));
}

ClosedFormM join_m(const ClosedFormM& m1, const ClosedFormM& m2) {
  ClosedFormM out;
  out.prefactor_exponent = m1.prefactor_exponent + m2.prefactor_exponent;
  out.factors = m1.factors;
  out.factors.insert(out.factors.end(), m2.factors.begin(), m2.factors.end());
  out.factors.push_back({2.0, -1});
  normalize(out);
  return out;
}

ClosedFormM domain_m(const DomainExpr& d, BoundaryCondition bc) {
  if (!capabilities(d).spectrum_exact)
    throw Error(ErrorCode::UnsupportedDomain, "no closed-form spectrum for " + print_domain(d));
  const std::vector<DomainExpr> atoms = expand_named(d).factors();
  ClosedFormM m = atomic_m(atoms.front(), bc);
  for (std::size_t i = 1; i < atoms.size(); ++i) m = join_m(m, atomic_m(atoms[i], bc));
  normalize(m);
  return m;
}

namespace {

constexpr double kExactIntegerLimit = 9007199254740992.0;

struct RawTerm {
  double nu;
  double coeff;
};

// Sorts and merges exponents within kExponentMergeTol of a group's smallest member.
std::vector<RawTerm> merge_terms(std::vector<RawTerm> raw) {
  std::sort(raw.begin(), raw.end(), [](const RawTerm& x, const RawTerm& y) { return x.nu < y.nu; });
  std::vector<RawTerm> out;
  for (const RawTerm& t : raw) {
    if (!out.empty() && t.nu - out.back().nu <= kExponentMergeTol)
      out.back().coeff += t.coeff;
    else
      out.push_back(t);
  }
  for (const RawTerm& t : out)
    if (std::abs(t.coeff) > kExactIntegerLimit)
      throw Error(ErrorCode::Overflow, "series coefficient at nu=" + std::to_string(t.nu) +
                                           " exceeds 2^53 and can no longer be held exactly");
  return out;
}

std::vector<RawTerm> multiply(const std::vector<RawTerm>& x, const std::vector<RawTerm>& y, double cutoff) {
  std::vector<RawTerm> raw;
  for (const RawTerm& p : x)
    for (const RawTerm& q : y) {
      const double nu = p.nu + q.nu;
      if (nu > cutoff + kExponentMergeTol) break;
      raw.push_back({nu, p.coeff * q.coeff});
    }
  return merge_terms(std::move(raw));
}

std::vector<RawTerm> factor_terms(const Factor& f, double cutoff) {
  std::vector<RawTerm> out;
  if (f.c > 0) {
    double binom = 1.0;
    for (int j = 0; j <= f.c; ++j) {
      if (f.b * j > cutoff + kExponentMergeTol) break;
      out.push_back({f.b * j, (j % 2 ? -binom : binom)});
      binom = binom * (f.c - j) / (j + 1);
    }
  } else {
    const int k = -f.c;
    double binom = 1.0;
    for (int j = 0; f.b * j <= cutoff + kExponentMergeTol; ++j) {
      out.push_back({f.b * j, binom});
      binom = binom * (j + k) / (j + 1);
    }
  }
  return out;
}

SpectralSeries finish(const std::vector<RawTerm>& raw, double cutoff) {
  SpectralSeries s;
  s.cutoff = cutoff;
  for (const RawTerm& t : raw) {
    if (t.nu > cutoff + kExponentMergeTol) continue;
    const double rounded = std::round(t.coeff);
    if (std::abs(t.coeff - rounded) >= 1e-6)
      throw Error(ErrorCode::NonIntegerMultiplicity,
                  "coefficient " + std::to_string(t.coeff) + " at nu=" + std::to_string(t.nu) + " is not an integer");
    if (rounded == 0.0) continue;
    if (rounded < 0.0)
      throw Error(ErrorCode::NonIntegerMultiplicity,
                  "negative multiplicity at nu=" + std::to_string(t.nu) + "; not a spectral function");
    s.terms.push_back({t.nu, static_cast<long long>(rounded)});
  }
  return s;
}

}  // namespace

SpectralSeries expand_series(const ClosedFormM& m, double nu_max) {
  if (!(nu_max > 0.0)) throw Error(ErrorCode::InvalidArgument, "nu_max must be positive");
  std::vector<RawTerm> acc;
  if (m.prefactor_exponent <= nu_max + kExponentMergeTol) acc.push_back({m.prefactor_exponent, 1.0});
  // Positive powers first keeps the intermediate products short.
  std::vector<Factor> order = m.factors;
  std::stable_sort(order.begin(), order.end(), [](const Factor& x, const Factor& y) { return x.c > y.c; });
  for (const Factor& f : order) acc = multiply(acc, factor_terms(f, nu_max), nu_max);
  return finish(acc, nu_max);
}

SpectralSeries convolve_series(const SpectralSeries& a, const SpectralSeries& b, double cutoff) {
  std::vector<RawTerm> x;
  std::vector<RawTerm> y;
  for (const auto& t : a.terms) x.push_back({t.nu, static_cast<double>(t.multiplicity)});
  for (const auto& t : b.terms) y.push_back({t.nu, static_cast<double>(t.multiplicity)});
  return finish(multiply(x, y, cutoff), cutoff);
}

SpectralSeries ladder_series(double cutoff) {
  SpectralSeries s;
  s.cutoff = cutoff;
  for (int k = 0; 2.0 * k <= cutoff + kExponentMergeTol; ++k) s.terms.push_back({2.0 * k, 1});
  return s;
}

AsymptoticCoeffs asymptotics_from_form(const ClosedFormM& m) {
  // log M(e^-s) = N' log s + log b0 + k1 s + k2 s^2 + O(s^4), N' = sum c_i, using
  // log((1 - e^-x)/x) = -x/2 + x^2/24 + O(x^4).
  AsymptoticCoeffs out;
  out.pole_order = m.pole_order();
  double log_b0 = 0.0;
  double k1 = -m.prefactor_exponent;
  double k2 = 0.0;
  double b_max = 1.0;
  for (const Factor& f : m.factors) {
    log_b0 += f.c * std::log(f.b);
    k1 -= 0.5 * f.c * f.b;
    k2 += f.c * f.b * f.b / 24.0;
    b_max = std::max(b_max, f.b);
  }
  out.b0 = std::exp(log_b0);
  out.b1 = out.b0 * k1;
  out.b2 = out.b0 * (0.5 * k1 * k1 + k2);
  out.c0 = out.b0;
  const int n = out.pole_order + 1;
  out.gamma = (n - 2) - 2.0 * k1;
  out.c1 = -0.5 * (1.0 + out.gamma) * out.c0;

  // Numeric cross-check from M(e^{-s}) and M(e^{+s}): the odd part of
  // log(s^N M(e^-s)) is exactly k1 s, the even part log b0 + k2 s^2 + O(s^4).
  const int pole = out.pole_order;
  auto log_r = [&](double s) {
    const double v = std::pow(s, pole) * m.evaluate_at_s(s);
    return std::log(v);
  };
  const double s1 = 1e-3 / b_max;
  const double s2 = 0.5 * s1;
  const double e1 = 0.5 * (log_r(s1) + log_r(-s1));
  const double e2 = 0.5 * (log_r(s2) + log_r(-s2));
  const double num_k1 = (log_r(s2) - log_r(-s2)) / (2.0 * s2);
  const double num_k2 = (e1 - e2) / (s1 * s1 - s2 * s2);
  const double num_log_b0 = e2 - num_k2 * s2 * s2;
  const double num_b0 = std::exp(num_log_b0);
  const double num_b1 = num_b0 * num_k1;
  const double num_b2 = num_b0 * (0.5 * num_k1 * num_k1 + num_k2);
  auto agree = [&](double analytic, double numeric) {
    return std::abs(analytic - numeric) <= 1e-6 * std::max(std::abs(analytic), out.b0);
  };
  if (!agree(out.b0, num_b0) || !agree(out.b1, num_b1) || !agree(out.b2, num_b2))
    throw Error(ErrorCode::Internal, "asymptotic coefficients disagree with numeric evaluation");
  return out;
}

long long counting_function(const SpectralSeries& s, double nu) {
  if (nu > s.cutoff + kExponentMergeTol)
    throw Error(ErrorCode::CutoffExceeded,
                "nu=" + std::to_string(nu) + " exceeds series cutoff " + std::to_string(s.cutoff));
  long long count = 0;
  for (const SpectralTerm& t : s.terms) {
    if (t.nu > nu + kExponentMergeTol) break;
    count += t.multiplicity;
  }
  return count;
}

double weyl_counting(const AsymptoticCoeffs& coeffs, int n, double nu) {
  const double b[] = {coeffs.b0, coeffs.b1, coeffs.b2};
  double total = 0.0;
  for (int j = 0; j < 3; ++j) {
    const int power = n - 1 - j;
    if (power < 0) break;
    total += b[j] * std::pow(nu, power) / std::tgamma(power + 1.0);
  }
  return total;
}

double functional_equation_check(const ClosedFormM& m, int n, double gamma, double z) {
  if (!(z > 0.0 && z < 1.0)) throw Error(ErrorCode::DomainError, "functional equation needs 0 < z < 1");
  const double sign = (n - 1) % 2 == 0 ? 1.0 : -1.0;
  return std::abs(m.evaluate(1.0 / z) - sign * std::pow(z, n - 2 - gamma) * m.evaluate(z));
}

double dirichlet_neumann_pairing_check(const ClosedFormM& dirichlet, const ClosedFormM& neumann, int n,
                                       double z) {
  if (!(z > 0.0 && z < 1.0)) throw Error(ErrorCode::DomainError, "pairing check needs 0 < z < 1");
  const double sign = (n - 1) % 2 == 0 ? 1.0 : -1.0;
  return std::abs(dirichlet.evaluate(1.0 / z) - sign * std::pow(z, n - 2) * neumann.evaluate(z));
}

}  // namespace conespec
