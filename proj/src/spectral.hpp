#pragma once

#include <vector>

#include "domain.hpp"

namespace conespec {

/// One factor (1 - z^b)^c of a closed-form spectral function.
struct Factor {
  double b;
  int c;
  bool operator==(const Factor&) const = default;
};

/// M(z) = z^a * prod_i (1 - z^{b_i})^{c_i}.
///
/// Factors are kept sorted by b with equal exponents merged, and no factor has
/// c == 0. The pole order at z = 1 is -sum(c_i).
struct ClosedFormM {
  double prefactor_exponent = 0.0;
  std::vector<Factor> factors;

  int pole_order() const;
  /// Evaluates the factor form at any z > 0 (z > 1 is used by the functional
  /// equations; the result may then be negative).
  double evaluate(double z) const;
  /// M(exp(-s)), computed with expm1 so small |s| keeps full precision.
  double evaluate_at_s(double s) const;
};

struct SpectralTerm {
  double nu;
  long long multiplicity;
};

/// Sorted (nu, multiplicity) list holding every term with nu <= cutoff.
struct SpectralSeries {
  std::vector<SpectralTerm> terms;
  double cutoff = 0.0;

  /// Flattened list with each nu repeated multiplicity times.
  std::vector<double> modes() const;
};

/// z-side Laurent coefficients (c0, c1), s-side coefficients of M(e^-s)
/// (b0, b1, b2) and the boundary parameter gamma.
struct AsymptoticCoeffs {
  int pole_order = 0;
  double c0 = 0.0;
  double c1 = 0.0;
  double b0 = 0.0;
  double b1 = 0.0;
  double b2 = 0.0;
  double gamma = 0.0;
};

/// Exponents closer than this are treated as one eigenvalue degree.
inline constexpr double kExponentMergeTol = 1e-9;

/// Spectral function of S0, T0 or Arc(phi). Throws UnsupportedAtom otherwise.
ClosedFormM atomic_m(const DomainExpr& atom, BoundaryCondition bc);

/// Product rule: M1 * M2 / (1 - z^2).
ClosedFormM join_m(const ClosedFormM& m1, const ClosedFormM& m2);

/// Folds atomic_m over the expanded join. Throws UnsupportedDomain unless
/// capabilities(d).spectrum_exact.
ClosedFormM domain_m(const DomainExpr& d, BoundaryCondition bc);

/// Exact binomial expansion of the factor form up to nu_max. Throws Overflow once
/// a coefficient passes 2^53.
SpectralSeries expand_series(const ClosedFormM& m, double nu_max);

/// Series product, truncated at `cutoff`, with exponents merged at kExponentMergeTol.
SpectralSeries convolve_series(const SpectralSeries& a, const SpectralSeries& b, double cutoff);

/// Expansion of 1 / (1 - z^2): degrees 0, 2, 4, ... each of multiplicity one.
SpectralSeries ladder_series(double cutoff);

/// Analytic asymptotic coefficients of M near z = 1. A numeric evaluation of
/// M(e^{+-s}) near s = 0 cross-checks b0, b1 and b2; a mismatch throws Internal.
AsymptoticCoeffs asymptotics_from_form(const ClosedFormM& m);

/// W(nu): number of degrees <= nu counted with multiplicity.
long long counting_function(const SpectralSeries& s, double nu);

/// Large-nu expansion of W(nu) from b0, b1, b2 on S^{n-1}.
double weyl_counting(const AsymptoticCoeffs& coeffs, int n, double nu);

/// |M(1/z) - (-1)^{n-1} z^{n-2-gamma} M(z)|.
double functional_equation_check(const ClosedFormM& m, int n, double gamma, double z);

/// |M_D(1/z) - (-1)^{n-1} z^{n-2} M_N(z)|.
double dirichlet_neumann_pairing_check(const ClosedFormM& dirichlet, const ClosedFormM& neumann, int n,
                                       double z);

}  // namespace conespec
