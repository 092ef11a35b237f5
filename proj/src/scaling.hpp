#pragma once

#include <string>
#include <vector>

#include "geometry.hpp"
#include "spectral.hpp"

namespace conespec {

/// lambda = nu (nu + n - 2).
double lambda_of_nu(double nu, int n);

struct LinearScaling {
  double alpha = 0.0;
  double beta = 1.0;
  int n = 0;
};

struct QuadraticScaling {
  double beta = 1.0;
  double p_t = 0.0;
  double q_t = 0.0;
  double p_r = 0.0;
  double q_r = 0.0;
  int n = 0;
};

enum class Method { Linear, Quadratic };

const char* to_string(Method m) noexcept;

struct EstimateRow {
  int k = 0;
  double nu_ref = 0.0;
  double nu = 0.0;
  long long multiplicity = 1;
  double lambda = 0.0;
};

struct EstimateReport {
  Method method = Method::Linear;
  BoundaryCondition bc = BoundaryCondition::Dirichlet;
  int n = 0;
  std::string target;
  std::string reference;
  std::vector<EstimateRow> rows;
};

LinearScaling linear_params(const DomainGeometry& target, const DomainGeometry& ref);
QuadraticScaling quadratic_params(const DomainGeometry& target, const DomainGeometry& ref);

/// nu_k = alpha + beta nu_0k over the multiplicity-expanded reference list.
EstimateReport estimate_linear(const LinearScaling& sc, const SpectralSeries& ref, int modes);

/// (nu + p_t)^2 + q_t = beta^2 [(nu_0 + p_r)^2 + q_r].
EstimateReport estimate_quadratic(const QuadraticScaling& sc, const SpectralSeries& ref, int modes);

/// Neumann variants: Linear scales nu(nu + 2p) by beta^2, Quadratic scales
/// (nu + p)^3 + 1.5 q nu - p^3 by beta^3. Both keep nu = 0 fixed.
EstimateReport estimate_neumann(const QuadraticScaling& sc, Method method, const SpectralSeries& ref, int modes);

/// Full pipeline: geometry of both domains, reference spectrum, then the
/// method matching `bc`. The reference must be spectrum-exact.
EstimateReport estimate(const DomainExpr& target, const DomainExpr& reference, BoundaryCondition bc, Method method,
                        int modes);

/// Reference spectrum holding at least `modes` modes counted with multiplicity.
SpectralSeries reference_series(const ClosedFormM& m, int modes);

/// Closed linear-scaling formula for a cap of radius theta on S^2 against the half-sphere.
double cap_formula_nu(double theta, double nu0);

/// Closed linear-scaling formula for a sector of a cap against the half-sphere sector of the same angle.
double sector_formula_nu(double theta, double phi, double nu0);

/// nu_k = (L/A - L0/sqrt(A A0) - 1)/2 + sqrt(A0 lambda_0k / A) for a domain on S^2
/// compared with a flat domain of area A0, perimeter L0 and eigenvalues lambda0.
std::vector<double> flat_reference_estimate(double area, double boundary, double area0, double boundary0,
                                            const std::vector<double>& lambda0);

/// Flat domain on the plane scaled by delta -> 0, described by its delta-free
/// coefficients: area A^ delta^2, boundary L^ delta, boundary curvature integral K^.
struct FlatDomain {
  double area_hat = 0.0;
  double boundary_hat = 0.0;
  double K_hat = 0.0;
  std::vector<Corner> corners;
};

/// Limits nu_k * delta for a shrinking domain on S^2 estimated from a reference
/// domain of fixed size, by either scaling method (Dirichlet).
std::vector<double> flat_limit(const FlatDomain& target, const DomainGeometry& ref, const SpectralSeries& ref_series,
                               Method method, int modes);

}  // namespace conespec
