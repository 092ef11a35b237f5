#pragma once

#include <vector>

#include "domain.hpp"

namespace conespec {

/// |S^{n-1}| = 2 pi^{n/2} / Gamma(n/2); |S^0| = 2.
double sphere_size(int n);

/// A corner locus of constant dihedral angle. On S^2 the measure of a vertex is
/// 1; on higher spheres it is the (n-3)-volume of the locus.
struct Corner {
  double angle;
  double measure;
};

/// Sizes are in units of the unit sphere S^{n-1} on which the domain lives.
struct DomainGeometry {
  int n = 0;
  double area = 0.0;
  double boundary = 0.0;
  double bulk_R_integral = 0.0;
  double boundary_K_integral = 0.0;
  std::vector<Corner> corners;
  BoundaryCondition bc = BoundaryCondition::Dirichlet;
};

struct HeatCoeffs {
  double a0 = 0.0;
  double a1 = 0.0;
  double a2 = 0.0;
};

struct ScalingInputs {
  double gamma = 0.0;
  double p = 0.0;
  double q = 0.0;
  double c0 = 0.0;
  double c1 = 0.0;
};

struct GeometricBCoeffs {
  double b0 = 0.0;
  double b1 = 0.0;
  double b2 = 0.0;
};

/// Area, boundary, curvature and corner data. Joins of S0/T0/Arc atoms are
/// handled by enumerating the boundary faces of the product cone; Cap, Sector
/// and RegularT use their closed forms. Throws UnsupportedDomain otherwise.
DomainGeometry catalog_geometry(const DomainExpr& d, BoundaryCondition bc);

/// f_n(rho) = |T_rho^{n-1}| / |T^{n-1}| from the one-dimensional erfc integral,
/// by Gauss-Hermite rules of doubling order (64 .. 1024) until two agree to 1e-9.
/// Near rho = 1, or when the rules never agree, the rescaled integrand is
/// integrated adaptively instead.
double regular_t_fraction(int n, double rho);

/// |T_rho^{n-1}| for n >= 1.
double regular_t_size(int n, double rho);

/// n * |T_{rho/(1+rho)}^{n-2}|.
double regular_t_boundary_size(int n, double rho);

/// |f_n'(rho) - n(n-1) / (pi sqrt(1-rho^2)) f_{n-2}(rho/(1+2rho))|, derivative by
/// central difference with step 1e-4.
double regular_t_recursion_residual(int n, double rho);

/// f_n(rho) minus its second-order small-rho expansion.
double regular_t_small_rho_residual(int n, double rho);

struct OrthantFraction {
  double value = 0.0;
  double std_error = 0.0;
};

/// Probability that a centred Gaussian with correlation matrix `rho` lands in
/// the positive orthant, i.e. |T_rho^{n-1}| / |S^{n-1}|. Closed forms for
/// n <= 3, randomized quasi-Monte Carlo otherwise. Throws NotPositiveDefinite.
OrthantFraction general_t_size_fraction(const std::vector<std::vector<double>>& rho);

HeatCoeffs heat_coeffs(const DomainGeometry& g);

ScalingInputs scaling_inputs(const DomainGeometry& g);

/// b0, b1, b2 of M(e^-s) predicted from geometry. b2 needs n >= 3.
GeometricBCoeffs geometric_b_coeffs(const DomainGeometry& g);

}  // namespace conespec
