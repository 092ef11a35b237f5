#pragma once

#include <vector>

#include "domain.hpp"

namespace conespec {

struct TruncationControl {
  int max_terms = 60;
  double target_tol = 1e-10;
};

enum class KernelKind { FreeLine, HalfLineDirichlet, HalfLineNeumann, FreeSpace, Orthant };

/// Heat kernel of d f / d tau = (1/2) Laplacian on a cone with a known closed form.
/// Orthant is the Dirichlet product of half-line kernels.
struct ExplicitKernel {
  KernelKind kind = KernelKind::FreeLine;
  int n = 1;
};

/// Throws DomainError for negative coordinates on half-line/orthant kernels and
/// InvalidArgument when coordinate counts do not match the kernel.
double kernel_eval(const ExplicitKernel& k, const std::vector<double>& x, const std::vector<double>& xp, double tau);

/// |e^{-r^2} sum_{k=1..K} I_{2k}(r^2) - [1/4 - I_0(r^2) e^{-r^2}/2 + e^{-2r^2}/4]|.
/// Throws ToleranceNotMet if the residual exceeds tc.target_tol.
double arc_trace_identity_residual(double r, const TruncationControl& tc);

/// |(1-z^2) z^{-n/2} int e^{-(1-z)^2 r^2/(2z)} f(x,x,1) d^n x - M(z)| for the whole
/// space (kind FreeSpace) or the Dirichlet orthant (kind Orthant, n <= 3).
double mzf_numeric_residual(const ExplicitKernel& k, double z);

/// |trace-side integral - M(e^{-s})| for a spectrum-exact domain.
double mhk_identity_residual(const DomainExpr& d, BoundaryCondition bc, double s, const TruncationControl& tc);

/// (1/|S^{n-1}|) (1 - z^2) / (1 - 2 z cos(theta) + z^2)^{n/2}.
double poisson_kernel(int n, double theta, double z);

/// |S^{n-2}| int_0^pi P(theta) sin^{n-2}(theta) d theta; equals 1.
double poisson_normalization(int n, double z);

/// Gegenbauer polynomial C_k^{alpha}(x) by the three-term recurrence.
double gegenbauer(int k, double alpha, double x);

/// |d P / d z at z = 0 - zonal harmonic of degree one|, the derivative taken by
/// Richardson-extrapolated forward differences. Needs n >= 3.
double poisson_first_coefficient_residual(int n, double theta);

}  // namespace conespec
