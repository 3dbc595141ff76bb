#pragma once

#include <complex>
#include <vector>

#include "heightlab/mc.hpp"
#include "heightlab/multipoly.hpp"
#include "heightlab/rational.hpp"

namespace heightlab {

// All deg(f) complex roots (with multiplicity, clustered for multiple roots)
// of a nonzero univariate polynomial, via the Aberth-Ehrlich simultaneous
// iteration from perturbed-circle starting points.  The result is accepted
// only when the monic product over the returned roots reproduces the input
// coefficients to relative accuracy tol * deg(f); otherwise RootFindError.
std::vector<std::complex<double>> roots(const MultiPoly& f, double tol = 1e-12);

// Same driver on raw complex coefficients (ascending degree).
std::vector<std::complex<double>> poly_roots(std::vector<std::complex<double>> coeffs,
                                             double tol = 1e-12);

// Exact sphere integral of log|f| for nonzero univariate f = c*prod(z - a_i):
//   v(f) = |c| * prod_i sqrt(1 + |a_i|^2),
// the closed form of exp(int log|f| omega) over the Fubini-Study measure.
double jensen_v1(const MultiPoly& f, double tol = 1e-12);
double log_jensen_v1(const MultiPoly& f, double tol = 1e-12);

// Same closed form on raw complex coefficients (ascending degree), with an
// optional common log-scale already factored out of the coefficients.
double log_jensen_coeffs(std::vector<std::complex<double>> coeffs,
                         double log_scale = 0.0, double tol = 1e-12);

// Multiplicative measure v(f) = exp(int log|f| omega_1 ... omega_d) for a
// nonzero polynomial in d variables.  The returned mean is log v(f) (the
// integral itself); exponentiate for v.  d <= 1 is evaluated exactly via
// jensen_v1 with stderr 0.  For d >= 2 the z1-integral is done in closed form
// at each sampled (z2..zd), and only the outer (d-1)-dimensional average is
// Monte Carlo, with the stderr reported on the log scale.
MCEstimate v_measure(const MultiPoly& f, const MCParams& params, int threads = 1);

// int log max_j |f_j(z)| over the product Fubini-Study probability measure.
// Exact (stderr 0, samples_used 0) when d = 0 or all coordinates are
// constants.  Samples where every coordinate evaluates to zero are redrawn
// and counted in `resamples`.
MCEstimate logmax_integral(const ProjectivePoint& point, const MCParams& params,
                           int threads = 1);

// Nevanlinna proximity function m_f(r) = int_0^{2pi} log+ |f(r e^{i t})| dt/2pi,
// computed by deterministic uniform-midpoint angular quadrature on
// params.samples nodes (the node average is reported as `mean`, the node
// spread as `std_error`).  Requires the denominator to have no root within
// a small relative tolerance of the circle |z| = r.
MCEstimate proximity(const RationalFunction& f, double r, const MCParams& params,
                     int threads = 1);

}  // namespace heightlab
