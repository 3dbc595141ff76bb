#pragma once

#include <optional>
#include <vector>

#include "heightlab/mc.hpp"

namespace heightlab {

// Metrized line bundle on one P^1_Z factor: either O(1) with the
// Fubini-Study metric, or the trivial bundle O with its canonical metric
// scaled by a constant c > 0 (norm of the section 1 equal to c).
struct FactorBundle {
  enum Kind { FS, ScaledTrivial } kind = FS;
  double scale = 1.0;  // the c of ScaledTrivial; ignored for FS

  static FactorBundle fs() { return FactorBundle{FS, 1.0}; }
  static FactorBundle scaled_trivial(double c);

  int geometric_degree() const { return kind == FS ? 1 : 0; }
};

// Product polarization on (P^1_Z)^d: the tensor product of the pullbacks of
// one FactorBundle per factor.
struct PolarizationSpec {
  std::vector<FactorBundle> factors;

  static PolarizationSpec all_fs(int d);
  int dim() const { return static_cast<int>(factors.size()); }
};

// sigma = arithmetic self-intersection of (O(1), Fubini-Study) on P^1_Z.
// The divisor of the section X0 contributes 0 (the restricted metric has a
// unit section), leaving the sphere integral of -log||X0|| = (1/2)log(1+|z|^2),
// which evaluates to exactly 1/2.  With `verify`, the integral is also
// re-estimated by Monte Carlo and a 4-stderr disagreement is an error.
double fs_self_intersection(const std::optional<MCParams>& verify = std::nullopt,
                            int threads = 1);

// Degree of the restriction to a divisor at infinity: 0 for FS (unit section
// norm at the boundary point), -log c for the scaled trivial bundle.
double delta_infty_restriction(const FactorBundle& bundle);

// Arithmetic degree of the d-fold self-product of the polarization bundle
// restricted to the i-th divisor at infinity (i is 1-based):
//   d! * (prod_{k != i} deg L_k) * delta(L_i)
//     + (d!/2) * sum_{j != i} (prod_{k != i,j} deg L_k) * s(L_j)
// with s(FS) = sigma and s(ScaledTrivial) = 0.
double delta_infty_power(const PolarizationSpec& spec, int i);

// e = d! * (-log c + (d-1)/2 * sigma): the height constant of the auxiliary
// polarization with the scaled trivial factor c in one slot and FS elsewhere.
double aux_height_constant(double c, int d);

// e_d = delta_infty_power(all-FS, any i) = d!(d-1)/4.
double e_all_fs(int d);

double factorial(int n);

}  // namespace heightlab
