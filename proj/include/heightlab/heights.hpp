#pragma once

#include <string>

#include "heightlab/arakelov.hpp"
#include "heightlab/archimedean.hpp"
#include "heightlab/rational.hpp"

namespace heightlab {

// The polarization a height is taken against.
//  - NumberField: d = 0, the classical height log max |a_i| over Q.
//  - Arithmetic:  Fubini-Study O(1) on every P^1_Z factor (also allowed at
//                 d = 0, where it degenerates to NumberField).
//  - Geometric:   d = 1, trivial bundle with canonical metric scaled by e^-1,
//                 so the height is exactly the degree max_j deg(f_j).
//  - AuxiliaryA:  FS in every slot except `slot`, which carries the scaled
//                 trivial bundle with constant `scale`.
struct PolarizationChoice {
  enum Kind { NumberField, Arithmetic, Geometric, AuxiliaryA } kind = Arithmetic;
  int slot = 1;        // AuxiliaryA only (1-based)
  double scale = 1.0;  // AuxiliaryA only

  static PolarizationChoice number_field() { return {NumberField, 1, 1.0}; }
  static PolarizationChoice arithmetic() { return {Arithmetic, 1, 1.0}; }
  static PolarizationChoice geometric() { return {Geometric, 1, 1.0}; }
  static PolarizationChoice auxiliary(int slot, double scale) {
    return {AuxiliaryA, slot, scale};
  }

  std::string name() const;
};

// Height value split into the exact divisor-at-infinity sum and the
// archimedean integral estimate.
struct HeightEstimate {
  double exact_part = 0.0;
  MCEstimate arch;

  double total() const { return exact_part + arch.mean; }
  double std_error() const { return arch.std_error; }
};

// Classical naive height of a point of P^n(Q) given by its canonical
// coprime-integer representative: log max_i |a_i|, exact.
HeightEstimate height_number_field(const ProjectivePoint& point);

// Naive height of a point of P^n over Q(z1..zd) against the chosen
// polarization.  On the canonical coprime representative only the d divisors
// at infinity contribute to the finite sum, giving
//   sum_i max_j deg_i(f_j) * (divisor coefficient)   +   archimedean integral;
// the integral is Monte Carlo for Arithmetic (d >= 1) and vanishes exactly
// for Geometric / AuxiliaryA (flat factor kills the top curvature power).
HeightEstimate naive_height(const ProjectivePoint& point, const PolarizationChoice& pol,
                            const MCParams& params, int threads = 1);

struct NevanlinnaT {
  double counting = 0.0;  // sum over poles inside |z| < r of log(r/|x|)
  MCEstimate prox;
  double total() const { return counting + prox.mean; }
};

// Nevanlinna characteristic T_f(r) of a univariate rational function with no
// pole at the origin and none on the circle |z| = r.
NevanlinnaT nevanlinna_T(const RationalFunction& f, double r, const MCParams& params,
                         int threads = 1);

}  // namespace heightlab
