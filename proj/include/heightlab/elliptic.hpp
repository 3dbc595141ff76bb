#pragma once

#include <optional>
#include <vector>

#include "heightlab/heights.hpp"

namespace heightlab {

// Elliptic curve in long Weierstrass form
//   y^2 + a1 x y + a3 y = x^3 + a2 x^2 + a4 x + a6
// over Q (nvars = 0) or Q(t) (nvars = 1), with nonzero discriminant.
struct EllipticCurve {
  int nvars = 0;
  RationalFunction a1, a2, a3, a4, a6;
  RationalFunction disc;

  EllipticCurve(int nvars_, RationalFunction a1_, RationalFunction a2_,
                RationalFunction a3_, RationalFunction a4_, RationalFunction a6_);

  // y^2 + a1 x y + a3 y - (x^3 + a2 x^2 + a4 x + a6)
  RationalFunction equation_residual(const RationalFunction& x,
                                     const RationalFunction& y) const;
};

struct ECPoint {
  bool infinity = true;
  RationalFunction x, y;

  static ECPoint at_infinity(int nvars);
  // Validates the curve equation exactly.
  static ECPoint affine(const EllipticCurve& E, RationalFunction x, RationalFunction y);

  bool operator==(const ECPoint& o) const;
  bool operator!=(const ECPoint& o) const { return !(*this == o); }
};

ECPoint ec_neg(const EllipticCurve& E, const ECPoint& P);
ECPoint ec_add(const EllipticCurve& E, const ECPoint& P, const ECPoint& Q);
ECPoint ec_mul(const EllipticCurve& E, const ECPoint& P, long m);

// Height of the x-coordinate image (x : 1) in P^1; P must be affine.
HeightEstimate x_height(const EllipticCurve& E, const ECPoint& P,
                        const PolarizationChoice& pol, const MCParams& params,
                        int threads = 1);

struct TateRow {
  int n = 0;           // stage: the point is 2^n P
  double height = 0;   // x-height of 2^n P
  double scaled = 0;   // 4^-n * height
  double diff = 0;     // |scaled - previous scaled| (0 at stage 0)
  double std_error = 0;  // 4^-n * stderr of the height integral
};

struct CanonicalHeightResult {
  double value = 0.0;
  double error_bound = 0.0;  // last scaled difference + scaled integral stderr
  bool converged = false;
  int torsion_stage = -1;  // n with 2^n P = infinity, -1 when never hit
  std::vector<TateRow> table;
};

// Canonical height as the Tate limit lim 4^-n h(x(2^n P)); stops after two
// consecutive scaled differences below tol or at stage n_cap.  If a doubling
// reaches infinity the value is exactly 0 with the stage recorded.
CanonicalHeightResult canonical_height(const EllipticCurve& E, const ECPoint& P,
                                       const PolarizationChoice& pol, double tol,
                                       int n_cap, const MCParams& params,
                                       int threads = 1);

enum class TorsionVerdict { Torsion, NotTorsion, Undecided };

struct TorsionResult {
  TorsionVerdict verdict = TorsionVerdict::Undecided;
  long certificate_m = 0;  // smallest multiple found with mP = infinity (0 if none)
  std::optional<CanonicalHeightResult> height;  // present when the ladder ran
};

// Exact multiples m = 1..m_cap first (a hit is a certificate); otherwise the
// canonical height decides: above 3x its error bound the point is free, and
// anything smaller stays undecided (a small limit is not a certificate).
TorsionResult is_torsion(const EllipticCurve& E, const ECPoint& P,
                         const PolarizationChoice& pol, long m_cap, double tol,
                         int n_cap, const MCParams& params, int threads = 1);

}  // namespace heightlab
