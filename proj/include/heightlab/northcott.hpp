#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "heightlab/heights.hpp"

namespace heightlab {

// Search box for the bounded-height enumeration.
struct EnumSpec {
  double M = 0.0;                    // height bound
  int dim = 1;                       // n: points live in P^n
  int nvars = 1;                     // d
  std::vector<int> degree_caps;      // per-variable degree cap, size d
  PolarizationChoice pol = PolarizationChoice::arithmetic();
  MCParams params;
  double classify_band = 3.0;        // borderline band in stderr units
  std::uint64_t budget = 10'000'000; // refuse larger candidate spaces
  std::optional<mpz_class> coeff_bound_override;  // for stability experiments
};

// Coefficient bound floor(2^{sum caps} * e^M) certified by the coefficient
// inequality |f| <= 2^{sum deg_i f} v(f) together with v(f_j) <= e^{h} on the
// canonical representative.
mpz_class coeff_bound(double M, const std::vector<int>& degree_caps);

struct EnumEntry {
  ProjectivePoint point;
  HeightEstimate height;
  bool borderline = false;  // |total - M| within the band
};

// All points of P^n over Q(z1..zd) with naive height (Arithmetic
// polarization) at most M among canonical representatives within the degree
// caps and the certified coefficient bound.  Accepts total <= M + band*stderr
// and flags |total - M| <= band*stderr as borderline; output is sorted by
// (total, coordinates) and deduplicated by construction (each projective
// point has a unique canonical representative).  Candidate spaces larger
// than `budget` and non-Arithmetic polarizations are refused.
std::vector<EnumEntry> enumerate_bounded(const EnumSpec& spec, int threads = 1);

}  // namespace heightlab
