#include "heightlab/heights.hpp"

#include <cmath>

namespace heightlab {

std::string PolarizationChoice::name() const {
  switch (kind) {
    case NumberField:
      return "number-field";
    case Arithmetic:
      return "arithmetic";
    case Geometric:
      return "geometric";
    case AuxiliaryA:
      return "auxiliary(slot " + std::to_string(slot) + ", scale " +
             std::to_string(scale) + ")";
  }
  return "?";
}

HeightEstimate height_number_field(const ProjectivePoint& point) {
  if (point.nvars() != 0)
    throw DomainError("number-field height needs constant coordinates (d = 0)");
  mpz_class m = 0;
  for (const auto& c : point.coords()) {
    if (c.is_zero()) continue;
    mpz_class a = abs(c.leading_coeff());
    if (a > m) m = a;
  }
  HeightEstimate h;
  h.exact_part = 0.0;  // coprime integers: no finite place contributes
  h.arch = exact_estimate(log_mpz_abs(m), 0);
  return h;
}

HeightEstimate naive_height(const ProjectivePoint& point, const PolarizationChoice& pol,
                            const MCParams& params, int threads) {
  const int d = point.nvars();
  HeightEstimate h;
  switch (pol.kind) {
    case PolarizationChoice::NumberField:
      return height_number_field(point);

    case PolarizationChoice::Arithmetic: {
      if (d == 0) return height_number_field(point);
      const double ed = e_all_fs(d);
      double exact = 0.0;
      for (int i = 1; i <= d; ++i)
        exact += static_cast<double>(point.max_degree_in(i)) * ed;
      h.exact_part = exact;
      h.arch = logmax_integral(point, params, threads);
      return h;
    }

    case PolarizationChoice::Geometric: {
      if (d != 1)
        throw DomainError("geometric polarization is defined over one variable (d = 1)");
      // Scale e^-1 makes the divisor coefficient exactly 1; the flat metric
      // kills the curvature form, so there is no integral term.
      h.exact_part = static_cast<double>(point.max_degree_in(1));
      h.arch = exact_estimate(0.0, params.seed);
      h.arch.samples_used = 0;
      return h;
    }

    case PolarizationChoice::AuxiliaryA: {
      if (d < 1) throw DomainError("auxiliary polarization needs d >= 1");
      if (pol.slot < 1 || pol.slot > d)
        throw DomainError("auxiliary slot outside 1.." + std::to_string(d));
      if (!(pol.scale > 0.0)) throw DomainError("auxiliary scale must be positive");
      // Only the slot's divisor at infinity survives; the top curvature power
      // vanishes because the slot factor is flat.
      h.exact_part = static_cast<double>(point.max_degree_in(pol.slot)) *
                     aux_height_constant(pol.scale, d);
      h.arch = exact_estimate(0.0, params.seed);
      h.arch.samples_used = 0;
      return h;
    }
  }
  throw DomainError("unknown polarization");
}

NevanlinnaT nevanlinna_T(const RationalFunction& f, double r, const MCParams& params,
                         int threads) {
  if (f.nvars() != 1) throw DomainError("characteristic needs a univariate function");
  if (f.is_zero()) throw DomainError("characteristic of the zero function");
  if (!(r > 0.0)) throw DomainError("radius must be positive");
  if (f.den().constant_coeff() == 0)
    throw DomainError("pole at the origin: the counting term is not defined");

  NevanlinnaT t;
  if (!f.den().is_constant()) {
    for (const auto& a : roots(f.den())) {
      double m = std::abs(a);
      if (m < r) t.counting += std::log(r / m);
    }
  }
  t.prox = proximity(f, r, params, threads);
  return t;
}

}  // namespace heightlab
