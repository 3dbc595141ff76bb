#include "heightlab/arakelov.hpp"

#include <cmath>
#include <string>

namespace heightlab {

FactorBundle FactorBundle::scaled_trivial(double c) {
  if (!(c > 0.0)) throw DomainError("metric scale must be positive");
  return FactorBundle{ScaledTrivial, c};
}

PolarizationSpec PolarizationSpec::all_fs(int d) {
  if (d < 1) throw DomainError("polarization needs at least one factor");
  PolarizationSpec s;
  s.factors.assign(static_cast<std::size_t>(d), FactorBundle::fs());
  return s;
}

double factorial(int n) {
  if (n < 0) throw DomainError("factorial of a negative number");
  double f = 1.0;
  for (int k = 2; k <= n; ++k) f *= static_cast<double>(k);
  return f;
}

double fs_self_intersection(const std::optional<MCParams>& verify, int threads) {
  const double sigma = 0.5;
  if (verify) {
    MCEstimate est = detail::run_mc(*verify, threads,
                                    [](CounterRng& rng, std::uint64_t&) -> double {
                                      auto z = sample_fs(rng);
                                      double a = std::abs(z);
                                      return 0.5 * std::log1p(a * a);
                                    });
    if (std::fabs(est.mean - sigma) > 4.0 * est.std_error)
      throw DomainError("self-intersection verification failed: estimate " +
                        std::to_string(est.mean) + " +- " + std::to_string(est.std_error) +
                        " is more than 4 stderr from 0.5");
  }
  return sigma;
}

double delta_infty_restriction(const FactorBundle& bundle) {
  if (bundle.kind == FactorBundle::FS) return 0.0;
  return -std::log(bundle.scale);
}

double delta_infty_power(const PolarizationSpec& spec, int i) {
  const int d = spec.dim();
  if (d < 1) throw DomainError("empty polarization");
  if (i < 1 || i > d) throw DomainError("slot index outside 1.." + std::to_string(d));
  const double sigma = 0.5;
  const double dfact = factorial(d);

  auto deg = [&](int k) {
    return static_cast<double>(spec.factors[static_cast<std::size_t>(k - 1)].geometric_degree());
  };
  auto self_int = [&](int k) {
    return spec.factors[static_cast<std::size_t>(k - 1)].kind == FactorBundle::FS ? sigma
                                                                                  : 0.0;
  };

  double prod_not_i = 1.0;
  for (int k = 1; k <= d; ++k)
    if (k != i) prod_not_i *= deg(k);
  double acc = dfact * prod_not_i *
               delta_infty_restriction(spec.factors[static_cast<std::size_t>(i - 1)]);
  for (int j = 1; j <= d; ++j) {
    if (j == i) continue;
    double prod = 1.0;
    for (int k = 1; k <= d; ++k)
      if (k != i && k != j) prod *= deg(k);
    acc += 0.5 * dfact * prod * self_int(j);
  }
  return acc;
}

double aux_height_constant(double c, int d) {
  if (!(c > 0.0)) throw DomainError("metric scale must be positive");
  if (d < 1) throw DomainError("dimension must be at least 1");
  const double sigma = 0.5;
  return factorial(d) * (-std::log(c) + 0.5 * static_cast<double>(d - 1) * sigma);
}

double e_all_fs(int d) {
  PolarizationSpec spec = PolarizationSpec::all_fs(d);
  return delta_infty_power(spec, 1);
}

}  // namespace heightlab
