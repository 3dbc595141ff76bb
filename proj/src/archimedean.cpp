#include "heightlab/archimedean.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <limits>

namespace heightlab {

namespace {

constexpr double kNegInf = -std::numeric_limits<double>::infinity();
constexpr int kMaxVars = 32;
constexpr int kAberthCap = 200;

using cplx = std::complex<double>;

// 0.5 * log(1 + |a|^2) without overflow for huge |a|.
double half_log1p_sq(double a) {
  if (a > 1e18) return std::log(a);
  return 0.5 * std::log1p(a * a);
}

// Horner evaluation of p and p' at x for |x| <= 1; for |x| > 1 the Newton
// ratio p/p' is computed through the reversed polynomial at y = 1/x, which
// keeps every intermediate bounded:
//   p(x) = x^n r(y),  p'(x) = x^{n-1} (n r(y) - y r'(y)),  r(y) = sum b_{n-j} y^j.
cplx newton_ratio(const std::vector<cplx>& b, cplx x, bool& derivative_zero) {
  std::size_t n = b.size() - 1;
  derivative_zero = false;
  if (std::abs(x) <= 1.0) {
    cplx p = b[n], dp = 0.0;
    for (std::size_t k = n; k-- > 0;) {
      dp = dp * x + p;
      p = p * x + b[k];
    }
    if (p == 0.0) return 0.0;
    if (dp == 0.0) {
      derivative_zero = true;
      return 0.0;
    }
    return p / dp;
  }
  cplx y = 1.0 / x;
  // r(y) = sum_k b_{n-k} y^k has leading coefficient b_0 and constant b_n;
  // Horner therefore walks b upward from b_1.
  cplx r = b[0], dr = 0.0;
  for (std::size_t j = 1; j <= n; ++j) {
    dr = dr * y + r;
    r = r * y + b[j];
  }
  if (r == 0.0) return 0.0;
  cplx denom = static_cast<double>(n) * r - y * dr;
  if (denom == 0.0) {
    derivative_zero = true;
    return 0.0;
  }
  return x * r / denom;
}

// Max coefficient deviation between the monic product over the candidate
// roots and the monic input b (ascending, b.back() == 1).
double recon_error(const std::vector<cplx>& b, const std::vector<cplx>& x) {
  std::vector<cplx> recon(1, cplx(1.0));
  for (const cplx& root : x) {
    recon.push_back(cplx(0.0));
    for (std::size_t k = recon.size() - 1; k >= 1; --k)
      recon[k] = recon[k - 1] - recon[k] * root;
    recon[0] = -recon[0] * root;
  }
  double err = 0.0;
  for (std::size_t k = 0; k < b.size(); ++k) err = std::max(err, std::abs(recon[k] - b[k]));
  return err;
}

// A few plain Newton steps on each approximation, kept only while the step
// size decreases (multiple roots make the ratio oscillate at the noise
// floor, so this never loops long).
void newton_polish(const std::vector<cplx>& b, std::vector<cplx>& x) {
  for (cplx& xi : x) {
    double prev = std::numeric_limits<double>::infinity();
    for (int it = 0; it < 20; ++it) {
      bool dzero = false;
      cplx nr = newton_ratio(b, xi, dzero);
      if (dzero || nr == 0.0) break;
      double step = std::abs(nr);
      if (step >= prev) break;
      xi -= nr;
      if (step <= 1e-16 * (1.0 + std::abs(xi))) break;
      prev = step;
    }
  }
}

// Collapse clusters of approximations onto their common center.  A cluster
// of multiplicity m approximates a simple root of the (m-1)-st derivative,
// where Newton converges quadratically to machine accuracy.
std::vector<cplx> cluster_refine(const std::vector<cplx>& b, std::vector<cplx> x) {
  const std::size_t n = x.size();
  std::vector<std::size_t> parent(n);
  for (std::size_t i = 0; i < n; ++i) parent[i] = i;
  auto find = [&](std::size_t i) {
    while (parent[i] != i) i = parent[i] = parent[parent[i]];
    return i;
  };
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i + 1; j < n; ++j) {
      double radius = 1e-4 * (1.0 + std::min(std::abs(x[i]), std::abs(x[j])));
      if (std::abs(x[i] - x[j]) <= radius) parent[find(i)] = find(j);
    }

  for (std::size_t rep = 0; rep < n; ++rep) {
    if (find(rep) != rep) continue;
    std::vector<std::size_t> members;
    for (std::size_t i = 0; i < n; ++i)
      if (find(i) == rep) members.push_back(i);
    const std::size_t m = members.size();
    if (m < 2) continue;

    cplx center = 0.0;
    for (std::size_t i : members) center += x[i];
    center /= static_cast<double>(m);

    // Coefficients of p^(m-1) (ascending), normalized monic for conditioning.
    std::vector<cplx> db;
    for (std::size_t k = m - 1; k < b.size(); ++k) {
      double fall = 1.0;
      for (std::size_t t = 0; t < m - 1; ++t) fall *= static_cast<double>(k - t);
      db.push_back(b[k] * fall);
    }
    cplx dlead = db.back();
    for (cplx& c : db) c /= dlead;

    cplx refined = center;
    double guard = 0.0;
    for (std::size_t i : members) guard = std::max(guard, std::abs(x[i] - center));
    guard = 8.0 * guard + 1e-12 * (1.0 + std::abs(center));
    for (int it = 0; it < 40 && db.size() >= 2; ++it) {
      bool dzero = false;
      cplx nr = newton_ratio(db, refined, dzero);
      if (dzero || nr == 0.0) break;
      refined -= nr;
      if (std::abs(nr) <= 1e-16 * (1.0 + std::abs(refined))) break;
    }
    if (std::abs(refined - center) > guard) refined = center;
    for (std::size_t i : members) x[i] = refined;
  }
  return x;
}

}  // namespace

std::vector<cplx> poly_roots(std::vector<cplx> coeffs, double tol) {
  while (!coeffs.empty() && coeffs.back() == 0.0) coeffs.pop_back();
  if (coeffs.empty()) throw DomainError("roots of the zero polynomial");
  if (tol <= 0) throw DomainError("root tolerance must be positive");

  std::vector<cplx> found;
  // Exact zero roots come off directly.
  std::size_t shift = 0;
  while (shift + 1 < coeffs.size() && coeffs[shift] == 0.0) ++shift;
  for (std::size_t i = 0; i < shift; ++i) found.push_back(0.0);
  if (shift) coeffs.erase(coeffs.begin(), coeffs.begin() + static_cast<long>(shift));

  const std::size_t n = coeffs.size() - 1;
  if (n == 0) return found;

  const cplx lead = coeffs.back();
  std::vector<cplx> b(coeffs.size());
  for (std::size_t k = 0; k < coeffs.size(); ++k) b[k] = coeffs[k] / lead;

  if (n == 1) {
    found.push_back(-b[0]);
    return found;
  }

  double maxb = 0.0;
  for (std::size_t k = 0; k < n; ++k) maxb = std::max(maxb, std::abs(b[k]));
  const double cauchy = 1.0 + maxb;
  double r0 = std::pow(std::abs(b[0]), 1.0 / static_cast<double>(n));
  r0 = std::clamp(r0, 0.5, cauchy);

  std::vector<cplx> x(n);
  for (std::size_t j = 0; j < n; ++j) {
    // Perturbed circle: irrational-ish angular offset breaks symmetric traps.
    double ang = 2.0 * M_PI * static_cast<double>(j) / static_cast<double>(n) +
                 0.3992 + 0.5 / static_cast<double>(n);
    x[j] = std::polar(r0, ang);
  }

  for (int iter = 0; iter < kAberthCap; ++iter) {
    double worst = 0.0;
    for (std::size_t j = 0; j < n; ++j) {
      bool dzero = false;
      cplx nr = newton_ratio(b, x[j], dzero);
      if (dzero) {
        x[j] += std::polar(1e-6 * (1.0 + std::abs(x[j])), 0.7 + static_cast<double>(j));
        worst = 1.0;
        continue;
      }
      if (nr == 0.0) continue;
      cplx s = 0.0;
      for (std::size_t k = 0; k < n; ++k) {
        if (k == j) continue;
        cplx d = x[j] - x[k];
        if (d == 0.0) d = cplx(1e-12 * (1.0 + std::abs(x[j])), 0.0);
        s += 1.0 / d;
      }
      cplx denom = 1.0 - nr * s;
      cplx w = denom == 0.0 ? nr : nr / denom;
      x[j] -= w;
      worst = std::max(worst, std::abs(w) / (1.0 + std::abs(x[j])));
    }
    if (worst < 1e-14) break;
  }

  double scale = 1.0;
  for (std::size_t k = 0; k <= n; ++k) scale = std::max(scale, std::abs(b[k]));
  const double accept = tol * static_cast<double>(n) * scale;
  double err = recon_error(b, x);

  if (err > accept) {
    // Rescue passes for stalled iterations.  Individual approximations to a
    // multiple root cannot beat ~sqrt(machine epsilon), but a cluster of
    // multiplicity m sits on a simple (hence Newton-polishable) root of the
    // (m-1)-st derivative, and collapsing the cluster onto it reconstructs
    // the input to full precision again.
    std::vector<cplx> polished = x;
    newton_polish(b, polished);
    double perr = recon_error(b, polished);
    if (perr < err) {
      x.swap(polished);
      err = perr;
    }
    std::vector<cplx> clustered = cluster_refine(b, x);
    double cerr = recon_error(b, clustered);
    if (cerr < err) {
      x.swap(clustered);
      err = cerr;
    }
  }

  if (!(err <= accept))
    throw RootFindError("iteration stalled with residual " + std::to_string(err) +
                        " above tolerance at degree " + std::to_string(n));

  found.insert(found.end(), x.begin(), x.end());
  return found;
}

namespace {

// Integer coefficients of a univariate polynomial as complex doubles plus a
// common log-scale (nonzero only when coefficients exceed double range).
void poly_to_coeffs(const MultiPoly& f, std::vector<cplx>& out, double& log_scale) {
  if (f.is_zero()) throw DomainError("expected a nonzero polynomial");
  if (f.nvars() > 1) throw DomainError("expected a univariate polynomial");
  int deg = f.nvars() == 0 ? 0 : f.degree_in(1);
  out.assign(static_cast<std::size_t>(deg) + 1, cplx(0.0));
  log_scale = 0.0;
  bool huge = false;
  for (const auto& [e, c] : f.terms())
    if (mpz_sizeinbase(c.get_mpz_t(), 2) > 1000) huge = true;
  if (!huge) {
    for (const auto& [e, c] : f.terms()) {
      std::size_t k = f.nvars() == 0 ? 0 : e[0];
      out[k] = cplx(c.get_d());
    }
    return;
  }
  double lmax = kNegInf;
  for (const auto& [e, c] : f.terms()) lmax = std::max(lmax, log_mpz_abs(c));
  log_scale = lmax;
  for (const auto& [e, c] : f.terms()) {
    std::size_t k = f.nvars() == 0 ? 0 : e[0];
    double mag = std::exp(log_mpz_abs(c) - lmax);
    out[k] = cplx(sgn(c) < 0 ? -mag : mag);
  }
}

}  // namespace

// log of the sphere integral in closed form from the roots; coefficients may
// carry an external log-scale.  Leading coefficients that are negligible
// relative to the largest one are dropped first: the matching enormous roots
// change the integral only at the same negligible order.
double log_jensen_coeffs(std::vector<cplx> coeffs, double log_scale, double tol) {
  while (!coeffs.empty() && coeffs.back() == 0.0) coeffs.pop_back();
  if (coeffs.empty()) throw DomainError("measure of the zero polynomial");
  double maxc = 0.0;
  for (const auto& c : coeffs) maxc = std::max(maxc, std::abs(c));
  while (coeffs.size() > 1 && std::abs(coeffs.back()) < 1e-250 * maxc) coeffs.pop_back();
  if (coeffs.size() == 1) return log_scale + std::log(std::abs(coeffs[0]));
  std::vector<cplx> rts = poly_roots(coeffs, tol);
  double acc = log_scale + std::log(std::abs(coeffs.back()));
  for (const auto& a : rts) acc += half_log1p_sq(std::abs(a));
  return acc;
}

std::vector<cplx> roots(const MultiPoly& f, double tol) {
  std::vector<cplx> coeffs;
  double log_scale = 0.0;
  poly_to_coeffs(f, coeffs, log_scale);
  if (coeffs.size() == 1) return {};
  return poly_roots(coeffs, tol);
}

double log_jensen_v1(const MultiPoly& f, double tol) {
  std::vector<cplx> coeffs;
  double log_scale = 0.0;
  poly_to_coeffs(f, coeffs, log_scale);
  return log_jensen_coeffs(std::move(coeffs), log_scale, tol);
}

double jensen_v1(const MultiPoly& f, double tol) { return std::exp(log_jensen_v1(f, tol)); }

// --- scaled sparse evaluation ---------------------------------------------

namespace {

struct EvalPlan {
  struct Term {
    double logc;
    double sgn;
    std::vector<std::uint32_t> e;
  };
  int nvars = 0;
  std::vector<Term> terms;

  explicit EvalPlan(const MultiPoly& f) : nvars(f.nvars()) {
    if (nvars > kMaxVars) throw DomainError("too many variables for numeric evaluation");
    terms.reserve(f.term_count());
    for (const auto& [e, c] : f.terms())
      terms.push_back(Term{log_mpz_abs(c), sgn(c) < 0 ? -1.0 : 1.0, e});
  }

  bool empty() const { return terms.empty(); }

  // f(z) = value * exp(scale); {-inf, 0} at an exact zero.
  void eval(const cplx* z, double& scale, cplx& value) const {
    std::array<double, kMaxVars> lr, th;
    for (int i = 0; i < nvars; ++i) {
      double a = std::abs(z[i]);
      lr[i] = a == 0.0 ? kNegInf : std::log(a);
      th[i] = std::arg(z[i]);
    }
    double lmax = kNegInf;
    for (const auto& t : terms) {
      double l = t.logc;
      for (int i = 0; i < nvars; ++i)
        if (t.e[i]) l += static_cast<double>(t.e[i]) * lr[i];
      lmax = std::max(lmax, l);
    }
    if (lmax == kNegInf) {
      scale = kNegInf;
      value = 0.0;
      return;
    }
    cplx acc = 0.0;
    for (const auto& t : terms) {
      double l = t.logc;
      double phase = 0.0;
      bool dead = false;
      for (int i = 0; i < nvars; ++i) {
        if (!t.e[i]) continue;
        if (lr[i] == kNegInf) {
          dead = true;
          break;
        }
        l += static_cast<double>(t.e[i]) * lr[i];
        phase += static_cast<double>(t.e[i]) * th[i];
      }
      if (dead) continue;
      acc += t.sgn * std::exp(l - lmax) * std::polar(1.0, phase);
    }
    scale = lmax;
    value = acc;
  }

  // log |f(z)|, -inf at zeros.
  double log_abs(const cplx* z) const {
    double scale;
    cplx value;
    eval(z, scale, value);
    double a = std::abs(value);
    return a == 0.0 ? kNegInf : scale + std::log(a);
  }
};

}  // namespace

MCEstimate v_measure(const MultiPoly& f, const MCParams& params, int threads) {
  if (f.is_zero()) throw DomainError("measure of the zero polynomial");
  const int d = f.nvars();
  if (d == 0 || f.is_constant())
    return exact_estimate(log_mpz_abs(f.leading_coeff()), params.seed);
  if (d == 1) return exact_estimate(log_jensen_v1(f), params.seed);

  // Coefficient polynomials of powers of z1; each is evaluated at the sampled
  // (z2..zd) and the inner z1-integral is the closed-form sphere integral.
  const int deg1 = f.degree_in(1);
  std::vector<EvalPlan> coeff_plans;
  coeff_plans.reserve(static_cast<std::size_t>(deg1) + 1);
  for (int k = 0; k <= deg1; ++k)
    coeff_plans.emplace_back(f.coeff_of_power(1, static_cast<std::uint32_t>(k)));

  auto integrand = [&](CounterRng& rng, std::uint64_t& resamples) -> double {
    thread_local std::vector<cplx> z, coeffs;
    z.assign(static_cast<std::size_t>(d), cplx(1.0));  // slot 0 is unused
    for (int attempt = 0;; ++attempt) {
      for (int i = 1; i < d; ++i) z[static_cast<std::size_t>(i)] = sample_fs(rng);
      double lmax = kNegInf;
      thread_local std::vector<double> scales;
      thread_local std::vector<cplx> values;
      scales.assign(coeff_plans.size(), kNegInf);
      values.assign(coeff_plans.size(), cplx(0.0));
      for (std::size_t k = 0; k < coeff_plans.size(); ++k) {
        if (coeff_plans[k].empty()) continue;
        coeff_plans[k].eval(z.data(), scales[k], values[k]);
        double a = std::abs(values[k]);
        if (a > 0.0) lmax = std::max(lmax, scales[k] + std::log(a));
      }
      if (lmax == kNegInf) {
        // The specialization vanished identically: a measure-zero event for a
        // nonzero polynomial, so redraw.
        ++resamples;
        if (attempt > 64)
          throw DomainError("specialization keeps vanishing; polynomial looks degenerate");
        continue;
      }
      coeffs.assign(coeff_plans.size(), cplx(0.0));
      for (std::size_t k = 0; k < coeff_plans.size(); ++k) {
        double a = std::abs(values[k]);
        if (a == 0.0) continue;
        coeffs[k] = values[k] * std::exp(scales[k] - lmax);
      }
      try {
        return lmax + log_jensen_coeffs(coeffs, 0.0, 1e-12);
      } catch (const RootFindError&) {
        // Numerically degenerate specialization (e.g. a near-multiple root
        // configuration): redraw like a vanishing one, counted the same way.
        ++resamples;
        if (attempt > 64)
          throw DomainError("specialization keeps degenerating; polynomial looks singular");
        continue;
      }
    }
  };

  MCEstimate est = detail::run_mc(params, threads, integrand);
  if (est.resamples >
      static_cast<std::uint64_t>(1e-3 * static_cast<double>(est.samples_used)))
    throw DomainError("specialization vanished too often (" +
                      std::to_string(est.resamples) + " of " +
                      std::to_string(est.samples_used) + " samples)");
  return est;
}

MCEstimate logmax_integral(const ProjectivePoint& point, const MCParams& params,
                           int threads) {
  const int d = point.nvars();
  if (point.all_constant()) {
    mpz_class m = 0;
    for (const auto& c : point.coords()) {
      if (c.is_zero()) continue;
      mpz_class a = abs(c.leading_coeff());
      if (a > m) m = a;
    }
    return exact_estimate(log_mpz_abs(m), params.seed);
  }

  std::vector<EvalPlan> plans;
  plans.reserve(point.coords().size());
  for (const auto& c : point.coords()) plans.emplace_back(c);

  auto integrand = [&](CounterRng& rng, std::uint64_t& resamples) -> double {
    thread_local std::vector<cplx> z;
    for (int attempt = 0;; ++attempt) {
      z.clear();
      for (int i = 0; i < d; ++i) z.push_back(sample_fs(rng));
      double m = kNegInf;
      for (const auto& plan : plans) {
        if (plan.empty()) continue;
        m = std::max(m, plan.log_abs(z.data()));
      }
      if (m != kNegInf) return m;
      ++resamples;
      if (attempt > 64)
        throw DomainError("all coordinates keep vanishing; point looks degenerate");
    }
  };

  return detail::run_mc(params, threads, integrand);
}

MCEstimate proximity(const RationalFunction& f, double r, const MCParams& params,
                     int threads) {
  if (!(r > 0.0)) throw DomainError("proximity radius must be positive");
  if (f.is_zero()) throw DomainError("proximity of the zero function");
  if (f.nvars() != 1) throw DomainError("proximity needs a univariate function");

  // No pole may sit (almost) on the integration circle.
  if (!f.den().is_constant()) {
    double margin = 1e-9 * std::max(1.0, r);
    for (const auto& a : roots(f.den())) {
      if (std::fabs(std::abs(a) - r) <= margin)
        throw DomainError("pole within tolerance of the circle |z| = " + std::to_string(r));
    }
  }

  EvalPlan num_plan(f.num());
  EvalPlan den_plan(f.den());
  auto node_value = [&](std::uint64_t k, std::uint64_t total) -> double {
    double theta = 2.0 * M_PI * (static_cast<double>(k) + 0.5) / static_cast<double>(total);
    cplx z = std::polar(r, theta);
    double ln = num_plan.log_abs(&z);
    double ld = den_plan.log_abs(&z);
    if (ld == kNegInf) throw DomainError("pole hit on the integration circle");
    if (ln == kNegInf) return 0.0;  // log+ of 0
    return std::max(0.0, ln - ld);
  };

  // Deterministic midpoint quadrature in the same batch layout as the MC
  // runner (mean of batch means, spread of batch means as std_error).
  MCParams q = params;
  q.target_stderr.reset();
  q.validate();
  const std::uint64_t nbatch = (q.samples + q.batch_size - 1) / q.batch_size;
  const std::uint64_t total = nbatch * q.batch_size;
  std::vector<double> means(nbatch, 0.0);
  auto run_batch = [&](std::uint64_t b) {
    double sum = 0.0;
    for (std::uint64_t i = 0; i < q.batch_size; ++i)
      sum += node_value(b * q.batch_size + i, total);
    means[b] = sum / static_cast<double>(q.batch_size);
  };
  if (threads <= 1 || nbatch <= 1) {
    for (std::uint64_t b = 0; b < nbatch; ++b) run_batch(b);
  } else {
    unsigned nw =
        std::min<std::uint64_t>(static_cast<std::uint64_t>(std::max(threads, 1)), nbatch);
    std::vector<std::thread> pool;
    pool.reserve(nw);
    for (unsigned w = 0; w < nw; ++w)
      pool.emplace_back([&, w] {
        for (std::uint64_t b = w; b < nbatch; b += nw) run_batch(b);
      });
    for (auto& t : pool) t.join();
  }
  double mean = 0.0;
  for (double m : means) mean += m;
  mean /= static_cast<double>(nbatch);
  double varsum = 0.0;
  for (double m : means) varsum += (m - mean) * (m - mean);
  MCEstimate est;
  est.mean = mean;
  est.std_error = nbatch > 1 ? std::sqrt(varsum / static_cast<double>(nbatch - 1) /
                                         static_cast<double>(nbatch))
                             : 0.0;
  est.samples_used = total;
  est.seed = q.seed;
  return est;
}

}  // namespace heightlab
