#include "heightlab/northcott.hpp"

#include <algorithm>
#include <cmath>
#include <thread>

namespace heightlab {

mpz_class coeff_bound(double M, const std::vector<int>& degree_caps) {
  if (!(M >= 0.0)) throw DomainError("height bound must be nonnegative");
  long s = 0;
  for (int c : degree_caps) {
    if (c < 0) throw DomainError("degree caps must be nonnegative");
    s += c;
  }
  double v = std::ldexp(std::exp(M), static_cast<int>(s));
  if (v < 9.0e15) {
    mpz_class r;
    mpz_set_d(r.get_mpz_t(), std::floor(v));
    return r;
  }
  // Outside double range the bound only matters for the budget refusal;
  // compute it in extended precision anyway.
  mpf_class acc(1.0, 512);
  mpf_mul_2exp(acc.get_mpf_t(), acc.get_mpf_t(), static_cast<unsigned long>(s));
  int chunks = std::max(1, static_cast<int>(std::ceil(M / 300.0)));
  mpf_class factor(std::exp(M / chunks), 512);
  for (int i = 0; i < chunks; ++i) acc *= factor;
  mpf_class fl(0.0, 512);
  mpf_floor(fl.get_mpf_t(), acc.get_mpf_t());
  mpz_class r;
  mpz_set_f(r.get_mpz_t(), fl.get_mpf_t());
  return r;
}

namespace {

struct CandidateSpace {
  int nvars = 0;
  std::vector<Exponents> monomials;  // all exponent vectors within the caps
  mpz_class bound;                   // coefficients range over [-bound, bound]
  std::uint64_t radix = 0;           // 2*bound + 1
  std::uint64_t npolys = 0;          // radix^monomials
};

MultiPoly decode_poly(const CandidateSpace& space, std::uint64_t index) {
  MultiPoly f(space.nvars);
  long c = space.bound.get_si();
  for (const auto& e : space.monomials) {
    long digit = static_cast<long>(index % space.radix) - c;
    index /= space.radix;
    if (digit != 0) f.set_coeff(e, mpz_class(digit));
  }
  return f;
}

}  // namespace

std::vector<EnumEntry> enumerate_bounded(const EnumSpec& spec, int threads) {
  if (spec.pol.kind != PolarizationChoice::Arithmetic)
    throw DomainError(
        "enumeration requires the arithmetic polarization: under the " +
        spec.pol.name() +
        " polarization constant points all have height 0, so no height bound "
        "cuts the set down to finitely many points");
  if (spec.dim < 1) throw DomainError("ambient dimension must be at least 1");
  if (static_cast<int>(spec.degree_caps.size()) != spec.nvars)
    throw DomainError("need one degree cap per variable");
  if (!(spec.classify_band >= 0)) throw DomainError("classification band must be >= 0");

  CandidateSpace space;
  space.nvars = spec.nvars;
  space.bound = spec.coeff_bound_override ? *spec.coeff_bound_override
                                          : coeff_bound(spec.M, spec.degree_caps);
  if (space.bound < 1)
    throw DomainError("coefficient bound is zero: no candidate coordinates");

  // Candidate cardinality check before any materialization.
  std::uint64_t nmono = 1;
  for (int c : spec.degree_caps) nmono *= static_cast<std::uint64_t>(c) + 1;
  mpz_class radix = 2 * space.bound + 1;
  mpz_class npolys;
  mpz_pow_ui(npolys.get_mpz_t(), radix.get_mpz_t(), nmono);
  mpz_class total;
  mpz_pow_ui(total.get_mpz_t(), npolys.get_mpz_t(),
             static_cast<unsigned long>(spec.dim) + 1);
  if (total > spec.budget)
    throw DomainError("candidate space has " + total.get_str() +
                      " coordinate tuples, above the budget of " +
                      std::to_string(spec.budget));

  space.radix = radix.get_ui();
  space.npolys = npolys.get_ui();
  // Monomial digits, least significant first.
  Exponents e(static_cast<std::size_t>(spec.nvars), 0);
  for (;;) {
    space.monomials.push_back(e);
    int i = 0;
    for (; i < spec.nvars; ++i) {
      if (static_cast<int>(e[static_cast<std::size_t>(i)]) <
          spec.degree_caps[static_cast<std::size_t>(i)]) {
        ++e[static_cast<std::size_t>(i)];
        break;
      }
      e[static_cast<std::size_t>(i)] = 0;
    }
    if (i == spec.nvars) break;
  }

  const std::uint64_t ntuples = total.get_ui();
  const int ncoords = spec.dim + 1;

  auto scan_range = [&](std::uint64_t lo, std::uint64_t hi, std::vector<EnumEntry>& out) {
    std::vector<MultiPoly> coords;
    for (std::uint64_t idx = lo; idx < hi; ++idx) {
      std::uint64_t rest = idx;
      coords.clear();
      for (int j = 0; j < ncoords; ++j) {
        coords.push_back(decode_poly(space, rest % space.npolys));
        rest /= space.npolys;
      }
      // Keep only canonical representatives: some coordinate nonzero, first
      // nonzero one with positive leading coefficient, tuple gcd 1.
      int first_nonzero = -1;
      for (int j = 0; j < ncoords; ++j)
        if (!coords[static_cast<std::size_t>(j)].is_zero()) {
          first_nonzero = j;
          break;
        }
      if (first_nonzero < 0) continue;
      if (coords[static_cast<std::size_t>(first_nonzero)].leading_coeff() < 0) continue;
      MultiPoly g(spec.nvars);
      for (const auto& c : coords) {
        g = gcd(g, c);
        if (g.is_constant() && g.constant_coeff() == 1) break;
      }
      if (!(g.is_constant() && g.constant_coeff() == 1)) continue;

      ProjectivePoint point = ProjectivePoint::normalize_polys(coords);
      HeightEstimate h = naive_height(point, spec.pol, spec.params, 1);
      double slack = spec.classify_band * h.std_error();
      if (h.total() > spec.M + slack) continue;
      EnumEntry entry{std::move(point), h, std::fabs(h.total() - spec.M) <= slack};
      out.push_back(std::move(entry));
    }
  };

  std::vector<EnumEntry> entries;
  if (threads <= 1 || ntuples < 1024) {
    scan_range(0, ntuples, entries);
  } else {
    unsigned nw = static_cast<unsigned>(std::max(threads, 1));
    std::vector<std::vector<EnumEntry>> parts(nw);
    std::vector<std::thread> pool;
    std::vector<std::exception_ptr> errors(nw);
    pool.reserve(nw);
    std::uint64_t chunk = (ntuples + nw - 1) / nw;
    for (unsigned w = 0; w < nw; ++w)
      pool.emplace_back([&, w] {
        try {
          std::uint64_t lo = static_cast<std::uint64_t>(w) * chunk;
          std::uint64_t hi = std::min(ntuples, lo + chunk);
          if (lo < hi) scan_range(lo, hi, parts[w]);
        } catch (...) {
          errors[w] = std::current_exception();
        }
      });
    for (auto& t : pool) t.join();
    for (const auto& e : errors)
      if (e) std::rethrow_exception(e);
    for (auto& p : parts)
      for (auto& e2 : p) entries.push_back(std::move(e2));
  }

  std::sort(entries.begin(), entries.end(), [](const EnumEntry& a, const EnumEntry& b) {
    double ta = a.height.total(), tb = b.height.total();
    if (ta != tb) return ta < tb;
    return a.point.compare(b.point) < 0;
  });
  return entries;
}

}  // namespace heightlab
