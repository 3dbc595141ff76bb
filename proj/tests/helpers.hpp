#pragma once

// Shared deterministic random generators for the test suite; everything is
// driven by the library's own counter RNG so failures reproduce exactly.

#include <cstdint>

#include "heightlab/mc.hpp"
#include "heightlab/multipoly.hpp"
#include "heightlab/rational.hpp"

namespace testutil {

using heightlab::CounterRng;
using heightlab::Exponents;
using heightlab::MultiPoly;
using heightlab::RationalFunction;

inline long rand_range(CounterRng& rng, long lo, long hi) {  // inclusive
  return lo + static_cast<long>(rng.next() %
                                static_cast<std::uint64_t>(hi - lo + 1));
}

inline double rand_real(CounterRng& rng, double lo, double hi) {
  return lo + (hi - lo) * rng.u01();
}

inline MultiPoly rand_poly(CounterRng& rng, int nvars, int maxdeg, long maxc,
                           int nterms) {
  MultiPoly f(nvars);
  for (int t = 0; t < nterms; ++t) {
    Exponents e(static_cast<std::size_t>(nvars));
    for (int i = 0; i < nvars; ++i)
      e[static_cast<std::size_t>(i)] =
          static_cast<std::uint32_t>(rand_range(rng, 0, maxdeg));
    MultiPoly term(nvars);
    term.set_coeff(e, rand_range(rng, -maxc, maxc));
    f += term;
  }
  return f;
}

inline MultiPoly rand_nonzero_poly(CounterRng& rng, int nvars, int maxdeg,
                                   long maxc, int nterms) {
  for (;;) {
    MultiPoly f = rand_poly(rng, nvars, maxdeg, maxc, nterms);
    if (!f.is_zero()) return f;
  }
}

inline RationalFunction rand_rational(CounterRng& rng, int nvars, int maxdeg,
                                      long maxc, int nterms) {
  return RationalFunction(rand_poly(rng, nvars, maxdeg, maxc, nterms),
                          rand_nonzero_poly(rng, nvars, maxdeg, maxc, nterms));
}

inline RationalFunction rand_nonzero_rational(CounterRng& rng, int nvars,
                                              int maxdeg, long maxc, int nterms) {
  for (;;) {
    RationalFunction f = rand_rational(rng, nvars, maxdeg, maxc, nterms);
    if (!f.is_zero()) return f;
  }
}

}  // namespace testutil
