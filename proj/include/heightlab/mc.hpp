#pragma once

#include <cmath>
#include <complex>
#include <cstdint>
#include <optional>
#include <thread>
#include <vector>

#include "heightlab/errors.hpp"

namespace heightlab {

// Counter-based pseudo-random stream: output i is mix64(c0 + (i+1)*GAMMA)
// where mix64 is the SplitMix64 finalizer and GAMMA the golden-ratio
// increment.  Pure 64-bit integer arithmetic, so results are identical on
// every platform, and a stream is fully determined by its starting counter.
class CounterRng {
public:
  explicit CounterRng(std::uint64_t start) : ctr_(start) {}

  static std::uint64_t mix64(std::uint64_t z) {
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
  }

  std::uint64_t next() {
    ctr_ += 0x9e3779b97f4a7c15ULL;
    return mix64(ctr_);
  }

  // Uniform in [0, 1), 53 random bits.
  double u01() { return static_cast<double>(next() >> 11) * 0x1.0p-53; }

private:
  std::uint64_t ctr_;
};

// Sub-seed for batch b of a run seeded with `seed`; batches are independent
// streams, so results never depend on the order batches are executed in.
inline std::uint64_t derive_subseed(std::uint64_t seed, std::uint64_t batch) {
  return CounterRng::mix64(seed ^ CounterRng::mix64(batch + 0x5851f42d4c957f2dULL));
}

struct MCParams {
  std::uint64_t samples = 1'000'000;
  std::uint64_t seed = 0;
  std::uint64_t batch_size = 10'000;
  std::optional<double> target_stderr;  // early stop once reached

  void validate() const {
    if (batch_size < 1) throw DomainError("batch size must be at least 1");
    if (samples < batch_size) throw DomainError("samples must be at least one batch");
    if (target_stderr && *target_stderr <= 0)
      throw DomainError("target stderr must be positive");
  }
};

struct MCEstimate {
  double mean = 0.0;
  double std_error = 0.0;          // stddev of batch means / sqrt(#batches)
  std::uint64_t samples_used = 0;  // 0 marks an exact (integration-free) value
  std::uint64_t seed = 0;
  std::uint64_t resamples = 0;     // degenerate draws that were redrawn
};

inline MCEstimate exact_estimate(double value, std::uint64_t seed) {
  return MCEstimate{value, 0.0, 0, seed, 0};
}

// Draw a point of P^1(C) under the Fubini-Study probability measure
//   omega = (sqrt(-1)/2pi) dz dz~ / (1+|z|^2)^2,
// returned in the affine chart.  Sampling: the FS measure is the uniform
// measure on the round sphere, so take the cosine of the latitude uniform in
// (-1, 1], a uniform longitude, and project stereographically, which gives
// radius r = sqrt((1-w)/(1+w)).  The chart-missing antipode corresponds to
// w = -1, which the half-open uniform variate never produces.
inline std::complex<double> sample_fs(CounterRng& rng) {
  double w = 1.0 - 2.0 * rng.u01();
  double theta = 2.0 * M_PI * rng.u01();
  double r = std::sqrt((1.0 - w) / (1.0 + w));
  return std::polar(r, theta);
}

namespace detail {

struct BatchStats {
  double mean = 0.0;
  std::uint64_t resamples = 0;
};

// Deterministic batched Monte Carlo.  The integrand is called once per
// sample with the batch's private stream; batch b always covers the same
// sub-seed derive(seed, b) no matter how many workers run, and the final
// fold visits batches in index order, so the estimate is bit-identical for
// every thread count.  With a target stderr the run stops at the smallest
// batch prefix (of at least two batches) meeting it; workers may compute a
// few extra batches past that point, which are simply discarded.
template <class F>
MCEstimate run_mc(const MCParams& p, int threads, F&& integrand) {
  p.validate();
  const std::uint64_t nbatch = (p.samples + p.batch_size - 1) / p.batch_size;
  std::vector<BatchStats> stats(nbatch);

  auto run_batch = [&](std::uint64_t b) {
    CounterRng rng(derive_subseed(p.seed, b));
    double sum = 0.0;
    std::uint64_t resamples = 0;
    for (std::uint64_t i = 0; i < p.batch_size; ++i) sum += integrand(rng, resamples);
    stats[b] = BatchStats{sum / static_cast<double>(p.batch_size), resamples};
  };

  auto run_range = [&](std::uint64_t lo, std::uint64_t hi) {
    if (threads <= 1 || hi - lo <= 1) {
      for (std::uint64_t b = lo; b < hi; ++b) run_batch(b);
      return;
    }
    unsigned nw = std::min<std::uint64_t>(static_cast<std::uint64_t>(threads), hi - lo);
    std::vector<std::thread> pool;
    std::vector<std::exception_ptr> errors(nw);
    pool.reserve(nw);
    for (unsigned w = 0; w < nw; ++w)
      pool.emplace_back([&, w] {
        try {
          for (std::uint64_t b = lo + w; b < hi; b += nw) run_batch(b);
        } catch (...) {
          errors[w] = std::current_exception();
        }
      });
    for (auto& t : pool) t.join();
    for (const auto& e : errors)
      if (e) std::rethrow_exception(e);
  };

  std::uint64_t used = nbatch;
  if (!p.target_stderr) {
    run_range(0, nbatch);
  } else {
    // Waves keep parallelism while the stop index stays a pure function of
    // the batch values themselves.
    const std::uint64_t wave = std::max<std::uint64_t>(4, static_cast<std::uint64_t>(
                                                              std::max(threads, 1)) *
                                                              4);
    std::uint64_t done = 0;
    std::uint64_t stop = 0;
    bool found = false;
    double s = 0.0, s2 = 0.0;
    std::uint64_t scanned = 0;
    while (done < nbatch && !found) {
      std::uint64_t hi = std::min(nbatch, done + wave);
      run_range(done, hi);
      done = hi;
      while (scanned < done) {
        double m = stats[scanned].mean;
        s += m;
        s2 += m * m;
        ++scanned;
        if (scanned >= 2) {
          double mean = s / static_cast<double>(scanned);
          double var = (s2 - static_cast<double>(scanned) * mean * mean) /
                       static_cast<double>(scanned - 1);
          double se = std::sqrt(std::max(var, 0.0) / static_cast<double>(scanned));
          if (se <= *p.target_stderr) {
            stop = scanned;
            found = true;
            break;
          }
        }
      }
    }
    used = found ? stop : nbatch;
  }

  double sum = 0.0;
  std::uint64_t resamples = 0;
  for (std::uint64_t b = 0; b < used; ++b) {
    sum += stats[b].mean;
    resamples += stats[b].resamples;
  }
  double mean = sum / static_cast<double>(used);
  double varsum = 0.0;
  for (std::uint64_t b = 0; b < used; ++b) {
    double d = stats[b].mean - mean;
    varsum += d * d;
  }
  MCEstimate est;
  est.mean = mean;
  est.std_error = used > 1 ? std::sqrt(varsum / static_cast<double>(used - 1) /
                                       static_cast<double>(used))
                           : 0.0;
  est.samples_used = used * p.batch_size;
  est.seed = p.seed;
  est.resamples = resamples;
  return est;
}

}  // namespace detail

}  // namespace heightlab
