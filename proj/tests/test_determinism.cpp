#include "doctest.h"

#include <cmath>
#include <cstdint>

#include "heightlab/archimedean.hpp"
#include "heightlab/heights.hpp"
#include "heightlab/mc.hpp"
#include "heightlab/multipoly.hpp"
#include "heightlab/northcott.hpp"

using namespace heightlab;

namespace {

MCParams params(std::uint64_t samples, std::uint64_t seed) {
  MCParams p;
  p.samples = samples;
  p.seed = seed;
  p.batch_size = 2000;
  return p;
}

}  // namespace

TEST_CASE("counter RNG basics") {
  CounterRng a(17), b(17);
  for (int i = 0; i < 100; ++i) CHECK(a.next() == b.next());
  CounterRng c(17);
  for (int i = 0; i < 100; ++i) {
    double u = c.u01();
    CHECK(u >= 0.0);
    CHECK(u < 1.0);
  }
  CHECK(derive_subseed(1, 2) != derive_subseed(1, 3));
  CHECK(derive_subseed(1, 2) != derive_subseed(2, 2));
  CHECK(derive_subseed(1, 2) == derive_subseed(1, 2));
}

TEST_CASE("estimates are bit-identical across thread counts") {
  SUBCASE("multivariate measure") {
    MultiPoly f = parse_poly("z1 + z2", 2);
    auto one = v_measure(f, params(20'000, 99), 1);
    auto four = v_measure(f, params(20'000, 99), 4);
    CHECK(one.mean == four.mean);
    CHECK(one.std_error == four.std_error);
    CHECK(one.samples_used == four.samples_used);
    CHECK(one.resamples == four.resamples);
  }
  SUBCASE("projective log-max integral") {
    auto pt = ProjectivePoint::normalize_polys(
        {parse_poly("z1", 1), parse_poly("1", 1)});
    auto one = logmax_integral(pt, params(20'000, 7), 1);
    auto four = logmax_integral(pt, params(20'000, 7), 4);
    CHECK(one.mean == four.mean);
    CHECK(one.std_error == four.std_error);
  }
  SUBCASE("naive height") {
    auto pt = ProjectivePoint::normalize_polys(
        {parse_poly("z1^2 - 3", 1), parse_poly("z1 + 1", 1)});
    auto one = naive_height(pt, PolarizationChoice::arithmetic(), params(20'000, 5), 1);
    auto three = naive_height(pt, PolarizationChoice::arithmetic(), params(20'000, 5), 3);
    CHECK(one.exact_part == three.exact_part);
    CHECK(one.arch.mean == three.arch.mean);
    CHECK(one.arch.std_error == three.arch.std_error);
  }
  SUBCASE("angular proximity") {
    auto f = RationalFunction::parse("z1^2 + 3*z1 + 1", 1);
    auto one = proximity(f, 2.0, params(4096, 1), 1);
    auto three = proximity(f, 2.0, params(4096, 1), 3);
    CHECK(one.mean == three.mean);
    CHECK(one.std_error == three.std_error);
  }
}

TEST_CASE("enumeration is identical across thread counts") {
  EnumSpec spec;
  spec.M = 0.4;
  spec.dim = 1;
  spec.nvars = 1;
  spec.degree_caps = {1};
  spec.params = params(4000, 3);
  auto one = enumerate_bounded(spec, 1);
  auto four = enumerate_bounded(spec, 4);
  REQUIRE(one.size() == four.size());
  for (std::size_t i = 0; i < one.size(); ++i) {
    CHECK(one[i].point == four[i].point);
    CHECK(one[i].height.total() == four[i].height.total());
    CHECK(one[i].height.std_error() == four[i].height.std_error());
    CHECK(one[i].borderline == four[i].borderline);
  }
}

TEST_CASE("seeds matter and samples matter") {
  MultiPoly f = parse_poly("z1 + z2", 2);
  auto a = v_measure(f, params(20'000, 1), 2);
  auto b = v_measure(f, params(20'000, 2), 2);
  CHECK(a.mean != b.mean);  // different stream

  // Early stop on target stderr uses a prefix of the same batches.
  MCParams stopped = params(1'000'000, 1);
  stopped.target_stderr = 0.05;
  auto c = v_measure(f, stopped, 2);
  CHECK(c.samples_used < 1'000'000);
  CHECK(c.std_error <= 0.05);
}
