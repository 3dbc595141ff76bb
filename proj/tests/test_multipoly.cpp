#include "doctest.h"

#include "heightlab/multipoly.hpp"

#include <cmath>

#include "helpers.hpp"

using heightlab::DomainError;
using heightlab::Exponents;
using heightlab::MultiPoly;
using heightlab::ParseError;
using heightlab::parse_poly;
using testutil::CounterRng;
using testutil::rand_nonzero_poly;
using testutil::rand_poly;
using testutil::rand_range;

namespace {

MultiPoly mono(int nvars, const Exponents& e, long c) {
  MultiPoly f(nvars);
  f.set_coeff(e, c);
  return f;
}

}  // namespace

TEST_CASE("parse expands products") {
  MultiPoly f = parse_poly("(z1+1)*(z1-1)", 1);
  MultiPoly expect = mono(1, {2}, 1) + mono(1, {0}, -1);
  CHECK(f == expect);
}

TEST_CASE("parse of zero") {
  MultiPoly f = parse_poly("0", 2);
  CHECK(f.is_zero());
  CHECK(f.nvars() == 2);
  CHECK(f.term_count() == 0);
}

TEST_CASE("parse keeps all terms with signs") {
  MultiPoly f = parse_poly("3*z1^2*z2 - z2 + 7", 2);
  CHECK(f.term_count() == 3);
  CHECK(f.coeff({2, 1}) == 3);
  CHECK(f.coeff({0, 1}) == -1);
  CHECK(f.coeff({0, 0}) == 7);
}

TEST_CASE("t aliases the single variable") {
  CHECK(parse_poly("t^2 - t", 1) == parse_poly("z1^2 - z1", 1));
  CHECK_THROWS_AS(parse_poly("t", 2), ParseError);
}

TEST_CASE("leading sign and whitespace") {
  CHECK(parse_poly("-z1 + 2", 1) == parse_poly("2 - z1", 1));
  CHECK(parse_poly("  - 3 * z1 ", 1) == mono(1, {1}, -3));
  CHECK(parse_poly("+4", 0) == MultiPoly::constant(0, 4));
}

TEST_CASE("parse failures carry positions") {
  CHECK_THROWS_AS(parse_poly("z1 + ", 1), ParseError);
  CHECK_THROWS_AS(parse_poly("z3", 2), ParseError);
  CHECK_THROWS_AS(parse_poly("z0", 1), ParseError);
  CHECK_THROWS_AS(parse_poly("1 / z1", 1), ParseError);
  CHECK_THROWS_AS(parse_poly("z1 ^ -2", 1), ParseError);
  CHECK_THROWS_AS(parse_poly("(z1", 1), ParseError);
  CHECK_THROWS_AS(parse_poly("z1 z1", 1), ParseError);
  try {
    parse_poly("z1 + $", 1);
    CHECK(false);
  } catch (const ParseError& e) {
    CHECK(e.position() == 5);
  }
}

TEST_CASE("degrees per variable") {
  MultiPoly f = parse_poly("z1^2*z2 + z2^3", 2);
  CHECK(f.degree_in(2) == 3);
  CHECK(f.degree_in(1) == 2);
  CHECK(parse_poly("7", 1).degree_in(1) == 0);
  CHECK(parse_poly("z1^2 - 1", 1).degree_in(1) == 2);
  CHECK_THROWS_AS(MultiPoly(2).degree_in(1), DomainError);
  CHECK(MultiPoly(2).total_degree() == -1);
  CHECK(f.total_degree() == 3);
}

TEST_CASE("coefficient norm") {
  CHECK(parse_poly("3*z1^2 - 5*z2", 2).coeff_norm() == 5);
  CHECK(MultiPoly(2).coeff_norm() == 0);
  CHECK(parse_poly("z1 - 1", 1).coeff_norm() == 1);
}

TEST_CASE("gcd on the worked examples") {
  MultiPoly a = parse_poly("z1^2 - 1", 1);
  MultiPoly b = parse_poly("z1^2 - 2*z1 + 1", 1);
  CHECK(gcd(a, b) == parse_poly("z1 - 1", 1));
  CHECK(gcd(parse_poly("2*z1", 1), parse_poly("4", 1)) == parse_poly("2", 1));
  MultiPoly f = parse_poly("-3*z1 + 6", 1);
  CHECK(gcd(f, MultiPoly(1)) == parse_poly("3*z1 - 6", 1));
  CHECK(gcd(MultiPoly(1), MultiPoly(1)).is_zero());
}

TEST_CASE("gcd of random products recovers the common factor") {
  CounterRng rng(2024);
  for (int trial = 0; trial < 60; ++trial) {
    int nvars = 1 + static_cast<int>(rng.next() % 2);
    MultiPoly h = rand_nonzero_poly(rng, nvars, 2, 4, 3);
    MultiPoly f = rand_nonzero_poly(rng, nvars, 2, 4, 3);
    MultiPoly g = rand_nonzero_poly(rng, nvars, 2, 4, 3);
    MultiPoly d = gcd(f * h, g * h);
    // h divides the gcd, and the gcd divides both products.
    CHECK_NOTHROW(exact_divide(d, h.sign_normalized()));
    CHECK_NOTHROW(exact_divide(f * h, d));
    CHECK_NOTHROW(exact_divide(g * h, d));
    // Cofactors are coprime.
    MultiPoly cf = exact_divide(f * h, d);
    MultiPoly cg = exact_divide(g * h, d);
    MultiPoly one = gcd(cf, cg);
    CHECK(one.is_constant());
    CHECK(one.constant_coeff() == 1);
  }
}

TEST_CASE("ring axioms on random polynomials") {
  CounterRng rng(77);
  for (int trial = 0; trial < 120; ++trial) {
    int nvars = 1 + static_cast<int>(rng.next() % 3);
    MultiPoly f = rand_poly(rng, nvars, 3, 6, 3);
    MultiPoly g = rand_poly(rng, nvars, 3, 6, 3);
    MultiPoly h = rand_poly(rng, nvars, 3, 6, 3);
    CHECK(f + g == g + f);
    CHECK((f + g) + h == f + (g + h));
    CHECK((f * g) * h == f * (g * h));
    CHECK(f * (g + h) == f * g + f * h);
    CHECK(f - f == MultiPoly(nvars));
    CHECK(f * MultiPoly(nvars) == MultiPoly(nvars));
    if (!f.is_zero() && !g.is_zero()) {
      for (int i = 1; i <= nvars; ++i)
        CHECK((f * g).degree_in(i) == f.degree_in(i) + g.degree_in(i));
    }
  }
}

TEST_CASE("powers by repeated squaring") {
  CounterRng rng(5150);
  for (int trial = 0; trial < 20; ++trial) {
    MultiPoly f = rand_poly(rng, 2, 2, 5, 3);
    CHECK(f.pow(0) == MultiPoly::constant(2, 1));
    CHECK(f.pow(1) == f);
    CHECK(f.pow(3) == f * f * f);
  }
}

TEST_CASE("print and reparse round-trips") {
  CounterRng rng(31337);
  for (int trial = 0; trial < 150; ++trial) {
    int nvars = 1 + static_cast<int>(rng.next() % 3);
    MultiPoly f = rand_poly(rng, nvars, 4, 99, 4);
    CHECK(parse_poly(f.str(), nvars) == f);
  }
  CHECK(parse_poly(MultiPoly(2).str(), 2).is_zero());
  // The single-variable alias form parses back identically too.
  MultiPoly g = parse_poly("t^3 - 2*t + 1", 1);
  CHECK(parse_poly(g.str(true), 1) == g);
}

TEST_CASE("graded-lex leading term") {
  // Higher total degree wins; ties break lexicographically with z1 heaviest.
  MultiPoly f = parse_poly("z1 + z2^2", 2);
  CHECK(f.leading_exponents() == Exponents{0, 2});
  MultiPoly g = parse_poly("z1*z2 + z2^2", 2);
  CHECK(g.leading_exponents() == Exponents{1, 1});
  CHECK(g.leading_coeff() == 1);
  CHECK_THROWS_AS(MultiPoly(2).leading_coeff(), DomainError);
}

TEST_CASE("content and sign normalization") {
  CHECK(parse_poly("6*z1 - 4", 1).content() == 2);
  CHECK(parse_poly("-6*z1 - 4", 1).content() == 2);
  CHECK(parse_poly("-2*z1", 1).sign_normalized() == parse_poly("2*z1", 1));
  CHECK(MultiPoly(1).sign_normalized().is_zero());
}

TEST_CASE("coefficient extraction by variable power") {
  MultiPoly f = parse_poly("3*z1^2*z2 - z2 + 7 + z1^2", 2);
  CHECK(f.coeff_of_power(1, 2) == parse_poly("3*z2 + 1", 2));
  CHECK(f.coeff_of_power(1, 0) == parse_poly("7 - z2", 2));
  CHECK(f.coeff_of_power(1, 1).is_zero());
  // Reassembling the slices gives the polynomial back.
  MultiPoly back(2);
  for (std::uint32_t k = 0; k <= 2; ++k) {
    MultiPoly zk = MultiPoly::variable(2, 1).pow(k);
    back += f.coeff_of_power(1, k) * zk;
  }
  CHECK(back == f);
}

TEST_CASE("exact division errors on non-divisors") {
  CHECK_THROWS_AS(exact_divide(parse_poly("z1^2 + 1", 1), parse_poly("z1", 1)),
                  DomainError);
  CHECK(exact_divide(parse_poly("z1^2 - 1", 1), parse_poly("z1 + 1", 1)) ==
        parse_poly("z1 - 1", 1));
}

TEST_CASE("compare gives a deterministic total order") {
  CounterRng rng(404);
  for (int trial = 0; trial < 50; ++trial) {
    MultiPoly f = rand_poly(rng, 2, 3, 9, 3);
    MultiPoly g = rand_poly(rng, 2, 3, 9, 3);
    CHECK(f.compare(f) == 0);
    CHECK(f.compare(g) == -g.compare(f));
    if (f.compare(g) == 0) CHECK(f == g);
  }
}

TEST_CASE("integer log magnitude") {
  CHECK(heightlab::log_mpz_abs(mpz_class(8)) == std::log(8.0));
  CHECK(heightlab::log_mpz_abs(mpz_class(-3)) == std::log(3.0));
  mpz_class big;
  mpz_ui_pow_ui(big.get_mpz_t(), 10, 100);
  CHECK(std::fabs(heightlab::log_mpz_abs(big) - 100.0 * std::log(10.0)) < 1e-9);
}
