#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include <gmpxx.h>

#include "heightlab/errors.hpp"

namespace heightlab {

// Exponent vector; size always equals the ambient number of variables.
using Exponents = std::vector<std::uint32_t>;

// Graded-lexicographic order (total degree first, then lex with z1 heaviest),
// largest term first so that begin() of a term map is the leading term.
struct GradedLexGreater {
  bool operator()(const Exponents& a, const Exponents& b) const;
};

// Sparse multivariate polynomial over Z in variables z1..zd (d may be 0, in
// which case the polynomial is an integer constant).  Terms are kept in a
// map with nonzero coefficients only, iterated leading-term first.
class MultiPoly {
public:
  using TermMap = std::map<Exponents, mpz_class, GradedLexGreater>;

  explicit MultiPoly(int nvars = 0);

  static MultiPoly constant(int nvars, mpz_class c);
  static MultiPoly variable(int nvars, int index);  // index is 1-based

  int nvars() const { return nvars_; }
  bool is_zero() const { return terms_.empty(); }
  bool is_constant() const;
  std::size_t term_count() const { return terms_.size(); }
  const TermMap& terms() const { return terms_; }

  // Leading term in graded-lex order; both throw on the zero polynomial.
  const mpz_class& leading_coeff() const;
  const Exponents& leading_exponents() const;

  mpz_class coeff(const Exponents& e) const;
  mpz_class constant_coeff() const;

  int total_degree() const;      // -1 for the zero polynomial
  int degree_in(int var) const;  // throws DomainError on the zero polynomial
  mpz_class coeff_norm() const;  // max |coefficient|, 0 for the zero polynomial
  mpz_class content() const;     // gcd of |coefficients|, 0 for the zero polynomial

  void set_coeff(const Exponents& e, mpz_class c);

  MultiPoly operator+(const MultiPoly& o) const;
  MultiPoly operator-(const MultiPoly& o) const;
  MultiPoly operator*(const MultiPoly& o) const;
  MultiPoly operator-() const;
  MultiPoly& operator+=(const MultiPoly& o) { return *this = *this + o; }
  MultiPoly& operator-=(const MultiPoly& o) { return *this = *this - o; }
  MultiPoly& operator*=(const MultiPoly& o) { return *this = *this * o; }

  MultiPoly scaled(const mpz_class& c) const;  // c * f
  MultiPoly pow(std::uint64_t k) const;

  bool operator==(const MultiPoly& o) const;
  bool operator!=(const MultiPoly& o) const { return !(*this == o); }

  // Total order used for canonical sorting of points: compares nvars, then
  // term lists lexicographically (exponents graded-lex, then coefficient).
  int compare(const MultiPoly& o) const;

  // Canonical text form: terms in graded-lex descending order, e.g.
  // "3*z1^2*z2 - z2 + 7".  With t_alias and one variable, prints "t".
  std::string str(bool t_alias = false) const;

  // f with positive graded-lex leading coefficient (zero stays zero).
  MultiPoly sign_normalized() const;

  // Extract the coefficient of var^k as a polynomial in the remaining
  // variables (same ambient nvars, exponent of `var` zeroed).
  MultiPoly coeff_of_power(int var, std::uint32_t k) const;

private:
  void check_same_space(const MultiPoly& o) const;

  int nvars_;
  TermMap terms_;
};

// Greatest common divisor in Z[z1..zd] via the primitive polynomial remainder
// sequence; result has positive leading coefficient.  gcd(f, 0) is the
// sign-normalized f.
MultiPoly gcd(const MultiPoly& f, const MultiPoly& g);

// Exact division; throws DomainError when g does not divide f.
MultiPoly exact_divide(const MultiPoly& f, const MultiPoly& g);

// Parse the expression grammar
//   expr   := ('+'|'-')? term (('+'|'-') term)*
//   term   := factor ('*' factor)*
//   factor := base ('^' uint)?
//   base   := int | var | '(' expr ')'
//   var    := 'z' uint | 't'        ('t' aliases z1 when nvars == 1)
// Whitespace is insignificant.  Throws ParseError with a byte position.
MultiPoly parse_poly(const std::string& text, int nvars);

// log |a| for a nonzero integer, accurate also far beyond double range.
double log_mpz_abs(const mpz_class& a);

}  // namespace heightlab
