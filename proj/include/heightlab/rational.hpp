#pragma once

#include <string>
#include <vector>

#include "heightlab/multipoly.hpp"

namespace heightlab {

// Element of Q(z1..zd) kept in reduced canonical form: gcd(num, den) = 1 and
// the denominator has positive graded-lex leading coefficient.
class RationalFunction {
public:
  explicit RationalFunction(int nvars = 0);                 // zero
  RationalFunction(MultiPoly num, MultiPoly den);           // reduces
  static RationalFunction from_poly(MultiPoly p);
  static RationalFunction constant(int nvars, mpz_class c);

  // Parses "p" or "p / q" with at most one '/' outside parentheses.
  static RationalFunction parse(const std::string& text, int nvars);

  const MultiPoly& num() const { return num_; }
  const MultiPoly& den() const { return den_; }
  int nvars() const { return num_.nvars(); }
  bool is_zero() const { return num_.is_zero(); }
  bool is_poly() const;  // denominator == 1

  RationalFunction operator+(const RationalFunction& o) const;
  RationalFunction operator-(const RationalFunction& o) const;
  RationalFunction operator*(const RationalFunction& o) const;
  RationalFunction operator/(const RationalFunction& o) const;  // throws on /0
  RationalFunction operator-() const;
  RationalFunction inverse() const;

  bool operator==(const RationalFunction& o) const;
  bool operator!=(const RationalFunction& o) const { return !(*this == o); }

  std::string str(bool t_alias = false) const;

private:
  void reduce();

  MultiPoly num_, den_;
};

// Point of P^n over Q(z1..zd), held by its canonical integral representative:
// coprime integer-polynomial coordinates, not all zero, first nonzero
// coordinate with positive graded-lex leading coefficient.
class ProjectivePoint {
public:
  // Clears denominators and divides out the full gcd (including integer
  // content); throws DomainError when every coordinate is zero.
  static ProjectivePoint normalize(const std::vector<RationalFunction>& coords);
  static ProjectivePoint normalize_polys(std::vector<MultiPoly> coords);

  int nvars() const { return nvars_; }
  int dim() const { return static_cast<int>(coords_.size()) - 1; }  // ambient n
  const std::vector<MultiPoly>& coords() const { return coords_; }

  bool all_constant() const;
  // max_j deg_var(f_j) over nonzero coordinates.
  int max_degree_in(int var) const;

  bool operator==(const ProjectivePoint& o) const { return coords_ == o.coords_; }
  int compare(const ProjectivePoint& o) const;

  std::vector<std::string> coord_strings(bool t_alias = false) const;

private:
  ProjectivePoint(int nvars, std::vector<MultiPoly> coords)
      : nvars_(nvars), coords_(std::move(coords)) {}

  int nvars_;
  std::vector<MultiPoly> coords_;
};

}  // namespace heightlab
