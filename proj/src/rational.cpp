#include "heightlab/rational.hpp"

#include <utility>

namespace heightlab {

RationalFunction::RationalFunction(int nvars)
    : num_(nvars), den_(MultiPoly::constant(nvars, 1)) {}

RationalFunction::RationalFunction(MultiPoly num, MultiPoly den)
    : num_(std::move(num)), den_(std::move(den)) {
  if (num_.nvars() != den_.nvars())
    throw DomainError("numerator and denominator in different variable counts");
  if (den_.is_zero()) throw DomainError("zero denominator");
  reduce();
}

RationalFunction RationalFunction::from_poly(MultiPoly p) {
  int n = p.nvars();
  return RationalFunction(std::move(p), MultiPoly::constant(n, 1));
}

RationalFunction RationalFunction::constant(int nvars, mpz_class c) {
  return from_poly(MultiPoly::constant(nvars, std::move(c)));
}

void RationalFunction::reduce() {
  if (num_.is_zero()) {
    den_ = MultiPoly::constant(den_.nvars(), 1);
    return;
  }
  MultiPoly g = gcd(num_, den_);
  if (!(g.is_constant() && g.leading_coeff() == 1)) {
    num_ = exact_divide(num_, g);
    den_ = exact_divide(den_, g);
  }
  if (den_.leading_coeff() < 0) {
    num_ = -num_;
    den_ = -den_;
  }
}

bool RationalFunction::is_poly() const {
  return den_.is_constant() && den_.leading_coeff() == 1;
}

RationalFunction RationalFunction::operator+(const RationalFunction& o) const {
  return RationalFunction(num_ * o.den_ + o.num_ * den_, den_ * o.den_);
}

RationalFunction RationalFunction::operator-(const RationalFunction& o) const {
  return RationalFunction(num_ * o.den_ - o.num_ * den_, den_ * o.den_);
}

RationalFunction RationalFunction::operator*(const RationalFunction& o) const {
  return RationalFunction(num_ * o.num_, den_ * o.den_);
}

RationalFunction RationalFunction::operator/(const RationalFunction& o) const {
  if (o.is_zero()) throw DomainError("division by zero rational function");
  return RationalFunction(num_ * o.den_, den_ * o.num_);
}

RationalFunction RationalFunction::operator-() const {
  RationalFunction r = *this;
  r.num_ = -r.num_;
  return r;
}

RationalFunction RationalFunction::inverse() const {
  if (is_zero()) throw DomainError("inverse of the zero rational function");
  return RationalFunction(den_, num_);
}

bool RationalFunction::operator==(const RationalFunction& o) const {
  return num_ == o.num_ && den_ == o.den_;  // canonical forms compare structurally
}

std::string RationalFunction::str(bool t_alias) const {
  if (is_poly()) return num_.str(t_alias);
  std::string n = num_.str(t_alias);
  if (num_.term_count() > 1) n = "(" + n + ")";
  std::string d = den_.str(t_alias);
  if (den_.term_count() > 1) d = "(" + d + ")";
  return n + " / " + d;
}

RationalFunction RationalFunction::parse(const std::string& text, int nvars) {
  int depth = 0;
  std::size_t slash = std::string::npos;
  for (std::size_t i = 0; i < text.size(); ++i) {
    char c = text[i];
    if (c == '(') ++depth;
    if (c == ')') --depth;
    if (c == '/' && depth == 0) {
      if (slash != std::string::npos)
        throw ParseError(i, "at most one '/' is allowed in a rational function");
      slash = i;
    }
  }
  if (slash == std::string::npos)
    return from_poly(parse_poly(text, nvars));
  MultiPoly num = parse_poly(text.substr(0, slash), nvars);
  MultiPoly den;
  try {
    den = parse_poly(text.substr(slash + 1), nvars);
  } catch (const ParseError& e) {
    throw ParseError(e.position() + slash + 1, "in denominator: " + std::string(e.what()));
  }
  if (den.is_zero()) throw DomainError("zero denominator");
  return RationalFunction(std::move(num), std::move(den));
}

// --- projective points ----------------------------------------------------

ProjectivePoint ProjectivePoint::normalize(const std::vector<RationalFunction>& coords) {
  if (coords.empty()) throw DomainError("projective point needs at least one coordinate");
  int nvars = coords.front().nvars();
  for (const auto& c : coords)
    if (c.nvars() != nvars)
      throw DomainError("projective coordinates in different variable counts");

  // Common denominator: L = lcm of the individual denominators.
  MultiPoly lcm = MultiPoly::constant(nvars, 1);
  for (const auto& c : coords) {
    MultiPoly g = gcd(lcm, c.den());
    lcm = exact_divide(lcm, g) * c.den();
  }
  std::vector<MultiPoly> polys;
  polys.reserve(coords.size());
  for (const auto& c : coords)
    polys.push_back(c.num() * exact_divide(lcm, c.den()));
  return normalize_polys(std::move(polys));
}

ProjectivePoint ProjectivePoint::normalize_polys(std::vector<MultiPoly> coords) {
  if (coords.empty()) throw DomainError("projective point needs at least one coordinate");
  int nvars = coords.front().nvars();
  MultiPoly g(nvars);
  for (const auto& c : coords) {
    if (c.nvars() != nvars)
      throw DomainError("projective coordinates in different variable counts");
    g = gcd(g, c);
    if (g.is_constant() && !g.is_zero() && g.leading_coeff() == 1) break;
  }
  if (g.is_zero()) throw DomainError("all projective coordinates are zero");
  bool trivial = g.is_constant() && g.leading_coeff() == 1;
  if (!trivial)
    for (auto& c : coords)
      if (!c.is_zero()) c = exact_divide(c, g);
  for (const auto& c : coords) {
    if (c.is_zero()) continue;
    if (c.leading_coeff() < 0)
      for (auto& x : coords) x = -x;
    break;
  }
  return ProjectivePoint(nvars, std::move(coords));
}

bool ProjectivePoint::all_constant() const {
  for (const auto& c : coords_)
    if (!c.is_constant()) return false;
  return true;
}

int ProjectivePoint::max_degree_in(int var) const {
  int d = 0;
  for (const auto& c : coords_)
    if (!c.is_zero()) d = std::max(d, c.degree_in(var));
  return d;
}

int ProjectivePoint::compare(const ProjectivePoint& o) const {
  if (coords_.size() != o.coords_.size())
    return coords_.size() < o.coords_.size() ? -1 : 1;
  for (std::size_t i = 0; i < coords_.size(); ++i) {
    int c = coords_[i].compare(o.coords_[i]);
    if (c != 0) return c;
  }
  return 0;
}

std::vector<std::string> ProjectivePoint::coord_strings(bool t_alias) const {
  std::vector<std::string> out;
  out.reserve(coords_.size());
  for (const auto& c : coords_) out.push_back(c.str(t_alias));
  return out;
}

}  // namespace heightlab
