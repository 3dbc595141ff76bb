#include "heightlab/multipoly.hpp"

#include <cctype>
#include <cmath>
#include <sstream>
#include <utility>

namespace heightlab {

bool GradedLexGreater::operator()(const Exponents& a, const Exponents& b) const {
  std::uint64_t da = 0, db = 0;
  for (auto e : a) da += e;
  for (auto e : b) db += e;
  if (da != db) return da > db;
  // Same total degree: lexicographic, z1 most significant.
  return a > b;
}

MultiPoly::MultiPoly(int nvars) : nvars_(nvars) {
  if (nvars < 0) throw DomainError("number of variables must be nonnegative");
}

MultiPoly MultiPoly::constant(int nvars, mpz_class c) {
  MultiPoly f(nvars);
  if (c != 0) f.terms_.emplace(Exponents(nvars, 0), std::move(c));
  return f;
}

MultiPoly MultiPoly::variable(int nvars, int index) {
  if (index < 1 || index > nvars)
    throw DomainError("variable index " + std::to_string(index) + " outside 1.." +
                      std::to_string(nvars));
  MultiPoly f(nvars);
  Exponents e(nvars, 0);
  e[index - 1] = 1;
  f.terms_.emplace(std::move(e), mpz_class(1));
  return f;
}

bool MultiPoly::is_constant() const {
  if (terms_.empty()) return true;
  if (terms_.size() > 1) return false;
  for (auto e : terms_.begin()->first)
    if (e != 0) return false;
  return true;
}

const mpz_class& MultiPoly::leading_coeff() const {
  if (terms_.empty()) throw DomainError("leading coefficient of the zero polynomial");
  return terms_.begin()->second;
}

const Exponents& MultiPoly::leading_exponents() const {
  if (terms_.empty()) throw DomainError("leading term of the zero polynomial");
  return terms_.begin()->first;
}

mpz_class MultiPoly::coeff(const Exponents& e) const {
  auto it = terms_.find(e);
  return it == terms_.end() ? mpz_class(0) : it->second;
}

mpz_class MultiPoly::constant_coeff() const { return coeff(Exponents(nvars_, 0)); }

int MultiPoly::total_degree() const {
  if (terms_.empty()) return -1;
  std::uint64_t d = 0;
  for (auto e : terms_.begin()->first) d += e;  // leading term has max total degree
  return static_cast<int>(d);
}

int MultiPoly::degree_in(int var) const {
  if (terms_.empty()) throw DomainError("degree of the zero polynomial");
  if (var < 1 || var > nvars_) throw DomainError("variable index out of range");
  std::uint32_t d = 0;
  for (const auto& [e, c] : terms_) d = std::max(d, e[var - 1]);
  return static_cast<int>(d);
}

mpz_class MultiPoly::coeff_norm() const {
  mpz_class m = 0;
  for (const auto& [e, c] : terms_) {
    mpz_class a = abs(c);
    if (a > m) m = a;
  }
  return m;
}

mpz_class MultiPoly::content() const {
  mpz_class g = 0;
  for (const auto& [e, c] : terms_) {
    mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), c.get_mpz_t());
    if (g == 1) break;
  }
  return g;
}

void MultiPoly::set_coeff(const Exponents& e, mpz_class c) {
  if (static_cast<int>(e.size()) != nvars_)
    throw DomainError("exponent vector has wrong length");
  if (c == 0)
    terms_.erase(e);
  else
    terms_[e] = std::move(c);
}

void MultiPoly::check_same_space(const MultiPoly& o) const {
  if (nvars_ != o.nvars_)
    throw DomainError("polynomials live in different variable counts (" +
                      std::to_string(nvars_) + " vs " + std::to_string(o.nvars_) + ")");
}

MultiPoly MultiPoly::operator+(const MultiPoly& o) const {
  check_same_space(o);
  MultiPoly r = *this;
  for (const auto& [e, c] : o.terms_) {
    auto it = r.terms_.find(e);
    if (it == r.terms_.end()) {
      r.terms_.emplace(e, c);
    } else {
      it->second += c;
      if (it->second == 0) r.terms_.erase(it);
    }
  }
  return r;
}

MultiPoly MultiPoly::operator-(const MultiPoly& o) const { return *this + (-o); }

MultiPoly MultiPoly::operator-() const {
  MultiPoly r(nvars_);
  for (const auto& [e, c] : terms_) r.terms_.emplace(e, -c);
  return r;
}

MultiPoly MultiPoly::operator*(const MultiPoly& o) const {
  check_same_space(o);
  MultiPoly r(nvars_);
  Exponents e(nvars_);
  for (const auto& [ea, ca] : terms_) {
    for (const auto& [eb, cb] : o.terms_) {
      for (int i = 0; i < nvars_; ++i) e[i] = ea[i] + eb[i];
      auto it = r.terms_.find(e);
      if (it == r.terms_.end()) {
        mpz_class p = ca * cb;
        if (p != 0) r.terms_.emplace(e, std::move(p));
      } else {
        it->second += ca * cb;
        if (it->second == 0) r.terms_.erase(it);
      }
    }
  }
  return r;
}

MultiPoly MultiPoly::scaled(const mpz_class& c) const {
  MultiPoly r(nvars_);
  if (c == 0) return r;
  for (const auto& [e, co] : terms_) r.terms_.emplace(e, co * c);
  return r;
}

MultiPoly MultiPoly::pow(std::uint64_t k) const {
  MultiPoly acc = MultiPoly::constant(nvars_, 1);
  MultiPoly base = *this;
  while (k > 0) {
    if (k & 1) acc = acc * base;
    k >>= 1;
    if (k > 0) base = base * base;
  }
  return acc;
}

bool MultiPoly::operator==(const MultiPoly& o) const {
  return nvars_ == o.nvars_ && terms_ == o.terms_;
}

int MultiPoly::compare(const MultiPoly& o) const {
  if (nvars_ != o.nvars_) return nvars_ < o.nvars_ ? -1 : 1;
  auto a = terms_.begin();
  auto b = o.terms_.begin();
  GradedLexGreater gl;
  for (; a != terms_.end() && b != o.terms_.end(); ++a, ++b) {
    if (gl(a->first, b->first)) return 1;   // a has the larger monomial
    if (gl(b->first, a->first)) return -1;
    int c = cmp(a->second, b->second);
    if (c != 0) return c;
  }
  if (a != terms_.end()) return 1;
  if (b != o.terms_.end()) return -1;
  return 0;
}

MultiPoly MultiPoly::sign_normalized() const {
  if (terms_.empty()) return *this;
  return leading_coeff() < 0 ? -*this : *this;
}

MultiPoly MultiPoly::coeff_of_power(int var, std::uint32_t k) const {
  if (var < 1 || var > nvars_) throw DomainError("variable index out of range");
  MultiPoly r(nvars_);
  for (const auto& [e, c] : terms_) {
    if (e[var - 1] != k) continue;
    Exponents e2 = e;
    e2[var - 1] = 0;
    r.terms_.emplace(std::move(e2), c);
  }
  return r;
}

std::string MultiPoly::str(bool t_alias) const {
  if (terms_.empty()) return "0";
  std::ostringstream out;
  bool first = true;
  for (const auto& [e, c] : terms_) {
    mpz_class a = abs(c);
    bool neg = c < 0;
    if (first) {
      if (neg) out << "-";
      first = false;
    } else {
      out << (neg ? " - " : " + ");
    }
    bool has_var = false;
    for (auto k : e)
      if (k != 0) has_var = true;
    if (!has_var || a != 1) {
      out << a.get_str();
      if (has_var) out << "*";
    }
    bool first_var = true;
    for (int i = 0; i < nvars_; ++i) {
      if (e[i] == 0) continue;
      if (!first_var) out << "*";
      first_var = false;
      if (t_alias && nvars_ == 1)
        out << "t";
      else
        out << "z" << (i + 1);
      if (e[i] > 1) out << "^" << e[i];
    }
  }
  return out.str();
}

// --- gcd machinery -----------------------------------------------------

namespace {

// Highest variable index (1-based) with positive degree in f or g, or 0.
int top_active_var(const MultiPoly& f, const MultiPoly& g) {
  int n = f.nvars();
  for (int v = n; v >= 1; --v) {
    for (const auto& [e, c] : f.terms())
      if (e[v - 1] > 0) return v;
    for (const auto& [e, c] : g.terms())
      if (e[v - 1] > 0) return v;
  }
  return 0;
}

int degree_in_or_neg(const MultiPoly& f, int var) {
  return f.is_zero() ? -1 : f.degree_in(var);
}

// Content of f viewed as a univariate polynomial in `var` over the ring of
// polynomials in the remaining variables.
MultiPoly content_wrt(const MultiPoly& f, int var) {
  MultiPoly acc(f.nvars());
  int d = degree_in_or_neg(f, var);
  for (int k = 0; k <= d; ++k) {
    MultiPoly ck = f.coeff_of_power(var, static_cast<std::uint32_t>(k));
    if (ck.is_zero()) continue;
    acc = gcd(acc, ck);
    if (acc.is_constant() && !acc.is_zero() && acc.leading_coeff() == 1) break;
  }
  return acc;
}

MultiPoly shift_var_power(const MultiPoly& f, int var, std::uint32_t k) {
  // f * var^k
  MultiPoly r(f.nvars());
  for (const auto& [e, c] : f.terms()) {
    Exponents e2 = e;
    e2[var - 1] += k;
    r.set_coeff(e2, c);
  }
  return r;
}

MultiPoly lead_coeff_wrt(const MultiPoly& f, int var, int deg) {
  return f.coeff_of_power(var, static_cast<std::uint32_t>(deg));
}

// Pseudo-remainder of f by g with respect to `var` (up to a content factor,
// which the caller strips immediately).
MultiPoly pseudo_rem(MultiPoly f, const MultiPoly& g, int var) {
  int dg = g.degree_in(var);
  MultiPoly lg = lead_coeff_wrt(g, var, dg);
  int df = degree_in_or_neg(f, var);
  while (!f.is_zero() && df >= dg) {
    MultiPoly lf = lead_coeff_wrt(f, var, df);
    // lg*f - lf*g*var^(df-dg) cancels the leading var-term of f.
    f = f * lg - shift_var_power(lf * g, var, static_cast<std::uint32_t>(df - dg));
    df = degree_in_or_neg(f, var);
  }
  return f;
}

}  // namespace

MultiPoly gcd(const MultiPoly& f, const MultiPoly& g) {
  if (f.nvars() != g.nvars())
    throw DomainError("gcd of polynomials in different variable counts");
  if (f.is_zero()) return g.sign_normalized();
  if (g.is_zero()) return f.sign_normalized();

  int var = top_active_var(f, g);
  if (var == 0) {
    // Both constants.
    mpz_class r;
    mpz_gcd(r.get_mpz_t(), f.leading_coeff().get_mpz_t(), g.leading_coeff().get_mpz_t());
    return MultiPoly::constant(f.nvars(), r);
  }

  // Primitive PRS in `var` over the subring generated by the other variables.
  MultiPoly cf = content_wrt(f, var);
  MultiPoly cg = content_wrt(g, var);
  MultiPoly c = gcd(cf, cg);
  MultiPoly a = exact_divide(f, cf);
  MultiPoly b = exact_divide(g, cg);
  if (degree_in_or_neg(a, var) < degree_in_or_neg(b, var)) std::swap(a, b);
  while (!b.is_zero()) {
    MultiPoly r = pseudo_rem(a, b, var);
    a = std::move(b);
    if (r.is_zero()) {
      b = MultiPoly(f.nvars());
    } else {
      b = exact_divide(r, content_wrt(r, var));
    }
  }
  return (c * a).sign_normalized();
}

MultiPoly exact_divide(const MultiPoly& f, const MultiPoly& g) {
  if (f.nvars() != g.nvars())
    throw DomainError("division of polynomials in different variable counts");
  if (g.is_zero()) throw DomainError("division by the zero polynomial");
  MultiPoly rem = f;
  MultiPoly quot(f.nvars());
  const Exponents& ge = g.leading_exponents();
  const mpz_class& gc = g.leading_coeff();
  Exponents e(f.nvars());
  while (!rem.is_zero()) {
    const Exponents& re = rem.leading_exponents();
    const mpz_class& rc = rem.leading_coeff();
    for (int i = 0; i < f.nvars(); ++i) {
      if (re[i] < ge[i]) throw DomainError("polynomial division is not exact");
      e[i] = re[i] - ge[i];
    }
    mpz_class q, r;
    mpz_tdiv_qr(q.get_mpz_t(), r.get_mpz_t(), rc.get_mpz_t(), gc.get_mpz_t());
    if (r != 0) throw DomainError("polynomial division is not exact");
    MultiPoly t(f.nvars());
    t.set_coeff(e, q);
    quot += t;
    rem -= t * g;
  }
  return quot;
}

// --- parsing ------------------------------------------------------------

namespace {

struct PolyParser {
  const std::string& s;
  std::size_t pos = 0;
  int nvars;

  void skip_ws() {
    while (pos < s.size() && std::isspace(static_cast<unsigned char>(s[pos]))) ++pos;
  }

  [[noreturn]] void fail(const std::string& msg) const { throw ParseError(pos, msg); }

  bool peek_is(char c) {
    skip_ws();
    return pos < s.size() && s[pos] == c;
  }

  bool consume(char c) {
    if (peek_is(c)) {
      ++pos;
      return true;
    }
    return false;
  }

  std::uint64_t parse_uint() {
    skip_ws();
    if (pos >= s.size() || !std::isdigit(static_cast<unsigned char>(s[pos])))
      fail("expected an unsigned integer");
    std::uint64_t v = 0;
    std::size_t digits = 0;
    while (pos < s.size() && std::isdigit(static_cast<unsigned char>(s[pos]))) {
      v = v * 10 + static_cast<std::uint64_t>(s[pos] - '0');
      ++pos;
      if (++digits > 9) fail("integer index or exponent too large");
    }
    return v;
  }

  MultiPoly parse_base() {
    skip_ws();
    if (pos >= s.size()) fail("unexpected end of input");
    char c = s[pos];
    if (c == '(') {
      ++pos;
      MultiPoly inner = parse_expr();
      if (!consume(')')) fail("expected ')'");
      return inner;
    }
    if (std::isdigit(static_cast<unsigned char>(c))) {
      std::size_t start = pos;
      while (pos < s.size() && std::isdigit(static_cast<unsigned char>(s[pos]))) ++pos;
      return MultiPoly::constant(nvars, mpz_class(s.substr(start, pos - start)));
    }
    if (c == 'z') {
      ++pos;
      std::size_t at = pos;
      if (pos >= s.size() || !std::isdigit(static_cast<unsigned char>(s[pos]))) {
        pos = at;
        fail("expected a variable index after 'z'");
      }
      std::uint64_t idx = parse_uint();
      if (idx < 1 || idx > static_cast<std::uint64_t>(nvars)) {
        pos = at;
        fail("variable z" + std::to_string(idx) + " outside 1.." + std::to_string(nvars));
      }
      return MultiPoly::variable(nvars, static_cast<int>(idx));
    }
    if (c == 't') {
      if (nvars != 1) fail("'t' is only available with one variable");
      ++pos;
      return MultiPoly::variable(nvars, 1);
    }
    if (c == '/') fail("rational-function syntax (p / q) is not allowed here");
    fail(std::string("unexpected character '") + c + "'");
  }

  MultiPoly parse_factor() {
    MultiPoly base = parse_base();
    if (consume('^')) {
      std::uint64_t k = parse_uint();
      return base.pow(k);
    }
    return base;
  }

  MultiPoly parse_term() {
    MultiPoly acc = parse_factor();
    while (consume('*')) acc *= parse_factor();
    return acc;
  }

  MultiPoly parse_expr() {
    skip_ws();
    bool neg = false;
    if (consume('-'))
      neg = true;
    else
      consume('+');
    MultiPoly acc = parse_term();
    if (neg) acc = -acc;
    for (;;) {
      if (consume('+'))
        acc += parse_term();
      else if (consume('-'))
        acc -= parse_term();
      else
        break;
    }
    return acc;
  }
};

}  // namespace

MultiPoly parse_poly(const std::string& text, int nvars) {
  if (nvars < 0) throw DomainError("number of variables must be nonnegative");
  PolyParser p{text, 0, nvars};
  MultiPoly r = p.parse_expr();
  p.skip_ws();
  if (p.pos != text.size()) p.fail("unexpected trailing input");
  return r;
}

double log_mpz_abs(const mpz_class& a) {
  if (a == 0) throw DomainError("log of zero");
  // Exact double conversion whenever |a| < 2^53 keeps small-integer logs
  // bitwise identical to std::log of the same integer.
  if (mpz_sizeinbase(a.get_mpz_t(), 2) <= 53)
    return std::log(std::fabs(a.get_d()));
  signed long int e = 0;
  double m = mpz_get_d_2exp(&e, a.get_mpz_t());
  return std::log(std::fabs(m)) + static_cast<double>(e) * std::log(2.0);
}

}  // namespace heightlab
