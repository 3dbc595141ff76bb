// heightlab: command-line front end for arithmetic height computations over
// finitely generated fields Q(z1..zd): naive and canonical heights, the
// multiplicative measure v(f), intersection constants on products of
// projective lines, bounded-height enumeration, and the Nevanlinna
// characteristic.

#include <cstdlib>
#include <iostream>
#include <string>
#include <thread>
#include <vector>

#include "CLI11.hpp"

#include "heightlab/arakelov.hpp"
#include "heightlab/archimedean.hpp"
#include "heightlab/elliptic.hpp"
#include "heightlab/errors.hpp"
#include "heightlab/heights.hpp"
#include "heightlab/jsonw.hpp"
#include "heightlab/mc.hpp"
#include "heightlab/multipoly.hpp"
#include "heightlab/northcott.hpp"
#include "heightlab/rational.hpp"

namespace hl = heightlab;

namespace {

struct GlobalConfig {
  std::uint64_t seed = 0;
  bool seed_given = false;
  std::uint64_t samples = 1'000'000;
  std::uint64_t batch = 10'000;
  double target_stderr = 0.0;
  bool text = false;
  int threads = 0;
  std::uint64_t budget = 10'000'000;

  hl::MCParams mc_params() const {
    hl::MCParams p;
    p.samples = samples;
    p.seed = seed;
    p.batch_size = batch;
    if (target_stderr > 0) p.target_stderr = target_stderr;
    return p;
  }

  int effective_threads() const {
    if (threads > 0) return threads;
    unsigned hc = std::thread::hardware_concurrency();
    return hc > 0 ? static_cast<int>(hc) : 1;
  }
};

void emit(const GlobalConfig& cfg, const hl::JsonValue& v) {
  if (!cfg.text) {
    std::cout << v.dump() << "\n";
    return;
  }
  // Text mode: one flattened line; the JSON form is the stable contract.
  std::cout << v.dump() << "\n";
}

// Split on `sep` at parenthesis/bracket depth zero.
std::vector<std::string> split_top_level(const std::string& s, char sep) {
  std::vector<std::string> parts;
  int depth = 0;
  std::string cur;
  for (char c : s) {
    if (c == '(' || c == '[') ++depth;
    if (c == ')' || c == ']') --depth;
    if (c == sep && depth == 0) {
      parts.push_back(cur);
      cur.clear();
    } else {
      cur.push_back(c);
    }
  }
  parts.push_back(cur);
  return parts;
}

std::string trim(const std::string& s) {
  std::size_t a = s.find_first_not_of(" \t\r\n");
  if (a == std::string::npos) return "";
  std::size_t b = s.find_last_not_of(" \t\r\n");
  return s.substr(a, b - a + 1);
}

std::string strip_wrapper(const std::string& s, char open, char close) {
  std::string t = trim(s);
  if (t.size() >= 2 && t.front() == open && t.back() == close) {
    // Only strip when the wrapper actually encloses the whole string.
    int depth = 0;
    for (std::size_t i = 0; i < t.size(); ++i) {
      if (t[i] == open) ++depth;
      if (t[i] == close) {
        --depth;
        if (depth == 0 && i + 1 != t.size()) return t;
      }
    }
    return trim(t.substr(1, t.size() - 2));
  }
  return t;
}

std::vector<hl::RationalFunction> parse_coord_list(const std::string& text, int nvars) {
  std::string inner = strip_wrapper(text, '[', ']');
  std::vector<hl::RationalFunction> coords;
  for (const auto& part : split_top_level(inner, ','))
    coords.push_back(hl::RationalFunction::parse(trim(part), nvars));
  return coords;
}

hl::PolarizationChoice parse_pol(const std::string& text, int nvars) {
  std::string t = trim(text);
  if (t == "arith" || t == "arithmetic") return hl::PolarizationChoice::arithmetic();
  if (t == "geom" || t == "geometric") return hl::PolarizationChoice::geometric();
  if (t == "nf" || t == "number-field") return hl::PolarizationChoice::number_field();
  if (t.rfind("aux:", 0) == 0) {
    auto parts = split_top_level(t.substr(4), ':');
    if (parts.size() != 2)
      throw hl::DomainError("auxiliary polarization syntax is aux:<slot>:<scale>");
    int slot = std::stoi(parts[0]);
    double scale = std::stod(parts[1]);
    return hl::PolarizationChoice::auxiliary(slot, scale);
  }
  (void)nvars;
  throw hl::DomainError("unknown polarization '" + t +
                        "' (expected arith, geom, nf, or aux:<slot>:<scale>)");
}

hl::ECPoint parse_ec_point(const hl::EllipticCurve& E, const std::string& text) {
  std::string t = trim(text);
  if (t == "inf" || t == "infinity" || t == "O")
    return hl::ECPoint::at_infinity(E.nvars);
  std::string inner = strip_wrapper(t, '(', ')');
  auto parts = split_top_level(inner, ',');
  if (parts.size() != 2)
    throw hl::DomainError("point syntax is \"(x, y)\" or \"inf\"");
  return hl::ECPoint::affine(E, hl::RationalFunction::parse(trim(parts[0]), E.nvars),
                             hl::RationalFunction::parse(trim(parts[1]), E.nvars));
}

hl::EllipticCurve parse_curve(const std::string& text, int nvars) {
  std::string inner = strip_wrapper(text, '[', ']');
  auto parts = split_top_level(inner, ',');
  if (parts.size() != 5)
    throw hl::DomainError("curve syntax is \"[a1, a2, a3, a4, a6]\"");
  return hl::EllipticCurve(nvars, hl::RationalFunction::parse(trim(parts[0]), nvars),
                           hl::RationalFunction::parse(trim(parts[1]), nvars),
                           hl::RationalFunction::parse(trim(parts[2]), nvars),
                           hl::RationalFunction::parse(trim(parts[3]), nvars),
                           hl::RationalFunction::parse(trim(parts[4]), nvars));
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{
      "heightlab: height functions for points over finitely generated fields "
      "Q(z1..zd), with Monte Carlo archimedean integrals over Fubini-Study "
      "measures and exact divisor combinatorics"};
  app.require_subcommand(1);

  GlobalConfig cfg;
  if (const char* env = std::getenv("HEIGHTLAB_SEED"))
    cfg.seed = std::strtoull(env, nullptr, 10);

  app.add_option("--seed", cfg.seed, "RNG seed (default: HEIGHTLAB_SEED env or 0)");
  app.add_option("--samples", cfg.samples, "Monte Carlo / quadrature sample count");
  app.add_option("--batch", cfg.batch, "samples per deterministic batch");
  app.add_option("--target-stderr", cfg.target_stderr,
                 "stop Monte Carlo early at this standard error");
  app.add_flag("--text", cfg.text, "human-oriented output instead of JSON");
  app.add_flag("--json", [](std::int64_t) {}, "JSON output (the default)");
  app.add_option("--threads", cfg.threads, "worker threads (default: hardware)");
  app.add_option("--budget", cfg.budget, "enumeration candidate budget");

  // poly parse
  auto* poly_cmd = app.add_subcommand("poly", "polynomial ring utilities");
  poly_cmd->fallthrough();
  auto* parse_cmd = poly_cmd->add_subcommand(
      "parse", "parse an integer polynomial (or rational function) over Q(z1..zd) "
               "and print its canonical form");
  parse_cmd->fallthrough();
  std::string parse_text;
  int parse_vars = 1;
  bool parse_rational = false;
  parse_cmd->add_option("--poly", parse_text, "expression to parse")->required();
  parse_cmd->add_option("--vars", parse_vars, "number of variables d")->required();
  parse_cmd->add_flag("--rational", parse_rational, "allow a p / q rational function");
  parse_cmd->callback([&] {
    hl::JsonValue j = hl::JsonValue::object();
    j.set("input", parse_text);
    j.set("nvars", parse_vars);
    if (parse_rational) {
      hl::RationalFunction f = hl::RationalFunction::parse(parse_text, parse_vars);
      j.set("canonical", f.str());
      j.set("num", f.num().str());
      j.set("den", f.den().str());
    } else {
      hl::MultiPoly f = hl::parse_poly(parse_text, parse_vars);
      j.set("canonical", f.str());
      j.set("terms", static_cast<std::uint64_t>(f.term_count()));
      j.set("total_degree", static_cast<long long>(f.total_degree()));
      hl::JsonValue degs = hl::JsonValue::array();
      for (int i = 1; i <= parse_vars; ++i)
        degs.push(static_cast<long long>(f.is_zero() ? -1 : f.degree_in(i)));
      j.set("degrees", std::move(degs));
      j.set("coeff_norm", f.coeff_norm().get_str());
    }
    emit(cfg, j);
  });

  // measure v
  auto* measure_cmd = app.add_subcommand("measure", "multiplicative measures");
  measure_cmd->fallthrough();
  auto* vcmd = measure_cmd->add_subcommand(
      "v", "measure v(f) = exp of the mean of log|f| over the product "
           "Fubini-Study measure (closed form in one variable, Monte Carlo "
           "with an exact inner integral otherwise)");
  vcmd->fallthrough();
  std::string v_text;
  int v_vars = 1;
  vcmd->add_option("--poly", v_text, "integer polynomial")->required();
  vcmd->add_option("--vars", v_vars, "number of variables d")->required();
  vcmd->callback([&] {
    hl::MultiPoly f = hl::parse_poly(v_text, v_vars);
    hl::MCEstimate est = hl::v_measure(f, cfg.mc_params(), cfg.effective_threads());
    hl::JsonValue j = hl::JsonValue::object();
    j.set("poly", f.str());
    j.set("nvars", v_vars);
    double v = std::exp(est.mean);
    if (std::isfinite(v))
      j.set("v", v);
    else
      j.set("v", nullptr);
    j.set("log_v", est.mean);
    j.set("stderr", est.std_error);
    j.set("samples", est.samples_used);
    j.set("resamples", est.resamples);
    j.set("seed", est.seed);
    emit(cfg, j);
  });

  // height point / height enumerate
  auto* height_cmd = app.add_subcommand("height", "naive heights of projective points");
  height_cmd->fallthrough();
  auto* point_cmd = height_cmd->add_subcommand(
      "point", "naive height of a point of P^n over Q(z1..zd): exact "
               "divisor-at-infinity sum plus the archimedean integral");
  point_cmd->fallthrough();
  std::string hp_point, hp_pol = "arith";
  int hp_vars = 1;
  point_cmd->add_option("--point", hp_point, "coordinates \"[f0, f1, ...]\"")->required();
  point_cmd->add_option("--vars", hp_vars, "number of variables d")->required();
  point_cmd->add_option("--pol", hp_pol, "arith | geom | nf | aux:<slot>:<scale>");
  point_cmd->callback([&] {
    auto coords = parse_coord_list(hp_point, hp_vars);
    hl::ProjectivePoint p = hl::ProjectivePoint::normalize(coords);
    hl::PolarizationChoice pol = parse_pol(hp_pol, hp_vars);
    hl::HeightEstimate h =
        hl::naive_height(p, pol, cfg.mc_params(), cfg.effective_threads());
    hl::JsonValue j = hl::JsonValue::object();
    hl::JsonValue pt = hl::JsonValue::array();
    for (const auto& s : p.coord_strings()) pt.push(s);
    j.set("point", std::move(pt));
    j.set("pol", pol.name());
    j.set("exact_part", h.exact_part);
    j.set("arch_mean", h.arch.mean);
    j.set("arch_stderr", h.arch.std_error);
    j.set("total", h.total());
    j.set("seed", h.arch.seed);
    j.set("samples", h.arch.samples_used);
    emit(cfg, j);
  });

  auto* enum_cmd = height_cmd->add_subcommand(
      "enumerate", "all points of P^n over Q(z1..zd) of naive height at most M "
                   "(finite by the Northcott property of the arithmetic "
                   "polarization)");
  enum_cmd->fallthrough();
  double en_M = 0.0;
  int en_vars = 1, en_dim = 1;
  std::string en_caps = "0";
  double en_band = 3.0;
  std::string en_bound_override;
  std::string en_pol = "arith";
  enum_cmd->add_option("--M", en_M, "height bound")->required();
  enum_cmd->add_option("--vars", en_vars, "number of variables d")->required();
  enum_cmd->add_option("--dim", en_dim, "ambient projective dimension n");
  enum_cmd->add_option("--caps", en_caps, "per-variable degree caps, e.g. \"2,1\"");
  enum_cmd->add_option("--band", en_band, "borderline band in stderr units");
  enum_cmd->add_option("--coeff-bound", en_bound_override,
                       "override the certified coefficient bound");
  enum_cmd->add_option("--pol", en_pol, "polarization (must be arith)");
  enum_cmd->callback([&] {
    hl::EnumSpec spec;
    spec.M = en_M;
    spec.dim = en_dim;
    spec.nvars = en_vars;
    for (const auto& part : split_top_level(en_caps, ','))
      spec.degree_caps.push_back(std::stoi(trim(part)));
    spec.pol = parse_pol(en_pol, en_vars);
    spec.params = cfg.mc_params();
    spec.classify_band = en_band;
    spec.budget = cfg.budget;
    if (!en_bound_override.empty())
      spec.coeff_bound_override = mpz_class(en_bound_override);
    auto entries = hl::enumerate_bounded(spec, cfg.effective_threads());
    hl::JsonValue arr = hl::JsonValue::array();
    for (const auto& e : entries) {
      hl::JsonValue j = hl::JsonValue::object();
      hl::JsonValue pt = hl::JsonValue::array();
      for (const auto& s : e.point.coord_strings()) pt.push(s);
      j.set("point", std::move(pt));
      j.set("total", e.height.total());
      j.set("stderr", e.height.std_error());
      j.set("class", e.borderline ? "borderline" : "certain");
      arr.push(std::move(j));
    }
    emit(cfg, arr);
  });

  // ec canonical-height / ec is-torsion
  auto* ec_cmd = app.add_subcommand("ec", "elliptic curves over Q or Q(t)");
  ec_cmd->fallthrough();
  std::string ec_curve, ec_point, ec_pol = "nf";
  int ec_vars = 0;
  double ec_tol = 1e-3;
  int ec_ncap = 0;
  long ec_mcap = 16;
  auto add_ec_common = [&](CLI::App* c) {
    c->add_option("--curve", ec_curve, "Weierstrass coefficients \"[a1,a2,a3,a4,a6]\"")
        ->required();
    c->add_option("--point", ec_point, "point \"(x, y)\" or \"inf\"")->required();
    c->add_option("--vars", ec_vars, "0 for Q, 1 for Q(t)");
    c->add_option("--pol", ec_pol, "arith | geom | nf | aux:<slot>:<scale>");
    c->add_option("--tol", ec_tol, "stop when scaled differences fall below this");
    c->add_option("--ncap", ec_ncap, "doubling-stage cap (default 12 over Q, 8 over Q(t))");
  };
  auto* canon_cmd = ec_cmd->add_subcommand(
      "canonical-height", "Neron-Tate canonical height via the doubling limit "
                          "lim 4^-n h(x(2^n P))");
  canon_cmd->fallthrough();
  add_ec_common(canon_cmd);
  canon_cmd->callback([&] {
    hl::EllipticCurve E = parse_curve(ec_curve, ec_vars);
    hl::ECPoint P = parse_ec_point(E, ec_point);
    hl::PolarizationChoice pol = parse_pol(ec_pol, ec_vars);
    int ncap = ec_ncap > 0 ? ec_ncap : (ec_vars == 0 ? 12 : 8);
    auto res = hl::canonical_height(E, P, pol, ec_tol, ncap, cfg.mc_params(),
                                    cfg.effective_threads());
    hl::JsonValue j = hl::JsonValue::object();
    j.set("pol", pol.name());
    j.set("value", res.value);
    j.set("error", res.error_bound);
    j.set("converged", res.converged);
    j.set("torsion_stage", static_cast<long long>(res.torsion_stage));
    hl::JsonValue table = hl::JsonValue::array();
    for (const auto& row : res.table) {
      hl::JsonValue r = hl::JsonValue::object();
      r.set("n", static_cast<long long>(row.n));
      r.set("height", row.height);
      r.set("scaled", row.scaled);
      r.set("diff", row.diff);
      r.set("stderr", row.std_error);
      table.push(std::move(r));
    }
    j.set("table", std::move(table));
    emit(cfg, j);
  });

  auto* torsion_cmd = ec_cmd->add_subcommand(
      "is-torsion", "torsion test: exact small multiples as certificates, the "
                    "canonical height as the separating invariant");
  torsion_cmd->fallthrough();
  add_ec_common(torsion_cmd);
  torsion_cmd->add_option("--mcap", ec_mcap, "largest multiple checked exactly");
  torsion_cmd->callback([&] {
    hl::EllipticCurve E = parse_curve(ec_curve, ec_vars);
    hl::ECPoint P = parse_ec_point(E, ec_point);
    hl::PolarizationChoice pol = parse_pol(ec_pol, ec_vars);
    int ncap = ec_ncap > 0 ? ec_ncap : (ec_vars == 0 ? 12 : 8);
    auto res = hl::is_torsion(E, P, pol, ec_mcap, ec_tol, ncap, cfg.mc_params(),
                              cfg.effective_threads());
    hl::JsonValue j = hl::JsonValue::object();
    const char* verdict = res.verdict == hl::TorsionVerdict::Torsion ? "torsion"
                          : res.verdict == hl::TorsionVerdict::NotTorsion
                              ? "not-torsion"
                              : "undecided";
    j.set("verdict", verdict);
    j.set("certificate_m", static_cast<long long>(res.certificate_m));
    if (res.height) {
      j.set("hhat", res.height->value);
      j.set("hhat_error", res.height->error_bound);
    }
    emit(cfg, j);
  });

  // arakelov constants
  auto* arak_cmd = app.add_subcommand("arakelov", "intersection constants on (P^1_Z)^d");
  arak_cmd->fallthrough();
  auto* const_cmd = arak_cmd->add_subcommand(
      "constants", "sigma (the Fubini-Study self-intersection on P^1_Z), the "
                   "all-FS boundary-divisor constants e_d, and the auxiliary "
                   "height constant e(c, d)");
  const_cmd->fallthrough();
  double ak_c = 0.0;
  int ak_d = 0;
  bool ak_verify = false;
  const_cmd->add_option("--c", ak_c, "metric scale for the auxiliary constant");
  const_cmd->add_option("--d", ak_d, "dimension for the auxiliary constant");
  const_cmd->add_flag("--verify", ak_verify, "re-estimate sigma by Monte Carlo");
  const_cmd->callback([&] {
    hl::JsonValue j = hl::JsonValue::object();
    std::optional<hl::MCParams> verify;
    if (ak_verify) verify = cfg.mc_params();
    double sigma = hl::fs_self_intersection(verify, cfg.effective_threads());
    j.set("sigma", sigma);
    hl::JsonValue e = hl::JsonValue::object();
    for (int d = 1; d <= 6; ++d) e.set(std::to_string(d), hl::e_all_fs(d));
    j.set("e", std::move(e));
    if (ak_verify) j.set("verified", true);
    if (ak_c > 0 && ak_d > 0) j.set("aux_e", hl::aux_height_constant(ak_c, ak_d));
    emit(cfg, j);
  });

  // nevanlinna T
  auto* nev_cmd = app.add_subcommand("nevanlinna", "value-distribution functions");
  nev_cmd->fallthrough();
  auto* tcmd = nev_cmd->add_subcommand(
      "T", "Nevanlinna characteristic T_f(r): pole counting term plus the "
           "proximity integral over the circle |z| = r");
  tcmd->fallthrough();
  std::string nev_f;
  double nev_r = 2.0;
  tcmd->add_option("--f", nev_f, "rational function \"p / q\" in one variable")
      ->required();
  tcmd->add_option("--r", nev_r, "circle radius")->required();
  tcmd->callback([&] {
    hl::RationalFunction f = hl::RationalFunction::parse(nev_f, 1);
    auto t = hl::nevanlinna_T(f, nev_r, cfg.mc_params(), cfg.effective_threads());
    hl::JsonValue j = hl::JsonValue::object();
    j.set("f", f.str());
    j.set("r", nev_r);
    j.set("T", t.total());
    j.set("counting", t.counting);
    j.set("proximity", t.prox.mean);
    j.set("stderr", t.prox.std_error);
    j.set("samples", t.prox.samples_used);
    emit(cfg, j);
  });

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 2;
  } catch (const hl::Error& e) {
    hl::JsonValue j = hl::JsonValue::object();
    j.set("error", e.kind());
    j.set("detail", e.detail());
    std::cout << j.dump() << "\n";
    return 1;
  } catch (const std::exception& e) {
    hl::JsonValue j = hl::JsonValue::object();
    j.set("error", "internal error");
    j.set("detail", e.what());
    std::cout << j.dump() << "\n";
    return 1;
  }
  return 0;
}
