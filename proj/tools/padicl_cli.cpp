#include <chrono>
#include <cmath>
#include <iostream>
#include <optional>

#include "CLI11.hpp"
#include "json.hpp"
#include "padicl/config.hpp"
#include "padicl/errors.hpp"
#include "padicl/lfunction.hpp"
#include "padicl/oracle.hpp"

using json = nlohmann::json;
using namespace padicl;

namespace {

struct Options {
  std::string config;
  std::vector<std::string> sets;
  bool pretty = false;
  bool no_timing = false;
};

using Clock = std::chrono::steady_clock;

double elapsed_ms(Clock::time_point t0) {
  return std::chrono::duration<double, std::milli>(Clock::now() - t0).count();
}

json coeffs(const CycElem& z) { return json(z.coeffs()); }

json rational(const mpq_class& q) { return json{{"num", q.get_num().get_str()}, {"den", q.get_den().get_str()}}; }

json elem(const FieldElem& x) { return json::array({x.a.get_str(), x.b.get_str()}); }

json ideal_json(const Ideal& I) { return json{{"a", I.a}, {"b", I.b}, {"c", I.c}}; }

json context(const JobConfig& cfg) {
  return json{{"p", cfg.p},
              {"M", cfg.M},
              {"field", cfg.field_text},
              {"modulus", cfg.modulus_text},
              {"character", cfg.character_text()},
              {"m", cfg.m}};
}

json stats_json(const ConeStats& st) { return json{{"count", st.count}, {"max_K", st.max_K}}; }

json cert_json(const JobConfig& cfg, const LValueCertificate& c) {
  json j = context(cfg);
  j["s"] = c.s.residue();
  j["s_digits"] = c.s.digits();
  j["beta"] = coeffs(c.beta);
  j["gamma"] = coeffs(c.gamma);
  j["aux_prime"] = c.aux_c;
  j["cone_stats"] = stats_json(c.stats);
  if (auto q = c.quotient()) j["value"] = coeffs(*q);
  return j;
}

json series_json(const JobConfig& cfg, const IwasawaSeriesCert& s) {
  json j = context(cfg);
  j["L"] = s.L;
  j["e"] = s.e;
  j["u"] = s.u.residue();
  json B = json::array(), C = json::array();
  for (const auto& b : s.B) B.push_back(coeffs(b));
  for (const auto& c : s.C) C.push_back(coeffs(c));
  j["B"] = B;
  j["C"] = C;
  j["aux_prime"] = s.aux_c;
  j["cone_stats"] = stats_json(s.stats);
  return j;
}

JobConfig load(const Options& o) { return load_config(o.config, o.sets); }

json cmd_eval(const Options& o, const std::string& path) {
  const JobConfig cfg = load(o);
  LFunction Lf(cfg.job());
  const PAdicInt s = cfg.s();
  json j;
  if (path == "iwasawa") {
    j = cert_json(cfg, evaluate_iwasawa(Lf.iwasawa_series(cfg.series_length()), s));
  } else if (path == "measure") {
    j = cert_json(cfg, Lf.l_value(s, EvalPath::Measure));
  } else if (path == "direct") {
    j = cert_json(cfg, Lf.l_value(s, EvalPath::Direct));
  } else {
    throw ParseError("unknown path '" + path + "'");
  }
  j["path"] = path;
  return j;
}

json cmd_iwasawa(const Options& o) {
  const JobConfig cfg = load(o);
  LFunction Lf(cfg.job());
  return series_json(cfg, Lf.iwasawa_series(cfg.series_length()));
}

json cmd_invariants(const Options& o) {
  const JobConfig cfg = load(o);
  LFunction Lf(cfg.job());
  const IwasawaSeriesCert s = Lf.iwasawa_series(cfg.series_length());
  const Invariants inv = lambda_mu_invariants(s);
  json j = context(cfg);
  j["L"] = s.L;
  j["determined"] = inv.determined;
  if (!inv.series.empty() && (inv.determined || inv.mu > 0)) {
    j["lambda"] = inv.lambda;
    j["mu"] = inv.mu;
  }
  json I = json::array();
  for (const auto& c : inv.series) I.push_back(coeffs(c));
  j["series"] = I;
  j["aux_prime"] = s.aux_c;
  return j;
}

json cmd_cones(const Options& o) {
  const JobConfig cfg = load(o);
  LFunction Lf(cfg.job());
  json j = context(cfg);
  j["aux_prime"] = Lf.aux().c;
  json ideals = json::array();
  for (std::size_t i = 0; i < Lf.representatives().size(); ++i) {
    const auto& d = Lf.decomposition(i);
    json cones = json::array();
    for (const auto& C : d.cones) {
      json g = json::array();
      for (const auto& l : C.gens) g.push_back(elem(l));
      cones.push_back(json{{"base", elem(C.base)}, {"gens", g}});
    }
    ideals.push_back(json{{"ideal", ideal_json(d.a)}, {"cones", cones}, {"merged_steps", d.merged_steps}});
  }
  j["decompositions"] = ideals;
  return j;
}

json cmd_verify(const Options& o, std::optional<std::size_t> drop) {
  const JobConfig cfg = load(o);
  LFunction Lf(cfg.job());
  json j = context(cfg);
  j["height"] = cfg.height;
  j["aux_prime"] = Lf.aux().c;
  json reports = json::array();
  bool clean = true;
  for (std::size_t i = 0; i < Lf.representatives().size(); ++i) {
    ConeDecomposition d = Lf.decomposition(i);
    if (drop && i == 0) {
      if (*drop >= d.cones.size()) throw ParseError("--drop-cone index out of range");
      d.cones.erase(d.cones.begin() + static_cast<std::ptrdiff_t>(*drop));
    }
    const CoverageReport r = verify_decomposition(Lf.field(), d, cfg.height);
    clean = clean && r.clean();
    reports.push_back(json{{"ideal", ideal_json(d.a)},
                           {"cones", d.cones.size()},
                           {"points", r.points},
                           {"covered_once", r.covered_once},
                           {"duplicates", r.duplicates.size()},
                           {"misses", r.misses.size()}});
  }
  j["reports"] = reports;
  j["clean"] = clean;
  return j;
}

json cmd_oracle(const Options& o, const std::string& kind_in, std::optional<int> k_in, i64 b, i64 f, i64 a, i64 c) {
  std::optional<JobConfig> cfg;
  if (!o.config.empty()) cfg = load(o);
  const std::string kind = kind_in.empty() ? (cfg ? cfg->oracle_kind : "bernoulli") : kind_in;
  const int k = k_in ? *k_in : (cfg ? cfg->oracle_k : 0);
  json j{{"kind", kind}, {"k", k}};
  if (kind == "bernoulli") {
    json poly = json::array();
    for (const auto& q : oracle::bernoulli_polynomial(k)) poly.push_back(rational(q));
    j["polynomial"] = poly;
    j["number"] = rational(oracle::bernoulli_number(k));
  } else if (kind == "hurwitz") {
    j["b"] = b;
    j["f"] = f;
    j["value"] = rational(oracle::hurwitz_partial_zeta(b, f, k));
  } else if (kind == "twisted") {
    j["a"] = a;
    j["f"] = f;
    j["c"] = c;
    j["value"] = rational(oracle::exact_twisted_partial_zeta_Q(a, f, c, k));
  } else if (kind == "classical" || kind == "cone") {
    if (!cfg) throw ParseError("oracle kind '" + kind + "' needs a config");
    LFunction Lf(cfg->job());
    j.update(context(*cfg));
    if (kind == "classical") {
      if (!Lf.field().is_rational()) throw ParseError("classical oracle is for the rational field");
      const i64 fn = Lf.modulus().f.norm();
      std::vector<i64> ex(static_cast<std::size_t>(fn), -1);
      for (i64 r = 1; r <= fn; ++r)
        if (std::gcd(r, fn) == 1)
          ex[static_cast<std::size_t>(r % fn)] =
              character_exponent(Lf.group(), Lf.character().chi, integer_ideal(Lf.field(), r));
      const auto v = oracle::classical_L_value(ex, Lf.character().chi.n, k + 1);
      json cs = json::array();
      for (const auto& q : v.coeffs()) cs.push_back(rational(q));
      j["s"] = -k;
      j["value"] = cs;
    } else {
      j["aux_prime"] = Lf.aux().c;
      json per = json::array();
      for (std::size_t i = 0; i < Lf.representatives().size(); ++i) {
        const auto& d = Lf.decomposition(i);
        mpq_class total = 0;
        json cones = json::array();
        for (const auto& C : d.cones) {
          const mpq_class v = oracle::exact_cone_series_value(Lf.field(), C, Lf.aux(), k);
          total += v;
          cones.push_back(rational(v));
        }
        mpz_class nk;
        mpz_pow_ui(nk.get_mpz_t(), mpz_class(static_cast<long>(d.a.norm())).get_mpz_t(), static_cast<unsigned long>(k));
        per.push_back(json{{"ideal", ideal_json(d.a)}, {"cones", cones}, {"twisted_partial_zeta", rational(total / nk)}});
      }
      j["ideals"] = per;
    }
  } else {
    throw ParseError("unknown oracle kind '" + kind + "'");
  }
  return j;
}

json cmd_bench(const Options& o) {
  const JobConfig cfg = load(o);
  LFunction Lf(cfg.job());
  const auto& cones = Lf.decomposition(0).cones;
  BTableCache cache;
  json rows = json::array();
  std::vector<double> lx, ly;
  for (std::size_t N : cfg.bench_N) {
    const auto t0 = Clock::now();
    for (const auto& C : cones) (void)cone_measure(C, Lf.aux_context(), N, &cache);
    const double ms = elapsed_ms(t0);
    rows.push_back(json{{"N", N}, {"ms", ms}, {"cones", cones.size()}});
    if (ms > 0 && N > 1) {
      lx.push_back(std::log(static_cast<double>(N)));
      ly.push_back(std::log(ms));
    }
  }
  json j = context(cfg);
  j["rows"] = rows;
  if (lx.size() >= 2) {
    double mx = 0, my = 0;
    for (std::size_t i = 0; i < lx.size(); ++i) mx += lx[i], my += ly[i];
    mx /= static_cast<double>(lx.size());
    my /= static_cast<double>(ly.size());
    double sxy = 0, sxx = 0;
    for (std::size_t i = 0; i < lx.size(); ++i) sxy += (lx[i] - mx) * (ly[i] - my), sxx += (lx[i] - mx) * (lx[i] - mx);
    j["loglog_slope"] = sxx > 0 ? sxy / sxx : 0.0;
    j["expected_slope"] = Lf.field().degree() + 1;
  }
  const std::size_t total = cache.hits() + cache.misses();
  j["btable_cache"] = json{{"hits", cache.hits()},
                           {"misses", cache.misses()},
                           {"hit_rate", total ? static_cast<double>(cache.hits()) / static_cast<double>(total) : 0.0}};
  j["threads"] = worker_threads();
  return j;
}

std::string error_kind(const Error& e) {
  if (dynamic_cast<const ParseError*>(&e)) return "parse";
  if (dynamic_cast<const PrecisionError*>(&e)) return "precision";
  if (dynamic_cast<const ResourceError*>(&e)) return "resource";
  if (dynamic_cast<const PoleError*>(&e)) return "pole";
  return "hypothesis";
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"p-adic L-functions of Q and real quadratic fields"};
  app.require_subcommand(1);
  app.fallthrough();
  Options o;
  app.add_flag("--pretty", o.pretty, "Indented JSON");
  app.add_flag("--json", "Compact JSON (default)");
  app.add_flag("--no-timing", o.no_timing, "Omit timing_ms so output is byte-stable");

  auto with_config = [&](CLI::App* sc, bool required) {
    auto* opt = sc->add_option("config", o.config, "Job config file");
    if (required) opt->required();
    sc->add_option("--set", o.sets, "Override a config entry, key=value");
  };

  std::string path = "direct";
  auto* eval = app.add_subcommand("eval", "L-value certificate (beta, gamma)");
  with_config(eval, true);
  eval->add_option("--path", path, "direct | measure | iwasawa")->check(CLI::IsMember({"direct", "measure", "iwasawa"}));

  auto* iw = app.add_subcommand("iwasawa", "Iwasawa series certificate (B, C)");
  with_config(iw, true);
  auto* inv = app.add_subcommand("invariants", "lambda and mu of B / C");
  with_config(inv, true);
  auto* cones = app.add_subcommand("cones", "Cone decompositions");
  with_config(cones, true);

  std::optional<std::size_t> drop;
  auto* ver = app.add_subcommand("verify", "Brute-force coverage check of the decompositions");
  with_config(ver, true);
  ver->add_option("--drop-cone", drop, "Remove this cone of the first decomposition before checking");

  std::string okind;
  std::optional<int> ok;
  i64 ob = 1, of = 1, oa = 1, oc = 2;
  auto* orc = app.add_subcommand("oracle", "Exact rational reference values");
  with_config(orc, false);
  orc->add_option("--kind", okind, "bernoulli | hurwitz | twisted | classical | cone");
  orc->add_option("--k", ok, "Exponent");
  orc->add_option("--b", ob, "Residue class (hurwitz)");
  orc->add_option("--f", of, "Modulus (hurwitz, twisted)");
  orc->add_option("--a", oa, "Ideal generator (twisted)");
  orc->add_option("--c", oc, "Auxiliary prime (twisted)");

  auto* bench = app.add_subcommand("bench", "cone_measure timing against N");
  with_config(bench, true);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? 0 : 1;
  }

  try {
    const auto t0 = Clock::now();
    json out;
    if (*eval) out = cmd_eval(o, path);
    else if (*iw) out = cmd_iwasawa(o);
    else if (*inv) out = cmd_invariants(o);
    else if (*cones) out = cmd_cones(o);
    else if (*ver) out = cmd_verify(o, drop);
    else if (*orc) out = cmd_oracle(o, okind, ok, ob, of, oa, oc);
    else if (*bench) out = cmd_bench(o);
    if (!o.no_timing) out["timing_ms"] = elapsed_ms(t0);
    std::cout << (o.pretty ? out.dump(2) : out.dump()) << "\n";
    return 0;
  } catch (const Error& e) {
    json err{{"error", error_kind(e)}, {"message", e.what()}};
    std::cerr << err.dump() << "\n";
    return e.exit_code();
  } catch (const std::invalid_argument& e) {
    std::cerr << json{{"error", "parse"}, {"message", e.what()}}.dump() << "\n";
    return 1;
  } catch (const std::exception& e) {
    std::cerr << json{{"error", "internal"}, {"message", e.what()}}.dump() << "\n";
    return 2;
  }
}
