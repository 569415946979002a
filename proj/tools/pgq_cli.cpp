// Command-line front end: builds models, runs checks and writes JSON/CSV reports.
#include <CLI11.hpp>

#include <chrono>
#include <ctime>
#include <fstream>
#include <iostream>

#include "pgq/config.hpp"
#include "pgq/invariants.hpp"
#include "pgq/tables.hpp"

using namespace pgq;

namespace {

enum Exit { kPass = 0, kFail = 1, kUsage = 2, kCap = 3 };

struct Common {
  std::string out;
  int workers = 1;
  bool timestamp = false;
};

std::string now_utc() {
  std::time_t t = std::time(nullptr);
  char buf[32];
  std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", std::gmtime(&t));
  return buf;
}

void emit_text(const Common& c, const std::string& text) {
  if (c.out.empty() || c.out == "-") {
    std::cout << text;
    return;
  }
  std::ofstream f(c.out);
  if (!f) throw Error(ErrorKind::ParseError, "cannot write '" + c.out + "'");
  f << text;
}

void emit(const Common& c, Json rep) {
  if (c.timestamp) rep["timestamp"] = now_utc();
  emit_text(c, rep.dump(2) + "\n");
}

Json point_json(const FieldCtx& F, const AffinePoint& P) {
  return Json::array({elem_to_json(F, P.x), elem_to_json(F, P.y), elem_to_json(F, P.z)});
}

Json gelem_json(const FieldCtx& F, const GroupElem& g) {
  return Json{{"a", elem_to_json(F, g.a)}, {"b", elem_to_json(F, g.b)}, {"c", elem_to_json(F, g.c)},
              {"t", elem_to_json(F, g.t)}, {"phi", g.phi.exp}};
}

Json with_config(const std::string& cmd, const GroupSpec& G) {
  Json rep = report_header(cmd, G.field());
  rep["config"] = params_to_json(G.field(), *G.params());
  rep["group"] = Json{{"id", G.id()}, {"order", G.order()}};
  return rep;
}

CheckMode mode_or(const std::string& s, const FieldCtx& F, std::uint64_t small_q, std::uint64_t samples) {
  if (!s.empty()) return CheckMode::parse(s);
  if (F.q() <= small_q) return CheckMode{};
  return CheckMode{false, samples, 1};
}

Json theorem_json(const FieldCtx& F, const TheoremMainReport& r) {
  Json j{{"pass", r.pass}, {"mode", r.mode.to_string()}, {"pairs_checked", r.pairs_checked}};
  if (r.violation)
    j["witness"] = Json{{"left", point_json(F, r.violation->left)},
                        {"right", point_json(F, r.violation->right)},
                        {"product", point_json(F, r.violation->product)},
                        {"fails", r.violation->what}};
  return j;
}

Json series_json(const CentralSeries& cs) {
  Json j{{"kind", cs.kind == CentralSeries::Kind::Lower ? "lower" : "upper"}, {"orders", cs.orders}};
  if (cs.cls >= 0)
    j["class"] = cs.cls;
  else
    j["class"] = Json{{"unknown", cs.unknown_reason}};
  if (cs.kind == CentralSeries::Kind::Lower) j["gamma2_frobenius_trivial"] = cs.gamma2_frobenius_trivial;
  if (cs.generation)
    j["generation"] = Json{{"generates", cs.generation->generates}, {"method", cs.generation->method},
                           {"reached", cs.generation->reached}};
  return j;
}

std::size_t gamma_cap() { return cap_from_env("PGQ_GAMMA_CAP", 16000000); }
std::size_t materialize_cap() { return cap_from_env("PGQ_MATERIALIZE_CAP", std::size_t(1) << 22); }

// ---- subcommands ----

int cmd_quad(const Common& c, const std::string& field, bool payne) {
  auto F = FieldCtx::parse(field);
  const int q = int(F->q());
  Quadrangle W = build_wq(*F, cap_from_env("PGQ_WQ_POINTS_CAP", std::size_t(1) << 20));
  auto section = [](const GqReport& r, int s, int t) {
    Json j{{"points", r.points}, {"lines", r.lines}, {"order", {s, t}}, {"axioms", r.pass ? "pass" : "fail"}};
    if (!r.pass) j["failure"] = r.failure;
    return j;
  };
  Json rep = report_header("quad", *F);
  GqReport rw = verify_gq(W, q, q);
  bool ok = rw.pass;
  if (payne) {
    GqReport rp = verify_gq(build_payne(*F, W), q - 1, q + 1);
    ok &= rp.pass;
    rep["structure"] = "payne";
    rep.update(section(rp, q - 1, q + 1));
    rep["wq"] = section(rw, q, q);
  } else {
    rep["structure"] = "wq";
    rep.update(section(rw, q, q));
  }
  emit(c, rep);
  return ok ? kPass : kFail;
}

int cmd_build(const Common& c, const std::string& config, const std::string& check) {
  auto rc = load_config_file(config);
  GroupSpec G = build_construction(rc.F, rc.params);
  Json rep = with_config("build", G);
  rep["seeds"] = Json{{"self_check", G.params()->self_check_seed}};
  bool ok = true;
  if (!check.empty()) {
    auto r = check_theorem_main(G, CheckMode::parse(check));
    rep["check"] = theorem_json(G.field(), r);
    ok = r.pass;
  }
  emit(c, rep);
  return ok ? kPass : kFail;
}

int cmd_check(const Common& c, const std::string& config, bool exhaustive, const std::string& mode) {
  auto rc = load_config_file(config);
  // the check itself is the verdict, so skip the builder's sampled self-check
  GroupSpec G = build_unchecked(rc.F, rc.params);
  CheckMode m = exhaustive ? CheckMode{} : mode_or(mode, G.field(), 9, 1000000);
  auto r = check_theorem_main(G, m);
  Json rep = with_config("check", G);
  rep["seeds"] = Json{{"check", m.seed}};
  rep["check"] = theorem_json(G.field(), r);
  emit(c, rep);
  return r.pass ? kPass : kFail;
}

int cmd_regular(const Common& c, const std::string& config, const std::string& mode, std::uint64_t lines) {
  auto rc = load_config_file(config);
  GroupSpec G = build_unchecked(rc.F, rc.params);
  const FieldCtx& F = G.field();
  CheckMode m = mode_or(mode, F, 27, 1000000);
  std::optional<Quadrangle> Qp;
  Json rep = with_config("regular", G);
  if (F.q() <= 81) {
    Qp = build_payne(F, build_wq(F));
  } else {
    rep["line_check"] = "skipped: Payne structure not built above q = 81";
  }
  auto r = verify_point_regular(G, Qp ? &*Qp : nullptr, m, Qp ? lines : 0);
  rep["seeds"] = Json{{"regularity", m.seed}};
  rep["regularity"] = Json{{"pass", r.pass},
                           {"mode", m.to_string()},
                           {"group_order", r.group_order},
                           {"orbit_size", r.orbit_size},
                           {"samples", r.samples},
                           {"lines_checked", r.lines_checked}};
  if (!r.pass) rep["regularity"]["failure"] = r.failure;
  emit(c, rep);
  return r.pass ? kPass : kFail;
}

Json thompson_json(const FieldCtx& F, const ThompsonResult& t) {
  Json j{{"candidate_order", t.candidate_order},
         {"candidate_abelian", t.candidate_abelian},
         {"degree_precondition", t.degree_precondition}};
  if (t.order)
    j["order"] = *t.order;
  else
    j["order"] = Json{{"unknown", t.reason}};
  if (t.order && !t.reason.empty()) j["note"] = t.reason;
  if (!t.offending.empty()) {
    Json w = Json::array();
    for (std::size_t i = 0; i < std::min<std::size_t>(t.offending.size(), 10); ++i)
      w.push_back(gelem_json(F, t.offending[i]));
    j["offending_count"] = t.offending.size();
    j["offending"] = w;
  }
  return j;
}

int cmd_invariants(const Common& c, const std::string& config, std::uint64_t samples, std::uint64_t seed) {
  auto rc = load_config_file(config);
  GroupSpec G = build_construction(rc.F, rc.params);
  const FieldCtx& F = G.field();
  const auto t0 = std::chrono::steady_clock::now();
  Json rep = with_config("invariants", G);
  rep["seeds"] = Json{{"exponent", seed}, {"self_check", G.params()->self_check_seed}};

  auto e = exponent(G, samples, seed, 27, c.workers);
  Json ej{{"value", e.value}, {"exact", e.exact}, {"elements_scanned", e.scanned}};
  if (e.predicted) ej["predicted"] = *e.predicted;
  rep["exponent"] = ej;

  std::optional<SubgroupSet> U;
  try {
    U.emplace(materialize(G, materialize_cap()));
  } catch (const Error& err) {
    if (err.kind() != ErrorKind::CapExceeded) throw;
    rep["center"] = Json{{"unknown", err.what()}};
    rep["thompson"] = Json{{"order", Json{{"unknown", err.what()}}}};
  }
  if (U) {
    auto Z = center(G, *U);
    Json zj{{"order", Z.size()}};
    bool only_a = true;
    for (const auto& z : Z) only_a &= z.b.code == 0 && z.c.code == 0 && z.t.code == 0 && z.phi.exp == 0;
    zj["description"] = only_a ? "elements g_{a,0,0}" : "general";
    if (Z.size() <= 64) {
      Json el = Json::array();
      for (const auto& z : Z) el.push_back(gelem_json(F, z));
      zj["elements"] = el;
    }
    rep["center"] = zj;
    rep["thompson"] = thompson_json(F, thompson(G, *U));
  }
  try {
    rep["nilpotency"] = series_json(lower_central_series(G, gamma_cap()));
  } catch (const Error& err) {
    if (err.kind() != ErrorKind::CapExceeded) throw;
    rep["nilpotency"] = Json{{"class", Json{{"unknown", err.what()}}}};
  }
  if (c.timestamp)
    rep["timing_s"] = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  emit(c, rep);
  return kPass;
}

int cmd_series(const Common& c, const std::string& config, bool upper, const std::string& claims,
               std::uint64_t samples, std::uint64_t seed) {
  auto rc = load_config_file(config);
  GroupSpec G = build_construction(rc.F, rc.params);
  const FieldCtx& F = G.field();
  Json rep = with_config("series", G);
  rep["seeds"] = Json{{"claims", seed}};
  bool ok = true;
  CentralSeries lower = lower_central_series(G, gamma_cap());
  rep["lower"] = series_json(lower);
  ok &= lower.cls >= 0;
  if (upper) {
    SubgroupSet U = materialize(G, materialize_cap());
    CentralSeries up = upper_central_series_small(G, U);
    rep["upper"] = series_json(up);
    rep["lengths_agree"] = up.cls == lower.cls;
    ok &= up.cls >= 0 && up.cls == lower.cls;
  }
  if (!claims.empty()) {
    int ex = 0, k = 0;
    const auto colon = claims.find(':');
    try {
      ex = std::stoi(claims.substr(0, colon));
      if (colon != std::string::npos) k = std::stoi(claims.substr(colon + 1));
    } catch (const std::exception&) {
      throw Error(ErrorKind::ParseError, "--claims expects CASE or CASE:K");
    }
    auto cl = s2_upper_series_claims(F, ex, k);
    auto r = verify_central_series_claim(G, cl, samples, seed);
    Json lv = Json::array();
    for (std::size_t i = 0; i < r.levels.size(); ++i) {
      const auto& L = r.levels[i];
      Json x{{"level", L.level},
             {"claim", cl[i].text},
             {"closed", L.closed},
             {"commutators_inside", L.commutators_inside},
             {"maximal", L.maximal},
             {"members_checked", L.members_checked},
             {"outsiders_checked", L.outsiders_checked}};
      if (!L.witness.empty()) x["witness"] = L.witness;
      lv.push_back(x);
    }
    rep["claims"] = Json{{"case", ex}, {"k", k}, {"samples", samples}, {"pass", r.pass}, {"levels", lv}};
    ok &= r.pass;
  }
  emit(c, rep);
  return ok ? kPass : kFail;
}

int cmd_thompson(const Common& c, const std::string& config) {
  auto rc = load_config_file(config);
  GroupSpec G = build_construction(rc.F, rc.params);
  SubgroupSet U = materialize(G, materialize_cap());
  auto t = thompson(G, U);
  Json rep = with_config("thompson", G);
  rep["thompson"] = thompson_json(G.field(), t);
  emit(c, rep);
  return t.order ? kPass : kFail;
}

int cmd_conjugate(const Common& c, const std::string& config, const std::string& mode) {
  auto rc = load_config_file(config);
  GroupSpec pre = build_construction(rc.F, rc.params);
  const FieldCtx& F = pre.field();
  auto sc = standard_conjugation(F, *pre.params());
  GroupSpec target = build_construction(rc.F, sc.target);
  GroupSpec conj = conjugate_spec(pre, sc.h);
  CheckMode m = mode_or(mode, F, 27, 100000);
  ElementWalk walk(target, m);
  std::uint64_t compared = 0, mismatches = 0;
  Json witness;
  while (auto g = walk.next()) {
    ++compared;
    GroupElem h = conj.elem_at(g->a, g->b, g->c);
    if (!(h == *g)) {
      if (!mismatches) witness = Json{{"target", gelem_json(F, *g)}, {"conjugate", gelem_json(F, h)}};
      ++mismatches;
    }
  }
  Json rep = report_header("conjugate", F);
  rep["config"] = params_to_json(F, *pre.params());
  rep["conjugator"] = gelem_json(F, sc.h);
  rep["target"] = params_to_json(F, *target.params());
  rep["seeds"] = Json{{"compare", m.seed}};
  rep["comparison"] = Json{{"mode", m.to_string()}, {"compared", compared}, {"mismatches", mismatches},
                           {"equal", mismatches == 0}};
  if (mismatches) rep["comparison"]["witness"] = witness;
  emit(c, rep);
  return mismatches ? kFail : kPass;
}

int cmd_table(const Common& c, const std::string& preset) {
  if (preset != "ncodd-p3l2") throw Error(ErrorKind::ParseError, "unknown preset '" + preset + "'");
  auto F = FieldCtx::parse("3^6");
  std::vector<TableResult> res;
  bool cap_hit = false, ok = true;
  for (const auto& row : ncodd_p3l2_rows(*F)) {
    res.push_back(run_table_row(F, row, gamma_cap()));
    cap_hit |= res.back().error.find("CapExceeded") != std::string::npos;
    ok &= res.back().matches() && res.back().in_range();
  }
  emit_text(c, table_csv(res));
  if (cap_hit) return kCap;
  return ok ? kPass : kFail;
}

int cmd_search(const Common& c, const std::string& field, const std::string& muB, const std::string& muC,
               std::uint64_t seed, std::uint64_t budget) {
  auto F = FieldCtx::parse(field);
  S4SearchOptions o;
  o.muB = elem_from_json(*F, Json::parse(muB));
  o.muC = elem_from_json(*F, Json::parse(muC));
  o.seed = seed;
  o.budget = budget;
  ConstructionParams P = search_s4_params(F, o);
  GroupSpec G = build_construction(F, P);
  Json rep = with_config("search-params", G);
  rep["seeds"] = Json{{"search", seed}};
  rep["search"] = Json{{"budget", budget}, {"found", true}};
  emit(c, rep);
  return kPass;
}

int exit_for(const Error& e) {
  switch (e.kind()) {
    case ErrorKind::CapExceeded:
    case ErrorKind::TooLarge:
      return kCap;
    case ErrorKind::SelfCheckFailed:
    case ErrorKind::NotFound:
    case ErrorKind::NotInModelForm:
      return kFail;
    default:
      return kUsage;
  }
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Point-regular groups on Payne-derived quadrangles"};
  app.require_subcommand(1);
  Common common;
  auto add_common = [&](CLI::App* s) {
    s->add_option("--out,-o", common.out, "output path (default stdout)");
    s->add_option("--workers,-j", common.workers, "worker threads")->check(CLI::PositiveNumber);
    s->add_flag("--timestamp", common.timestamp, "add a timestamp (and timings) to the report");
  };

  std::string field, config, mode, check, claims, preset = "ncodd-p3l2", muB = "1", muC = "1";
  bool payne = false, exhaustive = false, upper = false;
  std::uint64_t samples = 10000, seed = 1, lines = 1000, budget = 64;

  auto* quad = app.add_subcommand("quad", "build W(q) or its Payne derivation and check the axioms");
  quad->add_option("--field", field, "p^m or p^m/c0,...,cm")->required();
  quad->add_flag("--payne", payne, "derive at P = <(1,0,0,0)>");

  auto* build = app.add_subcommand("build", "build a model from a config");
  build->add_option("--config", config)->required();
  build->add_option("--check", check, "exhaustive | sample:n:seed");

  auto* chk = app.add_subcommand("check", "check the group law of a model");
  chk->add_option("--config", config)->required();
  auto* ex_flag = chk->add_flag("--exhaustive", exhaustive, "all pairs");
  chk->add_option("--mode", mode, "exhaustive | sample:n:seed")->excludes(ex_flag);

  auto* reg = app.add_subcommand("regular", "check point-regularity");
  reg->add_option("--config", config)->required();
  reg->add_option("--mode", mode, "exhaustive | sample:n:seed");
  reg->add_option("--lines", lines, "sampled line-preservation checks");

  auto* inv = app.add_subcommand("invariants", "exponent, center, class and Thompson subgroup");
  inv->add_option("--config", config)->required();
  inv->add_option("--samples", samples, "sampled elements for the exponent at q > 27");
  inv->add_option("--seed", seed);

  auto* ser = app.add_subcommand("series", "central series");
  ser->add_option("--config", config)->required();
  ser->add_flag("--upper", upper, "also compute the upper series exactly (q <= 27)");
  ser->add_option("--claims", claims, "check the S2 upper-series formulas: CASE or CASE:K");
  ser->add_option("--samples", samples, "samples per level for --claims");
  ser->add_option("--seed", seed);

  auto* thm = app.add_subcommand("thompson", "Thompson subgroup certificate");
  thm->add_option("--config", config)->required();

  auto* conj = app.add_subcommand("conjugate", "conjugate a pre-form into normal form and compare");
  conj->add_option("--config", config)->required();
  conj->add_option("--mode", mode, "exhaustive | sample:n:seed");

  auto* tab = app.add_subcommand("table", "reproduce a class table as CSV");
  tab->add_option("--preset", preset)->check(CLI::IsMember({"ncodd-p3l2"}));

  auto* srch = app.add_subcommand("search-params", "find S4 parameters");
  srch->add_option("--field", field)->required();
  srch->add_option("--muB", muB, "field element as JSON");
  srch->add_option("--muC", muC, "field element as JSON");
  srch->add_option("--seed", seed);
  srch->add_option("--budget", budget);

  for (auto* s : {quad, build, chk, reg, inv, ser, thm, conj, tab, srch}) add_common(s);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int r = app.exit(e);
    return r == 0 ? kPass : kUsage;
  }

  try {
    if (*quad) return cmd_quad(common, field, payne);
    if (*build) return cmd_build(common, config, check);
    if (*chk) return cmd_check(common, config, exhaustive, mode);
    if (*reg) return cmd_regular(common, config, mode, lines);
    if (*inv) return cmd_invariants(common, config, samples, seed);
    if (*ser) return cmd_series(common, config, upper, claims, samples, seed);
    if (*thm) return cmd_thompson(common, config);
    if (*conj) return cmd_conjugate(common, config, mode);
    if (*tab) return cmd_table(common, preset);
    if (*srch) return cmd_search(common, field, muB, muC, seed, budget);
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return exit_for(e);
  } catch (const nlohmann::json::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kUsage;
  }
  return kUsage;
}
