#include "pgq/config.hpp"

#include <fstream>
#include <set>

#ifndef PGQ_VERSION
#define PGQ_VERSION "0.0.0"
#endif

namespace pgq {

namespace {

[[noreturn]] void parse_fail(const std::string& msg) { throw Error(ErrorKind::ParseError, msg); }

std::uint64_t get_u64(const Json& j, const char* key) {
  const Json& v = j.at(key);
  if (!v.is_number_unsigned() && !(v.is_number_integer() && v.get<long long>() >= 0))
    parse_fail(std::string("'") + key + "' must be a non-negative integer");
  return v.get<std::uint64_t>();
}

std::vector<FieldElem> elems_from_json(const FieldCtx& F, const Json& j, const char* key) {
  if (!j.is_array()) parse_fail(std::string("'") + key + "' must be an array of field elements");
  std::vector<FieldElem> out;
  for (const auto& x : j) out.push_back(elem_from_json(F, x));
  return out;
}

Json elems_to_json(const FieldCtx& F, const std::vector<FieldElem>& v) {
  Json a = Json::array();
  for (auto x : v) a.push_back(elem_to_json(F, x));
  return a;
}

}  // namespace

std::string_view library_version() { return PGQ_VERSION; }

FieldElem elem_from_json(const FieldCtx& F, const Json& j) {
  if (j.is_number_integer()) return F.from_int(j.get<long long>());
  if (!j.is_array()) parse_fail("field element must be an integer or a coefficient array, got " + j.dump());
  if (int(j.size()) > F.m()) parse_fail("coefficient array " + j.dump() + " longer than the degree");
  std::vector<int> c;
  for (const auto& x : j) {
    if (!x.is_number_integer()) parse_fail("coefficient must be an integer, got " + x.dump());
    long long v = x.get<long long>() % F.p();
    c.push_back(int(v < 0 ? v + F.p() : v));
  }
  c.resize(std::size_t(F.m()), 0);
  return F.from_coeffs(c);
}

Json elem_to_json(const FieldCtx& F, FieldElem x) { return Json(F.coeffs(x)); }

Json field_to_json(const FieldCtx& F) {
  return Json{{"spec", F.spec_string()}, {"p", F.p()}, {"m", F.m()}, {"q", F.q()}, {"modulus", F.modulus()}};
}

ResolvedConfig parse_config(const Json& in) {
  if (!in.is_object()) parse_fail("config must be a JSON object");
  // a report embeds its resolved config
  const Json& j = in.contains("schema") && in.contains("config") ? in["config"] : in;
  if (!j.is_object()) parse_fail("config must be a JSON object");
  static const std::set<std::string> known{"variant", "field",  "S1",         "muB",         "muC",
                                           "u",       "tC",     "alpha",      "nuC",         "omega",
                                           "mu",      "s0",     "lambda",     "f",           "raw_T",
                                           "w",       "tuple_index",          "search_seed", "search_budget",
                                           "self_check_samples",              "self_check_seed", "u_form"};
  for (const auto& [k, v] : j.items())
    if (!known.count(k)) parse_fail("unknown config key '" + k + "'");
  if (!j.contains("field") || !j["field"].is_string()) parse_fail("config needs a string 'field'");
  if (!j.contains("variant") || !j["variant"].is_string()) parse_fail("config needs a string 'variant'");

  ResolvedConfig rc;
  rc.F = FieldCtx::parse(j["field"].get<std::string>());
  const FieldCtx& F = *rc.F;
  ConstructionParams& P = rc.params;
  P.variant = parse_variant(j["variant"].get<std::string>());

  auto opt = [&](const char* key, std::optional<FieldElem>& dst) {
    if (j.contains(key)) dst = elem_from_json(F, j[key]);
  };
  if (j.contains("S1")) {
    P.S1.s = elems_from_json(F, j["S1"], "S1");
    if (int(P.S1.s.size()) > F.m()) parse_fail("S1 has more than m coefficients");
    P.S1 = lp_normalize(F, P.S1);
  }
  opt("muB", P.muB);
  opt("muC", P.muC);
  opt("u", P.u);
  opt("tC", P.tC);
  opt("alpha", P.alpha);
  opt("nuC", P.nuC);
  opt("omega", P.omega);
  opt("mu", P.mu);
  opt("s0", P.s0);
  if (j.contains("lambda")) {
    if (!j["lambda"].is_number_integer()) parse_fail("'lambda' must be an integer");
    P.lambda = j["lambda"].get<int>();
  }
  if (j.contains("f")) P.f = elems_from_json(F, j["f"], "f");
  if (j.contains("raw_T")) P.raw_T = elems_from_json(F, j["raw_T"], "raw_T");
  if (j.contains("self_check_samples")) P.self_check_samples = get_u64(j, "self_check_samples");
  if (j.contains("self_check_seed")) P.self_check_seed = get_u64(j, "self_check_seed");

  if (P.variant == Variant::PreS2 && !P.tC && j.contains("w")) {
    if (!P.muC) throw Error(ErrorKind::InvalidParams, "PreS2 with 'w' needs muC");
    ConstructionParams made = make_pre_s2_params(F, P.S1, *P.muC, elem_from_json(F, j["w"]));
    made.self_check_samples = P.self_check_samples;
    made.self_check_seed = P.self_check_seed;
    P = made;
  }
  if (P.variant == Variant::C2even && P.f.empty()) {
    if (!P.omega || !P.mu) throw Error(ErrorKind::InvalidParams, "C2even needs omega and mu");
    std::uint64_t idx = j.contains("tuple_index") ? get_u64(j, "tuple_index") : 0;
    auto sols = solve_construction_tuple(rc.F, TupleKind::EvenF, {F.zero(), F.zero(), F.zero(), *P.omega, *P.mu});
    std::optional<ConstructionTuple> t;
    for (std::uint64_t i = 0; i <= idx; ++i)
      if (!(t = sols.next())) throw Error(ErrorKind::InvalidParams, "tuple_index beyond the solution count");
    P.f = t->f;
    if (!P.s0) P.s0 = t->s[0];
  }
  if (P.variant == Variant::S4 && !P.u) {
    S4SearchOptions o;
    if (P.muB) o.muB = *P.muB;
    if (P.muC) o.muC = *P.muC;
    if (j.contains("search_seed")) o.seed = get_u64(j, "search_seed");
    if (j.contains("search_budget")) o.budget = get_u64(j, "search_budget");
    const bool have_s1 = j.contains("S1");
    LinPoly pref = P.S1;
    ConstructionParams made = search_s4_params(rc.F, o, have_s1 ? &pref : nullptr);
    made.self_check_samples = P.self_check_samples;
    made.self_check_seed = P.self_check_seed;
    P = made;
  }
  return rc;
}

ResolvedConfig load_config_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) parse_fail("cannot open config '" + path + "'");
  Json j;
  try {
    j = Json::parse(in);
  } catch (const nlohmann::json::exception& e) {
    parse_fail("config '" + path + "' is not valid JSON: " + e.what());
  }
  return parse_config(j);
}

Json params_to_json(const FieldCtx& F, const ConstructionParams& P) {
  Json j;
  j["variant"] = std::string(variant_name(P.variant));
  j["field"] = F.spec_string();
  if (P.variant != Variant::Raw) j["S1"] = elems_to_json(F, lp_normalize(F, P.S1).s);
  auto put = [&](const char* key, const std::optional<FieldElem>& v) {
    if (v) j[key] = elem_to_json(F, *v);
  };
  put("muB", P.muB);
  put("muC", P.muC);
  put("u", P.u);
  put("tC", P.tC);
  put("alpha", P.alpha);
  put("nuC", P.nuC);
  put("omega", P.omega);
  put("mu", P.mu);
  put("s0", P.s0);
  if (P.variant == Variant::S4 || P.variant == Variant::PreS4) j["lambda"] = P.lambda;
  if (!P.f.empty()) j["f"] = elems_to_json(F, P.f);
  if (!P.raw_T.empty()) j["raw_T"] = elems_to_json(F, P.raw_T);
  j["self_check_samples"] = P.self_check_samples;
  j["self_check_seed"] = P.self_check_seed;
  if (!P.u_form.empty()) j["u_form"] = P.u_form;
  return j;
}

Json report_header(const std::string& command, const FieldCtx& F) {
  Json j;
  j["schema"] = kReportSchema;
  j["version"] = std::string(library_version());
  j["command"] = command;
  j["field"] = field_to_json(F);
  return j;
}

}  // namespace pgq
