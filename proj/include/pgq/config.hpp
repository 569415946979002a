// JSON construction configs and report headers.
#pragma once

#include <cstdint>
#include <string>

#include <json.hpp>

#include "pgq/constructions.hpp"

namespace pgq {

using Json = nlohmann::ordered_json;

inline constexpr int kReportSchema = 1;
std::string_view library_version();

// Field elements are coefficient arrays [c0, c1, ...] (constant first, zero-padded) or a
// plain integer for a prime-field value.
FieldElem elem_from_json(const FieldCtx& F, const Json& j);
Json elem_to_json(const FieldCtx& F, FieldElem x);
Json field_to_json(const FieldCtx& F);

struct ResolvedConfig {
  FieldPtr F;
  ConstructionParams params;
};

// Keys: variant, field, S1, muB, muC, u, tC, alpha, nuC, omega, mu, s0, lambda, f, raw_T,
// self_check_samples, self_check_seed. Conveniences:
//   PreS2 without tC: "w" selects make_pre_s2_params.
//   C2even without f: "tuple_index" (default 0) picks an f-tuple from the solver, s0 defaults to 0.
//   S4 without u: "search_seed"/"search_budget" run the parameter search.
// Unknown keys are rejected. A report is accepted in place of a config (its "config" member is used).
// Throws ParseError or InvalidParams.
ResolvedConfig parse_config(const Json& j);
ResolvedConfig load_config_file(const std::string& path);

// Every parameter the builder reads, in canonical form; parse_config(params_to_json(..)) rebuilds it.
Json params_to_json(const FieldCtx& F, const ConstructionParams& P);

// {"schema", "version", "command", "field", ...}; the caller adds results.
Json report_header(const std::string& command, const FieldCtx& F);

}  // namespace pgq
