#include "kgb/report.hpp"

#include <algorithm>

#include "kgb/error.hpp"

namespace kgb {

namespace {

Json params_json(const Params& params) {
  Json out = Json::object();
  for (const auto& [k, v] : params) out[k] = v;
  return out;
}

Json property_json(const PropertyReport& r) {
  Json out;
  out["ok"] = r.ok;
  out["failing_level"] = r.failing_level;
  out["pair_i"] = r.pair_i;
  out["pair_j"] = r.pair_j;
  out["generated_rank"] = r.generated_rank;
  out["ideal_rank"] = r.ideal_rank;
  out["detail"] = r.detail;
  return out;
}

Json set_size_json(const ElementSet& s) { return static_cast<long long>(s.size()); }

}  // namespace

Json field_json(const Field& f) {
  Json out;
  out["p"] = f.p();
  out["k"] = f.k();
  out["name"] = f.name();
  return out;
}

Json group_json(const PcGroup& g) {
  const auto& pres = g.presentation();
  Json out;
  out["label"] = g.label();
  out["params"] = params_json(pres.params);
  out["p"] = g.p();
  out["order"] = g.order();
  out["generators"] = pres.names;
  out["relative_orders"] = pres.orders;
  out["abelian"] = g.is_abelian();
  out["powerful"] = g.is_powerful();
  out["center_order"] = set_size_json(g.center());
  out["derived_order"] = set_size_json(g.derived_subgroup());
  out["frattini_order"] = set_size_json(g.frattini());
  int exponent = 1;
  for (int x = 0; x < g.order(); ++x) exponent = std::max(exponent, g.element_order(x));
  out["exponent"] = exponent;
  return out;
}

Json jennings_json(const AlgebraContext& ctx) {
  const auto& jd = ctx.jennings;
  const auto& g = ctx.alg.group();
  Json out;
  out["nilpotency_index"] = ctx.filt.nilpotency_index();
  out["ideal_ranks"] = ctx.filt.ranks();
  Json dims = Json::array();
  for (int n = 1; n <= jd.length() + 1; ++n) {
    dims.push_back(static_cast<long long>(jd.dimension_subgroup(n).size()));
  }
  out["dimension_subgroup_orders"] = std::move(dims);
  out["series_agree"] = jd.series_agree();
  Json mult = Json::array();
  for (int i : jd.index_set()) mult.push_back({{"level", i}, {"multiplicity", jd.multiplicity(i)}});
  out["multiplicities"] = std::move(mult);
  Json reps = Json::array();
  for (const auto& r : jd.reps()) {
    reps.push_back({{"level", r.level}, {"index", r.index}, {"element", g.format(r.element)}});
  }
  out["representatives"] = std::move(reps);
  Json regular = Json::array();
  for (const auto& r : jd.regular()) regular.push_back({{"name", r.name}, {"weight", r.weight}});
  out["regular"] = std::move(regular);
  return out;
}

Json element_json(const AlgebraContext& ctx, const AlgebraElement& x) {
  return ctx.alg.format(x);
}

Json verdict_json(const AlgebraContext& ctx, const Verdict& v) {
  Json out;
  out["pass"] = v.pass;
  out["size"] = v.size;
  out["is_linear_basis"] = v.is_linear_basis;
  out["rank"] = v.rank;
  out["closure_ok"] = v.closure_ok;
  out["closure_violations"] = v.closure_violations;
  Json vs = Json::array();
  for (const auto& c : v.violations) {
    vs.push_back({{"i", c.i}, {"j", c.j}, {"product", element_json(ctx, c.product)}});
  }
  out["violations"] = std::move(vs);
  out["radical_ok"] = v.radical_ok;
  out["filtration_ok"] = v.filtration_ok;
  out["first_failing_level"] = v.first_failing_level;
  out["property1"] = property_json(v.property1);
  out["property2"] = property_json(v.property2);
  out["property3"] = property_json(v.property3);
  return out;
}

Json construction_json(const AlgebraContext& ctx, const ConstructionResult& r) {
  Json out;
  out["family"] = r.family;
  if (r.mu) {
    out["mu"] = static_cast<int>(*r.mu);
  } else {
    out["mu"] = nullptr;
  }
  out["ok"] = r.ok;
  out["verified"] = r.verified;
  out["failure"] = r.failure;
  out["distinct_nonzero"] = r.distinct_nonzero;
  if (r.verified) out["verdict"] = verdict_json(ctx, r.verdict);
  return out;
}

Json matrix_json(const LeadingMatrix& a) {
  Json out = Json::array();
  for (const auto& row : a) {
    Json r = Json::array();
    for (Scalar s : row) r.push_back(static_cast<int>(s));
    out.push_back(std::move(r));
  }
  return out;
}

Json obstruction_json(const ObstructionReport& r, bool include_tags) {
  Json out;
  out["group"] = r.group;
  out["field"] = r.field;
  out["degree"] = r.degree;
  out["n"] = r.n;
  out["matrices_examined"] = r.matrices_examined;
  out["expected_matrices"] = r.expected_matrices;
  out["survivor_count"] = r.survivor_count;
  Json surv = Json::array();
  for (const auto& a : r.survivors) surv.push_back(matrix_json(a));
  out["survivors"] = std::move(surv);
  out["verdict"] = r.verdict;
  Json tally = Json::object();
  for (const char* k : {"N1", "N4", "N3", "N2", "pass"}) {
    auto it = r.tally.find(k);
    tally[k] = it == r.tally.end() ? 0 : it->second;
  }
  out["tally"] = std::move(tally);
  if (include_tags) {
    Json tags = Json::array();
    for (Condition c : r.tags) tags.push_back(condition_name(c));
    out["tags"] = std::move(tags);
  }
  return out;
}

Json search_json(const AlgebraContext& ctx, const SearchReport& r) {
  Json out;
  out["group"] = r.group;
  out["field"] = r.field;
  out["outcome"] = r.outcome;
  out["nodes"] = r.nodes;
  out["budget"] = r.budget;
  out["prefilter"] = r.prefilter;
  out["leading_matrices"] = r.leading_matrices;
  if (r.leading) out["leading"] = matrix_json(*r.leading);
  if (r.basis) {
    Json b = Json::array();
    for (const auto& x : *r.basis) b.push_back(element_json(ctx, x));
    out["basis"] = std::move(b);
  }
  if (r.verdict) out["verdict"] = verdict_json(ctx, *r.verdict);
  return out;
}

std::vector<MatrixRow> existence_rows() {
  return {
      {"D8", {}, 2, 1, true},
      {"D16", {}, 2, 1, true},
      {"G3", {{"m", 4}}, 2, 1, true},
      {"G4", {{"m", 4}}, 2, 1, true},
      {"Q8", {}, 2, 2, true},
      {"G2", {{"m", 4}}, 2, 2, true},
      {"G5", {{"m", 4}}, 2, 1, true},
      {"G13", {{"m", 5}}, 2, 1, true},
      {"G14", {{"m", 5}}, 2, 1, true},
      {"G17", {{"m", 5}}, 2, 1, true},
      {"G18", {{"m", 4}}, 2, 1, true},
      {"G22", {{"m", 6}}, 2, 1, true},
      {"G23", {{"m", 6}}, 2, 1, true},
      {"G24", {{"m", 6}}, 2, 1, true},
      {"G25", {{"m", 5}}, 2, 1, true},
      {"Q8", {}, 2, 1, false},
      {"G2", {{"m", 4}}, 2, 1, false},
      {"Q16", {}, 2, 1, false},
      {"SD16", {}, 2, 1, false},
      {"M16", {}, 2, 1, false},
      {"G11", {{"m", 4}}, 2, 1, false},
      {"G12", {{"m", 5}}, 2, 1, false},
      {"G15", {{"m", 5}}, 2, 1, false},
      {"G16", {{"m", 5}}, 2, 1, false},
      {"G1", {{"p", 3}, {"m", 3}}, 3, 1, false},
      {"G7", {{"p", 3}, {"m", 4}}, 3, 1, false},
      {"H", {{"p", 3}, {"m", 4}, {"r", 2}}, 3, 1, false},
      {"G11odd", {}, 3, 1, false},
      {"M27", {}, 3, 1, false},
  };
}

namespace {

constexpr long long kMatrixSearchBudget = 100000000;

std::optional<Basis> searched_basis(const PcPresentation& pres, const Field& f, int workers) {
  const auto ctx = make_context(pres, f);
  if (ctx->alg.group().is_abelian()) return abelian_basis(*ctx).basis;
  const SearchReport r = full_search(*ctx, kMatrixSearchBudget, workers);
  return r.basis;
}

// G2/G3: a searched basis of the Q or D factor times the C2 basis.
std::optional<ConstructionResult> product_construction(const AlgebraContext& ctx,
                                                       const MatrixRow& row, int workers) {
  const int m = static_cast<int>(row.params.at("m"));
  const Field& f = ctx.alg.field();
  const PcPresentation left = parse_group_spec((row.group == "G2" ? "Q" : "D") +
                                               std::to_string(1 << (m - 1)));
  const PcPresentation right = parse_group_spec("C2");
  const auto lctx = make_context(left, f);
  const auto rctx = make_context(right, f);
  if (lctx->alg.dim() > 16) return std::nullopt;
  const auto b1 = searched_basis(left, f, workers);
  if (!b1) return std::nullopt;
  const Basis b2 = abelian_basis(*rctx).basis;
  ConstructionResult r;
  r.family = "product";
  r.basis = product_basis(ctx, *lctx, *b1, *rctx, b2);
  r.distinct_nonzero = static_cast<int>(r.basis.size());
  r.verdict = verify(ctx, r.basis);
  r.verified = true;
  r.ok = r.verdict.pass;
  if (!r.ok) r.failure = "candidate fails verification";
  return r;
}

Json brief(const ConstructionResult& r) {
  Json out;
  out["family"] = r.family;
  if (r.mu) {
    out["mu"] = static_cast<int>(*r.mu);
  } else {
    out["mu"] = nullptr;
  }
  out["ok"] = r.ok;
  out["failure"] = r.failure;
  return out;
}

}  // namespace

Json evaluate_row(const MatrixRow& row, int workers) {
  Json out;
  out["group"] = row.group;
  out["params"] = params_json(row.params);
  Field f = Field::make(row.p, row.k);
  out["field"] = f.name();
  out["expected"] = row.expected_fmb ? "FMB" : "no FMB";

  std::shared_ptr<const AlgebraContext> ctx;
  try {
    ctx = make_context(parse_group_spec(row.group, row.params), f);
  } catch (const Error& e) {
    out["label"] = nullptr;
    out["order"] = nullptr;
    out["observed"] = "error";
    out["method"] = "none";
    out["agrees"] = false;
    out["error"] = {{"code", std::string(error_code_name(e.code()))}, {"message", e.what()}};
    return out;
  }
  const PcGroup& g = ctx->alg.group();
  out["label"] = g.label();
  out["order"] = g.order();

  std::string observed = "undetermined";
  std::string method = "none";
  Json constructions = Json::array();
  auto note = [&](const ConstructionResult& r) {
    constructions.push_back(brief(r));
    if (r.ok && observed != "FMB") {
      observed = "FMB";
      method = r.family;
    }
  };
  const auto& pres = g.presentation();
  const std::string fam = family_of(pres);
  if (g.is_abelian()) note(abelian_basis(*ctx));
  if (fam == "G4" && g.order() == 16 && f.p() == 2) note(g4_basis(*ctx));
  if (f.p() == 2 && type_a_applicable(pres)) {
    for (const auto& r : sweep_mu(*ctx, "typeA").results) note(r);
  }
  if (f.p() == 2 && type_b_applicable(pres)) {
    for (const auto& r : sweep_mu(*ctx, "typeB").results) note(r);
  }
  if (fam == "G2" || fam == "G3") {
    if (auto r = product_construction(*ctx, row, workers)) note(*r);
  }
  out["constructions"] = std::move(constructions);

  if (observed != "FMB" && g.order() <= 16 && f.q() <= 4) {
    const SearchReport s = full_search(*ctx, kMatrixSearchBudget, workers);
    out["search"] = {{"outcome", s.outcome}, {"nodes", s.nodes}};
    if (s.outcome == "found") {
      observed = "FMB";
      method = "search";
    } else if (s.outcome == "exhausted") {
      observed = "no FMB";
      method = "search";
    }
  }
  if (observed == "undetermined" && !g.is_abelian()) {
    Json cert = Json::array();
    for (int t : {2, 3}) {
      try {
        const ObstructionReport r = certify(*ctx, t, workers);
        cert.push_back({{"degree", t}, {"verdict", r.verdict}, {"survivor_count", r.survivor_count}});
        if (r.verdict == "OBSTRUCTED") {
          observed = "no FMB";
          method = "certify(t=" + std::to_string(t) + ")";
          break;
        }
      } catch (const Error& e) {
        cert.push_back({{"degree", t}, {"error", std::string(error_code_name(e.code()))}});
        break;
      }
    }
    out["certify"] = std::move(cert);
  }
  out["observed"] = observed;
  out["method"] = method;
  out["agrees"] = observed == (row.expected_fmb ? "FMB" : "no FMB");
  return out;
}

Json existence_matrix(int workers) {
  Json rows = Json::array();
  int agree = 0;
  Json mismatches = Json::array();
  for (const auto& row : existence_rows()) {
    Json r = evaluate_row(row, workers);
    if (r["agrees"].get<bool>()) {
      ++agree;
    } else {
      mismatches.push_back(r["group"].get<std::string>() + " " + r["field"].get<std::string>() +
                           (r["label"].is_null() ? "" : " " + r["label"].get<std::string>()));
    }
    rows.push_back(std::move(r));
  }
  Json out;
  out["rows"] = std::move(rows);
  out["summary"] = {{"rows", static_cast<int>(existence_rows().size())},
                    {"agree", agree},
                    {"mismatches", std::move(mismatches)}};
  return out;
}

}  // namespace kgb
