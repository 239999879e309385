#pragma once

#include <string>

#include "json.hpp"

#include "kgb/construct.hpp"
#include "kgb/obstruct.hpp"

namespace kgb {

using Json = nlohmann::ordered_json;

inline constexpr const char* kSchema = "kgbasis-report/1";
inline constexpr const char* kVersion = "0.1.0";

Json field_json(const Field& f);
Json group_json(const PcGroup& g);
Json jennings_json(const AlgebraContext& ctx);
Json element_json(const AlgebraContext& ctx, const AlgebraElement& x);
Json verdict_json(const AlgebraContext& ctx, const Verdict& v);
Json construction_json(const AlgebraContext& ctx, const ConstructionResult& r);
Json matrix_json(const LeadingMatrix& a);
/// With include_tags the per-matrix condition tags are listed in index order.
Json obstruction_json(const ObstructionReport& r, bool include_tags = true);
Json search_json(const AlgebraContext& ctx, const SearchReport& r);

/// One row of the existence table: a group, a field and the expected answer.
struct MatrixRow {
  std::string group;
  Params params;
  int p = 2;
  int k = 1;
  bool expected_fmb = false;
};

/// Rows at the smallest parameter of each family.
std::vector<MatrixRow> existence_rows();

/// Settles one row: constructions first, then full_search for |G| <= 16,
/// then certify at degree 2 and 3. Observed verdicts are "FMB", "no FMB" or
/// "undetermined".
Json evaluate_row(const MatrixRow& row, int workers);

/// {"rows": [...], "summary": {...}}; independent of the worker count.
Json existence_matrix(int workers);

}  // namespace kgb
