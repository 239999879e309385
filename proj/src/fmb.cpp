#include "kgb/fmb.hpp"

#include <algorithm>
#include <unordered_map>

#include "json.hpp"

#include "kgb/error.hpp"

namespace kgb {

namespace {

constexpr std::size_t kMaxListedViolations = 16;

std::string key_of(const AlgebraElement& x) {
  return std::string(reinterpret_cast<const char*>(x.data()), x.size());
}

std::unordered_map<std::string, int> index_basis(const Basis& basis) {
  std::unordered_map<std::string, int> idx;
  for (int i = 0; i < static_cast<int>(basis.size()); ++i) idx.emplace(key_of(basis[i]), i);
  return idx;
}

PropertyReport property1(const AlgebraContext& ctx, const Basis& basis) {
  PropertyReport r;
  const int s = ctx.filt.nilpotency_index();
  for (int n = 1; n < s; ++n) {
    Subspace span(ctx.alg.field(), ctx.alg.dim());
    for (const auto& b : basis) {
      if (ctx.filt.contains(b, n)) span.add(b);
    }
    if (span.rank() != ctx.filt.rank(n)) {
      r.ok = false;
      r.failing_level = n;
      r.detail = "B meet I^" + std::to_string(n) + " has rank " + std::to_string(span.rank()) +
                 ", I^" + std::to_string(n) + " has rank " + std::to_string(ctx.filt.rank(n));
      return r;
    }
  }
  return r;
}

// u ≡ v mod I^k with u, v outside I^k forces u = v. A violation exists iff
// deg(u - v) > max(deg u, deg v).
PropertyReport property2(const AlgebraContext& ctx, const Basis& basis) {
  PropertyReport r;
  std::vector<int> deg(basis.size());
  for (std::size_t i = 0; i < basis.size(); ++i) deg[i] = ctx.filt.degree(basis[i]);
  for (std::size_t i = 0; i < basis.size(); ++i) {
    for (std::size_t j = i + 1; j < basis.size(); ++j) {
      if (deg[i] != deg[j] || basis[i] == basis[j]) continue;
      const int k = ctx.filt.degree(ctx.alg.sub(basis[i], basis[j]));
      if (k > deg[i]) {
        r.ok = false;
        r.pair_i = static_cast<int>(i);
        r.pair_j = static_cast<int>(j);
        r.failing_level = k;
        r.detail = "elements " + std::to_string(i) + " and " + std::to_string(j) +
                   " agree modulo I^" + std::to_string(k);
        return r;
      }
    }
  }
  return r;
}

PropertyReport property3(const AlgebraContext& ctx, const Basis& basis) {
  PropertyReport r;
  const auto& alg = ctx.alg;
  r.ideal_rank = ctx.filt.rank(1);
  std::vector<AlgebraElement> gens;
  for (const auto& b : basis) {
    if (alg.augmentation(b) != 0) continue;
    if (!ctx.filt.contains(b, 2)) gens.push_back(b);
  }
  Subspace span(alg.field(), alg.dim());
  std::vector<AlgebraElement> frontier;
  for (const auto& g : gens) {
    if (span.add(g)) frontier.push_back(g);
  }
  while (!frontier.empty()) {
    std::vector<AlgebraElement> next;
    for (const auto& x : frontier) {
      for (const auto& g : gens) {
        AlgebraElement y = alg.mul(x, g);
        if (span.add(y)) next.push_back(std::move(y));
      }
    }
    frontier = std::move(next);
  }
  r.generated_rank = span.rank();
  if (r.generated_rank != r.ideal_rank) {
    r.ok = false;
    r.detail = "B \\ I^2 generates a subalgebra of rank " + std::to_string(r.generated_rank);
  }
  return r;
}

}  // namespace

Basis canonical_basis(const AlgebraContext& ctx, Basis basis) {
  for (const auto& b : basis) ctx.alg.check(b);
  const int n = ctx.alg.dim();
  if (static_cast<int>(basis.size()) == n - 1 &&
      std::find(basis.begin(), basis.end(), ctx.alg.one()) == basis.end()) {
    basis.insert(basis.begin(), ctx.alg.one());
  }
  if (static_cast<int>(basis.size()) != n) {
    throw Error(ErrorCode::kInvalidArgument, "basis has " + std::to_string(basis.size()) +
                                                 " elements, expected " + std::to_string(n));
  }
  return basis;
}

Verdict verify(const AlgebraContext& ctx, Basis basis) {
  basis = canonical_basis(ctx, std::move(basis));
  const auto& alg = ctx.alg;
  Verdict v;
  v.size = static_cast<int>(basis.size());
  v.rank = rank_of(alg.field(), basis, alg.dim());
  v.is_linear_basis = v.rank == alg.dim();

  const auto idx = index_basis(basis);
  for (int i = 0; i < v.size; ++i) {
    for (int j = 0; j < v.size; ++j) {
      AlgebraElement prod = alg.mul(basis[i], basis[j]);
      if (is_zero(prod) || idx.count(key_of(prod))) continue;
      ++v.closure_violations;
      if (v.violations.size() < kMaxListedViolations) v.violations.push_back({i, j, std::move(prod)});
    }
  }
  v.closure_ok = v.closure_violations == 0;

  {
    Subspace span(alg.field(), alg.dim());
    for (const auto& b : basis) {
      if (alg.augmentation(b) == 0) span.add(b);
    }
    v.radical_ok = span.rank() == ctx.filt.rank(1);
  }
  v.property1 = property1(ctx, basis);
  v.filtration_ok = v.property1.ok;
  v.first_failing_level = v.property1.failing_level;
  v.property2 = property2(ctx, basis);
  v.property3 = property3(ctx, basis);
  v.pass = v.is_linear_basis && v.closure_ok && v.radical_ok && v.filtration_ok;
  return v;
}

std::vector<std::vector<int>> closure_table(const AlgebraContext& ctx, const Basis& basis) {
  const auto idx = index_basis(basis);
  const int n = static_cast<int>(basis.size());
  std::vector<std::vector<int>> table(n, std::vector<int>(n, -1));
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) {
      AlgebraElement prod = ctx.alg.mul(basis[i], basis[j]);
      if (is_zero(prod)) continue;
      auto it = idx.find(key_of(prod));
      if (it == idx.end()) {
        throw Error(ErrorCode::kInvalidArgument, "product of elements " + std::to_string(i) +
                                                     " and " + std::to_string(j) +
                                                     " is not in the basis");
      }
      table[i][j] = it->second;
    }
  }
  return table;
}

PropertyReport check_property(const AlgebraContext& ctx, const Basis& basis, int which) {
  const Basis b = canonical_basis(ctx, basis);
  switch (which) {
    case 1: return property1(ctx, b);
    case 2: return property2(ctx, b);
    case 3: return property3(ctx, b);
  }
  throw Error(ErrorCode::kInvalidArgument, "property must be 1, 2 or 3");
}

std::string write_basis_json(const AlgebraContext& ctx, const BasisFile& file) {
  using nlohmann::ordered_json;
  const PcGroup& g = ctx.alg.group();
  ordered_json doc;
  doc["group"] = {{"name", file.group}, {"params", file.params}, {"label", g.label()},
                  {"generators", g.presentation().names}, {"order", g.order()}};
  doc["field"] = {{"p", ctx.alg.field().p()}, {"k", ctx.alg.field().k()}};
  ordered_json elems = ordered_json::array();
  for (const auto& x : file.elements) {
    ordered_json terms = ordered_json::array();
    for (int i = 0; i < static_cast<int>(x.size()); ++i) {
      if (x[i] != 0) terms.push_back({g.exponents(i), static_cast<int>(x[i])});
    }
    elems.push_back(std::move(terms));
  }
  doc["elements"] = std::move(elems);
  return doc.dump(1) + "\n";
}

BasisFile read_basis_json(const AlgebraContext& ctx, const std::string& text) {
  using nlohmann::json;
  const PcGroup& g = ctx.alg.group();
  const Field& f = ctx.alg.field();
  BasisFile out;
  try {
    const json doc = json::parse(text);
    const auto& grp = doc.at("group");
    out.group = grp.at("name").get<std::string>();
    if (grp.contains("params")) out.params = grp.at("params").get<Params>();
    const auto& fld = doc.at("field");
    out.p = fld.at("p").get<int>();
    out.k = fld.value("k", 1);
    if (grp.contains("order") && grp.at("order").get<int>() != g.order()) {
      throw Error(ErrorCode::kMismatchedContext, "basis file group order differs");
    }
    if (out.p != f.p() || out.k != f.k()) {
      throw Error(ErrorCode::kMismatchedContext, "basis file field differs");
    }
    for (const auto& terms : doc.at("elements")) {
      AlgebraElement x = ctx.alg.zero();
      for (const auto& term : terms) {
        const auto exps = term.at(0).get<std::vector<int>>();
        const int s = term.at(1).get<int>();
        if (static_cast<int>(exps.size()) != g.rank()) {
          throw Error(ErrorCode::kMalformedFile, "exponent tuple has the wrong length");
        }
        for (int i = 0; i < g.rank(); ++i) {
          if (exps[i] < 0 || exps[i] >= g.presentation().orders[i]) {
            throw Error(ErrorCode::kMalformedFile, "exponent out of range");
          }
        }
        if (s < 0 || s >= f.q()) throw Error(ErrorCode::kMalformedFile, "scalar out of range");
        const int idx = g.from_exponents(exps);
        x[idx] = f.add(x[idx], static_cast<Scalar>(s));
      }
      out.elements.push_back(std::move(x));
    }
  } catch (const json::exception& e) {
    throw Error(ErrorCode::kMalformedFile, std::string("basis file: ") + e.what());
  }
  return out;
}

}  // namespace kgb
