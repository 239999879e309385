// Acceptance run: one PASS/FAIL line per criterion, details indented below.
//
//   kgbasis_acceptance [--only N,...] [--known-failures N,...] [--workers W]
//
// Exit status is 0 when the set of failing criteria equals the known set
// (empty by default).

#include <chrono>
#include <functional>
#include <iostream>
#include <random>
#include <set>
#include <sstream>

#include "CLI11.hpp"

#include "kgb/catalog.hpp"
#include "kgb/construct.hpp"
#include "kgb/error.hpp"
#include "kgb/obstruct.hpp"
#include "kgb/report.hpp"
#include "oracle.hpp"

using namespace kgb;

namespace {

struct Outcome {
  bool pass = true;
  std::vector<std::string> details;

  void fail(const std::string& why) {
    pass = false;
    details.push_back("FAIL " + why);
  }
  void note(const std::string& what) { details.push_back(what); }
};

struct Item {
  std::string name;
  Params params;
};

// Catalog families at every parameter with |G| <= 64.
std::vector<Item> catalog_upto_64() {
  std::vector<Item> out;
  for (int n = 1; n <= 6; ++n) out.push_back({"C", {{"p", 2}, {"n", n}}});
  for (int n = 1; n <= 3; ++n) out.push_back({"C", {{"p", 3}, {"n", n}}});
  for (int p : {5, 7}) {
    for (int n = 1; n <= 2; ++n) out.push_back({"C", {{"p", p}, {"n", n}}});
  }
  for (int n = 3; n <= 6; ++n) {
    out.push_back({"D", {{"n", n}}});
    out.push_back({"Q", {{"n", n}}});
  }
  for (int n = 4; n <= 6; ++n) {
    out.push_back({"SD", {{"n", n}}});
    out.push_back({"M", {{"p", 2}, {"n", n}}});
  }
  out.push_back({"M", {{"p", 3}, {"n", 3}}});
  out.push_back({"G1", {{"p", 3}, {"m", 3}}});
  for (const char* f : {"G2", "G3", "G4", "G5", "G18"}) {
    for (int m = 4; m <= 6; ++m) out.push_back({f, {{"m", m}}});
  }
  for (int m = 4; m <= 5; ++m) out.push_back({"G11", {{"m", m}}});
  for (const char* f : {"G12", "G13", "G14", "G15", "G16", "G17", "G25"}) {
    for (int m = 5; m <= 6; ++m) out.push_back({f, {{"m", m}}});
  }
  for (const char* f : {"G22", "G23", "G24"}) out.push_back({f, {{"m", 6}}});
  return out;
}

std::string label_of(const Item& it) {
  std::string s = it.name + "(";
  bool first = true;
  for (const auto& [k, v] : it.params) {
    s += (first ? "" : ",") + k + "=" + std::to_string(v);
    first = false;
  }
  return s + ")";
}

// Builds the context, or reports an inconsistent presentation.
std::shared_ptr<const AlgebraContext> try_context(const Item& it, int k, Outcome& out,
                                                  bool record_skip = true) {
  try {
    const PcPresentation pres = catalog(it.name, it.params);
    return make_context(pres, Field::make(pres.p, k));
  } catch (const Error& e) {
    if (e.code() != ErrorCode::kInconsistentPresentation) throw;
    if (record_skip) out.note("skipped " + label_of(it) + ": " + e.what());
    return nullptr;
  }
}

std::shared_ptr<const AlgebraContext> context_of(const std::string& spec, int p, int k,
                                                   const Params& params = {}) {
  return make_context(parse_group_spec(spec, params), Field::make(p, k));
}

Outcome criterion1() {
  Outcome out;
  int groups = 0;
  for (const auto& it : catalog_upto_64()) {
    const auto ctx = try_context(it, 1, out);
    if (!ctx) continue;
    ++groups;
    const std::string lbl = ctx->group->label();
    if (!ctx->jennings.series_agree()) out.fail(lbl + ": dimension and Jennings series differ");
    const oracle::Gf f(ctx->group->p(), 1);
    const auto powers = oracle::ideal_powers(f, *ctx->group);
    const auto brute = oracle::ranks(f, powers);
    for (int n = 1; n <= static_cast<int>(brute.size()) + 1; ++n) {
      const int expected = n <= static_cast<int>(brute.size()) ? brute[n - 1] : 0;
      const int regular = static_cast<int>(ctx->jennings.regular_basis(n).size());
      if (regular != expected || ctx->filt.rank(n) != expected) {
        out.fail(lbl + ": rank of I^" + std::to_string(n) + " is " + std::to_string(expected) +
                 ", regular elements give " + std::to_string(regular));
        break;
      }
    }
    for (int n = 1; n <= static_cast<int>(powers.size()); ++n) {
      std::vector<int> members;
      for (int g = 0; g < ctx->group->order(); ++g) {
        if (oracle::in_span(f, powers[n - 1], oracle::minus_one(f, *ctx->group, g))) {
          members.push_back(g);
        }
      }
      if (members != ctx->jennings.jennings_subgroup(n)) {
        out.fail(lbl + ": D_" + std::to_string(n) + " by membership differs from M_" +
                 std::to_string(n));
        break;
      }
    }
  }
  out.note(std::to_string(groups) + " groups checked");
  return out;
}

bool identity_holds(const GroupAlgebra& a, int x, int y) {
  const auto& g = a.group();
  const auto X = a.minus_one(x), Y = a.minus_one(y), Z = a.minus_one(g.commutator(y, x));
  const auto XY = a.mul(X, Y);
  return a.mul(Y, X) == a.add(a.add(a.mul(a.add(a.add(XY, X), Y), Z), XY), Z);
}

Outcome criterion2() {
  Outcome out;
  std::mt19937 rng(20261016);
  long long pairs = 0;
  for (const auto& it : catalog_upto_64()) {
    const auto ctx = try_context(it, 1, out, false);
    if (!ctx) continue;
    const auto& g = *ctx->group;
    const auto& a = ctx->alg;
    const std::string lbl = g.label();
    bool ok = true;
    if (g.order() <= 32) {
      for (int x = 0; x < g.order() && ok; ++x) {
        for (int y = 0; y < g.order() && ok; ++y) {
          ok = identity_holds(a, x, y);
          ++pairs;
        }
      }
    } else {
      std::uniform_int_distribution<int> d(0, g.order() - 1);
      for (int t = 0; t < 1000 && ok; ++t) {
        ok = identity_holds(a, d(rng), d(rng));
        ++pairs;
      }
    }
    if (!ok) out.fail(lbl + ": commutator identity");
    // (u_j - 1)(u_i - 1) - (u_i - 1)(u_j - 1) - (z_ji - 1) in I^3
    for (int i = 0; i < g.rank(); ++i) {
      for (int j = i + 1; j < g.rank(); ++j) {
        const int ui = g.generator(i), uj = g.generator(j);
        const auto d = a.sub(a.sub(a.mul(a.minus_one(uj), a.minus_one(ui)),
                                   a.mul(a.minus_one(ui), a.minus_one(uj))),
                             a.minus_one(g.commutator(uj, ui)));
        if (!ctx->filt.contains(d, 3)) {
          out.fail(lbl + ": swap congruence for generators " + std::to_string(i) + "," +
                   std::to_string(j));
        }
      }
    }
  }
  out.note(std::to_string(pairs) + " pairs checked");
  for (const char* fam : {"G13", "G14"}) {
    for (int m : {5, 6}) {
      const auto ctx = context_of(fam, 2, 1, {{"m", m}});
      const auto& a = ctx->alg;
      const auto& pres = ctx->group->presentation();
      auto u = [&](const char* n) {
        return a.minus_one(ctx->group->generator(pres.generator_index(n)));
      };
      const auto A = u("a"), C = u("c"), D = u("d");
      const auto d = a.sub(a.mul(C, A), a.add(a.add(a.mul(A, C), a.mul(A, A)), D));
      const bool ok = ctx->filt.contains(d, 3);
      out.note(ctx->group->label() + " (1+c)(1+a) congruence: " + (ok ? "holds" : "fails"));
      if (!ok) out.fail(ctx->group->label() + ": (1+c)(1+a) congruence");
    }
  }
  return out;
}

// Abelian p-groups of order p^n, as lists of cyclic factor orders.
void partitions(int n, int max, std::vector<int>& cur, std::vector<std::vector<int>>& out) {
  if (n == 0) {
    out.push_back(cur);
    return;
  }
  for (int k = std::min(n, max); k >= 1; --k) {
    cur.push_back(k);
    partitions(n - k, k, cur, out);
    cur.pop_back();
  }
}

std::string abelian_spec(int p, const std::vector<int>& parts) {
  std::string s;
  for (int e : parts) {
    long long o = 1;
    for (int i = 0; i < e; ++i) o *= p;
    s += (s.empty() ? "C" : "xC") + std::to_string(o);
  }
  return s;
}

Outcome criterion3() {
  Outcome out;
  int abelian = 0;
  for (auto [p, top] : {std::pair{2, 5}, {3, 3}}) {
    for (int n = 1; n <= top; ++n) {
      std::vector<std::vector<int>> ps;
      std::vector<int> cur;
      partitions(n, n, cur, ps);
      for (const auto& parts : ps) {
        const std::string spec = abelian_spec(p, parts);
        const auto r = abelian_basis(*context_of(spec, p, 1));
        ++abelian;
        if (!r.ok) out.fail("abelian " + spec + ": " + r.failure);
      }
    }
  }
  out.note(std::to_string(abelian) + " abelian groups");

  const auto g4 = g4_basis(*context_of("G4", 2, 1, {{"m", 4}}));
  if (g4.ok) {
    out.note("G4(m=4) basis verifies");
  } else {
    out.fail("G4(m=4) basis: " + g4.failure);
  }

  auto sweep = [&](const std::string& family, const std::string& fam, int m) {
    try {
      const auto ctx = context_of(fam, 2, 1, {{"m", m}});
      const MuSweep sw = sweep_mu(*ctx, family);
      if (sw.passing.empty()) {
        out.fail(family + " " + ctx->group->label() + ": no mu verifies (" +
                 sw.results.front().failure + ")");
      } else {
        out.note(family + " " + ctx->group->label() + " verifies");
      }
    } catch (const Error& e) {
      out.fail(family + " " + fam + "(m=" + std::to_string(m) + "): " + e.what());
    }
  };
  for (auto [fam, m] : {std::pair{"G5", 4}, {"G17", 5}, {"G22", 6}, {"G25", 5}}) {
    sweep("typeA", fam, m);
  }
  for (auto [fam, m] :
       {std::pair{"G18", 4}, {"G13", 5}, {"G14", 5}, {"G23", 6}, {"G24", 6}, {"G25", 6}}) {
    sweep("typeB", fam, m);
  }
  {
    // reported only: G18 is not realizable at m = 4
    const auto ctx = context_of("G18", 2, 1, {{"m", 5}});
    const MuSweep sw = sweep_mu(*ctx, "typeB");
    out.note("info: typeB " + ctx->group->label() +
             (sw.passing.empty() ? " does not verify (" + sw.results.front().failure + ")"
                                 : " verifies"));
  }

  for (auto [left_spec, k] : {std::pair{"D8", 1}, {"Q8", 2}}) {
    const auto left = context_of(left_spec, 2, k);
    const auto right = context_of("C2", 2, k);
    const auto prod = context_of(std::string(left_spec) + "xC2", 2, k);
    const SearchReport s = full_search(*left, 100000000);
    if (!s.basis) {
      out.fail(std::string("no basis found for ") + left_spec);
      continue;
    }
    const Basis b = product_basis(*prod, *left, *s.basis, *right, abelian_basis(*right).basis);
    const bool ok = verify(*prod, b).pass;
    const std::string what = std::string(left_spec) + "xC2 over " + prod->alg.field().name();
    if (ok) {
      out.note("product " + what + " verifies");
    } else {
      out.fail("product " + what);
    }
  }
  return out;
}

void expect_verdict(Outcome& out, const AlgebraContext& ctx, int t, const std::string& want,
                    int workers) {
  const ObstructionReport r = certify(ctx, t, workers);
  std::ostringstream s;
  s << r.group << " " << r.field << " t=" << t << ": " << r.verdict << " (" << r.survivor_count
    << " of " << r.matrices_examined << " survive)";
  if (r.verdict == want) {
    out.note(s.str());
  } else {
    out.fail(s.str());
  }
}

Outcome criterion4(int workers) {
  Outcome out;
  int powerful = 0;
  for (const auto& it : catalog_upto_64()) {
    const auto ctx = try_context(it, 1, out, false);
    if (!ctx || ctx->group->order() > 32) continue;
    const auto& g = *ctx->group;
    if (g.is_abelian() || !g.is_powerful()) continue;
    ++powerful;
    expect_verdict(out, *ctx, 2, "OBSTRUCTED", workers);
  }
  if (powerful == 0) out.fail("no nonabelian powerful catalog groups found");
  expect_verdict(out, *context_of("G1", 3, 1, {{"p", 3}, {"m", 3}}), 3, "OBSTRUCTED", workers);
  expect_verdict(out, *context_of("G7", 3, 1, {{"p", 3}, {"m", 4}}), 3, "OBSTRUCTED", workers);
  for (auto [fam, m] : {std::pair{"G11", 4}, {"G12", 5}, {"G15", 5}, {"G16", 5}}) {
    expect_verdict(out, *context_of(fam, 2, 1, {{"m", m}}), 2, "OBSTRUCTED", workers);
  }
  return out;
}

void expect_search(Outcome& out, const std::string& spec, int k, const std::string& want,
                   int workers) {
  const auto ctx = context_of(spec, 2, k);
  const SearchReport r = full_search(*ctx, 100000000, workers);
  std::ostringstream s;
  s << spec << " " << r.field << ": " << r.outcome << " after " << r.nodes << " nodes";
  bool ok = r.outcome == want;
  if (r.basis) {
    const bool verified = verify(*ctx, *r.basis).pass;
    s << (verified ? ", basis verifies" : ", basis does not verify");
    ok = ok && verified;
  }
  if (ok) {
    out.note(s.str());
  } else {
    out.fail(s.str());
  }
}

Outcome criterion5(int workers) {
  Outcome out;
  expect_search(out, "Q8", 1, "exhausted", workers);
  expect_search(out, "Q8", 2, "found", workers);
  expect_search(out, "D8", 1, "found", workers);
  expect_search(out, "D16", 1, "found", workers);
  return out;
}

Outcome criterion6(int workers) {
  Outcome out;
  const std::vector<std::pair<std::string, Params>> groups = {
      {"D8", {}},          {"Q8", {}},          {"D16", {}},         {"Q16", {}},
      {"SD16", {}},        {"M16", {}},         {"G2", {{"m", 4}}},  {"G3", {{"m", 4}}},
      {"G4", {{"m", 4}}},  {"G5", {{"m", 4}}},
  };
  int checked = 0;
  for (int k : {1, 2}) {
    for (const auto& [spec, params] : groups) {
      const auto ctx = context_of(spec, 2, k, params);
      const GradedEngine eng(*ctx);
      std::string verdict = "INCONCLUSIVE";
      for (int t : {2, 3}) {
        if (t == 3 && eng.dim3() == 0) continue;
        if (certify(*ctx, t, workers).verdict == "OBSTRUCTED") {
          verdict = "OBSTRUCTED";
          break;
        }
      }
      if (verdict != "OBSTRUCTED") continue;
      ++checked;
      const SearchReport r = full_search(*ctx, 100000000, workers, false);
      std::ostringstream s;
      s << ctx->group->label() << " " << r.field << ": obstructed, unfiltered search "
        << r.outcome << " (" << r.leading_matrices << " leading matrices, " << r.nodes
        << " nodes)";
      if (r.outcome == "exhausted") {
        out.note(s.str());
      } else {
        out.fail(s.str());
      }
    }
  }
  if (checked == 0) out.fail("no obstructed group of order <= 16");
  return out;
}

// Degree-3 classes of the eight words of length 3 in b1, b2 for G7(3,4),
// against a closed form in the leading coefficients.
Outcome criterion7() {
  Outcome out;
  const Field f = Field::make(3, 2);
  const auto ctx = make_context(catalog("G7", {{"p", 3}, {"m", 4}}), f);
  const GradedEngine eng(*ctx);
  const auto& jd = ctx->jennings;
  const auto slice = jd.weight_slice(3);
  const std::vector<std::string> cols = {"(a^3-1)", "(a-1)^2(c-1)", "(a-1)(d-1)", "(c-1)(d-1)",
                                         "(a-1)(c-1)^2"};
  std::vector<int> pos;
  for (const auto& c : cols) {
    for (int j = 0; j < static_cast<int>(slice.size()); ++j) {
      if (jd.regular()[slice[j]].name == c) pos.push_back(j);
    }
  }
  if (pos.size() != cols.size() || slice.size() != cols.size()) {
    out.fail("weight-3 regular elements do not match the expected columns");
    return out;
  }
  auto M = [&](Scalar a, Scalar b) { return f.mul(a, b); };
  auto A = [&](Scalar a, Scalar b) { return f.add(a, b); };
  auto N = [&](Scalar a) { return f.neg(a); };
  const std::vector<std::pair<std::vector<int>, std::string>> rows = {
      {{0, 1, 0}, "b1b2b1"}, {{0, 1, 1}, "b1b2^2"}, {{1, 0, 0}, "b2b1^2"}, {{1, 0, 1}, "b2b1b2"},
      {{0, 0, 0}, "b1^3"},   {{0, 0, 1}, "b1^2b2"}, {{1, 1, 0}, "b2^2b1"}, {{1, 1, 1}, "b2^3"}};
  std::vector<std::set<int>> bad_cols(rows.size());
  for (auto a1 : f.elements()) {
    for (auto a2 : f.elements()) {
      for (auto b1 : f.elements()) {
        for (auto b2 : f.elements()) {
          const Scalar d = f.sub(M(a1, b2), M(a2, b1));
          if (d == 0) continue;
          const std::vector<Vec> table = {
              {M(M(a1, b1), A(a1, a2)), M(a1, d), M(M(a1, a1), b2), N(M(a2, d)), N(M(a2, d))},
              {M(M(b1, b1), A(a1, a2)), N(M(b1, d)), M(M(a1, b1), b2), 0, M(b2, d)},
              {M(M(a1, b1), A(b1, b2)), M(a1, d), M(M(a1, a2), b1), 0, N(M(a2, d))},
              {M(M(a1, b1), A(b1, b2)), M(b1, d), M(a2, M(b1, b1)), M(b2, d), M(b2, d)},
              {M(M(a1, a1), A(a1, a2)), 0, M(M(a1, a1), a2), 0, 0},
              {M(M(a1, b1), A(a1, a2)), M(a1, d), M(M(a1, a2), b1), M(a2, d), N(M(a2, d))},
              {M(M(a1, b1), A(b1, b2)), N(M(b1, d)), M(M(a1, a1), b2), N(M(b2, d)), M(b2, d)},
              {M(M(b1, b1), A(b1, b2)), 0, M(M(b1, b1), b2), 0, 0}};
          const LeadingMatrix lead = {{a1, a2}, {b1, b2}};
          for (std::size_t r = 0; r < rows.size(); ++r) {
            const Vec c = eng.graded_word_class(lead, rows[r].first, 3);
            for (std::size_t k = 0; k < cols.size(); ++k) {
              if (c[pos[k]] != table[r][k]) bad_cols[r].insert(static_cast<int>(k));
            }
          }
        }
      }
    }
  }
  int matching = 0;
  for (std::size_t r = 0; r < rows.size(); ++r) {
    if (bad_cols[r].empty()) {
      ++matching;
      continue;
    }
    std::string s = "mismatch " + rows[r].second + ":";
    for (int k : bad_cols[r]) s += " " + cols[k];
    out.note(s);
  }
  out.note(std::to_string(matching) + " of 8 rows match");
  if (matching < 6) out.fail("fewer than 6 rows match");
  return out;
}

Outcome criterion8(int workers) {
  Outcome out;
  const std::string one = existence_matrix(1).dump(2);
  const std::string many = existence_matrix(std::max(2, workers)).dump(2);
  if (one == many) {
    out.note("matrix output identical for 1 and " + std::to_string(std::max(2, workers)) +
             " workers (" + std::to_string(one.size()) + " bytes)");
  } else {
    out.fail("matrix output differs between worker counts");
  }
  return out;
}

std::set<int> parse_set(const std::string& s) {
  std::set<int> out;
  std::stringstream in(s);
  std::string item;
  while (std::getline(in, item, ',')) {
    if (!item.empty()) out.insert(std::stoi(item));
  }
  return out;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"acceptance criteria"};
  std::string only;
  std::string known;
  int workers = 2;
  app.add_option("--only", only, "comma-separated criteria to run");
  app.add_option("--known-failures", known, "comma-separated criteria expected to fail");
  app.add_option("--workers", workers, "worker threads")->check(CLI::PositiveNumber);
  CLI11_PARSE(app, argc, argv);

  const std::vector<std::function<Outcome()>> criteria = {
      criterion1,
      criterion2,
      criterion3,
      [&] { return criterion4(workers); },
      [&] { return criterion5(workers); },
      [&] { return criterion6(workers); },
      criterion7,
      [&] { return criterion8(workers); },
  };
  const std::set<int> selected = parse_set(only);
  const std::set<int> expected = parse_set(known);
  std::set<int> failed;
  for (int i = 1; i <= static_cast<int>(criteria.size()); ++i) {
    if (!selected.empty() && !selected.count(i)) continue;
    const auto start = std::chrono::steady_clock::now();
    Outcome o;
    try {
      o = criteria[i - 1]();
    } catch (const std::exception& e) {
      o.fail(std::string("exception: ") + e.what());
    }
    const double secs =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    if (!o.pass) failed.insert(i);
    std::cout << "criterion " << i << ": " << (o.pass ? "PASS" : "FAIL") << "\n";
    for (const auto& d : o.details) std::cout << "  " << d << "\n";
    std::cerr << "criterion " << i << " took " << secs << " s\n";
    std::cout.flush();
  }
  std::set<int> expected_run;
  for (int i : expected) {
    if (selected.empty() || selected.count(i)) expected_run.insert(i);
  }
  if (failed == expected_run) return 0;
  std::cout << "failing criteria differ from the known set\n";
  return 1;
}
