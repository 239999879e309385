#include "kgb/obstruct.hpp"

#include <algorithm>
#include <atomic>
#include <set>
#include <thread>

#include "kgb/error.hpp"

namespace kgb {

namespace {

constexpr long long kMaxMatrixSpace = 100000000;

Vec axpy(const Field& f, Vec acc, Scalar c, const Vec& x) {
  if (c == 0) return acc;
  for (std::size_t i = 0; i < acc.size(); ++i) acc[i] = f.add(acc[i], f.mul(c, x[i]));
  return acc;
}

long long ipow(long long b, int e) {
  long long r = 1;
  for (int i = 0; i < e; ++i) r *= b;
  return r;
}

LeadingMatrix matrix_from_index(const Field& f, int n, long long index) {
  LeadingMatrix a(n, Vec(n, 0));
  for (int r = 0; r < n; ++r) {
    for (int c = 0; c < n; ++c) {
      a[r][c] = static_cast<Scalar>(index % f.q());
      index /= f.q();
    }
  }
  return a;
}

void check_matrix_space(int n, int q) {
  if (n > 4) throw Error(ErrorCode::kBudgetExceeded, "dim I/I^2 = " + std::to_string(n) + " > 4");
  if (static_cast<double>(ipow(q, n * n)) > kMaxMatrixSpace) {
    throw Error(ErrorCode::kBudgetExceeded, "q^(n^2) exceeds 1e8");
  }
}

bool independent(const Field& f, const std::vector<Vec>& xs, int dim) {
  return rank_of(f, xs, dim) == static_cast<int>(xs.size());
}

Condition evaluate(const GradedEngine& eng, const LeadingMatrix& a, int t, bool use_n4) {
  const Field& f = eng.context().alg.field();
  const int n = eng.n();
  if (determinant(f, a) == 0) return Condition::kSingular;

  std::vector<Vec> c2(n * n);
  for (int k = 0; k < n; ++k) {
    for (int s = 0; s < n; ++s) c2[k * n + s] = eng.fast_class(a, {k, s});
  }
  // N1: distinct nonzero length-2 classes belong to distinct basis elements
  // of degree 2, so they are independent, and they must span I^2/I^3.
  std::set<Vec> distinct2;
  int zero2 = 0;
  for (const auto& c : c2) {
    if (is_zero(c)) ++zero2;
    else distinct2.insert(c);
  }
  {
    const std::vector<Vec> xs(distinct2.begin(), distinct2.end());
    if (!independent(f, xs, eng.dim2()) || static_cast<int>(xs.size()) != eng.dim2()) {
      return Condition::kN1;
    }
  }
  if (use_n4 && n >= 2) {
    bool all_commute = true;
    for (int k = 0; k < n && all_commute; ++k) {
      for (int s = k + 1; s < n; ++s) {
        const Vec& x = c2[k * n + s];
        if (is_zero(x) || x != c2[s * n + k]) {
          all_commute = false;
          break;
        }
      }
    }
    if (all_commute) return Condition::kN4;
  }
  if (t < 3 || eng.dim3() == 0) return Condition::kPass;

  std::vector<Vec> c3(n * n * n);
  for (int k = 0; k < n; ++k) {
    for (int s = 0; s < n; ++s) {
      for (int r = 0; r < n; ++r) c3[(k * n + s) * n + r] = eng.fast_class(a, {k, s, r});
    }
  }
  // N3: a basis element of degree 3 is a length-3 word or a length-2 word
  // lying in I^3, and the classes of the latter are not determined by A.
  std::set<Vec> distinct3;
  for (const auto& c : c3) {
    if (!is_zero(c)) distinct3.insert(c);
  }
  {
    const std::vector<Vec> xs(distinct3.begin(), distinct3.end());
    if (!independent(f, xs, eng.dim3()) ||
        static_cast<int>(xs.size()) + zero2 < eng.dim3()) {
      return Condition::kN3;
    }
  }
  // N2
  for (int w1 = 0; w1 < n * n; ++w1) {
    if (is_zero(c2[w1])) continue;
    for (int w2 = w1 + 1; w2 < n * n; ++w2) {
      if (c2[w1] != c2[w2]) continue;
      for (int x = 0; x < n; ++x) {
        const int k1 = w1 / n, s1 = w1 % n, k2 = w2 / n, s2 = w2 % n;
        if (c3[(x * n + k1) * n + s1] != c3[(x * n + k2) * n + s2]) return Condition::kN2;
        if (c3[(k1 * n + s1) * n + x] != c3[(k2 * n + s2) * n + x]) return Condition::kN2;
      }
    }
  }
  return Condition::kPass;
}

}  // namespace

std::string condition_name(Condition c) {
  switch (c) {
    case Condition::kPass: return "pass";
    case Condition::kN1: return "N1";
    case Condition::kN2: return "N2";
    case Condition::kN3: return "N3";
    case Condition::kN4: return "N4";
    case Condition::kSingular: return "singular";
  }
  return "?";
}

GradedEngine::GradedEngine(const AlgebraContext& ctx) : ctx_(&ctx) {
  const auto& jd = ctx.jennings;
  const auto& alg = ctx.alg;
  std::vector<AlgebraElement> u;
  for (const auto& r : jd.reps()) {
    if (r.level == 1) u.push_back(alg.minus_one(r.element));
  }
  n_ = static_cast<int>(u.size());
  dim2_ = static_cast<int>(jd.weight_slice(2).size());
  dim3_ = static_cast<int>(jd.weight_slice(3).size());
  t2_.resize(n_ * n_);
  t3_.resize(n_ * n_ * n_);
  for (int i = 0; i < n_; ++i) {
    for (int j = 0; j < n_; ++j) {
      const AlgebraElement uij = alg.mul(u[i], u[j]);
      t2_[i * n_ + j] = jd.class_in_quotient(uij, 2);
      for (int l = 0; l < n_; ++l) {
        t3_[(i * n_ + j) * n_ + l] = jd.class_in_quotient(alg.mul(uij, u[l]), 3);
      }
    }
  }
}

std::vector<AlgebraElement> GradedEngine::leading_elements(const LeadingMatrix& a) const {
  const auto& alg = ctx_->alg;
  std::vector<AlgebraElement> b;
  std::vector<AlgebraElement> u;
  for (const auto& r : ctx_->jennings.reps()) {
    if (r.level == 1) u.push_back(alg.minus_one(r.element));
  }
  for (const auto& row : a) {
    AlgebraElement x = alg.zero();
    for (int i = 0; i < n_; ++i) x = axpy(alg.field(), std::move(x), row[i], u[i]);
    b.push_back(std::move(x));
  }
  return b;
}

Vec GradedEngine::graded_word_class(const LeadingMatrix& a, const std::vector<int>& word,
                                    int d) const {
  if (d != 2 && d != 3) throw Error(ErrorCode::kInvalidArgument, "degree must be 2 or 3");
  if (static_cast<int>(word.size()) != d) {
    throw Error(ErrorCode::kInvalidArgument, "word length must equal the degree");
  }
  const auto b = leading_elements(a);
  AlgebraElement x = ctx_->alg.one();
  for (int w : word) {
    if (w < 0 || w >= n_) throw Error(ErrorCode::kInvalidArgument, "generator index out of range");
    x = ctx_->alg.mul(x, b[w]);
  }
  return ctx_->jennings.class_in_quotient(x, d);
}

Vec GradedEngine::fast_class(const LeadingMatrix& a, const std::vector<int>& word) const {
  const Field& f = ctx_->alg.field();
  if (word.size() == 2) {
    Vec acc(dim2_, 0);
    const Vec& r0 = a[word[0]];
    const Vec& r1 = a[word[1]];
    for (int i = 0; i < n_; ++i) {
      if (r0[i] == 0) continue;
      for (int j = 0; j < n_; ++j) {
        acc = axpy(f, std::move(acc), f.mul(r0[i], r1[j]), t2_[i * n_ + j]);
      }
    }
    return acc;
  }
  if (word.size() == 3) {
    Vec acc(dim3_, 0);
    const Vec& r0 = a[word[0]];
    const Vec& r1 = a[word[1]];
    const Vec& r2 = a[word[2]];
    for (int i = 0; i < n_; ++i) {
      if (r0[i] == 0) continue;
      for (int j = 0; j < n_; ++j) {
        const Scalar cij = f.mul(r0[i], r1[j]);
        if (cij == 0) continue;
        for (int l = 0; l < n_; ++l) {
          acc = axpy(f, std::move(acc), f.mul(cij, r2[l]), t3_[(i * n_ + j) * n_ + l]);
        }
      }
    }
    return acc;
  }
  throw Error(ErrorCode::kInvalidArgument, "degree must be 2 or 3");
}

Condition GradedEngine::check_necessary(const LeadingMatrix& a, int t) const {
  if (t != 2 && t != 3) throw Error(ErrorCode::kInvalidArgument, "degree must be 2 or 3");
  if (ctx_->alg.group().is_abelian()) {
    throw Error(ErrorCode::kInvalidArgument, "group is abelian");
  }
  if (static_cast<int>(a.size()) != n_) {
    throw Error(ErrorCode::kInvalidArgument, "leading matrix must be " + std::to_string(n_) + "x" +
                                                 std::to_string(n_));
  }
  for (const auto& row : a) {
    if (static_cast<int>(row.size()) != n_) {
      throw Error(ErrorCode::kInvalidArgument, "leading matrix is not square");
    }
  }
  const Condition c = evaluate(*this, a, t, true);
  if (c == Condition::kSingular) {
    throw Error(ErrorCode::kInvalidArgument, "leading matrix is singular");
  }
  return c;
}

long long gl_order(int n, int q) {
  long long r = 1;
  const long long qn = ipow(q, n);
  for (int i = 0; i < n; ++i) r *= qn - ipow(q, i);
  return r;
}

std::vector<LeadingMatrix> invertible_matrices(const Field& f, int n) {
  check_matrix_space(n, f.q());
  std::vector<LeadingMatrix> out;
  const long long total = ipow(f.q(), n * n);
  for (long long i = 0; i < total; ++i) {
    LeadingMatrix a = matrix_from_index(f, n, i);
    if (determinant(f, a) != 0) out.push_back(std::move(a));
  }
  return out;
}

ObstructionReport certify(const AlgebraContext& ctx, int t, int workers) {
  if (t != 2 && t != 3) throw Error(ErrorCode::kInvalidArgument, "degree must be 2 or 3");
  if (ctx.alg.group().is_abelian()) {
    throw Error(ErrorCode::kInvalidArgument, "certify requires a nonabelian group");
  }
  const Field& f = ctx.alg.field();
  const GradedEngine eng(ctx);
  const int n = eng.n();
  check_matrix_space(n, f.q());

  ObstructionReport rep;
  rep.group = ctx.alg.group().label();
  rep.field = f.name();
  rep.degree = t;
  rep.n = n;
  rep.expected_matrices = gl_order(n, f.q());

  const long long total = ipow(f.q(), n * n);
  workers = std::max(1, workers);
  const long long chunk = (total + workers - 1) / workers;
  std::vector<std::vector<std::pair<long long, Condition>>> parts(workers);
  auto run = [&](int w) {
    const long long lo = w * chunk;
    const long long hi = std::min(total, lo + chunk);
    for (long long i = lo; i < hi; ++i) {
      const LeadingMatrix a = matrix_from_index(f, n, i);
      const Condition c = evaluate(eng, a, t, true);
      if (c != Condition::kSingular) parts[w].emplace_back(i, c);
    }
  };
  if (workers == 1) {
    run(0);
  } else {
    std::vector<std::thread> pool;
    for (int w = 0; w < workers; ++w) pool.emplace_back(run, w);
    for (auto& th : pool) th.join();
  }

  for (const char* k : {"pass", "N1", "N4", "N3", "N2"}) rep.tally[k] = 0;
  for (const auto& part : parts) {
    for (const auto& [idx, c] : part) {
      ++rep.matrices_examined;
      rep.tags.push_back(c);
      ++rep.tally[condition_name(c)];
      if (c == Condition::kPass) {
        ++rep.survivor_count;
        if (rep.survivors.size() < kMaxListedSurvivors) {
          rep.survivors.push_back(matrix_from_index(f, n, idx));
        }
      }
    }
  }
  rep.verdict = rep.survivor_count == 0 ? "OBSTRUCTED" : "INCONCLUSIVE";
  return rep;
}

namespace {

// Search state for one leading matrix. The b's are held exactly with all
// regular coordinates of weight above the current depth set to zero; words
// in them are then correct modulo I^{depth+2}.
class SubtreeSearch {
 public:
  SubtreeSearch(const AlgebraContext& ctx, long long budget) : ctx_(ctx), budget_(budget) {
    const auto& jd = ctx.jennings;
    s_ = ctx.filt.nilpotency_index() - 1;
    weight_.resize(ctx.alg.dim());
    for (int i = 0; i < ctx.alg.dim(); ++i) weight_[i] = jd.regular()[i].weight;
  }

  // Returns true when a basis was found.
  bool run(const LeadingMatrix& a) {
    const auto& jd = ctx_.jennings;
    n_ = static_cast<int>(a.size());
    coords_.assign(n_, Vec(ctx_.alg.dim(), 0));
    const auto slice = jd.weight_slice(1);
    for (int k = 0; k < n_; ++k) {
      for (int i = 0; i < n_; ++i) coords_[k][slice[i]] = a[k][i];
    }
    ++nodes_;
    if (!consistent(1)) return false;
    return descend(2);
  }

  long long nodes() const noexcept { return nodes_; }
  bool exhausted_budget() const noexcept { return over_; }
  const Basis& basis() const noexcept { return found_; }

 private:
  AlgebraElement value(const Vec& c) const {
    AlgebraElement x = ctx_.alg.zero();
    const auto& reg = ctx_.jennings.regular();
    for (std::size_t i = 0; i < c.size(); ++i) {
      x = axpy(ctx_.alg.field(), std::move(x), c[i], reg[i].value);
    }
    return x;
  }

  Vec truncate(Vec c, int level) const {
    for (std::size_t i = 0; i < c.size(); ++i) {
      if (weight_[i] >= level) c[i] = 0;
    }
    return c;
  }

  bool descend(int depth) {
    if (over_) return false;
    if (depth >= s_) return leaf();
    const auto slice = ctx_.jennings.weight_slice(depth);
    const int m = static_cast<int>(slice.size());
    const int vars = n_ * m;
    const int q = ctx_.alg.field().q();
    std::vector<int> digits(vars, 0);
    while (true) {
      for (int v = 0; v < vars; ++v) {
        coords_[v / m][slice[v % m]] = static_cast<Scalar>(digits[v]);
      }
      if (++nodes_ > budget_) {
        over_ = true;
        return false;
      }
      if (consistent(depth) && descend(depth + 1)) return true;
      if (over_) return false;
      int v = 0;
      while (v < vars && ++digits[v] == q) digits[v++] = 0;
      if (v == vars) break;
    }
    for (int v = 0; v < vars; ++v) coords_[v / m][slice[v % m]] = 0;
    return false;
  }

  // Words of length >= 2 modulo I^{depth+2}: distinct ones are distinct
  // basis elements, so per degree their classes must form a basis of the
  // graded piece.
  bool consistent(int depth) {
    const int level = depth + 2;
    const Field& f = ctx_.alg.field();
    const int dim = ctx_.alg.dim();
    const int room = dim - 1 - n_;
    b_.clear();
    for (const auto& c : coords_) b_.push_back(value(c));
    words_.clear();
    std::set<Vec> seen;
    std::vector<AlgebraElement> frontier = b_;
    while (!frontier.empty()) {
      std::vector<AlgebraElement> next;
      for (const auto& w : frontier) {
        for (const auto& g : b_) {
          AlgebraElement y = ctx_.alg.mul(w, g);
          Vec key = truncate(ctx_.jennings.coordinates(y), level);
          if (is_zero(key) || !seen.insert(key).second) continue;
          if (static_cast<int>(seen.size()) > room) return false;
          words_.push_back(key);
          next.push_back(std::move(y));
        }
      }
      frontier = std::move(next);
    }
    const int top = std::min(level - 1, s_);
    std::vector<std::vector<Vec>> classes(top + 1);
    for (const auto& key : words_) {
      int d = 0;
      for (int i = 0; i < dim; ++i) {
        if (key[i] != 0) {
          d = weight_[i];
          break;
        }
      }
      Vec cls;
      for (int i = 0; i < dim; ++i) {
        if (weight_[i] == d) cls.push_back(key[i]);
      }
      classes[d].push_back(std::move(cls));
    }
    for (int d = 2; d <= top; ++d) {
      const int want = static_cast<int>(ctx_.jennings.weight_slice(d).size());
      if (static_cast<int>(classes[d].size()) != want) return false;
      if (rank_of(f, classes[d], want) != want) return false;
    }
    return true;
  }

  bool leaf() {
    // Every word is exact here.
    if (!consistent(s_)) return false;
    Basis cand;
    cand.push_back(ctx_.alg.one());
    for (const auto& x : b_) cand.push_back(x);
    for (const auto& key : words_) cand.push_back(value(key));
    if (static_cast<int>(cand.size()) != ctx_.alg.dim()) return false;
    if (!verify(ctx_, cand).pass) return false;
    found_ = std::move(cand);
    return true;
  }

  const AlgebraContext& ctx_;
  long long budget_;
  long long nodes_ = 0;
  bool over_ = false;
  int s_ = 0;
  int n_ = 0;
  std::vector<int> weight_;
  std::vector<Vec> coords_;
  std::vector<AlgebraElement> b_;
  std::vector<Vec> words_;
  Basis found_;
};

}  // namespace

SearchReport full_search(const AlgebraContext& ctx, long long budget, int workers,
                         bool prefilter) {
  const Field& f = ctx.alg.field();
  if (ctx.alg.dim() > 16) {
    throw Error(ErrorCode::kParameterOutOfRange, "full_search needs |G| <= 16");
  }
  if (f.q() > 4) throw Error(ErrorCode::kParameterOutOfRange, "full_search needs q <= 4");
  if (budget <= 0) throw Error(ErrorCode::kInvalidArgument, "budget must be positive");

  const GradedEngine eng(ctx);
  const bool abelian = ctx.alg.group().is_abelian();
  const int t = eng.dim3() > 0 ? 3 : 2;
  std::vector<LeadingMatrix> leading;
  for (auto& a : invertible_matrices(f, eng.n())) {
    if (!prefilter || evaluate(eng, a, t, !abelian) == Condition::kPass) {
      leading.push_back(std::move(a));
    }
  }

  SearchReport rep;
  rep.group = ctx.alg.group().label();
  rep.field = f.name();
  rep.budget = budget;
  rep.prefilter = prefilter;
  rep.leading_matrices = static_cast<long long>(leading.size());

  struct Outcome {
    bool done = false;
    bool found = false;
    bool over = false;
    long long nodes = 0;
    Basis basis;
  };
  std::vector<Outcome> outcomes(leading.size());
  std::atomic<std::size_t> next{0};
  std::atomic<std::size_t> stop_at{leading.size()};
  auto work = [&] {
    while (true) {
      const std::size_t i = next++;
      if (i >= leading.size() || i > stop_at.load()) return;
      SubtreeSearch s(ctx, budget);
      Outcome& o = outcomes[i];
      o.found = s.run(leading[i]);
      o.over = s.exhausted_budget();
      o.nodes = s.nodes();
      if (o.found) o.basis = s.basis();
      o.done = true;
      if (o.found || o.over) {
        std::size_t cur = stop_at.load();
        while (i < cur && !stop_at.compare_exchange_weak(cur, i)) {
        }
      }
    }
  };
  workers = std::max(1, workers);
  if (workers == 1) {
    // Sequential runs stop as soon as the cumulative budget is spent.
    long long used = 0;
    for (std::size_t i = 0; i < leading.size(); ++i) {
      SubtreeSearch s(ctx, budget - used);
      Outcome& o = outcomes[i];
      o.found = s.run(leading[i]);
      o.over = s.exhausted_budget();
      o.nodes = s.nodes();
      if (o.found) o.basis = s.basis();
      o.done = true;
      used += o.nodes;
      if (o.found || o.over || used > budget) break;
    }
  } else {
    std::vector<std::thread> pool;
    for (int w = 0; w < workers; ++w) pool.emplace_back(work);
    for (auto& th : pool) th.join();
  }

  long long used = 0;
  rep.outcome = "exhausted";
  for (std::size_t i = 0; i < leading.size(); ++i) {
    const Outcome& o = outcomes[i];
    used += o.nodes;
    if (o.over || used > budget) {
      rep.outcome = "budget_exhausted";
      used = budget;
      break;
    }
    if (o.found) {
      rep.outcome = "found";
      rep.basis = o.basis;
      rep.leading = leading[i];
      rep.verdict = verify(ctx, o.basis);
      break;
    }
  }
  rep.nodes = used;
  return rep;
}

}  // namespace kgb
