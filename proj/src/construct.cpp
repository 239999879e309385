#include "kgb/construct.hpp"

#include <unordered_set>

#include "kgb/error.hpp"

namespace kgb {

namespace {

struct Words {
  const GroupAlgebra& alg;
  AlgebraElement u, v;

  AlgebraElement prod(std::initializer_list<AlgebraElement> xs) const {
    AlgebraElement r = alg.one();
    for (const auto& x : xs) r = alg.mul(r, x);
    return r;
  }
  AlgebraElement pw(const AlgebraElement& x, int n) const { return alg.pow(x, n); }
  AlgebraElement uv() const { return alg.mul(u, v); }
  AlgebraElement vu() const { return alg.mul(v, u); }
};

// Collects distinct nonzero values, keeping first occurrences.
class Collector {
 public:
  explicit Collector(const GroupAlgebra& alg) : alg_(alg) {}

  bool add(const AlgebraElement& x) {
    if (is_zero(x)) return false;
    std::string key(reinterpret_cast<const char*>(x.data()), x.size());
    if (seen_.insert(key).second) out_.push_back(x);
    return true;
  }

  // Adds head * step^n * tail for n = 0, 1, ... until the value vanishes.
  void series(const AlgebraElement& head, const AlgebraElement& step,
              const AlgebraElement& tail) {
    AlgebraElement cur = head;
    for (int n = 0; n <= alg_.dim(); ++n) {
      if (!add(alg_.mul(cur, tail))) break;
      cur = alg_.mul(cur, step);
    }
  }

  Basis take() { return std::move(out_); }

 private:
  const GroupAlgebra& alg_;
  std::unordered_set<std::string> seen_;
  Basis out_;
};

int gen_element(const AlgebraContext& ctx, const std::string& name) {
  const PcGroup& g = ctx.alg.group();
  const int i = g.presentation().generator_index(name);
  if (i < 0) throw Error(ErrorCode::kInvalidArgument, "group has no generator " + name);
  return g.generator(i);
}

AlgebraElement one_plus(const AlgebraContext& ctx, const std::string& name) {
  return ctx.alg.add(ctx.alg.one(), ctx.alg.element(gen_element(ctx, name)));
}

ConstructionResult finish(const AlgebraContext& ctx, std::string family, Basis basis,
                          std::optional<Scalar> mu = std::nullopt) {
  ConstructionResult r;
  r.family = std::move(family);
  r.mu = mu;
  r.distinct_nonzero = static_cast<int>(basis.size());
  r.basis = std::move(basis);
  if (r.distinct_nonzero != ctx.alg.dim()) {
    r.failure = std::to_string(r.distinct_nonzero) + " distinct nonzero words, expected " +
                std::to_string(ctx.alg.dim());
    if (mu) r.failure = "mu unsuitable: " + r.failure;
    return r;
  }
  r.verdict = verify(ctx, r.basis);
  r.verified = true;
  r.ok = r.verdict.pass;
  if (!r.ok) r.failure = mu ? "mu unsuitable: candidate fails verification"
                            : "candidate fails verification";
  return r;
}

void require_char2(const AlgebraContext& ctx, const std::string& what) {
  if (ctx.alg.field().p() != 2) {
    throw Error(ErrorCode::kInvalidArgument, what + " requires characteristic 2");
  }
}

// sum of coef * (1+a)^x (1+c)^y (1+d)^z; terms with x < 0 are dropped.
struct Mono {
  Scalar coef;
  int x, y, z;
};

class Graded {
 public:
  explicit Graded(const AlgebraContext& ctx)
      : ctx_(ctx), a_(one_plus(ctx, "a")), c_(one_plus(ctx, "c")), d_(one_plus(ctx, "d")) {}

  AlgebraElement eval(const std::vector<Mono>& terms) const {
    const auto& alg = ctx_.alg;
    AlgebraElement s = alg.zero();
    for (const auto& t : terms) {
      if (t.x < 0 || t.coef == 0) continue;
      AlgebraElement m = alg.mul(alg.mul(alg.pow(a_, t.x), alg.pow(c_, t.y)), alg.pow(d_, t.z));
      s = alg.add(s, alg.scale(t.coef, m));
    }
    return s;
  }

  void check(std::vector<CongruenceCheck>& out, std::string label, const AlgebraElement& lhs,
             const std::vector<Mono>& rhs, int modulus) const {
    if (modulus > ctx_.filt.nilpotency_index()) return;
    const AlgebraElement diff = ctx_.alg.sub(lhs, eval(rhs));
    out.push_back({std::move(label), modulus, ctx_.filt.contains(diff, modulus)});
  }

 private:
  const AlgebraContext& ctx_;
  AlgebraElement a_, c_, d_;
};

std::string idx(const std::string& base, int n) { return base + "[" + std::to_string(n) + "]"; }

}  // namespace

std::string family_of(const PcPresentation& pres) {
  const auto pos = pres.label.find('(');
  return pos == std::string::npos ? pres.label : pres.label.substr(0, pos);
}

ConstructionResult abelian_basis(const AlgebraContext& ctx,
                                 const std::vector<std::pair<int, int>>& decomposition) {
  const PcGroup& g = ctx.alg.group();
  if (!g.is_abelian()) throw Error(ErrorCode::kInvalidArgument, "group is not abelian");
  long long prod = 1;
  ElementSet gens;
  for (const auto& [elem, order] : decomposition) {
    if (elem < 0 || elem >= g.order() || g.element_order(elem) != order) {
      throw Error(ErrorCode::kInvalidArgument, "cyclic factor has the wrong order");
    }
    prod *= order;
    gens.push_back(elem);
  }
  if (prod != g.order() || static_cast<int>(g.subgroup_closure(gens).size()) != g.order()) {
    throw Error(ErrorCode::kInvalidArgument, "decomposition does not give the group");
  }
  const auto& alg = ctx.alg;
  Basis basis{alg.one()};
  for (const auto& [elem, order] : decomposition) {
    const AlgebraElement x = alg.minus_one(elem);
    Basis next;
    for (const auto& b : basis) {
      AlgebraElement cur = b;
      for (int n = 0; n < order; ++n) {
        next.push_back(cur);
        cur = alg.mul(cur, x);
      }
    }
    basis = std::move(next);
  }
  Collector col(alg);
  for (const auto& b : basis) col.add(b);
  return finish(ctx, "abelian", col.take());
}

ConstructionResult abelian_basis(const AlgebraContext& ctx) {
  const PcGroup& g = ctx.alg.group();
  std::vector<std::pair<int, int>> dec;
  for (int i = 0; i < g.rank(); ++i) {
    dec.emplace_back(g.generator(i), g.element_order(g.generator(i)));
  }
  return abelian_basis(ctx, dec);
}

Basis product_basis(const AlgebraContext& prod, const AlgebraContext& left, const Basis& b1,
                    const AlgebraContext& right, const Basis& b2) {
  if (left.alg.field() != right.alg.field() || left.alg.field() != prod.alg.field()) {
    throw Error(ErrorCode::kMismatchedContext, "factors over different fields");
  }
  const int n1 = left.alg.dim();
  const int n2 = right.alg.dim();
  if (n1 * n2 != prod.alg.dim()) {
    throw Error(ErrorCode::kMismatchedContext, "product group order differs from |G1||G2|");
  }
  const Field& f = prod.alg.field();
  Basis out;
  for (const auto& y : b2) {
    right.alg.check(y);
    for (const auto& x : b1) {
      left.alg.check(x);
      AlgebraElement z = prod.alg.zero();
      for (int h = 0; h < n2; ++h) {
        if (y[h] == 0) continue;
        for (int g = 0; g < n1; ++g) {
          if (x[g] != 0) z[g + n1 * h] = f.mul(x[g], y[h]);
        }
      }
      out.push_back(std::move(z));
    }
  }
  return out;
}

ConstructionResult g4_basis(const AlgebraContext& ctx) {
  const auto& pres = ctx.alg.group().presentation();
  if (family_of(pres) != "G4" || ctx.alg.dim() != 16) {
    throw Error(ErrorCode::kInvalidArgument, "g4_basis needs G4 with m = 4");
  }
  require_char2(ctx, "g4_basis");
  const auto& alg = ctx.alg;
  const AlgebraElement b2 = one_plus(ctx, "c");
  const AlgebraElement b1 = alg.add(one_plus(ctx, "a"), b2);
  const AlgebraElement b3 = one_plus(ctx, "d");
  Collector col(alg);
  for (int i = 0; i < 2; ++i) {
    for (int j = 0; j < 4; ++j) {
      for (int k = 0; k < 2; ++k) {
        for (int l = 0; l < 4; ++l) {
          col.add(alg.mul(alg.mul(alg.mul(alg.pow(b2, i), alg.pow(b1, j)), alg.pow(b2, k)),
                          alg.pow(b3, l)));
        }
      }
    }
  }
  return finish(ctx, "g4", col.take());
}

std::pair<AlgebraElement, AlgebraElement> uv_pair(const AlgebraContext& ctx, Scalar mu) {
  const AlgebraElement v = one_plus(ctx, "c");
  const AlgebraElement u = ctx.alg.add(one_plus(ctx, "a"), ctx.alg.scale(mu, v));
  return {u, v};
}

bool type_a_applicable(const PcPresentation& pres) {
  const std::string f = family_of(pres);
  if (f == "G5" || f == "G17" || f == "G22") return true;
  return f == "G25" && pres.m == 5;
}

bool type_b_applicable(const PcPresentation& pres) {
  const std::string f = family_of(pres);
  if (f == "G13" || f == "G14" || f == "G18" || f == "G23" || f == "G24") return true;
  return f == "G25" && pres.m > 5;
}

ConstructionResult type_a_basis(const AlgebraContext& ctx, Scalar mu) {
  if (!type_a_applicable(ctx.alg.group().presentation())) {
    throw Error(ErrorCode::kInvalidArgument, "type A needs G5, G17, G22 or G25 with m = 5");
  }
  require_char2(ctx, "type A");
  const auto& alg = ctx.alg;
  const auto [u, v] = uv_pair(ctx, mu);
  const Words w{alg, u, v};
  Collector col(alg);
  col.add(alg.one());
  col.series(alg.one(), u, alg.one());
  col.series(v, u, alg.one());
  col.series(w.prod({v, u, v}), u, alg.one());
  col.series(w.uv(), u, alg.one());
  return finish(ctx, "typeA", col.take(), mu);
}

ConstructionResult type_b_basis(const AlgebraContext& ctx, Scalar mu) {
  if (!type_b_applicable(ctx.alg.group().presentation())) {
    throw Error(ErrorCode::kInvalidArgument,
                "type B needs G13, G14, G18, G23, G24, or G25 with m > 5");
  }
  require_char2(ctx, "type B");
  const auto& alg = ctx.alg;
  const auto [u, v] = uv_pair(ctx, mu);
  const Words w{alg, u, v};
  const AlgebraElement uv = w.uv(), vu = w.vu(), u2 = w.pw(u, 2), u3 = w.pw(u, 3);
  const AlgebraElement one = alg.one();
  Collector col(alg);
  col.series(one, uv, u);
  col.series(one, vu, v);
  col.series(one, uv, one);
  col.series(one, vu, one);
  col.series(alg.mul(u2, v), uv, one);
  col.series(u3, vu, one);
  col.series(u2, vu, one);
  col.series(u2, uv, one);
  return finish(ctx, "typeB", col.take(), mu);
}

MuSweep sweep_mu(const AlgebraContext& ctx, const std::string& family) {
  MuSweep s;
  for (Scalar mu : ctx.alg.field().elements()) {
    ConstructionResult r;
    if (family == "typeA") {
      r = type_a_basis(ctx, mu);
    } else if (family == "typeB") {
      r = type_b_basis(ctx, mu);
    } else {
      throw Error(ErrorCode::kInvalidArgument, "mu sweep needs typeA or typeB");
    }
    if (r.ok) s.passing.push_back(mu);
    s.results.push_back(std::move(r));
  }
  return s;
}

std::vector<CongruenceCheck> type_a_congruences(const AlgebraContext& ctx, Scalar mu) {
  require_char2(ctx, "type A congruences");
  const Field& f = ctx.alg.field();
  const auto [u, v] = uv_pair(ctx, mu);
  const Words w{ctx.alg, u, v};
  const Graded gr(ctx);
  const int s = ctx.filt.nilpotency_index();
  const Scalar mu2 = f.mul(mu, mu);
  std::vector<CongruenceCheck> out;

  gr.check(out, "vuv", w.prod({v, u, v}), {{1, 0, 1, 1}}, 4);
  for (int i = 0; 4 * i < s; ++i) {
    const int n = 4 * i;
    gr.check(out, idx("u^(4i)", i), w.pw(u, n), {{1, n, 0, 0}}, n + 1);
    gr.check(out, idx("u^(4i+1)", i), w.pw(u, n + 1), {{1, n + 1, 0, 0}, {mu, n, 1, 0}}, n + 2);
    gr.check(out, idx("u^(4i+2)", i), w.pw(u, n + 2), {{1, n + 2, 0, 0}, {mu, n, 0, 1}}, n + 3);
    gr.check(out, idx("u^(4i+3)", i), w.pw(u, n + 3),
             {{1, n + 3, 0, 0}, {mu, n + 2, 1, 0}, {mu, n + 1, 0, 1}, {mu2, n, 1, 1}}, n + 4);
  }
  for (int i = 4; i < s; ++i) {
    const AlgebraElement ui = w.pw(u, i);
    const AlgebraElement vu = w.prod({v, w.pw(u, i - 1)});
    const AlgebraElement uvu = w.prod({u, v, w.pw(u, i - 2)});
    const AlgebraElement vuvu = w.prod({v, u, v, w.pw(u, i - 3)});
    const int r = i % 4;
    const std::string tag = "case" + std::to_string(r + 1);
    if (r == 0 || r == 2) {
      gr.check(out, idx(tag + ":u^i", i), ui, {{1, i, 0, 0}}, i + 1);
      const Scalar k = r == 0 ? Scalar{1} : mu;
      gr.check(out, idx(tag + ":vu^(i-1)", i), vu,
               {{1, i - 1, 1, 0}, {1, i - 2, 0, 1}, {k, i - 3, 1, 1}}, i + 1);
      gr.check(out, idx(tag + ":uvu^(i-2)", i), uvu, {{1, i - 1, 1, 0}, {mu, i - 3, 1, 1}}, i + 1);
    } else {
      gr.check(out, idx(tag + ":u^i", i), ui, {{1, i, 0, 0}, {mu, i - 2, 0, 1}}, i + 1);
      gr.check(out, idx(tag + ":vu^(i-1)", i), vu, {{1, i - 1, 1, 0}, {1, i - 2, 0, 1}}, i + 1);
      gr.check(out, idx(tag + ":uvu^(i-2)", i), uvu, {{1, i - 1, 1, 0}}, i + 1);
    }
    gr.check(out, idx(tag + ":vuvu^(i-3)", i), vuvu, {{1, i - 3, 1, 1}}, i + 1);
  }
  return out;
}

std::vector<CongruenceCheck> type_b_congruences(const AlgebraContext& ctx, Scalar mu) {
  require_char2(ctx, "type B congruences");
  const Field& f = ctx.alg.field();
  const auto& alg = ctx.alg;
  const auto [u, v] = uv_pair(ctx, mu);
  const Words w{alg, u, v};
  const Graded gr(ctx);
  const int s = ctx.filt.nilpotency_index();
  const Scalar m1 = f.add(1, mu);  // 1 + mu
  const Scalar mm1 = f.mul(mu, m1);
  const AlgebraElement uv = w.uv(), vu = w.vu(), u2 = w.pw(u, 2), u3 = w.pw(u, 3);
  std::vector<CongruenceCheck> out;

  for (int i = 0; 4 * i + 3 < s + 1; ++i) {
    const int n = 4 * i;
    gr.check(out, idx("(uv)^(2i+1)", i), w.pw(uv, 2 * i + 1), {{1, n + 1, 1, 0}}, n + 3);
    gr.check(out, idx("(uv)^(2i+2)", i), w.pw(uv, 2 * i + 2),
             {{1, n + 3, 1, 0}, {1, n + 1, 1, 1}}, n + 5);
    gr.check(out, idx("(vu)^(2i+1)", i), w.pw(vu, 2 * i + 1),
             {{1, n + 2, 0, 0}, {1, n + 1, 1, 0}, {1, n, 0, 1}}, n + 3);
    gr.check(out, idx("(vu)^(2i+2)", i), w.pw(vu, 2 * i + 2),
             {{1, n + 4, 0, 0}, {1, n + 3, 1, 0}, {1, n + 1, 1, 1}}, n + 5);
  }
  {
    const Graded& g = gr;
    const AlgebraElement c = alg.add(alg.one(), alg.element(gen_element(ctx, "c")));
    const AlgebraElement a = alg.add(alg.one(), alg.element(gen_element(ctx, "a")));
    g.check(out, "(1+c)(1+a)^2", alg.mul(c, alg.pow(a, 2)), {{1, 2, 1, 0}}, 4);
    g.check(out, "u^2", u2, {{m1, 2, 0, 0}, {mu, 0, 0, 1}}, 4);
    g.check(out, "u^2v", alg.mul(u2, v), {{m1, 2, 1, 0}, {mu, 0, 1, 1}}, 4);
    g.check(out, "u^3", u3, {{m1, 3, 0, 0}, {mm1, 2, 1, 0}, {mu, 1, 0, 1}, {f.mul(mu, mu), 0, 1, 1}},
            4);
  }
  for (int k = 1; 2 * k + 1 < s + 1; ++k) {
    const AlgebraElement uvk = w.pw(uv, k), vuk = w.pw(vu, k);
    const AlgebraElement uvk1 = w.pw(uv, k - 1), vuk1 = w.pw(vu, k - 1);
    const AlgebraElement uvk_u = alg.mul(uvk, u);
    const AlgebraElement u2v_uvk1 = w.prod({u2, v, uvk1});
    const AlgebraElement vuk_v = alg.mul(vuk, v);
    const AlgebraElement u3_vuk1 = alg.mul(u3, vuk1);
    const AlgebraElement u2_vuk1 = alg.mul(u2, vuk1);
    const AlgebraElement u2_uvk1 = alg.mul(u2, uvk1);
    if (k % 2 == 1) {
      const int j = (k - 1) / 2;
      const int n = 4 * j;
      const std::string t = "odd:";
      gr.check(out, idx(t + "(uv)^k u", k), uvk_u,
               {{1, n + 3, 0, 0}, {1, n + 2, 1, 0}, {1, n + 1, 0, 1}}, n + 4);
      gr.check(out, idx(t + "u^2v(uv)^(k-1)", k), u2v_uvk1, {{m1, n + 2, 1, 0}, {1, n, 1, 1}},
               n + 4);
      gr.check(out, idx(t + "(vu)^k v", k), vuk_v, {{1, n + 2, 1, 0}, {1, n, 1, 1}}, n + 4);
      gr.check(out, idx(t + "u^3(vu)^(k-1)", k), u3_vuk1,
               {{m1, n + 3, 0, 0}, {m1, n + 3, 1, 0}, {m1, n, 1, 1}, {mu, n + 1, 0, 1}}, n + 4);
      gr.check(out, idx(t + "u^2(vu)^(k-1)", k), u2_vuk1,
               {{m1, n + 2, 0, 0}, {m1, n + 1, 1, 0}, {mu, n, 0, 1}, {1, n - 1, 1, 1}}, n + 3);
      gr.check(out, idx(t + "(vu)^k", k), vuk,
               {{1, n + 2, 0, 0}, {1, n + 1, 1, 0}, {1, n, 0, 1}}, n + 3);
      gr.check(out, idx(t + "u^2(uv)^(k-1)", k), u2_uvk1, {{m1, n + 1, 1, 0}, {1, n - 1, 1, 1}},
               n + 3);
      gr.check(out, idx(t + "(uv)^k", k), uvk, {{1, n + 1, 1, 0}}, n + 3);
    } else {
      const int j = k / 2;
      const int n = 4 * j;
      const std::string t = "even:";
      gr.check(out, idx(t + "(uv)^k u", k), uvk_u,
               {{1, n + 1, 0, 0}, {1, n, 1, 0}, {1, n - 2, 1, 1}}, n + 2);
      gr.check(out, idx(t + "u^2v(uv)^(k-1)", k), u2v_uvk1, {{m1, n, 1, 0}, {1, n - 2, 1, 1}},
               n + 2);
      gr.check(out, idx(t + "u^3(vu)^(k-1)", k), u3_vuk1,
               {{m1, n + 1, 0, 0}, {m1, n, 1, 0}, {mm1, n - 2, 1, 1}, {1, n - 1, 0, 1}}, n + 2);
      gr.check(out, idx(t + "(vu)^k v", k), vuk_v, {{1, n, 1, 0}}, n + 2);
      gr.check(out, idx(t + "(uv)^k", k), uvk, {{1, n - 1, 1, 0}, {1, n - 3, 1, 1}}, n + 1);
      gr.check(out, idx(t + "u^2(vu)^(k-1)", k), u2_vuk1,
               {{m1, n, 0, 0}, {m1, n - 1, 1, 0}, {1, n - 2, 0, 1}, {mu, n - 3, 1, 1}}, n + 1);
      gr.check(out, idx(t + "(vu)^k", k), vuk,
               {{1, n, 0, 0}, {1, n - 1, 1, 0}, {1, n - 3, 1, 1}}, n + 1);
      gr.check(out, idx(t + "u^2(uv)^(k-1)", k), u2_uvk1, {{m1, n - 1, 1, 0}, {mu, n - 3, 1, 1}},
               n + 1);
    }
  }
  return out;
}

bool independent_modulo(const AlgebraContext& ctx, const std::vector<AlgebraElement>& xs, int n) {
  Subspace s(ctx.alg.field(), ctx.alg.dim());
  if (n >= 1) {
    for (const auto& r : ctx.filt.level(n).rows()) s.add(r);
  }
  const int base = s.rank();
  for (const auto& x : xs) s.add(x);
  return s.rank() - base == static_cast<int>(xs.size());
}

std::vector<IndependenceCheck> type_a_independence(const AlgebraContext& ctx, Scalar mu) {
  const auto [u, v] = uv_pair(ctx, mu);
  const Words w{ctx.alg, u, v};
  std::vector<IndependenceCheck> out;
  for (int i = 4; i < ctx.filt.nilpotency_index(); ++i) {
    std::vector<AlgebraElement> xs{w.pw(u, i), w.prod({v, w.pw(u, i - 1)}),
                                   w.prod({u, v, w.pw(u, i - 2)}),
                                   w.prod({v, u, v, w.pw(u, i - 3)})};
    out.push_back({i, "{u^i, vu^(i-1), uvu^(i-2), vuvu^(i-3)}",
                   ctx.filt.rank(i) - ctx.filt.rank(i + 1), independent_modulo(ctx, xs, i + 1)});
  }
  return out;
}

std::vector<IndependenceCheck> type_b_independence(const AlgebraContext& ctx, Scalar mu) {
  const auto [u, v] = uv_pair(ctx, mu);
  const Words w{ctx.alg, u, v};
  const auto& alg = ctx.alg;
  const AlgebraElement uv = w.uv(), vu = w.vu(), u2 = w.pw(u, 2), u3 = w.pw(u, 3);
  const int s = ctx.filt.nilpotency_index();
  std::vector<IndependenceCheck> out;
  for (int k = 2; 2 * k < s; ++k) {
    const AlgebraElement uvk = w.pw(uv, k), vuk = w.pw(vu, k);
    const AlgebraElement uvk1 = w.pw(uv, k - 1), vuk1 = w.pw(vu, k - 1);
    const std::vector<AlgebraElement> even{uvk, alg.mul(u2, vuk1), vuk, alg.mul(u2, uvk1)};
    const int n = 2 * k;
    out.push_back({n + 1, "{(uv)^k, u^2(vu)^(k-1), (vu)^k, u^2(uv)^(k-1)}",
                   ctx.filt.rank(n) - ctx.filt.rank(n + 1), independent_modulo(ctx, even, n + 1)});
    if (n + 1 >= s) continue;
    const std::vector<AlgebraElement> odd{alg.mul(uvk, u), w.prod({u2, v, uvk1}),
                                          alg.mul(vuk, v), alg.mul(u3, vuk1)};
    for (int mod : {n + 1, n + 2}) {
      out.push_back({mod, "{(uv)^k u, u^2v(uv)^(k-1), (vu)^k v, u^3(vu)^(k-1)}",
                     ctx.filt.rank(mod - 1) - ctx.filt.rank(mod),
                     independent_modulo(ctx, odd, mod)});
    }
  }
  return out;
}

}  // namespace kgb
