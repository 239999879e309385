#include "kgb/pc_group.hpp"

#include <algorithm>
#include <random>
#include <sstream>

#include "kgb/error.hpp"

namespace kgb {

int PcPresentation::generator_index(const std::string& name) const {
  for (int i = 0; i < rank(); ++i) {
    if (names[i] == name) return i;
  }
  return -1;
}

namespace {

// Merges equal neighbours, folds exponents >= o into the power word and
// drops empty syllables. Returns false if nothing changed.
bool normalize_syllables(const PcPresentation& pres, Word& w) {
  bool changed = false;
  Word out;
  out.reserve(w.size() + 4);
  for (std::size_t k = 0; k < w.size(); ++k) {
    const Syllable& s = w[k];
    if (s.exp == 0) {
      changed = true;
      continue;
    }
    if (!out.empty() && out.back().gen == s.gen) {
      out.back().exp += s.exp;
      changed = true;
    } else {
      out.push_back(s);
    }
  }
  // Fold the first oversized syllable; the caller loops until stable.
  for (std::size_t k = 0; k < out.size(); ++k) {
    const int o = pres.orders[out[k].gen];
    if (out[k].exp >= o) {
      const long long q = out[k].exp / o;
      out[k].exp %= o;
      Word replacement;
      if (out[k].exp > 0) replacement.push_back(out[k]);
      for (long long t = 0; t < q; ++t) {
        const Word& pw = pres.powers[out[k].gen];
        replacement.insert(replacement.end(), pw.begin(), pw.end());
      }
      Word next(out.begin(), out.begin() + static_cast<std::ptrdiff_t>(k));
      next.insert(next.end(), replacement.begin(), replacement.end());
      next.insert(next.end(), out.begin() + static_cast<std::ptrdiff_t>(k) + 1, out.end());
      w = std::move(next);
      return true;
    }
  }
  if (changed || out.size() != w.size()) {
    w = std::move(out);
    return true;
  }
  return false;
}

const Word& commutator_word(const PcPresentation& pres, int hi, int lo) {
  static const Word kEmpty;
  auto it = pres.commutators.find({hi, lo});
  return it == pres.commutators.end() ? kEmpty : it->second;
}

void check_word(const PcPresentation& pres, const Word& w, bool allow_negative) {
  for (const auto& s : w) {
    if (s.gen < 0 || s.gen >= pres.rank()) {
      throw Error(ErrorCode::kInvalidArgument, "word references unknown generator");
    }
    if (!allow_negative && s.exp < 0) {
      throw Error(ErrorCode::kInvalidArgument, "positive word expected");
    }
  }
}

// Collection of an inconsistent presentation can grow words without bound.
constexpr std::size_t kMaxSyllables = 1 << 14;

}  // namespace

std::optional<std::vector<int>> collect_positive(const PcPresentation& pres, Word word,
                                                 long long step_budget, bool rightmost) {
  check_word(pres, word, false);
  long long steps = 0;
  for (;;) {
    while (normalize_syllables(pres, word)) {
      if (++steps > step_budget) return std::nullopt;
    }
    // Rightmost inversion first: the suffix after it stays collected, so
    // powers of a generator pushed rightwards merge before they spread.
    std::size_t k = word.size();
    if (rightmost) {
      for (std::size_t t = word.size(); t-- > 1;) {
        if (word[t - 1].gen > word[t].gen) {
          k = t - 1;
          break;
        }
      }
    } else {
      for (std::size_t t = 1; t < word.size(); ++t) {
        if (word[t - 1].gen > word[t].gen) {
          k = t - 1;
          break;
        }
      }
    }
    if (k == word.size()) break;
    if (++steps > step_budget || word.size() > kMaxSyllables) return std::nullopt;
    // g_j^{x} g_i^{y} -> g_j^{x-1} g_i g_j (g_j, g_i) g_i^{y-1}
    const Syllable hi = word[k];
    const Syllable lo = word[k + 1];
    Word mid;
    mid.push_back({hi.gen, hi.exp - 1});
    mid.push_back({lo.gen, 1});
    mid.push_back({hi.gen, 1});
    const Word& c = commutator_word(pres, hi.gen, lo.gen);
    mid.insert(mid.end(), c.begin(), c.end());
    mid.push_back({lo.gen, lo.exp - 1});
    Word next(word.begin(), word.begin() + static_cast<std::ptrdiff_t>(k));
    next.insert(next.end(), mid.begin(), mid.end());
    next.insert(next.end(), word.begin() + static_cast<std::ptrdiff_t>(k) + 2, word.end());
    word = std::move(next);
  }
  std::vector<int> exps(pres.rank(), 0);
  for (const auto& s : word) exps[s.gen] = static_cast<int>(s.exp);
  return exps;
}

namespace {

struct Realization {
  int order = 1;
  std::vector<int> radix;
  std::vector<int> table;
  std::vector<int> inverse;
  std::vector<int> generator_ids;
  std::string failure;
};

int index_of(const std::vector<int>& radix, std::span<const int> exps) {
  int idx = 0;
  for (std::size_t i = 0; i < exps.size(); ++i) idx += exps[i] * radix[i];
  return idx;
}

Word normal_word(const PcPresentation& pres, const std::vector<int>& radix, int x) {
  Word w;
  for (int i = 0; i < pres.rank(); ++i) {
    const int e = (x / radix[i]) % pres.orders[i];
    if (e != 0) w.push_back({i, e});
  }
  return w;
}

// Builds the Cayley table from right multiplication by generators. Returns
// false with `failure` set when collection breaks down.
bool realize(const PcPresentation& pres, Realization& r) {
  const int rank = pres.rank();
  if (static_cast<int>(pres.orders.size()) != rank ||
      static_cast<int>(pres.powers.size()) != rank) {
    r.failure = "generator, order and power lists differ in length";
    return false;
  }
  long long order = 1;
  for (int i = 0; i < rank; ++i) {
    if (pres.orders[i] < 2) {
      r.failure = "relative order of " + pres.names[i] + " must be >= 2";
      return false;
    }
    order *= pres.orders[i];
    if (order > 4096) {
      r.failure = "group too large for explicit realization";
      return false;
    }
  }
  for (int i = 0; i < rank; ++i) {
    for (const auto& s : pres.powers[i]) {
      if (s.gen < 0 || s.gen >= rank) {
        r.failure = "unknown generator in power relation";
        return false;
      }
    }
  }
  for (const auto& [key, w] : pres.commutators) {
    if (key.first <= key.second || key.first >= rank || key.second < 0) {
      r.failure = "commutator relation keys must satisfy rank > hi > lo >= 0";
      return false;
    }
    for (const auto& s : w) {
      if (s.gen < 0 || s.gen >= rank) {
        r.failure = "unknown generator in commutator relation";
        return false;
      }
    }
  }
  r.order = static_cast<int>(order);
  r.radix.assign(rank, 1);
  for (int i = 1; i < rank; ++i) r.radix[i] = r.radix[i - 1] * pres.orders[i - 1];

  // right[x * rank + i] = x * g_i
  std::vector<int> right(static_cast<std::size_t>(r.order) * rank);
  for (int x = 0; x < r.order; ++x) {
    for (int i = 0; i < rank; ++i) {
      Word w = normal_word(pres, r.radix, x);
      w.push_back({i, 1});
      auto nf = collect_positive(pres, std::move(w));
      if (!nf) {
        r.failure = "collection budget exceeded multiplying by " + pres.names[i];
        return false;
      }
      right[static_cast<std::size_t>(x) * rank + i] = index_of(r.radix, *nf);
    }
  }
  r.table.assign(static_cast<std::size_t>(r.order) * r.order, 0);
  for (int x = 0; x < r.order; ++x) {
    for (int y = 0; y < r.order; ++y) {
      int acc = x;
      for (int i = 0; i < rank; ++i) {
        const int e = (y / r.radix[i]) % pres.orders[i];
        for (int t = 0; t < e; ++t) acc = right[static_cast<std::size_t>(acc) * rank + i];
      }
      r.table[static_cast<std::size_t>(x) * r.order + y] = acc;
    }
  }
  r.inverse.assign(r.order, -1);
  for (int x = 0; x < r.order; ++x) {
    for (int y = 0; y < r.order; ++y) {
      if (r.table[static_cast<std::size_t>(x) * r.order + y] == 0) {
        r.inverse[x] = y;
        break;
      }
    }
    if (r.inverse[x] < 0) {
      r.failure = "element without right inverse";
      return false;
    }
  }
  r.generator_ids.resize(rank);
  for (int i = 0; i < rank; ++i) r.generator_ids[i] = r.radix[i];
  return true;
}

int table_eval(const PcPresentation& pres, const Realization& r, const Word& w) {
  int acc = 0;
  for (const auto& s : w) {
    const int g = r.generator_ids[s.gen];
    // exponent may be negative; use the inverse for those
    int base = g;
    long long e = s.exp;
    if (e < 0) {
      base = r.inverse[g];
      e = -e;
    }
    for (long long t = 0; t < e; ++t) acc = r.table[static_cast<std::size_t>(acc) * r.order + base];
  }
  (void)pres;
  return acc;
}

long long ipow(long long b, int e) {
  long long r = 1;
  for (int i = 0; i < e; ++i) r *= b;
  return r;
}

}  // namespace

ValidationReport validate(const PcPresentation& pres) {
  ValidationReport rep;
  rep.expected_order = ipow(pres.p, pres.m);
  Realization r;
  if (!realize(pres, r)) {
    rep.failure = r.failure;
    return rep;
  }
  rep.realized_order = r.order;
  auto mul = [&](int x, int y) { return r.table[static_cast<std::size_t>(x) * r.order + y]; };

  // Associativity: exhaustive up to order 64, sampled beyond.
  rep.associative = true;
  if (r.order <= 64) {
    for (int x = 0; x < r.order && rep.associative; ++x) {
      for (int y = 0; y < r.order && rep.associative; ++y) {
        const int xy = mul(x, y);
        for (int z = 0; z < r.order; ++z) {
          ++rep.triples_checked;
          if (mul(xy, z) != mul(x, mul(y, z))) {
            rep.associative = false;
            rep.failure = "associativity fails at (" + std::to_string(x) + ", " +
                          std::to_string(y) + ", " + std::to_string(z) + ")";
            break;
          }
        }
      }
    }
  } else {
    std::mt19937_64 rng(0x5eed);
    std::uniform_int_distribution<int> pick(0, r.order - 1);
    for (long long t = 0; t < 200000; ++t) {
      const int x = pick(rng), y = pick(rng), z = pick(rng);
      ++rep.triples_checked;
      if (mul(mul(x, y), z) != mul(x, mul(y, z))) {
        rep.associative = false;
        rep.failure = "associativity fails at (" + std::to_string(x) + ", " +
                      std::to_string(y) + ", " + std::to_string(z) + ")";
        break;
      }
    }
  }

  // Relations evaluated through the table.
  rep.relations_hold = true;
  const int rank = pres.rank();
  for (int i = 0; i < rank && rep.relations_hold; ++i) {
    const int lhs = table_eval(pres, r, Word{{i, pres.orders[i]}});
    const int rhs = table_eval(pres, r, pres.powers[i]);
    if (lhs != rhs) {
      rep.relations_hold = false;
      if (rep.failure.empty()) rep.failure = "power relation for " + pres.names[i] + " fails";
    }
  }
  for (int j = 0; j < rank && rep.relations_hold; ++j) {
    for (int i = 0; i < j; ++i) {
      const int gj = r.generator_ids[j], gi = r.generator_ids[i];
      const int lhs = mul(mul(r.inverse[gj], r.inverse[gi]), mul(gj, gi));
      auto it = pres.commutators.find({j, i});
      const int rhs = it == pres.commutators.end() ? 0 : table_eval(pres, r, it->second);
      if (lhs != rhs) {
        rep.relations_hold = false;
        if (rep.failure.empty()) {
          rep.failure = "commutator relation (" + pres.names[j] + "," + pres.names[i] + ") fails";
        }
        break;
      }
    }
  }

  rep.ok = rep.associative && rep.relations_hold && rep.realized_order == rep.expected_order;
  if (!rep.ok && rep.failure.empty()) {
    rep.failure = "realized order " + std::to_string(rep.realized_order) + " differs from expected " +
                  std::to_string(rep.expected_order);
  }
  return rep;
}

PcGroup::PcGroup(PcPresentation pres) : pres_(std::move(pres)) {
  ValidationReport rep = validate(pres_);
  if (!rep.ok) {
    throw Error(ErrorCode::kInconsistentPresentation,
                "presentation " + pres_.label + " failed validation: " + rep.failure);
  }
  Realization r;
  realize(pres_, r);
  order_ = r.order;
  radix_ = std::move(r.radix);
  table_ = std::move(r.table);
  inverse_ = std::move(r.inverse);
  generator_ids_ = std::move(r.generator_ids);
}

int PcGroup::power(int x, long long n) const {
  int base = x;
  if (n < 0) {
    base = inverse(x);
    n = -n;
  }
  int acc = identity();
  while (n > 0) {
    if (n & 1) acc = mul(acc, base);
    base = mul(base, base);
    n >>= 1;
  }
  return acc;
}

int PcGroup::commutator(int x, int y) const {
  return mul(mul(inverse(x), inverse(y)), mul(x, y));
}

int PcGroup::element_order(int x) const {
  int n = 1;
  int acc = x;
  while (acc != identity()) {
    acc = mul(acc, x);
    ++n;
  }
  return n;
}

std::vector<int> PcGroup::exponents(int x) const {
  std::vector<int> e(rank());
  for (int i = 0; i < rank(); ++i) e[i] = (x / radix_[i]) % pres_.orders[i];
  return e;
}

int PcGroup::from_exponents(std::span<const int> exps) const {
  if (static_cast<int>(exps.size()) != rank()) {
    throw Error(ErrorCode::kInvalidArgument, "exponent tuple has wrong length");
  }
  for (int i = 0; i < rank(); ++i) {
    if (exps[i] < 0 || exps[i] >= pres_.orders[i]) {
      throw Error(ErrorCode::kInvalidArgument, "exponent out of range for " + pres_.names[i]);
    }
  }
  return index_of(radix_, exps);
}

std::string PcGroup::format(int x) const {
  const auto e = exponents(x);
  std::ostringstream os;
  bool any = false;
  for (int i = 0; i < rank(); ++i) {
    if (e[i] == 0) continue;
    os << pres_.names[i];
    if (e[i] != 1) os << '^' << e[i];
    any = true;
  }
  return any ? os.str() : "1";
}

int PcGroup::collect(const Word& word) const {
  check_word(pres_, word, true);
  Word positive;
  positive.reserve(word.size());
  for (const auto& s : word) {
    long long e = s.exp;
    if (e < 0) {
      const long long ord = element_order(generator(s.gen));
      e = ((e % ord) + ord) % ord;
    }
    if (e != 0) positive.push_back({s.gen, e});
  }
  auto nf = collect_positive(pres_, std::move(positive));
  if (!nf) throw Error(ErrorCode::kInconsistentPresentation, "collection budget exceeded");
  return index_of(radix_, *nf);
}

int PcGroup::evaluate(const Word& word) const {
  check_word(pres_, word, true);
  int acc = identity();
  for (const auto& s : word) acc = mul(acc, power(generator(s.gen), s.exp));
  return acc;
}

ElementSet PcGroup::all() const {
  ElementSet s(order_);
  for (int i = 0; i < order_; ++i) s[i] = i;
  return s;
}

ElementSet PcGroup::subgroup_closure(const ElementSet& gens) const {
  std::vector<char> in(order_, 0);
  in[identity()] = 1;
  std::vector<int> frontier{identity()};
  std::vector<int> members{identity()};
  // Finite group: closure under right multiplication by generators suffices.
  while (!frontier.empty()) {
    std::vector<int> next;
    for (int x : frontier) {
      for (int g : gens) {
        const int y = mul(x, g);
        if (!in[y]) {
          in[y] = 1;
          members.push_back(y);
          next.push_back(y);
        }
      }
    }
    frontier = std::move(next);
  }
  std::sort(members.begin(), members.end());
  return members;
}

ElementSet PcGroup::commutator_subgroup(const ElementSet& a, const ElementSet& b) const {
  std::vector<char> seen(order_, 0);
  ElementSet gens;
  for (int x : a) {
    for (int y : b) {
      const int c = commutator(x, y);
      if (!seen[c]) {
        seen[c] = 1;
        gens.push_back(c);
      }
    }
  }
  return subgroup_closure(gens);
}

ElementSet PcGroup::power_subgroup(const ElementSet& h, int e) const {
  std::vector<char> seen(order_, 0);
  ElementSet gens;
  for (int x : h) {
    const int y = power(x, e);
    if (!seen[y]) {
      seen[y] = 1;
      gens.push_back(y);
    }
  }
  return subgroup_closure(gens);
}

ElementSet PcGroup::derived_subgroup() const {
  const ElementSet g = all();
  return commutator_subgroup(g, g);
}

ElementSet PcGroup::agemo(int n) const {
  int e = 1;
  for (int i = 0; i < n; ++i) e *= p();
  return power_subgroup(all(), e);
}

ElementSet PcGroup::frattini() const {
  ElementSet gens = derived_subgroup();
  const ElementSet pw = agemo(1);
  gens.insert(gens.end(), pw.begin(), pw.end());
  return subgroup_closure(gens);
}

ElementSet PcGroup::center() const {
  ElementSet z;
  for (int x = 0; x < order_; ++x) {
    bool central = true;
    for (int i = 0; i < rank() && central; ++i) {
      const int g = generator(i);
      central = mul(x, g) == mul(g, x);
    }
    if (central) z.push_back(x);
  }
  return z;
}

bool PcGroup::is_abelian() const {
  return derived_subgroup().size() == 1;
}

bool PcGroup::is_subset(const ElementSet& a, const ElementSet& b) const {
  return std::includes(b.begin(), b.end(), a.begin(), a.end());
}

bool PcGroup::is_powerful() const {
  const ElementSet derived = derived_subgroup();
  const ElementSet pw = agemo(p() == 2 ? 2 : 1);
  return is_subset(derived, pw);
}

PcPresentation direct_product(const PcPresentation& a, const PcPresentation& b) {
  if (a.p != b.p) {
    throw Error(ErrorCode::kInvalidArgument, "direct product factors must share the prime");
  }
  PcPresentation out;
  out.p = a.p;
  out.m = a.m + b.m;
  out.names = a.names;
  out.orders = a.orders;
  out.powers = a.powers;
  out.commutators = a.commutators;
  const int shift = a.rank();
  for (int i = 0; i < b.rank(); ++i) {
    std::string name = b.names[i];
    while (std::find(out.names.begin(), out.names.end(), name) != out.names.end()) name += "'";
    out.names.push_back(name);
    out.orders.push_back(b.orders[i]);
    Word w = b.powers[i];
    for (auto& s : w) s.gen += shift;
    out.powers.push_back(std::move(w));
  }
  for (const auto& [key, w] : b.commutators) {
    Word shifted = w;
    for (auto& s : shifted) s.gen += shift;
    out.commutators[{key.first + shift, key.second + shift}] = std::move(shifted);
  }
  out.label = a.label + "x" + b.label;
  return out;
}

}  // namespace kgb
