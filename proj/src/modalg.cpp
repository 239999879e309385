#include "kgb/modalg.hpp"

#include <algorithm>
#include <sstream>

#include "kgb/error.hpp"

namespace kgb {

GroupAlgebra::GroupAlgebra(std::shared_ptr<const PcGroup> group, Field field)
    : group_(std::move(group)), field_(std::move(field)) {
  if (group_->order() > kMaxAlgebraOrder) {
    throw Error(ErrorCode::kParameterOutOfRange,
                "group algebra supports |G| <= " + std::to_string(kMaxAlgebraOrder));
  }
  if (group_->p() != field_.p()) {
    throw Error(ErrorCode::kMismatchedContext,
                "field characteristic " + std::to_string(field_.p()) +
                    " differs from group prime " + std::to_string(group_->p()));
  }
}

void GroupAlgebra::check(const AlgebraElement& x) const {
  if (static_cast<int>(x.size()) != dim()) {
    throw Error(ErrorCode::kMismatchedContext, "algebra element has the wrong length");
  }
}

AlgebraElement GroupAlgebra::element(int g) const {
  AlgebraElement x = zero();
  x[g] = 1;
  return x;
}

AlgebraElement GroupAlgebra::minus_one(int g) const {
  AlgebraElement x = zero();
  x[g] = field_.add(x[g], 1);
  x[0] = field_.sub(x[0], 1);
  return x;
}

AlgebraElement GroupAlgebra::add(const AlgebraElement& x, const AlgebraElement& y) const {
  check(x);
  check(y);
  AlgebraElement z(dim());
  for (int i = 0; i < dim(); ++i) z[i] = field_.add(x[i], y[i]);
  return z;
}

AlgebraElement GroupAlgebra::sub(const AlgebraElement& x, const AlgebraElement& y) const {
  check(x);
  check(y);
  AlgebraElement z(dim());
  for (int i = 0; i < dim(); ++i) z[i] = field_.sub(x[i], y[i]);
  return z;
}

AlgebraElement GroupAlgebra::neg(const AlgebraElement& x) const {
  check(x);
  AlgebraElement z(dim());
  for (int i = 0; i < dim(); ++i) z[i] = field_.neg(x[i]);
  return z;
}

AlgebraElement GroupAlgebra::scale(Scalar s, const AlgebraElement& x) const {
  check(x);
  AlgebraElement z(dim());
  for (int i = 0; i < dim(); ++i) z[i] = field_.mul(s, x[i]);
  return z;
}

AlgebraElement GroupAlgebra::mul(const AlgebraElement& x, const AlgebraElement& y) const {
  check(x);
  check(y);
  const int n = dim();
  AlgebraElement z(n, 0);
  for (int g = 0; g < n; ++g) {
    if (x[g] == 0) continue;
    for (int h = 0; h < n; ++h) {
      if (y[h] == 0) continue;
      const int gh = group_->mul(g, h);
      z[gh] = field_.add(z[gh], field_.mul(x[g], y[h]));
    }
  }
  return z;
}

AlgebraElement GroupAlgebra::mul_group(const AlgebraElement& x, int g) const {
  check(x);
  AlgebraElement z(dim(), 0);
  for (int h = 0; h < dim(); ++h) {
    if (x[h] != 0) z[group_->mul(h, g)] = x[h];
  }
  return z;
}

AlgebraElement GroupAlgebra::pow(const AlgebraElement& x, int n) const {
  AlgebraElement r = one();
  for (int i = 0; i < n; ++i) r = mul(r, x);
  return r;
}

Scalar GroupAlgebra::augmentation(const AlgebraElement& x) const {
  check(x);
  Scalar s = 0;
  for (Scalar c : x) s = field_.add(s, c);
  return s;
}

std::string GroupAlgebra::format(const AlgebraElement& x) const {
  check(x);
  std::ostringstream os;
  bool any = false;
  for (int g = 0; g < dim(); ++g) {
    if (x[g] == 0) continue;
    if (any) os << " + ";
    if (x[g] != 1) os << static_cast<int>(x[g]) << '*';
    os << group_->format(g);
    any = true;
  }
  return any ? os.str() : "0";
}

Filtration::Filtration(const GroupAlgebra& alg) : zero_(alg.field(), alg.dim()) {
  const PcGroup& g = alg.group();
  Subspace level(alg.field(), alg.dim());
  for (int x = 1; x < g.order(); ++x) level.add(alg.minus_one(x));
  // I^n = I^{n-1} * I, and I^{n-1} * I is spanned by v (g_i - 1) for v in a
  // basis of I^{n-1} and g_i running over the pc generators.
  while (level.rank() > 0) {
    Subspace next(alg.field(), alg.dim());
    for (const auto& v : level.rows()) {
      for (int i = 0; i < g.rank(); ++i) {
        next.add(alg.sub(alg.mul_group(v, g.generator(i)), v));
      }
    }
    levels_.push_back(std::move(level));
    level = std::move(next);
  }
}

const Subspace& Filtration::level(int n) const {
  if (n < 1) throw Error(ErrorCode::kInvalidArgument, "ideal power must be >= 1");
  if (n > static_cast<int>(levels_.size())) return zero_;
  return levels_[n - 1];
}

int Filtration::rank(int n) const { return level(n).rank(); }

bool Filtration::contains(const AlgebraElement& x, int n) const {
  if (n <= 0) return true;
  return level(n).contains(x);
}

int Filtration::degree(const AlgebraElement& x) const {
  int d = 0;
  while (d + 1 <= static_cast<int>(levels_.size()) && levels_[d].contains(x)) ++d;
  if (d == static_cast<int>(levels_.size()) && is_zero(x)) return nilpotency_index();
  return d;
}

std::vector<int> Filtration::ranks() const {
  std::vector<int> out;
  for (int n = 1; n <= nilpotency_index(); ++n) out.push_back(rank(n));
  return out;
}

JenningsData::JenningsData(const GroupAlgebra& alg, const Filtration& filt) : alg_(&alg) {
  const PcGroup& g = alg.group();
  const int p = g.p();
  const int n = g.order();

  // D_n by membership of g - 1 in I^n.
  for (int lev = 1;; ++lev) {
    ElementSet d;
    for (int x = 0; x < n; ++x) {
      if (filt.contains(alg.minus_one(x), lev)) d.push_back(x);
    }
    if (d.size() == 1) break;
    d_.push_back(std::move(d));
  }

  // M_1 = G, M_i = <(M_{i-1}, G), M_{ceil(i/p)}^p>.
  m_.push_back(g.all());
  for (int i = 2;; ++i) {
    const ElementSet& prev = m_.back();
    ElementSet c = g.commutator_subgroup(prev, g.all());
    const ElementSet& src = m_[(i + p - 1) / p - 1];
    ElementSet pw = g.power_subgroup(src, p);
    ElementSet gens = c;
    gens.insert(gens.end(), pw.begin(), pw.end());
    ElementSet mi = g.subgroup_closure(gens);
    if (mi.size() == 1) break;
    m_.push_back(std::move(mi));
  }
  series_agree_ = m_ == d_;

  element_weight_.assign(n, 0);
  for (int lev = 1; lev <= length(); ++lev) {
    for (int x : d_[lev - 1]) element_weight_[x] = lev;
  }

  for (int lev = 1; lev <= length(); ++lev) {
    const ElementSet& below = dimension_subgroup(lev + 1);
    ElementSet span = below;
    int index = 0;
    for (int x : d_[lev - 1]) {
      if (std::binary_search(span.begin(), span.end(), x)) continue;
      reps_.push_back({lev, ++index, x});
      ElementSet gens = span;
      gens.push_back(x);
      span = g.subgroup_closure(gens);
      if (span.size() == d_[lev - 1].size()) break;
    }
  }

  // Regular elements: every exponent vector in [0, p)^r.
  const int r = static_cast<int>(reps_.size());
  std::vector<AlgebraElement> factors;
  for (const auto& rep : reps_) factors.push_back(alg.minus_one(rep.element));
  std::vector<int> y(r, 0);
  for (;;) {
    RegularElement re;
    re.y = y;
    re.value = alg.one();
    std::ostringstream name;
    for (int i = 0; i < r; ++i) {
      for (int t = 0; t < y[i]; ++t) re.value = alg.mul(re.value, factors[i]);
      re.weight += reps_[i].level * y[i];
      if (y[i] > 0) {
        name << '(' << g.format(reps_[i].element) << "-1)";
        if (y[i] > 1) name << '^' << y[i];
      }
    }
    re.name = re.weight == 0 ? "1" : name.str();
    regular_.push_back(std::move(re));
    int i = 0;
    while (i < r && ++y[i] == p) y[i++] = 0;
    if (i == r) break;
  }
  std::stable_sort(regular_.begin(), regular_.end(),
                   [](const RegularElement& a, const RegularElement& b) {
                     if (a.weight != b.weight) return a.weight < b.weight;
                     return a.y > b.y;
                   });
  if (static_cast<int>(regular_.size()) != n) {
    throw Error(ErrorCode::kInconsistentPresentation, "Jennings representatives do not match |G|");
  }
  Matrix basis;
  for (const auto& re : regular_) basis.push_back(re.value);
  auto inv = inverse(alg.field(), basis);
  if (!inv) throw Error(ErrorCode::kInconsistentPresentation, "regular elements are dependent");
  coord_ = std::move(*inv);
}

const ElementSet& JenningsData::dimension_subgroup(int n) const {
  if (n < 1) throw Error(ErrorCode::kInvalidArgument, "dimension subgroup index must be >= 1");
  return n <= length() ? d_[n - 1] : trivial_;
}

const ElementSet& JenningsData::jennings_subgroup(int n) const {
  if (n < 1) throw Error(ErrorCode::kInvalidArgument, "Jennings index must be >= 1");
  return n <= static_cast<int>(m_.size()) ? m_[n - 1] : trivial_;
}

int JenningsData::multiplicity(int i) const {
  int c = 0;
  for (const auto& rep : reps_) c += rep.level == i ? 1 : 0;
  return c;
}

std::vector<int> JenningsData::index_set() const {
  std::vector<int> out;
  for (const auto& rep : reps_) {
    if (out.empty() || out.back() != rep.level) out.push_back(rep.level);
  }
  return out;
}

std::vector<AlgebraElement> JenningsData::regular_basis(int t) const {
  std::vector<AlgebraElement> out;
  for (const auto& re : regular_) {
    if (re.weight >= t) out.push_back(re.value);
  }
  return out;
}

std::vector<int> JenningsData::weight_slice(int n) const {
  std::vector<int> out;
  for (int i = 0; i < static_cast<int>(regular_.size()); ++i) {
    if (regular_[i].weight == n) out.push_back(i);
  }
  return out;
}

Vec JenningsData::coordinates(const AlgebraElement& x) const {
  alg_->check(x);
  return row_times(alg_->field(), x, coord_);
}

Vec JenningsData::class_in_quotient(const AlgebraElement& x, int n) const {
  const Vec c = coordinates(x);
  Vec out;
  for (std::size_t i = 0; i < regular_.size(); ++i) {
    if (regular_[i].weight < n && c[i] != 0) {
      throw Error(ErrorCode::kInvalidArgument,
                  "element is not in I^" + std::to_string(n));
    }
    if (regular_[i].weight == n) out.push_back(c[i]);
  }
  return out;
}

AlgebraContext::AlgebraContext(std::shared_ptr<const PcGroup> g, Field f)
    : group(g), alg(std::move(g), std::move(f)), filt(alg), jennings(alg, filt) {}

std::shared_ptr<const AlgebraContext> make_context(const PcPresentation& pres,
                                                   const Field& field) {
  auto g = std::make_shared<const PcGroup>(pres);
  return std::make_shared<const AlgebraContext>(std::move(g), field);
}

}  // namespace kgb
