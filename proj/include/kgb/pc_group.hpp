#pragma once

#include <cstdint>
#include <map>
#include <memory>
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

namespace kgb {

/// One factor g^e of a word; `gen` indexes the presentation's generator list.
struct Syllable {
  int gen = 0;
  long long exp = 0;

  bool operator==(const Syllable&) const = default;
};

using Word = std::vector<Syllable>;

/// A power-commutator presentation of a finite p-group.
///
/// Generators g_1..g_r carry relative orders o_i with power relations
/// g_i^{o_i} = powers[i] and commutator relations (g_j, g_i) = word for j > i
/// (identity when absent). Normal forms are g_1^{e_1} ... g_r^{e_r} with
/// 0 <= e_i < o_i. The commutator convention is (x, y) = x^-1 y^-1 x y.
struct PcPresentation {
  int p = 2;
  /// Expected order is p^m.
  int m = 1;
  std::vector<std::string> names;
  std::vector<int> orders;
  std::vector<Word> powers;
  std::map<std::pair<int, int>, Word> commutators;  // key (hi, lo), hi > lo
  /// Human-readable label, e.g. "G5(m=4)".
  std::string label;
  /// Catalog parameters the presentation was built from.
  std::map<std::string, long long> params;

  int rank() const noexcept { return static_cast<int>(names.size()); }
  int generator_index(const std::string& name) const;  // -1 when unknown
};

/// Outcome of structural checks on a presentation.
struct ValidationReport {
  bool ok = false;
  long long realized_order = 0;
  long long expected_order = 0;
  bool associative = false;
  long long triples_checked = 0;
  bool relations_hold = false;
  std::string failure;  // first counterexample or problem, empty on success
};

/// Rewrites a positive word to normal form by repeatedly replacing the
/// rightmost (or leftmost) out-of-order pair g_j g_i (j > i) with
/// g_i g_j (g_j, g_i) and folding g^{o} into its power word. Returns
/// std::nullopt when the step budget runs out.
std::optional<std::vector<int>> collect_positive(const PcPresentation& pres, Word word,
                                                 long long step_budget = 1000000,
                                                 bool rightmost = true);

using ElementSet = std::vector<int>;  // sorted element indices

/// A presentation realized as an explicit group with a full Cayley table.
///
/// Elements are indexed by mixed radix over the exponent tuple with the
/// first generator least significant: index(e) = e_1 + o_1 (e_2 + o_2 (...)).
/// Index 0 is the identity.
class PcGroup {
 public:
  /// Builds the multiplication table by collection. Throws
  /// Error(kInconsistentPresentation) if collection exceeds its budget or
  /// the resulting table is not a group satisfying the relations.
  explicit PcGroup(PcPresentation pres);

  const PcPresentation& presentation() const noexcept { return pres_; }
  int order() const noexcept { return order_; }
  int p() const noexcept { return pres_.p; }
  int rank() const noexcept { return pres_.rank(); }
  std::string label() const { return pres_.label; }

  int identity() const noexcept { return 0; }
  int mul(int x, int y) const { return table_[static_cast<std::size_t>(x) * order_ + y]; }
  int inverse(int x) const { return inverse_[x]; }
  int power(int x, long long n) const;
  int commutator(int x, int y) const;  // x^-1 y^-1 x y
  int element_order(int x) const;
  int generator(int i) const { return generator_ids_[i]; }

  std::vector<int> exponents(int x) const;
  int from_exponents(std::span<const int> exps) const;
  std::string format(int x) const;

  /// Normal form of an arbitrary word (negative exponents allowed).
  int collect(const Word& word) const;
  int evaluate(const Word& word) const;  // same value, via the table

  ElementSet all() const;
  ElementSet subgroup_closure(const ElementSet& gens) const;
  ElementSet derived_subgroup() const;
  /// Subgroup generated by the p^n-th powers.
  ElementSet agemo(int n) const;
  ElementSet frattini() const;
  ElementSet center() const;
  /// Subgroup generated by (x, y) for x in a, y in b.
  ElementSet commutator_subgroup(const ElementSet& a, const ElementSet& b) const;
  ElementSet power_subgroup(const ElementSet& h, int e) const;  // <x^e : x in h>
  bool is_abelian() const;
  bool is_powerful() const;

  bool is_subset(const ElementSet& a, const ElementSet& b) const;

 private:
  PcPresentation pres_;
  int order_ = 1;
  std::vector<int> radix_;
  std::vector<int> table_;
  std::vector<int> inverse_;
  std::vector<int> generator_ids_;
};

/// Associativity, relation satisfaction and order checks.
ValidationReport validate(const PcPresentation& pres);

/// Direct product presentation: generators of `a` then `b`, names suffixed
/// when they clash.
PcPresentation direct_product(const PcPresentation& a, const PcPresentation& b);

}  // namespace kgb
