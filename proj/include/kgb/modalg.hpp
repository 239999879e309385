#pragma once

#include <memory>
#include <string>
#include <vector>

#include "kgb/field.hpp"
#include "kgb/linalg.hpp"
#include "kgb/pc_group.hpp"

namespace kgb {

/// Coefficients over the group's element enumeration.
using AlgebraElement = Vec;

/// The group algebra KG with dense elements.
class GroupAlgebra {
 public:
  GroupAlgebra(std::shared_ptr<const PcGroup> group, Field field);

  const PcGroup& group() const noexcept { return *group_; }
  std::shared_ptr<const PcGroup> group_ptr() const noexcept { return group_; }
  const Field& field() const noexcept { return field_; }
  int dim() const noexcept { return group_->order(); }

  AlgebraElement zero() const { return AlgebraElement(dim(), 0); }
  AlgebraElement one() const { return element(0); }
  AlgebraElement element(int g) const;
  /// g - 1
  AlgebraElement minus_one(int g) const;

  AlgebraElement add(const AlgebraElement& x, const AlgebraElement& y) const;
  AlgebraElement sub(const AlgebraElement& x, const AlgebraElement& y) const;
  AlgebraElement neg(const AlgebraElement& x) const;
  AlgebraElement scale(Scalar s, const AlgebraElement& x) const;
  AlgebraElement mul(const AlgebraElement& x, const AlgebraElement& y) const;
  /// x * g, a coordinate permutation.
  AlgebraElement mul_group(const AlgebraElement& x, int g) const;
  AlgebraElement pow(const AlgebraElement& x, int n) const;

  Scalar augmentation(const AlgebraElement& x) const;

  /// Throws Error(kMismatchedContext) unless x has length |G|.
  void check(const AlgebraElement& x) const;

  /// e.g. "1 + a + 2*a^2*c"
  std::string format(const AlgebraElement& x) const;

 private:
  std::shared_ptr<const PcGroup> group_;
  Field field_;
};

/// The chain I ⊇ I^2 ⊇ ... ⊇ I^s ⊃ I^{s+1} = 0 of powers of the
/// augmentation ideal, each level in reduced echelon form.
class Filtration {
 public:
  explicit Filtration(const GroupAlgebra& alg);

  /// Least n with I^n = 0.
  int nilpotency_index() const noexcept { return static_cast<int>(levels_.size()) + 1; }
  /// Echelon basis of I^n; n >= 1. Levels past the last are zero.
  const Subspace& level(int n) const;
  int rank(int n) const;
  bool contains(const AlgebraElement& x, int n) const;
  /// Largest n with x in I^n (x != 0); 0 when x is outside I.
  int degree(const AlgebraElement& x) const;
  /// Ranks of I^1 .. I^{s+1}.
  std::vector<int> ranks() const;

 private:
  std::vector<Subspace> levels_;  // levels_[n - 1] = I^n, n <= s
  Subspace zero_;
};

/// A Jennings representative u_{level,index}.
struct JenningsRep {
  int level = 0;
  int index = 0;  // 1-based within the level
  int element = 0;
};

/// Product over the representatives, in (level, index) order, of
/// (u - 1)^{y}.
struct RegularElement {
  std::vector<int> y;
  int weight = 0;
  AlgebraElement value;
  std::string name;
};

/// Dimension subgroups, the Jennings series and the regular basis.
class JenningsData {
 public:
  JenningsData(const GroupAlgebra& alg, const Filtration& filt);

  /// D_n for n = 1 .. last + 1 (D beyond the chain is trivial).
  const ElementSet& dimension_subgroup(int n) const;
  const ElementSet& jennings_subgroup(int n) const;
  /// Number of stored levels; D_n and M_n are trivial for n > this.
  int length() const noexcept { return static_cast<int>(d_.size()); }
  /// True when the recursion and the membership test agree at every level.
  bool series_agree() const noexcept { return series_agree_; }
  /// d_i = log_p |D_i / D_{i+1}|.
  int multiplicity(int i) const;
  /// Levels i with D_i != D_{i+1}.
  std::vector<int> index_set() const;
  const std::vector<JenningsRep>& reps() const noexcept { return reps_; }
  /// Largest n with g in D_n; 0 for the identity.
  int element_weight(int g) const { return element_weight_[g]; }

  /// All |G| regular elements, sorted by weight, then by descending
  /// exponent vector.
  const std::vector<RegularElement>& regular() const noexcept { return regular_; }
  std::vector<AlgebraElement> regular_basis(int t) const;
  /// Positions in regular() of the elements of weight exactly n.
  std::vector<int> weight_slice(int n) const;

  /// Coordinates of x in the regular basis, in the order of regular().
  Vec coordinates(const AlgebraElement& x) const;
  /// Coordinates of x + I^{n+1} over the weight-n regular elements.
  /// Throws Error(kInvalidArgument) when x is not in I^n.
  Vec class_in_quotient(const AlgebraElement& x, int n) const;

 private:
  const GroupAlgebra* alg_;
  std::vector<ElementSet> d_;  // d_[n - 1] = D_n
  std::vector<ElementSet> m_;
  ElementSet trivial_{0};
  bool series_agree_ = true;
  std::vector<JenningsRep> reps_;
  std::vector<int> element_weight_;
  std::vector<RegularElement> regular_;
  Matrix coord_;  // inverse of the regular-basis matrix
};

/// Everything derived from one (group, field) pair; immutable once built.
struct AlgebraContext {
  std::shared_ptr<const PcGroup> group;
  GroupAlgebra alg;
  Filtration filt;
  JenningsData jennings;

  AlgebraContext(std::shared_ptr<const PcGroup> g, Field f);
  AlgebraContext(const AlgebraContext&) = delete;
  AlgebraContext& operator=(const AlgebraContext&) = delete;
};

/// Groups above this order are refused by the algebra layer.
inline constexpr int kMaxAlgebraOrder = 256;

std::shared_ptr<const AlgebraContext> make_context(const PcPresentation& pres, const Field& field);

}  // namespace kgb
