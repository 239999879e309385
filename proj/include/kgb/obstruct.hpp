#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "kgb/fmb.hpp"

namespace kgb {

/// n x n matrix over K; row k gives b_k modulo I^2 in the basis u_{1i} - 1.
using LeadingMatrix = Matrix;

/// Condition tags in evaluation order; kPass means no condition failed.
enum class Condition : std::uint8_t { kPass = 0, kN1, kN4, kN3, kN2, kSingular };

std::string condition_name(Condition c);

/// Precomputed degree-2 and degree-3 classes of products of the
/// (u_{1i} - 1), so classes of words in b_1..b_n are polynomial in A.
class GradedEngine {
 public:
  explicit GradedEngine(const AlgebraContext& ctx);

  const AlgebraContext& context() const noexcept { return *ctx_; }
  int n() const noexcept { return n_; }
  int dim2() const noexcept { return dim2_; }
  int dim3() const noexcept { return dim3_; }

  /// b_k = sum_i A[k][i] (u_{1i} - 1).
  std::vector<AlgebraElement> leading_elements(const LeadingMatrix& a) const;

  /// Class in I^d / I^{d+1} of b_{w_1} ... b_{w_d}, d in {2, 3}, computed
  /// by multiplying in KG.
  Vec graded_word_class(const LeadingMatrix& a, const std::vector<int>& word, int d) const;

  /// The same class through the precomputed tensors.
  Vec fast_class(const LeadingMatrix& a, const std::vector<int>& word) const;

  Condition check_necessary(const LeadingMatrix& a, int t) const;

 private:
  const AlgebraContext* ctx_;
  int n_ = 0;
  int dim2_ = 0;
  int dim3_ = 0;
  std::vector<Vec> t2_;  // t2_[i * n + j]
  std::vector<Vec> t3_;  // t3_[(i * n + j) * n + l]
};

struct ObstructionReport {
  std::string group;
  std::string field;
  int degree = 2;
  int n = 0;
  long long matrices_examined = 0;
  long long expected_matrices = 0;  // |GL_n(q)|
  long long survivor_count = 0;
  std::vector<LeadingMatrix> survivors;  // first kMaxListedSurvivors
  std::string verdict;                   // "OBSTRUCTED" or "INCONCLUSIVE"
  std::vector<Condition> tags;           // one per invertible matrix, in index order
  std::map<std::string, long long> tally;
};

inline constexpr std::size_t kMaxListedSurvivors = 64;

/// |GL_n(q)|
long long gl_order(int n, int q);

/// The invertible matrices in index order: entries read as base-q digits,
/// row-major, first entry least significant.
std::vector<LeadingMatrix> invertible_matrices(const Field& f, int n);

/// Runs check_necessary on every invertible leading matrix. Throws
/// Error(kInvalidArgument) for abelian groups and Error(kBudgetExceeded)
/// when n > 4 or q^{n^2} > 1e8.
ObstructionReport certify(const AlgebraContext& ctx, int t, int workers = 1);

struct SearchReport {
  std::string group;
  std::string field;
  /// "found", "exhausted" or "budget_exhausted"
  std::string outcome;
  long long nodes = 0;
  long long budget = 0;
  /// Whether leading matrices were first filtered by check_necessary.
  bool prefilter = true;
  long long leading_matrices = 0;
  std::optional<Basis> basis;
  std::optional<LeadingMatrix> leading;
  std::optional<Verdict> verdict;
};

/// Depth-first search for an FMB, level by level in the Jennings grading.
/// Requires |G| <= 16 and q <= 4 (Error(kParameterOutOfRange) otherwise).
/// With prefilter off every invertible leading matrix is tried, which makes
/// the search independent of the graded engine.
SearchReport full_search(const AlgebraContext& ctx, long long budget, int workers = 1,
                         bool prefilter = true);

}  // namespace kgb
