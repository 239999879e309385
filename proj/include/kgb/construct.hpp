#pragma once

#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "kgb/fmb.hpp"

namespace kgb {

struct ConstructionResult {
  std::string family;
  std::optional<Scalar> mu;
  /// Candidate has |G| distinct nonzero elements and verifies.
  bool ok = false;
  bool verified = false;
  std::string failure;
  int distinct_nonzero = 0;
  Basis basis;
  Verdict verdict;
};

/// Catalog family of a presentation, e.g. "G5" for label "G5(m=4)".
std::string family_of(const PcPresentation& pres);

/// Products (g_1 - 1)^{n_1} ... (g_s - 1)^{n_s}, 0 <= n_i < order(g_i), for
/// a decomposition of an abelian group into cyclic factors (element, order).
ConstructionResult abelian_basis(const AlgebraContext& ctx,
                                 const std::vector<std::pair<int, int>>& decomposition);
/// Same, with the pc generators as the cyclic factors.
ConstructionResult abelian_basis(const AlgebraContext& ctx);

/// All products b_1 b_2 under the embeddings of KG_1 and KG_2 into
/// K[G_1 x G_2], where the product presentation lists G_1's generators first.
Basis product_basis(const AlgebraContext& prod, const AlgebraContext& left, const Basis& b1,
                    const AlgebraContext& right, const Basis& b2);

/// b_2^i b_1^j b_2^k b_3^l with b_1 = (1+a)+(1+c), b_2 = 1+c, b_3 = 1+d.
ConstructionResult g4_basis(const AlgebraContext& ctx);

/// u = (1+a) + mu (1+c), v = 1+c.
std::pair<AlgebraElement, AlgebraElement> uv_pair(const AlgebraContext& ctx, Scalar mu);

/// {1, u^i, v u^j, vuv u^k, uv u^l}
ConstructionResult type_a_basis(const AlgebraContext& ctx, Scalar mu);
/// {(uv)^i u, (vu)^i v, (uv)^i, (vu)^i, u^2 v (uv)^j, u^3 (vu)^j,
///  u^2 (vu)^j, u^2 (uv)^j}
ConstructionResult type_b_basis(const AlgebraContext& ctx, Scalar mu);

bool type_a_applicable(const PcPresentation& pres);
bool type_b_applicable(const PcPresentation& pres);

struct MuSweep {
  std::vector<Scalar> passing;
  std::vector<ConstructionResult> results;  // one per scalar, in order
};

/// Runs the type A or B construction for every mu in K.
MuSweep sweep_mu(const AlgebraContext& ctx, const std::string& family);

/// One graded congruence lhs ≡ rhs (mod I^modulus).
struct CongruenceCheck {
  std::string label;
  int modulus = 0;
  bool holds = false;
};

/// The graded congruences claimed for the type A and type B words, at every
/// exponent where the modulus stays below the nilpotency index.
std::vector<CongruenceCheck> type_a_congruences(const AlgebraContext& ctx, Scalar mu);
std::vector<CongruenceCheck> type_b_congruences(const AlgebraContext& ctx, Scalar mu);

/// Whether the given elements are linearly independent modulo I^n.
bool independent_modulo(const AlgebraContext& ctx, const std::vector<AlgebraElement>& xs, int n);

struct IndependenceCheck {
  int level = 0;
  std::string set;
  int quotient_dim = 0;
  bool holds = false;
};

/// {u^i, v u^{i-1}, uv u^{i-2}, vuv u^{i-3}} modulo I^{i+1} for 3 < i < s.
std::vector<IndependenceCheck> type_a_independence(const AlgebraContext& ctx, Scalar mu);

/// For each k >= 2: the even-length set {(uv)^k, u^2(vu)^{k-1}, (vu)^k,
/// u^2(uv)^{k-1}} modulo I^{2k+1}, and the odd-length set {(uv)^k u,
/// u^2 v (uv)^{k-1}, (vu)^k v, u^3 (vu)^{k-1}} modulo both I^{2k+1} and
/// I^{2k+2}.
std::vector<IndependenceCheck> type_b_independence(const AlgebraContext& ctx, Scalar mu);

}  // namespace kgb
