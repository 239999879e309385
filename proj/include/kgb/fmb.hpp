#pragma once

#include <string>
#include <vector>

#include "kgb/catalog.hpp"
#include "kgb/modalg.hpp"

namespace kgb {

using Basis = std::vector<AlgebraElement>;

struct ClosureViolation {
  int i = 0;
  int j = 0;
  AlgebraElement product;
};

struct PropertyReport {
  bool ok = true;
  /// Property I: first level n where B ∩ I^n fails to span I^n (-1 if none).
  int failing_level = -1;
  /// Property II: first offending pair (-1 if none) and the level k.
  int pair_i = -1;
  int pair_j = -1;
  /// Property III: rank of the subalgebra generated by B \ I^2, and rank I.
  int generated_rank = 0;
  int ideal_rank = 0;
  std::string detail;
};

struct Verdict {
  bool pass = false;
  int size = 0;
  bool is_linear_basis = false;
  int rank = 0;
  bool closure_ok = false;
  long long closure_violations = 0;
  std::vector<ClosureViolation> violations;  // first few only
  /// Condition 2 of the definition: B ∩ I spans I.
  bool radical_ok = false;
  /// Property I at every level.
  bool filtration_ok = false;
  int first_failing_level = -1;
  PropertyReport property1;
  PropertyReport property2;
  PropertyReport property3;
};

/// Checks whether B is a filtered multiplicative basis of KG. B must have
/// |G| elements, or |G| - 1 with the unit implied.
Verdict verify(const AlgebraContext& ctx, Basis basis);

/// B with the unit added when it has |G| - 1 elements and lacks 1.
Basis canonical_basis(const AlgebraContext& ctx, Basis basis);

/// table[i][j] = index of b_i b_j in B, or -1 for zero. Throws
/// Error(kInvalidArgument) if some product leaves B ∪ {0}.
std::vector<std::vector<int>> closure_table(const AlgebraContext& ctx, const Basis& basis);

PropertyReport check_property(const AlgebraContext& ctx, const Basis& basis, int which);

/// A basis file: group spec, field and elements as (exponents, scalar)
/// terms.
struct BasisFile {
  std::string group;
  Params params;
  int p = 2;
  int k = 1;
  Basis elements;
};

std::string write_basis_json(const AlgebraContext& ctx, const BasisFile& file);
/// Parses a basis file against the given context. Throws
/// Error(kMalformedFile) on bad input and Error(kMismatchedContext) when the
/// file's group or field disagree with ctx.
BasisFile read_basis_json(const AlgebraContext& ctx, const std::string& text);

}  // namespace kgb
