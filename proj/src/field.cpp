#include "kgb/field.hpp"

#include "kgb/error.hpp"

namespace kgb {

std::string_view error_code_name(ErrorCode code) {
  switch (code) {
    case ErrorCode::kInvalidArgument: return "INVALID_ARGUMENT";
    case ErrorCode::kUnknownGroup: return "UNKNOWN_GROUP";
    case ErrorCode::kParameterOutOfRange: return "PARAMETER_OUT_OF_RANGE";
    case ErrorCode::kInconsistentPresentation: return "INCONSISTENT_PRESENTATION";
    case ErrorCode::kMalformedFile: return "MALFORMED_FILE";
    case ErrorCode::kBudgetExceeded: return "BUDGET_EXCEEDED";
    case ErrorCode::kMismatchedContext: return "MISMATCHED_CONTEXT";
    case ErrorCode::kDivisionByZero: return "DIVISION_BY_ZERO";
  }
  return "UNKNOWN";
}

bool is_prime(int n) {
  if (n < 2) return false;
  for (int d = 2; d * d <= n; ++d) {
    if (n % d == 0) return false;
  }
  return true;
}

namespace {

// x^2 + c1 x + c0 is irreducible over GF(p) iff it has no root.
bool quadratic_has_root(int p, int c0, int c1) {
  for (int x = 0; x < p; ++x) {
    if ((x * x + c1 * x + c0) % p == 0) return true;
  }
  return false;
}

}  // namespace

Field Field::make(int p, int k) {
  if (!is_prime(p) || p > 13) {
    throw Error(ErrorCode::kInvalidArgument,
                "field characteristic must be a prime <= 13, got " + std::to_string(p));
  }
  if (k != 1 && k != 2) {
    throw Error(ErrorCode::kInvalidArgument,
                "field degree must be 1 or 2, got " + std::to_string(k));
  }
  Field f;
  f.p_ = p;
  f.k_ = k;
  f.q_ = k == 1 ? p : p * p;
  if (k == 2) {
    bool found = false;
    for (int c1 = 0; c1 < p && !found; ++c1) {
      for (int c0 = 0; c0 < p && !found; ++c0) {
        if (!quadratic_has_root(p, c0, c1)) {
          f.modulus_ = {c0, c1, 1};
          found = true;
        }
      }
    }
  }

  const int q = f.q_;
  auto tables = std::make_shared<Tables>();
  tables->add.resize(static_cast<std::size_t>(q) * q);
  tables->mul.resize(static_cast<std::size_t>(q) * q);
  tables->neg.resize(q);
  tables->inv.assign(q, 0);
  const int m0 = f.modulus_[0];
  const int m1 = f.modulus_[1];
  for (int a = 0; a < q; ++a) {
    const int a0 = a % p, a1 = a / p;
    tables->neg[a] = static_cast<Scalar>((p - a0) % p + ((p - a1) % p) * p);
    for (int b = 0; b < q; ++b) {
      const int b0 = b % p, b1 = b / p;
      const int s = (a0 + b0) % p + ((a1 + b1) % p) * p;
      // (a0 + a1 x)(b0 + b1 x) with x^2 = -m1 x - m0.
      int c0 = a0 * b0;
      int c1 = a0 * b1 + a1 * b0;
      const int c2 = a1 * b1;
      c0 -= c2 * m0;
      c1 -= c2 * m1;
      c0 = ((c0 % p) + p) % p;
      c1 = ((c1 % p) + p) % p;
      tables->add[static_cast<std::size_t>(a) * q + b] = static_cast<Scalar>(s);
      tables->mul[static_cast<std::size_t>(a) * q + b] = static_cast<Scalar>(c0 + c1 * p);
    }
  }
  for (int a = 1; a < q; ++a) {
    for (int b = 1; b < q; ++b) {
      if (tables->mul[static_cast<std::size_t>(a) * q + b] == 1) {
        tables->inv[a] = static_cast<Scalar>(b);
        break;
      }
    }
  }
  f.tables_ = std::move(tables);
  return f;
}

Scalar Field::inv(Scalar a) const {
  if (a == 0) throw Error(ErrorCode::kDivisionByZero, "inverse of zero in " + name());
  return tables_->inv[a];
}

Scalar Field::from_int(long long value) const {
  long long r = value % p_;
  if (r < 0) r += p_;
  return static_cast<Scalar>(r);
}

Scalar Field::from_coeffs(int c0, int c1) const {
  if (k_ == 1 && c1 % p_ != 0) {
    throw Error(ErrorCode::kInvalidArgument, "prime field scalar with nonzero x-coefficient");
  }
  const int r0 = ((c0 % p_) + p_) % p_;
  const int r1 = ((c1 % p_) + p_) % p_;
  return static_cast<Scalar>(r0 + r1 * p_);
}

Scalar Field::pow(Scalar a, unsigned long long e) const {
  Scalar result = 1;
  Scalar base = a;
  while (e > 0) {
    if (e & 1U) result = mul(result, base);
    base = mul(base, base);
    e >>= 1U;
  }
  return result;
}

std::optional<Scalar> Field::primitive_cube_root() const {
  for (int a = 2; a < q_; ++a) {
    const auto s = static_cast<Scalar>(a);
    if (pow(s, 3) == 1) return s;
  }
  return std::nullopt;
}

std::vector<Scalar> Field::elements() const {
  std::vector<Scalar> out(q_);
  for (int a = 0; a < q_; ++a) out[a] = static_cast<Scalar>(a);
  return out;
}

std::string Field::name() const {
  return "GF(" + std::to_string(q_) + ")";
}

}  // namespace kgb
