#pragma once

#include <array>
#include <cstdint>
#include <memory>
#include <optional>
#include <string>
#include <vector>

namespace kgb {

/// A scalar of GF(p^k), stored as the integer c0 + c1 * p.
///
/// The integer order of the encoding is the lexicographic order on (c1, c0);
/// every exhaustive search in the library walks scalars in this order.
using Scalar = std::uint8_t;

/// Exact arithmetic in GF(p^k) for primes 2 <= p <= 13 and k in {1, 2}.
///
/// Elements of GF(p^2) are polynomials c0 + c1 x reduced modulo the first
/// monic irreducible quadratic in (c1, c0) order. This gives x^2+x+1 for
/// GF(4), x^2+1 for GF(9) and x^2+2 for GF(25).
///
/// All operations go through precomputed tables (q <= 169), so a Field is a
/// cheap handle onto shared immutable state.
class Field {
 public:
  static Field make(int p, int k = 1);

  int p() const noexcept { return p_; }
  int k() const noexcept { return k_; }
  int q() const noexcept { return q_; }

  /// Coefficients (c0, c1, 1) of the modulus x^2 + c1 x + c0; {0,0,0} for k = 1.
  std::array<int, 3> modulus() const noexcept { return modulus_; }

  Scalar zero() const noexcept { return 0; }
  Scalar one() const noexcept { return 1; }

  Scalar add(Scalar a, Scalar b) const { return tables_->add[index(a, b)]; }
  Scalar sub(Scalar a, Scalar b) const { return add(a, neg(b)); }
  Scalar mul(Scalar a, Scalar b) const { return tables_->mul[index(a, b)]; }
  Scalar neg(Scalar a) const { return tables_->neg[a]; }
  /// Throws Error(kDivisionByZero) on zero.
  Scalar inv(Scalar a) const;

  /// Image of an integer under Z -> GF(p) -> GF(q).
  Scalar from_int(long long value) const;
  Scalar from_coeffs(int c0, int c1) const;
  std::array<int, 2> coeffs(Scalar a) const noexcept {
    return {a % p_, a / p_};
  }

  Scalar pow(Scalar a, unsigned long long e) const;

  /// The first element (in scalar order) of multiplicative order exactly 3.
  std::optional<Scalar> primitive_cube_root() const;

  /// All scalars in enumeration order.
  std::vector<Scalar> elements() const;

  std::string name() const;

  bool operator==(const Field& other) const noexcept {
    return p_ == other.p_ && k_ == other.k_;
  }
  bool operator!=(const Field& other) const noexcept { return !(*this == other); }

 private:
  struct Tables {
    std::vector<Scalar> add;
    std::vector<Scalar> mul;
    std::vector<Scalar> neg;
    std::vector<Scalar> inv;
  };

  Field() = default;
  std::size_t index(Scalar a, Scalar b) const noexcept {
    return static_cast<std::size_t>(a) * q_ + b;
  }

  int p_ = 2;
  int k_ = 1;
  int q_ = 2;
  std::array<int, 3> modulus_{0, 0, 0};
  std::shared_ptr<const Tables> tables_;
};

bool is_prime(int n);

}  // namespace kgb
