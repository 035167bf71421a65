// Exact scalar arithmetic: prime fields F_p (machine-word residues) and the
// rationals (GMP). Every operation is exact; there is no floating point
// anywhere in the library.
#pragma once

#include <cstdint>
#include <string>
#include <variant>

#include <gmpxx.h>

#include "dgaudit/errors.hpp"

namespace dgaudit {

enum class FieldKind { Prime, Rational };

// A field element. The active alternative must match the field's kind;
// all arithmetic goes through Field, which checks this.
struct Scalar {
  std::variant<std::uint64_t, mpq_class> v;

  Scalar() : v(std::uint64_t{0}) {}
  explicit Scalar(std::uint64_t r) : v(r) {}
  explicit Scalar(mpq_class q) : v(std::move(q)) {}

  bool operator==(const Scalar& o) const { return v == o.v; }
  bool operator!=(const Scalar& o) const { return !(*this == o); }
};

bool is_prime_u64(std::uint64_t n);

// Field descriptor; a cheap value type.
class Field {
 public:
  static Field prime(std::uint64_t p);
  static Field rationals();

  FieldKind kind() const { return kind_; }
  std::uint64_t characteristic() const { return kind_ == FieldKind::Prime ? p_ : 0; }

  bool operator==(const Field& o) const { return kind_ == o.kind_ && p_ == o.p_; }
  bool operator!=(const Field& o) const { return !(*this == o); }

  Scalar zero() const;
  Scalar one() const;
  Scalar from_int(long long n) const;

  Scalar add(const Scalar& a, const Scalar& b) const;
  Scalar sub(const Scalar& a, const Scalar& b) const;
  Scalar mul(const Scalar& a, const Scalar& b) const;
  Scalar neg(const Scalar& a) const;
  Scalar inv(const Scalar& a) const;
  Scalar div(const Scalar& a, const Scalar& b) const { return mul(a, inv(b)); }

  bool is_zero(const Scalar& a) const;
  bool is_one(const Scalar& a) const;

  std::string to_string(const Scalar& a) const;
  std::string describe() const;

  // Fast-path access for prime fields.
  std::uint64_t residue(const Scalar& a) const;
  Scalar from_residue(std::uint64_t r) const;

 private:
  Field(FieldKind k, std::uint64_t p) : kind_(k), p_(p) {}
  void check(const Scalar& a) const;

  FieldKind kind_;
  std::uint64_t p_;  // 0 for rationals
};

// Modular helpers used by the prime-field fast paths.
inline std::uint64_t mod_mul(std::uint64_t a, std::uint64_t b, std::uint64_t p) {
  return static_cast<std::uint64_t>((static_cast<unsigned __int128>(a) * b) % p);
}
std::uint64_t mod_pow(std::uint64_t a, std::uint64_t e, std::uint64_t p);
std::uint64_t mod_inv(std::uint64_t a, std::uint64_t p);

}  // namespace dgaudit
