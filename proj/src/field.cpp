#include "dgaudit/field.hpp"

namespace dgaudit {

bool is_prime_u64(std::uint64_t n) {
  if (n < 2) return false;
  for (std::uint64_t q : {2ull, 3ull, 5ull, 7ull, 11ull, 13ull, 17ull, 19ull, 23ull, 29ull, 31ull, 37ull}) {
    if (n % q == 0) return n == q;
  }
  // Deterministic Miller-Rabin for 64-bit inputs.
  std::uint64_t d = n - 1;
  int s = 0;
  while ((d & 1) == 0) {
    d >>= 1;
    ++s;
  }
  for (std::uint64_t a : {2ull, 3ull, 5ull, 7ull, 11ull, 13ull, 17ull, 19ull, 23ull, 29ull, 31ull, 37ull}) {
    std::uint64_t x = mod_pow(a % n, d, n);
    if (x == 0 || x == 1 || x == n - 1) continue;
    bool composite = true;
    for (int i = 1; i < s; ++i) {
      x = mod_mul(x, x, n);
      if (x == n - 1) {
        composite = false;
        break;
      }
    }
    if (composite) return false;
  }
  return true;
}

std::uint64_t mod_pow(std::uint64_t a, std::uint64_t e, std::uint64_t p) {
  std::uint64_t r = 1 % p;
  a %= p;
  while (e) {
    if (e & 1) r = mod_mul(r, a, p);
    a = mod_mul(a, a, p);
    e >>= 1;
  }
  return r;
}

std::uint64_t mod_inv(std::uint64_t a, std::uint64_t p) {
  require(a % p != 0, Errc::ShapeError, "division by zero in F_p");
  return mod_pow(a, p - 2, p);
}

Field Field::prime(std::uint64_t p) {
  require(p < (1ull << 31), Errc::NotPrime, "prime must be < 2^31");
  require(is_prime_u64(p), Errc::NotPrime, std::to_string(p) + " is not prime");
  return Field(FieldKind::Prime, p);
}

Field Field::rationals() { return Field(FieldKind::Rational, 0); }

void Field::check(const Scalar& a) const {
  if (kind_ == FieldKind::Prime) {
    require(std::holds_alternative<std::uint64_t>(a.v), Errc::FieldMismatch,
            "scalar is not a prime-field residue");
  } else {
    require(std::holds_alternative<mpq_class>(a.v), Errc::FieldMismatch, "scalar is not rational");
  }
}

Scalar Field::zero() const {
  return kind_ == FieldKind::Prime ? Scalar(std::uint64_t{0}) : Scalar(mpq_class(0));
}

Scalar Field::one() const {
  return kind_ == FieldKind::Prime ? Scalar(std::uint64_t{1} % p_) : Scalar(mpq_class(1));
}

Scalar Field::from_int(long long n) const {
  if (kind_ == FieldKind::Rational) return Scalar(mpq_class(static_cast<long>(n)));
  long long r = n % static_cast<long long>(p_);
  if (r < 0) r += static_cast<long long>(p_);
  return Scalar(static_cast<std::uint64_t>(r));
}

Scalar Field::add(const Scalar& a, const Scalar& b) const {
  check(a);
  check(b);
  if (kind_ == FieldKind::Prime) {
    std::uint64_t x = std::get<std::uint64_t>(a.v) + std::get<std::uint64_t>(b.v);
    if (x >= p_) x -= p_;
    return Scalar(x);
  }
  return Scalar(mpq_class(std::get<mpq_class>(a.v) + std::get<mpq_class>(b.v)));
}

Scalar Field::sub(const Scalar& a, const Scalar& b) const {
  check(a);
  check(b);
  if (kind_ == FieldKind::Prime) {
    std::uint64_t x = std::get<std::uint64_t>(a.v) + p_ - std::get<std::uint64_t>(b.v);
    if (x >= p_) x -= p_;
    return Scalar(x);
  }
  return Scalar(mpq_class(std::get<mpq_class>(a.v) - std::get<mpq_class>(b.v)));
}

Scalar Field::mul(const Scalar& a, const Scalar& b) const {
  check(a);
  check(b);
  if (kind_ == FieldKind::Prime)
    return Scalar(mod_mul(std::get<std::uint64_t>(a.v), std::get<std::uint64_t>(b.v), p_));
  return Scalar(mpq_class(std::get<mpq_class>(a.v) * std::get<mpq_class>(b.v)));
}

Scalar Field::neg(const Scalar& a) const {
  check(a);
  if (kind_ == FieldKind::Prime) {
    std::uint64_t x = std::get<std::uint64_t>(a.v);
    return Scalar(x == 0 ? 0 : p_ - x);
  }
  return Scalar(mpq_class(-std::get<mpq_class>(a.v)));
}

Scalar Field::inv(const Scalar& a) const {
  check(a);
  if (kind_ == FieldKind::Prime) return Scalar(mod_inv(std::get<std::uint64_t>(a.v), p_));
  const auto& q = std::get<mpq_class>(a.v);
  require(q != 0, Errc::ShapeError, "division by zero in Q");
  return Scalar(mpq_class(1 / q));
}

bool Field::is_zero(const Scalar& a) const {
  check(a);
  if (kind_ == FieldKind::Prime) return std::get<std::uint64_t>(a.v) == 0;
  return std::get<mpq_class>(a.v) == 0;
}

bool Field::is_one(const Scalar& a) const {
  check(a);
  if (kind_ == FieldKind::Prime) return std::get<std::uint64_t>(a.v) == 1 % p_;
  return std::get<mpq_class>(a.v) == 1;
}

std::string Field::to_string(const Scalar& a) const {
  check(a);
  if (kind_ == FieldKind::Prime) return std::to_string(std::get<std::uint64_t>(a.v));
  return std::get<mpq_class>(a.v).get_str();
}

std::string Field::describe() const {
  return kind_ == FieldKind::Prime ? "F_" + std::to_string(p_) : "Q";
}

std::uint64_t Field::residue(const Scalar& a) const {
  require(kind_ == FieldKind::Prime, Errc::FieldMismatch, "residue() on non-prime field");
  check(a);
  return std::get<std::uint64_t>(a.v);
}

Scalar Field::from_residue(std::uint64_t r) const {
  require(kind_ == FieldKind::Prime, Errc::FieldMismatch, "from_residue() on non-prime field");
  return Scalar(r % p_);
}

}  // namespace dgaudit
