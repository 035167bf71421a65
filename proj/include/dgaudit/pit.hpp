// Extension fields F_{p^e} (quotient of F_p[T] by a deterministic irreducible)
// and the randomized nonzero test used when the Gorenstein pairing polynomial
// is too large to expand symbolically.
#pragma once

#include <cstdint>
#include <random>
#include <vector>

#include "dgaudit/matrix.hpp"

namespace dgaudit {

class ExtField {
 public:
  // Coefficient vectors of length e over F_p; index i holds the T^i coefficient.
  using Elem = std::vector<std::uint64_t>;

  static ExtField make(std::uint64_t p, int e);

  std::uint64_t p() const { return p_; }
  int degree() const { return e_; }
  const std::vector<std::uint64_t>& modulus() const { return mod_; }

  Elem zero() const { return Elem(e_, 0); }
  Elem one() const;
  Elem from_base(std::uint64_t r) const;
  bool is_zero(const Elem& a) const;

  Elem add(const Elem& a, const Elem& b) const;
  Elem sub(const Elem& a, const Elem& b) const;
  Elem mul(const Elem& a, const Elem& b) const;
  Elem scale(std::uint64_t c, const Elem& a) const;
  Elem inv(const Elem& a) const;

  Elem sample(std::mt19937_64& rng) const;

  // Determinant over F_{p^e} by fraction-free-ish Gaussian elimination.
  // entries is row-major n x n.
  Elem det(std::vector<Elem> entries, std::size_t n) const;

 private:
  ExtField(std::uint64_t p, int e, std::vector<std::uint64_t> mod)
      : p_(p), e_(e), mod_(std::move(mod)) {}

  std::uint64_t p_;
  int e_;
  std::vector<std::uint64_t> mod_;  // monic of degree e_, length e_+1
};

// Outcome of a randomized polynomial-identity test.
struct PitResult {
  bool nonzero = false;
  int trials = 0;
  int ext_degree = 1;    // e of the sampling field (1 = base field / integers)
  double log2_failure = 0.0;  // log2 of the failure probability bound when nonzero=false
};

}  // namespace dgaudit
