#include "dgaudit/pit.hpp"

#include <algorithm>

namespace dgaudit {

namespace {

using Poly = std::vector<std::uint64_t>;  // dense, index = degree

Poly trim(Poly a) {
  while (!a.empty() && a.back() == 0) a.pop_back();
  return a;
}

Poly poly_mul_mod(const Poly& a, const Poly& b, const Poly& mod, std::uint64_t p) {
  if (a.empty() || b.empty()) return {};
  Poly r(a.size() + b.size() - 1, 0);
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (a[i] == 0) continue;
    for (std::size_t j = 0; j < b.size(); ++j) {
      r[i + j] = (r[i + j] + mod_mul(a[i], b[j], p)) % p;
    }
  }
  // reduce modulo the monic polynomial `mod`
  std::size_t e = mod.size() - 1;
  for (std::size_t d = r.size(); d-- > e;) {
    std::uint64_t c = r[d];
    if (c == 0) continue;
    r[d] = 0;
    for (std::size_t j = 0; j < e; ++j) {
      std::uint64_t t = r[d - e + j] + p - mod_mul(c, mod[j], p);
      if (t >= p) t -= p;
      r[d - e + j] = t;
    }
  }
  r.resize(e, 0);
  return trim(r);
}

Poly poly_pow_mod(Poly base, unsigned __int128 exp, const Poly& mod, std::uint64_t p) {
  Poly r = {1};
  while (exp) {
    if (exp & 1) r = poly_mul_mod(r, base, mod, p);
    base = poly_mul_mod(base, base, mod, p);
    exp >>= 1;
  }
  return r;
}

Poly poly_gcd(Poly a, Poly b, std::uint64_t p) {
  a = trim(std::move(a));
  b = trim(std::move(b));
  while (!b.empty()) {
    // a mod b
    Poly r = a;
    std::uint64_t lead_inv = mod_inv(b.back(), p);
    while (r.size() >= b.size() && !r.empty()) {
      std::uint64_t c = mod_mul(r.back(), lead_inv, p);
      std::size_t shift = r.size() - b.size();
      for (std::size_t j = 0; j < b.size(); ++j) {
        std::uint64_t t = r[shift + j] + p - mod_mul(c, b[j], p);
        if (t >= p) t -= p;
        r[shift + j] = t;
      }
      r = trim(std::move(r));
      if (r.size() < b.size()) break;
    }
    a = b;
    b = trim(std::move(r));
  }
  return a;
}

bool is_irreducible(const Poly& f, std::uint64_t p) {
  // f monic of degree e: irreducible iff T^{p^e} = T (mod f) and
  // gcd(T^{p^{e/q}} - T, f) = 1 for every prime divisor q of e.
  std::size_t e = f.size() - 1;
  Poly t = {0, 1};
  unsigned __int128 pe = 1;
  for (std::size_t i = 0; i < e; ++i) pe *= p;
  Poly tq = poly_pow_mod(t, pe, f, p);
  if (trim(tq) != trim(t)) return false;
  for (std::size_t q = 2; q <= e; ++q) {
    if (e % q != 0) continue;
    bool q_prime = true;
    for (std::size_t d = 2; d * d <= q; ++d)
      if (q % d == 0) q_prime = false;
    if (!q_prime) continue;
    unsigned __int128 peq = 1;
    for (std::size_t i = 0; i < e / q; ++i) peq *= p;
    Poly g = poly_pow_mod(t, peq, f, p);
    // g - T
    Poly diff = g;
    if (diff.size() < 2) diff.resize(2, 0);
    diff[1] = (diff[1] + p - 1) % p;
    diff = trim(std::move(diff));
    Poly gc = poly_gcd(f, diff, p);
    if (gc.size() != 1) return false;
  }
  return true;
}

}  // namespace

ExtField ExtField::make(std::uint64_t p, int e) {
  require(is_prime_u64(p), Errc::NotPrime, "extension of non-prime base");
  require(e >= 1 && e <= 8, Errc::ShapeError, "extension degree out of range [1,8]");
  if (e == 1) return ExtField(p, 1, {0, 1});
  // Deterministic search: enumerate monic polynomials T^e + c_{e-1}T^{e-1} + ... + c_0
  // in lexicographic order of (c_0, c_1, ...) until irreducible.
  std::vector<std::uint64_t> c(static_cast<std::size_t>(e), 0);
  for (;;) {
    Poly f(c.begin(), c.end());
    f.push_back(1);
    if (f[0] != 0 && is_irreducible(f, p)) return ExtField(p, e, f);
    // increment c as a base-p counter
    std::size_t i = 0;
    while (i < c.size()) {
      if (++c[i] < p) break;
      c[i] = 0;
      ++i;
    }
    require(i < c.size(), Errc::InternalInconsistency, "no irreducible polynomial found");
  }
}

ExtField::Elem ExtField::one() const {
  Elem r(e_, 0);
  r[0] = 1 % p_;
  return r;
}

ExtField::Elem ExtField::from_base(std::uint64_t r) const {
  Elem x(e_, 0);
  x[0] = r % p_;
  return x;
}

bool ExtField::is_zero(const Elem& a) const {
  return std::all_of(a.begin(), a.end(), [](std::uint64_t c) { return c == 0; });
}

ExtField::Elem ExtField::add(const Elem& a, const Elem& b) const {
  Elem r(e_);
  for (int i = 0; i < e_; ++i) {
    std::uint64_t t = a[i] + b[i];
    if (t >= p_) t -= p_;
    r[i] = t;
  }
  return r;
}

ExtField::Elem ExtField::sub(const Elem& a, const Elem& b) const {
  Elem r(e_);
  for (int i = 0; i < e_; ++i) {
    std::uint64_t t = a[i] + p_ - b[i];
    if (t >= p_) t -= p_;
    r[i] = t;
  }
  return r;
}

ExtField::Elem ExtField::mul(const Elem& a, const Elem& b) const {
  Poly r = poly_mul_mod(trim(Poly(a.begin(), a.end())), trim(Poly(b.begin(), b.end())), mod_, p_);
  r.resize(e_, 0);
  return r;
}

ExtField::Elem ExtField::scale(std::uint64_t c, const Elem& a) const {
  Elem r(e_);
  for (int i = 0; i < e_; ++i) r[i] = mod_mul(c % p_, a[i], p_);
  return r;
}

ExtField::Elem ExtField::inv(const Elem& a) const {
  require(!is_zero(a), Errc::ShapeError, "inverse of zero in F_{p^e}");
  // a^(p^e - 2)
  unsigned __int128 pe = 1;
  for (int i = 0; i < e_; ++i) pe *= p_;
  Poly r = poly_pow_mod(trim(Poly(a.begin(), a.end())), pe - 2, mod_, p_);
  r.resize(e_, 0);
  return r;
}

ExtField::Elem ExtField::sample(std::mt19937_64& rng) const {
  Elem r(e_);
  for (int i = 0; i < e_; ++i) r[i] = rng() % p_;
  return r;
}

ExtField::Elem ExtField::det(std::vector<Elem> m, std::size_t n) const {
  require(m.size() == n * n, Errc::ShapeError, "det: not square");
  Elem result = one();
  for (std::size_t c = 0; c < n; ++c) {
    std::size_t sel = n;
    for (std::size_t i = c; i < n; ++i)
      if (!is_zero(m[i * n + c])) {
        sel = i;
        break;
      }
    if (sel == n) return zero();
    if (sel != c) {
      for (std::size_t j = 0; j < n; ++j) std::swap(m[sel * n + j], m[c * n + j]);
      result = sub(zero(), result);  // row swap flips the sign
    }
    result = mul(result, m[c * n + c]);
    Elem piv_inv = inv(m[c * n + c]);
    for (std::size_t i = c + 1; i < n; ++i) {
      if (is_zero(m[i * n + c])) continue;
      Elem f = mul(m[i * n + c], piv_inv);
      for (std::size_t j = c; j < n; ++j) m[i * n + j] = sub(m[i * n + j], mul(f, m[c * n + j]));
    }
  }
  return result;
}

}  // namespace dgaudit
