#include "dgaudit/poly.hpp"

#include <algorithm>
#include <numeric>
#include <sstream>

namespace dgaudit {

MultiPoly MultiPoly::constant(Field f, std::vector<std::string> vars, const Scalar& c) {
  MultiPoly p(f, std::move(vars));
  p.add_term(Exp(p.vars_.size(), 0), c);
  return p;
}

MultiPoly MultiPoly::variable(Field f, const std::vector<std::string>& vars, const std::string& name) {
  auto it = std::find(vars.begin(), vars.end(), name);
  require(it != vars.end(), Errc::VariableMismatch, "unknown variable " + name);
  MultiPoly p(f, vars);
  Exp e(vars.size(), 0);
  e[static_cast<std::size_t>(it - vars.begin())] = 1;
  p.add_term(e, f.one());
  return p;
}

void MultiPoly::check_compatible(const MultiPoly& o) const {
  require(fld_ == o.fld_, Errc::FieldMismatch, "polynomials over different fields");
  require(vars_ == o.vars_, Errc::VariableMismatch, "polynomials over different variable lists");
}

std::uint32_t MultiPoly::total_degree() const {
  std::uint32_t d = 0;
  for (const auto& [e, c] : terms_)
    d = std::max(d, std::accumulate(e.begin(), e.end(), std::uint32_t{0}));
  return d;
}

void MultiPoly::add_term(const Exp& e, const Scalar& c) {
  require(e.size() == vars_.size(), Errc::VariableMismatch, "exponent arity mismatch");
  if (fld_.is_zero(c)) return;
  auto it = terms_.find(e);
  if (it == terms_.end()) {
    terms_.emplace(e, c);
    return;
  }
  Scalar s = fld_.add(it->second, c);
  if (fld_.is_zero(s))
    terms_.erase(it);
  else
    it->second = s;
}

MultiPoly MultiPoly::add(const MultiPoly& o) const {
  check_compatible(o);
  MultiPoly r = *this;
  for (const auto& [e, c] : o.terms_) r.add_term(e, c);
  return r;
}

MultiPoly MultiPoly::sub(const MultiPoly& o) const { return add(o.negated()); }

MultiPoly MultiPoly::negated() const {
  MultiPoly r(fld_, vars_);
  for (const auto& [e, c] : terms_) r.terms_.emplace(e, fld_.neg(c));
  return r;
}

MultiPoly MultiPoly::scaled(const Scalar& c) const {
  MultiPoly r(fld_, vars_);
  if (fld_.is_zero(c)) return r;
  for (const auto& [e, s] : terms_) {
    Scalar t = fld_.mul(c, s);
    if (!fld_.is_zero(t)) r.terms_.emplace(e, t);
  }
  return r;
}

MultiPoly MultiPoly::mul(const MultiPoly& o) const {
  check_compatible(o);
  MultiPoly r(fld_, vars_);
  for (const auto& [e1, c1] : terms_)
    for (const auto& [e2, c2] : o.terms_) {
      Exp e(e1.size());
      for (std::size_t i = 0; i < e.size(); ++i) e[i] = e1[i] + e2[i];
      r.add_term(e, fld_.mul(c1, c2));
    }
  return r;
}

MultiPoly MultiPoly::pow(std::uint32_t e) const {
  MultiPoly r = constant(fld_, vars_, fld_.one());
  MultiPoly b = *this;
  while (e) {
    if (e & 1) r = r.mul(b);
    b = b.mul(b);
    e >>= 1;
  }
  return r;
}

Scalar MultiPoly::constant_term() const {
  auto it = terms_.find(Exp(vars_.size(), 0));
  return it == terms_.end() ? fld_.zero() : it->second;
}

bool MultiPoly::equal(const MultiPoly& o) const {
  check_compatible(o);
  return sub(o).is_zero();
}

Scalar MultiPoly::eval(const Vec& point) const {
  require(point.size() == vars_.size(), Errc::VariableMismatch, "eval arity mismatch");
  Scalar acc = fld_.zero();
  for (const auto& [e, c] : terms_) {
    Scalar t = c;
    for (std::size_t i = 0; i < e.size(); ++i)
      for (std::uint32_t k = 0; k < e[i]; ++k) t = fld_.mul(t, point[i]);
    acc = fld_.add(acc, t);
  }
  return acc;
}

std::string MultiPoly::to_string() const {
  if (terms_.empty()) return "0";
  std::ostringstream os;
  bool first = true;
  for (const auto& [e, c] : terms_) {
    if (!first) os << " + ";
    first = false;
    os << fld_.to_string(c);
    for (std::size_t i = 0; i < e.size(); ++i) {
      if (e[i] == 0) continue;
      os << "*" << vars_[i];
      if (e[i] > 1) os << "^" << e[i];
    }
  }
  return os.str();
}

}  // namespace dgaudit
