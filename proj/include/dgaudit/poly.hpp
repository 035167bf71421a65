// Naive dense-exponent multivariate polynomials. Used to validate
// user-supplied DG resolution data over polynomial rings by full expansion,
// and for the exact branch of the polynomial identity test.
#pragma once

#include <map>
#include <string>
#include <vector>

#include "dgaudit/matrix.hpp"

namespace dgaudit {

class MultiPoly {
 public:
  using Exp = std::vector<std::uint32_t>;  // aligned with the variable list

  MultiPoly(Field f, std::vector<std::string> vars) : fld_(f), vars_(std::move(vars)) {}

  static MultiPoly zero(Field f, std::vector<std::string> vars) { return MultiPoly(f, std::move(vars)); }
  static MultiPoly constant(Field f, std::vector<std::string> vars, const Scalar& c);
  static MultiPoly variable(Field f, const std::vector<std::string>& vars, const std::string& name);

  const Field& field() const { return fld_; }
  const std::vector<std::string>& vars() const { return vars_; }
  const std::map<Exp, Scalar>& terms() const { return terms_; }

  bool is_zero() const { return terms_.empty(); }
  std::uint32_t total_degree() const;

  MultiPoly add(const MultiPoly& o) const;
  MultiPoly sub(const MultiPoly& o) const;
  MultiPoly mul(const MultiPoly& o) const;
  MultiPoly negated() const;
  MultiPoly scaled(const Scalar& c) const;
  MultiPoly pow(std::uint32_t e) const;

  void add_term(const Exp& e, const Scalar& c);

  // Constant term; evaluation at the origin of the polynomial presentation.
  Scalar constant_term() const;
  bool equal(const MultiPoly& o) const;

  Scalar eval(const Vec& point) const;  // point aligned with vars
  std::string to_string() const;

 private:
  void check_compatible(const MultiPoly& o) const;

  Field fld_;
  std::vector<std::string> vars_;
  std::map<Exp, Scalar> terms_;  // no zero coefficients stored
};

}  // namespace dgaudit
