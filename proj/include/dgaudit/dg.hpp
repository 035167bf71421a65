// DG algebras and DG modules as validated structure-constant data over a
// field, plus Hom, tensor, duals and the analysis of H^0 as an Artinian
// local algebra.
//
// Sign conventions used throughout (checked by the validators and tests):
//   shift:   M[i]^j = M^{i+j},  d_{M[i]} = (-1)^i d_M,  a *_{M[i]} m = (-1)^{i|a|} a m
//   cone(f: X -> Y) = Y + X[1],  d(y,x) = (dy + f(x), -dx)
//   Hom:     f of degree i is A-linear when f(a m) = (-1)^{i|a|} a f(m);
//            (delta f) = d_N f - (-1)^i f d_M
//   tensor:  d(m @ n) = dm @ n + (-1)^{|m|} m @ dn,  m a @ n = m @ a n,
//            with m a := (-1)^{|a||m|} a m
//   dual:    (M^v)^j = (M^{-j})^*,  (delta phi)(m) = -(-1)^{|phi|} phi(dm),
//            (a phi)(m) = (-1)^{|a||phi|} phi(a m)
#pragma once

#include <memory>
#include <string>
#include <utility>
#include <vector>

#include "dgaudit/graded.hpp"

namespace dgaudit {

class DgAlgebra {
 public:
  Field field;
  GradedSpace comps;  // supported in degrees [min_deg, 0]
  // mult[(i,j)] has shape dim(i+j) x (dim(i)*dim(j)); column index a*dim(j)+b.
  std::map<std::pair<int, int>, Matrix> mult;
  std::map<int, Matrix> diff;  // d^i : A^i -> A^{i+1}
  Vec unit;                    // coordinates in A^0
  std::string name;
  // degree-0 classes of presentation variables, when the algebra was built
  // from a presentation (used to evaluate ring elements named in scripts)
  std::map<std::string, Vec> var_classes;

  DgAlgebra(Field f) : field(f), unit() {}

  int dim(int d) const { return comps.dim(d); }
  int total_dim() const { return comps.total_dim(); }
  Matrix mult_matrix(int i, int j) const;
  Matrix d(int i) const;
  Vec product(int i, const Vec& a, int j, const Vec& b) const;
  // Matrix of left multiplication by x in A^i, as a map A^j -> A^{i+j}.
  Matrix left_mult_operator(int i, const Vec& x, int j) const;
  Cochain underlying() const;
};

using AlgebraPtr = std::shared_ptr<const DgAlgebra>;

class DgModule {
 public:
  AlgebraPtr alg;
  GradedSpace comps;
  // action[(i,j)]: A^i x M^j -> M^{i+j}, shape dim(i+j) x (dimA(i)*dimM(j)).
  std::map<std::pair<int, int>, Matrix> action;
  std::map<int, Matrix> diff;
  std::string name;

  explicit DgModule(AlgebraPtr a) : alg(std::move(a)) {}

  const Field& field() const { return alg->field; }
  int dim(int d) const { return comps.dim(d); }
  int total_dim() const { return comps.total_dim(); }
  bool is_zero() const { return comps.empty(); }
  Matrix action_matrix(int i, int j) const;
  Matrix d(int j) const;
  Vec act(int i, const Vec& a, int j, const Vec& m) const;
  // Matrix of the action of x in A^i on M^j.
  Matrix action_operator(int i, const Vec& x, int j) const;
  Cochain underlying() const;
};

// A degree-0 A-linear chain map between modules over the same algebra.
struct DgModuleMap {
  DgModule src, tgt;
  std::map<int, Matrix> comps;

  DgModuleMap(DgModule s, DgModule t, std::map<int, Matrix> c);
  Matrix component(int i) const;
};

struct ValidationReport {
  struct Violation {
    std::string axiom;
    std::string witness;
  };
  std::vector<Violation> violations;
  bool ok() const { return violations.empty(); }
  void add(std::string axiom, std::string witness) {
    violations.push_back({std::move(axiom), std::move(witness)});
  }
};

ValidationReport validate_dga(const DgAlgebra& a);
ValidationReport validate_module(const DgModule& m);
// Throws AxiomFailure listing the first violation.
void assert_valid(const DgAlgebra& a);
void assert_valid(const DgModule& m);

// H^0(A) as a commutative Artinian local algebra with residue field k.
struct H0Data {
  int h0_dim = 0;
  Matrix reps;        // dim(A^0) x h0_dim, representative columns
  Matrix to_h0;       // h0_dim x dim(A^0), projection along im(d^{-1})
  Matrix table;       // h0_dim x (h0_dim*h0_dim) multiplication table
  Vec one;            // class of the unit, in H^0 coordinates
  Matrix max_ideal;   // h0_dim x m_dim, basis of the radical in H^0 coordinates
  Matrix chi;         // 1 x h0_dim, the augmentation H^0 -> k
  std::vector<Vec> min_gens;  // minimal generating set of the radical (H^0 coords)
  int nilpotency = 0;         // least t with max_ideal^t = 0

  H0Data(Field f) : reps(f, 0, 0), to_h0(f, 0, 0), table(f, 0, 0), max_ideal(f, 0, 0), chi(f, 0, 0) {}

  Vec h0_product(const Field& f, const Vec& x, const Vec& y) const;
  Scalar augment(const Field& f, const Vec& h0_coords) const;
};

H0Data h0(const DgAlgebra& a);

DgModule residue_module(const AlgebraPtr& a);
DgModule algebra_as_module(const AlgebraPtr& a);
DgModule free_module(const AlgebraPtr& a, const std::vector<int>& degrees);
DgModule shift_module(const DgModule& m, int i);
DgModule matlis_dual(const DgModule& m);
DgModule cone_module(const DgModuleMap& f);
DgModule direct_sum_module(const DgModule& a, const DgModule& b);
// Submodule spanned by the given per-degree coordinate columns (must be
// closed under d and the action; checked).
DgModule submodule(const DgModule& m, const std::map<int, Matrix>& span);

Cochain dg_hom(const DgModule& m, const DgModule& n);
Cochain dg_tensor(const DgModule& m, const DgModule& n);

// Per-degree basis of ker(A -> k) (the augmentation ideal).
std::map<int, Matrix> augmentation_ideal(const DgAlgebra& a, const H0Data& h);

}  // namespace dgaudit
