// Builders for DG algebras: Artinian quotient rings, free graded-commutative
// presentations, Koszul quotients A//x, and derived fibers reduced from
// user-supplied DG resolutions over polynomial rings.
#pragma once

#include <optional>

#include "dgaudit/dg.hpp"
#include "dgaudit/poly.hpp"

namespace dgaudit {

// One summand of a differential assignment: coeff * gen, or a plain ring
// polynomial when gen is absent (target in degree 0).
struct DiffTerm {
  MultiPoly coeff;
  std::optional<std::string> gen;
};

struct Presentation {
  Field field;
  std::vector<std::string> ring_vars;
  std::vector<MultiPoly> relations;  // in ring_vars
  struct Gen {
    std::string name;
    int degree;  // <= -1
  };
  std::vector<Gen> gens;
  std::map<std::string, std::vector<DiffTerm>> differentials;
  int cap = 4096;

  explicit Presentation(Field f) : field(f) {}
};

// Finite-dimensional quotient k[vars]/I with a monomial basis, built without
// Groebner machinery: certify per-variable nilpotency x_i^{N_i} in I by span
// search, then compute the quotient inside the truncation at total degree
// D = sum (N_i - 1), where the ideal contains every higher monomial.
struct ArtinianRingData {
  Field field;
  std::vector<std::string> vars;
  std::vector<MultiPoly::Exp> basis;  // standard monomials
  Matrix table;                       // dim x (dim*dim) multiplication table
  explicit ArtinianRingData(Field f) : field(f), table(f, 0, 0) {}

  std::size_t dim() const { return basis.size(); }
};

std::string monomial_label(const std::vector<std::string>& vars, const MultiPoly::Exp& e);

ArtinianRingData artinian_quotient(Field f, const std::vector<std::string>& vars,
                                   const std::vector<MultiPoly>& relations, int cap = 4096);

AlgebraPtr expand_presentation(const Presentation& p);
AlgebraPtr artinian_ring(Field f, const std::vector<std::string>& vars,
                         const std::vector<MultiPoly>& relations, int cap = 4096);

// A//x for a degree-0 element x of A (all of A^0 consists of cocycles); the
// class of x in H^0 is what the construction depends on, up to
// quasi-isomorphism. lift_tweak adds a boundary to the lift; used by the
// lift-invariance property test.
AlgebraPtr koszul_quotient(const AlgebraPtr& a, const Vec& x0, bool lift_tweak = false);
// x given as a class in H^0 coordinates; the canonical representative lift.
AlgebraPtr koszul_quotient_h0(const AlgebraPtr& a, const H0Data& h, const Vec& h0_class,
                              bool lift_tweak = false);
AlgebraPtr koszul_sequence(const AlgebraPtr& a, const std::vector<Vec>& xs_in_a0);
AlgebraPtr koszul_on_maximal_ideal(const AlgebraPtr& a);

AlgebraPtr ci_fiber(Field f, int c);

// A non-positive DG algebra resolution G over R = k[vars], degreewise free,
// with all structure constants polynomial. Exactness over R is user-asserted.
struct ResolutionData {
  Field field;
  std::vector<std::string> base_vars;
  std::vector<MultiPoly> ideal;  // target S = R/ideal; recorded only
  std::map<int, int> ranks;      // degree -> rank, ranks.at(0) == 1 (the unit)
  std::map<int, std::vector<std::string>> labels;
  std::map<int, std::vector<std::vector<MultiPoly>>> diff;  // rank(j+1) x rank(j)
  std::map<std::pair<int, int>, std::vector<std::vector<MultiPoly>>> mult;

  explicit ResolutionData(Field f) : field(f) {}
  MultiPoly zero_poly() const { return MultiPoly::zero(field, base_vars); }
  MultiPoly entry_d(int j, int row, int col) const;
  MultiPoly entry_mult(int i, int j, int row, int a, int b) const;
};

// Checks every DG algebra axiom as a polynomial identity; throws AxiomFailure
// naming the violated one.
void validate_resolution_data(const ResolutionData& r);
AlgebraPtr fiber_from_dg_resolution(const ResolutionData& r);

// The Koszul complex on a sequence of polynomials, packaged as ResolutionData
// (a DG resolution of R/(f_1..f_c) when the sequence is regular).
ResolutionData koszul_resolution_data(Field f, const std::vector<std::string>& vars,
                                      const std::vector<MultiPoly>& seq);

// Evaluate a polynomial in the presentation variables to its class in A^0
// (requires var_classes provenance on the algebra).
Vec eval_ring_element(const DgAlgebra& a, const MultiPoly& p);

}  // namespace dgaudit
