// Built-in example algebras used by tests, the default audit family, and the
// CLI's named fixtures.
#pragma once

#include <random>

#include "dgaudit/construct.hpp"

namespace dgaudit {
namespace fixtures {

AlgebraPtr field_algebra(Field f);                    // k in degree 0
AlgebraPtr rg(Field f);                               // k[x]/(x^2)
AlgebraPtr rn(Field f);                               // k[x,y]/(x^2,xy,y^2)
AlgebraPtr ext1(Field f);                             // exterior algebra on one degree -1 generator
AlgebraPtr kg(Field f);                               // rg // x
AlgebraPtr kn(Field f);                               // rn // (x, y)
AlgebraPtr x3(Field f);                               // k[x]/(x^3)

// The Hilbert-Burch DG resolution of k[u,v]/(u^2,uv,v^2) over k[u,v]
// (ranks 1,3,2) with its multiplicative structure.
ResolutionData hb_resolution(Field f);
AlgebraPtr hb_fiber(Field f);

// Seeded random Artinian monomial ring on <= 4 variables.
AlgebraPtr random_monomial_ring(Field f, std::mt19937_64& rng);

// Default module family for audits over a given algebra:
// A, k, A^dual, and K = A//m as an A-module when nontrivial.
std::vector<DgModule> default_family(const AlgebraPtr& a);

// m-bar of a degree-0 algebra as a module over it.
DgModule maximal_ideal_module(const AlgebraPtr& a);

// An iterated Koszul quotient K of A, viewed as an A-module.
DgModule koszul_as_module(const AlgebraPtr& a, const AlgebraPtr& k);

}  // namespace fixtures
}  // namespace dgaudit
