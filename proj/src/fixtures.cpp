#include "dgaudit/fixtures.hpp"

namespace dgaudit {
namespace fixtures {

namespace {

MultiPoly mono(Field f, const std::vector<std::string>& vars, const MultiPoly::Exp& e) {
  MultiPoly p(f, vars);
  p.add_term(e, f.one());
  return p;
}

}  // namespace

AlgebraPtr field_algebra(Field f) {
  AlgebraPtr a = artinian_ring(f, {}, {});
  const_cast<DgAlgebra&>(*a).name = "F-FIELD";
  return a;
}

AlgebraPtr rg(Field f) {
  std::vector<std::string> v = {"x"};
  AlgebraPtr a = artinian_ring(f, v, {mono(f, v, {2})});
  const_cast<DgAlgebra&>(*a).name = "F-RG";
  return a;
}

AlgebraPtr rn(Field f) {
  std::vector<std::string> v = {"x", "y"};
  AlgebraPtr a = artinian_ring(f, v, {mono(f, v, {2, 0}), mono(f, v, {1, 1}), mono(f, v, {0, 2})});
  const_cast<DgAlgebra&>(*a).name = "F-RN";
  return a;
}

AlgebraPtr ext1(Field f) {
  AlgebraPtr a = ci_fiber(f, 1);
  const_cast<DgAlgebra&>(*a).name = "F-EXT1";
  return a;
}

AlgebraPtr kg(Field f) {
  AlgebraPtr base = rg(f);
  std::vector<std::string> v = {"x"};
  Vec x = eval_ring_element(*base, mono(f, v, {1}));
  AlgebraPtr a = koszul_sequence(base, {x});
  const_cast<DgAlgebra&>(*a).name = "F-KG";
  return a;
}

AlgebraPtr kn(Field f) {
  AlgebraPtr base = rn(f);
  std::vector<std::string> v = {"x", "y"};
  Vec x = eval_ring_element(*base, mono(f, v, {1, 0}));
  Vec y = eval_ring_element(*base, mono(f, v, {0, 1}));
  AlgebraPtr a = koszul_sequence(base, {x, y});
  const_cast<DgAlgebra&>(*a).name = "F-KN";
  return a;
}

AlgebraPtr x3(Field f) {
  std::vector<std::string> v = {"x"};
  AlgebraPtr a = artinian_ring(f, v, {mono(f, v, {3})});
  const_cast<DgAlgebra&>(*a).name = "k[x]/(x^3)";
  return a;
}

ResolutionData hb_resolution(Field f) {
  std::vector<std::string> v = {"u", "v"};
  ResolutionData r(f);
  r.base_vars = v;
  auto P = [&](std::uint32_t a, std::uint32_t b) { return mono(f, v, {a, b}); };
  auto Z = [&] { return r.zero_poly(); };
  auto C1 = [&] { return MultiPoly::constant(f, v, f.one()); };
  r.ideal = {P(2, 0), P(1, 1), P(0, 2)};
  r.ranks = {{0, 1}, {-1, 3}, {-2, 2}};
  r.labels[0] = {"1"};
  r.labels[-1] = {"e1", "e2", "e3"};
  r.labels[-2] = {"f1", "f2"};
  // d(e1)=u^2, d(e2)=uv, d(e3)=v^2
  r.diff[-1] = {{P(2, 0), P(1, 1), P(0, 2)}};
  // d(f1)=v e1 - u e2, d(f2)=v e2 - u e3
  r.diff[-2] = {
      {P(0, 1), Z()},
      {P(1, 0).negated(), P(0, 1)},
      {Z(), P(1, 0).negated()},
  };
  // unit blocks
  r.mult[{0, 0}] = {{C1()}};
  r.mult[{0, -1}] = {{C1(), Z(), Z(), Z(), C1(), Z(), Z(), Z(), C1()}};
  {
    std::vector<std::vector<MultiPoly>> m(3, std::vector<MultiPoly>(3, Z()));
    for (int i = 0; i < 3; ++i) m[i][i] = C1();
    r.mult[{-1, 0}] = m;
  }
  {
    std::vector<std::vector<MultiPoly>> m(2, std::vector<MultiPoly>(2, Z()));
    m[0][0] = C1();
    m[1][1] = C1();
    r.mult[{0, -2}] = m;
    r.mult[{-2, 0}] = m;
  }
  // e_i e_j products: e1e2 = -u f1, e1e3 = -v f1 - u f2, e2e3 = -v f2
  {
    std::vector<std::vector<MultiPoly>> m(2, std::vector<MultiPoly>(9, Z()));
    auto put = [&](int a, int b, int row, MultiPoly val) {
      m[static_cast<std::size_t>(row)][static_cast<std::size_t>(a * 3 + b)] = std::move(val);
    };
    put(0, 1, 0, P(1, 0).negated());                   // e1 e2 = -u f1
    put(1, 0, 0, P(1, 0));                             // e2 e1 = +u f1
    put(0, 2, 0, P(0, 1).negated());                   // e1 e3 = -v f1 - u f2
    put(0, 2, 1, P(1, 0).negated());
    put(2, 0, 0, P(0, 1));
    put(2, 0, 1, P(1, 0));
    put(1, 2, 1, P(0, 1).negated());                   // e2 e3 = -v f2
    put(2, 1, 1, P(0, 1));
    r.mult[{-1, -1}] = m;
  }
  return r;
}

AlgebraPtr hb_fiber(Field f) {
  AlgebraPtr a = fiber_from_dg_resolution(hb_resolution(f));
  const_cast<DgAlgebra&>(*a).name = "fiber(k[u,v]/m^2)";
  return a;
}

AlgebraPtr random_monomial_ring(Field f, std::mt19937_64& rng) {
  int nvars = 1 + static_cast<int>(rng() % 4);
  std::vector<std::string> vars;
  for (int i = 0; i < nvars; ++i) vars.push_back("x" + std::to_string(i + 1));
  std::vector<MultiPoly> rels;
  for (int i = 0; i < nvars; ++i) {
    MultiPoly::Exp e(static_cast<std::size_t>(nvars), 0);
    e[static_cast<std::size_t>(i)] = 2 + static_cast<std::uint32_t>(rng() % 2);
    rels.push_back(mono(f, vars, e));
  }
  int extra = static_cast<int>(rng() % 3);
  for (int t = 0; t < extra; ++t) {
    MultiPoly::Exp e(static_cast<std::size_t>(nvars), 0);
    int total = 2 + static_cast<int>(rng() % 2);
    for (int s = 0; s < total; ++s) e[rng() % nvars] += 1;
    rels.push_back(mono(f, vars, e));
  }
  AlgebraPtr a = artinian_ring(f, vars, rels);
  const_cast<DgAlgebra&>(*a).name = "random_ring";
  return a;
}

DgModule koszul_as_module(const AlgebraPtr& a, const AlgebraPtr& k) {
  // The degree-wise A-part of an iterated Koszul quotient occupies the first
  // coordinates; restricting the multiplication to those columns gives the
  // A-module structure of K.
  const Field& f = a->field;
  DgModule m(a);
  m.name = k->name + "|" + a->name;
  m.comps = k->comps;
  for (const auto& [d, mtx] : k->diff) m.diff.emplace(d, mtx);
  for (const auto& [ij, mtx] : k->mult) {
    auto [i, j] = ij;
    int da = a->dim(i);
    if (da == 0) continue;
    std::size_t dkj = static_cast<std::size_t>(k->dim(j));
    Matrix act(f, mtx.rows(), static_cast<std::size_t>(da) * dkj);
    for (int al = 0; al < da; ++al)
      for (std::size_t b = 0; b < dkj; ++b)
        for (std::size_t r = 0; r < mtx.rows(); ++r)
          act.at(r, static_cast<std::size_t>(al) * dkj + b) =
              mtx.at(r, static_cast<std::size_t>(al) * dkj + b);
    m.action.emplace(std::make_pair(i, j), std::move(act));
  }
  return m;
}

std::vector<DgModule> default_family(const AlgebraPtr& a) {
  std::vector<DgModule> out;
  DgModule amod = algebra_as_module(a);
  amod.name = "A";
  out.push_back(amod);
  DgModule k = residue_module(a);
  out.push_back(k);
  DgModule ad = matlis_dual(amod);
  ad.name = "A^v";
  out.push_back(ad);
  H0Data h = h0(*a);
  if (!h.min_gens.empty()) {
    AlgebraPtr kz = koszul_on_maximal_ideal(a);
    out.push_back(koszul_as_module(a, kz));
  }
  return out;
}

DgModule maximal_ideal_module(const AlgebraPtr& a) {
  H0Data h = h0(*a);
  require(h.max_ideal.cols() > 0, Errc::ZeroModule, "maximal ideal is zero");
  Matrix span = h.reps.mul(h.max_ideal);  // lift to A^0 coordinates
  DgModule amod = algebra_as_module(a);
  std::map<int, Matrix> spans;
  spans.emplace(0, span);
  DgModule m = submodule(amod, spans);
  m.name = "m-bar";
  return m;
}

}  // namespace fixtures
}  // namespace dgaudit
