#include "dgaudit/dg.hpp"

#include <algorithm>

namespace dgaudit {

namespace {

int pow_sign(long long e) { return (e % 2 == 0) ? 1 : -1; }

Vec signed_vec(const Field& f, int sign, Vec v) {
  if (sign >= 0) return v;
  for (auto& x : v) x = f.neg(x);
  return v;
}

}  // namespace

Matrix DgAlgebra::mult_matrix(int i, int j) const {
  auto it = mult.find({i, j});
  if (it != mult.end()) return it->second;
  return Matrix(field, static_cast<std::size_t>(dim(i + j)),
                static_cast<std::size_t>(dim(i)) * static_cast<std::size_t>(dim(j)));
}

Matrix DgAlgebra::d(int i) const {
  auto it = diff.find(i);
  if (it != diff.end()) return it->second;
  return Matrix(field, static_cast<std::size_t>(dim(i + 1)), static_cast<std::size_t>(dim(i)));
}

Vec DgAlgebra::product(int i, const Vec& a, int j, const Vec& b) const {
  std::size_t di = dim(i), dj = dim(j), dk = dim(i + j);
  require(a.size() == di && b.size() == dj, Errc::ShapeError, "product arity mismatch");
  Vec out(dk, field.zero());
  if (dk == 0) return out;
  Matrix m = mult_matrix(i, j);
  for (std::size_t al = 0; al < di; ++al) {
    if (field.is_zero(a[al])) continue;
    for (std::size_t be = 0; be < dj; ++be) {
      if (field.is_zero(b[be])) continue;
      Scalar c = field.mul(a[al], b[be]);
      std::size_t col = al * dj + be;
      for (std::size_t r = 0; r < dk; ++r)
        out[r] = field.add(out[r], field.mul(c, m.at(r, col)));
    }
  }
  return out;
}

Matrix DgAlgebra::left_mult_operator(int i, const Vec& x, int j) const {
  std::size_t dj = dim(j), dk = dim(i + j);
  Matrix op(field, dk, dj);
  Matrix m = mult_matrix(i, j);
  for (std::size_t al = 0; al < x.size(); ++al) {
    if (field.is_zero(x[al])) continue;
    for (std::size_t be = 0; be < dj; ++be)
      for (std::size_t r = 0; r < dk; ++r)
        op.at(r, be) = field.add(op.at(r, be), field.mul(x[al], m.at(r, al * dj + be)));
  }
  return op;
}

Cochain DgAlgebra::underlying() const {
  std::map<int, Matrix> dd;
  for (const auto& [i, m] : diff)
    if (m.rows() && m.cols()) dd.emplace(i, m);
  return Cochain(field, comps, dd);
}

Matrix DgModule::action_matrix(int i, int j) const {
  auto it = action.find({i, j});
  if (it != action.end()) return it->second;
  return Matrix(field(), static_cast<std::size_t>(dim(i + j)),
                static_cast<std::size_t>(alg->dim(i)) * static_cast<std::size_t>(dim(j)));
}

Matrix DgModule::d(int j) const {
  auto it = diff.find(j);
  if (it != diff.end()) return it->second;
  return Matrix(field(), static_cast<std::size_t>(dim(j + 1)), static_cast<std::size_t>(dim(j)));
}

Vec DgModule::act(int i, const Vec& a, int j, const Vec& m) const {
  std::size_t di = alg->dim(i), dj = dim(j), dk = dim(i + j);
  require(a.size() == di && m.size() == dj, Errc::ShapeError, "act arity mismatch");
  Vec out(dk, field().zero());
  if (dk == 0) return out;
  Matrix am = action_matrix(i, j);
  for (std::size_t al = 0; al < di; ++al) {
    if (field().is_zero(a[al])) continue;
    for (std::size_t be = 0; be < dj; ++be) {
      if (field().is_zero(m[be])) continue;
      Scalar c = field().mul(a[al], m[be]);
      std::size_t col = al * dj + be;
      for (std::size_t r = 0; r < dk; ++r)
        out[r] = field().add(out[r], field().mul(c, am.at(r, col)));
    }
  }
  return out;
}

Matrix DgModule::action_operator(int i, const Vec& x, int j) const {
  std::size_t dj = dim(j), dk = dim(i + j);
  Matrix op(field(), dk, dj);
  Matrix am = action_matrix(i, j);
  for (std::size_t al = 0; al < x.size(); ++al) {
    if (field().is_zero(x[al])) continue;
    for (std::size_t be = 0; be < dj; ++be)
      for (std::size_t r = 0; r < dk; ++r)
        op.at(r, be) = field().add(op.at(r, be), field().mul(x[al], am.at(r, al * dj + be)));
  }
  return op;
}

Cochain DgModule::underlying() const {
  std::map<int, Matrix> dd;
  for (const auto& [i, m] : diff)
    if (m.rows() && m.cols()) dd.emplace(i, m);
  return Cochain(field(), comps, dd);
}

DgModuleMap::DgModuleMap(DgModule s, DgModule t, std::map<int, Matrix> c)
    : src(std::move(s)), tgt(std::move(t)), comps(std::move(c)) {
  require(src.alg.get() == tgt.alg.get(), Errc::AlgebraMismatch, "module map across algebras");
  const Field& f = src.field();
  for (auto& [i, m] : comps)
    require(m.rows() == static_cast<std::size_t>(tgt.dim(i)) &&
                m.cols() == static_cast<std::size_t>(src.dim(i)),
            Errc::ShapeError, "module map component shape at degree " + std::to_string(i));
  // chain map
  for (const auto& [i, n] : src.comps.dims) {
    (void)n;
    require(tgt.d(i).mul(component(i)) == component(i + 1).mul(src.d(i)), Errc::AxiomFailure,
            "module map does not commute with d at degree " + std::to_string(i));
  }
  // A-linearity on algebra basis elements
  const DgAlgebra& A = *src.alg;
  for (const auto& [t, da] : A.comps.dims) {
    for (int al = 0; al < da; ++al) {
      Vec ea = unit_vec(f, static_cast<std::size_t>(da), static_cast<std::size_t>(al));
      for (const auto& [j, dj] : src.comps.dims) {
        if (tgt.dim(t + j) == 0 && src.dim(t + j) == 0) continue;
        Matrix lhs = component(t + j).mul(src.action_operator(t, ea, j));
        Matrix rhs = tgt.action_operator(t, ea, j).mul(component(j));
        (void)dj;
        require(lhs == rhs, Errc::AxiomFailure,
                "module map is not A-linear at algebra degree " + std::to_string(t));
      }
    }
  }
}

Matrix DgModuleMap::component(int i) const {
  auto it = comps.find(i);
  if (it != comps.end()) return it->second;
  return Matrix(src.field(), static_cast<std::size_t>(tgt.dim(i)),
                static_cast<std::size_t>(src.dim(i)));
}

ValidationReport validate_dga(const DgAlgebra& a) {
  ValidationReport rep;
  const Field& f = a.field;
  if (!a.comps.empty() && a.comps.max_deg() > 0)
    rep.add("non-positive", "A^" + std::to_string(a.comps.max_deg()) + " != 0");
  if (a.dim(0) == 0) {
    rep.add("unit", "A^0 = 0");
    return rep;
  }
  if (a.unit.size() != static_cast<std::size_t>(a.dim(0)) || is_zero_vec(f, a.unit))
    rep.add("unit", "unit element missing");

  auto deg_label = [&](int d, int i) { return a.comps.label(d, static_cast<std::size_t>(i)); };

  // d^2 = 0
  for (const auto& [i, n] : a.comps.dims) {
    (void)n;
    if (a.dim(i + 2) == 0) continue;
    if (!a.d(i + 1).mul(a.d(i)).is_zero())
      rep.add("d squared", "d^2 != 0 starting at degree " + std::to_string(i));
  }

  // unit laws
  for (const auto& [j, dj] : a.comps.dims) {
    for (int b = 0; b < dj; ++b) {
      Vec eb = unit_vec(f, static_cast<std::size_t>(dj), static_cast<std::size_t>(b));
      if (a.product(0, a.unit, j, eb) != eb)
        rep.add("unit law", "1 * " + deg_label(j, b) + " != " + deg_label(j, b));
      if (a.product(j, eb, 0, a.unit) != eb)
        rep.add("unit law", deg_label(j, b) + " * 1 != " + deg_label(j, b));
    }
  }

  // Leibniz, graded commutativity, odd squares
  for (const auto& [i, di] : a.comps.dims) {
    for (const auto& [j, dj] : a.comps.dims) {
      Matrix mij = a.mult_matrix(i, j);
      Matrix mji = a.mult_matrix(j, i);
      for (int al = 0; al < di; ++al) {
        Vec ea = unit_vec(f, static_cast<std::size_t>(di), static_cast<std::size_t>(al));
        Vec dea = a.d(i).apply(ea);
        for (int be = 0; be < dj; ++be) {
          Vec eb = unit_vec(f, static_cast<std::size_t>(dj), static_cast<std::size_t>(be));
          std::size_t col = static_cast<std::size_t>(al) * dj + static_cast<std::size_t>(be);
          Vec ab = mij.cols() ? mij.column_vec(col) : Vec{};
          // commutativity: ab = (-1)^{ij} ba
          Vec ba = mji.cols()
                       ? mji.column_vec(static_cast<std::size_t>(be) * di + static_cast<std::size_t>(al))
                       : Vec{};
          Vec ba_signed = signed_vec(f, pow_sign(static_cast<long long>(i) * j), ba);
          if (ab != ba_signed)
            rep.add("graded commutativity",
                    deg_label(i, al) + " * " + deg_label(j, be) + " vs swap");
          // Leibniz: d(ab) = d(a) b + (-1)^i a d(b)
          if (a.dim(i + j + 1) > 0) {
            Vec lhs = a.d(i + j).apply(ab);
            Vec rhs = a.product(i + 1, dea, j, eb);
            Vec deb = a.d(j).apply(eb);
            Vec t2 = signed_vec(f, pow_sign(i), a.product(i, ea, j + 1, deb));
            rhs = add_vec(f, rhs, t2);
            if (lhs != rhs)
              rep.add("Leibniz", "d(" + deg_label(i, al) + " * " + deg_label(j, be) + ")");
          }
        }
      }
    }
  }
  // odd squares vanish
  for (const auto& [i, di] : a.comps.dims) {
    if (i % 2 == 0) continue;
    for (int al = 0; al < di; ++al) {
      Vec ea = unit_vec(f, static_cast<std::size_t>(di), static_cast<std::size_t>(al));
      if (!is_zero_vec(f, a.product(i, ea, i, ea)))
        rep.add("odd square", deg_label(i, al) + "^2 != 0");
    }
  }

  // associativity on basis triples
  for (const auto& [i, di] : a.comps.dims)
    for (const auto& [j, dj] : a.comps.dims)
      for (const auto& [l, dl] : a.comps.dims) {
        if (a.dim(i + j + l) == 0) continue;
        for (int al = 0; al < di; ++al) {
          Vec ea = unit_vec(f, static_cast<std::size_t>(di), static_cast<std::size_t>(al));
          for (int be = 0; be < dj; ++be) {
            Vec eb = unit_vec(f, static_cast<std::size_t>(dj), static_cast<std::size_t>(be));
            Vec ab = a.product(i, ea, j, eb);
            for (int ga = 0; ga < dl; ++ga) {
              Vec ec = unit_vec(f, static_cast<std::size_t>(dl), static_cast<std::size_t>(ga));
              Vec lhs = a.product(i + j, ab, l, ec);
              Vec rhs = a.product(i, ea, j + l, a.product(j, eb, l, ec));
              if (lhs != rhs) {
                rep.add("associativity", "(" + deg_label(i, al) + " " + deg_label(j, be) + ") " +
                                             deg_label(l, ga));
                goto next_pair;  // one witness per (i,j) pair keeps reports short
              }
            }
          }
        }
      next_pair:;
      }
  return rep;
}

ValidationReport validate_module(const DgModule& m) {
  ValidationReport rep;
  const Field& f = m.field();
  const DgAlgebra& A = *m.alg;

  for (const auto& [i, n] : m.comps.dims) {
    (void)n;
    if (m.dim(i + 2) == 0) continue;
    if (!m.d(i + 1).mul(m.d(i)).is_zero())
      rep.add("d squared", "d^2 != 0 starting at degree " + std::to_string(i));
  }
  for (const auto& [j, dj] : m.comps.dims) {
    for (int b = 0; b < dj; ++b) {
      Vec eb = unit_vec(f, static_cast<std::size_t>(dj), static_cast<std::size_t>(b));
      if (m.act(0, A.unit, j, eb) != eb)
        rep.add("unit action", "1 * m != m at degree " + std::to_string(j));
    }
  }
  // module Leibniz and action associativity
  for (const auto& [i, di] : A.comps.dims) {
    for (int al = 0; al < di; ++al) {
      Vec ea = unit_vec(f, static_cast<std::size_t>(di), static_cast<std::size_t>(al));
      Vec dea = A.d(i).apply(ea);
      for (const auto& [j, dj] : m.comps.dims) {
        for (int b = 0; b < dj; ++b) {
          Vec mb = unit_vec(f, static_cast<std::size_t>(dj), static_cast<std::size_t>(b));
          if (m.dim(i + j + 1) > 0) {
            Vec lhs = m.d(i + j).apply(m.act(i, ea, j, mb));
            Vec rhs = m.act(i + 1, dea, j, mb);
            Vec dmb = m.d(j).apply(mb);
            rhs = add_vec(f, rhs, signed_vec(f, pow_sign(i), m.act(i, ea, j + 1, dmb)));
            if (lhs != rhs)
              rep.add("module Leibniz",
                      "d(a m) at degrees (" + std::to_string(i) + "," + std::to_string(j) + ")");
          }
        }
      }
      for (const auto& [l, dl] : A.comps.dims) {
        for (int be = 0; be < dl; ++be) {
          Vec eb = unit_vec(f, static_cast<std::size_t>(dl), static_cast<std::size_t>(be));
          Vec ab = A.product(i, ea, l, eb);
          for (const auto& [j, dj] : m.comps.dims) {
            (void)dj;
            if (m.dim(i + l + j) == 0) continue;
            for (int b = 0; b < m.dim(j); ++b) {
              Vec mb = unit_vec(f, static_cast<std::size_t>(m.dim(j)), static_cast<std::size_t>(b));
              Vec lhs = m.act(i + l, ab, j, mb);
              Vec rhs = m.act(i, ea, l + j, m.act(l, eb, j, mb));
              if (lhs != rhs) {
                rep.add("action associativity", "(a b) m != a (b m) at degrees (" +
                                                    std::to_string(i) + "," + std::to_string(l) +
                                                    "," + std::to_string(j) + ")");
                goto next_alg_pair;
              }
            }
          }
        }
      }
    next_alg_pair:;
    }
  }
  return rep;
}

void assert_valid(const DgAlgebra& a) {
  ValidationReport r = validate_dga(a);
  if (!r.ok())
    fail(Errc::AxiomFailure, "algebra " + a.name + ": " + r.violations.front().axiom + " (" +
                                 r.violations.front().witness + ")");
}

void assert_valid(const DgModule& m) {
  ValidationReport r = validate_module(m);
  if (!r.ok())
    fail(Errc::AxiomFailure, "module " + m.name + ": " + r.violations.front().axiom + " (" +
                                 r.violations.front().witness + ")");
}

Vec H0Data::h0_product(const Field& f, const Vec& x, const Vec& y) const {
  std::size_t n = static_cast<std::size_t>(h0_dim);
  Vec out(n, f.zero());
  for (std::size_t i = 0; i < n; ++i) {
    if (f.is_zero(x[i])) continue;
    for (std::size_t j = 0; j < n; ++j) {
      if (f.is_zero(y[j])) continue;
      Scalar c = f.mul(x[i], y[j]);
      for (std::size_t r = 0; r < n; ++r)
        out[r] = f.add(out[r], f.mul(c, table.at(r, i * n + j)));
    }
  }
  return out;
}

Scalar H0Data::augment(const Field& f, const Vec& v) const {
  Scalar s = f.zero();
  for (std::size_t j = 0; j < v.size(); ++j) s = f.add(s, f.mul(chi.at(0, j), v[j]));
  return s;
}

H0Data h0(const DgAlgebra& a) {
  const Field& f = a.field;
  H0Data out(f);
  std::size_t n0 = static_cast<std::size_t>(a.dim(0));
  require(n0 > 0, Errc::NotLocal, "H^0(A) = 0");

  // H^0 = A^0 / im(d^{-1}); representatives are standard basis vectors at the
  // non-pivot positions of [B | I].
  Matrix B = a.d(-1);
  Matrix id = Matrix::identity(f, n0);
  auto rr = B.hstack(id).rref();
  std::vector<std::size_t> rep_idx;
  for (auto p : rr.pivots)
    if (p >= B.cols()) rep_idx.push_back(p - B.cols());
  require(!rep_idx.empty(), Errc::NotLocal, "H^0(A) = 0 (unit is a boundary)");
  out.h0_dim = static_cast<int>(rep_idx.size());
  std::size_t h = rep_idx.size();
  out.reps = Matrix(f, n0, h);
  for (std::size_t k = 0; k < h; ++k) out.reps.at(rep_idx[k], k) = f.one();

  // projection to H^0 coordinates
  {
    Matrix sys = B.hstack(out.reps);
    auto sol = sys.solve(id);
    require(sol.has_value(), Errc::InternalInconsistency, "H^0 projection failed");
    out.to_h0 = Matrix(f, h, n0);
    for (std::size_t k = 0; k < h; ++k)
      for (std::size_t j = 0; j < n0; ++j) out.to_h0.at(k, j) = sol->at(B.cols() + k, j);
  }

  // multiplication table
  out.table = Matrix(f, h, h * h);
  for (std::size_t i = 0; i < h; ++i)
    for (std::size_t j = 0; j < h; ++j) {
      Vec prod = a.product(0, out.reps.column_vec(i), 0, out.reps.column_vec(j));
      Vec cls = out.to_h0.apply(prod);
      for (std::size_t r = 0; r < h; ++r) out.table.at(r, i * h + j) = cls[r];
    }
  out.one = out.to_h0.apply(a.unit);

  // Radical. Over F_p the set of nilpotents is the kernel of the iterated
  // Frobenius x -> x^{p^m} with p^m >= dim, which is F_p-linear. Over Q the
  // radical is the kernel of the trace form (x,y) -> tr(L_{xy}).
  Matrix rad_basis(f, h, 0);
  if (f.kind() == FieldKind::Prime) {
    std::uint64_t p = f.characteristic();
    std::uint64_t pe = 1;
    while (pe < h) {
      require(pe <= (1ull << 50) / p, Errc::InternalInconsistency, "Frobenius exponent overflow");
      pe *= p;
    }
    Matrix frob(f, h, h);
    for (std::size_t j = 0; j < h; ++j) {
      // b_j^{pe} by square-and-multiply in H^0
      Vec acc = out.one;
      Vec base = unit_vec(f, h, j);
      std::uint64_t e = pe;
      while (e) {
        if (e & 1) acc = out.h0_product(f, acc, base);
        base = out.h0_product(f, base, base);
        e >>= 1;
      }
      frob.set_column(j, acc);
    }
    rad_basis = frob.kernel_basis();
  } else {
    // trace vector of left multiplications
    Vec tr(h, f.zero());
    for (std::size_t mi = 0; mi < h; ++mi) {
      Scalar t = f.zero();
      for (std::size_t j = 0; j < h; ++j) t = f.add(t, out.table.at(j, mi * h + j));
      tr[mi] = t;
    }
    Matrix g(f, h, h);
    for (std::size_t i = 0; i < h; ++i)
      for (std::size_t j = 0; j < h; ++j) {
        Scalar s = f.zero();
        for (std::size_t mi = 0; mi < h; ++mi)
          s = f.add(s, f.mul(out.table.at(mi, i * h + j), tr[mi]));
        g.at(i, j) = s;
      }
    rad_basis = g.kernel_basis();
  }

  require(h - rad_basis.cols() == 1, Errc::NotLocal,
          "radical has codimension " + std::to_string(h - rad_basis.cols()) +
              " (need 1: local with residue field k)");
  out.max_ideal = rad_basis;

  // nilpotency of the radical: iterate ideal powers (must reach zero)
  {
    Matrix power = rad_basis;
    int t = 1;
    while (power.cols() > 0) {
      require(t <= static_cast<int>(h) + 1, Errc::NotLocal, "radical is not nilpotent");
      std::vector<Vec> next;
      for (std::size_t i = 0; i < power.cols(); ++i)
        for (std::size_t j = 0; j < rad_basis.cols(); ++j)
          next.push_back(out.h0_product(f, power.column_vec(i), rad_basis.column_vec(j)));
      Matrix span = Matrix::from_columns(f, h, next);
      auto srr = span.rref();  // pivot columns form an independent spanning set
      Matrix reduced(f, h, srr.pivots.size());
      std::size_t k = 0;
      for (auto piv : srr.pivots) reduced.set_column(k++, span.column_vec(piv));
      power = reduced;
      ++t;
    }
    out.nilpotency = t;
  }

  // minimal generators: basis of m/m^2
  {
    std::vector<Vec> sq;
    for (std::size_t i = 0; i < rad_basis.cols(); ++i)
      for (std::size_t j = 0; j < rad_basis.cols(); ++j)
        sq.push_back(out.h0_product(f, rad_basis.column_vec(i), rad_basis.column_vec(j)));
    Matrix m2 = Matrix::from_columns(f, h, sq);
    auto rr2 = m2.hstack(rad_basis).rref();
    for (auto p : rr2.pivots)
      if (p >= m2.cols()) out.min_gens.push_back(rad_basis.column_vec(p - m2.cols()));
  }

  // augmentation: coordinates along [1 | max_ideal]
  {
    Matrix one_col = Matrix::from_columns(f, h, {out.one});
    Matrix sys = one_col.hstack(out.max_ideal);
    auto sol = sys.solve(Matrix::identity(f, h));
    require(sol.has_value(), Errc::NotLocal, "unit does not complement the radical");
    out.chi = Matrix(f, 1, h);
    for (std::size_t j = 0; j < h; ++j) out.chi.at(0, j) = sol->at(0, j);
  }
  return out;
}

DgModule residue_module(const AlgebraPtr& a) {
  H0Data h = h0(*a);
  const Field& f = a->field;
  DgModule k(a);
  k.name = "k";
  k.comps.set_dim(0, 1);
  k.comps.set_labels(0, {"1"});
  std::size_t n0 = static_cast<std::size_t>(a->dim(0));
  Matrix act(f, 1, n0);
  // a * 1_k = chi(class of a)
  for (std::size_t j = 0; j < n0; ++j) {
    Vec cls = h.to_h0.apply(unit_vec(f, n0, j));
    act.at(0, j) = h.augment(f, cls);
  }
  k.action.emplace(std::make_pair(0, 0), std::move(act));
  return k;
}

DgModule algebra_as_module(const AlgebraPtr& a) {
  DgModule m(a);
  m.name = a->name;
  m.comps = a->comps;
  for (const auto& [ij, mm] : a->mult) m.action.emplace(ij, mm);
  m.diff = a->diff;
  return m;
}

DgModule free_module(const AlgebraPtr& a, const std::vector<int>& degrees) {
  const Field& f = a->field;
  DgModule m(a);
  m.name = "free";
  // copy g of A[-t_g] contributes A^{d-t_g} at module degree d
  std::map<int, int> dims;
  std::map<int, std::vector<std::string>> labels;
  // ordered blocks per module degree: generator index order
  std::map<int, std::vector<std::pair<std::size_t, int>>> blocks;  // mdeg -> [(g, adeg)]
  for (std::size_t g = 0; g < degrees.size(); ++g) {
    int t = degrees[g];
    for (const auto& [ad, an] : a->comps.dims) {
      int md = ad + t;
      blocks[md].push_back({g, ad});
      dims[md] += an;
      for (int i = 0; i < an; ++i)
        labels[md].push_back("g" + std::to_string(g) + "*" + a->comps.label(ad, i));
    }
  }
  for (const auto& [d, n] : dims) m.comps.set_dim(d, n);
  for (auto& [d, ls] : labels) m.comps.set_labels(d, std::move(ls));

  auto offset_of = [&](int mdeg, std::size_t g) {
    std::size_t off = 0;
    for (const auto& [bg, ad] : blocks[mdeg]) {
      if (bg == g) return off;
      off += static_cast<std::size_t>(a->dim(ad));
    }
    return off;
  };

  // differential: on copy g, d = (-1)^{t_g} d_A
  for (const auto& [mdeg, n] : dims) {
    if (dims.find(mdeg + 1) == dims.end()) continue;
    Matrix dd(f, static_cast<std::size_t>(dims[mdeg + 1]), static_cast<std::size_t>(n));
    for (const auto& [g, ad] : blocks[mdeg]) {
      int t = degrees[g];
      Matrix da = a->d(ad);
      if (da.rows() == 0) continue;
      Matrix signed_da = (t % 2 != 0) ? da.negated() : da;
      dd.paste(offset_of(mdeg + 1, g), offset_of(mdeg, g), signed_da);
    }
    m.diff.emplace(mdeg, std::move(dd));
  }

  // action: a *_{A[-t]} x = (-1)^{t |a|} (a x)
  for (const auto& [ai, an] : a->comps.dims) {
    for (const auto& [mdeg, n] : dims) {
      int od = ai + mdeg;
      if (dims.find(od) == dims.end()) continue;
      Matrix act(f, static_cast<std::size_t>(dims[od]), static_cast<std::size_t>(an) * n);
      for (const auto& [g, ad] : blocks[mdeg]) {
        int t = degrees[g];
        Matrix ma = a->mult_matrix(ai, ad);
        if (ma.rows() == 0) continue;
        int sign = pow_sign(static_cast<long long>(t) * ai);
        std::size_t src_off = offset_of(mdeg, g);
        std::size_t dst_off = offset_of(od, g);
        std::size_t dj = static_cast<std::size_t>(a->dim(ad));
        for (std::size_t al = 0; al < static_cast<std::size_t>(an); ++al)
          for (std::size_t be = 0; be < dj; ++be)
            for (std::size_t r = 0; r < ma.rows(); ++r) {
              Scalar v = ma.at(r, al * dj + be);
              if (sign < 0) v = f.neg(v);
              act.at(dst_off + r, al * n + (src_off + be)) = v;
            }
      }
      m.action.emplace(std::make_pair(ai, mdeg), std::move(act));
    }
  }
  return m;
}

DgModule shift_module(const DgModule& m, int i) {
  const Field& f = m.field();
  DgModule s(m.alg);
  s.name = m.name + "[" + std::to_string(i) + "]";
  for (const auto& [d, n] : m.comps.dims) s.comps.set_dim(d - i, n);
  for (const auto& [d, ls] : m.comps.labels) s.comps.labels[d - i] = ls;
  for (const auto& [d, dd] : m.diff) {
    if (!dd.rows() || !dd.cols()) continue;
    s.diff.emplace(d - i, (i % 2 != 0) ? dd.negated() : dd);
  }
  for (const auto& [tj, act] : m.action) {
    auto [t, j] = tj;
    if (!act.rows() || !act.cols()) continue;
    int sign = pow_sign(static_cast<long long>(i) * t);
    s.action.emplace(std::make_pair(t, j - i), sign < 0 ? act.negated() : act);
  }
  (void)f;
  return s;
}

DgModule matlis_dual(const DgModule& m) {
  const Field& f = m.field();
  DgModule d(m.alg);
  d.name = m.name + "^v";
  for (const auto& [deg, n] : m.comps.dims) d.comps.set_dim(-deg, n);
  for (const auto& [deg, n] : m.comps.dims) {
    std::vector<std::string> ls;
    for (int i = 0; i < n; ++i) ls.push_back(m.comps.label(deg, i) + "^*");
    d.comps.set_labels(-deg, std::move(ls));
  }
  // d^j on (M^v)^j = (M^{-j})^*: (delta phi)(x) = -(-1)^j phi(dx), x in M^{-j-1}
  for (const auto& [deg, n] : m.comps.dims) {
    (void)n;
    int j = -deg;  // dual degree holding (M^{deg})^*
    int src = -j - 1;  // = deg - 1... careful: target of d^j is (M^{-j-1})^*
    if (m.comps.dims.find(src) == m.comps.dims.end()) continue;
    Matrix dm = m.d(src);  // M^{src} -> M^{src+1} = M^{-j}
    Matrix t = dm.transpose();
    if (pow_sign(j) > 0) t = t.negated();  // -(-1)^j
    d.diff.emplace(j, std::move(t));
  }
  // action: (a phi)(x) = (-1)^{|a| |phi|} phi(a x)
  for (const auto& [tj, act] : m.action) {
    auto [t, jm] = tj;                 // A^t x M^{jm} -> M^{t+jm}
    int jd = -(t + jm);                // dual degree of phi
    int od = t + jd;                   // output dual degree = -jm
    std::size_t da = static_cast<std::size_t>(m.alg->dim(t));
    std::size_t dphi = static_cast<std::size_t>(m.dim(t + jm));
    std::size_t dout = static_cast<std::size_t>(m.dim(jm));
    if (!da || !dphi || !dout) continue;
    Matrix out(f, dout, da * dphi);
    int sign = pow_sign(static_cast<long long>(t) * jd);
    for (std::size_t al = 0; al < da; ++al)
      for (std::size_t b = 0; b < dphi; ++b)      // phi = dual basis of M^{t+jm}
        for (std::size_t c = 0; c < dout; ++c) {  // evaluate on x = basis of M^{jm}
          Scalar v = act.at(b, al * dout + c);
          if (sign < 0) v = f.neg(v);
          out.at(c, al * dphi + b) = v;
        }
    d.action.emplace(std::make_pair(t, jd), std::move(out));
  }
  return d;
}

DgModule cone_module(const DgModuleMap& fm) {
  const DgModule& x = fm.src;
  const DgModule& y = fm.tgt;
  const Field& f = x.field();
  DgModule c(x.alg);
  c.name = "cone(" + x.name + "->" + y.name + ")";
  std::map<int, int> dims;
  for (const auto& [d, n] : y.comps.dims) dims[d] += n;
  for (const auto& [d, n] : x.comps.dims) dims[d - 1] += n;
  for (const auto& [d, n] : dims) c.comps.set_dim(d, n);
  for (const auto& [d, n] : dims) {
    std::vector<std::string> ls;
    for (int i = 0; i < y.dim(d); ++i) ls.push_back("t:" + y.comps.label(d, i));
    for (int i = 0; i < x.dim(d + 1); ++i) ls.push_back("s:" + x.comps.label(d + 1, i));
    (void)n;
    c.comps.set_labels(d, std::move(ls));
  }
  auto ydim = [&](int d) { return static_cast<std::size_t>(y.dim(d)); };
  auto xdim = [&](int d) { return static_cast<std::size_t>(x.dim(d + 1)); };
  for (const auto& [d, n] : dims) {
    if (dims.find(d + 1) == dims.end()) continue;
    Matrix dd(f, static_cast<std::size_t>(dims[d + 1]), static_cast<std::size_t>(n));
    dd.paste(0, 0, y.d(d));
    dd.paste(0, ydim(d), fm.component(d + 1));
    dd.paste(ydim(d + 1), ydim(d), x.d(d + 1).negated());
    c.diff.emplace(d, std::move(dd));
  }
  for (const auto& [t, an] : x.alg->comps.dims) {
    for (const auto& [d, n] : dims) {
      int od = t + d;
      if (dims.find(od) == dims.end()) continue;
      Matrix act(f, static_cast<std::size_t>(dims[od]), static_cast<std::size_t>(an) * n);
      Matrix ya = y.action_matrix(t, d);
      Matrix xa = x.action_matrix(t, d + 1);
      int sign = pow_sign(t);
      for (std::size_t al = 0; al < static_cast<std::size_t>(an); ++al) {
        for (std::size_t b = 0; b < ydim(d); ++b)
          for (std::size_t r = 0; r < ydim(od); ++r)
            act.at(r, al * n + b) = ya.at(r, al * ydim(d) + b);
        for (std::size_t b = 0; b < xdim(d); ++b)
          for (std::size_t r = 0; r < xdim(od); ++r) {
            Scalar v = xa.at(r, al * xdim(d) + b);
            if (sign < 0) v = f.neg(v);
            act.at(ydim(od) + r, al * n + (ydim(d) + b)) = v;
          }
      }
      c.action.emplace(std::make_pair(t, d), std::move(act));
    }
  }
  return c;
}

DgModule direct_sum_module(const DgModule& a, const DgModule& b) {
  require(a.alg.get() == b.alg.get(), Errc::AlgebraMismatch, "direct sum across algebras");
  const Field& f = a.field();
  DgModule s(a.alg);
  s.name = a.name + "+" + b.name;
  std::map<int, int> dims;
  for (const auto& [d, n] : a.comps.dims) dims[d] += n;
  for (const auto& [d, n] : b.comps.dims) dims[d] += n;
  for (const auto& [d, n] : dims) s.comps.set_dim(d, n);
  auto adim = [&](int d) { return static_cast<std::size_t>(a.dim(d)); };
  for (const auto& [d, n] : dims) {
    if (dims.find(d + 1) == dims.end()) continue;
    Matrix dd(f, static_cast<std::size_t>(dims[d + 1]), static_cast<std::size_t>(n));
    dd.paste(0, 0, a.d(d));
    dd.paste(adim(d + 1), adim(d), b.d(d));
    s.diff.emplace(d, std::move(dd));
  }
  for (const auto& [t, an] : a.alg->comps.dims) {
    for (const auto& [d, n] : dims) {
      int od = t + d;
      if (dims.find(od) == dims.end()) continue;
      Matrix act(f, static_cast<std::size_t>(dims[od]), static_cast<std::size_t>(an) * n);
      Matrix aa = a.action_matrix(t, d);
      Matrix ba = b.action_matrix(t, d);
      for (std::size_t al = 0; al < static_cast<std::size_t>(an); ++al) {
        for (std::size_t c = 0; c < adim(d); ++c)
          for (std::size_t r = 0; r < adim(od); ++r)
            act.at(r, al * n + c) = aa.at(r, al * adim(d) + c);
        for (std::size_t c = 0; c < static_cast<std::size_t>(b.dim(d)); ++c)
          for (std::size_t r = 0; r < static_cast<std::size_t>(b.dim(od)); ++r)
            act.at(adim(od) + r, al * n + adim(d) + c) = ba.at(r, al * b.dim(d) + c);
      }
      s.action.emplace(std::make_pair(t, d), std::move(act));
    }
  }
  return s;
}

DgModule submodule(const DgModule& m, const std::map<int, Matrix>& span) {
  const Field& f = m.field();
  DgModule s(m.alg);
  s.name = m.name + "|sub";
  for (const auto& [d, cols] : span)
    if (cols.cols() > 0) s.comps.set_dim(d, static_cast<int>(cols.cols()));
  auto span_at = [&](int d) {
    auto it = span.find(d);
    if (it != span.end()) return it->second;
    return Matrix(f, static_cast<std::size_t>(m.dim(d)), 0);
  };
  for (const auto& [d, cols] : span) {
    if (cols.cols() == 0) continue;
    Matrix img = m.d(d).mul(cols);
    if (img.rows() == 0) continue;
    Matrix tgt = span_at(d + 1);
    if (img.is_zero()) {
      if (tgt.cols() > 0) s.diff.emplace(d, Matrix(f, tgt.cols(), cols.cols()));
      continue;
    }
    auto sol = tgt.solve(img);
    require(sol.has_value(), Errc::ShapeError, "span not closed under d");
    s.diff.emplace(d, *sol);
  }
  for (const auto& [t, an] : m.alg->comps.dims) {
    for (const auto& [d, cols] : span) {
      if (cols.cols() == 0) continue;
      int od = t + d;
      Matrix tgt = span_at(od);
      if (m.dim(od) == 0) continue;
      Matrix act(f, tgt.cols(), static_cast<std::size_t>(an) * cols.cols());
      bool any = false;
      for (int al = 0; al < an; ++al) {
        Vec ea = unit_vec(f, static_cast<std::size_t>(an), static_cast<std::size_t>(al));
        Matrix op = m.action_operator(t, ea, d);
        Matrix img = op.mul(cols);
        if (img.is_zero()) continue;
        auto sol = tgt.solve(img);
        require(sol.has_value(), Errc::ShapeError, "span not closed under the action");
        any = true;
        for (std::size_t c = 0; c < cols.cols(); ++c)
          for (std::size_t r = 0; r < tgt.cols(); ++r)
            act.at(r, static_cast<std::size_t>(al) * cols.cols() + c) = sol->at(r, c);
      }
      if (any || tgt.cols() > 0) s.action.emplace(std::make_pair(t, d), std::move(act));
    }
  }
  return s;
}

Cochain dg_hom(const DgModule& m, const DgModule& n) {
  require(m.alg.get() == n.alg.get(), Errc::AlgebraMismatch, "Hom across algebras");
  const Field& f = m.field();
  if (m.comps.empty() || n.comps.empty()) return Cochain::zero(f);
  const DgAlgebra& A = *m.alg;
  int lo = n.comps.min_deg() - m.comps.max_deg();
  int hi = n.comps.max_deg() - m.comps.min_deg();

  struct Layout {
    std::map<int, std::size_t> offset;  // m-degree j -> offset of block f_j
    std::size_t total = 0;
  };
  auto layout_for = [&](int i) {
    Layout L;
    for (const auto& [j, dj] : m.comps.dims) {
      int oj = j + i;
      if (n.dim(oj) == 0) continue;
      L.offset[j] = L.total;
      L.total += static_cast<std::size_t>(dj) * static_cast<std::size_t>(n.dim(oj));
    }
    return L;
  };
  auto u_index = [&](const Layout& L, int i, int j, std::size_t mb, std::size_t nc) {
    return L.offset.at(j) + mb * static_cast<std::size_t>(n.dim(j + i)) + nc;
  };

  std::map<int, Layout> layouts;
  std::map<int, Matrix> bases;  // Hom^i basis as columns in unknown coords
  for (int i = lo; i <= hi; ++i) {
    Layout L = layout_for(i);
    layouts[i] = L;
    if (L.total == 0) continue;
    // constraints: f(a mb) - (-1)^{i t} a f(mb) = 0
    std::vector<Vec> rows;
    for (const auto& [t, da] : A.comps.dims) {
      for (int al = 0; al < da; ++al) {
        Vec ea = unit_vec(f, static_cast<std::size_t>(da), static_cast<std::size_t>(al));
        for (const auto& [j, dj] : m.comps.dims) {
          int sj = t + j;          // degree of a*mb in M
          int oj = sj + i;         // output degree in N
          if (n.dim(oj) == 0) continue;
          Matrix act_m = m.action_operator(t, ea, j);       // M^j -> M^{sj}
          Matrix act_n = n.action_operator(t, ea, j + i);   // N^{j+i} -> N^{oj}
          int sign = pow_sign(static_cast<long long>(i) * t);
          for (int mb = 0; mb < dj; ++mb) {
            // row block: for each output coordinate r in N^{oj}
            std::vector<Vec> block(static_cast<std::size_t>(n.dim(oj)),
                                   zero_vec(f, L.total));
            // term f_{sj}(a mb): coefficients act_m[c][mb] at u(sj, c, r)
            if (L.offset.count(sj)) {
              for (int c = 0; c < m.dim(sj); ++c) {
                const Scalar& w = act_m.at(static_cast<std::size_t>(c), static_cast<std::size_t>(mb));
                if (f.is_zero(w)) continue;
                for (int r = 0; r < n.dim(oj); ++r) {
                  auto idx = u_index(L, i, sj, static_cast<std::size_t>(c), static_cast<std::size_t>(r));
                  block[static_cast<std::size_t>(r)][idx] =
                      f.add(block[static_cast<std::size_t>(r)][idx], w);
                }
              }
            }
            // term -(-1)^{it} a f_j(mb): for each nc, a*n_{nc} has coords act_n[r][nc]
            if (L.offset.count(j)) {
              for (int nc = 0; nc < n.dim(j + i); ++nc) {
                auto idx = u_index(L, i, j, static_cast<std::size_t>(mb), static_cast<std::size_t>(nc));
                for (int r = 0; r < n.dim(oj); ++r) {
                  Scalar w = act_n.at(static_cast<std::size_t>(r), static_cast<std::size_t>(nc));
                  if (f.is_zero(w)) continue;
                  if (sign > 0) w = f.neg(w);
                  block[static_cast<std::size_t>(r)][idx] =
                      f.add(block[static_cast<std::size_t>(r)][idx], w);
                }
              }
            }
            for (auto& rv : block)
              if (!is_zero_vec(f, rv)) rows.push_back(std::move(rv));
          }
        }
      }
    }
    Matrix constr(f, rows.size(), L.total);
    for (std::size_t r = 0; r < rows.size(); ++r)
      for (std::size_t cidx = 0; cidx < L.total; ++cidx) constr.at(r, cidx) = rows[r][cidx];
    bases.emplace(i, constr.kernel_basis());
  }

  GradedSpace sp;
  for (const auto& [i, b] : bases) sp.set_dim(i, static_cast<int>(b.cols()));
  std::map<int, Matrix> dd;
  for (const auto& [i, b] : bases) {
    auto itn = bases.find(i + 1);
    std::size_t next_dim = itn == bases.end() ? 0 : itn->second.cols();
    if (b.cols() == 0) continue;
    if (next_dim == 0) continue;
    const Layout& L = layouts[i];
    const Layout& Ln = layouts[i + 1];
    // delta on ambient coords
    Matrix delta(f, Ln.total, L.total);
    for (const auto& [j, off] : L.offset) {
      (void)off;
      int oj = j + i;
      // d_N o f_j : contributes to block j of Hom^{i+1} (f_j : M^j -> N^{oj+1})
      if (Ln.offset.count(j)) {
        Matrix dn = n.d(oj);
        for (int mb = 0; mb < m.dim(j); ++mb)
          for (int nc = 0; nc < n.dim(oj); ++nc) {
            auto src = u_index(L, i, j, static_cast<std::size_t>(mb), static_cast<std::size_t>(nc));
            for (int r = 0; r < n.dim(oj + 1); ++r) {
              Scalar w = dn.at(static_cast<std::size_t>(r), static_cast<std::size_t>(nc));
              if (f.is_zero(w)) continue;
              auto dst = u_index(Ln, i + 1, j, static_cast<std::size_t>(mb), static_cast<std::size_t>(r));
              delta.at(dst, src) = f.add(delta.at(dst, src), w);
            }
          }
      }
      // -(-1)^i f_{j} o d_M^{j-1}: contributes to block j-1 of Hom^{i+1}
      if (Ln.offset.count(j - 1)) {
        Matrix dm = m.d(j - 1);
        int sign = pow_sign(i);
        for (int mb = 0; mb < m.dim(j - 1); ++mb)
          for (int c = 0; c < m.dim(j); ++c) {
            Scalar w = dm.at(static_cast<std::size_t>(c), static_cast<std::size_t>(mb));
            if (f.is_zero(w)) continue;
            if (sign > 0) w = f.neg(w);
            for (int nc = 0; nc < n.dim(j + i); ++nc) {
              auto src = u_index(L, i, j, static_cast<std::size_t>(c), static_cast<std::size_t>(nc));
              auto dst =
                  u_index(Ln, i + 1, j - 1, static_cast<std::size_t>(mb), static_cast<std::size_t>(nc));
              delta.at(dst, src) = f.add(delta.at(dst, src), w);
            }
          }
      }
    }
    Matrix img = delta.mul(b);
    auto sol = itn->second.solve(img);
    require(sol.has_value(), Errc::InternalInconsistency, "Hom differential leaves A-linear maps");
    dd.emplace(i, *sol);
  }
  return Cochain(f, std::move(sp), std::move(dd));
}

Cochain dg_tensor(const DgModule& m, const DgModule& n) {
  require(m.alg.get() == n.alg.get(), Errc::AlgebraMismatch, "tensor across algebras");
  const Field& f = m.field();
  if (m.comps.empty() || n.comps.empty()) return Cochain::zero(f);
  const DgAlgebra& A = *m.alg;
  int lo = m.comps.min_deg() + n.comps.min_deg();
  int hi = m.comps.max_deg() + n.comps.max_deg();

  struct Layout {
    std::map<int, std::size_t> offset;  // m-degree j -> offset of M^j (x) N^{t-j}
    std::size_t total = 0;
  };
  std::map<int, Layout> layouts;
  for (int t = lo; t <= hi; ++t) {
    Layout L;
    for (const auto& [j, dj] : m.comps.dims) {
      if (n.dim(t - j) == 0) continue;
      L.offset[j] = L.total;
      L.total += static_cast<std::size_t>(dj) * static_cast<std::size_t>(n.dim(t - j));
    }
    layouts[t] = L;
  }
  auto amb_index = [&](const Layout& L, int t, int j, std::size_t a, std::size_t b) {
    return L.offset.at(j) + a * static_cast<std::size_t>(n.dim(t - j)) + b;
  };

  // quotient by the balancing relations; store section + projection per degree
  std::map<int, Matrix> sections, projections;
  for (int t = lo; t <= hi; ++t) {
    const Layout& L = layouts[t];
    if (L.total == 0) {
      sections.emplace(t, Matrix(f, 0, 0));
      projections.emplace(t, Matrix(f, 0, 0));
      continue;
    }
    std::vector<Vec> rels;
    for (const auto& [u, du] : A.comps.dims) {
      for (int al = 0; al < du; ++al) {
        Vec ea = unit_vec(f, static_cast<std::size_t>(du), static_cast<std::size_t>(al));
        for (const auto& [j, dj] : m.comps.dims) {
          int bj = t - j - u;  // degree of n-part
          if (n.dim(bj) == 0) continue;
          if (!L.offset.count(j + u) && !L.offset.count(j)) continue;
          Matrix act_m = m.action_operator(u, ea, j);   // M^j -> M^{j+u}
          Matrix act_n = n.action_operator(u, ea, bj);  // N^{bj} -> N^{bj+u}
          int sign = pow_sign(static_cast<long long>(u) * j);  // m a = (-1)^{u j} a m
          for (int a = 0; a < dj; ++a)
            for (int b = 0; b < n.dim(bj); ++b) {
              Vec rel = zero_vec(f, L.total);
              bool nonzero = false;
              if (L.offset.count(j + u)) {
                for (int c = 0; c < m.dim(j + u); ++c) {
                  Scalar w = act_m.at(static_cast<std::size_t>(c), static_cast<std::size_t>(a));
                  if (f.is_zero(w)) continue;
                  if (sign < 0) w = f.neg(w);
                  auto idx = amb_index(L, t, j + u, static_cast<std::size_t>(c),
                                       static_cast<std::size_t>(b));
                  rel[idx] = f.add(rel[idx], w);
                  nonzero = true;
                }
              }
              if (L.offset.count(j)) {
                for (int c = 0; c < n.dim(bj + u); ++c) {
                  Scalar w = act_n.at(static_cast<std::size_t>(c), static_cast<std::size_t>(b));
                  if (f.is_zero(w)) continue;
                  auto idx =
                      amb_index(L, t, j, static_cast<std::size_t>(a), static_cast<std::size_t>(c));
                  rel[idx] = f.sub(rel[idx], w);
                  nonzero = true;
                }
              }
              if (nonzero) rels.push_back(std::move(rel));
            }
        }
      }
    }
    Matrix r(f, L.total, rels.size());
    for (std::size_t c = 0; c < rels.size(); ++c) r.set_column(c, rels[c]);
    Matrix id = Matrix::identity(f, L.total);
    auto rr = r.hstack(id).rref();
    std::vector<std::size_t> comp;
    for (auto p : rr.pivots)
      if (p >= r.cols()) comp.push_back(p - r.cols());
    Matrix section(f, L.total, comp.size());
    for (std::size_t k = 0; k < comp.size(); ++k) section.at(comp[k], k) = f.one();
    Matrix proj(f, comp.size(), L.total);
    {
      auto sol = r.hstack(section).solve(id);
      require(sol.has_value(), Errc::InternalInconsistency, "tensor projection failed");
      for (std::size_t k = 0; k < comp.size(); ++k)
        for (std::size_t c = 0; c < L.total; ++c) proj.at(k, c) = sol->at(r.cols() + k, c);
    }
    sections.emplace(t, std::move(section));
    projections.emplace(t, std::move(proj));
  }

  GradedSpace sp;
  for (const auto& [t, s] : sections)
    if (s.cols() > 0) sp.set_dim(t, static_cast<int>(s.cols()));
  std::map<int, Matrix> dd;
  for (int t = lo; t < hi; ++t) {
    const Layout& L = layouts[t];
    const Layout& Ln = layouts[t + 1];
    const Matrix& sec = sections.at(t);
    const Matrix& projn = projections.at(t + 1);
    if (sec.cols() == 0 || projn.rows() == 0) continue;
    Matrix delta(f, Ln.total, L.total);
    for (const auto& [j, off] : L.offset) {
      (void)off;
      int bj = t - j;
      Matrix dm = m.d(j);
      Matrix dn = n.d(bj);
      int sign = pow_sign(j);
      for (int a = 0; a < m.dim(j); ++a)
        for (int b = 0; b < n.dim(bj); ++b) {
          auto src = amb_index(L, t, j, static_cast<std::size_t>(a), static_cast<std::size_t>(b));
          if (Ln.offset.count(j + 1)) {
            for (int c = 0; c < m.dim(j + 1); ++c) {
              Scalar w = dm.at(static_cast<std::size_t>(c), static_cast<std::size_t>(a));
              if (f.is_zero(w)) continue;
              auto dst = amb_index(Ln, t + 1, j + 1, static_cast<std::size_t>(c),
                                   static_cast<std::size_t>(b));
              delta.at(dst, src) = f.add(delta.at(dst, src), w);
            }
          }
          if (Ln.offset.count(j)) {
            for (int c = 0; c < n.dim(bj + 1); ++c) {
              Scalar w = dn.at(static_cast<std::size_t>(c), static_cast<std::size_t>(b));
              if (f.is_zero(w)) continue;
              if (sign < 0) w = f.neg(w);
              auto dst =
                  amb_index(Ln, t + 1, j, static_cast<std::size_t>(a), static_cast<std::size_t>(c));
              delta.at(dst, src) = f.add(delta.at(dst, src), w);
            }
          }
        }
    }
    dd.emplace(t, projn.mul(delta.mul(sec)));
  }
  // prune zero-shaped differentials
  std::map<int, Matrix> dd2;
  for (auto& [t, mtx] : dd)
    if (mtx.rows() && mtx.cols()) dd2.emplace(t, std::move(mtx));
  return Cochain(f, std::move(sp), std::move(dd2));
}

std::map<int, Matrix> augmentation_ideal(const DgAlgebra& a, const H0Data& h) {
  const Field& f = a.field;
  std::map<int, Matrix> out;
  for (const auto& [d, n] : a.comps.dims) {
    if (d == 0) {
      // kernel of chi o pi : A^0 -> k
      Matrix row(f, 1, static_cast<std::size_t>(n));
      for (int j = 0; j < n; ++j) {
        Vec cls = h.to_h0.apply(unit_vec(f, static_cast<std::size_t>(n), static_cast<std::size_t>(j)));
        row.at(0, static_cast<std::size_t>(j)) = h.augment(f, cls);
      }
      out.emplace(0, row.kernel_basis());
    } else {
      out.emplace(d, Matrix::identity(f, static_cast<std::size_t>(n)));
    }
  }
  return out;
}

}  // namespace dgaudit
