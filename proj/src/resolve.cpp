#include "dgaudit/resolve.hpp"

#include <algorithm>

namespace dgaudit {

namespace {

int pow_sign(long long e) { return (e % 2 == 0) ? 1 : -1; }

struct GenLayout {
  // per-degree basis (gen index, algebra basis index), contiguous per gen
  std::vector<std::pair<std::size_t, int>> list;
  std::map<std::size_t, std::size_t> gen_offset;
};

int cohomology_dim_between_raw(const Matrix& d_in, const Matrix& d_out) {
  auto rr_out = d_out.rref();
  std::size_t kerdim = d_out.cols() - rr_out.rank;
  auto rr_in = d_in.rref();
  return static_cast<int>(kerdim - rr_in.rank);
}

GenLayout layout_at(const DgAlgebra& A, const std::vector<SemifreeGen>& gens, int deg) {
  GenLayout L;
  for (std::size_t g = 0; g < gens.size(); ++g) {
    int ad = deg - gens[g].degree;
    int n = A.dim(ad);
    if (n == 0) continue;
    L.gen_offset[g] = L.list.size();
    for (int a = 0; a < n; ++a) L.list.push_back({g, a});
  }
  return L;
}

Matrix gens_differential(const DgAlgebra& A, const std::vector<SemifreeGen>& gens, int deg) {
  const Field& f = A.field;
  GenLayout src = layout_at(A, gens, deg);
  GenLayout dst = layout_at(A, gens, deg + 1);
  Matrix d(f, dst.list.size(), src.list.size());
  for (std::size_t col = 0; col < src.list.size(); ++col) {
    auto [g, aidx] = src.list[col];
    int ad = deg - gens[g].degree;
    Vec ea = unit_vec(f, static_cast<std::size_t>(A.dim(ad)), static_cast<std::size_t>(aidx));
    // d(a g) = (da) g + (-1)^{|a|} a d(g)
    Vec da = A.d(ad).apply(ea);
    if (!is_zero_vec(f, da) && dst.gen_offset.count(g)) {
      std::size_t off = dst.gen_offset.at(g);
      for (std::size_t r = 0; r < da.size(); ++r)
        d.at(off + r, col) = f.add(d.at(off + r, col), da[r]);
    }
    int sign = pow_sign(ad);
    for (const auto& [l, coeff] : gens[g].d_expansion) {
      int cd = gens[g].degree + 1 - gens[l].degree;  // coefficient degree
      Vec prod = A.product(ad, ea, cd, coeff);       // in A^{deg+1-t_l}
      if (is_zero_vec(f, prod) || !dst.gen_offset.count(l)) continue;
      std::size_t off = dst.gen_offset.at(l);
      for (std::size_t r = 0; r < prod.size(); ++r) {
        Scalar v = prod[r];
        if (sign < 0) v = f.neg(v);
        d.at(off + r, col) = f.add(d.at(off + r, col), v);
      }
    }
  }
  return d;
}

Matrix gens_augmentation(const DgAlgebra& A, const std::vector<SemifreeGen>& gens,
                         const DgModule& target, int deg) {
  const Field& f = A.field;
  GenLayout src = layout_at(A, gens, deg);
  Matrix e(f, static_cast<std::size_t>(target.dim(deg)), src.list.size());
  for (std::size_t col = 0; col < src.list.size(); ++col) {
    auto [g, aidx] = src.list[col];
    int ad = deg - gens[g].degree;
    Vec ea = unit_vec(f, static_cast<std::size_t>(A.dim(ad)), static_cast<std::size_t>(aidx));
    Vec img = target.act(ad, ea, gens[g].degree, gens[g].aug_image);
    for (std::size_t r = 0; r < img.size(); ++r) e.at(r, col) = img[r];
  }
  return e;
}

// action of a degree-0 algebra element on the degree-`deg` part of G
Matrix gens_action0(const DgAlgebra& A, const std::vector<SemifreeGen>& gens, const Vec& x,
                    int deg) {
  const Field& f = A.field;
  GenLayout L = layout_at(A, gens, deg);
  Matrix op(f, L.list.size(), L.list.size());
  for (const auto& [g, off] : L.gen_offset) {
    int ad = deg - gens[g].degree;
    Matrix blk = A.left_mult_operator(0, x, ad);
    for (std::size_t r = 0; r < blk.rows(); ++r)
      for (std::size_t c = 0; c < blk.cols(); ++c) op.at(off + r, off + c) = blk.at(r, c);
  }
  return op;
}

DgModule as_module_from_gens(const AlgebraPtr& alg, const std::vector<SemifreeGen>& gens,
                             const std::string& name) {
  const DgAlgebra& A = *alg;
  const Field& f = A.field;
  DgModule g(alg);
  g.name = name;
  if (gens.empty()) return g;
  int lo = 0, hi = 0;
  bool first = true;
  for (const auto& gen : gens) {
    int l = gen.degree + (A.comps.empty() ? 0 : A.comps.min_deg());
    int h = gen.degree;
    lo = first ? l : std::min(lo, l);
    hi = first ? h : std::max(hi, h);
    first = false;
  }
  std::map<int, GenLayout> layouts;
  for (int d = lo; d <= hi; ++d) {
    GenLayout L = layout_at(A, gens, d);
    if (!L.list.empty()) g.comps.set_dim(d, static_cast<int>(L.list.size()));
    layouts[d] = std::move(L);
  }
  for (int d = lo; d < hi; ++d) {
    Matrix dm = gens_differential(A, gens, d);
    if (dm.rows() && dm.cols() && !dm.is_zero()) g.diff.emplace(d, std::move(dm));
  }
  for (const auto& [t, an] : A.comps.dims) {
    for (int d = lo; d <= hi; ++d) {
      const GenLayout& src = layouts[d];
      if (src.list.empty()) continue;
      auto it = layouts.find(t + d);
      if (it == layouts.end() || it->second.list.empty()) continue;
      const GenLayout& dst = it->second;
      Matrix act(f, dst.list.size(), static_cast<std::size_t>(an) * src.list.size());
      for (const auto& [gi, off] : src.gen_offset) {
        int ad = d - gens[gi].degree;
        if (!dst.gen_offset.count(gi)) continue;
        std::size_t doff = dst.gen_offset.at(gi);
        Matrix mm = A.mult_matrix(t, ad);
        for (int al = 0; al < an; ++al)
          for (int b = 0; b < A.dim(ad); ++b)
            for (std::size_t r = 0; r < mm.rows(); ++r) {
              Scalar v = mm.at(r, static_cast<std::size_t>(al) * A.dim(ad) + b);
              if (f.is_zero(v)) continue;
              act.at(doff + r, static_cast<std::size_t>(al) * src.list.size() + (off + b)) = v;
            }
      }
      g.action.emplace(std::make_pair(t, d), std::move(act));
    }
  }
  return g;
}

}  // namespace

std::map<int, int> SemifreeResolution::generator_counts() const {
  std::map<int, int> out;
  for (const auto& g : gens) out[g.degree] += 1;
  return out;
}

int SemifreeResolution::min_gen_degree() const {
  require(!gens.empty(), Errc::ZeroModule, "resolution has no generators");
  int m = gens.front().degree;
  for (const auto& g : gens) m = std::min(m, g.degree);
  return m;
}

DgModule SemifreeResolution::as_module() const {
  return as_module_from_gens(target.alg, gens, "G(" + target.name + ")");
}

std::map<int, Matrix> SemifreeResolution::augmentation() const {
  std::map<int, Matrix> out;
  const DgAlgebra& A = *target.alg;
  if (gens.empty()) return out;
  int lo = min_gen_degree() + (A.comps.empty() ? 0 : A.comps.min_deg());
  int hi = gens.front().degree;
  for (const auto& g : gens) hi = std::max(hi, g.degree);
  for (int d = lo; d <= hi; ++d) {
    Matrix e = gens_augmentation(A, gens, target, d);
    if (e.rows() && e.cols()) out.emplace(d, std::move(e));
  }
  return out;
}

std::vector<std::pair<std::size_t, int>> SemifreeResolution::basis_at(int deg) const {
  return layout_at(*target.alg, gens, deg).list;
}

Matrix SemifreeResolution::differential_at(int deg) const {
  return gens_differential(*target.alg, gens, deg);
}

SemifreeResolution minimal_semifree(const DgModule& m, int g_min, const ResourcePolicy& policy) {
  require(!m.is_zero(), Errc::ZeroModule, "cannot resolve the zero module");
  const AlgebraPtr& alg = m.alg;
  const DgAlgebra& A = *alg;
  const Field& f = A.field;
  SemifreeResolution res(m);

  H0Data h = h0(A);
  std::vector<Vec> mbar_lifts;
  for (const auto& g : h.min_gens) mbar_lifts.push_back(h.reps.apply(g));

  int top = m.comps.max_deg();
  long budget = policy.generators(top - g_min);
  int minA = A.comps.min_deg();

  // cone C^j = M^j + G^{j+1}; differential [[dM, eps],[0, -dG]]
  auto cone_dim = [&](int j) {
    return static_cast<std::size_t>(m.dim(j)) + layout_at(A, res.gens, j + 1).list.size();
  };
  auto cone_d = [&](int j) {
    GenLayout gs = layout_at(A, res.gens, j + 1);
    GenLayout gd = layout_at(A, res.gens, j + 2);
    std::size_t rows = static_cast<std::size_t>(m.dim(j + 1)) + gd.list.size();
    std::size_t cols = static_cast<std::size_t>(m.dim(j)) + gs.list.size();
    Matrix d(f, rows, cols);
    d.paste(0, 0, m.d(j));
    if (!gs.list.empty()) {
      d.paste(0, static_cast<std::size_t>(m.dim(j)), gens_augmentation(A, res.gens, m, j + 1));
      Matrix dg = gens_differential(A, res.gens, j + 1).negated();
      d.paste(static_cast<std::size_t>(m.dim(j + 1)), static_cast<std::size_t>(m.dim(j)), dg);
    }
    return d;
  };

  int scan = top;
  int obstruction = g_min - 1;  // degree of the first unresolved cone cohomology
  res.finite = false;
  long used = 0;
  int stage = 0;

  while (scan >= g_min) {
    // early acyclicity: cone supported nowhere at or below scan
    {
      bool any = false;
      for (int j = scan; j >= g_min - 1; --j)
        if (cone_dim(j) > 0) {
          any = true;
          break;
        }
      // also check everything below g_min for the FINITE certificate later;
      // here only fast-forward the scan
      if (!any) break;
    }
    std::size_t sz = std::max({cone_dim(scan - 1), cone_dim(scan), cone_dim(scan + 1)});
    if (sz > static_cast<std::size_t>(policy.dim_budget)) {
      res.budget_truncated = true;
      obstruction = scan;
      break;
    }
    Matrix dprev = cone_d(scan - 1);
    Matrix dcur = cone_d(scan);
    Matrix z = dcur.kernel_basis();
    // representatives of H^scan(cone)
    Matrix bz = dprev.hstack(z);
    auto rr = bz.rref();
    std::vector<std::size_t> rep_cols;
    for (auto p : rr.pivots)
      if (p >= dprev.cols()) rep_cols.push_back(p - dprev.cols());
    if (rep_cols.empty()) {
      --scan;
      continue;
    }
    Matrix reps(f, z.rows(), rep_cols.size());
    for (std::size_t k = 0; k < rep_cols.size(); ++k)
      reps.set_column(k, z.column_vec(rep_cols[k]));
    std::size_t hdim = reps.cols();

    // span of mbar * H inside H, in class coordinates
    Matrix sys = dprev.hstack(reps);
    std::vector<Vec> mh_cols;
    for (const auto& x : mbar_lifts) {
      Matrix actM = m.action_operator(0, x, scan);
      Matrix actG = gens_action0(A, res.gens, x, scan + 1);
      for (std::size_t k = 0; k < hdim; ++k) {
        Vec rep = reps.column_vec(k);
        Vec mm(rep.begin(), rep.begin() + m.dim(scan));
        Vec gg(rep.begin() + m.dim(scan), rep.end());
        Vec xm = actM.apply(mm);
        Vec xg = actG.apply(gg);
        Vec img(xm);
        img.insert(img.end(), xg.begin(), xg.end());
        auto sol = sys.solve(Matrix::from_columns(f, img.size(), {img}));
        require(sol.has_value(), Errc::InternalInconsistency, "m-action left the cocycles");
        Vec cls(hdim, f.zero());
        for (std::size_t r = 0; r < hdim; ++r) cls[r] = sol->at(dprev.cols() + r, 0);
        mh_cols.push_back(std::move(cls));
      }
    }
    Matrix mh = Matrix::from_columns(f, hdim, mh_cols);
    auto rr2 = mh.hstack(Matrix::identity(f, hdim)).rref();
    std::vector<std::size_t> chosen;
    for (auto p : rr2.pivots)
      if (p >= mh.cols()) chosen.push_back(p - mh.cols());
    require(!chosen.empty(), Errc::InternalInconsistency, "Nakayama complement is empty");

    if (used + static_cast<long>(chosen.size()) > budget) {
      res.budget_truncated = true;
      obstruction = scan;
      break;
    }

    GenLayout gl_next = layout_at(A, res.gens, scan + 1);
    for (auto ci : chosen) {
      Vec w = reps.column_vec(ci);
      Vec mpart(w.begin(), w.begin() + m.dim(scan));
      Vec gpart(w.begin() + m.dim(scan), w.end());
      SemifreeGen gen;
      gen.degree = scan;
      gen.stage = stage;
      gen.aug_image = scale_vec(f, f.from_int(-1), mpart);
      // group the g-part into per-generator coefficient vectors
      for (const auto& [l, off] : gl_next.gen_offset) {
        int cd = scan + 1 - res.gens[l].degree;
        std::size_t n = static_cast<std::size_t>(A.dim(cd));
        Vec coeff(n, f.zero());
        bool nonzero = false;
        for (std::size_t a = 0; a < n; ++a) {
          coeff[a] = gpart[off + a];
          if (!f.is_zero(coeff[a])) nonzero = true;
        }
        if (nonzero) gen.d_expansion.push_back({l, std::move(coeff)});
      }
      res.gens.push_back(std::move(gen));
      ++used;
    }
    ++stage;
    --scan;
  }

  res.stages = stage;
  res.budget_used = used;
  res.complete_below = obstruction + 1;

  if (!res.budget_truncated) {
    // FINITE certificate: the cone is acyclic below g_min as well (cohomology
    // at and above g_min is already zero by construction). Usually the cone
    // simply has no components down there; otherwise check the few low
    // degrees explicitly.
    int lo_check = (m.comps.empty() ? 0 : m.comps.min_deg());
    if (!res.gens.empty()) {
      int mg = res.gens.front().degree;
      for (const auto& g : res.gens) mg = std::min(mg, g.degree);
      lo_check = std::min(lo_check, mg + minA);
    }
    bool acyclic_below = true;
    for (int j = lo_check - 1; j <= g_min - 1 && acyclic_below; ++j) {
      if (cone_dim(j) == 0) continue;
      if (cone_dim(j) > static_cast<std::size_t>(policy.dim_budget)) {
        acyclic_below = false;
        break;
      }
      Matrix dprev = cone_d(j - 1);
      Matrix dcur = cone_d(j);
      if (cohomology_dim_between_raw(dprev, dcur) != 0) acyclic_below = false;
    }
    if (acyclic_below) {
      res.finite = true;
      res.complete_below = lo_check - 1;
    }
  }

  // minimality: every differential coefficient lies in ker(A -> k)
  for (const auto& g : res.gens) {
    for (const auto& [l, coeff] : g.d_expansion) {
      int cd = g.degree + 1 - res.gens[l].degree;
      if (cd != 0) continue;  // negative degrees are inside the augmentation ideal
      Vec cls = h.to_h0.apply(coeff);
      if (!f.is_zero(h.augment(f, cls)))
        fail(Errc::MinimalityViolation, "unit coefficient in a minimal resolution differential");
    }
  }
  res.minimal = true;
  return res;
}

std::map<int, int> betti(const SemifreeResolution& res) {
  require(res.minimal, Errc::NotMinimal, "betti requires a minimal resolution");
  return res.generator_counts();
}

std::optional<int> ExtTable::sup_nonzero() const {
  std::optional<int> s;
  for (const auto& [i, d] : dims)
    if (d > 0) s = s ? std::max(*s, i) : i;
  return s;
}

long long ExtTable::total_listed() const {
  long long t = 0;
  for (const auto& [i, d] : dims) t += d;
  return t;
}

namespace {

// Hom^i(G, n) dimension layout: per generator g a block of size n.dim(t_g + i).
struct HomLayout {
  std::vector<std::pair<std::size_t, std::size_t>> blocks;  // (gen, offset)
  std::size_t total = 0;
};

HomLayout hom_layout(const std::vector<SemifreeGen>& gens, const DgModule& n, int i) {
  HomLayout L;
  for (std::size_t g = 0; g < gens.size(); ++g) {
    int nd = gens[g].degree + i;
    if (n.dim(nd) == 0) continue;
    L.blocks.push_back({g, L.total});
    L.total += static_cast<std::size_t>(n.dim(nd));
  }
  return L;
}

Matrix hom_differential(const DgAlgebra& A, const std::vector<SemifreeGen>& gens,
                        const DgModule& n, int i) {
  const Field& f = A.field;
  HomLayout src = hom_layout(gens, n, i);
  HomLayout dst = hom_layout(gens, n, i + 1);
  std::map<std::size_t, std::size_t> src_off, dst_off;
  for (const auto& [g, o] : src.blocks) src_off[g] = o;
  for (const auto& [g, o] : dst.blocks) dst_off[g] = o;
  Matrix d(f, dst.total, src.total);
  // (delta phi)(g) = d_n(phi(g)) - (-1)^i phi(dg),
  // phi(c g_l) = (-1)^{i|c|} c phi(g_l)
  for (const auto& [g, doff] : dst_off) {
    int nd = gens[g].degree + i;
    if (src_off.count(g)) {
      Matrix dn = n.d(nd);
      std::size_t soff = src_off.at(g);
      for (std::size_t r = 0; r < dn.rows(); ++r)
        for (std::size_t c = 0; c < dn.cols(); ++c)
          d.at(doff + r, soff + c) = f.add(d.at(doff + r, soff + c), dn.at(r, c));
    }
    for (const auto& [l, coeff] : gens[g].d_expansion) {
      if (!src_off.count(l)) continue;
      int cd = gens[g].degree + 1 - gens[l].degree;
      Matrix op = n.action_operator(cd, coeff, gens[l].degree + i);
      int sign = -pow_sign(static_cast<long long>(i) * (1 + cd));
      std::size_t soff = src_off.at(l);
      for (std::size_t r = 0; r < op.rows(); ++r)
        for (std::size_t c = 0; c < op.cols(); ++c) {
          Scalar v = op.at(r, c);
          if (f.is_zero(v)) continue;
          if (sign < 0) v = f.neg(v);
          d.at(doff + r, soff + c) = f.add(d.at(doff + r, soff + c), v);
        }
    }
  }
  return d;
}

// tensor T = G (x)_A n; T^deg block per gen g of size n.dim(deg - t_g)
struct TenLayout {
  std::vector<std::pair<std::size_t, std::size_t>> blocks;
  std::size_t total = 0;
};

TenLayout ten_layout(const std::vector<SemifreeGen>& gens, const DgModule& n, int deg) {
  TenLayout L;
  for (std::size_t g = 0; g < gens.size(); ++g) {
    int nd = deg - gens[g].degree;
    if (n.dim(nd) == 0) continue;
    L.blocks.push_back({g, L.total});
    L.total += static_cast<std::size_t>(n.dim(nd));
  }
  return L;
}

Matrix ten_differential(const DgAlgebra& A, const std::vector<SemifreeGen>& gens,
                        const DgModule& n, int deg) {
  const Field& f = A.field;
  TenLayout src = ten_layout(gens, n, deg);
  TenLayout dst = ten_layout(gens, n, deg + 1);
  std::map<std::size_t, std::size_t> src_off, dst_off;
  for (const auto& [g, o] : src.blocks) src_off[g] = o;
  for (const auto& [g, o] : dst.blocks) dst_off[g] = o;
  Matrix d(f, dst.total, src.total);
  // d(g (x) x) = sum_l (-1)^{|c_l| t_l} g_l (x) (c_l x) + (-1)^{t_g} g (x) dx
  for (const auto& [g, soff] : src_off) {
    int nd = deg - gens[g].degree;
    if (dst_off.count(g)) {
      Matrix dn = n.d(nd);
      int sign = pow_sign(gens[g].degree);
      std::size_t doff = dst_off.at(g);
      for (std::size_t r = 0; r < dn.rows(); ++r)
        for (std::size_t c = 0; c < dn.cols(); ++c) {
          Scalar v = dn.at(r, c);
          if (f.is_zero(v)) continue;
          if (sign < 0) v = f.neg(v);
          d.at(doff + r, soff + c) = f.add(d.at(doff + r, soff + c), v);
        }
    }
    for (const auto& [l, coeff] : gens[g].d_expansion) {
      if (!dst_off.count(l)) continue;
      int cd = gens[g].degree + 1 - gens[l].degree;
      Matrix op = n.action_operator(cd, coeff, nd);  // n^{nd} -> n^{nd+cd}
      int sign = pow_sign(static_cast<long long>(cd) * gens[l].degree);
      std::size_t doff = dst_off.at(l);
      for (std::size_t r = 0; r < op.rows(); ++r)
        for (std::size_t c = 0; c < op.cols(); ++c) {
          Scalar v = op.at(r, c);
          if (f.is_zero(v)) continue;
          if (sign < 0) v = f.neg(v);
          d.at(doff + r, soff + c) = f.add(d.at(doff + r, soff + c), v);
        }
    }
  }
  return d;
}

int cohomology_dim_between(const Matrix& d_in, const Matrix& d_out) {
  return cohomology_dim_between_raw(d_in, d_out);
}

}  // namespace

Cochain hom_complex_from_semifree(const SemifreeResolution& g, const DgModule& n) {
  const DgAlgebra& A = g.algebra();
  GradedSpace sp;
  std::map<int, Matrix> dd;
  if (g.gens.empty() || n.comps.empty()) return Cochain::zero(A.field);
  int tmin = g.min_gen_degree(), tmax = g.gens.front().degree;
  for (const auto& gen : g.gens) tmax = std::max(tmax, gen.degree);
  int lo = n.comps.min_deg() - tmax, hi = n.comps.max_deg() - tmin;
  for (int i = lo; i <= hi; ++i) {
    std::size_t dim = hom_layout(g.gens, n, i).total;
    if (dim) sp.set_dim(i, static_cast<int>(dim));
  }
  for (int i = lo; i < hi; ++i) {
    Matrix d = hom_differential(A, g.gens, n, i);
    if (d.rows() && d.cols()) dd.emplace(i, std::move(d));
  }
  return Cochain(A.field, std::move(sp), std::move(dd));
}

Cochain tensor_complex_from_semifree(const SemifreeResolution& g, const DgModule& n) {
  const DgAlgebra& A = g.algebra();
  if (g.gens.empty() || n.comps.empty()) return Cochain::zero(A.field);
  GradedSpace sp;
  std::map<int, Matrix> dd;
  int tmin = g.min_gen_degree(), tmax = g.gens.front().degree;
  for (const auto& gen : g.gens) tmax = std::max(tmax, gen.degree);
  int lo = n.comps.min_deg() + tmin, hi = n.comps.max_deg() + tmax;
  for (int t = lo; t <= hi; ++t) {
    std::size_t dim = ten_layout(g.gens, n, t).total;
    if (dim) sp.set_dim(t, static_cast<int>(dim));
  }
  for (int t = lo; t < hi; ++t) {
    Matrix d = ten_differential(A, g.gens, n, t);
    if (d.rows() && d.cols()) dd.emplace(t, std::move(d));
  }
  return Cochain(A.field, std::move(sp), std::move(dd));
}

ExtTable ext(const DgModule& m, const DgModule& n, int lo, int hi, const ResourcePolicy& policy,
             ExtRoute route) {
  require(lo <= hi, Errc::WindowInverted, "ext window inverted");
  require(!m.is_zero() && !n.is_zero(), Errc::ZeroModule, "ext of a zero module");
  require(m.alg.get() == n.alg.get(), Errc::AlgebraMismatch, "ext across algebras");
  const DgAlgebra& A = *m.alg;
  const Field& f = A.field;

  bool m_is_residue = false;
  if (route != ExtRoute::Direct) {
    // residue detection: one-dimensional in degree 0 with trivial radical action
    if (m.total_dim() == 1 && m.dim(0) == 1) {
      m_is_residue = true;
      H0Data h = h0(A);
      for (const auto& g : h.min_gens) {
        Vec x = h.reps.apply(g);
        Matrix op = m.action_operator(0, x, 0);
        if (!op.is_zero()) m_is_residue = false;
      }
    }
  }
  if (route == ExtRoute::DualBetti)
    require(m_is_residue, Errc::ShapeError, "dual-betti route requires the residue module source");

  ExtTable t;
  t.lo = lo;
  t.hi = hi;

  if (m_is_residue && route != ExtRoute::Direct) {
    // dim Ext^i(k, n) = #generators of the minimal resolution of n^dual in
    // degree -i (minimality makes k (x) G carry the zero differential)
    DgModule nd = matlis_dual(n);
    SemifreeResolution res = minimal_semifree(nd, -hi, policy);
    t.route = "dual-betti";
    auto counts = res.generator_counts();
    for (const auto& [deg, c] : counts) {
      int i = -deg;
      t.dims[i] = c;
      t.exact[i] = res.finite || deg >= res.complete_below;
    }
    for (int i = lo; i <= hi; ++i) {
      if (t.dims.count(i)) continue;
      t.dims[i] = 0;
      t.exact[i] = res.finite || -i >= res.complete_below;
    }
    t.complete = res.finite;
    if (res.budget_truncated) t.caveats.push_back("resolution generator budget reached");
    return t;
  }

  int n_min = n.comps.min_deg();
  int g_min = n_min - hi - 1;
  SemifreeResolution res = minimal_semifree(m, g_min, policy);
  t.route = "hom";
  if (res.budget_truncated) t.caveats.push_back("resolution generator budget reached");

  int clo = lo, chi = hi;
  if (res.finite && !res.gens.empty()) {
    int tmin = res.min_gen_degree(), tmax = res.gens.front().degree;
    for (const auto& gen : res.gens) tmax = std::max(tmax, gen.degree);
    clo = std::min(clo, n.comps.min_deg() - tmax);
    chi = std::max(chi, n.comps.max_deg() - tmin);
    t.complete = true;
  }
  if (res.gens.empty()) {  // the resolved module was acyclic on the window
    t.complete = res.finite;
    for (int i = lo; i <= hi; ++i) {
      t.dims[i] = 0;
      t.exact[i] = res.finite || res.complete_below <= n_min - i - 1;
    }
    return t;
  }

  std::map<int, Matrix> deltas;
  auto delta = [&](int i) -> const Matrix& {
    auto it = deltas.find(i);
    if (it == deltas.end())
      it = deltas.emplace(i, hom_differential(A, res.gens, n, i)).first;
    return it->second;
  };
  for (int i = clo; i <= chi; ++i) {
    bool sound = res.finite || res.complete_below <= n_min - i - 1;
    std::size_t sz = std::max({hom_layout(res.gens, n, i - 1).total,
                               hom_layout(res.gens, n, i).total,
                               hom_layout(res.gens, n, i + 1).total});
    if (sz > static_cast<std::size_t>(policy.dim_budget)) {
      t.caveats.push_back("entry " + std::to_string(i) + " skipped by the dimension budget");
      t.complete = false;
      continue;
    }
    int dim = cohomology_dim_between(delta(i - 1), delta(i));
    if (dim != 0 || (i >= lo && i <= hi)) {
      t.dims[i] = dim;
      t.exact[i] = sound;
    }
  }
  (void)f;
  return t;
}

ExtTable tor_table(const DgModule& m, const DgModule& n, int lo, int hi,
                   const ResourcePolicy& policy) {
  require(lo <= hi, Errc::WindowInverted, "tor window inverted");
  require(!m.is_zero() && !n.is_zero(), Errc::ZeroModule, "tor of a zero module");
  require(m.alg.get() == n.alg.get(), Errc::AlgebraMismatch, "tor across algebras");
  const DgAlgebra& A = *m.alg;
  int n_max = n.comps.max_deg();
  int g_min = lo - n_max - 1;
  SemifreeResolution res = minimal_semifree(m, g_min, policy);
  ExtTable t;
  t.lo = lo;
  t.hi = hi;
  t.route = "tensor";
  if (res.budget_truncated) t.caveats.push_back("resolution generator budget reached");
  if (res.gens.empty()) {
    t.complete = true;
    for (int i = lo; i <= hi; ++i) {
      t.dims[i] = 0;
      t.exact[i] = true;
    }
    return t;
  }
  int clo = lo, chi = hi;
  if (res.finite) {
    int tmin = res.min_gen_degree(), tmax = res.gens.front().degree;
    for (const auto& gen : res.gens) tmax = std::max(tmax, gen.degree);
    clo = std::min(clo, n.comps.min_deg() + tmin);
    chi = std::max(chi, n.comps.max_deg() + tmax);
    t.complete = true;
  }
  std::map<int, Matrix> deltas;
  auto delta = [&](int i) -> const Matrix& {
    auto it = deltas.find(i);
    if (it == deltas.end()) it = deltas.emplace(i, ten_differential(A, res.gens, n, i)).first;
    return it->second;
  };
  for (int i = clo; i <= chi; ++i) {
    bool sound = res.finite || res.complete_below <= i - n_max - 1;
    std::size_t sz = std::max({ten_layout(res.gens, n, i - 1).total,
                               ten_layout(res.gens, n, i).total,
                               ten_layout(res.gens, n, i + 1).total});
    if (sz > static_cast<std::size_t>(policy.dim_budget)) {
      t.caveats.push_back("entry " + std::to_string(i) + " skipped by the dimension budget");
      t.complete = false;
      continue;
    }
    int dim = cohomology_dim_between(delta(i - 1), delta(i));
    if (dim != 0 || (i >= lo && i <= hi)) {
      t.dims[i] = dim;
      t.exact[i] = sound;
    }
  }
  return t;
}

ExtTable bass_table(const DgModule& m, int window, const ResourcePolicy& policy) {
  require(!m.is_zero(), Errc::ZeroModule, "bass table of the zero module");
  DgModule k = residue_module(m.alg);
  int lo = m.comps.min_deg();
  return ext(k, m, lo, window, policy, ExtRoute::DualBetti);
}

int depth(const DgModule& m, const ResourcePolicy& policy) {
  require(!m.is_zero(), Errc::ZeroModule, "depth of the zero module");
  // scan upward: the least i with Ext^i(k, m) != 0; the dual-Betti route makes
  // the first nonzero entry appear at -sup H(m^dual), so one small window
  // suffices once that degree is known
  DgModule nd = matlis_dual(m);
  Cohomology hd = cohomology(nd.underlying());
  require(!hd.h.empty(), Errc::ZeroModule, "depth of an acyclic module");
  int t = hd.h.max_deg();
  ExtTable tbl = bass_table(m, -t + 1, policy);
  for (const auto& [i, d] : tbl.dims)
    if (d > 0 && tbl.is_exact(i)) {
      return i;
    }
  fail(Errc::InternalInconsistency, "depth scan found no nonzero Ext(k, m)");
}

Verdict projdim_verdict(const DgModule& m, int window, const ResourcePolicy& policy) {
  require(!m.is_zero(), Errc::ZeroModule, "projdim of the zero module");
  int g_min = m.comps.min_deg() - window;
  SemifreeResolution res = minimal_semifree(m, g_min, policy);
  if (res.finite) {
    long long value = res.gens.empty() ? 0 : -res.min_gen_degree();
    Verdict v = Verdict::yes("minimal resolution terminates (FINITE certificate)", value);
    v.caveats.push_back("convention: projdim = -(lowest generator degree); pd = projdim + sup");
    return v;
  }
  Verdict v = Verdict::unknown(window, "resolution did not terminate within the window");
  if (res.budget_truncated) v.caveats.push_back("resolution generator budget reached");
  return v;
}

InjdimResult injdim_sup(const DgModule& m, int window, const ResourcePolicy& policy) {
  require(!m.is_zero(), Errc::ZeroModule, "injdim of the zero module");
  InjdimResult out;
  out.table = bass_table(m, window, policy);
  out.certified = out.table.complete;
  std::optional<int> s;
  for (const auto& [i, d] : out.table.dims)
    if (d > 0 && (out.table.is_exact(i) || out.certified)) s = s ? std::max(*s, i) : i;
  out.sup = s;
  return out;
}

DgModule hom_module_from_semifree(const SemifreeResolution& g, const DgModule& n) {
  const AlgebraPtr& alg = g.target.alg;
  const DgAlgebra& A = *alg;
  const Field& f = A.field;
  require(n.alg.get() == alg.get(), Errc::AlgebraMismatch, "hom module across algebras");
  DgModule out(alg);
  out.name = "Hom(G(" + g.target.name + ")," + n.name + ")";
  if (g.gens.empty() || n.comps.empty()) return out;
  int tmin = g.min_gen_degree(), tmax = g.gens.front().degree;
  for (const auto& gen : g.gens) tmax = std::max(tmax, gen.degree);
  int lo = n.comps.min_deg() - tmax, hi = n.comps.max_deg() - tmin;
  std::map<int, HomLayout> layouts;
  for (int i = lo; i <= hi; ++i) {
    HomLayout L = hom_layout(g.gens, n, i);
    if (L.total) out.comps.set_dim(i, static_cast<int>(L.total));
    layouts[i] = std::move(L);
  }
  for (int i = lo; i < hi; ++i) {
    Matrix d = hom_differential(A, g.gens, n, i);
    if (d.rows() && d.cols() && !d.is_zero()) out.diff.emplace(i, std::move(d));
  }
  // action: (y phi)(g) = (-1)^{|y| |phi|} y phi(g)
  for (const auto& [u, an] : A.comps.dims) {
    for (int i = lo; i <= hi; ++i) {
      const HomLayout& src = layouts[i];
      auto it = layouts.find(u + i);
      if (src.total == 0 || it == layouts.end() || it->second.total == 0) continue;
      const HomLayout& dst = it->second;
      std::map<std::size_t, std::size_t> dst_off;
      for (const auto& [gg, o] : dst.blocks) dst_off[gg] = o;
      Matrix act(f, dst.total, static_cast<std::size_t>(an) * src.total);
      int sign = pow_sign(static_cast<long long>(u) * i);
      for (const auto& [gg, soff] : src.blocks) {
        if (!dst_off.count(gg)) continue;
        int nd = g.gens[gg].degree + i;
        Matrix am = n.action_matrix(u, nd);
        std::size_t doff = dst_off.at(gg);
        std::size_t bs = static_cast<std::size_t>(n.dim(nd));
        for (int al = 0; al < an; ++al)
          for (std::size_t c = 0; c < bs; ++c)
            for (std::size_t r = 0; r < static_cast<std::size_t>(n.dim(u + nd)); ++r) {
              Scalar v = am.at(r, static_cast<std::size_t>(al) * bs + c);
              if (f.is_zero(v)) continue;
              if (sign < 0) v = f.neg(v);
              act.at(doff + r, static_cast<std::size_t>(al) * src.total + (soff + c)) = v;
            }
      }
      out.action.emplace(std::make_pair(u, i), std::move(act));
    }
  }
  return out;
}

DgModule tensor_module_from_semifree(const SemifreeResolution& g, const DgModule& n) {
  const AlgebraPtr& alg = g.target.alg;
  const DgAlgebra& A = *alg;
  const Field& f = A.field;
  require(n.alg.get() == alg.get(), Errc::AlgebraMismatch, "tensor module across algebras");
  DgModule out(alg);
  out.name = "G(" + g.target.name + ")(x)" + n.name;
  if (g.gens.empty() || n.comps.empty()) return out;
  int tmin = g.min_gen_degree(), tmax = g.gens.front().degree;
  for (const auto& gen : g.gens) tmax = std::max(tmax, gen.degree);
  int lo = n.comps.min_deg() + tmin, hi = n.comps.max_deg() + tmax;
  std::map<int, TenLayout> layouts;
  for (int t = lo; t <= hi; ++t) {
    TenLayout L = ten_layout(g.gens, n, t);
    if (L.total) out.comps.set_dim(t, static_cast<int>(L.total));
    layouts[t] = std::move(L);
  }
  for (int t = lo; t < hi; ++t) {
    Matrix d = ten_differential(A, g.gens, n, t);
    if (d.rows() && d.cols() && !d.is_zero()) out.diff.emplace(t, std::move(d));
  }
  // action: y (g (x) x) = (-1)^{|y| t_g} g (x) (y x)
  for (const auto& [u, an] : A.comps.dims) {
    for (int t = lo; t <= hi; ++t) {
      const TenLayout& src = layouts[t];
      auto it = layouts.find(u + t);
      if (src.total == 0 || it == layouts.end() || it->second.total == 0) continue;
      const TenLayout& dst = it->second;
      std::map<std::size_t, std::size_t> dst_off;
      for (const auto& [gg, o] : dst.blocks) dst_off[gg] = o;
      Matrix act(f, dst.total, static_cast<std::size_t>(an) * src.total);
      for (const auto& [gg, soff] : src.blocks) {
        if (!dst_off.count(gg)) continue;
        int nd = t - g.gens[gg].degree;
        Matrix am = n.action_matrix(u, nd);
        int sign = pow_sign(static_cast<long long>(u) * g.gens[gg].degree);
        std::size_t doff = dst_off.at(gg);
        std::size_t bs = static_cast<std::size_t>(n.dim(nd));
        for (int al = 0; al < an; ++al)
          for (std::size_t c = 0; c < bs; ++c)
            for (std::size_t r = 0; r < static_cast<std::size_t>(n.dim(u + nd)); ++r) {
              Scalar v = am.at(r, static_cast<std::size_t>(al) * bs + c);
              if (f.is_zero(v)) continue;
              if (sign < 0) v = f.neg(v);
              act.at(doff + r, static_cast<std::size_t>(al) * src.total + (soff + c)) = v;
            }
      }
      out.action.emplace(std::make_pair(u, t), std::move(act));
    }
  }
  return out;
}

std::vector<SemifreeGen> semifree_from_free_module(const DgModule& mod,
                                                   const std::vector<std::pair<int, Vec>>& gens) {
  const DgAlgebra& A = *mod.alg;
  const Field& f = A.field;
  // stage order: decreasing degree (differentials only reach strictly higher
  // degrees, since coefficients live in non-positive algebra degrees)
  std::vector<std::size_t> order(gens.size());
  for (std::size_t i = 0; i < order.size(); ++i) order[i] = i;
  std::stable_sort(order.begin(), order.end(),
                   [&](std::size_t a, std::size_t b) { return gens[a].first > gens[b].first; });
  std::vector<SemifreeGen> out(gens.size());
  std::map<std::size_t, std::size_t> new_index;  // original -> sorted position
  for (std::size_t s = 0; s < order.size(); ++s) new_index[order[s]] = s;
  for (std::size_t s = 0; s < order.size(); ++s) {
    std::size_t orig = order[s];
    int deg = gens[orig].first;
    SemifreeGen g;
    g.degree = deg;
    g.stage = static_cast<int>(s);
    g.aug_image = Vec{};
    Vec dv = mod.d(deg).apply(gens[orig].second);
    if (!is_zero_vec(f, dv)) {
      // express dv as sum over earlier generators l of a_l * gen_l with
      // a_l in A^{deg+1-t_l}
      std::vector<std::tuple<std::size_t, int, int>> cols;  // (gen orig idx, adeg, aidx)
      std::vector<Vec> colvecs;
      for (std::size_t l = 0; l < gens.size(); ++l) {
        int ad = deg + 1 - gens[l].first;
        if (A.dim(ad) == 0) continue;
        for (int ai = 0; ai < A.dim(ad); ++ai) {
          Vec ea = unit_vec(f, static_cast<std::size_t>(A.dim(ad)), static_cast<std::size_t>(ai));
          colvecs.push_back(mod.act(ad, ea, gens[l].first, gens[l].second));
          cols.push_back({l, ad, ai});
        }
      }
      Matrix span = Matrix::from_columns(f, dv.size(), colvecs);
      auto sol = span.solve(Matrix::from_columns(f, dv.size(), {dv}));
      require(sol.has_value(), Errc::InternalInconsistency,
              "module is not free on the declared generators");
      std::map<std::size_t, Vec> coeffs;
      for (std::size_t c = 0; c < cols.size(); ++c) {
        auto [l, ad, ai] = cols[c];
        if (f.is_zero(sol->at(c, 0))) continue;
        auto it = coeffs.find(l);
        if (it == coeffs.end())
          it = coeffs.emplace(l, zero_vec(f, static_cast<std::size_t>(A.dim(ad)))).first;
        it->second[static_cast<std::size_t>(ai)] =
            f.add(it->second[static_cast<std::size_t>(ai)], sol->at(c, 0));
      }
      for (auto& [l, coeff] : coeffs) g.d_expansion.push_back({new_index.at(l), coeff});
    }
    out[s] = std::move(g);
  }
  return out;
}

FiltrationQuotient quotient_mod_filtration(const SemifreeResolution& g, int n) {
  const DgAlgebra& A = g.algebra();
  const Field& f = A.field;
  std::vector<SemifreeGen> kept;
  std::map<std::size_t, std::size_t> remap;
  for (std::size_t i = 0; i < g.gens.size(); ++i) {
    if (g.gens[i].stage <= n) continue;
    remap[i] = kept.size();
    SemifreeGen c = g.gens[i];
    std::vector<std::pair<std::size_t, Vec>> expansion;
    for (const auto& [l, coeff] : c.d_expansion)
      if (remap.count(l)) expansion.push_back({remap.at(l), coeff});
    c.d_expansion = std::move(expansion);
    kept.push_back(std::move(c));
  }
  GradedSpace sp;
  std::map<int, Matrix> dd;
  if (!kept.empty()) {
    int tmin = kept.front().degree, tmax = kept.front().degree;
    for (const auto& gen : kept) {
      tmin = std::min(tmin, gen.degree);
      tmax = std::max(tmax, gen.degree);
    }
    int lo = tmin + (A.comps.empty() ? 0 : A.comps.min_deg());
    for (int dgr = lo; dgr <= tmax; ++dgr) {
      std::size_t dim = layout_at(A, kept, dgr).list.size();
      if (dim) sp.set_dim(dgr, static_cast<int>(dim));
    }
    for (int dgr = lo; dgr < tmax; ++dgr) {
      Matrix d = gens_differential(A, kept, dgr);
      if (d.rows() && d.cols()) dd.emplace(dgr, std::move(d));
    }
  }
  FiltrationQuotient out{Cochain(f, std::move(sp), std::move(dd)),
                         g.finite ? (g.gens.empty() ? 0 : g.min_gen_degree() +
                                                              (A.comps.empty() ? 0 : A.comps.min_deg()) - 1)
                                  : g.complete_below};
  return out;
}

RhomResult rhom_into_A(const DgModule& m, int window, const ResourcePolicy& policy) {
  require(!m.is_zero(), Errc::ZeroModule, "RHom(-, A) of the zero module");
  const AlgebraPtr& alg = m.alg;
  const DgAlgebra& A = *alg;
  DgModule a_mod = algebra_as_module(alg);
  RhomResult out;
  int minA = A.comps.min_deg();

  SemifreeResolution res = minimal_semifree(m, minA - window - 1, policy);
  if (res.finite) {
    out.route = "hom-finite";
    DgModule d = hom_module_from_semifree(res, a_mod);
    Cohomology coh = cohomology(d.underlying());
    out.table.route = out.route;
    out.table.complete = true;
    out.table.lo = -window;
    out.table.hi = window;
    for (const auto& [i, n] : coh.h.dims) out.table.dims[i] = n;
    out.bounded = Verdict::yes("finite semifree resolution of the source");
    out.dual_module = std::move(d);
    return out;
  }

  // dual route: RHom(m, A) = (E (x) m)^dual when E -> A^dual is a finite
  // semifree resolution (Hom into the dual of a semifree computes RHom)
  DgModule adual = matlis_dual(a_mod);
  ResourcePolicy light = policy;
  SemifreeResolution eres = minimal_semifree(adual, -std::min(window, 8) - 1, light);
  if (eres.finite) {
    out.route = "tensor-dual";
    DgModule t = tensor_module_from_semifree(eres, m);
    Cohomology coh = cohomology(t.underlying());
    out.table.route = out.route;
    out.table.complete = true;
    out.table.lo = -window;
    out.table.hi = window;
    for (const auto& [i, n] : coh.h.dims) out.table.dims[-i] = n;
    out.bounded = Verdict::yes("finite semifree resolution of A^dual (t-dual route)");
    out.dual_module = matlis_dual(t);
    return out;
  }

  out.route = "hom-window";
  int lo = minA - m.comps.max_deg();
  out.table = ext(m, a_mod, lo, window, policy, ExtRoute::Direct);
  out.table.route = out.route;
  out.bounded = Verdict::unknown(window, "no finiteness certificate within the window");
  if (res.budget_truncated || eres.budget_truncated)
    out.bounded.caveats.push_back("resolution generator budget reached");
  return out;
}

ReflexiveResult biduality(const DgModule& m, int window, const ResourcePolicy& policy) {
  require(!m.is_zero(), Errc::ZeroModule, "biduality of the zero module");
  const AlgebraPtr& alg = m.alg;
  const DgAlgebra& A = *alg;
  const Field& f = A.field;
  DgModule a_mod = algebra_as_module(alg);
  ReflexiveResult out;
  int minA = A.comps.min_deg();

  SemifreeResolution res = minimal_semifree(m, minA - window - 1, policy);
  if (res.finite && !res.gens.empty()) {
    // exact natural-map check through the finite resolution
    DgModule d = hom_module_from_semifree(res, a_mod);
    Cohomology dcoh = cohomology(d.underlying());
    out.gdim_value = dcoh.h.empty() ? std::optional<int>() : std::optional<int>(dcoh.h.max_deg());
    // present D as semifree on the dual generators (j, unit-of-A^0)
    std::vector<std::pair<int, Vec>> dgens;
    std::vector<std::pair<std::size_t, std::size_t>> dgen_pos;  // (gen, offset in its degree)
    for (std::size_t j = 0; j < res.gens.size(); ++j) {
      int ddeg = -res.gens[j].degree;
      HomLayout L = hom_layout(res.gens, a_mod, ddeg);
      std::size_t off = 0;
      bool found = false;
      for (const auto& [gg, o] : L.blocks)
        if (gg == j) {
          off = o;
          found = true;
        }
      require(found, Errc::InternalInconsistency, "dual generator block missing");
      Vec coords = zero_vec(f, L.total);
      // the functional g_j -> 1, expressed against the unit coordinates
      for (std::size_t u = 0; u < A.unit.size(); ++u)
        coords[off + u] = A.unit[u];
      dgens.push_back({ddeg, coords});
      dgen_pos.push_back({j, off});
    }
    std::vector<SemifreeGen> dsem = semifree_from_free_module(d, dgens);
    // DD = Hom(D, A); theta(g_l) = (-1)^{t_l} (evaluation functional at g_l)
    SemifreeResolution dres(d);
    dres.gens = dsem;
    dres.finite = true;
    dres.minimal = false;  // not used below
    DgModule dd = hom_module_from_semifree(dres, a_mod);
    // assemble theta: G -> DD on generators, extended A-linearly
    // order of dsem follows decreasing dual degree; locate each original j
    std::vector<std::size_t> dual_index(res.gens.size());
    {
      // semifree_from_free_module sorted by decreasing degree with stable
      // ties; reproduce the order to map original j -> position
      std::vector<std::size_t> order(dgens.size());
      for (std::size_t i = 0; i < order.size(); ++i) order[i] = i;
      std::stable_sort(order.begin(), order.end(), [&](std::size_t x, std::size_t y) {
        return dgens[x].first > dgens[y].first;
      });
      for (std::size_t s = 0; s < order.size(); ++s) dual_index[order[s]] = s;
    }
    DgModule g_mod = res.as_module();
    std::map<int, Matrix> comps;
    for (const auto& [deg, nn] : g_mod.comps.dims) {
      Matrix c(f, static_cast<std::size_t>(dd.dim(deg)), static_cast<std::size_t>(nn));
      GenLayout gl = layout_at(A, res.gens, deg);
      for (std::size_t col = 0; col < gl.list.size(); ++col) {
        auto [l, aidx] = gl.list[col];
        int ad = deg - res.gens[l].degree;
        // theta(a g_l) = a . theta(g_l)
        HomLayout ddl = hom_layout(dsem, a_mod, res.gens[l].degree);
        std::size_t off = 0;
        bool found = false;
        for (const auto& [gg, o] : ddl.blocks)
          if (gg == dual_index[l]) {
            off = o;
            found = true;
          }
        if (!found) continue;
        Vec theta_gen = zero_vec(f, ddl.total);
        int sign = pow_sign(res.gens[l].degree);
        for (std::size_t u = 0; u < A.unit.size(); ++u)
          theta_gen[off + u] = sign < 0 ? f.neg(A.unit[u]) : A.unit[u];
        Vec ea = unit_vec(f, static_cast<std::size_t>(A.dim(ad)), static_cast<std::size_t>(aidx));
        Vec img = dd.act(ad, ea, res.gens[l].degree, theta_gen);
        for (std::size_t r = 0; r < img.size(); ++r) c.at(r, col) = img[r];
      }
      comps.emplace(deg, std::move(c));
    }
    DgModuleMap theta(g_mod, dd, comps);  // validates chain map + A-linearity
    CochainMap theta_c(g_mod.underlying(), dd.underlying(),
                       [&] {
                         std::map<int, Matrix> cc;
                         for (const auto& [i, mm] : comps) cc.emplace(i, mm);
                         return cc;
                       }());
    bool qiso = is_acyclic(cone(theta_c));
    out.verdict = qiso ? Verdict::yes("biduality map is a quasi-isomorphism (finite resolution)")
                       : Verdict::no("biduality map is not a quasi-isomorphism");
    return out;
  }

  // dual route evidence
  DgModule adual = matlis_dual(a_mod);
  SemifreeResolution eres = minimal_semifree(adual, -std::min(window, 8) - 1, policy);
  if (eres.finite) {
    DgModule d2 = matlis_dual(tensor_module_from_semifree(eres, m));
    Cohomology dcoh = cohomology(d2.underlying());
    out.gdim_value = dcoh.h.empty() ? std::optional<int>() : std::optional<int>(dcoh.h.max_deg());
    DgModule dd2 = matlis_dual(tensor_module_from_semifree(eres, d2));
    Cohomology c1 = cohomology(m.underlying());
    Cohomology c2 = cohomology(dd2.underlying());
    if (c1.h.dims == c2.h.dims) {
      Verdict v = Verdict::yes("cohomology of M and RHom(RHom(M,A),A) agree dimensionwise");
      v.caveats.push_back(
          "natural map not evaluated (no finite resolution of M); dimension evidence via the "
          "dual route");
      out.verdict = v;
    } else {
      out.verdict = Verdict::no("cohomology tables of M and its A-bidual differ");
    }
    return out;
  }

  out.verdict = Verdict::unknown(window, "no finiteness certificate for either route");
  return out;
}

std::vector<SppjStep> sppj_resolution(const DgModule& m, int steps, bool sup_preserving_nonminimal,
                                      const ResourcePolicy& policy) {
  require(!m.is_zero(), Errc::ZeroModule, "sppj resolution of the zero module");
  (void)policy;
  const AlgebraPtr& alg = m.alg;
  const DgAlgebra& A = *alg;
  const Field& f = A.field;
  H0Data h = h0(A);
  std::vector<Vec> mbar_lifts;
  for (const auto& g : h.min_gens) mbar_lifts.push_back(h.reps.apply(g));

  std::vector<SppjStep> out;
  DgModule cur = m;
  std::optional<int> prev_sup;
  for (int i = 0; i < steps; ++i) {
    Cohomology coh = cohomology(cur.underlying());
    if (coh.h.empty()) break;  // acyclic: done
    int s = coh.h.max_deg();
    if (prev_sup)
      require(s <= *prev_sup, Errc::InternalInconsistency,
              "sppj sup sequence failed to be monotone");
    prev_sup = s;
    // minimal H^0-generating classes of H^s
    const Matrix& reps = coh.reps.at(s);
    std::size_t hdim = reps.cols();
    Matrix b = cur.underlying().d(s - 1);
    Matrix sys = b.hstack(reps);
    std::vector<Vec> mh_cols;
    for (const auto& x : mbar_lifts) {
      Matrix op = cur.action_operator(0, x, s);
      for (std::size_t k = 0; k < hdim; ++k) {
        Vec img = op.apply(reps.column_vec(k));
        auto sol = sys.solve(Matrix::from_columns(f, img.size(), {img}));
        require(sol.has_value(), Errc::InternalInconsistency, "m-action left the cocycles");
        Vec cls(hdim, f.zero());
        for (std::size_t r = 0; r < hdim; ++r) cls[r] = sol->at(b.cols() + r, 0);
        mh_cols.push_back(std::move(cls));
      }
    }
    Matrix mh = Matrix::from_columns(f, hdim, mh_cols);
    auto rr = mh.hstack(Matrix::identity(f, hdim)).rref();
    std::vector<std::size_t> chosen;
    for (auto p : rr.pivots)
      if (p >= mh.cols()) chosen.push_back(p - mh.cols());

    std::vector<int> degrees(chosen.size(), s);
    if (sup_preserving_nonminimal) degrees.push_back(s);  // extra zero-mapped summand
    DgModule p = free_module(alg, degrees);
    p.name = "P" + std::to_string(i);
    // f: P -> cur, generator g -> representative (extra summand -> 0), with
    // the A[-t] twist sign (-1)^{t |a|} on the underlying coordinates
    std::map<int, Matrix> comps;
    for (const auto& [deg, nn] : p.comps.dims) {
      Matrix c(f, static_cast<std::size_t>(cur.dim(deg)), static_cast<std::size_t>(nn));
      // basis of p at deg: blocks per generator copy, each of size dim A^{deg-s}
      int ad = deg - s;
      std::size_t bs = static_cast<std::size_t>(A.dim(ad));
      for (std::size_t gidx = 0; gidx < degrees.size(); ++gidx) {
        if (gidx >= chosen.size()) continue;  // zero-mapped extra summand
        Vec rep = reps.column_vec(chosen[gidx]);
        for (std::size_t ai = 0; ai < bs; ++ai) {
          Vec ea = unit_vec(f, bs, ai);
          Vec img = cur.act(ad, ea, s, rep);
          int sign = pow_sign(static_cast<long long>(s) * ad);
          for (std::size_t r = 0; r < img.size(); ++r)
            c.at(r, gidx * bs + ai) = sign < 0 ? f.neg(img[r]) : img[r];
        }
      }
      comps.emplace(deg, std::move(c));
    }
    DgModuleMap fm(p, cur, comps);
    DgModule next = shift_module(cone_module(fm), -1);
    next.name = "M" + std::to_string(i + 1);
    out.push_back({p, next, s});
    cur = out.back().m;
  }
  return out;
}

}  // namespace dgaudit
