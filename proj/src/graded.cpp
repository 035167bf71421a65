#include "dgaudit/graded.hpp"

#include <algorithm>

namespace dgaudit {

void GradedSpace::set_dim(int d, int n) {
  require(n >= 0, Errc::ShapeError, "negative dimension");
  if (n == 0)
    dims.erase(d);
  else
    dims[d] = n;
}

int GradedSpace::total_dim() const {
  int t = 0;
  for (const auto& [d, n] : dims) t += n;
  return t;
}

int GradedSpace::min_deg() const {
  require(!dims.empty(), Errc::ShapeError, "min_deg of zero space");
  return dims.begin()->first;
}

int GradedSpace::max_deg() const {
  require(!dims.empty(), Errc::ShapeError, "max_deg of zero space");
  return dims.rbegin()->first;
}

std::string GradedSpace::label(int d, std::size_t i) const {
  auto it = labels.find(d);
  if (it != labels.end() && i < it->second.size()) return it->second[i];
  return "b(" + std::to_string(d) + "," + std::to_string(i) + ")";
}

Cochain::Cochain(Field f, GradedSpace sp, std::map<int, Matrix> d)
    : fld_(f), sp_(std::move(sp)), d_(std::move(d)) {
  for (auto& [i, m] : d_) {
    require(m.field() == fld_, Errc::FieldMismatch, "differential over wrong field");
    require(m.rows() == static_cast<std::size_t>(sp_.dim(i + 1)) &&
                m.cols() == static_cast<std::size_t>(sp_.dim(i)),
            Errc::ShapeError, "differential shape mismatch at degree " + std::to_string(i));
  }
  for (const auto& [i, m] : d_) {
    if (sp_.dim(i + 2) == 0 || sp_.dim(i) == 0) continue;
    Matrix dd = this->d(i + 1).mul(m);
    require(dd.is_zero(), Errc::AxiomFailure, "d^2 != 0 at degree " + std::to_string(i));
  }
}

Matrix Cochain::d(int i) const {
  auto it = d_.find(i);
  if (it != d_.end()) return it->second;
  return Matrix(fld_, static_cast<std::size_t>(sp_.dim(i + 1)), static_cast<std::size_t>(sp_.dim(i)));
}

CochainMap::CochainMap(Cochain src, Cochain tgt, std::map<int, Matrix> comps, int shift)
    : src_(std::move(src)), tgt_(std::move(tgt)), comps_(std::move(comps)), shift_(shift) {
  const Field& f = src_.field();
  require(f == tgt_.field(), Errc::FieldMismatch, "cochain map across fields");
  for (auto& [i, m] : comps_) {
    require(m.rows() == static_cast<std::size_t>(tgt_.dim(i + shift_)) &&
                m.cols() == static_cast<std::size_t>(src_.dim(i)),
            Errc::ShapeError, "map component shape mismatch at degree " + std::to_string(i));
  }
  // d_T f = (-1)^shift f d_S in every degree.
  for (const auto& [i, n] : src_.space().dims) {
    (void)n;
    Matrix lhs = tgt_.d(i + shift_).mul(component(i));
    Matrix rhs = component(i + 1).mul(src_.d(i));
    if (shift_ % 2 != 0) rhs = rhs.negated();
    require(lhs == rhs, Errc::AxiomFailure,
            "map does not commute with differentials at degree " + std::to_string(i));
  }
}

Matrix CochainMap::component(int i) const {
  auto it = comps_.find(i);
  if (it != comps_.end()) return it->second;
  return Matrix(src_.field(), static_cast<std::size_t>(tgt_.dim(i + shift_)),
                static_cast<std::size_t>(src_.dim(i)));
}

Cohomology cohomology(const Cochain& c) {
  Cohomology out;
  const Field& f = c.field();
  const auto& sp = c.space();
  for (const auto& [deg, n] : sp.dims) {
    (void)n;
    Matrix z = c.d(deg).kernel_basis();                       // cocycles
    Matrix b = c.d(deg - 1);                                  // boundaries = im(b)
    // Reduce [B | Z]: pivot columns falling in the Z block pick out
    // representatives whose classes form a basis of H^deg.
    Matrix bz = b.hstack(z);
    auto rr = bz.rref();
    std::vector<std::size_t> rep_cols;
    for (auto p : rr.pivots)
      if (p >= b.cols()) rep_cols.push_back(p - b.cols());
    if (rep_cols.empty()) continue;
    Matrix reps(f, z.rows(), rep_cols.size());
    for (std::size_t k = 0; k < rep_cols.size(); ++k)
      reps.set_column(k, z.column_vec(rep_cols[k]));
    out.h.set_dim(deg, static_cast<int>(rep_cols.size()));
    out.reps.emplace(deg, std::move(reps));
  }
  return out;
}

Vec class_coordinates(const Cochain& c, const Cohomology& coh, int deg, const Vec& cocycle) {
  const Field& f = c.field();
  // Solve [B | reps] * (alpha, beta) = cocycle; beta is the class coordinate.
  Matrix b = c.d(deg - 1);
  auto it = coh.reps.find(deg);
  std::size_t hdim = it == coh.reps.end() ? 0 : it->second.cols();
  Matrix sys = it == coh.reps.end() ? b : b.hstack(it->second);
  require(cocycle.size() == static_cast<std::size_t>(c.dim(deg)), Errc::ShapeError,
          "class_coordinates: vector in wrong degree");
  Matrix rhs = Matrix::from_columns(f, cocycle.size(), {cocycle});
  auto sol = sys.solve(rhs);
  require(sol.has_value(), Errc::InternalInconsistency,
          "vector is not a cocycle representative combination");
  Vec out(hdim, f.zero());
  for (std::size_t k = 0; k < hdim; ++k) out[k] = sol->at(b.cols() + k, 0);
  return out;
}

Cochain shift(const Cochain& c, int i) {
  GradedSpace sp;
  for (const auto& [d, n] : c.space().dims) sp.set_dim(d - i, n);
  for (const auto& [d, names] : c.space().labels) sp.labels[d - i] = names;
  std::map<int, Matrix> dd;
  bool flip = (i % 2) != 0;
  for (const auto& [d, n] : c.space().dims) {
    (void)n;
    Matrix m = c.d(d);
    if (m.rows() == 0 || m.cols() == 0) continue;
    dd.emplace(d - i, flip ? m.negated() : m);
  }
  return Cochain(c.field(), std::move(sp), std::move(dd));
}

// cone(f: X -> Y) in degree j is Y^j + X^{j+1}, d(y, x) = (dy + f(x), -dx).
Cochain cone(const CochainMap& f) {
  require(f.shift() == 0, Errc::ShapeError, "cone of a nonzero-degree map");
  const Cochain& x = f.source();
  const Cochain& y = f.target();
  const Field& fl = x.field();
  GradedSpace sp;
  auto dim_at = [&](int j) { return y.dim(j) + x.dim(j + 1); };
  int lo = 0, hi = 0;
  bool any = false;
  for (const auto& c : {std::cref(x.space()), std::cref(y.space())}) {
    if (c.get().dims.empty()) continue;
    int l = c.get().min_deg() - 1, h = c.get().max_deg();
    lo = any ? std::min(lo, l) : l;
    hi = any ? std::max(hi, h) : h;
    any = true;
  }
  if (!any) return Cochain::zero(fl);
  for (int j = lo; j <= hi; ++j) sp.set_dim(j, dim_at(j));
  std::map<int, Matrix> dd;
  for (int j = lo; j <= hi; ++j) {
    std::size_t rows = static_cast<std::size_t>(dim_at(j + 1));
    std::size_t cols = static_cast<std::size_t>(dim_at(j));
    if (rows == 0 || cols == 0) continue;
    Matrix m(fl, rows, cols);
    m.paste(0, 0, y.d(j));
    m.paste(0, static_cast<std::size_t>(y.dim(j)), f.component(j + 1));
    Matrix dx = x.d(j + 1).negated();
    m.paste(static_cast<std::size_t>(y.dim(j + 1)), static_cast<std::size_t>(y.dim(j)), dx);
    dd.emplace(j, std::move(m));
  }
  return Cochain(fl, std::move(sp), std::move(dd));
}

Cochain trunc_ge(const Cochain& c, int i) {
  const Field& f = c.field();
  if (c.space().empty() || c.space().max_deg() < i) return Cochain::zero(f);
  // Degree i component is C^i / im(d^{i-1}); higher degrees unchanged.
  Matrix b = c.d(i - 1);
  auto rr = b.transpose().rref();  // row space of b^T = column space of b
  // Complement basis: standard basis vectors at non-pivot coordinates give a
  // section of the quotient. Build the projection q: C^i -> C^i/im so that
  // q restricted to the section is the identity.
  // Use rref of [im | I] and take pivot columns outside the im block.
  Matrix id = Matrix::identity(f, static_cast<std::size_t>(c.dim(i)));
  Matrix aug = b.hstack(id);
  auto rr2 = aug.rref();
  std::vector<std::size_t> comp_cols;
  for (auto p : rr2.pivots)
    if (p >= b.cols()) comp_cols.push_back(p - b.cols());
  // Quotient coordinates: express v in [im | section]; the section part is
  // the class. Build q as solve-based projection matrix.
  Matrix section(f, static_cast<std::size_t>(c.dim(i)), comp_cols.size());
  for (std::size_t k = 0; k < comp_cols.size(); ++k)
    section.set_column(k, id.column_vec(comp_cols[k]));
  Matrix sys = b.hstack(section);
  Matrix q(f, comp_cols.size(), static_cast<std::size_t>(c.dim(i)));
  {
    auto sol = sys.solve(id);
    require(sol.has_value(), Errc::InternalInconsistency, "trunc_ge projection failed");
    for (std::size_t k = 0; k < comp_cols.size(); ++k)
      for (std::size_t j = 0; j < static_cast<std::size_t>(c.dim(i)); ++j)
        q.at(k, j) = sol->at(b.cols() + k, j);
  }
  GradedSpace sp;
  sp.set_dim(i, static_cast<int>(comp_cols.size()));
  for (const auto& [d, n] : c.space().dims)
    if (d > i) sp.set_dim(d, n);
  std::map<int, Matrix> dd;
  // d^i on the quotient: classes map by d^i o section.
  if (c.dim(i + 1) > 0 && !comp_cols.empty()) dd.emplace(i, c.d(i).mul(section));
  for (const auto& [d, n] : c.space().dims) {
    (void)n;
    if (d > i) {
      Matrix m = c.d(d);
      if (m.rows() && m.cols()) dd.emplace(d, m);
    }
  }
  return Cochain(f, std::move(sp), std::move(dd));
}

Cochain trunc_le(const Cochain& c, int i) {
  const Field& f = c.field();
  if (c.space().empty() || c.space().min_deg() > i) return Cochain::zero(f);
  Matrix z = c.d(i).kernel_basis();  // degree-i component becomes ker(d^i)
  GradedSpace sp;
  for (const auto& [d, n] : c.space().dims)
    if (d < i) sp.set_dim(d, n);
  sp.set_dim(i, static_cast<int>(z.cols()));
  std::map<int, Matrix> dd;
  for (const auto& [d, n] : c.space().dims) {
    (void)n;
    if (d < i - 1) {
      Matrix m = c.d(d);
      if (m.rows() && m.cols()) dd.emplace(d, m);
    }
  }
  // d^{i-1} corestricted to ker(d^i): solve z * x = d^{i-1}.
  if (c.dim(i - 1) > 0 && z.cols() > 0) {
    auto sol = z.solve(c.d(i - 1));
    require(sol.has_value(), Errc::InternalInconsistency, "trunc_le corestriction failed");
    dd.emplace(i - 1, *sol);
  }
  return Cochain(f, std::move(sp), std::move(dd));
}

Cochain direct_sum(const Cochain& a, const Cochain& b) {
  require(a.field() == b.field(), Errc::FieldMismatch, "direct sum across fields");
  GradedSpace sp;
  int lo = 0, hi = -1;
  if (!a.space().empty() || !b.space().empty()) {
    lo = std::min(a.space().empty() ? b.space().min_deg() : a.space().min_deg(),
                  b.space().empty() ? a.space().min_deg() : b.space().min_deg());
    hi = std::max(a.space().empty() ? b.space().max_deg() : a.space().max_deg(),
                  b.space().empty() ? a.space().max_deg() : b.space().max_deg());
  }
  for (int d = lo; d <= hi; ++d) sp.set_dim(d, a.dim(d) + b.dim(d));
  std::map<int, Matrix> dd;
  for (int d = lo; d <= hi; ++d) {
    std::size_t rows = static_cast<std::size_t>(sp.dim(d + 1));
    std::size_t cols = static_cast<std::size_t>(sp.dim(d));
    if (!rows || !cols) continue;
    Matrix m(a.field(), rows, cols);
    m.paste(0, 0, a.d(d));
    m.paste(static_cast<std::size_t>(a.dim(d + 1)), static_cast<std::size_t>(a.dim(d)), b.d(d));
    dd.emplace(d, std::move(m));
  }
  return Cochain(a.field(), std::move(sp), std::move(dd));
}

SupInfAmp sup_inf_amp(const Cochain& c) {
  Cohomology h = cohomology(c);
  SupInfAmp out;
  if (h.h.empty()) return out;
  out.sup = h.h.max_deg();
  out.inf = h.h.min_deg();
  out.amp = *out.sup - *out.inf;
  return out;
}

bool is_acyclic(const Cochain& c) { return cohomology(c).h.empty(); }

}  // namespace dgaudit
