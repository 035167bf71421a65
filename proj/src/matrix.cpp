#include "dgaudit/matrix.hpp"

#include <algorithm>

namespace dgaudit {

Matrix::Matrix(Field f, std::size_t rows, std::size_t cols)
    : fld_(f), rows_(rows), cols_(cols), a_(rows * cols, f.zero()) {}

Matrix Matrix::identity(Field f, std::size_t n) {
  Matrix m(f, n, n);
  for (std::size_t i = 0; i < n; ++i) m.at(i, i) = f.one();
  return m;
}

Matrix Matrix::from_columns(Field f, std::size_t rows, const std::vector<Vec>& cols) {
  Matrix m(f, rows, cols.size());
  for (std::size_t j = 0; j < cols.size(); ++j) {
    require(cols[j].size() == rows, Errc::ShapeError, "column length mismatch");
    for (std::size_t i = 0; i < rows; ++i) m.at(i, j) = cols[j][i];
  }
  return m;
}

void Matrix::check_same_field(const Matrix& o) const {
  require(fld_ == o.fld_, Errc::FieldMismatch, "matrices over different fields");
}

bool Matrix::is_zero() const {
  for (const auto& x : a_)
    if (!fld_.is_zero(x)) return false;
  return true;
}

bool Matrix::operator==(const Matrix& o) const {
  return fld_ == o.fld_ && rows_ == o.rows_ && cols_ == o.cols_ && a_ == o.a_;
}

Matrix Matrix::transpose() const {
  Matrix t(fld_, cols_, rows_);
  for (std::size_t i = 0; i < rows_; ++i)
    for (std::size_t j = 0; j < cols_; ++j) t.at(j, i) = at(i, j);
  return t;
}

Matrix Matrix::mul(const Matrix& o) const {
  check_same_field(o);
  require(cols_ == o.rows_, Errc::ShapeError, "matrix product shape mismatch");
  Matrix r(fld_, rows_, o.cols_);
  for (std::size_t i = 0; i < rows_; ++i)
    for (std::size_t k = 0; k < cols_; ++k) {
      const Scalar& aik = at(i, k);
      if (fld_.is_zero(aik)) continue;
      for (std::size_t j = 0; j < o.cols_; ++j)
        r.at(i, j) = fld_.add(r.at(i, j), fld_.mul(aik, o.at(k, j)));
    }
  return r;
}

Matrix Matrix::add(const Matrix& o) const {
  check_same_field(o);
  require(rows_ == o.rows_ && cols_ == o.cols_, Errc::ShapeError, "matrix sum shape mismatch");
  Matrix r(fld_, rows_, cols_);
  for (std::size_t i = 0; i < a_.size(); ++i) r.a_[i] = fld_.add(a_[i], o.a_[i]);
  return r;
}

Matrix Matrix::sub(const Matrix& o) const {
  check_same_field(o);
  require(rows_ == o.rows_ && cols_ == o.cols_, Errc::ShapeError, "matrix diff shape mismatch");
  Matrix r(fld_, rows_, cols_);
  for (std::size_t i = 0; i < a_.size(); ++i) r.a_[i] = fld_.sub(a_[i], o.a_[i]);
  return r;
}

Matrix Matrix::scaled(const Scalar& c) const {
  Matrix r(fld_, rows_, cols_);
  for (std::size_t i = 0; i < a_.size(); ++i) r.a_[i] = fld_.mul(c, a_[i]);
  return r;
}

Matrix Matrix::negated() const {
  Matrix r(fld_, rows_, cols_);
  for (std::size_t i = 0; i < a_.size(); ++i) r.a_[i] = fld_.neg(a_[i]);
  return r;
}

Vec Matrix::apply(const Vec& x) const {
  require(x.size() == cols_, Errc::ShapeError, "apply: vector length mismatch");
  Vec y(rows_, fld_.zero());
  for (std::size_t i = 0; i < rows_; ++i)
    for (std::size_t j = 0; j < cols_; ++j) {
      if (fld_.is_zero(at(i, j)) || fld_.is_zero(x[j])) continue;
      y[i] = fld_.add(y[i], fld_.mul(at(i, j), x[j]));
    }
  return y;
}

Matrix Matrix::column(std::size_t j) const {
  Matrix c(fld_, rows_, 1);
  for (std::size_t i = 0; i < rows_; ++i) c.at(i, 0) = at(i, j);
  return c;
}

Vec Matrix::column_vec(std::size_t j) const {
  Vec c(rows_, fld_.zero());
  for (std::size_t i = 0; i < rows_; ++i) c[i] = at(i, j);
  return c;
}

void Matrix::set_column(std::size_t j, const Vec& v) {
  require(v.size() == rows_, Errc::ShapeError, "set_column length mismatch");
  for (std::size_t i = 0; i < rows_; ++i) at(i, j) = v[i];
}

Matrix Matrix::hstack(const Matrix& o) const {
  check_same_field(o);
  require(rows_ == o.rows_, Errc::ShapeError, "hstack row mismatch");
  Matrix r(fld_, rows_, cols_ + o.cols_);
  r.paste(0, 0, *this);
  r.paste(0, cols_, o);
  return r;
}

Matrix Matrix::vstack(const Matrix& o) const {
  check_same_field(o);
  require(cols_ == o.cols_, Errc::ShapeError, "vstack col mismatch");
  Matrix r(fld_, rows_ + o.rows_, cols_);
  r.paste(0, 0, *this);
  r.paste(rows_, 0, o);
  return r;
}

void Matrix::paste(std::size_t r0, std::size_t c0, const Matrix& o) {
  check_same_field(o);
  require(r0 + o.rows_ <= rows_ && c0 + o.cols_ <= cols_, Errc::ShapeError, "paste out of range");
  for (std::size_t i = 0; i < o.rows_; ++i)
    for (std::size_t j = 0; j < o.cols_; ++j) at(r0 + i, c0 + j) = o.at(i, j);
}

Matrix Matrix::block(std::size_t r0, std::size_t c0, std::size_t r, std::size_t c) const {
  require(r0 + r <= rows_ && c0 + c <= cols_, Errc::ShapeError, "block out of range");
  Matrix b(fld_, r, c);
  for (std::size_t i = 0; i < r; ++i)
    for (std::size_t j = 0; j < c; ++j) b.at(i, j) = at(r0 + i, c0 + j);
  return b;
}

namespace {

// Row reduction over F_p on a raw residue buffer. Returns pivot columns.
std::vector<std::size_t> rref_prime_inplace(std::vector<std::uint64_t>& a, std::size_t rows,
                                            std::size_t cols, std::uint64_t p) {
  std::vector<std::size_t> pivots;
  std::size_t r = 0;
  for (std::size_t c = 0; c < cols && r < rows; ++c) {
    std::size_t sel = rows;
    for (std::size_t i = r; i < rows; ++i)
      if (a[i * cols + c] != 0) {
        sel = i;
        break;
      }
    if (sel == rows) continue;
    if (sel != r)
      for (std::size_t j = c; j < cols; ++j) std::swap(a[sel * cols + j], a[r * cols + j]);
    std::uint64_t piv_inv = mod_inv(a[r * cols + c], p);
    for (std::size_t j = c; j < cols; ++j) a[r * cols + j] = mod_mul(a[r * cols + j], piv_inv, p);
    for (std::size_t i = 0; i < rows; ++i) {
      if (i == r) continue;
      std::uint64_t f = a[i * cols + c];
      if (f == 0) continue;
      std::uint64_t fneg = p - f;
      for (std::size_t j = c; j < cols; ++j) {
        std::uint64_t t = a[i * cols + j] + mod_mul(fneg, a[r * cols + j], p);
        if (t >= p) t -= p;
        a[i * cols + j] = t;
      }
    }
    pivots.push_back(c);
    ++r;
  }
  return pivots;
}

}  // namespace

Matrix::Rref Matrix::rref() const {
  Rref out(fld_);
  Matrix red = *this;

  std::vector<std::size_t> pivots;
  if (fld_.kind() == FieldKind::Prime) {
    std::uint64_t p = fld_.characteristic();
    std::vector<std::uint64_t> buf(rows_ * cols_);
    for (std::size_t i = 0; i < a_.size(); ++i) buf[i] = fld_.residue(a_[i]);
    pivots = rref_prime_inplace(buf, rows_, cols_, p);
    for (std::size_t i = 0; i < a_.size(); ++i) red.a_[i] = fld_.from_residue(buf[i]);
  } else {
    std::size_t r = 0;
    for (std::size_t c = 0; c < cols_ && r < rows_; ++c) {
      std::size_t sel = rows_;
      for (std::size_t i = r; i < rows_; ++i)
        if (!fld_.is_zero(red.at(i, c))) {
          sel = i;
          break;
        }
      if (sel == rows_) continue;
      if (sel != r)
        for (std::size_t j = 0; j < cols_; ++j) std::swap(red.at(sel, j), red.at(r, j));
      Scalar piv_inv = fld_.inv(red.at(r, c));
      for (std::size_t j = c; j < cols_; ++j) red.at(r, j) = fld_.mul(red.at(r, j), piv_inv);
      for (std::size_t i = 0; i < rows_; ++i) {
        if (i == r) continue;
        Scalar f = red.at(i, c);
        if (fld_.is_zero(f)) continue;
        for (std::size_t j = c; j < cols_; ++j)
          red.at(i, j) = fld_.sub(red.at(i, j), fld_.mul(f, red.at(r, j)));
      }
      pivots.push_back(c);
      ++r;
    }
  }

  out.rank = pivots.size();
  out.pivots = pivots;

  // Canonical kernel basis: one column per free variable, with the free
  // variable set to 1 and pivot variables solved from the reduced form.
  std::vector<bool> is_pivot(cols_, false);
  for (auto c : pivots) is_pivot[c] = true;
  std::vector<std::size_t> free_cols;
  for (std::size_t c = 0; c < cols_; ++c)
    if (!is_pivot[c]) free_cols.push_back(c);

  Matrix ker(fld_, cols_, free_cols.size());
  for (std::size_t k = 0; k < free_cols.size(); ++k) {
    std::size_t fc = free_cols[k];
    ker.at(fc, k) = fld_.one();
    for (std::size_t pr = 0; pr < pivots.size(); ++pr)
      ker.at(pivots[pr], k) = fld_.neg(red.at(pr, fc));
  }
  out.reduced = std::move(red);
  out.kernel = std::move(ker);
  return out;
}

std::optional<Matrix> Matrix::solve(const Matrix& b) const {
  check_same_field(b);
  require(b.rows() == rows_, Errc::ShapeError, "solve: rhs row mismatch");
  Matrix aug = hstack(b);
  Rref rr = aug.rref();
  // Any pivot inside the rhs block means that column is not in the span.
  for (auto c : rr.pivots)
    if (c >= cols_) return std::nullopt;
  Matrix x(fld_, cols_, b.cols());
  for (std::size_t pr = 0; pr < rr.pivots.size(); ++pr) {
    std::size_t pc = rr.pivots[pr];
    for (std::size_t j = 0; j < b.cols(); ++j) x.at(pc, j) = rr.reduced.at(pr, cols_ + j);
  }
  return x;
}

Vec zero_vec(const Field& f, std::size_t n) { return Vec(n, f.zero()); }

Vec unit_vec(const Field& f, std::size_t n, std::size_t i) {
  Vec v(n, f.zero());
  v[i] = f.one();
  return v;
}

Vec add_vec(const Field& f, const Vec& a, const Vec& b) {
  require(a.size() == b.size(), Errc::ShapeError, "vector sum length mismatch");
  Vec r(a.size(), f.zero());
  for (std::size_t i = 0; i < a.size(); ++i) r[i] = f.add(a[i], b[i]);
  return r;
}

Vec sub_vec(const Field& f, const Vec& a, const Vec& b) {
  require(a.size() == b.size(), Errc::ShapeError, "vector diff length mismatch");
  Vec r(a.size(), f.zero());
  for (std::size_t i = 0; i < a.size(); ++i) r[i] = f.sub(a[i], b[i]);
  return r;
}

Vec scale_vec(const Field& f, const Scalar& c, const Vec& a) {
  Vec r(a.size(), f.zero());
  for (std::size_t i = 0; i < a.size(); ++i) r[i] = f.mul(c, a[i]);
  return r;
}

bool is_zero_vec(const Field& f, const Vec& a) {
  for (const auto& x : a)
    if (!f.is_zero(x)) return false;
  return true;
}

}  // namespace dgaudit
