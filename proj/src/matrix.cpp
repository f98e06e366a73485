#include "minrank/matrix.hpp"

#include <algorithm>

namespace minrank {

namespace {

void require_same_shape(const Matrix& a, const Matrix& b) {
  if (a.field() != b.field())
    throw Error(ErrorCode::field_mismatch, "matrix operands over different fields");
  if (a.rows() != b.rows() || a.cols() != b.cols())
    throw Error(ErrorCode::dimension_mismatch, "matrix operands of different shape");
}

}  // namespace

Matrix::Matrix(FieldSpec field, size_t rows, size_t cols)
    : field_(field), rows_(rows), cols_(cols) {
  if (packed()) {
    wpr_ = (cols_ + 63) / 64;
    bits_.assign(rows_ * wpr_, 0);
  } else {
    entries_.assign(rows_ * cols_, 0);
  }
}

uint16_t Matrix::at(size_t r, size_t c) const {
  if (packed()) return uint16_t((bits_[r * wpr_ + c / 64] >> (c % 64)) & 1);
  return entries_[r * cols_ + c];
}

void Matrix::set(size_t r, size_t c, uint16_t v) {
  if (packed()) {
    uint64_t& w = bits_[r * wpr_ + c / 64];
    const uint64_t mask = uint64_t(1) << (c % 64);
    w = (v & 1) ? (w | mask) : (w & ~mask);
  } else {
    entries_[r * cols_ + c] = uint16_t(v % field_.q());
  }
}

bool Matrix::operator==(const Matrix& o) const {
  return field_ == o.field_ && rows_ == o.rows_ && cols_ == o.cols_ &&
         bits_ == o.bits_ && entries_ == o.entries_;
}

Matrix Matrix::identity(FieldSpec field, size_t n) {
  Matrix m(field, n, n);
  for (size_t i = 0; i < n; ++i) m.set(i, i, 1);
  return m;
}

std::span<const uint64_t> Matrix::row_words(size_t r) const {
  return {bits_.data() + r * wpr_, wpr_};
}

std::span<uint64_t> Matrix::row_words(size_t r) {
  return {bits_.data() + r * wpr_, wpr_};
}

Matrix operator+(const Matrix& a, const Matrix& b) {
  require_same_shape(a, b);
  Matrix out = a;
  if (a.packed()) {
    for (size_t r = 0; r < a.rows(); ++r) {
      auto dst = out.row_words(r);
      auto src = b.row_words(r);
      for (size_t w = 0; w < dst.size(); ++w) dst[w] ^= src[w];
    }
  } else {
    for (size_t r = 0; r < a.rows(); ++r)
      for (size_t c = 0; c < a.cols(); ++c)
        out.set(r, c, a.field().add(a.at(r, c), b.at(r, c)));
  }
  return out;
}

Matrix operator-(const Matrix& a, const Matrix& b) {
  if (a.packed()) return a + b;  // characteristic 2
  require_same_shape(a, b);
  Matrix out = a;
  for (size_t r = 0; r < a.rows(); ++r)
    for (size_t c = 0; c < a.cols(); ++c)
      out.set(r, c, a.field().sub(a.at(r, c), b.at(r, c)));
  return out;
}

Matrix negate(const Matrix& a) {
  if (a.packed()) return a;
  Matrix out = a;
  for (size_t r = 0; r < a.rows(); ++r)
    for (size_t c = 0; c < a.cols(); ++c) out.set(r, c, a.field().neg(a.at(r, c)));
  return out;
}

Matrix operator*(const Matrix& a, const Matrix& b) {
  if (a.field() != b.field())
    throw Error(ErrorCode::field_mismatch, "matrix operands over different fields");
  if (a.cols() != b.rows())
    throw Error(ErrorCode::dimension_mismatch, "inner dimensions do not match");
  Matrix out(a.field(), a.rows(), b.cols());
  if (a.packed()) {
    for (size_t r = 0; r < a.rows(); ++r) {
      auto dst = out.row_words(r);
      for (size_t k = 0; k < a.cols(); ++k) {
        if (a.at(r, k)) {
          auto src = b.row_words(k);
          for (size_t w = 0; w < dst.size(); ++w) dst[w] ^= src[w];
        }
      }
    }
  } else {
    const uint32_t q = a.field().q();
    for (size_t r = 0; r < a.rows(); ++r)
      for (size_t c = 0; c < b.cols(); ++c) {
        uint64_t acc = 0;
        for (size_t k = 0; k < a.cols(); ++k)
          acc += uint32_t(a.at(r, k)) * b.at(k, c);
        out.set(r, c, uint16_t(acc % q));
      }
  }
  return out;
}

namespace {

// Column-major sweep with the first nonzero entry as pivot; deterministic.
size_t eliminate_packed(std::vector<uint64_t>& rows, size_t nrows, size_t ncols,
                        size_t wpr) {
  size_t pivot_row = 0;
  for (size_t col = 0; col < ncols && pivot_row < nrows; ++col) {
    const size_t w = col / 64;
    const uint64_t mask = uint64_t(1) << (col % 64);
    size_t found = nrows;
    for (size_t r = pivot_row; r < nrows; ++r) {
      if (rows[r * wpr + w] & mask) {
        found = r;
        break;
      }
    }
    if (found == nrows) continue;
    if (found != pivot_row)
      std::swap_ranges(rows.begin() + found * wpr, rows.begin() + (found + 1) * wpr,
                       rows.begin() + pivot_row * wpr);
    for (size_t r = found + 1; r < nrows; ++r) {
      if (rows[r * wpr + w] & mask)
        for (size_t k = 0; k < wpr; ++k) rows[r * wpr + k] ^= rows[pivot_row * wpr + k];
    }
    ++pivot_row;
  }
  return pivot_row;
}

size_t eliminate_generic(std::vector<uint16_t>& e, size_t nrows, size_t ncols,
                         const FieldSpec& f) {
  size_t pivot_row = 0;
  for (size_t col = 0; col < ncols && pivot_row < nrows; ++col) {
    size_t found = nrows;
    for (size_t r = pivot_row; r < nrows; ++r) {
      if (e[r * ncols + col] != 0) {
        found = r;
        break;
      }
    }
    if (found == nrows) continue;
    if (found != pivot_row)
      std::swap_ranges(e.begin() + found * ncols, e.begin() + (found + 1) * ncols,
                       e.begin() + pivot_row * ncols);
    const uint16_t pinv = f.inv(e[pivot_row * ncols + col]);
    for (size_t r = found + 1; r < nrows; ++r) {
      const uint16_t v = e[r * ncols + col];
      if (v == 0) continue;
      const uint16_t factor = f.mul(v, pinv);
      for (size_t k = col; k < ncols; ++k)
        e[r * ncols + k] = f.sub(e[r * ncols + k], f.mul(factor, e[pivot_row * ncols + k]));
    }
    ++pivot_row;
  }
  return pivot_row;
}

}  // namespace

size_t rank(const Matrix& a) {
  if (a.packed()) {
    std::vector<uint64_t> rows(a.rows() * a.words_per_row());
    for (size_t r = 0; r < a.rows(); ++r) {
      auto src = a.row_words(r);
      std::copy(src.begin(), src.end(), rows.begin() + r * a.words_per_row());
    }
    return eliminate_packed(rows, a.rows(), a.cols(), a.words_per_row());
  }
  std::vector<uint16_t> e(a.rows() * a.cols());
  for (size_t r = 0; r < a.rows(); ++r)
    for (size_t c = 0; c < a.cols(); ++c) e[r * a.cols() + c] = a.at(r, c);
  return eliminate_generic(e, a.rows(), a.cols(), a.field());
}

bool is_invertible(const Matrix& a) {
  if (a.rows() != a.cols())
    throw Error(ErrorCode::non_square, "invertibility requires a square matrix");
  return rank(a) == a.rows();
}

Matrix invert(const Matrix& a) {
  if (a.rows() != a.cols())
    throw Error(ErrorCode::non_square, "inversion requires a square matrix");
  const size_t n = a.rows();
  const FieldSpec f = a.field();
  // Gauss-Jordan on [A | I].
  const size_t w = 2 * n;
  std::vector<uint16_t> e(n * w, 0);
  for (size_t r = 0; r < n; ++r) {
    for (size_t c = 0; c < n; ++c) e[r * w + c] = a.at(r, c);
    e[r * w + n + r] = 1;
  }
  for (size_t col = 0; col < n; ++col) {
    size_t found = n;
    for (size_t r = col; r < n; ++r) {
      if (e[r * w + col] != 0) {
        found = r;
        break;
      }
    }
    if (found == n) throw Error(ErrorCode::singular_matrix, "matrix is not invertible");
    if (found != col)
      std::swap_ranges(e.begin() + found * w, e.begin() + (found + 1) * w,
                       e.begin() + col * w);
    const uint16_t pinv = f.inv(e[col * w + col]);
    for (size_t k = 0; k < w; ++k) e[col * w + k] = f.mul(e[col * w + k], pinv);
    for (size_t r = 0; r < n; ++r) {
      if (r == col) continue;
      const uint16_t v = e[r * w + col];
      if (v == 0) continue;
      for (size_t k = 0; k < w; ++k)
        e[r * w + k] = f.sub(e[r * w + k], f.mul(v, e[col * w + k]));
    }
  }
  Matrix out(f, n, n);
  for (size_t r = 0; r < n; ++r)
    for (size_t c = 0; c < n; ++c) out.set(r, c, e[r * w + n + c]);
  return out;
}

CoeffVector::CoeffVector(FieldSpec f, std::vector<uint16_t> v)
    : field(f), values(std::move(v)) {
  for (auto e : values)
    if (e >= field.q())
      throw Error(ErrorCode::invariant_violation, "coefficient out of field range");
}

CoeffVector coeff_add(const CoeffVector& a, const CoeffVector& b) {
  if (a.field != b.field)
    throw Error(ErrorCode::field_mismatch, "coefficient vectors over different fields");
  if (a.size() != b.size())
    throw Error(ErrorCode::dimension_mismatch, "coefficient vectors of different length");
  std::vector<uint16_t> out(a.size());
  for (size_t i = 0; i < out.size(); ++i) out[i] = a.field.add(a.values[i], b.values[i]);
  return CoeffVector(a.field, std::move(out));
}

CoeffVector coeff_sub(const CoeffVector& a, const CoeffVector& b) {
  if (a.field != b.field)
    throw Error(ErrorCode::field_mismatch, "coefficient vectors over different fields");
  if (a.size() != b.size())
    throw Error(ErrorCode::dimension_mismatch, "coefficient vectors of different length");
  std::vector<uint16_t> out(a.size());
  for (size_t i = 0; i < out.size(); ++i) out[i] = a.field.sub(a.values[i], b.values[i]);
  return CoeffVector(a.field, std::move(out));
}

Matrix linear_combination(const CoeffVector& coeffs, std::span<const Matrix> mats,
                          const Matrix* subtrahend) {
  if (coeffs.size() != mats.size())
    throw Error(ErrorCode::dimension_mismatch,
                "coefficient count does not match matrix count");
  const Matrix* shape = subtrahend;
  if (!mats.empty()) shape = &mats[0];
  if (!shape)
    throw Error(ErrorCode::invalid_argument, "empty combination without subtrahend");
  Matrix acc(shape->field(), shape->rows(), shape->cols());
  if (coeffs.field != shape->field())
    throw Error(ErrorCode::field_mismatch, "coefficients over a different field");
  if (acc.packed()) {
    for (size_t i = 0; i < mats.size(); ++i) {
      require_same_shape(acc, mats[i]);
      if (!coeffs.values[i]) continue;
      for (size_t r = 0; r < acc.rows(); ++r) {
        auto dst = acc.row_words(r);
        auto src = mats[i].row_words(r);
        for (size_t w = 0; w < dst.size(); ++w) dst[w] ^= src[w];
      }
    }
  } else {
    for (size_t i = 0; i < mats.size(); ++i) {
      require_same_shape(acc, mats[i]);
      const uint16_t c = coeffs.values[i];
      if (!c) continue;
      for (size_t r = 0; r < acc.rows(); ++r)
        for (size_t k = 0; k < acc.cols(); ++k)
          acc.set(r, k, acc.field().add(acc.at(r, k), acc.field().mul(c, mats[i].at(r, k))));
    }
  }
  if (subtrahend) {
    require_same_shape(acc, *subtrahend);
    acc = acc - *subtrahend;
  }
  return acc;
}

Matrix random_matrix(RandomSource& rng, FieldSpec field, size_t rows, size_t cols) {
  Matrix m(field, rows, cols);
  for (size_t r = 0; r < rows; ++r)
    for (size_t c = 0; c < cols; ++c) m.set(r, c, rng.field_element(field));
  return m;
}

Matrix random_invertible(RandomSource& rng, FieldSpec field, size_t n) {
  for (;;) {
    Matrix m = random_matrix(rng, field, n, n);
    if (rank(m) == n) return m;
  }
}

Matrix random_rank_r(RandomSource& rng, FieldSpec field, size_t n, size_t r) {
  if (r > n) throw Error(ErrorCode::invalid_argument, "target rank exceeds size");
  Matrix t = random_invertible(rng, field, n);
  Matrix s = random_invertible(rng, field, n);
  Matrix d(field, n, n);
  for (size_t i = 0; i < r; ++i) d.set(i, i, 1);
  return t * d * s;
}

CoeffVector random_coeffs(RandomSource& rng, FieldSpec field, size_t len) {
  std::vector<uint16_t> v(len);
  for (auto& e : v) e = rng.field_element(field);
  return CoeffVector(field, std::move(v));
}

}  // namespace minrank
