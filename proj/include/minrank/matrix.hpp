#ifndef MINRANK_MATRIX_HPP
#define MINRANK_MATRIX_HPP

#include <cstdint>
#include <optional>
#include <span>
#include <vector>

#include "minrank/field.hpp"
#include "minrank/random.hpp"

namespace minrank {

// Dense matrix over F_q with exact arithmetic. For q = 2 rows are bit-packed
// into 64-bit words (column j lives in word j/64, bit j%64); elimination and
// multiplication run on whole words. For q > 2 entries are stored one uint16
// each.
class Matrix {
 public:
  Matrix(FieldSpec field, size_t rows, size_t cols);  // zero-initialized

  const FieldSpec& field() const { return field_; }
  size_t rows() const { return rows_; }
  size_t cols() const { return cols_; }
  bool packed() const { return field_.q() == 2; }

  uint16_t at(size_t r, size_t c) const;
  void set(size_t r, size_t c, uint16_t v);

  bool operator==(const Matrix& o) const;
  bool operator!=(const Matrix& o) const { return !(*this == o); }

  static Matrix identity(FieldSpec field, size_t n);

  // Word view of a packed row; only valid when packed().
  std::span<const uint64_t> row_words(size_t r) const;
  std::span<uint64_t> row_words(size_t r);
  size_t words_per_row() const { return wpr_; }

 private:
  FieldSpec field_;
  size_t rows_, cols_;
  size_t wpr_ = 0;                // packed words per row (q = 2)
  std::vector<uint64_t> bits_;    // q = 2 storage
  std::vector<uint16_t> entries_; // q > 2 storage
};

Matrix operator+(const Matrix& a, const Matrix& b);
Matrix operator-(const Matrix& a, const Matrix& b);
Matrix operator*(const Matrix& a, const Matrix& b);
Matrix negate(const Matrix& a);

size_t rank(const Matrix& a);
bool is_invertible(const Matrix& a);
Matrix invert(const Matrix& a);

// Coefficient vector in F_q^len; houses the secret alpha and the blinding
// vectors beta / mu.
struct CoeffVector {
  FieldSpec field;
  std::vector<uint16_t> values;

  CoeffVector(FieldSpec f, std::vector<uint16_t> v);
  size_t size() const { return values.size(); }
  bool operator==(const CoeffVector& o) const {
    return field == o.field && values == o.values;
  }
};

CoeffVector coeff_add(const CoeffVector& a, const CoeffVector& b);
CoeffVector coeff_sub(const CoeffVector& a, const CoeffVector& b);

// sum_i coeffs[i] * mats[i], minus subtrahend when present.
Matrix linear_combination(const CoeffVector& coeffs, std::span<const Matrix> mats,
                          const Matrix* subtrahend = nullptr);

// Uniform sampling; each is a pure function of the consumed stream.
Matrix random_matrix(RandomSource& rng, FieldSpec field, size_t rows, size_t cols);
Matrix random_invertible(RandomSource& rng, FieldSpec field, size_t n);
// T * diag(1 x r) * S with T, S uniform over GL_n; uniform over the set of
// n x n matrices of rank exactly r.
Matrix random_rank_r(RandomSource& rng, FieldSpec field, size_t n, size_t r);

CoeffVector random_coeffs(RandomSource& rng, FieldSpec field, size_t len);

}  // namespace minrank

#endif
