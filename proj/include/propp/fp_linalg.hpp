#pragma once

// Dense exact linear algebra over the prime field F_p, p odd.

#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

namespace propp {

using Residue = std::uint16_t;
using VecFp = std::vector<Residue>;

bool is_prime(unsigned n);

// Arithmetic in F_p with a Barrett-style reduction for products of residues.
class PrimeField {
 public:
  explicit PrimeField(unsigned p);

  unsigned p() const { return p_; }

  Residue reduce(std::uint64_t x) const {
    std::uint64_t q = (x * magic_) >> 40;
    std::uint64_t r = x - q * p_;
    while (r >= p_) r -= p_;
    return static_cast<Residue>(r);
  }
  Residue from_signed(long long x) const {
    long long r = x % static_cast<long long>(p_);
    return static_cast<Residue>(r < 0 ? r + p_ : r);
  }
  Residue add(Residue a, Residue b) const {
    unsigned s = unsigned(a) + b;
    return static_cast<Residue>(s >= p_ ? s - p_ : s);
  }
  Residue sub(Residue a, Residue b) const {
    return static_cast<Residue>(a >= b ? a - b : a + p_ - b);
  }
  Residue neg(Residue a) const { return a == 0 ? 0 : static_cast<Residue>(p_ - a); }
  Residue mul(Residue a, Residue b) const { return reduce(std::uint64_t(a) * b); }
  Residue inv(Residue a) const;

  // v[i] += k * w[i] for all i.
  void axpy(std::span<Residue> v, Residue k, std::span<const Residue> w) const;

 private:
  unsigned p_;
  std::uint64_t magic_;
};

class MatFp {
 public:
  MatFp(unsigned p, std::size_t rows, std::size_t cols);

  static MatFp identity(unsigned p, std::size_t n);
  static MatFp diagonal(unsigned p, const std::vector<long long>& diag);
  // Entries are reduced mod p; all rows must have equal length.
  static MatFp from_rows(unsigned p, const std::vector<std::vector<long long>>& rows);

  unsigned prime() const { return field_.p(); }
  const PrimeField& field() const { return field_; }
  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }
  bool is_square() const { return rows_ == cols_; }

  Residue at(std::size_t r, std::size_t c) const { return data_[r * cols_ + c]; }
  void set(std::size_t r, std::size_t c, long long value) {
    data_[r * cols_ + c] = field_.from_signed(value);
  }
  std::span<const Residue> row(std::size_t r) const {
    return {data_.data() + r * cols_, cols_};
  }
  VecFp column(std::size_t c) const;

  MatFp transpose() const;
  MatFp operator*(const MatFp& other) const;
  VecFp apply(std::span<const Residue> v) const;
  bool is_identity() const;

  friend bool operator==(const MatFp& a, const MatFp& b) {
    return a.prime() == b.prime() && a.rows_ == b.rows_ && a.cols_ == b.cols_ &&
           a.data_ == b.data_;
  }

 private:
  PrimeField field_;
  std::size_t rows_;
  std::size_t cols_;
  std::vector<Residue> data_;
};

// Reduced row echelon form, built one row at a time. Each stored row has a
// leading 1 in its pivot column and zeros in every other pivot column.
class EchelonBasis {
 public:
  EchelonBasis(unsigned p, std::size_t cols);

  // Reduces v against the basis; returns true when v was independent.
  bool insert(VecFp v);
  // Reduces v in place; afterwards v is zero exactly when v was in the span.
  void reduce(VecFp& v) const;
  bool contains(VecFp v) const;

  std::size_t rank() const { return rows_.size(); }
  std::size_t cols() const { return cols_; }
  const PrimeField& field() const { return field_; }
  // Rows sorted by pivot column.
  std::vector<VecFp> rows() const;
  std::vector<std::size_t> pivots() const;
  std::vector<std::size_t> free_columns() const;
  // Right null space of the stored rows; one vector per free column with a 1
  // there and 0 at every other free column.
  std::vector<VecFp> kernel() const;

 private:
  PrimeField field_;
  std::size_t cols_;
  std::vector<VecFp> rows_;
  std::vector<std::size_t> pivot_of_row_;
  std::vector<std::ptrdiff_t> row_of_pivot_;
};

MatFp rref(const MatFp& m);
std::size_t rank(const MatFp& m);
std::vector<VecFp> kernel_basis(const MatFp& m);
// Basis of the column space, as reduced row-echelon rows of the transpose.
std::vector<VecFp> column_space_basis(const MatFp& m);

struct EigenDecomposition {
  std::size_t dim_plus = 0;
  std::size_t dim_minus = 0;
  std::vector<VecFp> basis_plus;
  std::vector<VecFp> basis_minus;
};

// Splits F_p^n under an involution m (m*m = 1) into the images of (1 + m)/2
// and (1 - m)/2. Throws InputError when m is not an involution.
EigenDecomposition eigensplit_involution(const MatFp& m);

}  // namespace propp
