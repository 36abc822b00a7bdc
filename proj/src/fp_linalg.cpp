#include "propp/fp_linalg.hpp"

#include <algorithm>
#include <limits>
#include <string>

#include "propp/errors.hpp"

namespace propp {

bool is_prime(unsigned n) {
  if (n < 2) return false;
  for (unsigned d = 2; d * d <= n; ++d)
    if (n % d == 0) return false;
  return true;
}

PrimeField::PrimeField(unsigned p) : p_(p) {
  if (!is_prime(p)) throw InputError("modulus " + std::to_string(p) + " is not prime");
  if (p == 2) throw InputError("p must be odd");
  if (p >= (1u << 16)) throw InputError("modulus must be below 2^16");
  magic_ = (std::uint64_t{1} << 40) / p;
}

Residue PrimeField::inv(Residue a) const {
  if (a == 0) throw InconsistencyFault("inverse of zero in F_p");
  // Fermat: a^(p-2).
  Residue result = 1, base = a;
  for (unsigned e = p_ - 2; e; e >>= 1) {
    if (e & 1u) result = mul(result, base);
    base = mul(base, base);
  }
  return result;
}

void PrimeField::axpy(std::span<Residue> v, Residue k, std::span<const Residue> w) const {
  if (k == 0) return;
  const std::uint64_t p = p_, magic = magic_;
  const std::size_t n = v.size();
  Residue* out = v.data();
  const Residue* in = w.data();
  for (std::size_t i = 0; i < n; ++i) {
    std::uint64_t x = out[i] + std::uint64_t(k) * in[i];
    std::uint64_t q = (x * magic) >> 40;
    x -= q * p;
    x = x >= p ? x - p : x;
    out[i] = static_cast<Residue>(x);
  }
}

MatFp::MatFp(unsigned p, std::size_t rows, std::size_t cols)
    : field_(p), rows_(rows), cols_(cols), data_(rows * cols, 0) {}

MatFp MatFp::identity(unsigned p, std::size_t n) {
  MatFp m(p, n, n);
  for (std::size_t i = 0; i < n; ++i) m.data_[i * n + i] = 1;
  return m;
}

MatFp MatFp::diagonal(unsigned p, const std::vector<long long>& diag) {
  MatFp m(p, diag.size(), diag.size());
  for (std::size_t i = 0; i < diag.size(); ++i) m.set(i, i, diag[i]);
  return m;
}

MatFp MatFp::from_rows(unsigned p, const std::vector<std::vector<long long>>& rows) {
  const std::size_t cols = rows.empty() ? 0 : rows.front().size();
  MatFp m(p, rows.size(), cols);
  for (std::size_t r = 0; r < rows.size(); ++r) {
    if (rows[r].size() != cols) throw InputError("ragged matrix rows");
    for (std::size_t c = 0; c < cols; ++c) m.set(r, c, rows[r][c]);
  }
  return m;
}

VecFp MatFp::column(std::size_t c) const {
  VecFp v(rows_);
  for (std::size_t r = 0; r < rows_; ++r) v[r] = at(r, c);
  return v;
}

MatFp MatFp::transpose() const {
  MatFp t(prime(), cols_, rows_);
  for (std::size_t r = 0; r < rows_; ++r)
    for (std::size_t c = 0; c < cols_; ++c) t.data_[c * rows_ + r] = at(r, c);
  return t;
}

MatFp MatFp::operator*(const MatFp& other) const {
  if (cols_ != other.rows_ || prime() != other.prime())
    throw InputError("matrix product shape or modulus mismatch");
  MatFp out(prime(), rows_, other.cols_);
  for (std::size_t r = 0; r < rows_; ++r) {
    std::span<Residue> dst{out.data_.data() + r * other.cols_, other.cols_};
    for (std::size_t k = 0; k < cols_; ++k) field_.axpy(dst, at(r, k), other.row(k));
  }
  return out;
}

VecFp MatFp::apply(std::span<const Residue> v) const {
  if (v.size() != cols_) throw InputError("vector length mismatch");
  VecFp out(rows_, 0);
  for (std::size_t r = 0; r < rows_; ++r) {
    std::uint64_t acc = 0;
    for (std::size_t c = 0; c < cols_; ++c) acc = field_.reduce(acc + std::uint64_t(at(r, c)) * v[c]);
    out[r] = static_cast<Residue>(acc);
  }
  return out;
}

bool MatFp::is_identity() const {
  if (!is_square()) return false;
  for (std::size_t r = 0; r < rows_; ++r)
    for (std::size_t c = 0; c < cols_; ++c)
      if (at(r, c) != (r == c ? 1 : 0)) return false;
  return true;
}

EchelonBasis::EchelonBasis(unsigned p, std::size_t cols)
    : field_(p), cols_(cols), row_of_pivot_(cols, -1) {}

void EchelonBasis::reduce(VecFp& v) const {
  for (std::size_t r = 0; r < rows_.size(); ++r) {
    Residue coeff = v[pivot_of_row_[r]];
    if (coeff != 0) field_.axpy(v, field_.neg(coeff), rows_[r]);
  }
}

bool EchelonBasis::contains(VecFp v) const {
  reduce(v);
  return std::all_of(v.begin(), v.end(), [](Residue x) { return x == 0; });
}

bool EchelonBasis::insert(VecFp v) {
  if (v.size() != cols_) throw InputError("echelon row length mismatch");
  reduce(v);
  auto lead = std::find_if(v.begin(), v.end(), [](Residue x) { return x != 0; });
  if (lead == v.end()) return false;
  const std::size_t pivot = static_cast<std::size_t>(lead - v.begin());
  const Residue scale = field_.inv(*lead);
  for (auto& x : v) x = field_.mul(x, scale);
  // Clear the new pivot column from existing rows to keep the form reduced.
  for (auto& row : rows_) {
    Residue coeff = row[pivot];
    if (coeff != 0) field_.axpy(row, field_.neg(coeff), v);
  }
  row_of_pivot_[pivot] = static_cast<std::ptrdiff_t>(rows_.size());
  pivot_of_row_.push_back(pivot);
  rows_.push_back(std::move(v));
  return true;
}

std::vector<VecFp> EchelonBasis::rows() const {
  std::vector<VecFp> out;
  out.reserve(rows_.size());
  for (std::size_t c = 0; c < cols_; ++c)
    if (row_of_pivot_[c] >= 0) out.push_back(rows_[static_cast<std::size_t>(row_of_pivot_[c])]);
  return out;
}

std::vector<std::size_t> EchelonBasis::pivots() const {
  std::vector<std::size_t> out;
  for (std::size_t c = 0; c < cols_; ++c)
    if (row_of_pivot_[c] >= 0) out.push_back(c);
  return out;
}

std::vector<std::size_t> EchelonBasis::free_columns() const {
  std::vector<std::size_t> out;
  for (std::size_t c = 0; c < cols_; ++c)
    if (row_of_pivot_[c] < 0) out.push_back(c);
  return out;
}

std::vector<VecFp> EchelonBasis::kernel() const {
  std::vector<VecFp> basis;
  for (std::size_t f : free_columns()) {
    VecFp v(cols_, 0);
    v[f] = 1;
    for (std::size_t r = 0; r < rows_.size(); ++r)
      v[pivot_of_row_[r]] = field_.neg(rows_[r][f]);
    basis.push_back(std::move(v));
  }
  return basis;
}

MatFp rref(const MatFp& m) {
  EchelonBasis basis(m.prime(), m.cols());
  for (std::size_t r = 0; r < m.rows(); ++r) {
    auto row = m.row(r);
    basis.insert(VecFp(row.begin(), row.end()));
  }
  MatFp out(m.prime(), m.rows(), m.cols());
  auto rows = basis.rows();
  for (std::size_t r = 0; r < rows.size(); ++r)
    for (std::size_t c = 0; c < m.cols(); ++c) out.set(r, c, rows[r][c]);
  return out;
}

std::size_t rank(const MatFp& m) {
  EchelonBasis basis(m.prime(), m.cols());
  for (std::size_t r = 0; r < m.rows(); ++r) {
    auto row = m.row(r);
    basis.insert(VecFp(row.begin(), row.end()));
  }
  return basis.rank();
}

std::vector<VecFp> kernel_basis(const MatFp& m) {
  EchelonBasis basis(m.prime(), m.cols());
  for (std::size_t r = 0; r < m.rows(); ++r) {
    auto row = m.row(r);
    basis.insert(VecFp(row.begin(), row.end()));
  }
  return basis.kernel();
}

std::vector<VecFp> column_space_basis(const MatFp& m) {
  EchelonBasis basis(m.prime(), m.rows());
  for (std::size_t c = 0; c < m.cols(); ++c) basis.insert(m.column(c));
  return basis.rows();
}

EigenDecomposition eigensplit_involution(const MatFp& m) {
  if (!m.is_square()) throw InputError("involution matrix must be square");
  if (!(m * m).is_identity()) throw InputError("matrix does not square to the identity");
  const std::size_t n = m.rows();
  const PrimeField& f = m.field();
  const Residue half = f.inv(2);
  MatFp plus(m.prime(), n, n), minus(m.prime(), n, n);
  for (std::size_t r = 0; r < n; ++r) {
    for (std::size_t c = 0; c < n; ++c) {
      Residue id = r == c ? 1 : 0;
      plus.set(r, c, f.mul(half, f.add(id, m.at(r, c))));
      minus.set(r, c, f.mul(half, f.sub(id, m.at(r, c))));
    }
  }
  EigenDecomposition out;
  out.basis_plus = column_space_basis(plus);
  out.basis_minus = column_space_basis(minus);
  out.dim_plus = out.basis_plus.size();
  out.dim_minus = out.basis_minus.size();
  return out;
}

}  // namespace propp
