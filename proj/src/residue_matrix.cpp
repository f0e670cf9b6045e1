#include "mpkc/residue_matrix.hpp"

#include <ostream>
#include <string>
#include <utility>

#include "mpkc/errors.hpp"

namespace mpkc {

namespace {

thread_local std::uint64_t tl_multiplications = 0;

void require_same_shape(const ResidueMatrix& a, const ResidueMatrix& b, const char* op) {
  if (a.dim() != b.dim() || a.modulus() != b.modulus()) {
    throw ShapeMismatch(std::string(op) + ": " + std::to_string(a.dim()) + "x" +
                        std::to_string(a.dim()) + " mod " + std::to_string(a.modulus().value()) +
                        " vs " + std::to_string(b.dim()) + "x" + std::to_string(b.dim()) +
                        " mod " + std::to_string(b.modulus().value()));
  }
}

}  // namespace

std::uint64_t matrix_multiplications() noexcept { return tl_multiplications; }

ResidueMatrix::ResidueMatrix(PrimeModulus modulus, std::size_t dim)
    : modulus_(modulus), dim_(dim), entries_(dim * dim, 0) {
  if (dim == 0) throw InvalidParameter("matrix dimension must be positive");
}

ResidueMatrix ResidueMatrix::identity(PrimeModulus modulus, std::size_t dim) {
  ResidueMatrix m(modulus, dim);
  for (std::size_t i = 0; i < dim; ++i) m.entries_[i * dim + i] = 1 % modulus.value();
  return m;
}

ResidueMatrix ResidueMatrix::from_rows(PrimeModulus modulus,
                                       const std::vector<std::vector<std::uint64_t>>& rows) {
  ResidueMatrix m(modulus, rows.size());
  for (std::size_t i = 0; i < rows.size(); ++i) {
    if (rows[i].size() != rows.size()) {
      throw ShapeMismatch("row " + std::to_string(i) + " has " + std::to_string(rows[i].size()) +
                          " entries, expected " + std::to_string(rows.size()));
    }
    for (std::size_t j = 0; j < rows.size(); ++j) {
      if (rows[i][j] >= modulus.value()) {
        throw InvalidParameter("entry " + std::to_string(rows[i][j]) + " is not a residue mod " +
                               std::to_string(modulus.value()));
      }
      m.entries_[i * m.dim_ + j] = rows[i][j];
    }
  }
  return m;
}

ResidueMatrix ResidueMatrix::from_rows(
    PrimeModulus modulus, std::initializer_list<std::initializer_list<std::uint64_t>> rows) {
  std::vector<std::vector<std::uint64_t>> v;
  for (const auto& r : rows) v.emplace_back(r);
  return from_rows(modulus, v);
}

std::vector<std::vector<std::uint64_t>> ResidueMatrix::rows() const {
  std::vector<std::vector<std::uint64_t>> out(dim_);
  for (std::size_t i = 0; i < dim_; ++i) out[i].assign(row(i).begin(), row(i).end());
  return out;
}

bool ResidueMatrix::is_identity() const noexcept {
  for (std::size_t i = 0; i < dim_; ++i)
    for (std::size_t j = 0; j < dim_; ++j)
      if ((*this)(i, j) != (i == j ? 1 % modulus_.value() : 0)) return false;
  return true;
}

bool ResidueMatrix::is_zero() const noexcept {
  for (Residue e : entries_)
    if (e != 0) return false;
  return true;
}

Residue ResidueMatrix::determinant() const {
  // Gaussian elimination over the field; each row swap flips the sign.
  std::vector<Residue> a = entries_;
  const auto& f = modulus_;
  Residue det = 1;
  for (std::size_t col = 0; col < dim_; ++col) {
    std::size_t pivot = col;
    while (pivot < dim_ && a[pivot * dim_ + col] == 0) ++pivot;
    if (pivot == dim_) return 0;
    if (pivot != col) {
      for (std::size_t j = 0; j < dim_; ++j) std::swap(a[pivot * dim_ + j], a[col * dim_ + j]);
      det = f.neg(det);
    }
    const Residue p = a[col * dim_ + col];
    det = f.mul(det, p);
    const Residue p_inv = f.inv(p);
    for (std::size_t i = col + 1; i < dim_; ++i) {
      const Residue factor = f.mul(a[i * dim_ + col], p_inv);
      if (factor == 0) continue;
      for (std::size_t j = col; j < dim_; ++j)
        a[i * dim_ + j] = f.sub(a[i * dim_ + j], f.mul(factor, a[col * dim_ + j]));
    }
  }
  return det;
}

ResidueMatrix& ResidueMatrix::operator+=(const ResidueMatrix& other) {
  require_same_shape(*this, other, "add");
  for (std::size_t i = 0; i < entries_.size(); ++i)
    entries_[i] = modulus_.add(entries_[i], other.entries_[i]);
  return *this;
}

ResidueMatrix& ResidueMatrix::operator-=(const ResidueMatrix& other) {
  require_same_shape(*this, other, "sub");
  for (std::size_t i = 0; i < entries_.size(); ++i)
    entries_[i] = modulus_.sub(entries_[i], other.entries_[i]);
  return *this;
}

ResidueMatrix ResidueMatrix::scaled(Residue factor) const {
  ResidueMatrix out = *this;
  factor %= modulus_.value();
  for (Residue& e : out.entries_) e = modulus_.mul(e, factor);
  return out;
}

ResidueMatrix operator+(ResidueMatrix a, const ResidueMatrix& b) { return a += b; }
ResidueMatrix operator-(ResidueMatrix a, const ResidueMatrix& b) { return a -= b; }

ResidueMatrix mat_mul(const ResidueMatrix& a, const ResidueMatrix& b) {
  require_same_shape(a, b, "mul");
  ++tl_multiplications;
  const std::size_t n = a.dim();
  const auto& f = a.modulus();
  ResidueMatrix out(f, n);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      Residue acc = 0;
      for (std::size_t k = 0; k < n; ++k) acc = f.add(acc, f.mul(a(i, k), b(k, j)));
      out.set(i, j, acc);
    }
  }
  return out;
}

ResidueMatrix mat_pow(const ResidueMatrix& a, std::int64_t e) {
  if (e < 0) {
    // -(e+1)+1 is safe at INT64_MIN.
    const std::uint64_t mag = static_cast<std::uint64_t>(-(e + 1)) + 1;
    ResidueMatrix base = mat_inv(a);
    ResidueMatrix result = ResidueMatrix::identity(a.modulus(), a.dim());
    for (std::uint64_t k = mag;; ) {
      if (k & 1) result = result * base;
      k >>= 1;
      if (k == 0) break;
      base = base * base;
    }
    return result;
  }
  ResidueMatrix result = ResidueMatrix::identity(a.modulus(), a.dim());
  ResidueMatrix base = a;
  for (std::uint64_t k = static_cast<std::uint64_t>(e); k > 0;) {
    if (k & 1) result = result * base;
    k >>= 1;
    if (k > 0) base = base * base;
  }
  return result;
}

ResidueMatrix mat_inv(const ResidueMatrix& a) {
  const std::size_t n = a.dim();
  const auto& f = a.modulus();
  ResidueMatrix work = a;
  ResidueMatrix inv = ResidueMatrix::identity(f, n);
  auto swap_rows = [n](ResidueMatrix& m, std::size_t r1, std::size_t r2) {
    for (std::size_t j = 0; j < n; ++j) {
      const Residue t = m(r1, j);
      m.set(r1, j, m(r2, j));
      m.set(r2, j, t);
    }
  };
  for (std::size_t col = 0; col < n; ++col) {
    std::size_t pivot = col;
    while (pivot < n && work(pivot, col) == 0) ++pivot;
    if (pivot == n) throw SingularMatrix(a.determinant(), f.value());
    if (pivot != col) {
      swap_rows(work, pivot, col);
      swap_rows(inv, pivot, col);
    }
    const Residue p_inv = f.inv(work(col, col));
    for (std::size_t j = 0; j < n; ++j) {
      work.set(col, j, f.mul(work(col, j), p_inv));
      inv.set(col, j, f.mul(inv(col, j), p_inv));
    }
    for (std::size_t i = 0; i < n; ++i) {
      if (i == col) continue;
      const Residue factor = work(i, col);
      if (factor == 0) continue;
      for (std::size_t j = 0; j < n; ++j) {
        work.set(i, j, f.sub(work(i, j), f.mul(factor, work(col, j))));
        inv.set(i, j, f.sub(inv(i, j), f.mul(factor, inv(col, j))));
      }
    }
  }
  return inv;
}

RowVector row_times(std::span<const Residue> v, const ResidueMatrix& a) {
  if (v.size() != a.dim()) {
    throw ShapeMismatch("row vector of length " + std::to_string(v.size()) + " times " +
                        std::to_string(a.dim()) + "x" + std::to_string(a.dim()) + " matrix");
  }
  const auto& f = a.modulus();
  RowVector out(a.dim(), 0);
  for (std::size_t j = 0; j < a.dim(); ++j) {
    Residue acc = 0;
    for (std::size_t i = 0; i < a.dim(); ++i) acc = f.add(acc, f.mul(v[i] % f.value(), a(i, j)));
    out[j] = acc;
  }
  return out;
}

std::ostream& operator<<(std::ostream& os, const ResidueMatrix& m) {
  os << '[';
  for (std::size_t i = 0; i < m.dim(); ++i) {
    os << (i ? ",[" : "[");
    for (std::size_t j = 0; j < m.dim(); ++j) os << (j ? "," : "") << m(i, j);
    os << ']';
  }
  return os << "] mod " << m.modulus().value();
}

}  // namespace mpkc
