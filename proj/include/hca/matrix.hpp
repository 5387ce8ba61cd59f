#pragma once

#include <cstddef>
#include <initializer_list>
#include <span>
#include <string>
#include <vector>

#include "hca/gaussian.hpp"

namespace hca {

/// State vector psi^alpha, alpha = 0..D-1.
class GIVector {
 public:
  GIVector() = default;
  explicit GIVector(std::size_t dim) : entries_(dim) {}
  explicit GIVector(std::vector<GaussianInt> entries) : entries_(std::move(entries)) {}
  GIVector(std::initializer_list<GaussianInt> entries) : entries_(entries) {}

  static GIVector basis(std::size_t dim, std::size_t k);

  std::size_t size() const { return entries_.size(); }
  const GaussianInt& operator[](std::size_t a) const { return entries_[a]; }
  GaussianInt& operator[](std::size_t a) { return entries_[a]; }

  auto begin() const { return entries_.begin(); }
  auto end() const { return entries_.end(); }
  const std::vector<GaussianInt>& entries() const { return entries_; }

  bool is_zero() const;
  GIVector conj() const;

  GIVector& operator+=(const GIVector& o);
  GIVector& operator-=(const GIVector& o);
  GIVector& operator*=(const GaussianInt& k);

  friend GIVector operator+(GIVector a, const GIVector& b) { return a += b; }
  friend GIVector operator-(GIVector a, const GIVector& b) { return a -= b; }
  friend GIVector operator*(const GaussianInt& k, GIVector v) { return v *= k; }
  friend bool operator==(const GIVector& a, const GIVector& b) = default;

  std::string to_string() const;

 private:
  std::vector<GaussianInt> entries_;
};

/// Sum_a conj(u^a) v^a
GaussianInt inner(const GIVector& u, const GIVector& v);

/// Kronecker product, row-major over the factor indices.
GIVector tensor_product(std::span<const GIVector> factors);

/// Dense square Gaussian-integer matrix, row-major.
class GIMatrix {
 public:
  GIMatrix() = default;
  explicit GIMatrix(std::size_t dim) : dim_(dim), entries_(dim * dim) {}
  /// Throws DimensionMismatch unless the rows form a square grid.
  GIMatrix(std::initializer_list<std::initializer_list<GaussianInt>> rows);
  static GIMatrix from_rows(const std::vector<std::vector<GaussianInt>>& rows);
  static GIMatrix identity(std::size_t dim);
  static GIMatrix zero(std::size_t dim) { return GIMatrix(dim); }

  std::size_t dim() const { return dim_; }
  const GaussianInt& operator()(std::size_t r, std::size_t c) const { return entries_[r * dim_ + c]; }
  GaussianInt& operator()(std::size_t r, std::size_t c) { return entries_[r * dim_ + c]; }

  bool is_zero() const;
  bool is_self_adjoint() const;
  GIMatrix adjoint() const;

  GIMatrix& operator+=(const GIMatrix& o);
  GIMatrix& operator-=(const GIMatrix& o);
  friend GIMatrix operator+(GIMatrix a, const GIMatrix& b) { return a += b; }
  friend GIMatrix operator-(GIMatrix a, const GIMatrix& b) { return a -= b; }
  friend GIMatrix operator*(const GIMatrix& a, const GIMatrix& b);
  friend GIMatrix operator*(const GaussianInt& k, GIMatrix m);
  friend bool operator==(const GIMatrix& a, const GIMatrix& b) = default;

  std::string to_string() const;

 private:
  std::size_t dim_ = 0;
  std::vector<GaussianInt> entries_;
};

GIMatrix power(const GIMatrix& m, unsigned k);
GIMatrix kronecker(const GIMatrix& a, const GIMatrix& b);

/// Exact matrix-vector product.
GIVector apply(const GIMatrix& m, const GIVector& v);

/// GH - HG.
GIMatrix commutator(const GIMatrix& g, const GIMatrix& h);

/// Self-adjoint Gaussian-integer matrix; construction validates entry(a,b) == conj(entry(b,a)).
class HermitianMatrix {
 public:
  explicit HermitianMatrix(GIMatrix m);
  HermitianMatrix(std::initializer_list<std::initializer_list<GaussianInt>> rows)
      : HermitianMatrix(GIMatrix(rows)) {}

  static HermitianMatrix identity(std::size_t dim) { return HermitianMatrix(GIMatrix::identity(dim)); }
  static HermitianMatrix zero(std::size_t dim) { return HermitianMatrix(GIMatrix::zero(dim)); }

  const GIMatrix& matrix() const { return m_; }
  std::size_t dim() const { return m_.dim(); }
  const GaussianInt& operator()(std::size_t r, std::size_t c) const { return m_(r, c); }

  friend bool operator==(const HermitianMatrix& a, const HermitianMatrix& b) = default;

 private:
  GIMatrix m_;
};

inline GIVector apply(const HermitianMatrix& h, const GIVector& v) { return apply(h.matrix(), v); }

/// Real-integer square matrix, row-major.
class IntMatrix {
 public:
  IntMatrix() = default;
  explicit IntMatrix(std::size_t dim) : dim_(dim), entries_(dim * dim) {}
  IntMatrix(std::initializer_list<std::initializer_list<long>> rows);

  std::size_t dim() const { return dim_; }
  const BigInt& operator()(std::size_t r, std::size_t c) const { return entries_[r * dim_ + c]; }
  BigInt& operator()(std::size_t r, std::size_t c) { return entries_[r * dim_ + c]; }

  bool is_zero() const;
  bool is_symmetric() const;
  bool is_antisymmetric() const;

  friend bool operator==(const IntMatrix& a, const IntMatrix& b) = default;

 private:
  std::size_t dim_ = 0;
  std::vector<BigInt> entries_;
};

using IntVector = std::vector<BigInt>;

IntVector apply(const IntMatrix& m, const IntVector& v);

/// H = symmetric + i * antisymmetric with both parts real-integer valued.
struct SplitHamiltonian {
  IntMatrix symmetric;
  IntMatrix antisymmetric;
};

SplitHamiltonian split_sym_antisym(const HermitianMatrix& h);

/// symmetric + i * antisymmetric
GIMatrix recombine(const SplitHamiltonian& s);

}  // namespace hca
