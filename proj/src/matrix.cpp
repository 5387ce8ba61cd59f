#include "hca/matrix.hpp"

#include <algorithm>

#include "hca/errors.hpp"

namespace hca {

namespace {

void require_same_size(std::size_t a, std::size_t b, const char* op) {
  if (a != b) {
    throw DimensionMismatch(std::string(op) + ": dimension " + std::to_string(a) + " vs " +
                            std::to_string(b));
  }
}

}  // namespace

GIVector GIVector::basis(std::size_t dim, std::size_t k) {
  if (k >= dim) throw PreconditionViolation("GIVector::basis: index out of range");
  GIVector v(dim);
  v[k] = 1;
  return v;
}

bool GIVector::is_zero() const {
  return std::all_of(entries_.begin(), entries_.end(), [](const GaussianInt& z) { return z.is_zero(); });
}

GIVector GIVector::conj() const {
  GIVector out(size());
  for (std::size_t a = 0; a < size(); ++a) out[a] = entries_[a].conj();
  return out;
}

GIVector& GIVector::operator+=(const GIVector& o) {
  require_same_size(size(), o.size(), "vector add");
  for (std::size_t a = 0; a < size(); ++a) entries_[a] += o[a];
  return *this;
}

GIVector& GIVector::operator-=(const GIVector& o) {
  require_same_size(size(), o.size(), "vector sub");
  for (std::size_t a = 0; a < size(); ++a) entries_[a] -= o[a];
  return *this;
}

GIVector& GIVector::operator*=(const GaussianInt& k) {
  for (auto& z : entries_) z *= k;
  return *this;
}

std::string GIVector::to_string() const {
  std::string s = "(";
  for (std::size_t a = 0; a < size(); ++a) {
    if (a) s += ", ";
    s += entries_[a].to_string();
  }
  return s + ")";
}

GaussianInt inner(const GIVector& u, const GIVector& v) {
  require_same_size(u.size(), v.size(), "inner");
  GaussianInt acc;
  for (std::size_t a = 0; a < u.size(); ++a) acc.add_conj_product(u[a], v[a]);
  return acc;
}

GIVector tensor_product(std::span<const GIVector> factors) {
  if (factors.empty()) throw PreconditionViolation("tensor_product: no factors");
  std::vector<GaussianInt> acc = factors.front().entries();
  for (std::size_t k = 1; k < factors.size(); ++k) {
    const GIVector& f = factors[k];
    std::vector<GaussianInt> next;
    next.reserve(acc.size() * f.size());
    for (const auto& a : acc) {
      for (const auto& b : f) next.push_back(a * b);
    }
    acc = std::move(next);
  }
  return GIVector(std::move(acc));
}

GIMatrix::GIMatrix(std::initializer_list<std::initializer_list<GaussianInt>> rows) {
  std::vector<std::vector<GaussianInt>> r;
  for (const auto& row : rows) r.emplace_back(row);
  *this = from_rows(r);
}

GIMatrix GIMatrix::from_rows(const std::vector<std::vector<GaussianInt>>& rows) {
  GIMatrix m(rows.size());
  for (std::size_t r = 0; r < rows.size(); ++r) {
    if (rows[r].size() != rows.size()) {
      throw DimensionMismatch("matrix row " + std::to_string(r) + " has " +
                              std::to_string(rows[r].size()) + " entries, expected " +
                              std::to_string(rows.size()));
    }
    for (std::size_t c = 0; c < rows.size(); ++c) m(r, c) = rows[r][c];
  }
  return m;
}

GIMatrix GIMatrix::identity(std::size_t dim) {
  GIMatrix m(dim);
  for (std::size_t a = 0; a < dim; ++a) m(a, a) = 1;
  return m;
}

bool GIMatrix::is_zero() const {
  return std::all_of(entries_.begin(), entries_.end(), [](const GaussianInt& z) { return z.is_zero(); });
}

bool GIMatrix::is_self_adjoint() const {
  for (std::size_t r = 0; r < dim_; ++r) {
    for (std::size_t c = r; c < dim_; ++c) {
      if ((*this)(r, c) != (*this)(c, r).conj()) return false;
    }
  }
  return true;
}

GIMatrix GIMatrix::adjoint() const {
  GIMatrix out(dim_);
  for (std::size_t r = 0; r < dim_; ++r) {
    for (std::size_t c = 0; c < dim_; ++c) out(r, c) = (*this)(c, r).conj();
  }
  return out;
}

GIMatrix& GIMatrix::operator+=(const GIMatrix& o) {
  require_same_size(dim_, o.dim_, "matrix add");
  for (std::size_t k = 0; k < entries_.size(); ++k) entries_[k] += o.entries_[k];
  return *this;
}

GIMatrix& GIMatrix::operator-=(const GIMatrix& o) {
  require_same_size(dim_, o.dim_, "matrix sub");
  for (std::size_t k = 0; k < entries_.size(); ++k) entries_[k] -= o.entries_[k];
  return *this;
}

GIMatrix operator*(const GIMatrix& a, const GIMatrix& b) {
  require_same_size(a.dim_, b.dim_, "matrix product");
  const std::size_t d = a.dim_;
  GIMatrix out(d);
  for (std::size_t r = 0; r < d; ++r) {
    for (std::size_t k = 0; k < d; ++k) {
      const GaussianInt& ark = a(r, k);
      if (ark.is_zero()) continue;
      for (std::size_t c = 0; c < d; ++c) out(r, c).add_product(ark, b(k, c));
    }
  }
  return out;
}

GIMatrix operator*(const GaussianInt& k, GIMatrix m) {
  for (auto& z : m.entries_) z *= k;
  return m;
}

std::string GIMatrix::to_string() const {
  std::string s = "[";
  for (std::size_t r = 0; r < dim_; ++r) {
    if (r) s += ", ";
    s += "[";
    for (std::size_t c = 0; c < dim_; ++c) {
      if (c) s += ", ";
      s += (*this)(r, c).to_string();
    }
    s += "]";
  }
  return s + "]";
}

GIMatrix power(const GIMatrix& m, unsigned k) {
  GIMatrix out = GIMatrix::identity(m.dim());
  for (unsigned j = 0; j < k; ++j) out = out * m;
  return out;
}

GIMatrix kronecker(const GIMatrix& a, const GIMatrix& b) {
  const std::size_t da = a.dim(), db = b.dim();
  GIMatrix out(da * db);
  for (std::size_t r1 = 0; r1 < da; ++r1) {
    for (std::size_t c1 = 0; c1 < da; ++c1) {
      if (a(r1, c1).is_zero()) continue;
      for (std::size_t r2 = 0; r2 < db; ++r2) {
        for (std::size_t c2 = 0; c2 < db; ++c2) out(r1 * db + r2, c1 * db + c2) = a(r1, c1) * b(r2, c2);
      }
    }
  }
  return out;
}

GIVector apply(const GIMatrix& m, const GIVector& v) {
  require_same_size(m.dim(), v.size(), "apply");
  const std::size_t d = m.dim();
  GIVector out(d);
  for (std::size_t r = 0; r < d; ++r) {
    GaussianInt acc;
    for (std::size_t c = 0; c < d; ++c) acc.add_product(m(r, c), v[c]);
    out[r] = std::move(acc);
  }
  return out;
}

GIMatrix commutator(const GIMatrix& g, const GIMatrix& h) {
  require_same_size(g.dim(), h.dim(), "commutator");
  return g * h - h * g;
}

HermitianMatrix::HermitianMatrix(GIMatrix m) : m_(std::move(m)) {
  for (std::size_t r = 0; r < m_.dim(); ++r) {
    for (std::size_t c = r; c < m_.dim(); ++c) {
      if (m_(r, c) != m_(c, r).conj()) {
        throw PreconditionViolation("matrix is not self-adjoint: entry (" + std::to_string(r) + "," +
                                    std::to_string(c) + ") = " + m_(r, c).to_string() +
                                    " but conj of entry (" + std::to_string(c) + "," +
                                    std::to_string(r) + ") = " + m_(c, r).conj().to_string());
      }
    }
  }
}

IntMatrix::IntMatrix(std::initializer_list<std::initializer_list<long>> rows) : IntMatrix(rows.size()) {
  std::size_t r = 0;
  for (const auto& row : rows) {
    if (row.size() != dim_) throw DimensionMismatch("IntMatrix: ragged rows");
    std::size_t c = 0;
    for (long v : row) (*this)(r, c++) = v;
    ++r;
  }
}

bool IntMatrix::is_zero() const {
  return std::all_of(entries_.begin(), entries_.end(), [](const BigInt& z) { return sgn(z) == 0; });
}

bool IntMatrix::is_symmetric() const {
  for (std::size_t r = 0; r < dim_; ++r) {
    for (std::size_t c = r + 1; c < dim_; ++c) {
      if ((*this)(r, c) != (*this)(c, r)) return false;
    }
  }
  return true;
}

bool IntMatrix::is_antisymmetric() const {
  for (std::size_t r = 0; r < dim_; ++r) {
    for (std::size_t c = r; c < dim_; ++c) {
      if ((*this)(r, c) != -(*this)(c, r)) return false;
    }
  }
  return true;
}

IntVector apply(const IntMatrix& m, const IntVector& v) {
  require_same_size(m.dim(), v.size(), "apply");
  IntVector out(m.dim());
  for (std::size_t r = 0; r < m.dim(); ++r) {
    for (std::size_t c = 0; c < m.dim(); ++c) {
      mpz_addmul(out[r].get_mpz_t(), m(r, c).get_mpz_t(), v[c].get_mpz_t());
    }
  }
  return out;
}

SplitHamiltonian split_sym_antisym(const HermitianMatrix& h) {
  const std::size_t d = h.dim();
  SplitHamiltonian s{IntMatrix(d), IntMatrix(d)};
  for (std::size_t r = 0; r < d; ++r) {
    for (std::size_t c = 0; c < d; ++c) {
      s.symmetric(r, c) = h(r, c).re();
      s.antisymmetric(r, c) = h(r, c).im();
    }
  }
  return s;
}

GIMatrix recombine(const SplitHamiltonian& s) {
  require_same_size(s.symmetric.dim(), s.antisymmetric.dim(), "recombine");
  const std::size_t d = s.symmetric.dim();
  GIMatrix m(d);
  for (std::size_t r = 0; r < d; ++r) {
    for (std::size_t c = 0; c < d; ++c) m(r, c) = GaussianInt(s.symmetric(r, c), s.antisymmetric(r, c));
  }
  return m;
}

}  // namespace hca
