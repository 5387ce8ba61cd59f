#pragma once

#include <gmpxx.h>

#include <iosfwd>
#include <string>

namespace hca {

using BigInt = mpz_class;

/// Exact complex integer re + i*im with arbitrary-precision parts.
///
/// Gaussian integers form a commutative ring: addition, subtraction,
/// multiplication and conjugation are closed and exact, but there is no
/// general multiplicative inverse.
class GaussianInt {
 public:
  GaussianInt() = default;
  GaussianInt(long re, long im = 0) : re_(re), im_(im) {}
  GaussianInt(BigInt re, BigInt im) : re_(std::move(re)), im_(std::move(im)) {}
  explicit GaussianInt(BigInt re) : re_(std::move(re)), im_(0) {}

  static GaussianInt i() { return {0L, 1L}; }

  const BigInt& re() const { return re_; }
  const BigInt& im() const { return im_; }

  bool is_zero() const { return sgn(re_) == 0 && sgn(im_) == 0; }
  bool is_real() const { return sgn(im_) == 0; }

  GaussianInt conj() const { return {re_, -im_}; }
  /// i * z
  GaussianInt times_i() const { return {-im_, re_}; }
  /// -i * z
  GaussianInt times_minus_i() const { return {im_, -re_}; }
  /// |z|^2
  BigInt norm() const { return re_ * re_ + im_ * im_; }

  GaussianInt& operator+=(const GaussianInt& o) {
    re_ += o.re_;
    im_ += o.im_;
    return *this;
  }
  GaussianInt& operator-=(const GaussianInt& o) {
    re_ -= o.re_;
    im_ -= o.im_;
    return *this;
  }
  GaussianInt& operator*=(const GaussianInt& o);
  GaussianInt& operator*=(const BigInt& k) {
    re_ *= k;
    im_ *= k;
    return *this;
  }

  /// this += a * b without materialising the product.
  void add_product(const GaussianInt& a, const GaussianInt& b);
  /// this += conj(a) * b
  void add_conj_product(const GaussianInt& a, const GaussianInt& b);

  GaussianInt operator-() const { return {-re_, -im_}; }

  friend GaussianInt operator+(GaussianInt a, const GaussianInt& b) { return a += b; }
  friend GaussianInt operator-(GaussianInt a, const GaussianInt& b) { return a -= b; }
  friend GaussianInt operator*(const GaussianInt& a, const GaussianInt& b) {
    return {a.re_ * b.re_ - a.im_ * b.im_, a.re_ * b.im_ + a.im_ * b.re_};
  }
  friend GaussianInt operator*(GaussianInt a, const BigInt& k) { return a *= k; }
  friend GaussianInt operator*(const BigInt& k, GaussianInt a) { return a *= k; }

  friend bool operator==(const GaussianInt& a, const GaussianInt& b) {
    return a.re_ == b.re_ && a.im_ == b.im_;
  }
  friend bool operator!=(const GaussianInt& a, const GaussianInt& b) { return !(a == b); }

  /// "3-2i", "5", "-i", "0"
  std::string to_string() const;

 private:
  BigInt re_{0};
  BigInt im_{0};
};

inline GaussianInt conj(const GaussianInt& z) { return z.conj(); }

std::ostream& operator<<(std::ostream& os, const GaussianInt& z);

/// Divides exactly; throws PreconditionViolation if k does not divide both parts.
GaussianInt exact_divide(const GaussianInt& z, const BigInt& k);

/// Exact value twice/2 for a ring element type. Used where a formula carries
/// an explicit factor 1/2 and rounding is not acceptable.
template <class T>
class Halved {
 public:
  Halved() = default;
  static Halved from_twice(T twice) {
    Halved h;
    h.twice_ = std::move(twice);
    return h;
  }

  const T& twice() const { return twice_; }

  friend bool operator==(const Halved& a, const Halved& b) { return a.twice_ == b.twice_; }
  friend bool operator!=(const Halved& a, const Halved& b) { return !(a == b); }

 private:
  T twice_{};
};

using HalfInteger = Halved<BigInt>;
using HalfGaussian = Halved<GaussianInt>;

bool is_integral(const HalfInteger& h);
std::string to_string(const HalfInteger& h);
double to_double(const HalfInteger& h);
std::string to_string(const HalfGaussian& h);

}  // namespace hca
