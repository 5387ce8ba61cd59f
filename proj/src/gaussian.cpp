#include "hca/gaussian.hpp"

#include <ostream>

#include "hca/errors.hpp"

namespace hca {

GaussianInt& GaussianInt::operator*=(const GaussianInt& o) {
  BigInt re = re_ * o.re_ - im_ * o.im_;
  im_ = re_ * o.im_ + im_ * o.re_;
  re_ = std::move(re);
  return *this;
}

void GaussianInt::add_product(const GaussianInt& a, const GaussianInt& b) {
  mpz_addmul(re_.get_mpz_t(), a.re_.get_mpz_t(), b.re_.get_mpz_t());
  mpz_submul(re_.get_mpz_t(), a.im_.get_mpz_t(), b.im_.get_mpz_t());
  mpz_addmul(im_.get_mpz_t(), a.re_.get_mpz_t(), b.im_.get_mpz_t());
  mpz_addmul(im_.get_mpz_t(), a.im_.get_mpz_t(), b.re_.get_mpz_t());
}

void GaussianInt::add_conj_product(const GaussianInt& a, const GaussianInt& b) {
  // (ar - i ai)(br + i bi) = ar br + ai bi + i (ar bi - ai br)
  mpz_addmul(re_.get_mpz_t(), a.re_.get_mpz_t(), b.re_.get_mpz_t());
  mpz_addmul(re_.get_mpz_t(), a.im_.get_mpz_t(), b.im_.get_mpz_t());
  mpz_addmul(im_.get_mpz_t(), a.re_.get_mpz_t(), b.im_.get_mpz_t());
  mpz_submul(im_.get_mpz_t(), a.im_.get_mpz_t(), b.re_.get_mpz_t());
}

std::string GaussianInt::to_string() const {
  if (sgn(im_) == 0) return re_.get_str();
  std::string imag;
  if (im_ == 1) {
    imag = "i";
  } else if (im_ == -1) {
    imag = "-i";
  } else {
    imag = im_.get_str() + "i";
  }
  if (sgn(re_) == 0) return imag;
  if (sgn(im_) > 0) return re_.get_str() + "+" + imag;
  return re_.get_str() + imag;
}

std::ostream& operator<<(std::ostream& os, const GaussianInt& z) { return os << z.to_string(); }

GaussianInt exact_divide(const GaussianInt& z, const BigInt& k) {
  if (sgn(k) == 0) throw PreconditionViolation("exact_divide: division by zero");
  if (!mpz_divisible_p(z.re().get_mpz_t(), k.get_mpz_t()) ||
      !mpz_divisible_p(z.im().get_mpz_t(), k.get_mpz_t())) {
    throw PreconditionViolation("exact_divide: " + k.get_str() + " does not divide " +
                                z.to_string());
  }
  BigInt re, im;
  mpz_divexact(re.get_mpz_t(), z.re().get_mpz_t(), k.get_mpz_t());
  mpz_divexact(im.get_mpz_t(), z.im().get_mpz_t(), k.get_mpz_t());
  return {std::move(re), std::move(im)};
}

bool is_integral(const HalfInteger& h) { return mpz_even_p(h.twice().get_mpz_t()) != 0; }

std::string to_string(const HalfInteger& h) {
  if (is_integral(h)) {
    BigInt q = h.twice() / 2;
    return q.get_str();
  }
  return h.twice().get_str() + "/2";
}

double to_double(const HalfInteger& h) { return h.twice().get_d() / 2.0; }

std::string to_string(const HalfGaussian& h) {
  const GaussianInt& t = h.twice();
  if (mpz_even_p(t.re().get_mpz_t()) && mpz_even_p(t.im().get_mpz_t())) {
    return exact_divide(t, 2).to_string();
  }
  return "(" + t.to_string() + ")/2";
}

}  // namespace hca
