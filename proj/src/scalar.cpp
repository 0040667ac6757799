#include "superbv/scalar.hpp"

#include <stdexcept>

namespace sbv {

GaussianRational::GaussianRational(mpq_class re, mpq_class im) : re_(std::move(re)), im_(std::move(im)) {
  re_.canonicalize();
  im_.canonicalize();
}

GaussianRational GaussianRational::ratio(long num, long den) {
  if (den == 0) throw std::domain_error("zero denominator");
  return GaussianRational(mpq_class(num, den));
}

GaussianRational GaussianRational::inverse() const {
  if (is_zero()) throw std::domain_error("division by zero");
  mpq_class norm = re_ * re_ + im_ * im_;
  return {re_ / norm, -im_ / norm};
}

GaussianRational& GaussianRational::operator+=(const GaussianRational& o) {
  re_ += o.re_;
  im_ += o.im_;
  return *this;
}

GaussianRational& GaussianRational::operator-=(const GaussianRational& o) {
  re_ -= o.re_;
  im_ -= o.im_;
  return *this;
}

GaussianRational& GaussianRational::operator*=(const GaussianRational& o) {
  if (sgn(im_) == 0 && sgn(o.im_) == 0) {
    re_ *= o.re_;
    return *this;
  }
  mpq_class r = re_ * o.re_ - im_ * o.im_;
  mpq_class i = re_ * o.im_ + im_ * o.re_;
  re_ = std::move(r);
  im_ = std::move(i);
  return *this;
}

std::string render(const GaussianRational& c) {
  if (c.is_real()) return c.re().get_str();
  if (sgn(c.re()) == 0) {
    if (c.im() == 1) return "i";
    if (c.im() == -1) return "-i";
    return c.im().get_str() + "*i";
  }
  std::string im;
  mpq_class a = abs(c.im());
  im = (a == 1) ? "i" : a.get_str() + "*i";
  return "(" + c.re().get_str() + (sgn(c.im()) < 0 ? " - " : " + ") + im + ")";
}

}  // namespace sbv
