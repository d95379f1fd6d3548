#pragma once

#include <string>

#include "flagnest/errors.hpp"
#include "flagnest/exactpoly.hpp"

namespace flagnest {

/// Element re + i*im of Q(i).
struct GaussRational {
  Rational re;
  Rational im;

  GaussRational() = default;
  GaussRational(int r) : re(r), im(0) {}  // NOLINT: implicit from integer literals
  GaussRational(Rational r, Rational i) : re(std::move(r)), im(std::move(i)) {}

  static GaussRational i() { return {Rational(0), Rational(1)}; }
  GaussRational conj() const { return {re, -im}; }
  Rational norm() const { return re * re + im * im; }

  GaussRational operator-() const { return {-re, -im}; }
  GaussRational& operator+=(const GaussRational& o) {
    re += o.re;
    im += o.im;
    return *this;
  }
  GaussRational& operator-=(const GaussRational& o) {
    re -= o.re;
    im -= o.im;
    return *this;
  }
  GaussRational& operator*=(const GaussRational& o) {
    Rational r = re * o.re - im * o.im;
    Rational s = re * o.im + im * o.re;
    re = std::move(r);
    im = std::move(s);
    return *this;
  }
  GaussRational& operator/=(const GaussRational& o) {
    Rational n = o.norm();
    if (n == 0) throw PreconditionError("division by zero in Q(i)");
    *this *= o.conj();
    re /= n;
    im /= n;
    return *this;
  }
  friend GaussRational operator+(GaussRational a, const GaussRational& b) { return a += b; }
  friend GaussRational operator-(GaussRational a, const GaussRational& b) { return a -= b; }
  friend GaussRational operator*(GaussRational a, const GaussRational& b) { return a *= b; }
  friend GaussRational operator/(GaussRational a, const GaussRational& b) { return a /= b; }
  bool operator==(const GaussRational& o) const { return re == o.re && im == o.im; }
  bool operator!=(const GaussRational& o) const { return !(*this == o); }

  std::string to_string() const {
    if (im == 0) return flagnest::to_string(re);
    std::string s = re == 0 ? "" : flagnest::to_string(re) + (im < 0 ? "-" : "+");
    if (re == 0 && im < 0) s += "-";
    Rational a = abs(im);
    if (a != 1) s += flagnest::to_string(a);
    return s + "i";
  }
};

}  // namespace flagnest
