#pragma once

#include <cmath>
#include <complex>
#include <cstdint>
#include <gmpxx.h>
#include <stdexcept>
#include <string>

namespace entcert {

enum class ArithmeticMode { Float, Rational };

inline const char* to_string(ArithmeticMode m) {
  return m == ArithmeticMode::Float ? "float" : "rational";
}

using Complexd = std::complex<double>;

/// Complex number with exact Gaussian-rational components. Closed under
/// +, -, *, conjugation; (a+b)-b == a holds exactly for all values.
struct RationalComplex {
  mpq_class re;
  mpq_class im;

  RationalComplex() : re(0), im(0) {}
  RationalComplex(long r, long i = 0) : re(r), im(i) {}
  RationalComplex(mpq_class r, mpq_class i) : re(std::move(r)), im(std::move(i)) {}

  bool is_zero() const { return sgn(re) == 0 && sgn(im) == 0; }

  RationalComplex operator+(const RationalComplex& o) const { return {re + o.re, im + o.im}; }
  RationalComplex operator-(const RationalComplex& o) const { return {re - o.re, im - o.im}; }
  RationalComplex operator-() const { return {-re, -im}; }
  RationalComplex operator*(const RationalComplex& o) const {
    return {re * o.re - im * o.im, re * o.im + im * o.re};
  }
  RationalComplex& operator+=(const RationalComplex& o) {
    re += o.re;
    im += o.im;
    return *this;
  }
  RationalComplex& operator-=(const RationalComplex& o) {
    re -= o.re;
    im -= o.im;
    return *this;
  }
  RationalComplex& operator*=(const RationalComplex& o) { return *this = *this * o; }
  bool operator==(const RationalComplex& o) const { return re == o.re && im == o.im; }

  RationalComplex conj() const { return {re, -im}; }
  mpq_class norm_sq() const { return re * re + im * im; }
};

/// Uniform scalar interface used by the templated column builders; the same
/// code path runs in both arithmetic modes.
template <class S>
struct ScalarOps;

template <>
struct ScalarOps<Complexd> {
  static constexpr ArithmeticMode mode = ArithmeticMode::Float;
  static Complexd zero() { return {0.0, 0.0}; }
  static Complexd one() { return {1.0, 0.0}; }
  static Complexd from_int(long v) { return {static_cast<double>(v), 0.0}; }
  static Complexd conj(const Complexd& s) { return std::conj(s); }
  static double norm_sq(const Complexd& s) { return std::norm(s); }
  static bool is_zero(const Complexd& s) { return s.real() == 0.0 && s.imag() == 0.0; }
  static Complexd div_int(const Complexd& s, std::uint64_t d) {
    return s / static_cast<double>(d);
  }
  static double to_double_norm(const Complexd& s) { return std::abs(s); }
};

template <>
struct ScalarOps<RationalComplex> {
  static constexpr ArithmeticMode mode = ArithmeticMode::Rational;
  static RationalComplex zero() { return {}; }
  static RationalComplex one() { return {1, 0}; }
  static RationalComplex from_int(long v) { return {v, 0}; }
  static RationalComplex conj(const RationalComplex& s) { return s.conj(); }
  static mpq_class norm_sq(const RationalComplex& s) { return s.norm_sq(); }
  static bool is_zero(const RationalComplex& s) { return s.is_zero(); }
  static RationalComplex div_int(const RationalComplex& s, std::uint64_t d) {
    mpq_class q(1, static_cast<unsigned long>(d));
    return {s.re * q, s.im * q};
  }
  static double to_double_norm(const RationalComplex& s) {
    return std::hypot(s.re.get_d(), s.im.get_d());
  }
};

inline Complexd to_complexd(const RationalComplex& q) { return {q.re.get_d(), q.im.get_d()}; }

/// Parses "p/q" or "p" into an exact rational.
inline mpq_class parse_rational(const std::string& text) {
  mpq_class q;
  if (mpq_set_str(q.get_mpq_t(), text.c_str(), 10) != 0)
    throw std::invalid_argument("not a rational: '" + text + "'");
  if (sgn(mpq_class(q.get_den())) == 0)
    throw std::invalid_argument("zero denominator: '" + text + "'");
  q.canonicalize();
  return q;
}

/// Canonical "p/q" (or "p" for integers) text form.
inline std::string rational_to_string(const mpq_class& q) { return q.get_str(); }

}  // namespace entcert
