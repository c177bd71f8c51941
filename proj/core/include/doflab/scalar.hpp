#pragma once

#include <gmpxx.h>

#include <complex>
#include <string>

#include "doflab/errors.hpp"

namespace doflab {

/// Arithmetic mode of a matrix/realization. Exact entries are complex numbers
/// with arbitrary-precision rational parts; floating entries are
/// std::complex<double>. The two never mix inside one object: the mode is a
/// template parameter everywhere, so mixed-mode arithmetic does not compile.
enum class Mode { exact, floating };

inline const char* to_string(Mode m) {
  return m == Mode::exact ? "exact" : "float";
}

using Rat = mpq_class;

/// Parses "p/q", "p" or a plain decimal like "0.25" into an exact rational.
Rat rat_from_string(const std::string& text);

inline std::string rat_to_string(const Rat& q) { return q.get_str(); }

/// num/den reduced to lowest terms.
inline Rat rat_of(long num, unsigned long den = 1) {
  Rat q(num, den);
  q.canonicalize();
  return q;
}

/// Complex number with exact rational real/imaginary parts. All arithmetic is
/// closed; nothing ever rounds.
struct QComplex {
  Rat re;
  Rat im;

  QComplex() = default;
  QComplex(Rat r, Rat i) : re(std::move(r)), im(std::move(i)) {}
  explicit QComplex(Rat r) : re(std::move(r)) {}
  explicit QComplex(long r) : re(r) {}

  bool is_zero() const { return sgn(re) == 0 && sgn(im) == 0; }
  QComplex conj() const { return {re, -im}; }
  Rat norm_sq() const { return re * re + im * im; }

  friend QComplex operator+(const QComplex& a, const QComplex& b) {
    return {a.re + b.re, a.im + b.im};
  }
  friend QComplex operator-(const QComplex& a, const QComplex& b) {
    return {a.re - b.re, a.im - b.im};
  }
  friend QComplex operator-(const QComplex& a) { return {-a.re, -a.im}; }
  friend QComplex operator*(const QComplex& a, const QComplex& b) {
    return {a.re * b.re - a.im * b.im, a.re * b.im + a.im * b.re};
  }
  friend QComplex operator/(const QComplex& a, const QComplex& b) {
    Rat d = b.norm_sq();
    if (sgn(d) == 0) throw InvalidInput("QComplex: division by zero");
    return {(a.re * b.re + a.im * b.im) / d, (a.im * b.re - a.re * b.im) / d};
  }
  QComplex& operator+=(const QComplex& o) { return *this = *this + o; }
  QComplex& operator-=(const QComplex& o) { return *this = *this - o; }
  QComplex& operator*=(const QComplex& o) { return *this = *this * o; }

  friend bool operator==(const QComplex& a, const QComplex& b) {
    return a.re == b.re && a.im == b.im;
  }
  friend bool operator!=(const QComplex& a, const QComplex& b) {
    return !(a == b);
  }
};

std::string to_string(const QComplex& v);

using CDouble = std::complex<double>;

template <class S>
struct ScalarOps;

template <>
struct ScalarOps<QComplex> {
  static constexpr Mode mode = Mode::exact;
  static QComplex zero() { return {}; }
  static QComplex one() { return QComplex(1); }
  static QComplex from_int(long v) { return QComplex(v); }
  static QComplex conj(const QComplex& v) { return v.conj(); }
  static bool is_zero(const QComplex& v) { return v.is_zero(); }
  // Exact pivots only need to be nonzero; all nonzero entries rank equal.
  static double pivot_weight(const QComplex& v) { return v.is_zero() ? 0.0 : 1.0; }
  static double abs_sq(const QComplex& v) { return v.norm_sq().get_d(); }
};

template <>
struct ScalarOps<CDouble> {
  static constexpr Mode mode = Mode::floating;
  static CDouble zero() { return {0.0, 0.0}; }
  static CDouble one() { return {1.0, 0.0}; }
  static CDouble from_int(long v) { return {static_cast<double>(v), 0.0}; }
  static CDouble conj(const CDouble& v) { return std::conj(v); }
  static bool is_zero(const CDouble& v) { return v == CDouble{0.0, 0.0}; }
  static double pivot_weight(const CDouble& v) { return std::norm(v); }
  static double abs_sq(const CDouble& v) { return std::norm(v); }
};

}  // namespace doflab
