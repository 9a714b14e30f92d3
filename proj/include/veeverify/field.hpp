#ifndef VEEVERIFY_FIELD_HPP
#define VEEVERIFY_FIELD_HPP

// Exact arithmetic in Q(sqrt(d)) for a single non-negative rational radicand d.

#include <boost/multiprecision/gmp.hpp>
#include <boost/multiprecision/mpfr.hpp>
#include <mpfr.h>

#include <cmath>
#include <optional>
#include <type_traits>
#include <ostream>
#include <string>
#include <utility>

#include "json.hpp"
#include "veeverify/error.hpp"

namespace veeverify {

using Int = boost::multiprecision::mpz_int;
using Rat = boost::multiprecision::mpq_rational;
using BigReal = boost::multiprecision::mpfr_float;

inline int sign(const Rat& r) { return r.sign(); }

/// Returns s >= 0 with s*s == r, when r is the square of a rational.
inline std::optional<Rat> rational_sqrt(const Rat& r) {
  if (r.sign() < 0) return std::nullopt;
  const Int num = boost::multiprecision::numerator(r);
  const Int den = boost::multiprecision::denominator(r);
  const Int sn = boost::multiprecision::sqrt(num);
  const Int sd = boost::multiprecision::sqrt(den);
  if (sn * sn != num || sd * sd != den) return std::nullopt;
  return Rat(sn, sd);
}

/// a + b*sqrt(d). Elements with b == 0 carry d == 0, so every rational has a
/// single representation; perfect-square radicands are folded into a.
class QElem {
 public:
  QElem() = default;
  QElem(long v) : a_(v) {}  // NOLINT(google-explicit-constructor)
  QElem(const Rat& a) : a_(a) {}  // NOLINT(google-explicit-constructor)
  QElem(const Rat& a, const Rat& b, const Rat& d) : a_(a), b_(b), d_(d) {
    if (d_.sign() < 0) throw Error(ErrorKind::InvalidRadicand, "radicand must be non-negative");
    if (b_.sign() == 0) {
      d_ = 0;
      return;
    }
    if (auto root = rational_sqrt(d_)) {
      a_ += b_ * *root;
      b_ = 0;
      d_ = 0;
    }
  }

  /// sqrt(d) itself.
  static QElem sqrt_of(const Rat& d) { return QElem(Rat(0), Rat(1), d); }

  const Rat& a() const { return a_; }
  const Rat& b() const { return b_; }
  const Rat& radicand() const { return d_; }
  bool is_rational() const { return b_.sign() == 0; }
  bool is_zero() const { return a_.sign() == 0 && b_.sign() == 0; }

  QElem conjugate() const { return raw(a_, -b_, d_); }

  /// a^2 - b^2 d, a rational.
  Rat norm() const { return a_ * a_ - b_ * b_ * d_; }

  QElem operator-() const { return raw(-a_, -b_, d_); }

  friend QElem operator+(const QElem& x, const QElem& y) {
    const Rat d = common_radicand(x, y);
    return raw(x.a_ + y.a_, x.b_ + y.b_, d);
  }
  friend QElem operator-(const QElem& x, const QElem& y) {
    const Rat d = common_radicand(x, y);
    return raw(x.a_ - y.a_, x.b_ - y.b_, d);
  }
  friend QElem operator*(const QElem& x, const QElem& y) {
    if (x.is_rational()) return raw(x.a_ * y.a_, x.a_ * y.b_, y.d_);
    if (y.is_rational()) return raw(y.a_ * x.a_, y.a_ * x.b_, x.d_);
    const Rat d = common_radicand(x, y);
    return raw(x.a_ * y.a_ + x.b_ * y.b_ * d, x.a_ * y.b_ + x.b_ * y.a_, d);
  }
  friend QElem operator/(const QElem& x, const QElem& y) {
    if (y.is_zero()) throw Error(ErrorKind::DivisionByZero, "division by zero in Q(sqrt d)");
    if (y.is_rational()) return raw(x.a_ / y.a_, x.b_ / y.a_, x.d_);
    const Rat n = y.norm();
    const QElem num = x * y.conjugate();
    return raw(num.a_ / n, num.b_ / n, num.d_);
  }

  QElem& operator+=(const QElem& y) { return *this = *this + y; }
  QElem& operator-=(const QElem& y) { return *this = *this - y; }
  QElem& operator*=(const QElem& y) { return *this = *this * y; }
  QElem& operator/=(const QElem& y) { return *this = *this / y; }

  friend bool operator==(const QElem& x, const QElem& y) {
    return x.a_ == y.a_ && x.b_ == y.b_ && x.d_ == y.d_;
  }

  friend std::ostream& operator<<(std::ostream& os, const QElem& x) {
    if (x.is_rational()) return os << x.a_;
    return os << x.a_ << (x.b_.sign() < 0 ? " - " : " + ") << abs(x.b_) << "*sqrt(" << x.d_ << ")";
  }

 private:
  // Skips the perfect-square test: d is already known to be a non-square.
  static QElem raw(Rat a, Rat b, Rat d) {
    QElem r;
    r.a_ = std::move(a);
    r.b_ = std::move(b);
    r.d_ = r.b_.sign() == 0 ? Rat(0) : std::move(d);
    return r;
  }

  static Rat common_radicand(const QElem& x, const QElem& y) {
    if (x.is_rational()) return y.d_;
    if (y.is_rational()) return x.d_;
    if (x.d_ != y.d_) {
      throw Error(ErrorKind::MixedRadicals,
                  "sqrt(" + x.d_.str() + ") and sqrt(" + y.d_.str() + ") in one expression");
    }
    return x.d_;
  }

  Rat a_{0};
  Rat b_{0};
  Rat d_{0};
};

inline bool is_zero(const QElem& x) { return x.is_zero(); }

/// Exact sign of a + b sqrt(d).
inline int q_sign(const QElem& x) {
  const int sa = x.a().sign();
  const int sb = x.b().sign();
  if (sb == 0) return sa;
  if (sa == 0 || sa == sb) return sb;
  // Opposite signs: the larger of a^2 and b^2 d wins.
  const Rat lhs = x.a() * x.a();
  const Rat rhs = x.b() * x.b() * x.radicand();
  if (lhs > rhs) return sa;
  if (lhs < rhs) return sb;
  return 0;
}

inline QElem q_abs(const QElem& x) { return q_sign(x) < 0 ? -x : x; }

namespace detail {

// Evaluates x into `out`, whose precision is already set.
inline void eval_mpfr(const QElem& x, mpfr_ptr out) {
  const mpfr_prec_t work = mpfr_get_prec(out) + 64;
  mpfr_t a, b, d;
  mpfr_inits2(work, a, b, d, static_cast<mpfr_ptr>(nullptr));
  mpfr_set_q(a, x.a().backend().data(), MPFR_RNDN);
  mpfr_set_q(b, x.b().backend().data(), MPFR_RNDN);
  mpfr_set_q(d, x.radicand().backend().data(), MPFR_RNDN);
  mpfr_sqrt(d, d, MPFR_RNDN);
  mpfr_fma(a, b, d, a, MPFR_RNDN);
  mpfr_set(out, a, MPFR_RNDN);
  mpfr_clears(a, b, d, static_cast<mpfr_ptr>(nullptr));
}

}  // namespace detail

/// Real embedding at `bits` of precision (within one ulp).
inline BigReal q_to_real(const QElem& x, unsigned bits) {
  BigReal r;
  mpfr_set_prec(r.backend().data(), static_cast<mpfr_prec_t>(bits));
  detail::eval_mpfr(x, r.backend().data());
  return r;
}

inline double to_double(const QElem& x) {
  mpfr_t t;
  mpfr_init2(t, 128);
  detail::eval_mpfr(x, t);
  const double r = mpfr_get_d(t, MPFR_RNDN);
  mpfr_clear(t);
  return r;
}

inline double to_double(const Rat& r) { return to_double(QElem(r)); }

/// Conversion into the working real type; BigReal uses the current default precision.
template <class Real>
Real to_real(const QElem& x) {
  if constexpr (std::is_same_v<Real, double>) {
    return to_double(x);
  } else {
    Real r;
    detail::eval_mpfr(x, r.backend().data());
    return r;
  }
}

template <class Real>
Real to_real(const Rat& x) {
  return to_real<Real>(QElem(x));
}

// JSON: Rat as {"num": "...", "den": "..."}, QElem as [Rat, Rat].

inline nlohmann::ordered_json rat_to_json(const Rat& r) {
  nlohmann::ordered_json j;
  j["num"] = boost::multiprecision::numerator(r).str();
  j["den"] = boost::multiprecision::denominator(r).str();
  return j;
}

inline Int parse_integer(const std::string& text) {
  std::size_t start = (!text.empty() && (text[0] == '-' || text[0] == '+')) ? 1 : 0;
  if (start == text.size()) throw Error(ErrorKind::InvalidInput, "empty integer literal");
  for (std::size_t i = start; i < text.size(); ++i) {
    if (text[i] < '0' || text[i] > '9') {
      throw Error(ErrorKind::InvalidInput, "not a decimal integer: '" + text + "'");
    }
  }
  return Int(text[0] == '+' ? text.substr(1) : text);
}

template <class Json>
Rat rat_from_json(const Json& j) {
  if (!j.is_object() || j.size() != 2 || !j.contains("num") || !j.contains("den") ||
      !j["num"].is_string() || !j["den"].is_string()) {
    throw Error(ErrorKind::InvalidInput, "rational must be {\"num\": string, \"den\": string}");
  }
  const Int num = parse_integer(j["num"].template get<std::string>());
  const Int den = parse_integer(j["den"].template get<std::string>());
  if (den.sign() <= 0) throw Error(ErrorKind::InvalidInput, "rational denominator must be positive");
  return Rat(num, den);
}

/// Parses "p", "-p/q" or a decimal like "0.25" into a Rat.
inline Rat parse_rat(const std::string& text) {
  if (auto slash = text.find('/'); slash != std::string::npos) {
    const Int den = parse_integer(text.substr(slash + 1));
    if (den.sign() == 0) throw Error(ErrorKind::InvalidInput, "zero denominator in '" + text + "'");
    return Rat(parse_integer(text.substr(0, slash)), den);
  }
  if (auto dot = text.find('.'); dot != std::string::npos) {
    const std::string frac = text.substr(dot + 1);
    std::string whole = text.substr(0, dot);
    if (whole.empty() || whole == "-" || whole == "+") whole += "0";
    Int scale = 1;
    for (std::size_t i = 0; i < frac.size(); ++i) scale *= 10;
    const Int w = parse_integer(whole);
    const Int f = frac.empty() ? Int(0) : parse_integer(frac);
    const bool negative = text[0] == '-';
    return Rat(w) + Rat(negative ? Int(-f) : f, scale);
  }
  return Rat(parse_integer(text));
}

inline nlohmann::ordered_json qelem_to_json(const QElem& x) {
  return nlohmann::ordered_json::array({rat_to_json(x.a()), rat_to_json(x.b())});
}

template <class Json>
QElem qelem_from_json(const Json& j, const Rat& radicand) {
  if (!j.is_array() || j.size() != 2) throw Error(ErrorKind::InvalidInput, "coordinate must be [Rat, Rat]");
  return QElem(rat_from_json(j[0]), rat_from_json(j[1]), radicand);
}

}  // namespace veeverify

#endif  // VEEVERIFY_FIELD_HPP
