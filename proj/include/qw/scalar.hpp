#pragma once

#include <boost/multiprecision/gmp.hpp>

#include <concepts>
#include <cstdint>
#include <map>
#include <memory>
#include <ostream>
#include <string>
#include <variant>
#include <vector>

#include "qw/errors.hpp"

namespace qw {

using Rational = boost::multiprecision::number<boost::multiprecision::gmp_rational, boost::multiprecision::et_off>;
using Integer = boost::multiprecision::number<boost::multiprecision::gmp_int, boost::multiprecision::et_off>;

/// Parses "n" or "n/d" into a canonical rational.
Rational parse_rational(const std::string& text);
std::string to_string(const Rational& x);

inline int sign(const Rational& x) { return x.sign(); }
inline bool is_zero(const Rational& x) { return x.is_zero(); }
inline bool invertible(const Rational& x) { return !x.is_zero(); }
inline const Rational& base_value(const Rational& x) { return x; }

/// Squarefree part and square factor: m = k^2 * squarefree(m), for m > 0.
std::int64_t squarefree_part(std::int64_t m, std::int64_t* square_root_factor = nullptr);

/// a + b*sqrt(m), with m squarefree. m == 1 means the number is rational and
/// b is zero. Arithmetic between two numbers over different fields throws
/// MixedExtension unless one of them is rational.
class QuadraticNumber {
 public:
  QuadraticNumber() = default;
  QuadraticNumber(int a) : a_(a) {}  // NOLINT
  QuadraticNumber(const Rational& a) : a_(a) {}  // NOLINT
  QuadraticNumber(const Rational& a, const Rational& b, std::int64_t m);

  static QuadraticNumber sqrt(std::int64_t m);

  const Rational& rational_part() const { return a_; }
  const Rational& radical_coefficient() const { return b_; }
  std::int64_t radicand() const { return m_; }
  bool is_rational() const { return b_.is_zero(); }

  QuadraticNumber conjugate() const { return QuadraticNumber(a_, -b_, m_); }
  Rational norm() const { return a_ * a_ - b_ * b_ * m_; }

  friend QuadraticNumber operator+(const QuadraticNumber& x, const QuadraticNumber& y);
  friend QuadraticNumber operator-(const QuadraticNumber& x, const QuadraticNumber& y);
  friend QuadraticNumber operator*(const QuadraticNumber& x, const QuadraticNumber& y);
  friend QuadraticNumber operator/(const QuadraticNumber& x, const QuadraticNumber& y);
  QuadraticNumber operator-() const { return QuadraticNumber(-a_, -b_, m_); }
  QuadraticNumber& operator+=(const QuadraticNumber& y) { return *this = *this + y; }
  QuadraticNumber& operator-=(const QuadraticNumber& y) { return *this = *this - y; }
  QuadraticNumber& operator*=(const QuadraticNumber& y) { return *this = *this * y; }
  QuadraticNumber& operator/=(const QuadraticNumber& y) { return *this = *this / y; }
  friend bool operator==(const QuadraticNumber& x, const QuadraticNumber& y) {
    return x.a_ == y.a_ && x.b_ == y.b_ && (x.b_.is_zero() || x.m_ == y.m_);
  }

  double to_double() const;

 private:
  Rational a_{0};
  Rational b_{0};
  std::int64_t m_ = 1;
};

int sign(const QuadraticNumber& x);
inline bool is_zero(const QuadraticNumber& x) { return x.rational_part().is_zero() && x.is_rational(); }
inline bool invertible(const QuadraticNumber& x) { return !is_zero(x); }
std::string to_string(const QuadraticNumber& x);
QuadraticNumber parse_quadratic(const std::string& text);
std::ostream& operator<<(std::ostream& os, const QuadraticNumber& x);

struct SignCertificate {
  int sign = 0;
  bool exact = false;  // decided symbolically rather than by enclosure
  Rational lower;
  Rational upper;
  int precision_bits = 0;
  std::string expression;
};

/// Finite sum of c_m * sqrt(m) over distinct squarefree m. Closed under
/// multiplication, so it holds any polynomial expression in quadratic numbers
/// over different fields.
class RadicalSum {
 public:
  RadicalSum() = default;
  RadicalSum(int c) : RadicalSum(Rational(c)) {}  // NOLINT
  RadicalSum(const Rational& c);                   // NOLINT
  RadicalSum(const QuadraticNumber& x);            // NOLINT

  const std::map<std::int64_t, Rational>& terms() const { return terms_; }

  friend RadicalSum operator+(const RadicalSum& x, const RadicalSum& y);
  friend RadicalSum operator-(const RadicalSum& x, const RadicalSum& y);
  friend RadicalSum operator*(const RadicalSum& x, const RadicalSum& y);
  RadicalSum operator-() const;
  friend bool operator==(const RadicalSum& x, const RadicalSum& y) { return x.terms_ == y.terms_; }

 private:
  void add_term(std::int64_t m, const Rational& c);
  std::map<std::int64_t, Rational> terms_;
};

std::string to_string(const RadicalSum& x);

/// Certified sign. Zero is detected exactly from linear independence of
/// square roots of distinct squarefree integers; nonzero values are enclosed
/// in dyadic intervals of doubling precision until the sign is separated.
SignCertificate certify_sign(const RadicalSum& x, int max_bits = 4096);
inline SignCertificate certify_sign(const QuadraticNumber& x) { return certify_sign(RadicalSum(x)); }

/// Dual number value + derivative*eps with eps^2 = 0. Nesting gives mixed
/// second derivatives.
template <class T>
class Jet {
 public:
  T value{0};
  T derivative{0};

  Jet() = default;
  Jet(int c) : value(c), derivative(0) {}  // NOLINT
  template <class U>
    requires(!std::same_as<U, Jet> && !std::same_as<U, int> && std::constructible_from<T, const U&>)
  Jet(const U& c) : value(c), derivative(0) {}  // NOLINT
  Jet(const T& v, const T& d) : value(v), derivative(d) {}

  static Jet variable(const T& v) { return Jet(v, T(1)); }

  friend Jet operator+(const Jet& x, const Jet& y) { return Jet(x.value + y.value, x.derivative + y.derivative); }
  friend Jet operator-(const Jet& x, const Jet& y) { return Jet(x.value - y.value, x.derivative - y.derivative); }
  friend Jet operator*(const Jet& x, const Jet& y) {
    return Jet(x.value * y.value, x.value * y.derivative + x.derivative * y.value);
  }
  friend Jet operator/(const Jet& x, const Jet& y) {
    if (!invertible(y.value)) throw MathError(ErrorCode::DivisionByZero, "jet with non-invertible value");
    T inv = T(1) / y.value;
    return Jet(x.value * inv, (x.derivative * y.value - x.value * y.derivative) * inv * inv);
  }
  Jet operator-() const { return Jet(-value, -derivative); }
  Jet& operator+=(const Jet& y) { return *this = *this + y; }
  Jet& operator-=(const Jet& y) { return *this = *this - y; }
  Jet& operator*=(const Jet& y) { return *this = *this * y; }
  Jet& operator/=(const Jet& y) { return *this = *this / y; }
  friend bool operator==(const Jet& x, const Jet& y) { return x.value == y.value && x.derivative == y.derivative; }
};

template <class T>
bool invertible(const Jet<T>& x) {
  return invertible(x.value);
}
template <class T>
bool is_zero(const Jet<T>& x) {
  return is_zero(x.value) && is_zero(x.derivative);
}
template <class T>
const Rational& base_value(const Jet<T>& x) {
  return base_value(x.value);
}

template <class T>
struct jet_depth : std::integral_constant<int, 0> {};
template <class T>
struct jet_depth<Jet<T>> : std::integral_constant<int, 1 + jet_depth<T>::value> {};
template <class T>
inline constexpr int jet_depth_v = jet_depth<T>::value;

template <class T>
T power(const T& x, int k) {
  if (k < 0) return T(1) / power(x, -k);
  T r(1);
  for (int i = 0; i < k; ++i) r = r * x;
  return r;
}

/// Symbolic rational expression in named variables, evaluated over any scalar
/// type (Rational, Jet<Rational>, ...).
class Expression {
 public:
  enum class Op { Constant, Variable, Add, Sub, Mul, Div, Neg, Pow };

  Expression(int c) : Expression(Rational(c)) {}  // NOLINT
  Expression(const Rational& c);                   // NOLINT
  static Expression variable(const std::string& name);

  Op op() const { return node_->op; }
  std::string to_string() const;

  friend Expression operator+(const Expression& x, const Expression& y) { return make(Op::Add, {x, y}); }
  friend Expression operator-(const Expression& x, const Expression& y) { return make(Op::Sub, {x, y}); }
  friend Expression operator*(const Expression& x, const Expression& y) { return make(Op::Mul, {x, y}); }
  friend Expression operator/(const Expression& x, const Expression& y) { return make(Op::Div, {x, y}); }
  Expression operator-() const { return make(Op::Neg, {*this}); }
  Expression pow(int k) const;

  template <class T>
  T evaluate(const std::map<std::string, T>& bindings) const;

 private:
  struct Node {
    Op op;
    Rational constant;
    std::string name;
    int exponent = 0;
    std::vector<Expression> args;
  };
  explicit Expression(std::shared_ptr<const Node> node) : node_(std::move(node)) {}
  static Expression make(Op op, std::vector<Expression> args);
  std::shared_ptr<const Node> node_;
};

template <class T>
T Expression::evaluate(const std::map<std::string, T>& bindings) const {
  const Node& n = *node_;
  switch (n.op) {
    case Op::Constant: return T(n.constant);
    case Op::Variable: {
      auto it = bindings.find(n.name);
      if (it == bindings.end()) throw MathError(ErrorCode::InvalidArgument, "unbound variable " + n.name);
      return it->second;
    }
    case Op::Add: return n.args[0].evaluate(bindings) + n.args[1].evaluate(bindings);
    case Op::Sub: return n.args[0].evaluate(bindings) - n.args[1].evaluate(bindings);
    case Op::Mul: return n.args[0].evaluate(bindings) * n.args[1].evaluate(bindings);
    case Op::Neg: return -n.args[0].evaluate(bindings);
    case Op::Div: {
      T d = n.args[1].evaluate(bindings);
      if (!invertible(d)) throw MathError(ErrorCode::DivisionByZero, n.args[1].to_string());
      return n.args[0].evaluate(bindings) / d;
    }
    case Op::Pow: {
      T b = n.args[0].evaluate(bindings);
      if (n.exponent < 0 && !invertible(b)) throw MathError(ErrorCode::DivisionByZero, n.args[0].to_string());
      return power(b, n.exponent);
    }
  }
  return T(0);
}

/// Value and first derivative with respect to `variable` at the point given
/// by `bindings`.
Jet<Rational> jet_eval(const Expression& e, const std::map<std::string, Rational>& bindings,
                       const std::string& variable);

}  // namespace qw
