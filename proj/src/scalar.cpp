#include "qw/scalar.hpp"

#include <cctype>
#include <cmath>
#include <sstream>

namespace qw {

namespace {

Integer parse_integer(const std::string& text) {
  std::size_t i = 0;
  if (i < text.size() && (text[i] == '-' || text[i] == '+')) ++i;
  if (i == text.size()) throw MathError(ErrorCode::InvalidArgument, "malformed integer '" + text + "'");
  for (std::size_t j = i; j < text.size(); ++j) {
    if (!std::isdigit(static_cast<unsigned char>(text[j])))
      throw MathError(ErrorCode::InvalidArgument, "malformed integer '" + text + "'");
  }
  return Integer(text[0] == '+' ? text.substr(1) : text);
}

std::string trim(const std::string& s) {
  std::size_t b = s.find_first_not_of(" \t");
  if (b == std::string::npos) return "";
  std::size_t e = s.find_last_not_of(" \t");
  return s.substr(b, e - b + 1);
}

}  // namespace

Rational parse_rational(const std::string& raw) {
  std::string text = trim(raw);
  std::size_t slash = text.find('/');
  if (slash == std::string::npos) return Rational(parse_integer(text));
  Integer num = parse_integer(text.substr(0, slash));
  Integer den = parse_integer(text.substr(slash + 1));
  if (den == 0) throw MathError(ErrorCode::DivisionByZero, "rational '" + text + "' has zero denominator");
  return Rational(num) / Rational(den);
}

std::string to_string(const Rational& x) { return x.str(); }

std::int64_t squarefree_part(std::int64_t m, std::int64_t* square_root_factor) {
  if (m <= 0) throw MathError(ErrorCode::InvalidArgument, "radicand must be positive");
  std::int64_t k = 1;
  std::int64_t rest = m;
  for (std::int64_t p = 2; p * p <= rest; ++p) {
    while (rest % (p * p) == 0) {
      rest /= p * p;
      k *= p;
    }
  }
  if (square_root_factor != nullptr) *square_root_factor = k;
  return rest;
}

// ---------------------------------------------------------------- quadratic

QuadraticNumber::QuadraticNumber(const Rational& a, const Rational& b, std::int64_t m) : a_(a), b_(b), m_(1) {
  if (b.is_zero()) return;
  std::int64_t k = 1;
  std::int64_t sf = squarefree_part(m, &k);
  if (sf == 1) {
    a_ += b * k;
    b_ = 0;
  } else {
    b_ = b * k;
    m_ = sf;
  }
}

QuadraticNumber QuadraticNumber::sqrt(std::int64_t m) { return QuadraticNumber(0, 1, m); }

namespace {

std::int64_t common_radicand(const QuadraticNumber& x, const QuadraticNumber& y) {
  if (x.is_rational()) return y.radicand();
  if (y.is_rational()) return x.radicand();
  if (x.radicand() != y.radicand()) {
    throw MathError(ErrorCode::MixedExtension,
                    "sqrt(" + std::to_string(x.radicand()) + ") with sqrt(" + std::to_string(y.radicand()) + ")");
  }
  return x.radicand();
}

}  // namespace

QuadraticNumber operator+(const QuadraticNumber& x, const QuadraticNumber& y) {
  std::int64_t m = common_radicand(x, y);
  return QuadraticNumber(x.a_ + y.a_, x.b_ + y.b_, m);
}

QuadraticNumber operator-(const QuadraticNumber& x, const QuadraticNumber& y) {
  std::int64_t m = common_radicand(x, y);
  return QuadraticNumber(x.a_ - y.a_, x.b_ - y.b_, m);
}

QuadraticNumber operator*(const QuadraticNumber& x, const QuadraticNumber& y) {
  std::int64_t m = common_radicand(x, y);
  return QuadraticNumber(x.a_ * y.a_ + x.b_ * y.b_ * m, x.a_ * y.b_ + x.b_ * y.a_, m);
}

QuadraticNumber operator/(const QuadraticNumber& x, const QuadraticNumber& y) {
  common_radicand(x, y);
  Rational n = y.norm();
  if (n.is_zero()) throw MathError(ErrorCode::DivisionByZero, "division by " + to_string(y));
  QuadraticNumber num = x * y.conjugate();
  return QuadraticNumber(num.a_ / n, num.b_ / n, num.m_);
}

double QuadraticNumber::to_double() const {
  return a_.convert_to<double>() + b_.convert_to<double>() * std::sqrt(static_cast<double>(m_));
}

int sign(const QuadraticNumber& x) { return certify_sign(RadicalSum(x)).sign; }

std::string to_string(const QuadraticNumber& x) {
  if (x.is_rational()) return to_string(x.rational_part());
  std::string out = to_string(x.rational_part());
  const Rational& b = x.radical_coefficient();
  out += b.sign() < 0 ? "-" : "+";
  out += to_string(abs(b)) + "*sqrt(" + std::to_string(x.radicand()) + ")";
  return out;
}

QuadraticNumber parse_quadratic(const std::string& raw) {
  std::string text = trim(raw);
  std::size_t s = text.find("*sqrt(");
  if (s == std::string::npos) return QuadraticNumber(parse_rational(text));
  if (text.back() != ')') throw MathError(ErrorCode::InvalidArgument, "malformed quadratic '" + text + "'");
  std::int64_t m = std::stoll(text.substr(s + 6, text.size() - s - 7));
  std::string head = text.substr(0, s);
  // split head into a and signed b at the last sign that is not leading
  std::size_t split = std::string::npos;
  for (std::size_t i = head.size(); i-- > 1;) {
    if (head[i] == '+' || head[i] == '-') {
      split = i;
      break;
    }
  }
  if (split == std::string::npos) return QuadraticNumber(0, parse_rational(head), m);
  Rational a = parse_rational(head.substr(0, split));
  Rational b = parse_rational(head.substr(split));
  return QuadraticNumber(a, b, m);
}

std::ostream& operator<<(std::ostream& os, const QuadraticNumber& x) { return os << to_string(x); }

// -------------------------------------------------------------- radical sum

RadicalSum::RadicalSum(const Rational& c) { add_term(1, c); }

RadicalSum::RadicalSum(const QuadraticNumber& x) {
  add_term(1, x.rational_part());
  add_term(x.radicand(), x.radical_coefficient());
}

void RadicalSum::add_term(std::int64_t m, const Rational& c) {
  if (c.is_zero()) return;
  Rational& slot = terms_[m];
  slot += c;
  if (slot.is_zero()) terms_.erase(m);
}

RadicalSum operator+(const RadicalSum& x, const RadicalSum& y) {
  RadicalSum r = x;
  for (const auto& [m, c] : y.terms_) r.add_term(m, c);
  return r;
}

RadicalSum RadicalSum::operator-() const {
  RadicalSum r;
  for (const auto& [m, c] : terms_) r.terms_[m] = -c;
  return r;
}

RadicalSum operator-(const RadicalSum& x, const RadicalSum& y) { return x + (-y); }

RadicalSum operator*(const RadicalSum& x, const RadicalSum& y) {
  RadicalSum r;
  for (const auto& [m1, c1] : x.terms_) {
    for (const auto& [m2, c2] : y.terms_) {
      std::int64_t k = 1;
      std::int64_t sf = squarefree_part(m1 * m2, &k);
      r.add_term(sf, c1 * c2 * k);
    }
  }
  return r;
}

std::string to_string(const RadicalSum& x) {
  if (x.terms().empty()) return "0";
  std::ostringstream os;
  bool first = true;
  for (const auto& [m, c] : x.terms()) {
    if (!first) os << (c.sign() < 0 ? "-" : "+");
    else if (c.sign() < 0) os << "-";
    first = false;
    os << to_string(abs(c));
    if (m != 1) os << "*sqrt(" << m << ")";
  }
  return os.str();
}

SignCertificate certify_sign(const RadicalSum& x, int max_bits) {
  SignCertificate cert;
  cert.expression = to_string(x);
  const auto& terms = x.terms();
  if (terms.empty()) {
    cert.sign = 0;
    cert.exact = true;
    return cert;
  }
  if (terms.size() == 1) {
    const auto& [m, c] = *terms.begin();
    cert.sign = c.sign();
    cert.exact = true;
    if (m == 1) cert.lower = cert.upper = c;
    return cert;
  }
  for (int bits = 16; bits <= max_bits; bits *= 2) {
    Rational lo = 0;
    Rational hi = 0;
    Rational scale = Rational(Integer(1) << bits);
    for (const auto& [m, c] : terms) {
      Rational root_lo, root_hi;
      if (m == 1) {
        root_lo = root_hi = 1;
      } else {
        Integer scaled = Integer(m) << (2 * bits);
        Integer r = boost::multiprecision::sqrt(scaled);
        root_lo = Rational(r) / scale;
        root_hi = Rational(r + 1) / scale;
      }
      if (c.sign() > 0) {
        lo += c * root_lo;
        hi += c * root_hi;
      } else {
        lo += c * root_hi;
        hi += c * root_lo;
      }
    }
    cert.lower = lo;
    cert.upper = hi;
    cert.precision_bits = bits;
    if (lo.sign() > 0) {
      cert.sign = 1;
      return cert;
    }
    if (hi.sign() < 0) {
      cert.sign = -1;
      return cert;
    }
  }
  throw MathError(ErrorCode::UnresolvedSign, cert.expression);
}

// --------------------------------------------------------------- expression

Expression::Expression(const Rational& c) {
  auto n = std::make_shared<Node>();
  n->op = Op::Constant;
  n->constant = c;
  node_ = std::move(n);
}

Expression Expression::variable(const std::string& name) {
  auto n = std::make_shared<Node>();
  n->op = Op::Variable;
  n->name = name;
  return Expression(std::shared_ptr<const Node>(std::move(n)));
}

Expression Expression::make(Op op, std::vector<Expression> args) {
  auto n = std::make_shared<Node>();
  n->op = op;
  n->args = std::move(args);
  return Expression(std::shared_ptr<const Node>(std::move(n)));
}

Expression Expression::pow(int k) const {
  auto n = std::make_shared<Node>();
  n->op = Op::Pow;
  n->exponent = k;
  n->args = {*this};
  return Expression(std::shared_ptr<const Node>(std::move(n)));
}

std::string Expression::to_string() const {
  const Node& n = *node_;
  switch (n.op) {
    case Op::Constant: return qw::to_string(n.constant);
    case Op::Variable: return n.name;
    case Op::Add: return "(" + n.args[0].to_string() + " + " + n.args[1].to_string() + ")";
    case Op::Sub: return "(" + n.args[0].to_string() + " - " + n.args[1].to_string() + ")";
    case Op::Mul: return "(" + n.args[0].to_string() + " * " + n.args[1].to_string() + ")";
    case Op::Div: return "(" + n.args[0].to_string() + " / " + n.args[1].to_string() + ")";
    case Op::Neg: return "-" + n.args[0].to_string();
    case Op::Pow: return n.args[0].to_string() + "^" + std::to_string(n.exponent);
  }
  return "?";
}

Jet<Rational> jet_eval(const Expression& e, const std::map<std::string, Rational>& bindings,
                       const std::string& variable) {
  std::map<std::string, Jet<Rational>> jets;
  for (const auto& [name, value] : bindings) {
    jets[name] = name == variable ? Jet<Rational>::variable(value) : Jet<Rational>(value);
  }
  if (!jets.count(variable)) throw MathError(ErrorCode::InvalidArgument, "unbound variable " + variable);
  return e.evaluate(jets);
}

}  // namespace qw
