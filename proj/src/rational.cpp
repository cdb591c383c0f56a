#include "liftlab/rational.hpp"

#include <cctype>
#include <cmath>

#include "liftlab/error.hpp"

namespace liftlab {

namespace {

bool all_digits(std::string_view s) {
  if (s.empty()) return false;
  for (char c : s) {
    if (!std::isdigit(static_cast<unsigned char>(c))) return false;
  }
  return true;
}

Rational parse_decimal(std::string_view text) {
  std::string_view s = text;
  bool negative = false;
  if (!s.empty() && (s.front() == '+' || s.front() == '-')) {
    negative = s.front() == '-';
    s.remove_prefix(1);
  }
  long exponent = 0;
  if (auto e = s.find_first_of("eE"); e != std::string_view::npos) {
    std::string_view exp_part = s.substr(e + 1);
    bool exp_negative = false;
    if (!exp_part.empty() && (exp_part.front() == '+' || exp_part.front() == '-')) {
      exp_negative = exp_part.front() == '-';
      exp_part.remove_prefix(1);
    }
    if (!all_digits(exp_part) || exp_part.size() > 6) {
      throw InvalidArgument("malformed exponent in '" + std::string(text) + "'");
    }
    exponent = std::stol(std::string(exp_part));
    if (exp_negative) exponent = -exponent;
    s = s.substr(0, e);
  }
  std::string digits;
  long frac_len = 0;
  if (auto dot = s.find('.'); dot != std::string_view::npos) {
    std::string_view whole = s.substr(0, dot);
    std::string_view frac = s.substr(dot + 1);
    if ((!whole.empty() && !all_digits(whole)) || (!frac.empty() && !all_digits(frac)) ||
        (whole.empty() && frac.empty())) {
      throw InvalidArgument("malformed decimal '" + std::string(text) + "'");
    }
    digits = std::string(whole) + std::string(frac);
    frac_len = static_cast<long>(frac.size());
  } else {
    if (!all_digits(s)) throw InvalidArgument("malformed number '" + std::string(text) + "'");
    digits = std::string(s);
  }
  mpz_class num(digits, 10);
  long shift = exponent - frac_len;
  mpz_class scale;
  mpz_ui_pow_ui(scale.get_mpz_t(), 10, static_cast<unsigned long>(shift < 0 ? -shift : shift));
  Rational r = shift >= 0 ? Rational(num * scale) : Rational(num, scale);
  r.canonicalize();
  return negative ? Rational(-r) : r;
}

}  // namespace

Rational parse_rational(std::string_view text) {
  while (!text.empty() && std::isspace(static_cast<unsigned char>(text.front()))) text.remove_prefix(1);
  while (!text.empty() && std::isspace(static_cast<unsigned char>(text.back()))) text.remove_suffix(1);
  if (text.empty()) throw InvalidArgument("empty rational");
  if (auto slash = text.find('/'); slash != std::string_view::npos) {
    std::string_view p = text.substr(0, slash);
    std::string_view q = text.substr(slash + 1);
    std::string_view p_digits = p;
    if (!p_digits.empty() && (p_digits.front() == '-' || p_digits.front() == '+')) p_digits.remove_prefix(1);
    if (!all_digits(p_digits) || !all_digits(q)) {
      throw InvalidArgument("malformed rational '" + std::string(text) + "'");
    }
    mpz_class den(std::string(q), 10);
    if (den == 0) throw InvalidArgument("zero denominator in '" + std::string(text) + "'");
    mpz_class num(std::string(p_digits), 10);
    if (p.front() == '-') num = -num;
    Rational r(num, den);
    r.canonicalize();
    return r;
  }
  return parse_decimal(text);
}

std::string to_string(const Rational& r) {
  if (r.get_den() == 1) return r.get_num().get_str();
  return r.get_num().get_str() + "/" + r.get_den().get_str();
}

double to_double(const Rational& r) { return r.get_d(); }

Rational rationalize(double x, std::int64_t max_den) {
  if (!std::isfinite(x)) throw InvalidArgument("cannot rationalize a non-finite value");
  if (max_den < 1) throw InvalidArgument("denominator cap must be positive");
  Rational exact(x);  // doubles are dyadic, so this is exact
  bool negative = sgn(exact) < 0;
  if (negative) exact = -exact;
  mpz_class cap(static_cast<long>(max_den));
  if (exact.get_den() <= cap) return negative ? Rational(-exact) : exact;

  // Continued-fraction convergents, then the best semiconvergent.
  mpz_class p0 = 0, q0 = 1, p1 = 1, q1 = 0;
  mpz_class n = exact.get_num(), d = exact.get_den();
  while (true) {
    mpz_class a = n / d;
    mpz_class q2 = q0 + a * q1;
    if (q2 > cap) break;
    mpz_class p2 = p0 + a * p1;
    p0 = p1;
    q0 = q1;
    p1 = p2;
    q1 = q2;
    mpz_class rem = n - a * d;
    n = d;
    d = rem;
  }
  mpz_class k = (cap - q0) / q1;
  Rational bound1(p0 + k * p1, q0 + k * q1);
  Rational bound2(p1, q1);
  bound1.canonicalize();
  bound2.canonicalize();
  Rational best = abs(bound2 - exact) <= abs(bound1 - exact) ? bound2 : bound1;
  return negative ? Rational(-best) : best;
}

}  // namespace liftlab
