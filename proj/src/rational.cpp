#include "torusfix/rational.hpp"

#include <cctype>

#include "torusfix/errors.hpp"

namespace torusfix {

namespace {

bool valid_integer_text(std::string_view s) {
  if (s.empty()) return false;
  std::size_t i = (s[0] == '-' || s[0] == '+') ? 1 : 0;
  if (i == s.size()) return false;
  for (; i < s.size(); ++i) {
    if (!std::isdigit(static_cast<unsigned char>(s[i]))) return false;
  }
  return true;
}

Integer parse_integer(std::string_view s) {
  if (!valid_integer_text(s)) {
    throw InvalidInput("not an integer: '" + std::string(s) + "'");
  }
  if (s[0] == '+') s.remove_prefix(1);
  return Integer(std::string(s), 10);
}

}  // namespace

Rational parse_rational(std::string_view text) {
  std::string trimmed;
  for (char c : text) {
    if (!std::isspace(static_cast<unsigned char>(c))) trimmed.push_back(c);
  }
  std::string_view s = trimmed;
  const auto slash = s.find('/');
  Rational q;
  if (slash == std::string_view::npos) {
    q = Rational(parse_integer(s));
  } else {
    Integer den = parse_integer(s.substr(slash + 1));
    if (den == 0) throw InvalidInput("zero denominator: '" + std::string(text) + "'");
    q = Rational(parse_integer(s.substr(0, slash)), den);
    q.canonicalize();
  }
  return q;
}

std::string to_string(const Rational& q) { return q.get_str(); }

std::string to_string(const Integer& z) { return z.get_str(); }

RatVector to_rational(const IntVector& v) {
  RatVector out;
  out.reserve(v.size());
  for (const auto& z : v) out.emplace_back(z);
  return out;
}

IntVector primitive_direction(const IntVector& v) {
  Integer g = 0;
  for (const auto& z : v) g = gcd(g, z);
  if (g == 0) return v;
  IntVector out(v.size());
  bool flip = false;
  for (const auto& z : v) {
    if (z != 0) {
      flip = z < 0;
      break;
    }
  }
  for (std::size_t i = 0; i < v.size(); ++i) {
    out[i] = v[i] / g;
    if (flip) out[i] = -out[i];
  }
  return out;
}

IntVector primitive_direction(const RatVector& v) {
  Integer den = 1;
  for (const auto& q : v) den = lcm(den, q.get_den());
  IntVector scaled(v.size());
  for (std::size_t i = 0; i < v.size(); ++i) {
    Rational s = v[i] * den;
    scaled[i] = s.get_num();
  }
  return primitive_direction(scaled);
}

bool is_zero(const RatVector& v) {
  for (const auto& q : v) {
    if (q != 0) return false;
  }
  return true;
}

bool is_zero(const IntVector& v) {
  for (const auto& z : v) {
    if (z != 0) return false;
  }
  return true;
}

}  // namespace torusfix
