#include "rigidity/rational.hpp"

#include <cctype>

#include "rigidity/error.hpp"

namespace rigidity {

namespace {

bool all_digits(std::string_view s) {
  if (s.empty()) return false;
  for (char c : s) {
    if (!std::isdigit(static_cast<unsigned char>(c))) return false;
  }
  return true;
}

}  // namespace

Rational parse_rational(std::string_view text) {
  std::string_view body = text;
  bool negative = false;
  if (!body.empty() && body.front() == '-') {
    negative = true;
    body.remove_prefix(1);
  }
  const auto slash = body.find('/');
  std::string_view num = body.substr(0, slash);
  std::string_view den = slash == std::string_view::npos ? std::string_view("1")
                                                          : body.substr(slash + 1);
  if (!all_digits(num) || !all_digits(den)) {
    fail(ErrorKind::parse, "not an exact rational: \"" + std::string(text) + "\"");
  }
  BigInt p(std::string(num), 10);
  BigInt q(std::string(den), 10);
  if (q == 0) fail(ErrorKind::parse, "zero denominator: \"" + std::string(text) + "\"");
  Rational r(negative ? BigInt(-p) : p, q);
  r.canonicalize();
  return r;
}

std::string format_rational(const Rational& value) {
  return value.get_str(10);
}

double to_double(const Rational& value) { return value.get_d(); }

}  // namespace rigidity
