#include "chowring/rational.hpp"

#include <stdexcept>

namespace chowring {

std::string to_string(const Rational& q) { return q.get_str(); }

Rational parse_rational(std::string_view text) {
  std::string s(text);
  if (!s.empty() && s.front() == '+') s.erase(0, 1);
  if (s.empty()) throw std::invalid_argument("empty rational literal");

  auto slash = s.find('/');
  auto valid_int = [](std::string_view part, bool allow_sign) {
    if (allow_sign && !part.empty() && part.front() == '-') part.remove_prefix(1);
    if (part.empty()) return false;
    for (char c : part)
      if (c < '0' || c > '9') return false;
    return true;
  };
  if (slash == std::string::npos) {
    if (!valid_int(s, true)) throw std::invalid_argument("bad rational literal '" + std::string(text) + "'");
  } else {
    if (!valid_int(std::string_view(s).substr(0, slash), true) ||
        !valid_int(std::string_view(s).substr(slash + 1), false))
      throw std::invalid_argument("bad rational literal '" + std::string(text) + "'");
  }

  Rational q;
  q.set_str(s, 10);
  if (q.get_den() == 0) throw std::invalid_argument("zero denominator in '" + std::string(text) + "'");
  q.canonicalize();
  return q;
}

bool is_integer(const Rational& q) { return q.get_den() == 1; }

std::int64_t to_int64(const Rational& q) {
  if (!is_integer(q)) throw std::domain_error("non-integer value " + to_string(q));
  const mpz_class& n = q.get_num();
  if (!n.fits_slong_p()) throw std::domain_error("integer out of range: " + to_string(q));
  return n.get_si();
}

}  // namespace chowring
