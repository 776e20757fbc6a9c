#include "setpack/rational.hpp"

#include <cctype>

#include "setpack/errors.hpp"

namespace setpack {
namespace {

bool all_digits(std::string_view s) {
  if (s.empty()) return false;
  for (char c : s) {
    if (!std::isdigit(static_cast<unsigned char>(c))) return false;
  }
  return true;
}

}  // namespace

std::string to_string(const Rational& value) {
  Rational canonical = value;
  canonical.canonicalize();
  return canonical.get_str();
}

Rational parse_rational(std::string_view text) {
  std::string_view body = text;
  if (!body.empty() && (body.front() == '-' || body.front() == '+')) body.remove_prefix(1);
  const auto slash = body.find('/');
  const std::string_view num = body.substr(0, slash);
  const std::string_view den = slash == std::string_view::npos ? std::string_view{"1"}
                                                                : body.substr(slash + 1);
  if (!all_digits(num) || !all_digits(den) || den.find_first_not_of('0') == std::string_view::npos) {
    throw InputError("malformed rational '" + std::string(text) + "'");
  }
  Rational r(std::string(num) + "/" + std::string(den), 10);
  r.canonicalize();
  if (!text.empty() && text.front() == '-') r = -r;
  return r;
}

Rational floor(const Rational& value) {
  mpz_class q;
  mpz_fdiv_q(q.get_mpz_t(), value.get_num_mpz_t(), value.get_den_mpz_t());
  return Rational(q);
}

Rational pow(const Rational& value, unsigned long exponent) {
  Rational result(1);
  mpz_pow_ui(result.get_num_mpz_t(), value.get_num_mpz_t(), exponent);
  mpz_pow_ui(result.get_den_mpz_t(), value.get_den_mpz_t(), exponent);
  return result;
}

Rational sum(std::span<const Rational> values) {
  Rational total(0);
  for (const auto& v : values) total += v;
  return total;
}

}  // namespace setpack
