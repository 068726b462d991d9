#include "hecke/qformat.hpp"

#include <cctype>
#include <stdexcept>

namespace hecke {

mpq_class mpq_from_decimal(const std::string& s) {
  std::size_t i = 0;
  bool negative = false;
  if (i < s.size() && (s[i] == '+' || s[i] == '-')) {
    negative = s[i] == '-';
    ++i;
  }
  std::string digits;
  std::size_t frac_len = 0;
  bool seen_dot = false, seen_digit = false;
  for (; i < s.size(); ++i) {
    if (s[i] == '.') {
      if (seen_dot) throw std::invalid_argument("mpq_from_decimal: bad literal " + s);
      seen_dot = true;
    } else if (std::isdigit(static_cast<unsigned char>(s[i]))) {
      digits += s[i];
      seen_digit = true;
      if (seen_dot) ++frac_len;
    } else {
      throw std::invalid_argument("mpq_from_decimal: bad literal " + s);
    }
  }
  if (!seen_digit) throw std::invalid_argument("mpq_from_decimal: bad literal " + s);
  // base must be pinned: the string constructor auto-detects and would read
  // a leading zero as octal
  mpz_class num(digits.empty() ? "0" : digits, 10);
  if (negative) num = -num;
  mpz_class den = 1;
  for (std::size_t j = 0; j < frac_len; ++j) den *= 10;
  mpq_class q(num, den);
  q.canonicalize();
  return q;
}

std::string to_fraction_string(const mpq_class& q) {
  if (q.get_den() == 1) return q.get_num().get_str();
  return q.get_num().get_str() + "/" + q.get_den().get_str();
}

double approx(const mpq_class& q) { return q.get_d(); }

}  // namespace hecke
