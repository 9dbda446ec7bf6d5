#include "smcc/rational.hpp"

#include <stdexcept>

namespace smcc {

Rational make_rational(std::int64_t num, std::int64_t den) {
  if (den == 0) throw std::invalid_argument("rational with zero denominator");
  Rational r(static_cast<long>(num), static_cast<long>(den));
  r.canonicalize();
  return r;
}

bool is_integer(const Rational& r) { return r.get_den() == 1; }

std::string to_fraction_string(const Rational& r) { return r.get_str(); }

std::string to_decimal_string(const Rational& r, int places) {
  mpz_class num = r.get_num();
  mpz_class den = r.get_den();
  bool negative = num < 0;
  if (negative) num = -num;

  mpz_class scale;
  mpz_ui_pow_ui(scale.get_mpz_t(), 10, static_cast<unsigned long>(places));
  mpz_class scaled = num * scale;
  mpz_class q = scaled / den;
  mpz_class rem = scaled % den;
  if (2 * rem >= den) ++q;  // round half away from zero

  mpz_class whole = q / scale;
  mpz_class frac = q % scale;
  std::string frac_str = frac.get_str();
  std::string out;
  if (negative && (whole != 0 || frac != 0)) out += '-';
  out += whole.get_str();
  if (places > 0) {
    out += '.';
    out.append(static_cast<std::size_t>(places) - frac_str.size(), '0');
    out += frac_str;
  }
  return out;
}

}  // namespace smcc
