#include "prn/rational.hpp"

#include <cctype>
#include <cstdlib>

#include "prn/error.hpp"

namespace prn {

namespace {

BigInt pow10(long exponent) {
  return boost::multiprecision::pow(BigInt(10), static_cast<unsigned>(exponent));
}

std::size_t digits10(const BigInt& value) { return value.str().size(); }

bool all_digits(std::string_view text) {
  if (text.empty()) return false;
  for (char c : text) {
    if (!std::isdigit(static_cast<unsigned char>(c))) return false;
  }
  return true;
}

BigInt digits_to_int(std::string_view digits) {
  return digits.empty() ? BigInt(0) : BigInt(std::string(digits));
}

/// Compares num/den against 10^k without leaving integer arithmetic.
int compare_pow10(const BigInt& num, const BigInt& den, long k) {
  if (k >= 0) return num.compare(den * pow10(k));
  return BigInt(num * pow10(-k)).compare(den);
}

}  // namespace

Rational parse_rational(std::string_view text) {
  const std::string original(text);
  auto bad = [&original](const std::string& why) {
    fail(errc::parse_error, "invalid number \"" + original + "\": " + why);
  };

  bool negative = false;
  if (!text.empty() && (text.front() == '+' || text.front() == '-')) {
    negative = text.front() == '-';
    text.remove_prefix(1);
  }
  if (text.empty()) bad("missing digits");

  Rational result;
  if (auto slash = text.find('/'); slash != std::string_view::npos) {
    std::string_view num = text.substr(0, slash);
    std::string_view den = text.substr(slash + 1);
    if (!all_digits(num) || !all_digits(den)) bad("expected <integer>/<integer>");
    BigInt d = digits_to_int(den);
    if (d == 0) bad("zero denominator");
    result = Rational(digits_to_int(num), d);
  } else {
    std::string_view mantissa = text;
    long exponent = 0;
    if (auto e = text.find_first_of("eE"); e != std::string_view::npos) {
      mantissa = text.substr(0, e);
      std::string_view exp = text.substr(e + 1);
      bool exp_negative = false;
      if (!exp.empty() && (exp.front() == '+' || exp.front() == '-')) {
        exp_negative = exp.front() == '-';
        exp.remove_prefix(1);
      }
      if (!all_digits(exp) || exp.size() > 6) bad("bad exponent");
      exponent = std::strtol(std::string(exp).c_str(), nullptr, 10);
      if (exp_negative) exponent = -exponent;
    }
    std::string_view int_part = mantissa;
    std::string_view frac_part;
    if (auto dot = mantissa.find('.'); dot != std::string_view::npos) {
      int_part = mantissa.substr(0, dot);
      frac_part = mantissa.substr(dot + 1);
    }
    if (int_part.empty() && frac_part.empty()) bad("missing digits");
    if (!int_part.empty() && !all_digits(int_part)) bad("bad digits");
    if (!frac_part.empty() && !all_digits(frac_part)) bad("bad digits");

    std::string digits = std::string(int_part) + std::string(frac_part);
    long scale = exponent - static_cast<long>(frac_part.size());
    result = Rational(digits_to_int(digits));
    if (scale > 0) result *= pow10(scale);
    if (scale < 0) result /= pow10(-scale);
  }
  return negative ? Rational(-result) : result;
}

std::string to_fraction_string(const Rational& value) {
  if (denominator(value) == 1) return numerator(value).str();
  return numerator(value).str() + "/" + denominator(value).str();
}

std::string to_decimal_string(const Rational& value, unsigned significant_digits) {
  if (significant_digits == 0) significant_digits = 1;
  if (value == 0) return "0";

  const bool negative = value < 0;
  const BigInt num = boost::multiprecision::abs(numerator(value));
  const BigInt den = denominator(value);

  // Decimal exponent e with 10^e <= |value| < 10^(e+1).
  long e = static_cast<long>(digits10(num)) - static_cast<long>(digits10(den));
  while (compare_pow10(num, den, e + 1) >= 0) ++e;
  while (compare_pow10(num, den, e) < 0) --e;

  // Round |value| to significant_digits digits, half away from zero.
  long shift = static_cast<long>(significant_digits) - 1 - e;
  BigInt scaled_num = num;
  BigInt scaled_den = den;
  if (shift >= 0) {
    scaled_num *= pow10(shift);
  } else {
    scaled_den *= pow10(-shift);
  }
  BigInt quotient = scaled_num / scaled_den;
  BigInt remainder = scaled_num % scaled_den;
  if (remainder * 2 >= scaled_den) ++quotient;

  std::string digits = quotient.str();
  if (digits.size() > significant_digits) {
    digits.resize(significant_digits);  // rounding carried into a new leading digit
    ++e;
  }
  digits.erase(digits.find_last_not_of('0') + 1);

  std::string out;
  if (e >= static_cast<long>(significant_digits) || e < -4) {
    out = digits.substr(0, 1);
    if (digits.size() > 1) out += "." + digits.substr(1);
    out += 'e';
    out += e < 0 ? '-' : '+';
    std::string exp = std::to_string(e < 0 ? -e : e);
    if (exp.size() < 2) exp.insert(exp.begin(), '0');
    out += exp;
  } else if (e >= 0) {
    if (digits.size() <= static_cast<std::size_t>(e)) {
      digits += std::string(static_cast<std::size_t>(e) + 1 - digits.size(), '0');
    }
    out = digits.substr(0, static_cast<std::size_t>(e) + 1);
    if (digits.size() > static_cast<std::size_t>(e) + 1) {
      out += "." + digits.substr(static_cast<std::size_t>(e) + 1);
    }
  } else {
    out = "0." + std::string(static_cast<std::size_t>(-e) - 1, '0') + digits;
  }
  return negative ? "-" + out : out;
}

}  // namespace prn
