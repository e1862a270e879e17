#include "codedcache/rational.hpp"

#include <cctype>
#include <stdexcept>

namespace codedcache {
namespace {

using boost::multiprecision::cpp_int;

cpp_int parse_integer(std::string_view digits, std::string_view whole) {
  if (digits.empty()) throw std::invalid_argument("malformed number: '" + std::string(whole) + "'");
  cpp_int out = 0;
  for (char c : digits) {
    if (!std::isdigit(static_cast<unsigned char>(c))) {
      throw std::invalid_argument("malformed number: '" + std::string(whole) + "'");
    }
    out = out * 10 + (c - '0');
  }
  return out;
}

cpp_int pow10(long exponent) {
  cpp_int out = 1;
  for (long i = 0; i < exponent; ++i) out *= 10;
  return out;
}

Rational parse_decimal(std::string_view text, std::string_view whole) {
  bool negative = false;
  if (!text.empty() && (text.front() == '-' || text.front() == '+')) {
    negative = text.front() == '-';
    text.remove_prefix(1);
  }
  long exponent = 0;
  if (auto e = text.find_first_of("eE"); e != std::string_view::npos) {
    auto exp_text = text.substr(e + 1);
    bool exp_negative = false;
    if (!exp_text.empty() && (exp_text.front() == '-' || exp_text.front() == '+')) {
      exp_negative = exp_text.front() == '-';
      exp_text.remove_prefix(1);
    }
    exponent = static_cast<long>(parse_integer(exp_text, whole));
    if (exp_negative) exponent = -exponent;
    text = text.substr(0, e);
  }
  std::string digits;
  if (auto dot = text.find('.'); dot != std::string_view::npos) {
    digits = std::string(text.substr(0, dot)) + std::string(text.substr(dot + 1));
    exponent -= static_cast<long>(text.size() - dot - 1);
  } else {
    digits = std::string(text);
  }
  Rational value(parse_integer(digits, whole));
  if (exponent >= 0) {
    value *= pow10(exponent);
  } else {
    value /= pow10(-exponent);
  }
  return negative ? Rational(-value) : value;
}

}  // namespace

Rational parse_rational(std::string_view text) {
  while (!text.empty() && std::isspace(static_cast<unsigned char>(text.front()))) text.remove_prefix(1);
  while (!text.empty() && std::isspace(static_cast<unsigned char>(text.back()))) text.remove_suffix(1);
  if (auto slash = text.find('/'); slash != std::string_view::npos) {
    Rational num = parse_decimal(text.substr(0, slash), text);
    Rational den = parse_decimal(text.substr(slash + 1), text);
    if (den == 0) throw std::invalid_argument("zero denominator: '" + std::string(text) + "'");
    return num / den;
  }
  return parse_decimal(text, text);
}

std::string to_string(const Rational& value) {
  const auto num = boost::multiprecision::numerator(value);
  const auto den = boost::multiprecision::denominator(value);
  if (den == 1) return num.str();
  return num.str() + "/" + den.str();
}

double to_double(const Rational& value) { return value.convert_to<double>(); }

std::uint64_t floor_to_uint(const Rational& value) {
  if (value < 0) throw std::invalid_argument("floor_to_uint of a negative value");
  cpp_int q = boost::multiprecision::numerator(value) / boost::multiprecision::denominator(value);
  return static_cast<std::uint64_t>(q);
}

}  // namespace codedcache
