#include "aquafill/rational.hpp"

#include <cctype>
#include <cstdlib>

#include "aquafill/errors.hpp"

namespace aquafill {

namespace {

bool all_digits(std::string_view s) {
  if (s.empty()) return false;
  for (char c : s) {
    if (!std::isdigit(static_cast<unsigned char>(c))) return false;
  }
  return true;
}

}  // namespace

Rat rat(long num, long den) {
  if (den == 0) throw InvalidParameter("rational with zero denominator");
  Rat r(num, den);
  r.canonicalize();
  return r;
}

Rat parse_rational(std::string_view text) {
  size_t begin = text.find_first_not_of(" \t");
  size_t end = text.find_last_not_of(" \t");
  if (begin == std::string_view::npos) throw ParseError("empty rational literal");
  std::string s(text.substr(begin, end - begin + 1));

  bool negative = false;
  if (s[0] == '+' || s[0] == '-') {
    negative = (s[0] == '-');
    s.erase(0, 1);
  }

  Rat value;
  if (size_t slash = s.find('/'); slash != std::string::npos) {
    std::string num = s.substr(0, slash);
    std::string den = s.substr(slash + 1);
    if (!all_digits(num) || !all_digits(den)) {
      throw ParseError("malformed rational literal: " + std::string(text));
    }
    if (mpz_class(den) == 0) {
      throw ParseError("rational with zero denominator: " + std::string(text));
    }
    value = Rat(mpz_class(num), mpz_class(den));
    value.canonicalize();
  } else if (size_t dot = s.find('.'); dot != std::string::npos) {
    std::string whole = s.substr(0, dot);
    std::string frac = s.substr(dot + 1);
    if (whole.empty()) whole = "0";
    if (!all_digits(whole) || !all_digits(frac) || frac.size() > 12) {
      throw ParseError("malformed decimal literal: " + std::string(text));
    }
    mpz_class den(1);
    for (size_t i = 0; i < frac.size(); ++i) den *= 10;
    value = Rat(mpz_class(whole) * den + mpz_class(frac), den);
    value.canonicalize();
  } else {
    if (!all_digits(s)) {
      throw ParseError("malformed rational literal: " + std::string(text));
    }
    value = Rat(mpz_class(s));
  }

  if (negative) value = -value;
  return value;
}

std::string format_rational(const Rat& value) { return value.get_str(); }

double to_double(const Rat& value) { return value.get_d(); }

}  // namespace aquafill
