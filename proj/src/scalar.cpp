#include "voa/scalar.hpp"

namespace voa {

std::string format_scalar(const Scalar& s) {
  if (s.im == 0) return format_rational(s.re);
  std::string out = format_rational(s.re);
  if (s.im > 0) {
    out += "+" + format_rational(s.im) + " i";
  } else {
    out += "-" + format_rational(-s.im) + " i";
  }
  return out;
}

Scalar parse_scalar(const std::string& s) {
  const auto ipos = s.find(" i");
  if (ipos == std::string::npos) return Scalar(parse_rational(s));
  // split at the sign that separates the real and imaginary parts; skip a
  // leading sign and any sign directly after '/'
  std::string body = s.substr(0, ipos);
  for (std::size_t k = body.size(); k-- > 1;) {
    const char ch = body[k];
    if ((ch == '+' || ch == '-') && body[k - 1] != '/') {
      Rational re = parse_rational(body.substr(0, k));
      Rational im = parse_rational(body.substr(k + 1));
      if (ch == '-') im = -im;
      return Scalar(std::move(re), std::move(im));
    }
  }
  throw std::invalid_argument("bad scalar literal '" + s + "'");
}

}  // namespace voa
