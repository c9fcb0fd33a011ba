#include "conemod/rate.hpp"

#include <cmath>
#include <sstream>

#include "conemod/errors.hpp"

namespace conemod {

std::string format_rate(const Rate& r) {
  if (r.is_exact) return format_rational(r.exact);
  if (!r.label.empty()) return r.label;
  std::ostringstream os;
  os.precision(17);
  os << r.approx;
  return os.str();
}

Rate parse_rate(const std::string& text) {
  try {
    return Rate::from_rational(parse_rational(text));
  } catch (const Error&) {
    try {
      size_t used = 0;
      double x = std::stod(text, &used);
      if (used != text.size()) throw std::invalid_argument(text);
      return Rate::from_double(x);
    } catch (const std::exception&) {
      fail(ErrorKind::Validation, "cannot parse rate '" + text + "'");
    }
  }
}

Window make_window(Rate lo, Rate hi) {
  if (!std::isfinite(lo.approx) || !std::isfinite(hi.approx))
    fail(ErrorKind::Validation, "window bounds must be finite");
  if (!rate_less(lo, hi))
    fail(ErrorKind::Validation, "window lower bound must be strictly below the upper bound");
  return Window{std::move(lo), std::move(hi)};
}

}  // namespace conemod
