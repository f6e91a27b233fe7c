#include "varreg/ext_real.hpp"

#include <cmath>
#include <limits>
#include <ostream>

#include <fmt/format.h>

namespace varreg {

ExtReal::ExtReal(double v) : value_(v) {
  if (!std::isfinite(v) || v < 0.0) {
    throw ExtRealDomainError(fmt::format("ExtReal requires a finite nonnegative value, got {}", v));
  }
}

ExtReal ExtReal::clamped(double v, double slack) {
  if (std::isfinite(v) && v < 0.0 && v >= -slack) return ExtReal(0.0);
  return ExtReal(v);
}

double ExtReal::value() const {
  if (infinite_) throw ExtRealDomainError("value() called on INFINITY");
  return value_;
}

double ExtReal::to_double() const {
  return infinite_ ? std::numeric_limits<double>::infinity() : value_;
}

ExtReal operator+(ExtReal a, ExtReal b) {
  if (a.infinite_ || b.infinite_) return ExtReal::infinity();
  return ExtReal(a.value_ + b.value_);
}

ExtReal operator-(ExtReal a, ExtReal b) {
  if (a.infinite_ && b.infinite_) throw ExtRealDomainError("INFINITY - INFINITY is undefined");
  if (b.infinite_) throw ExtRealDomainError("finite - INFINITY leaves [0, inf]");
  if (a.infinite_) return ExtReal::infinity();
  const double d = a.value_ - b.value_;
  if (d < 0.0) throw ExtRealDomainError(fmt::format("negative difference {}", d));
  return ExtReal(d);
}

ExtReal operator*(double c, ExtReal a) {
  if (!std::isfinite(c) || c < 0.0) {
    throw ExtRealDomainError(fmt::format("scale factor must be finite and nonnegative, got {}", c));
  }
  if (a.infinite_) return c == 0.0 ? ExtReal(0.0) : ExtReal::infinity();
  return ExtReal(c * a.value_);
}

std::partial_ordering operator<=>(ExtReal a, ExtReal b) {
  if (a.infinite_ && b.infinite_) return std::partial_ordering::equivalent;
  if (a.infinite_) return std::partial_ordering::greater;
  if (b.infinite_) return std::partial_ordering::less;
  return a.value_ <=> b.value_;
}

ExtReal ext_add(ExtReal a, ExtReal b) { return a + b; }

double signed_difference(ExtReal a, ExtReal b) {
  if (a.is_infinite() || b.is_infinite()) {
    throw ExtRealDomainError("signed_difference needs finite operands");
  }
  return a.value() - b.value();
}

std::string to_string(ExtReal a) {
  return a.is_infinite() ? std::string("INFINITY") : fmt::format("{:.17g}", a.value());
}

std::ostream& operator<<(std::ostream& os, ExtReal a) { return os << to_string(a); }

}  // namespace varreg
