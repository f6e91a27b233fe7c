#pragma once

#include <compare>
#include <iosfwd>
#include <stdexcept>
#include <string>

namespace varreg {

/// Base class for every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class DimensionMismatch : public Error {
 public:
  using Error::Error;
};

/// Extended-real arithmetic that would leave [0, inf] (inf - inf, negative results).
class ExtRealDomainError : public Error {
 public:
  using Error::Error;
};

/// A value in [0, inf]. Infinity is a tag, not an IEEE infinity, so that
/// inf - inf can never be silently produced.
class ExtReal {
 public:
  constexpr ExtReal() = default;

  /// Throws ExtRealDomainError unless v is finite and nonnegative.
  explicit ExtReal(double v);

  static constexpr ExtReal infinity() {
    ExtReal r;
    r.infinite_ = true;
    return r;
  }

  /// Clamps tiny negative rounding noise (|v| <= slack) to zero.
  static ExtReal clamped(double v, double slack);

  [[nodiscard]] constexpr bool is_infinite() const { return infinite_; }
  [[nodiscard]] constexpr bool is_finite() const { return !infinite_; }

  /// Finite value; throws ExtRealDomainError on infinity.
  [[nodiscard]] double value() const;

  /// Finite value, or +inf as an IEEE double (for printing and plotting only).
  [[nodiscard]] double to_double() const;

  friend ExtReal operator+(ExtReal a, ExtReal b);
  /// Rejects inf - inf, finite - inf and negative finite results.
  friend ExtReal operator-(ExtReal a, ExtReal b);
  /// Scaling by a finite nonnegative factor; 0 * inf = 0.
  friend ExtReal operator*(double c, ExtReal a);

  friend bool operator==(ExtReal a, ExtReal b) = default;
  friend std::partial_ordering operator<=>(ExtReal a, ExtReal b);

 private:
  double value_ = 0.0;
  bool infinite_ = false;
};

ExtReal ext_add(ExtReal a, ExtReal b);

/// a - b as a signed real; both operands must be finite.
double signed_difference(ExtReal a, ExtReal b);

std::string to_string(ExtReal a);
std::ostream& operator<<(std::ostream& os, ExtReal a);

}  // namespace varreg
