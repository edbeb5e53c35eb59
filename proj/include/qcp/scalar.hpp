#pragma once

// Numeric carriers: exact integers/rationals (GMP) and arbitrary-precision
// reals (MPFR) evaluated at a rational deformation parameter.

#include <boost/multiprecision/gmp.hpp>
#include <boost/multiprecision/mpfr.hpp>

#include <charconv>
#include <cstdint>
#include <sstream>
#include <stdexcept>
#include <string>
#include <string_view>

namespace qcp {

using BigInt = boost::multiprecision::mpz_int;
using Rational = boost::multiprecision::mpq_rational;
using QScalar = boost::multiprecision::mpfr_float;

inline constexpr unsigned kMinPrecision = 30;
inline constexpr unsigned kDefaultPrecision = 60;

/// RAII guard fixing the working precision (decimal digits) of every
/// QScalar created on this thread while it is alive.
class WorkingPrecision {
 public:
  explicit WorkingPrecision(unsigned digits) : saved_(QScalar::default_precision()) {
    if (digits < kMinPrecision) {
      throw std::invalid_argument("precision must be at least " + std::to_string(kMinPrecision) +
                                  " digits");
    }
    QScalar::default_precision(digits);
  }
  ~WorkingPrecision() { QScalar::default_precision(saved_); }
  WorkingPrecision(const WorkingPrecision&) = delete;
  WorkingPrecision& operator=(const WorkingPrecision&) = delete;

 private:
  unsigned saved_;
};

/// The deformation parameter q = num/den, restricted to the open interval (0,1).
struct RationalQ {
  std::int64_t num = 1;
  std::int64_t den = 2;

  RationalQ() = default;
  RationalQ(std::int64_t n, std::int64_t d) : num(n), den(d) {
    if (d <= 0 || n <= 0 || n >= d) {
      throw std::domain_error("q must be a rational in (0,1), got " + std::to_string(n) + "/" +
                              std::to_string(d));
    }
  }

  /// Parses "P/R" (or a bare integer, which is always rejected as outside (0,1)).
  static RationalQ parse(std::string_view text) {
    auto slash = text.find('/');
    auto to_int = [&](std::string_view s) {
      std::int64_t v = 0;
      auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
      if (ec != std::errc{} || ptr != s.data() + s.size()) {
        throw std::invalid_argument("cannot parse q from '" + std::string(text) + "'");
      }
      return v;
    };
    if (slash == std::string_view::npos) return RationalQ(to_int(text), 1);
    return RationalQ(to_int(text.substr(0, slash)), to_int(text.substr(slash + 1)));
  }

  Rational exact() const { return Rational(BigInt(num), BigInt(den)); }
  QScalar value() const { return QScalar(num) / QScalar(den); }
  std::string str() const { return std::to_string(num) + "/" + std::to_string(den); }

  friend bool operator==(const RationalQ&, const RationalQ&) = default;
};

inline QScalar to_scalar(const Rational& r) {
  return QScalar(boost::multiprecision::numerator(r)) /
         QScalar(boost::multiprecision::denominator(r));
}

/// Scientific notation carrying `digits` significant digits.
inline std::string format_scalar(const QScalar& x, unsigned digits) {
  std::ostringstream os;
  os.precision(digits);
  os << std::scientific << x;
  return os.str();
}

}  // namespace qcp
