#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "weylchar/rational.hpp"

namespace weylchar {

/// A Cartan element h, identified with the torus element exp(ih).
///
/// Exact points store each ambient coordinate as a rational multiple of pi.
/// Floating points store radians; they are snapped onto a singular stratum
/// (or rejected) before any singular evaluation.
class TorusPoint {
 public:
  TorusPoint() = default;

  static TorusPoint exact(std::vector<Rational> coords_over_pi);
  static TorusPoint floating(std::vector<double> radians);
  static TorusPoint zero(std::size_t dim) {
    return exact(std::vector<Rational>(dim));
  }

  bool is_exact() const { return exact_; }
  std::size_t dim() const;

  /// Coordinates divided by pi. Only valid for exact points.
  const std::vector<Rational>& coords_over_pi() const;
  /// Coordinates in radians (exact points are converted).
  std::vector<double> radians() const;

  bool is_zero() const;

  TorusPoint operator+(const TorusPoint& other) const;

  /// Grammar: colon-separated entries, each either `[c]pi[/q]` with an
  /// optional rational coefficient c (e.g. "pi/5", "-2pi/5", "3/7*pi"), the
  /// literal "0", or a decimal in radians. Any decimal entry makes the whole
  /// point floating.
  static TorusPoint parse(std::string_view text);
  std::string to_string() const;

 private:
  bool exact_ = true;
  std::vector<Rational> exact_coords_;
  std::vector<double> float_coords_;
};

/// sin(pi * a / b) with exact argument reduction; b > 0.
long double sin_pi_frac(std::int64_t a, std::int64_t b);
/// cos(pi * a / b) with exact argument reduction; b > 0.
long double cos_pi_frac(std::int64_t a, std::int64_t b);

/// Closest rational p/q to x with 1 <= q <= max_den (continued fractions).
Rational best_rational_approximation(long double x, std::int64_t max_den);

/// Distance from x to the nearest multiple of 2*pi.
double distance_to_2pi_lattice(double x);

}  // namespace weylchar
