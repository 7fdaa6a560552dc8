#pragma once

#include <span>
#include <string>
#include <vector>

namespace finsler {

/// A point (x, y) of the slit tangent bundle: n >= 2 and y != 0.
class TangentPoint {
 public:
  /// Throws DomainError unless the sizes agree, n >= 2 and |y| > 0.
  TangentPoint(std::vector<double> x, std::vector<double> y);

  int dim() const noexcept { return static_cast<int>(x_.size()); }
  std::span<const double> x() const noexcept { return x_; }
  std::span<const double> y() const noexcept { return y_; }

  /// The same base point with the fiber coordinates scaled by `lambda`.
  TangentPoint scaled_fiber(double lambda) const;

  /// "x1,..,xn;y1,..,yn".
  std::string to_string() const;

  /// Inverse of to_string(); throws DomainError on malformed input.
  static TangentPoint parse(const std::string& text);

  friend bool operator==(const TangentPoint&, const TangentPoint&) = default;

 private:
  std::vector<double> x_;
  std::vector<double> y_;
};

}  // namespace finsler
