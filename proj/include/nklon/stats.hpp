#pragma once

#include <cmath>
#include <cstddef>
#include <optional>
#include <span>

namespace nklon {

inline double mean(std::span<const double> xs) {
  double sum = 0.0;
  for (double x : xs) sum += x;
  return xs.empty() ? 0.0 : sum / static_cast<double>(xs.size());
}

// Sample standard deviation (n-1 denominator); absent below two samples.
inline std::optional<double> sample_std(std::span<const double> xs) {
  if (xs.size() < 2) return std::nullopt;
  const double m = mean(xs);
  double ss = 0.0;
  for (double x : xs) ss += (x - m) * (x - m);
  return std::sqrt(ss / static_cast<double>(xs.size() - 1));
}

// Pearson correlation; absent below two points or under zero variance.
inline std::optional<double> pearson(std::span<const double> xs,
                                     std::span<const double> ys) {
  const std::size_t n = xs.size();
  if (n != ys.size() || n < 2) return std::nullopt;
  const double mx = mean(xs), my = mean(ys);
  double sxy = 0.0, sxx = 0.0, syy = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    const double dx = xs[i] - mx, dy = ys[i] - my;
    sxy += dx * dy;
    sxx += dx * dx;
    syy += dy * dy;
  }
  if (sxx == 0.0 || syy == 0.0) return std::nullopt;
  return sxy / std::sqrt(sxx * syy);
}

// Ordinary least squares y = alpha + beta * x.
struct linear_fit {
  double alpha = 0.0;
  double beta = 0.0;
};

inline std::optional<linear_fit> least_squares(std::span<const double> xs,
                                               std::span<const double> ys) {
  const std::size_t n = xs.size();
  if (n != ys.size() || n < 2) return std::nullopt;
  const double mx = mean(xs), my = mean(ys);
  double sxy = 0.0, sxx = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    sxy += (xs[i] - mx) * (ys[i] - my);
    sxx += (xs[i] - mx) * (xs[i] - mx);
  }
  if (sxx == 0.0) return std::nullopt;
  const double beta = sxy / sxx;
  return linear_fit{my - beta * mx, beta};
}

}  // namespace nklon
