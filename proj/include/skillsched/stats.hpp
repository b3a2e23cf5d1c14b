#pragma once

#include <cstddef>
#include <span>
#include <stdexcept>

namespace skillsched {

class InsufficientPositiveGaps : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

class NonpositiveParameter : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// Gaps at or below this value are treated as zero and left out of the
/// Weibull fit (the published table rounds to two decimals).
inline constexpr double kZeroGapThreshold = 0.005;

struct WeibullFit {
  double shape = 0.0;  // beta
  double scale = 0.0;  // eta
  std::size_t n = 0;
};

/// Maximum-likelihood Weibull fit on strictly positive samples. The shape
/// solves sum(x^b ln x)/sum(x^b) - 1/b - mean(ln x) = 0 to |f| < 1e-10;
/// the scale follows as mean(x^b)^(1/b).
WeibullFit weibull_mle(std::span<const double> samples);

struct WeibullMoments {
  double mean = 0.0;
  double stddev = 0.0;
};

WeibullMoments weibull_moments(double shape, double scale);

/// Pearson product-moment correlation. NaN when either series is constant.
double pearson(std::span<const double> x, std::span<const double> y);

struct GapStats {
  std::size_t n = 0;
  double mean = 0.0;
  /// Sample standard deviation (n - 1).
  double stddev = 0.0;
  double weibull_beta = 0.0;
  double weibull_eta = 0.0;
  std::size_t fitted = 0;
  std::size_t excluded_zero_count = 0;
  double correlation_with_scale = 0.0;
};

/// Summary of a gap distribution; `scales` pairs with `gaps` element-wise.
/// Throws InsufficientPositiveGaps when fewer than 3 gaps exceed
/// kZeroGapThreshold.
GapStats gap_stats(std::span<const double> gaps, std::span<const double> scales);

}  // namespace skillsched
