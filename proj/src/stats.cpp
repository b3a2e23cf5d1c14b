#include "skillsched/stats.hpp"

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <limits>
#include <numeric>
#include <vector>

#include <boost/math/tools/roots.hpp>

namespace skillsched {

namespace {

// Profile score of the Weibull likelihood in the shape parameter. Samples
// are pre-scaled by their maximum; the score is invariant to that scaling.
struct ShapeScore {
  std::span<const double> scaled;
  std::span<const double> logs;
  double mean_log = 0.0;

  double operator()(double beta) const {
    double num = 0.0;
    double den = 0.0;
    for (std::size_t i = 0; i < scaled.size(); ++i) {
      const double p = std::pow(scaled[i], beta);
      num += p * logs[i];
      den += p;
    }
    return num / den - 1.0 / beta - mean_log;
  }
};

}  // namespace

WeibullFit weibull_mle(std::span<const double> samples) {
  if (samples.size() < 3) throw InsufficientPositiveGaps("at least 3 positive samples are required");
  const double top = *std::max_element(samples.begin(), samples.end());
  std::vector<double> scaled, logs;
  for (double x : samples) {
    if (!(x > 0.0) || !std::isfinite(x))
      throw std::invalid_argument("Weibull samples must be positive and finite");
    scaled.push_back(x / top);
    logs.push_back(std::log(x / top));
  }
  if (std::all_of(scaled.begin(), scaled.end(), [&](double v) { return v == scaled.front(); }))
    throw std::invalid_argument("Weibull fit needs at least two distinct samples");

  ShapeScore score{scaled, logs, std::accumulate(logs.begin(), logs.end(), 0.0) / logs.size()};

  // The score increases with beta: negative near 0, positive for large beta.
  double lo = 1e-3, hi = 1.0;
  while (score(hi) < 0.0) hi *= 2.0;
  while (score(lo) > 0.0) lo /= 2.0;

  std::uintmax_t iterations = 500;
  auto bracket = boost::math::tools::toms748_solve(
      score, lo, hi, [&](double a, double b) {
        return std::abs(b - a) <= 4 * std::numeric_limits<double>::epsilon() * std::abs(a) ||
               std::abs(score(0.5 * (a + b))) < 1e-12;
      },
      iterations);
  double beta = 0.5 * (bracket.first + bracket.second);
  if (std::abs(score(bracket.first)) < std::abs(score(beta))) beta = bracket.first;
  if (std::abs(score(bracket.second)) < std::abs(score(beta))) beta = bracket.second;

  double mean_pow = 0.0;
  for (double v : scaled) mean_pow += std::pow(v, beta);
  mean_pow /= static_cast<double>(scaled.size());

  WeibullFit fit;
  fit.shape = beta;
  fit.scale = top * std::pow(mean_pow, 1.0 / beta);
  fit.n = samples.size();
  return fit;
}

WeibullMoments weibull_moments(double shape, double scale) {
  if (!(shape > 0.0) || !(scale > 0.0))
    throw NonpositiveParameter("Weibull shape and scale must be positive");
  const double g1 = std::tgamma(1.0 + 1.0 / shape);
  const double g2 = std::tgamma(1.0 + 2.0 / shape);
  return {scale * g1, scale * std::sqrt(g2 - g1 * g1)};
}

double pearson(std::span<const double> x, std::span<const double> y) {
  if (x.size() != y.size()) throw std::invalid_argument("series lengths differ");
  if (x.size() < 2) return std::numeric_limits<double>::quiet_NaN();
  const double n = static_cast<double>(x.size());
  const double mx = std::accumulate(x.begin(), x.end(), 0.0) / n;
  const double my = std::accumulate(y.begin(), y.end(), 0.0) / n;
  double sxy = 0.0, sxx = 0.0, syy = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    sxy += (x[i] - mx) * (y[i] - my);
    sxx += (x[i] - mx) * (x[i] - mx);
    syy += (y[i] - my) * (y[i] - my);
  }
  if (sxx == 0.0 || syy == 0.0) return std::numeric_limits<double>::quiet_NaN();
  return sxy / std::sqrt(sxx * syy);
}

GapStats gap_stats(std::span<const double> gaps, std::span<const double> scales) {
  if (gaps.size() != scales.size()) throw std::invalid_argument("gaps and scales differ in length");
  for (double g : gaps)
    if (!std::isfinite(g)) throw std::invalid_argument("gaps must be finite");

  std::vector<double> positive;
  for (double g : gaps)
    if (g > kZeroGapThreshold) positive.push_back(g);
  if (positive.size() < 3)
    throw InsufficientPositiveGaps("only " + std::to_string(positive.size()) +
                                   " gaps above the zero threshold");

  GapStats s;
  s.n = gaps.size();
  const double n = static_cast<double>(gaps.size());
  s.mean = std::accumulate(gaps.begin(), gaps.end(), 0.0) / n;
  double ss = 0.0;
  for (double g : gaps) ss += (g - s.mean) * (g - s.mean);
  s.stddev = std::sqrt(ss / (n - 1.0));

  const auto fit = weibull_mle(positive);
  s.weibull_beta = fit.shape;
  s.weibull_eta = fit.scale;
  s.fitted = positive.size();
  s.excluded_zero_count = gaps.size() - positive.size();
  s.correlation_with_scale = pearson(scales, gaps);
  return s;
}

}  // namespace skillsched
