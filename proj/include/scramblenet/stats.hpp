#pragma once

// Sample mean / standard error and binomial tolerance helpers.

#include <cmath>
#include <cstddef>
#include <vector>

namespace scramblenet {

struct SampleStats {
  double mean = 0.0;
  double stderr_ = 0.0;
  double stddev = 0.0;
  std::size_t n = 0;
};

inline SampleStats sample_stats(const std::vector<double>& xs) {
  SampleStats s;
  s.n = xs.size();
  if (xs.empty()) return s;
  double m = 0.0;
  double m2 = 0.0;
  std::size_t k = 0;
  for (double x : xs) {
    ++k;
    const double delta = x - m;
    m += delta / static_cast<double>(k);
    m2 += delta * (x - m);
  }
  s.mean = m;
  if (s.n > 1) {
    s.stddev = std::sqrt(m2 / static_cast<double>(s.n - 1));
    s.stderr_ = s.stddev / std::sqrt(static_cast<double>(s.n));
  }
  return s;
}

/// |mean - target| <= k * stderr.
inline bool within_sigma(const SampleStats& s, double target, double k = 3.0) {
  return std::abs(s.mean - target) <= k * s.stderr_;
}

/// Largest violation fraction accepted for a nominal rate p over n trials:
/// p + k sqrt(p (1 - p) / n).
inline double binomial_ceiling(double p, std::size_t n, double k = 3.0) {
  return p + k * std::sqrt(p * (1.0 - p) / static_cast<double>(n));
}

}  // namespace scramblenet
