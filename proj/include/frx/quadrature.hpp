#pragma once

#include <cmath>
#include <cstddef>
#include <vector>

#include <boost/math/special_functions/legendre.hpp>

namespace frx {

/// n-point Gauss-Legendre rule on [-1, 1], nodes ascending.
struct GaussLegendre {
  std::vector<double> nodes;
  std::vector<double> weights;

  explicit GaussLegendre(int n) {
    const auto positive = boost::math::legendre_p_zeros<double>(n);
    nodes.reserve(n);
    weights.reserve(n);
    auto weight = [n](double x) {
      const double dp = boost::math::legendre_p_prime<double>(n, x);
      return 2.0 / ((1.0 - x * x) * dp * dp);
    };
    // legendre_p_zeros returns the non-negative half, ascending, with 0
    // first when n is odd.
    for (auto it = positive.rbegin(); it != positive.rend(); ++it) {
      if (*it == 0.0) continue;
      nodes.push_back(-*it);
      weights.push_back(weight(*it));
    }
    for (double x : positive) {
      nodes.push_back(x);
      weights.push_back(weight(x));
    }
  }

  std::size_t size() const { return nodes.size(); }
};

/// Neumaier-compensated running sum; keeps quadrature totals independent of
/// cancellation between large terms.
class CompensatedSum {
 public:
  void add(double x) {
    const double t = sum_ + x;
    if (std::abs(sum_) >= std::abs(x)) {
      comp_ += (sum_ - t) + x;
    } else {
      comp_ += (x - t) + sum_;
    }
    sum_ = t;
  }
  double value() const { return sum_ + comp_; }

 private:
  double sum_ = 0.0;
  double comp_ = 0.0;
};

}  // namespace frx
