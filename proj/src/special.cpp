#include "specband/special.hpp"

#include <cmath>
#include <map>
#include <mutex>
#include <numbers>
#include <stdexcept>

namespace specband {

namespace {

// Sum of (-z^2/4)^k / (k! (nu+1)_k).
double reduced_series(double nu, double z) {
  const double q = -0.25 * z * z;
  double term = 1.0;
  double sum = 1.0;
  for (int k = 1; k < 200; ++k) {
    term *= q / (k * (nu + k));
    sum += term;
    if (std::abs(term) <= 1e-17 * std::abs(sum) && k > 0.5 * z) break;
  }
  return sum;
}

double series_j(double nu, double z) {
  return std::pow(0.5 * z, nu) / std::tgamma(nu + 1.0) * reduced_series(nu, z);
}

// Hankel asymptotic expansion, valid for z well beyond |nu|.
double asymptotic_j(double nu, double z) {
  const double mu = 4.0 * nu * nu;
  double p = 1.0;
  double q = 0.0;
  double term = 1.0;
  double last = std::numeric_limits<double>::infinity();
  for (int k = 1; k < 80; ++k) {
    const double odd = 2.0 * k - 1.0;
    const double next = term * (mu - odd * odd) / (k * 8.0 * z);
    if (std::abs(next) >= last) break;
    last = std::abs(next);
    term = next;
    switch (k % 4) {
      case 1: q += term; break;
      case 2: p -= term; break;
      case 3: q -= term; break;
      default: p += term; break;
    }
    if (term == 0.0 || std::abs(term) < 1e-17) break;
  }
  const double chi = z - (0.5 * nu + 0.25) * std::numbers::pi;
  return std::sqrt(2.0 / (std::numbers::pi * z)) * (p * std::cos(chi) - q * std::sin(chi));
}

double large_argument_j(double nu, double z) {
  const double shift = std::floor(nu + 0.5);
  const double nu0 = nu - shift;
  double prev = asymptotic_j(nu0, z);
  if (shift == 0.0) return prev;
  double curr = asymptotic_j(nu0 + 1.0, z);
  for (double m = nu0 + 1.0; m < nu - 0.5; m += 1.0) {
    const double next = (2.0 * m / z) * curr - prev;
    prev = curr;
    curr = next;
  }
  return curr;
}

void check_order(double nu, double z) {
  if (!std::isfinite(nu) || !std::isfinite(z)) throw std::invalid_argument("bessel: non-finite argument");
  if (nu < -0.5) throw std::invalid_argument("bessel: order below -1/2");
  if (z < 0.0) throw std::invalid_argument("bessel: negative argument");
}

}  // namespace

double bessel_j(double nu, double z) {
  check_order(nu, z);
  if (z == 0.0) {
    if (nu == 0.0) return 1.0;
    if (nu > 0.0) return 0.0;
    return std::numeric_limits<double>::infinity();
  }
  if (z <= kBesselSeriesLimit) return series_j(nu, z);
  return large_argument_j(nu, z);
}

double normalized_bessel_j(double alpha, double z) {
  check_order(alpha, z);
  if (z <= kBesselSeriesLimit) return reduced_series(alpha, z);
  return std::tgamma(alpha + 1.0) * std::pow(2.0 / z, alpha) * large_argument_j(alpha, z);
}

std::vector<double> bessel_j_zeros(double nu, int count) {
  if (count < 0) throw std::invalid_argument("bessel_j_zeros: negative count");
  check_order(nu, 0.0);
  std::vector<double> zeros;
  zeros.reserve(count);
  const double step = 0.5;
  double lo = 1e-3;
  double flo = bessel_j(nu, lo);
  while (static_cast<int>(zeros.size()) < count) {
    const double hi = lo + step;
    const double fhi = bessel_j(nu, hi);
    if (flo == 0.0) {
      zeros.push_back(lo);
    } else if ((flo < 0.0) != (fhi < 0.0)) {
      double a = lo, b = hi, fa = flo;
      for (int it = 0; it < 200 && b - a > 4e-16 * b; ++it) {
        const double m = 0.5 * (a + b);
        const double fm = bessel_j(nu, m);
        if ((fm < 0.0) == (fa < 0.0)) {
          a = m;
          fa = fm;
        } else {
          b = m;
        }
      }
      double x = 0.5 * (a + b);
      for (int it = 0; it < 2; ++it) {
        const double fx = bessel_j(nu, x);
        const double dfx = (nu / x) * fx - bessel_j(nu + 1.0, x);
        const double nx = x - fx / dfx;
        if (nx > lo && nx < hi) x = nx;
      }
      zeros.push_back(x);
    }
    lo = hi;
    flo = fhi;
  }
  return zeros;
}

const GaussLegendre& gauss_legendre(int n) {
  if (n < 1) throw std::invalid_argument("gauss_legendre: n < 1");
  static std::mutex mutex;
  static std::map<int, GaussLegendre> cache;
  std::lock_guard<std::mutex> lock(mutex);
  auto it = cache.find(n);
  if (it != cache.end()) return it->second;
  GaussLegendre rule;
  rule.nodes.resize(n);
  rule.weights.resize(n);
  for (int i = 0; i < n; ++i) {
    double x = std::cos(std::numbers::pi * (i + 0.75) / (n + 0.5));
    double dp = 1.0;
    for (int it = 0; it < 100; ++it) {
      double p0 = 1.0, p1 = x;
      for (int k = 2; k <= n; ++k) {
        const double p2 = ((2.0 * k - 1.0) * x * p1 - (k - 1.0) * p0) / k;
        p0 = p1;
        p1 = p2;
      }
      dp = n * (x * p1 - p0) / (x * x - 1.0);
      const double dx = p1 / dp;
      x -= dx;
      if (std::abs(dx) < 1e-16) break;
    }
    rule.nodes[n - 1 - i] = x;
    rule.weights[n - 1 - i] = 2.0 / ((1.0 - x * x) * dp * dp);
  }
  return cache.emplace(n, std::move(rule)).first->second;
}

}  // namespace specband
