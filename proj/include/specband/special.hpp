#pragma once

#include <vector>

namespace specband {

// Argument below which Bessel functions use the ascending series.
inline constexpr double kBesselSeriesLimit = 12.0;

// Bessel function of the first kind J_nu(z), nu >= -1/2, z >= 0.
double bessel_j(double nu, double z);

// Normalized Bessel function j_alpha(z) = 2^alpha Gamma(alpha+1) z^-alpha J_alpha(z),
// with j_alpha(0) = 1.
double normalized_bessel_j(double alpha, double z);

// First `count` positive zeros of J_nu, ascending.
std::vector<double> bessel_j_zeros(double nu, int count);

// Nodes and weights of the n-point Gauss-Legendre rule on [-1, 1].
struct GaussLegendre {
  std::vector<double> nodes;
  std::vector<double> weights;
};
const GaussLegendre& gauss_legendre(int n);

}  // namespace specband
