#pragma once

#include <Eigen/Dense>
#include <optional>
#include <vector>

#include "specband/generator.hpp"
#include "specband/kernel.hpp"

namespace specband {

using CVector = Eigen::VectorXcd;

enum class GridRule { Midpoint, BesselZeros };
enum class Domain { Time, Frequency };

// Conjugate time and frequency quadrature grids.
struct GridPair {
  double X = 0.0;
  int N = 0;
  GridRule rule = GridRule::Midpoint;
  std::vector<double> time_nodes;
  std::vector<double> time_weights;
  std::vector<double> freq_nodes;
  std::vector<double> freq_weights;
  double Xi = 0.0;

  const std::vector<double>& nodes(Domain d) const { return d == Domain::Time ? time_nodes : freq_nodes; }
  const std::vector<double>& weights(Domain d) const { return d == Domain::Time ? time_weights : freq_weights; }
  double extent(Domain d) const { return d == Domain::Time ? X : Xi; }
};

// Midpoint for the trigonometric kernels, Bessel zeros for Hankel.
GridRule default_rule(const KernelSpec& spec);

GridPair build_grid(const KernelSpec& spec, double X, int N);
GridPair build_grid(const KernelSpec& spec, double X, int N, GridRule rule);

struct Signal {
  CVector values;
  Domain domain = Domain::Time;
  std::optional<Generator> generator;
};

double weighted_norm(const CVector& values, const std::vector<double>& weights, double p = 2.0);
std::complex<double> weighted_inner(const Signal& f, const Signal& g, const GridPair& grid);
double norm(const Signal& f, const GridPair& grid, double p = 2.0);

double region_measure(const Region& region, const KernelSpec& spec);
// Sum of quadrature weights over the nodes belonging to the region.
double discrete_measure(const Region& region, const GridPair& grid, Domain domain);
// 0/1 membership vector over the nodes of the chosen domain.
Eigen::VectorXd region_mask(const Region& region, const GridPair& grid, Domain domain);
void require_within_extent(const Region& region, const GridPair& grid, Domain domain);

// values_i = lambda^-a gen(node_i / lambda).
Signal sample_signal(const Generator& gen, double lambda, const GridPair& grid, const KernelSpec& spec,
                     Domain domain = Domain::Time);

struct DispersionSpec {
  double s = 1.0;
  double p = 2.0;
};

// (sum_i node_i^(p s) |f_i|^p weight_i)^(1/p).
double dispersion(const Signal& f, const DispersionSpec& d, const GridPair& grid, Domain domain);

// v = sqrt(weights) * values.
CVector symmetrize(const Signal& f, const GridPair& grid);
Signal desymmetrize(const CVector& v, const GridPair& grid, Domain domain);

}  // namespace specband
