#pragma once

#include <Eigen/Dense>
#include <optional>
#include <string>

#include "specband/grid.hpp"
#include "specband/kernel.hpp"

namespace specband {

using CMatrix = Eigen::MatrixXcd;

enum class OpTag { Transform, TimeLimit, FreqLimit, Multiplier, WaveletMultiplier, Restriction, Generic };

// Dense operator acting on symmetrized vectors v = sqrt(weights) * f.
struct OperatorMatrix {
  CMatrix entries;
  OpTag tag = OpTag::Generic;

  Eigen::Index size() const { return entries.rows(); }
  OperatorMatrix adjoint() const { return {entries.adjoint(), OpTag::Generic}; }
  OperatorMatrix operator*(const OperatorMatrix& rhs) const { return {entries * rhs.entries, OpTag::Generic}; }
};

enum class DefectNorm { Spectral, Frobenius };
enum class Direction { Forward, Inverse };

struct TransformBundle {
  KernelSpec spec;
  GridPair grid;
  OperatorMatrix A;
  double defect = 0.0;
  DefectNorm defect_norm = DefectNorm::Spectral;
};

TransformBundle build_transform(const KernelSpec& spec, const GridPair& grid,
                                DefectNorm defect_norm = DefectNorm::Spectral);

// ||A*A - I|| in the spectral norm, or its Frobenius upper bound.
double parseval_defect(const CMatrix& A, DefectNorm defect_norm);

// Warning text when the defect exceeds defect_max.
std::optional<std::string> defect_warning(const TransformBundle& bundle, double defect_max);

Signal apply_transform(const TransformBundle& bundle, const Signal& f, Direction direction);

OperatorMatrix limit_operator(const TransformBundle& bundle, const Region& region, Domain domain);
OperatorMatrix multiplier(const TransformBundle& bundle, const Signal& sigma);
OperatorMatrix wavelet_multiplier(const TransformBundle& bundle, const Signal& sigma, const Signal& phi,
                                  const Signal& psi);

// Test hook: scales the assembled transform without updating the recorded defect.
void corrupt_transform(TransformBundle& bundle, double scale);

}  // namespace specband
