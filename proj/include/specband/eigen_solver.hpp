#pragma once

#include <Eigen/Dense>
#include <stdexcept>
#include <string>

namespace specband {

class NumericFailure : public std::runtime_error {
 public:
  explicit NumericFailure(const std::string& what) : std::runtime_error(what) {}
};

struct HermitianEigen {
  Eigen::VectorXd values;
  Eigen::MatrixXcd vectors;
};

// Householder tridiagonalization followed by implicit QL. The input is assumed Hermitian
// (only the lower triangle is read). Eigenpairs are returned unordered.
HermitianEigen hermitian_eigen(const Eigen::MatrixXcd& M, bool want_vectors, int max_iterations = 60);
Eigen::VectorXd hermitian_eigenvalues(const Eigen::MatrixXcd& M);

}  // namespace specband
