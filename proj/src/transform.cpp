#include "specband/transform.hpp"

#include <cmath>
#include <numbers>
#include <sstream>
#include <stdexcept>

#include "specband/eigen_solver.hpp"

namespace specband {

namespace {

// On the midpoint grid x_i xi_j = pi (2i+1)(2j+1) / (4N); reducing the integer phase
// modulo 8N keeps the trigonometric argument in [0, 2 pi).
CMatrix trig_matrix(const KernelSpec& spec, const GridPair& g) {
  const int N = g.N;
  const long long period = 8LL * N;
  const double scale = std::sqrt(2.0 / N);
  const bool sine = spec.family == KernelFamily::FourierSine;
  CMatrix A(N, N);
  for (int j = 0; j < N; ++j)
    for (int i = 0; i < N; ++i) {
      const long long m = (static_cast<long long>(2 * i + 1) * (2 * j + 1)) % period;
      const double angle = std::numbers::pi * static_cast<double>(m) / (4.0 * N);
      A(j, i) = scale * (sine ? std::sin(angle) : std::cos(angle));
    }
  return A;
}

CMatrix quadrature_matrix(const KernelSpec& spec, const GridPair& g) {
  const int N = g.N;
  CMatrix A(N, N);
  for (int j = 0; j < N; ++j)
    for (int i = 0; i < N; ++i)
      A(j, i) = std::sqrt(g.freq_weights[j] * g.time_weights[i]) *
                kernel_value(spec, g.time_nodes[i], g.freq_nodes[j]);
  return A;
}

void require_length(const Signal& f, const GridPair& grid, const char* what) {
  if (f.values.size() != grid.N) throw std::invalid_argument(std::string(what) + ": length mismatch");
  if (!f.values.allFinite()) throw std::invalid_argument(std::string(what) + ": non-finite values");
}

}  // namespace

double parseval_defect(const CMatrix& A, DefectNorm defect_norm) {
  CMatrix B = A.adjoint() * A;
  B -= CMatrix::Identity(A.cols(), A.cols());
  if (defect_norm == DefectNorm::Frobenius) return B.norm();
  B = 0.5 * (B + B.adjoint()).eval();
  const Eigen::VectorXd ev = hermitian_eigenvalues(B);
  return ev.cwiseAbs().maxCoeff();
}

TransformBundle build_transform(const KernelSpec& spec, const GridPair& grid, DefectNorm defect_norm) {
  TransformBundle b;
  b.spec = spec;
  b.grid = grid;
  b.defect_norm = defect_norm;
  const bool trig = spec.family != KernelFamily::Hankel && grid.rule == GridRule::Midpoint;
  b.A.entries = trig ? trig_matrix(spec, grid) : quadrature_matrix(spec, grid);
  b.A.tag = OpTag::Transform;
  b.defect = parseval_defect(b.A.entries, defect_norm);
  return b;
}

std::optional<std::string> defect_warning(const TransformBundle& bundle, double defect_max) {
  if (bundle.defect <= defect_max) return std::nullopt;
  std::ostringstream os;
  os.precision(6);
  os << "parseval defect " << bundle.defect << " exceeds defect_max " << defect_max;
  return os.str();
}

Signal apply_transform(const TransformBundle& bundle, const Signal& f, Direction direction) {
  require_length(f, bundle.grid, "apply_transform");
  const Domain from = direction == Direction::Forward ? Domain::Time : Domain::Frequency;
  const Domain to = direction == Direction::Forward ? Domain::Frequency : Domain::Time;
  if (f.domain != from) throw std::invalid_argument("apply_transform: signal lives on the wrong grid");
  const CVector v = symmetrize(f, bundle.grid);
  const CVector r = direction == Direction::Forward ? CVector(bundle.A.entries * v)
                                                    : CVector(bundle.A.entries.adjoint() * v);
  return desymmetrize(r, bundle.grid, to);
}

OperatorMatrix limit_operator(const TransformBundle& bundle, const Region& region, Domain domain) {
  const Eigen::VectorXd mask = region_mask(region, bundle.grid, domain);
  const int N = bundle.grid.N;
  if (domain == Domain::Time) {
    OperatorMatrix op{CMatrix::Zero(N, N), OpTag::TimeLimit};
    op.entries.diagonal() = mask.cast<std::complex<double>>();
    return op;
  }
  const CMatrix& A = bundle.A.entries;
  CMatrix masked = A;
  for (int j = 0; j < N; ++j)
    if (mask[j] == 0.0) masked.row(j).setZero();
  return {A.adjoint() * masked, OpTag::FreqLimit};
}

OperatorMatrix multiplier(const TransformBundle& bundle, const Signal& sigma) {
  require_length(sigma, bundle.grid, "multiplier");
  const CMatrix& A = bundle.A.entries;
  const CMatrix scaled = sigma.values.asDiagonal() * A;
  return {A.adjoint() * scaled, OpTag::Multiplier};
}

OperatorMatrix wavelet_multiplier(const TransformBundle& bundle, const Signal& sigma, const Signal& phi,
                                  const Signal& psi) {
  require_length(sigma, bundle.grid, "wavelet_multiplier");
  require_length(phi, bundle.grid, "wavelet_multiplier");
  require_length(psi, bundle.grid, "wavelet_multiplier");
  const double nphi = norm(phi, bundle.grid);
  const double npsi = norm(psi, bundle.grid);
  if (std::abs(nphi - 1.0) > 1e-8)
    throw std::invalid_argument("wavelet_multiplier: ||phi||_2 = " + std::to_string(nphi) + " is not 1");
  if (std::abs(npsi - 1.0) > 1e-8)
    throw std::invalid_argument("wavelet_multiplier: ||psi||_2 = " + std::to_string(npsi) + " is not 1");
  const CMatrix& A = bundle.A.entries;
  CMatrix right = sigma.values.asDiagonal() * A;
  right = right * phi.values.asDiagonal();
  CMatrix out = A.adjoint() * right;
  out = psi.values.conjugate().asDiagonal() * out;
  return {out, OpTag::WaveletMultiplier};
}

void corrupt_transform(TransformBundle& bundle, double scale) { bundle.A.entries *= scale; }

}  // namespace specband
