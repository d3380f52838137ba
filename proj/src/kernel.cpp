#include "specband/kernel.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

#include "specband/special.hpp"

namespace specband {

KernelSpec make_kernel(KernelFamily family, double alpha) {
  KernelSpec spec;
  spec.family = family;
  switch (family) {
    case KernelFamily::FourierCosine:
    case KernelFamily::FourierSine:
      spec.alpha = 0.0;
      spec.a = 0.5;
      spec.c_K = std::sqrt(2.0 / std::numbers::pi);
      spec.density_coeff = 1.0;
      break;
    case KernelFamily::Hankel:
      if (!std::isfinite(alpha) || alpha < -0.5 || alpha > 10.0)
        throw std::invalid_argument("hankel order must lie in [-1/2, 10]");
      spec.alpha = alpha;
      spec.a = alpha + 1.0;
      spec.c_K = 1.0;
      spec.density_coeff = 1.0 / (std::pow(2.0, alpha) * std::tgamma(alpha + 1.0));
      break;
  }
  return spec;
}

KernelSpec kernel_from_name(const std::string& name, double alpha) {
  if (name == "cosine") return make_kernel(KernelFamily::FourierCosine);
  if (name == "sine") return make_kernel(KernelFamily::FourierSine);
  if (name == "hankel") return make_kernel(KernelFamily::Hankel, alpha);
  throw std::invalid_argument("unknown kernel family '" + name + "'");
}

std::string family_name(KernelFamily family) {
  switch (family) {
    case KernelFamily::FourierCosine: return "cosine";
    case KernelFamily::FourierSine: return "sine";
    case KernelFamily::Hankel: return "hankel";
  }
  return "unknown";
}

double kernel_value(const KernelSpec& spec, double x, double xi) {
  if (!std::isfinite(x) || !std::isfinite(xi)) throw std::invalid_argument("kernel_value: non-finite input");
  if (x < 0.0 || xi < 0.0) throw std::invalid_argument("kernel_value: negative input");
  const double z = x * xi;
  switch (spec.family) {
    case KernelFamily::FourierCosine: return spec.c_K * std::cos(z);
    case KernelFamily::FourierSine: return spec.c_K * std::sin(z);
    case KernelFamily::Hankel: return normalized_bessel_j(spec.alpha, z);
  }
  return 0.0;
}

double measure_density(const KernelSpec& spec, double x) {
  if (!(x > 0.0) || !std::isfinite(x)) throw std::invalid_argument("measure_density: x must be positive");
  if (spec.a == 0.5) return spec.density_coeff;
  return spec.density_coeff * std::pow(x, 2.0 * spec.a - 1.0);
}

}  // namespace specband
