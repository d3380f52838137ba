#pragma once

#include <string>

namespace specband {

enum class KernelFamily { FourierCosine, FourierSine, Hankel };

// A transform family on the half-line with measure density density_coeff * x^(2a-1).
struct KernelSpec {
  KernelFamily family = KernelFamily::FourierCosine;
  double alpha = 0.0;
  double a = 0.5;
  double c_K = 0.0;
  double density_coeff = 1.0;
};

KernelSpec make_kernel(KernelFamily family, double alpha = 0.0);

// Accepts "cosine", "sine" or "hankel".
KernelSpec kernel_from_name(const std::string& name, double alpha = 0.0);
std::string family_name(KernelFamily family);

double kernel_value(const KernelSpec& spec, double x, double xi);
double measure_density(const KernelSpec& spec, double x);

}  // namespace specband
