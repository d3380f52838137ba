#pragma once

#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "specband/spectral.hpp"

namespace specband {

struct Defects {
  double eps1_l2 = 0.0;
  double eps1_l1 = 0.0;
  double eps2 = 0.0;
  std::optional<double> loc;
};

Defects defects(const TransformBundle& bundle, const Signal& f, const Region& S, const Region& Sigma,
                const OperatorMatrix* L = nullptr);

struct InequalityRecord {
  std::string id;
  std::string signal;
  std::string relation;  // ">=", "<=", "<" or "=="
  double lhs = 0.0;
  double rhs = 0.0;
  std::optional<double> ratio;    // lhs / rhs when rhs > 0
  std::optional<bool> satisfied;  // explicit-constant entries only
  bool applicable = true;
  std::string note;
  std::vector<std::pair<std::string, double>> inputs;
};

struct CheckInputs {
  std::string signal_id;
  Signal f;
  Region S;
  Region Sigma;
  double s = 1.0;
  double beta = 1.0;
  double eps = 0.5;  // interpolation exponent of LOCAL-3 and HEISNEW-3
  double p = 2.0;    // Schatten index of SCH-P and SCH-INF-P
  // Class parameters; when absent the measured defects of f are used.
  std::optional<double> eps1;
  std::optional<double> eps2;
  // Frequency sets of the two wavelet multipliers; (Sigma, Sigma) when absent.
  std::optional<std::pair<Region, Region>> symbol_sets;
  std::optional<Signal> sigma;
  std::optional<Signal> phi;
  std::optional<Signal> psi;
  std::vector<Signal> family;
};

const std::vector<std::string>& catalog_ids();
bool is_asserted(const std::string& id);

InequalityRecord check(const TransformBundle& bundle, const std::string& id, const CheckInputs& inputs);

struct AuditTask {
  std::string id;
  const CheckInputs* inputs = nullptr;
};

// Evaluates the tasks on up to `threads` workers; the result is sorted by (id, signal).
std::vector<InequalityRecord> run_audit(const TransformBundle& bundle, const std::vector<AuditTask>& tasks,
                                        int threads = 1);

struct DilateRecord {
  int n = 0;
  double disp_x = 0.0;
  double disp_xi = 0.0;
  double product = 0.0;
  double norm = 0.0;
  std::vector<double> inner_products;  // |<f_n, f_m>| for m < n
};

struct DilatedSequence {
  std::vector<DilateRecord> rows;
  Eigen::MatrixXd gram;            // |<f_n, f_m>|
  double product_variation = 0.0;  // max_n |product_n / product_0 - 1|
  double gram_deviation = 0.0;     // max |gram - I|
};

// Dilates f_n = D_{2^-n} f of a bump supported in [1, 2], normalized so that ||f_0|| = 1.
DilatedSequence dilated_sequence(const TransformBundle& bundle, const Generator& bump, int n_max, double s);

struct ShapiroResult {
  int N = 0;
  double sum = 0.0;
  std::vector<double> per_signal;
};

ShapiroResult shapiro_sum(const std::vector<Signal>& signals, const TransformBundle& bundle, double s);

struct ComparisonResult {
  double eps1 = 0.0;
  double eps2 = 0.0;
  double loc_fe = 0.0;  // ||F_Sigma E_S f - f|| / ||f||
  double loc_l = 0.0;   // ||L f - f|| / ||f||
  double gap = 0.0;     // <f - L f, f> / ||f||^2
  double sqrt_gap = 0.0;
  bool hypothesis = false;  // eps1 <= eps_pair.first and eps2 <= eps_pair.second
  std::optional<bool> pass_i;
  bool pass_ii = false;
  bool pass_iii = false;
  std::optional<bool> pass_iv;

  bool all_pass() const { return pass_i.value_or(true) && pass_ii && pass_iii && pass_iv.value_or(true); }
};

ComparisonResult comparison_chain(const TransformBundle& bundle, const Signal& f, const Region& S,
                                  const Region& Sigma, std::pair<double, double> eps_pair);

// Modified Gram-Schmidt with one reorthogonalization pass in the weighted inner product.
std::vector<Signal> orthonormalize(const std::vector<Signal>& signals, const GridPair& grid);

}  // namespace specband
