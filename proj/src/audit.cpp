#include "specband/audit.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <complex>
#include <functional>
#include <map>
#include <mutex>
#include <stdexcept>
#include <thread>

namespace specband {

namespace {

using Complex = std::complex<double>;

const std::vector<std::string> kAsserted = {"DS-L2",   "DS-L1L2", "DS-L1L2-S", "DS-L1L2-SIGMA", "WAVELET-DS",
                                            "SCH-INF", "SCH-INF-L1", "SCH-INF-P", "SCH-2",        "SCH-1",
                                            "SCH-P",   "TRACE-P", "TH1",       "BDF"};
const std::vector<std::string> kReported = {"HEIS",      "HEIS-L1",   "CARLSON",   "NASH",      "LOCAL-1",
                                            "LOCAL-2",   "LOCAL-3",   "THB-1",     "THB-2",     "THB-3",
                                            "THB-4",     "HEISNEW-1", "HEISNEW-2", "HEISNEW-3", "DISNORML12",
                                            "CF"};

double slack(const TransformBundle& bundle) { return 1e-6 + 4.0 * bundle.defect; }

double sup_abs(const CVector& v) { return v.size() == 0 ? 0.0 : v.cwiseAbs().maxCoeff(); }

bool within(const Region& region, const GridPair& grid, Domain domain) {
  return region.sup() <= grid.extent(domain) * (1.0 + 1e-12);
}

CVector masked(const CVector& v, const Eigen::VectorXd& mask, bool keep_inside) {
  CVector out = v;
  for (Eigen::Index i = 0; i < v.size(); ++i)
    if ((mask[i] != 0.0) != keep_inside) out[i] = 0.0;
  return out;
}

// F_Sigma^c applied to a symmetrized vector.
CVector freq_outside(const TransformBundle& bundle, const CVector& v, const Region& Sigma) {
  const Eigen::VectorXd mf = region_mask(Sigma, bundle.grid, Domain::Frequency);
  const CVector Av = bundle.A.entries * v;
  return bundle.A.entries.adjoint() * masked(Av, mf, false);
}

CVector freq_inside(const TransformBundle& bundle, const CVector& v, const Region& Sigma) {
  const Eigen::VectorXd mf = region_mask(Sigma, bundle.grid, Domain::Frequency);
  const CVector Av = bundle.A.entries * v;
  return bundle.A.entries.adjoint() * masked(Av, mf, true);
}

// Symmetrized wavelet multiplier P_{chi_set, phi, psi} applied to v.
CVector wavelet_apply(const TransformBundle& bundle, const CVector& v, const Region& set, const Signal& phi,
                      const Signal& psi) {
  const Eigen::VectorXd mf = region_mask(set, bundle.grid, Domain::Frequency);
  CVector w = phi.values.cwiseProduct(v);
  w = masked(bundle.A.entries * w, mf, true);
  return psi.values.conjugate().cwiseProduct(bundle.A.entries.adjoint() * w);
}

struct Builder {
  InequalityRecord rec;
  const TransformBundle& bundle;

  Builder(const TransformBundle& b, const std::string& id, const CheckInputs& in, std::string relation)
      : bundle(b) {
    rec.id = id;
    rec.signal = in.signal_id;
    rec.relation = std::move(relation);
  }

  void echo(const std::string& key, double value) { rec.inputs.emplace_back(key, value); }

  InequalityRecord not_applicable(const std::string& why) {
    rec.applicable = false;
    rec.satisfied.reset();
    rec.ratio.reset();
    rec.note = why;
    return rec;
  }

  InequalityRecord finish(double lhs, double rhs, bool asserted) {
    rec.lhs = lhs;
    rec.rhs = rhs;
    if (rhs > 0.0 && std::isfinite(rhs) && std::isfinite(lhs)) rec.ratio = lhs / rhs;
    if (!asserted) return rec;
    const double tol = slack(bundle);
    if (rec.relation == ">=")
      rec.satisfied = lhs >= rhs * (1.0 - tol);
    else if (rec.relation == "<=")
      rec.satisfied = lhs <= rhs * (1.0 + tol);
    else if (rec.relation == "<")
      rec.satisfied = lhs < rhs * (1.0 + tol);
    return rec;
  }
};

struct SignalData {
  double n1 = 0.0, n2 = 0.0;
  Defects d;
  Signal Tf;
};

SignalData signal_data(const TransformBundle& bundle, const CheckInputs& in, bool need_regions) {
  SignalData sd;
  sd.n1 = norm(in.f, bundle.grid, 1.0);
  sd.n2 = norm(in.f, bundle.grid, 2.0);
  sd.Tf = apply_transform(bundle, in.f, Direction::Forward);
  if (need_regions) sd.d = defects(bundle, in.f, in.S, in.Sigma);
  return sd;
}

double disp_x(const TransformBundle& b, const Signal& f, double s, double p) {
  return dispersion(f, {s, p}, b.grid, Domain::Time);
}

double disp_xi(const TransformBundle& b, const Signal& Tf, double beta) {
  return dispersion(Tf, {beta, 2.0}, b.grid, Domain::Frequency);
}

bool regions_ok(const TransformBundle& b, const CheckInputs& in) {
  return within(in.S, b.grid, Domain::Time) && within(in.Sigma, b.grid, Domain::Frequency);
}

bool is_zero(const Signal& f) { return f.values.size() == 0 || f.values.cwiseAbs().maxCoeff() == 0.0; }

// Class parameters: supplied values when given, measured defects otherwise; false if f is outside the class.
bool class_eps(const CheckInputs& in, double measured1, double measured2, double& e1, double& e2) {
  e1 = in.eps1.value_or(measured1);
  e2 = in.eps2.value_or(measured2);
  return measured1 <= e1 * (1.0 + 1e-12) + 1e-15 && measured2 <= e2 * (1.0 + 1e-12) + 1e-15;
}

InequalityRecord check_ds(const TransformBundle& b, const std::string& id, const CheckInputs& in) {
  Builder r(b, id, in, ">=");
  if (is_zero(in.f)) return r.not_applicable("zero signal");
  if (!regions_ok(b, in)) return r.not_applicable("region exceeds grid extent");
  const SignalData sd = signal_data(b, in, true);
  const double c2 = b.spec.c_K * b.spec.c_K;
  const double muS = discrete_measure(in.S, b.grid, Domain::Time);
  const double muSigma = discrete_measure(in.Sigma, b.grid, Domain::Frequency);
  r.echo("mu_S", muS);
  r.echo("mu_Sigma", muSigma);
  r.echo("mu_S_exact", region_measure(in.S, b.spec));
  r.echo("mu_Sigma_exact", region_measure(in.Sigma, b.spec));
  double e1 = 0.0, e2 = 0.0;
  const bool l1 = id != "DS-L2";
  if (!class_eps(in, l1 ? sd.d.eps1_l1 : sd.d.eps1_l2, sd.d.eps2, e1, e2))
    return r.not_applicable("signal outside the concentration class");
  r.echo("eps1", e1);
  r.echo("eps2", e2);
  if (id == "DS-L2") {
    if (!(e1 * e1 + e2 * e2 < 1.0)) return r.not_applicable("eps1^2 + eps2^2 >= 1");
    const double t = 1.0 - std::sqrt(e1 * e1 + e2 * e2);
    return r.finish(muS * muSigma, t * t / c2, true);
  }
  if (!(e1 < 1.0 && e2 < 1.0)) return r.not_applicable("eps outside [0, 1)");
  const double q = sd.n1 * sd.n1 / (sd.n2 * sd.n2);
  if (id == "DS-L1L2-S") return r.finish(muS, q * (1.0 - e1) * (1.0 - e1), true);
  if (id == "DS-L1L2-SIGMA") return r.finish(muSigma, (1.0 - e2 * e2) / (c2 * q), true);
  return r.finish(muS * muSigma, (1.0 - e1) * (1.0 - e1) * (1.0 - e2 * e2) / c2, true);
}

InequalityRecord check_wavelet_ds(const TransformBundle& b, const CheckInputs& in) {
  Builder r(b, "WAVELET-DS", in, ">=");
  if (is_zero(in.f)) return r.not_applicable("zero signal");
  if (!in.phi || !in.psi) return r.not_applicable("windows not supplied");
  const auto [set1, set2] = in.symbol_sets.value_or(std::make_pair(in.Sigma, in.Sigma));
  if (!within(set1, b.grid, Domain::Frequency) || !within(set2, b.grid, Domain::Frequency))
    return r.not_applicable("region exceeds grid extent");
  const double nphi = norm(*in.phi, b.grid), npsi = norm(*in.psi, b.grid);
  if (std::abs(nphi - 1.0) > 1e-8 || std::abs(npsi - 1.0) > 1e-8) return r.not_applicable("windows not unit norm");
  const double window_sup = sup_abs(in.phi->values) * sup_abs(in.psi->values);
  r.echo("window_sup", window_sup);
  if (window_sup > 1.0 + 1e-12) return r.not_applicable("||phi||_inf ||psi||_inf > 1");
  const CVector v = symmetrize(in.f, b.grid);
  const double nv = v.norm();
  const double m1 = (wavelet_apply(b, v, set1, *in.phi, *in.psi) - v).norm() / nv;
  const double m2 = (wavelet_apply(b, v, set2, *in.phi, *in.psi) - v).norm() / nv;
  double e1 = 0.0, e2 = 0.0;
  if (!class_eps(in, m1, m2, e1, e2)) return r.not_applicable("signal outside the localization class");
  r.echo("eps1", e1);
  r.echo("eps2", e2);
  if (!(e1 + e2 < 1.0)) return r.not_applicable("eps1 + eps2 >= 1");
  const double mu1 = discrete_measure(set1, b.grid, Domain::Frequency);
  const double mu2 = discrete_measure(set2, b.grid, Domain::Frequency);
  r.echo("mu_1", mu1);
  r.echo("mu_2", mu2);
  const double c4 = std::pow(b.spec.c_K, 4);
  return r.finish(mu1 * mu2, (1.0 - e1 - e2) / c4, true);
}

InequalityRecord check_schatten(const TransformBundle& b, const std::string& id, const CheckInputs& in) {
  Builder r(b, id, in, id == "TRACE-P" ? "==" : "<=");
  if (!in.sigma || !in.phi || !in.psi) return r.not_applicable("symbol or windows not supplied");
  const Signal& sigma = *in.sigma;
  const Signal& phi = *in.phi;
  const Signal& psi = *in.psi;
  if (std::abs(norm(phi, b.grid) - 1.0) > 1e-8 || std::abs(norm(psi, b.grid) - 1.0) > 1e-8)
    return r.not_applicable("windows not unit norm");
  const OperatorMatrix P = wavelet_multiplier(b, sigma, phi, psi);
  const double c = b.spec.c_K;
  const double window_sup = sup_abs(phi.values) * sup_abs(psi.values);
  const double sig_inf = sup_abs(sigma.values);
  const double sig1 = norm(sigma, b.grid, 1.0);
  r.echo("window_sup", window_sup);
  r.echo("sigma_inf", sig_inf);
  r.echo("sigma_1", sig1);

  if (id == "TRACE-P") {
    const Complex tr = P.entries.trace();
    const auto& x = b.grid.time_nodes;
    const auto& w = b.grid.time_weights;
    const auto& xi = b.grid.freq_nodes;
    const auto& u = b.grid.freq_weights;
    Complex rhs = 0.0;
    double scale = 0.0;
    for (int j = 0; j < b.grid.N; ++j) {
      if (sigma.values[j] == 0.0) continue;
      for (int i = 0; i < b.grid.N; ++i) {
        const double k = kernel_value(b.spec, x[i], xi[j]);
        const Complex term = sigma.values[j] * u[j] * w[i] * std::conj(psi.values[i]) * phi.values[i] * k * k;
        rhs += term;
        scale += std::abs(term);
      }
    }
    r.echo("trace_imag", tr.imag());
    r.finish(tr.real(), rhs.real(), false);
    r.rec.satisfied = std::abs(tr - rhs) <= 1e-10 * std::max(1.0, scale);
    return r.rec;
  }

  const double p = in.p;
  if (id == "SCH-INF-P" || id == "SCH-P") {
    if (!(p >= 1.0)) return r.not_applicable("p < 1");
    r.echo("p", p);
  }
  std::vector<double> ps = {kInfinity, 1.0, 2.0};
  if (std::isfinite(p) && p >= 1.0) ps.push_back(p);
  const SchattenReport rep = schatten(P, ps);
  const double c2 = c * c;
  if (id == "SCH-INF") return r.finish(rep.norm(kInfinity), window_sup * sig_inf, true);
  if (id == "SCH-INF-L1") return r.finish(rep.norm(kInfinity), c2 * sig1, true);
  if (id == "SCH-2") return r.finish(rep.norm(2.0), c2 * sig1, true);
  if (id == "SCH-1") return r.finish(rep.norm(1.0), c2 * sig1, true);
  const double lhs = std::isinf(p) ? rep.norm(kInfinity) : rep.norm(p);
  const double sigp = std::isinf(p) ? sig_inf : norm(sigma, b.grid, p);
  const double inv_p = std::isinf(p) ? 0.0 : 1.0 / p;
  r.echo("sigma_p", sigp);
  if (id == "SCH-INF-P") {
    if (window_sup > 1.0 + 1e-12) return r.not_applicable("||phi||_inf ||psi||_inf > 1");
    return r.finish(lhs, std::pow(c, 2.0 * inv_p) * sigp, true);
  }
  return r.finish(lhs, std::pow(c, 2.0 * inv_p) * std::pow(window_sup, 1.0 - inv_p) * sigp, true);
}

InequalityRecord check_th1(const TransformBundle& b, const CheckInputs& in) {
  Builder r(b, "TH1", in, "<");
  if (in.family.empty()) return r.not_applicable("family not supplied");
  if (!regions_ok(b, in)) return r.not_applicable("region exceeds grid extent");
  const std::size_t n = in.family.size();
  double dev = 0.0;
  for (std::size_t k = 0; k < n; ++k)
    for (std::size_t m = 0; m < n; ++m)
      dev = std::max(dev, std::abs(weighted_inner(in.family[k], in.family[m], b.grid) - (k == m ? 1.0 : 0.0)));
  r.echo("gram_deviation", dev);
  if (dev > 1e-6) return r.not_applicable("family not orthonormal");
  double m1 = 0.0, m2 = 0.0;
  for (const Signal& f : in.family) {
    const Defects d = defects(b, f, in.S, in.Sigma);
    m1 = std::max(m1, d.eps1_l2);
    m2 = std::max(m2, d.eps2);
  }
  double e1 = 0.0, e2 = 0.0;
  if (!class_eps(in, m1, m2, e1, e2)) return r.not_applicable("family outside the concentration class");
  r.echo("eps1", e1);
  r.echo("eps2", e2);
  if (!(2.0 * e1 + e2 < 1.0)) return r.not_applicable("2 eps1 + eps2 >= 1");
  const double muS = discrete_measure(in.S, b.grid, Domain::Time);
  const double muSigma = discrete_measure(in.Sigma, b.grid, Domain::Frequency);
  r.echo("mu_S", muS);
  r.echo("mu_Sigma", muSigma);
  const double c2 = b.spec.c_K * b.spec.c_K;
  return r.finish(static_cast<double>(n), c2 * muS * muSigma / (1.0 - 2.0 * e1 - e2), true);
}

InequalityRecord check_bdf(const TransformBundle& b, const CheckInputs& in) {
  Builder r(b, "BDF", in, "<=");
  if (is_zero(in.f)) return r.not_applicable("zero signal");
  if (!(in.s > 0.0)) return r.not_applicable("s <= 0");
  const double n2 = norm(in.f, b.grid);
  const Signal Tf = apply_transform(b, in.f, Direction::Forward);
  const double A1 = std::pow(disp_x(b, in.f, in.s, 2.0) / n2, 1.0 / in.s);
  const double A2 = std::pow(disp_xi(b, Tf, in.s) / n2, 1.0 / in.s);
  const double grow = std::pow(4.0, 1.0 / in.s);
  const double r1 = grow * A1, r2 = grow * A2;
  r.echo("s", in.s);
  r.echo("A1", A1);
  r.echo("A2", A2);
  if (!(r1 > 0.0) || !(r2 > 0.0)) return r.not_applicable("degenerate dispersion");
  const Region B1 = Region::interval(0.0, std::min(r1, b.grid.X));
  const Region B2 = Region::interval(0.0, std::min(r2, b.grid.Xi));
  const Defects d = defects(b, in.f, B1, B2);
  r.echo("eps1", d.eps1_l2);
  r.echo("eps2", d.eps2);
  return r.finish(std::max(d.eps1_l2, d.eps2), 0.25, true);
}

InequalityRecord check_reported(const TransformBundle& b, const std::string& id, const CheckInputs& in) {
  const bool upper = id == "CARLSON" || id == "NASH" || id.rfind("LOCAL", 0) == 0;
  Builder r(b, id, in, upper ? "<=" : ">=");
  if (is_zero(in.f)) return r.not_applicable("zero signal");
  const double a = b.spec.a, s = in.s, beta = in.beta, eps = in.eps;
  r.echo("s", s);
  r.echo("beta", beta);
  if (!(s > 0.0) || !(beta > 0.0)) return r.not_applicable("s, beta must be positive");
  const bool regional = !(id == "HEIS" || id == "HEIS-L1" || id == "CARLSON" || id == "NASH");
  if (regional && !regions_ok(b, in)) return r.not_applicable("region exceeds grid extent");
  const SignalData sd = signal_data(b, in, regional);
  const double n1 = sd.n1, n2 = sd.n2;
  const double x2 = disp_x(b, in.f, s, 2.0);
  const double x1 = disp_x(b, in.f, s, 1.0);
  const double xi2 = disp_xi(b, sd.Tf, beta);
  if (id == "HEIS") return r.finish(std::pow(x2, beta) * std::pow(xi2, s), std::pow(n2, s + beta), false);
  if (id == "HEIS-L1")
    return r.finish(std::pow(x1, a + beta) * std::pow(xi2, a + s), std::pow(n1, a + s) * std::pow(n2, a + beta),
                    false);
  if (id == "CARLSON") return r.finish(std::pow(n1, 1.0 + s / a), std::pow(n2, s / a) * x1, false);
  if (id == "NASH") return r.finish(std::pow(n2, 1.0 + beta / a), std::pow(n1, beta / a) * xi2, false);

  const double muS = region_measure(in.S, b.spec);
  const double muSigma = region_measure(in.Sigma, b.spec);
  r.echo("mu_S", muS);
  r.echo("mu_Sigma", muSigma);
  double e1 = 0.0, e2 = 0.0;
  if (!class_eps(in, sd.d.eps1_l2, sd.d.eps2, e1, e2)) return r.not_applicable("signal outside the concentration class");
  double e1_l1 = in.eps1.value_or(sd.d.eps1_l1);
  r.echo("eps1", e1);
  r.echo("eps1_l1", e1_l1);
  r.echo("eps2", e2);
  const bool low = s < a && beta < a;
  const bool high = s > a && beta > a;
  const double q1 = 1.0 - e1 * e1, q2 = 1.0 - e2 * e2;

  if (id.rfind("LOCAL", 0) == 0) {
    const CVector v = symmetrize(in.f, b.grid);
    const double lhs = freq_inside(b, v, in.Sigma).squaredNorm();
    if (id == "LOCAL-1") {
      if (!(s < a)) return r.not_applicable("requires 0 < s < a");
      return r.finish(lhs, std::pow(muSigma, s / a) * x2 * x2, false);
    }
    if (id == "LOCAL-2") {
      if (!(s > a)) return r.not_applicable("requires s > a");
      return r.finish(lhs, muSigma * std::pow(n2, 2.0 - 2.0 * a / s) * std::pow(x2, 2.0 * a / s), false);
    }
    if (!(eps > 0.0 && eps < 1.0)) return r.not_applicable("requires 0 < eps < 1");
    r.echo("eps", eps);
    const double xa = disp_x(b, in.f, a, 2.0);
    return r.finish(lhs, std::pow(muSigma, 1.0 - eps) * std::pow(n2, 2.0 * eps) * std::pow(xa, 2.0 - 2.0 * eps),
                    false);
  }
  if (!(e1 < 1.0 && e2 < 1.0 && e1_l1 < 1.0)) return r.not_applicable("eps outside [0, 1)");
  if (id == "THB-1" || id == "THB-2") {
    if (!high) r.rec.note = "extended range s, beta <= a";
    if (id == "THB-1") return r.finish(std::pow(muS, beta / a) * xi2 * xi2, std::pow(q1, beta / a) * n2 * n2, false);
    return r.finish(std::pow(muSigma, s / a) * x2 * x2, std::pow(q2, s / a) * n2 * n2, false);
  }
  if (id == "THB-3")
    return r.finish(std::pow(muS, (a + beta) / (2.0 * a)) * xi2, std::pow(1.0 - e1_l1, (a + beta) / a) * n1, false);
  if (id == "THB-4")
    return r.finish(std::pow(muSigma, (a + s) / (2.0 * a)) * x1, std::pow(q2, (a + s) / (2.0 * a)) * n2, false);
  const double mm = muS * muSigma;
  if (id == "HEISNEW-1") {
    if (!low) return r.not_applicable("requires 0 < s, beta < a");
    return r.finish(std::pow(x2, beta) * std::pow(xi2, s),
                    std::pow(q1, s / 2.0) * std::pow(q2, beta / 2.0) / std::pow(mm, s * beta / (2.0 * a)) *
                        std::pow(n2, s + beta),
                    false);
  }
  if (id == "HEISNEW-2") {
    if (!high) r.rec.note = "extended range s, beta <= a";
    return r.finish(std::pow(x2, beta) * std::pow(xi2, s),
                    std::pow(q1 * q2 / mm, s * beta / (2.0 * a)) * std::pow(n2, s + beta), false);
  }
  if (id == "HEISNEW-3") {
    if (!(eps > 0.0 && eps < 1.0)) return r.not_applicable("requires 0 < eps < 1");
    r.echo("eps", eps);
    const double xa = disp_x(b, in.f, a, 2.0);
    const double xia = disp_xi(b, sd.Tf, a);
    return r.finish(xa * xia, std::pow(q1 * q2, 1.0 / (2.0 - 2.0 * eps)) / std::sqrt(mm) * n2 * n2, false);
  }
  if (id == "DISNORML12") {
    const double base = (1.0 - e1_l1) * (1.0 - e1_l1) * q2 / mm;
    return r.finish(std::pow(x1, a + beta) * std::pow(xi2, a + s),
                    std::pow(base, (a + s) * (a + beta) / (2.0 * a)) * std::pow(n1, a + s) * std::pow(n2, a + beta),
                    false);
  }
  // CF: mu(S) mu(Sigma) against C_f times the regime factor.
  auto cf = [&](double ss, double bb) {
    const double xs = disp_x(b, in.f, ss, 2.0);
    const double xb = disp_xi(b, sd.Tf, bb);
    return std::pow(std::pow(n2, ss + bb) / (std::pow(xs, bb) * std::pow(xb, ss)), 2.0 * a / (ss * bb));
  };
  double rhs = 0.0;
  if (low) {
    const double c = cf(s, beta);
    r.echo("C_f", c);
    rhs = c * std::pow(std::pow(q1, 1.0 / beta) * std::pow(q2, 1.0 / s), a);
  } else if (high) {
    const double c = cf(s, beta);
    r.echo("C_f", c);
    rhs = c * q1 * q2;
  } else {
    if (!(eps > 0.0 && eps < 1.0)) return r.not_applicable("requires 0 < eps < 1");
    const double c = cf(a, a);
    r.echo("C_f", c);
    r.echo("eps", eps);
    rhs = c * std::pow(q1 * q2, 1.0 / (1.0 - eps));
  }
  return r.finish(mm, rhs, false);
}

}  // namespace

Defects defects(const TransformBundle& bundle, const Signal& f, const Region& S, const Region& Sigma,
                const OperatorMatrix* L) {
  if (f.domain != Domain::Time) throw std::invalid_argument("defects: signal must live on the time grid");
  const double n2 = norm(f, bundle.grid, 2.0);
  const double n1 = norm(f, bundle.grid, 1.0);
  if (!(n2 > 0.0)) throw std::invalid_argument("defects: zero signal");
  const Eigen::VectorXd ms = region_mask(S, bundle.grid, Domain::Time);
  Signal out = f;
  out.generator.reset();
  for (Eigen::Index i = 0; i < out.values.size(); ++i)
    if (ms[i] != 0.0) out.values[i] = 0.0;
  Defects d;
  d.eps1_l2 = norm(out, bundle.grid, 2.0) / n2;
  d.eps1_l1 = norm(out, bundle.grid, 1.0) / n1;
  const CVector v = symmetrize(f, bundle.grid);
  d.eps2 = freq_outside(bundle, v, Sigma).norm() / v.norm();
  if (L) d.loc = (L->entries * v - v).norm() / v.norm();
  return d;
}

const std::vector<std::string>& catalog_ids() {
  static const std::vector<std::string> ids = [] {
    std::vector<std::string> all = kAsserted;
    all.insert(all.end(), kReported.begin(), kReported.end());
    std::sort(all.begin(), all.end());
    return all;
  }();
  return ids;
}

bool is_asserted(const std::string& id) { return std::find(kAsserted.begin(), kAsserted.end(), id) != kAsserted.end(); }

InequalityRecord check(const TransformBundle& bundle, const std::string& id, const CheckInputs& inputs) {
  const auto& ids = catalog_ids();
  if (std::find(ids.begin(), ids.end(), id) == ids.end())
    throw std::invalid_argument("check: unknown catalog id '" + id + "'");
  if (id.rfind("DS-", 0) == 0) return check_ds(bundle, id, inputs);
  if (id == "WAVELET-DS") return check_wavelet_ds(bundle, inputs);
  if (id.rfind("SCH-", 0) == 0 || id == "TRACE-P") return check_schatten(bundle, id, inputs);
  if (id == "TH1") return check_th1(bundle, inputs);
  if (id == "BDF") return check_bdf(bundle, inputs);
  return check_reported(bundle, id, inputs);
}

std::vector<InequalityRecord> run_audit(const TransformBundle& bundle, const std::vector<AuditTask>& tasks,
                                        int threads) {
  std::vector<InequalityRecord> out(tasks.size());
  std::vector<std::exception_ptr> errors(tasks.size());
  std::atomic<std::size_t> next{0};
  auto worker = [&] {
    for (std::size_t k = next++; k < tasks.size(); k = next++) {
      try {
        out[k] = check(bundle, tasks[k].id, *tasks[k].inputs);
      } catch (...) {
        errors[k] = std::current_exception();
      }
    }
  };
  const int n = std::max(1, std::min<int>(threads, static_cast<int>(tasks.size())));
  if (n == 1) {
    worker();
  } else {
    std::vector<std::thread> pool;
    for (int t = 0; t < n; ++t) pool.emplace_back(worker);
    for (auto& t : pool) t.join();
  }
  for (const auto& e : errors)
    if (e) std::rethrow_exception(e);
  std::stable_sort(out.begin(), out.end(), [](const InequalityRecord& l, const InequalityRecord& r) {
    return l.id != r.id ? l.id < r.id : l.signal < r.signal;
  });
  return out;
}

}  // namespace specband
