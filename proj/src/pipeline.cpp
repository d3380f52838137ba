#include "specband/pipeline.hpp"

#include <cmath>
#include <cstdlib>
#include <filesystem>
#include <limits>
#include <memory>
#include <random>

#include "specband/audit.hpp"
#include "specband/report.hpp"
#include "specband/spectral.hpp"

namespace specband {

namespace {

using nlohmann::json;

// Order-independent seeded stream for one named signal.
class Rng {
 public:
  Rng(std::uint64_t seed, const std::string& name) : engine_(seed ^ fnv1a(name)) {}

  double uniform() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }

  double normal() {
    if (spare_) {
      const double z = *spare_;
      spare_.reset();
      return z;
    }
    double u = uniform();
    while (u == 0.0) u = uniform();
    const double v = uniform();
    const double r = std::sqrt(-2.0 * std::log(u));
    const double t = 2.0 * M_PI * v;
    spare_ = r * std::sin(t);
    return r * std::cos(t);
  }

 private:
  static std::uint64_t fnv1a(const std::string& s) {
    std::uint64_t h = 1469598103934665603ull;
    for (unsigned char c : s) h = (h ^ c) * 1099511628211ull;
    return h;
  }

  std::mt19937_64 engine_;
  std::optional<double> spare_;
};

class Context {
 public:
  Context(const RunConfig& cfg, TransformBundle bundle) : cfg_(cfg), bundle_(std::move(bundle)) {}

  const RunConfig& cfg() const { return cfg_; }
  const TransformBundle& bundle() const { return bundle_; }
  const GridPair& grid() const { return bundle_.grid; }

  std::string param_string(const std::string& key, const std::string& fallback) const {
    if (!cfg_.params.contains(key)) return fallback;
    const json& v = cfg_.params.at(key);
    if (!v.is_string()) cfg_.fail("/command_params/" + key, "'" + key + "' must be a string");
    return v.get<std::string>();
  }

  double param_number(const std::string& key, double fallback) const {
    if (!cfg_.params.contains(key)) return fallback;
    const json& v = cfg_.params.at(key);
    if (v.is_string() && v.get<std::string>() == "inf") return kInfinity;
    if (!v.is_number()) cfg_.fail("/command_params/" + key, "'" + key + "' must be a number");
    return v.get<double>();
  }

  std::vector<double> param_numbers(const std::string& key, std::vector<double> fallback) const {
    if (!cfg_.params.contains(key)) return fallback;
    const json& v = cfg_.params.at(key);
    const std::string p = "/command_params/" + key;
    if (!v.is_array()) cfg_.fail(p, "'" + key + "' must be an array of numbers");
    std::vector<double> out;
    for (std::size_t k = 0; k < v.size(); ++k) {
      if (v[k].is_string() && v[k].get<std::string>() == "inf")
        out.push_back(kInfinity);
      else if (v[k].is_number())
        out.push_back(v[k].get<double>());
      else
        cfg_.fail(p + "/" + std::to_string(k), "expected a number");
    }
    return out;
  }

  std::vector<std::string> param_names(const std::string& key, std::vector<std::string> fallback) const {
    if (!cfg_.params.contains(key)) return fallback;
    const json& v = cfg_.params.at(key);
    const std::string p = "/command_params/" + key;
    if (!v.is_array()) cfg_.fail(p, "'" + key + "' must be an array of names");
    std::vector<std::string> out;
    for (std::size_t k = 0; k < v.size(); ++k) {
      if (!v[k].is_string()) cfg_.fail(p + "/" + std::to_string(k), "expected a name");
      out.push_back(v[k].get<std::string>());
    }
    return out;
  }

  const Region& region(const std::string& name, const std::string& pointer, Domain domain) const {
    const auto it = cfg_.regions.find(name);
    if (it == cfg_.regions.end()) cfg_.fail(pointer, "unknown region '" + name + "'");
    if (it->second.sup() > grid().extent(domain) * (1.0 + 1e-12))
      cfg_.fail(pointer, "region '" + name + "' exceeds the " + (domain == Domain::Time ? "time" : "frequency") +
                             " extent " + format_real(grid().extent(domain)));
    return it->second;
  }

  const Region& param_region(const std::string& key, Domain domain) const {
    return region(param_string(key, key), "/command_params/" + key, domain);
  }

  const SpectralDecomposition& decomposition(const std::string& S, const std::string& Sigma,
                                             const std::string& pointer) {
    const auto key = std::make_pair(S, Sigma);
    auto it = decs_.find(key);
    if (it == decs_.end()) {
      const OperatorMatrix L =
          restriction_operator(bundle_, region(S, pointer, Domain::Time), region(Sigma, pointer, Domain::Frequency));
      it = decs_.emplace(key, eig_sym(L)).first;
    }
    return it->second;
  }

  const SignalSpec& spec(const std::string& name, const std::string& pointer) const {
    const auto it = cfg_.signals.find(name);
    if (it == cfg_.signals.end()) cfg_.fail(pointer, "unknown signal '" + name + "'");
    return it->second;
  }

  Generator generator(const std::string& name, const std::string& pointer, int depth = 0) {
    if (depth > 8) cfg_.fail(pointer, "signal references nest too deeply");
    const SignalSpec& s = spec(name, pointer);
    const std::string p = "/signals/" + name;
    const json& v = s.params;
    auto num = [&](const std::string& key, std::optional<double> fallback) {
      if (!v.contains(key)) {
        if (fallback) return *fallback;
        cfg_.fail(p, "missing number '" + key + "'");
      }
      if (!v.at(key).is_number()) cfg_.fail(p + "/" + key, "'" + key + "' must be a number");
      return v.at(key).get<double>();
    };
    auto str = [&](const std::string& key) {
      if (!v.contains(key) || !v.at(key).is_string()) cfg_.fail(p, "missing string '" + key + "'");
      return v.at(key).get<std::string>();
    };
    try {
      if (s.type == "gaussian") return Generator::gaussian(num("center", 0.0), num("width", 1.0));
      if (s.type == "bump") return Generator::bump(num("lo", std::nullopt), num("hi", std::nullopt));
      if (s.type == "indicator") {
        const auto it = cfg_.regions.find(str("region"));
        if (it == cfg_.regions.end()) cfg_.fail(p + "/region", "unknown region '" + str("region") + "'");
        return Generator::indicator(it->second);
      }
      if (s.type == "transformed")
        return Generator::transformed(generator(str("of"), p + "/of", depth + 1), bundle_.spec);
    } catch (const std::invalid_argument& e) {
      cfg_.fail(p, e.what());
    }
    cfg_.fail(pointer, "signal '" + name + "' has no analytic generator");
  }

  Signal signal(const std::string& name, const std::string& pointer) {
    const auto cached = signals_.find(name);
    if (cached != signals_.end()) return cached->second;
    const SignalSpec& s = spec(name, pointer);
    const std::string p = "/signals/" + name;
    const json& v = s.params;
    const int N = grid().N;
    Signal f;
    if (s.type == "gaussian" || s.type == "bump" || s.type == "indicator" || s.type == "transformed") {
      f = sample_signal(generator(name, pointer), 1.0, grid(), bundle_.spec);
    } else if (s.type == "dilate") {
      if (!v.contains("of") || !v.at("of").is_string()) cfg_.fail(p, "missing string 'of'");
      if (!v.contains("lambda") || !v.at("lambda").is_number()) cfg_.fail(p, "missing number 'lambda'");
      const double lambda = v.at("lambda").get<double>();
      if (!(lambda > 0.0)) cfg_.fail(p + "/lambda", "lambda must be positive");
      f = sample_signal(generator(v.at("of").get<std::string>(), p + "/of"), lambda, grid(), bundle_.spec);
    } else if (s.type == "eigenfunction" || s.type == "eigen_mixture") {
      for (const char* key : {"S", "Sigma"})
        if (!v.contains(key) || !v.at(key).is_string()) cfg_.fail(p, std::string("missing region name '") + key + "'");
      const SpectralDecomposition& dec =
          decomposition(v.at("S").get<std::string>(), v.at("Sigma").get<std::string>(), p);
      if (s.type == "eigenfunction") {
        if (!v.contains("index") || !v.at("index").is_number_integer()) cfg_.fail(p, "missing integer 'index'");
        const long long index = v.at("index").get<long long>();
        if (index < 1 || index > N) cfg_.fail(p + "/index", "index must lie in [1, N]");
        f = eigenfunction(dec, static_cast<int>(index - 1), grid());
      } else {
        const long long count = v.contains("count") && v.at("count").is_number_integer() ? v.at("count").get<long long>() : 4;
        if (count < 1 || count > N) cfg_.fail(p, "count must lie in [1, N]");
        Rng rng(cfg_.seed, name);
        CVector c = CVector::Zero(N);
        for (long long k = 0; k < count; ++k) c[k] = {rng.normal(), rng.normal()};
        f = desymmetrize(dec.eigenvectors * c, grid(), Domain::Time);
      }
    } else {
      Rng rng(cfg_.seed, name);
      f.domain = Domain::Time;
      f.values.resize(N);
      for (int i = 0; i < N; ++i) f.values[i] = {rng.normal(), rng.normal()};
    }
    if (s.normalize) {
      const double n = norm(f, grid());
      if (!(n > 0.0)) cfg_.fail(p, "signal '" + name + "' vanishes on the grid");
      f.values /= n;
    }
    signals_.emplace(name, f);
    return f;
  }

  std::vector<std::string> signal_names(const std::string& key) const {
    std::vector<std::string> all;
    for (const auto& [name, s] : cfg_.signals) all.push_back(name);
    return param_names(key, all);
  }

  void write(const std::string& stem, const Table& table, json meta = json::object()) const {
    const std::filesystem::path dir(cfg_.output_dir);
    const std::string base = (dir / (cfg_.command + "_" + stem)).string();
    write_file(base + ".csv", table.csv());
    meta["rows"] = table.json();
    write_file(base + ".json", meta.dump(2) + "\n");
  }

  json header() const {
    json h;
    h["command"] = cfg_.command;
    h["family"] = cfg_.family;
    h["alpha"] = cfg_.alpha;
    h["X"] = grid().X;
    h["N"] = grid().N;
    h["seed"] = cfg_.seed;
    h["defect"] = bundle_.defect;
    return h;
  }

 private:
  const RunConfig& cfg_;
  TransformBundle bundle_;
  std::map<std::pair<std::string, std::string>, SpectralDecomposition> decs_;
  std::map<std::string, Signal> signals_;
};

std::string rule_name(GridRule r) { return r == GridRule::Midpoint ? "midpoint" : "bessel_zeros"; }

Signal normalized_indicator(const Region& r, const GridPair& grid, const KernelSpec& spec, const RunConfig& cfg,
                            const std::string& pointer) {
  Signal f = sample_signal(Generator::indicator(r), 1.0, grid, spec);
  const double n = norm(f, grid);
  if (!(n > 0.0)) cfg.fail(pointer, "window region holds no grid nodes");
  f.values /= n;
  return f;
}

Signal symbol_signal(Context& ctx, const std::string& key, const std::string& fallback_region) {
  const std::string name = ctx.param_string(key, fallback_region);
  const std::string p = "/command_params/" + key;
  const RunConfig& cfg = ctx.cfg();
  if (cfg.regions.count(name)) {
    const Region& r = ctx.region(name, p, Domain::Frequency);
    Signal s;
    s.domain = Domain::Frequency;
    s.values = region_mask(r, ctx.grid(), Domain::Frequency).cast<std::complex<double>>();
    return s;
  }
  return sample_signal(ctx.generator(name, p), 1.0, ctx.grid(), ctx.bundle().spec, Domain::Frequency);
}

Signal window_signal(Context& ctx, const std::string& key, const Region& fallback) {
  if (!ctx.cfg().params.contains(key))
    return normalized_indicator(fallback, ctx.grid(), ctx.bundle().spec, ctx.cfg(), "/command_params");
  return ctx.signal(ctx.param_string(key, ""), "/command_params/" + key);
}

Cell opt_cell(const std::optional<double>& v) { return v ? Cell(*v) : Cell(); }

std::string satisfied_text(const InequalityRecord& r) {
  if (!r.satisfied) return "n/a";
  return *r.satisfied ? "true" : "false";
}

int report_records(const Context& ctx, const std::string& stem, const std::vector<InequalityRecord>& records,
                   std::ostream& out, std::ostream& err) {
  Table t({"id", "signal", "relation", "lhs", "rhs", "ratio", "satisfied", "applicability", "note"});
  json echo = json::array();
  int failures = 0, asserted = 0, na = 0;
  for (const InequalityRecord& r : records) {
    t.add_row({r.id, r.signal, r.relation, r.lhs, r.rhs, opt_cell(r.ratio), satisfied_text(r),
               std::string(r.applicable ? "applicable" : "not-applicable"), r.note});
    json inputs = json::object();
    for (const auto& [k, v] : r.inputs) inputs[k] = v;
    echo.push_back({{"id", r.id}, {"signal", r.signal}, {"inputs", inputs}});
    if (!r.applicable) ++na;
    if (r.satisfied) {
      ++asserted;
      if (!*r.satisfied) {
        ++failures;
        err << "FAIL " << r.id << " " << r.signal << ": lhs " << format_real(r.lhs) << " " << r.relation << " rhs "
            << format_real(r.rhs) << "\n";
      }
    }
  }
  json meta = ctx.header();
  meta["inputs"] = echo;
  ctx.write(stem, t, meta);
  out << records.size() << " records, " << asserted << " asserted, " << failures << " failed, " << na
      << " not applicable\n";
  return failures ? kExitAssertion : kExitOk;
}

int cmd_info(Context& ctx, std::ostream& out) {
  const TransformBundle& b = ctx.bundle();
  Table t({"quantity", "value"});
  t.add_row({std::string("family"), ctx.cfg().family});
  t.add_row({std::string("alpha"), b.spec.alpha});
  t.add_row({std::string("a"), b.spec.a});
  t.add_row({std::string("c_K"), b.spec.c_K});
  t.add_row({std::string("X"), b.grid.X});
  t.add_row({std::string("N"), static_cast<long long>(b.grid.N)});
  t.add_row({std::string("Xi"), b.grid.Xi});
  t.add_row({std::string("rule"), rule_name(b.grid.rule)});
  t.add_row({std::string("defect"), b.defect});
  t.add_row({std::string("defect_norm"),
             std::string(b.defect_norm == DefectNorm::Spectral ? "spectral" : "frobenius")});
  ctx.write(ctx.cfg().name, t, ctx.header());
  out << "kernel " << ctx.cfg().family << " a=" << format_real(b.spec.a) << " c_K=" << format_real(b.spec.c_K)
      << "\n";
  out << "grid " << rule_name(b.grid.rule) << " X=" << format_real(b.grid.X) << " N=" << b.grid.N
      << " Xi=" << format_real(b.grid.Xi) << "\n";
  out << "parseval defect " << format_real(b.defect) << "\n";
  return kExitOk;
}

int cmd_spectrum(Context& ctx, std::ostream& out) {
  const std::string sname = ctx.param_string("S", "S"), fname = ctx.param_string("Sigma", "Sigma");
  const Region& S = ctx.region(sname, "/command_params/S", Domain::Time);
  const Region& Sigma = ctx.region(fname, "/command_params/Sigma", Domain::Frequency);
  const SpectralDecomposition& dec = ctx.decomposition(sname, fname, "/command_params");
  const TraceCheck tc = trace_formula_check(ctx.bundle(), S, Sigma);
  Table t({"k", "eigenvalue"});
  for (Eigen::Index k = 0; k < dec.eigenvalues.size(); ++k)
    t.add_row({static_cast<long long>(k + 1), dec.eigenvalues[k]});
  Table counts({"eps", "count"});
  for (double eps : ctx.param_numbers("eps_list", {0.1, 0.5, 0.9}))
    counts.add_row({eps, static_cast<long long>(count_eigen(dec, eps))});
  json meta = ctx.header();
  meta["trace_lhs"] = tc.trace_lhs;
  meta["quadrature_rhs"] = tc.quadrature_rhs;
  meta["abs_diff"] = tc.abs_diff;
  meta["eigenvalue_sum"] = dec.eigenvalues.sum();
  meta["residual"] = dec.residual;
  ctx.write(ctx.cfg().name, t, meta);
  ctx.write(ctx.cfg().name + "_count", counts, ctx.header());
  out << "lambda_1 " << format_real(dec.eigenvalues.size() ? dec.eigenvalues[0] : 0.0) << "\n";
  out << "trace " << format_real(tc.trace_lhs) << " quadrature " << format_real(tc.quadrature_rhs) << "\n";
  return kExitOk;
}

int cmd_approx(Context& ctx, std::ostream& out, std::ostream& err) {
  const std::string sname = ctx.param_string("S", "S"), fname = ctx.param_string("Sigma", "Sigma");
  const double eps0 = ctx.param_number("eps0", 0.5);
  if (!(eps0 > 0.0 && eps0 < 1.0)) ctx.cfg().fail("/command_params/eps0", "eps0 must lie in (0, 1)");
  const SpectralDecomposition& dec = ctx.decomposition(sname, fname, "/command_params");
  Table t({"signal", "eps_of_f", "error", "bound", "retained", "within_bound"});
  int violations = 0;
  for (const std::string& name : ctx.signal_names("signals")) {
    const Signal f = ctx.signal(name, "/command_params/signals");
    const Approximation a = approx_project(f, dec, eps0, ctx.grid());
    const bool ok = a.error <= a.bound + 1e-10 * norm(f, ctx.grid());
    if (!ok) {
      ++violations;
      err << "FAIL approximation " << name << ": error " << format_real(a.error) << " > bound "
          << format_real(a.bound) << "\n";
    }
    t.add_row({name, a.eps_of_f, a.error, a.bound, static_cast<long long>(a.retained),
               std::string(ok ? "true" : "false")});
  }
  json meta = ctx.header();
  meta["eps0"] = eps0;
  ctx.write(ctx.cfg().name, t, meta);
  out << t.rows().size() << " signals, " << violations << " bound violations\n";
  return violations ? kExitAssertion : kExitOk;
}

int cmd_audit(Context& ctx, std::ostream& out, std::ostream& err, int threads) {
  const std::string sname = ctx.param_string("S", "S"), fname = ctx.param_string("Sigma", "Sigma");
  const Region& S = ctx.region(sname, "/command_params/S", Domain::Time);
  const Region& Sigma = ctx.region(fname, "/command_params/Sigma", Domain::Frequency);
  const auto& catalog = catalog_ids();
  const std::vector<std::string> ids = ctx.param_names("ids", catalog);
  for (std::size_t k = 0; k < ids.size(); ++k)
    if (std::find(catalog.begin(), catalog.end(), ids[k]) == catalog.end())
      ctx.cfg().fail("/command_params/ids/" + std::to_string(k), "unknown catalog id '" + ids[k] + "'");

  CheckInputs base;
  base.S = S;
  base.Sigma = Sigma;
  base.s = ctx.param_number("s", 1.0);
  base.beta = ctx.param_number("beta", 1.0);
  base.eps = ctx.param_number("eps", 0.5);
  base.p = ctx.param_number("p", 2.0);
  base.phi = window_signal(ctx, "phi", S);
  base.psi = window_signal(ctx, "psi", S);
  base.sigma = symbol_signal(ctx, "symbol", fname);

  const SpectralDecomposition& dec = ctx.decomposition(sname, fname, "/command_params");
  const double family_eps = ctx.param_number("family_eps", 0.5);
  std::vector<std::unique_ptr<CheckInputs>> inputs;
  std::vector<AuditTask> tasks;
  auto is_signal_free = [](const std::string& id) { return id.rfind("SCH-", 0) == 0 || id == "TRACE-P" || id == "TH1"; };
  for (const std::string& name : ctx.signal_names("signals")) {
    auto in = std::make_unique<CheckInputs>(base);
    in->signal_id = name;
    in->f = ctx.signal(name, "/command_params/signals");
    for (const std::string& id : ids)
      if (!is_signal_free(id)) tasks.push_back({id, in.get()});
    inputs.push_back(std::move(in));
  }
  auto shared = std::make_unique<CheckInputs>(base);
  shared->signal_id = "eigenfamily";
  for (int k = 0; k < count_eigen(dec, family_eps); ++k) shared->family.push_back(eigenfunction(dec, k, ctx.grid()));
  if (!inputs.empty()) shared->f = inputs.front()->f;
  for (const std::string& id : ids)
    if (is_signal_free(id)) tasks.push_back({id, shared.get()});
  const std::vector<InequalityRecord> records = run_audit(ctx.bundle(), tasks, threads);
  return report_records(ctx, ctx.cfg().name, records, out, err);
}

int cmd_multiplier(Context& ctx, std::ostream& out, std::ostream& err) {
  const std::string sname = ctx.param_string("S", "S");
  const Region& S = ctx.region(sname, "/command_params/S", Domain::Time);
  CheckInputs in;
  in.signal_id = "symbol";
  in.S = S;
  in.sigma = symbol_signal(ctx, "symbol", ctx.param_string("Sigma", "Sigma"));
  in.phi = window_signal(ctx, "phi", S);
  in.psi = window_signal(ctx, "psi", S);
  const std::vector<double> ps = ctx.param_numbers("ps", {1.0, 2.0, 4.0, kInfinity});
  for (std::size_t k = 0; k < ps.size(); ++k)
    if (!(ps[k] >= 1.0)) ctx.cfg().fail("/command_params/ps/" + std::to_string(k), "p must be >= 1");
  OperatorMatrix P;
  try {
    P = wavelet_multiplier(ctx.bundle(), *in.sigma, *in.phi, *in.psi);
  } catch (const std::invalid_argument& e) {
    ctx.cfg().fail("/command_params", e.what());
  }
  const SchattenReport rep = schatten(P, ps);
  const double c = ctx.bundle().spec.c_K;
  const double wsup = in.phi->values.cwiseAbs().maxCoeff() * in.psi->values.cwiseAbs().maxCoeff();
  Table norms({"p", "norm", "bound"});
  std::vector<InequalityRecord> records;
  for (double p : ps) {
    const double inv = std::isinf(p) ? 0.0 : 1.0 / p;
    const double sig = std::isinf(p) ? in.sigma->values.cwiseAbs().maxCoeff() : norm(*in.sigma, ctx.grid(), p);
    norms.add_row({std::isinf(p) ? Cell(std::string("inf")) : Cell(p), rep.norm(p),
                   std::pow(c, 2.0 * inv) * std::pow(wsup, 1.0 - inv) * sig});
    in.p = p;
    InequalityRecord r = check(ctx.bundle(), "SCH-P", in);
    r.signal = "p=" + (std::isinf(p) ? std::string("inf") : format_real(p));
    records.push_back(r);
  }
  for (const char* id : {"SCH-INF", "SCH-INF-L1", "SCH-1", "SCH-2", "TRACE-P"}) records.push_back(check(ctx.bundle(), id, in));
  Table sv({"k", "singular_value"});
  for (Eigen::Index k = 0; k < rep.singular_values.size(); ++k)
    sv.add_row({static_cast<long long>(k + 1), rep.singular_values[k]});
  ctx.write(ctx.cfg().name, norms, ctx.header());
  ctx.write(ctx.cfg().name + "_singular", sv, ctx.header());
  return report_records(ctx, ctx.cfg().name + "_checks", records, out, err);
}

int cmd_sequence(Context& ctx, std::ostream& out, std::ostream& err) {
  const std::string bump = ctx.param_string("bump", "bump");
  const Generator g = ctx.generator(bump, "/command_params/bump");
  const double s = ctx.param_number("s", 1.0);
  const double n_max = ctx.param_number("n_max", 4);
  if (n_max != std::floor(n_max) || n_max < 0 || n_max > 30)
    ctx.cfg().fail("/command_params/n_max", "n_max must be an integer in [0, 30]");
  DilatedSequence seq;
  try {
    seq = dilated_sequence(ctx.bundle(), g, static_cast<int>(n_max), s);
  } catch (const std::invalid_argument& e) {
    ctx.cfg().fail("/command_params", e.what());
  }
  Table t({"n", "disp_x", "disp_xi", "product", "norm", "max_inner_product"});
  for (const DilateRecord& r : seq.rows) {
    double ip = 0.0;
    for (double v : r.inner_products) ip = std::max(ip, v);
    t.add_row({static_cast<long long>(r.n), r.disp_x, r.disp_xi, r.product, r.norm, ip});
  }
  json meta = ctx.header();
  meta["s"] = s;
  meta["product_variation"] = seq.product_variation;
  meta["gram_deviation"] = seq.gram_deviation;
  ctx.write(ctx.cfg().name, t, meta);
  int status = kExitOk;
  if (seq.product_variation > 1e-3) {
    err << "FAIL dilated product variation " << format_real(seq.product_variation) << "\n";
    status = kExitAssertion;
  }
  if (seq.gram_deviation > 1e-6) {
    err << "FAIL dilated Gram deviation " << format_real(seq.gram_deviation) << "\n";
    status = kExitAssertion;
  }
  out << "product variation " << format_real(seq.product_variation) << ", Gram deviation "
      << format_real(seq.gram_deviation) << "\n";

  if (ctx.cfg().params.contains("shapiro_max_N")) {
    const double max_n = ctx.param_number("shapiro_max_N", 8);
    if (max_n != std::floor(max_n) || max_n < 1 || max_n > ctx.grid().N)
      ctx.cfg().fail("/command_params/shapiro_max_N", "shapiro_max_N must be an integer in [1, N]");
    const SpectralDecomposition& dec =
        ctx.decomposition(ctx.param_string("S", "S"), ctx.param_string("Sigma", "Sigma"), "/command_params");
    std::vector<Signal> fam;
    Table sh({"N", "sum", "last_term"});
    std::vector<double> sums;
    for (int n = 1; n <= static_cast<int>(max_n); ++n) {
      fam.push_back(eigenfunction(dec, n - 1, ctx.grid()));
      const ShapiroResult r = shapiro_sum(fam, ctx.bundle(), s);
      sh.add_row({static_cast<long long>(n), r.sum, r.per_signal.back()});
      sums.push_back(r.sum);
    }
    json smeta = ctx.header();
    if (sums.size() >= 2)
      smeta["loglog_slope"] = std::log(sums.back() / sums.front()) / std::log(static_cast<double>(sums.size()));
    smeta["growth_exponent"] = 1.0 + s / (2.0 * ctx.bundle().spec.a);
    ctx.write(ctx.cfg().name + "_shapiro", sh, smeta);
  }
  return status;
}

}  // namespace

int threads_from_env() {
  const char* v = std::getenv("SPECBAND_THREADS");
  if (!v || !*v) return 1;
  char* end = nullptr;
  const long n = std::strtol(v, &end, 10);
  if (*end != '\0' || n < 1) return 1;
  return static_cast<int>(std::min<long>(n, 256));
}

int run(const RunConfig& cfg, const RunOptions& options, std::ostream& out, std::ostream& err) {
  try {
    if (!(cfg.X > 0.0)) cfg.fail("/grid/X", "X must be positive");
    if (cfg.N < 2 || cfg.N > 4096) cfg.fail("/grid/N", "N must be an integer in [2, 4096]");
    const KernelSpec spec = kernel_from_name(cfg.family, cfg.alpha);
    const GridPair grid = build_grid(spec, cfg.X, cfg.N, cfg.rule.value_or(default_rule(spec)));
    TransformBundle bundle = build_transform(spec, grid, cfg.defect_norm);
    if (const auto warning = defect_warning(bundle, cfg.defect_max)) {
      err << "warning: " << *warning << "\n";
      if (!options.force) {
        err << "defect exceeds defect_max; rerun with --force to continue\n";
        return kExitDefect;
      }
    }
    if (cfg.corrupt_transform) corrupt_transform(bundle, *cfg.corrupt_transform);
    Context ctx(cfg, std::move(bundle));
    if (cfg.command == "info") return cmd_info(ctx, out);
    if (cfg.command == "spectrum") return cmd_spectrum(ctx, out);
    if (cfg.command == "approx") return cmd_approx(ctx, out, err);
    if (cfg.command == "audit") return cmd_audit(ctx, out, err, options.threads);
    if (cfg.command == "multiplier") return cmd_multiplier(ctx, out, err);
    if (cfg.command == "sequence") return cmd_sequence(ctx, out, err);
    cfg.fail("/command", "unknown command '" + cfg.command + "'");
  } catch (const ConfigError& e) {
    err << e.what() << "\n";
    return kExitConfig;
  } catch (const std::invalid_argument& e) {
    err << cfg.file << ": " << e.what() << "\n";
    return kExitConfig;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return kExitRuntime;
  }
}

}  // namespace specband
