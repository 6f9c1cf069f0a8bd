#include <cmath>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <limits>
#include <sstream>

#include "hyperref/cli.hpp"
#include "hyperref/constants.hpp"
#include "hyperref/findim/experiments.hpp"
#include "hyperref/findim/zero_product.hpp"
#include "hyperref/rng.hpp"
#include "hyperref/witness.hpp"

namespace hyperref::cli {

namespace {

namespace fd = hyperref::findim;

constexpr double kInf = std::numeric_limits<double>::infinity();

std::string fmt(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.12g", v);
  return buf;
}

class Params {
 public:
  explicit Params(const std::map<std::string, std::string>& p) : p_(p) {}

  bool has(const std::string& key) const { return p_.count(key) != 0; }
  std::string text(const std::string& key, const std::string& fallback) const {
    const auto it = p_.find(key);
    return it == p_.end() ? fallback : it->second;
  }
  double real(const std::string& key, double fallback) const {
    return has(key) ? to_real(key, p_.at(key)) : fallback;
  }
  std::int64_t integer(const std::string& key, std::int64_t fallback) const {
    if (!has(key)) return fallback;
    const auto& s = p_.at(key);
    try {
      std::size_t used = 0;
      const auto v = std::stoll(s, &used);
      if (used == s.size()) return v;
    } catch (const std::exception&) {
    }
    throw ConfigError("--" + key + " expects an integer, got '" + s + "'");
  }
  std::vector<double> reals(const std::string& key, const std::string& fallback) const {
    std::vector<double> out;
    std::stringstream in(text(key, fallback));
    std::string item;
    while (std::getline(in, item, ',')) out.push_back(to_real(key, item));
    if (out.empty()) throw ConfigError("--" + key + " is empty");
    return out;
  }

  static double to_real(const std::string& key, const std::string& s) {
    if (s == "inf") return kInf;
    try {
      std::size_t used = 0;
      const double v = std::stod(s, &used);
      if (used == s.size()) return v;
    } catch (const std::exception&) {
    }
    throw ConfigError("--" + key + " expects a number, got '" + s + "'");
  }

 private:
  const std::map<std::string, std::string>& p_;
};

EntryStatus from_witness(witness::Status s) {
  switch (s) {
    case witness::Status::pass: return EntryStatus::pass;
    case witness::Status::fail: return EntryStatus::fail;
    case witness::Status::inconclusive: return EntryStatus::inconclusive;
  }
  return EntryStatus::inconclusive;
}

ReportEntry exact_entry(const std::string& name, const constants::ConstantValue& c) {
  return {name, c.formula, c.value, c.value, c.value, EntryStatus::pass, {}};
}

void run_witness(const Params& p, Report& report) {
  const auto truncation = p.integer("truncation", 100000);
  const auto grid = p.integer("grid", 4096);
  for (double eps : p.reals("epsilon", "0.6")) {
    auto params = witness::WitnessParams::with_default_delta(eps, truncation, grid);
    if (p.has("delta")) params.delta = p.real("delta", params.delta);
    params.validate();
    const auto result = witness::verify(params);
    const std::string prefix = "eps=" + fmt(eps) + "/";
    for (const auto& c : result.entries) {
      ReportEntry e{prefix + c.name, c.formula, c.bound, c.bracket.lo, c.bracket.hi, from_witness(c.status), {}};
      e.details.emplace_back("margin", fmt(c.margin));
      if (c.required_truncation) e.details.emplace_back("required_truncation", std::to_string(*c.required_truncation));
      if (!c.note.empty()) e.details.emplace_back("note", c.note);
      report.entries.push_back(std::move(e));
    }
    for (const auto& d : result.diagnostics) report.diagnostics.push_back(prefix + d);
  }
}

void run_constants(const Params& p, Report& report) {
  constants::ConstantInputs in;
  in.alpha = p.real("alpha", in.alpha);
  in.gamma = p.real("gamma", in.gamma);
  in.r = p.real("r", in.r);
  in.M = p.real("M", in.M);
  in.C = p.real("C", in.C);
  in.K = p.real("K", in.K);
  in.pi_norm = p.real("pi_norm", in.pi_norm);
  in.n = static_cast<int>(p.integer("n", in.n));
  in.validate();
  const double r = in.strong_b();

  auto& out = report.entries;
  out.push_back(exact_entry("circle_lemma_bound", constants::circle_lemma_bound(in.alpha)));
  const auto sb = constants::circle_strong_b(in.alpha);
  out.push_back(exact_entry("circle_strong_b.restricted", sb.restricted));
  out.push_back(exact_entry("circle_strong_b.general", sb.general));
  out.push_back(exact_entry("cstar_group_constant", constants::cstar_group_constant()));
  out.push_back(exact_entry("unitization_constant", constants::unitization_constant(in.M, r)));
  out.push_back(exact_entry("cocycle_norm_bound", constants::cocycle_norm_bound(in.n, r, in.gamma)));
  out.push_back(exact_entry("hyperref_bound", constants::hyperref_bound(in.n, in.M, r, in.C)));
  out.push_back(exact_entry("commutant_bound", constants::commutant_bound(in.M, in.C, in.K, in.pi_norm)));
}

struct NamedAlgebra {
  fd::AlgebraSpec spec;
  bool cstar_or_group = false;  // the universal strong-(B) constant applies
};

NamedAlgebra parse_algebra_flag(const std::string& text, double p) {
  auto suffix_int = [&](std::size_t prefix) {
    try {
      std::size_t used = 0;
      const int k = std::stoi(text.substr(prefix), &used);
      if (used == text.size() - prefix && k >= 1) return k;
    } catch (const std::exception&) {
    }
    throw ConfigError("bad size in --algebra " + text);
  };
  if (text.rfind("ck:", 0) == 0) return {fd::pointwise(suffix_int(3)), true};
  if (text == "m2") return {fd::matrix_algebra(2, p), p == 2.0};
  if (text.rfind("l1z:", 0) == 0) return {fd::group_algebra(fd::FiniteGroup::cyclic(suffix_int(4))), true};
  if (text == "scalars") return {fd::scalars(true), true};
  if (text.rfind("file:", 0) == 0) return {fd::load_algebra(text.substr(5)), false};
  throw ConfigError("unknown --algebra '" + text + "' (ck:<k> | m2 | l1z:<k> | scalars | file:<path>)");
}

fd::FiniteGroup parse_group_flag(const std::string& text) {
  if (text.rfind("cyclic:", 0) == 0) {
    try {
      std::size_t used = 0;
      const int k = std::stoi(text.substr(7), &used);
      if (used == text.size() - 7 && k >= 1) return fd::FiniteGroup::cyclic(k);
    } catch (const std::exception&) {
    }
    throw ConfigError("bad order in --group " + text);
  }
  if (text.rfind("file:", 0) == 0) return fd::load_cayley_table(text.substr(5));
  throw ConfigError("unknown --group '" + text + "' (cyclic:<k> | file:<path>)");
}

void add_ratio_entries(const fd::RatioReport& r, Report& report) {
  for (const auto& s : r.samples) {
    ReportEntry e{"ratio[" + std::to_string(s.index) + "]", "dist_upper / dist_r_lower <= " + r.bound_formula,
                  r.bound, s.ratio, s.ratio, EntryStatus::pass, {}};
    if (s.status == fd::SampleStatus::inconclusive) e.status = EntryStatus::inconclusive;
    e.details.emplace_back("dist_upper", fmt(s.dist_upper));
    e.details.emplace_back("dist_r_lower", fmt(s.dist_r_lower));
    e.details.emplace_back("sample", fd::to_string(s.status));
    report.entries.push_back(std::move(e));
  }
  const std::size_t considered = r.samples.size() - r.skipped;
  const double rate = considered ? static_cast<double>(r.inconclusive) / static_cast<double>(considered) : 0.0;
  report.entries.push_back({"max_ratio", "max conclusive dist_upper / dist_r_lower", r.bound, r.max_ratio,
                            r.max_ratio, r.max_ratio <= r.bound ? EntryStatus::pass : EntryStatus::inconclusive,
                            {{"skipped", std::to_string(r.skipped)}}});
  report.entries.push_back({"inconclusive_rate", "inconclusive / (samples - skipped) < 0.2", 0.2, rate, rate,
                            rate < 0.2 ? EntryStatus::pass : EntryStatus::inconclusive, {}});
}

void run_findim(const Params& p, std::uint64_t seed, Report& report) {
  const double norm_p = p.real("p", 2.0);
  const auto alg = parse_algebra_flag(p.text("algebra", "ck:2"), norm_p);
  const auto& a = alg.spec;
  fd::validate(a);
  const auto x = fd::regular_bimodule(a);
  const int n = static_cast<int>(p.integer("degree", 1));
  if (n < 1) throw ConfigError("--degree must be >= 1");
  const auto samples = p.integer("samples", 100);
  if (samples < 0) throw ConfigError("--samples must be >= 0");
  const auto budget = p.integer("budget", 4096);
  if (budget < 1) throw ConfigError("--budget must be >= 1");
  fd::EstimatorOptions opts;
  opts.tuple_budget = static_cast<std::size_t>(budget);
  report.header = fd::kDistRDefinition;

  const auto z = fd::cocycle_space(a, x, n);
  report.entries.push_back({"cocycle_space_dim", "dim ker delta^n", static_cast<double>(z.size()),
                            static_cast<double>(z.size()), static_cast<double>(z.size()), EntryStatus::pass,
                            {{"algebra", a.name}, {"norm", a.norm.describe()}}});

  auto rng = make_rng(seed, 1u << 20);
  const auto probe = fd::MultilinearMap::random(n, a.dim, x.dim, rng);
  const auto dd = fd::delta_n(fd::delta_n(probe, a, x), a, x);
  const double chain = dd.tensor.size() ? dd.tensor.cwiseAbs().maxCoeff() : 0.0;
  report.entries.push_back({"chain_complex", "max |delta^(n+1) delta^n T| <= 1e-10", 1e-10, chain, chain,
                            chain <= 1e-10 ? EntryStatus::pass : EntryStatus::fail, {}});
  const double lam = fd::lambda_check(probe, a, x);
  report.entries.push_back({"lambda_intertwining", "max |Lambda delta T - Delta Lambda T| <= 1e-10", 1e-10, lam, lam,
                            lam <= 1e-10 ? EntryStatus::pass : EntryStatus::fail, {}});

  add_ratio_entries(fd::hyperref_ratio(a, x, n, static_cast<std::size_t>(samples), seed, opts), report);

  const double cstar = constants::cstar_group_constant().value;
  try {
    const auto sb = fd::strong_b_estimate(a, static_cast<std::size_t>(budget), seed);
    EntryStatus st = EntryStatus::pass;
    if (sb.value > cstar) st = alg.cstar_or_group ? EntryStatus::fail : EntryStatus::inconclusive;
    report.entries.push_back({"strong_b_estimate", "r_hat <= 288 pi (1 + sqrt 2)", cstar, sb.value, kInf, st,
                              {{"applies", alg.cstar_or_group ? "yes" : "no proven bound for this input"}}});
    if (a.unit && samples > 0) {
      auto trng = make_rng(seed, 0);
      const auto t = fd::MultilinearMap::random(n, a.dim, x.dim, trng);
      const auto cb = fd::cocycle_bound_check(t, a, x, cstar, static_cast<std::size_t>(budget), seed);
      report.entries.push_back({"cocycle_bound_check", "||delta^n T|| <= 2^(n-1) r^(n+1) gamma", cb.bound_from_gamma,
                                cb.delta_norm_lower, cb.delta_norm_lower,
                                cb.status == "consistent" ? EntryStatus::pass : EntryStatus::inconclusive,
                                {{"gamma_lower", fmt(cb.gamma_lower)}, {"note", cb.note}}});
    }
  } catch (const fd::AlgebraError& e) {
    report.diagnostics.push_back(std::string("zero-product probes skipped: ") + e.what());
  }
}

void run_cvp(const Params& p, std::uint64_t seed, Report& report) {
  const auto g = parse_group_flag(p.text("group", "cyclic:3"));
  const double norm_p = p.real("p", 2.0);
  if (!(norm_p >= 1.0)) throw ConfigError("--p must be >= 1");
  const auto samples = p.integer("samples", 100);
  if (samples < 0) throw ConfigError("--samples must be >= 0");
  report.header = fd::kDistRDefinition;

  const auto rep = fd::regular_representation(g, norm_p);
  const auto comm = fd::commutant(rep.action, rep.space_dim);
  const double dim = comm.size();
  report.entries.push_back({"commutant_dim", "dim {L : pi(g) L = L pi(g)}", dim, dim, dim, EntryStatus::pass,
                            {{"group_order", std::to_string(g.order())}, {"abelian", g.is_abelian() ? "yes" : "no"}}});

  const auto r = fd::commutant_hyperref_check(g, norm_p, static_cast<std::size_t>(samples), seed);
  add_ratio_entries(r.ratios, report);
  ReportEntry inter{"intermediate_inequality", "||pi(a) T pi(b) x|| <= alpha ||pi||^2 ||x|| ||a|| ||b|| for ab = 0",
                    0.0, r.worst_intermediate_slack, r.worst_intermediate_slack, EntryStatus::pass, {}};
  inter.details.emplace_back("checked", std::to_string(r.intermediate_checked));
  inter.details.emplace_back("violations", std::to_string(r.intermediate_violations));
  if (r.intermediate_violations > 0) inter.status = EntryStatus::fail;
  if (r.intermediate_checked == 0) {
    inter.status = EntryStatus::inconclusive;
    inter.bracket_lo = inter.bracket_hi = 0.0;
  }
  if (!r.note.empty()) inter.details.emplace_back("note", r.note);
  report.entries.push_back(std::move(inter));
}

}  // namespace

Report execute(const RunConfig& config) {
  validate(config);
  Report report;
  report.config = config;
  const Params p(config.parameters);
  if (config.command == "witness")
    run_witness(p, report);
  else if (config.command == "constants")
    run_constants(p, report);
  else if (config.command == "findim")
    run_findim(p, config.seed, report);
  else
    run_cvp(p, config.seed, report);
  return report;
}

int run(const RunConfig& config, std::ostream& out, std::ostream& err) {
  try {
    const auto report = execute(config);
    const auto text = config.format == "csv" ? render_csv(report) : render_json(report);
    if (config.output_path.empty()) {
      out << text;
    } else {
      std::ofstream file(config.output_path, std::ios::binary);
      if (!file) {
        err << "error: cannot write " << config.output_path << '\n';
        return 2;
      }
      file << text;
    }
    for (const auto& d : report.diagnostics) err << "note: " << d << '\n';
    return report.count(EntryStatus::fail) ? 1 : 0;
  } catch (const fd::GuardExceeded& e) {
    err << "guard exceeded: " << e.what() << '\n';
    return 3;
  } catch (const ConfigError& e) {
    err << "config error: " << e.what() << '\n';
    return 2;
  } catch (const std::invalid_argument& e) {
    err << "invalid input: " << e.what() << '\n';
    return 2;
  } catch (const fd::AlgebraError& e) {
    err << "invalid algebra: " << e.what() << '\n';
    return 2;
  }
}

int main(int argc, const char* const* argv) {
  try {
    const auto config = parse_command_line(argc, argv, std::cout);
    if (!config) return 0;
    return run(*config, std::cout, std::cerr);
  } catch (const ConfigError& e) {
    std::cerr << "config error: " << e.what() << '\n';
    return 2;
  }
}

}  // namespace hyperref::cli
