// Acceptance run: one PASS/FAIL line per criterion.
#include <array>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <iostream>
#include <memory>
#include <numbers>
#include <random>
#include <sstream>
#include <string>
#include <sys/wait.h>

#include "hyperref/cli.hpp"
#include "hyperref/constants.hpp"
#include "hyperref/findim/experiments.hpp"
#include "hyperref/findim/multilinear.hpp"
#include "hyperref/findim/zero_product.hpp"
#include "hyperref/fourier_circle.hpp"
#include "hyperref/witness.hpp"

namespace {

namespace fd = hyperref::findim;
namespace hc = hyperref::circle;
namespace k = hyperref::constants;
namespace w = hyperref::witness;

struct Outcome {
  bool ok = true;
  std::ostringstream detail;

  void require(bool cond, const std::string& what) {
    if (!cond) {
      ok = false;
      detail << " [failed: " << what << "]";
    }
  }
};

int failures = 0;

void criterion(int id, const std::string& title, double limit_seconds, const std::function<void(Outcome&)>& body) {
  Outcome out;
  const auto start = std::chrono::steady_clock::now();
  try {
    body(out);
  } catch (const std::exception& e) {
    out.ok = false;
    out.detail << " [exception: " << e.what() << "]";
  }
  const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  if (limit_seconds > 0 && secs > limit_seconds) {
    out.ok = false;
    out.detail << " [runtime over " << limit_seconds << " s]";
  }
  failures += !out.ok;
  std::printf("AC%d %s  %s (%.2f s)%s\n", id, out.ok ? "PASS" : "FAIL", title.c_str(), secs, out.detail.str().c_str());
  std::fflush(stdout);
}

hc::FourierElement random_poly(std::mt19937_64& rng) {
  std::uniform_int_distribution<int> deg(0, 8);
  std::normal_distribution<double> g;
  const int d = deg(rng);
  std::vector<std::pair<hc::Frequency, hc::Complex>> pairs;
  for (int n = -d; n <= d; ++n) pairs.push_back({n, {g(rng), g(rng)}});
  return hc::FourierElement::from_pairs(std::move(pairs));
}

std::string capture(const std::string& cmd, int& code) {
  std::unique_ptr<FILE, int (*)(FILE*)> pipe(popen((cmd + " 2>/dev/null").c_str(), "r"), pclose);
  std::string out;
  std::array<char, 4096> buf{};
  std::size_t got = 0;
  while ((got = std::fread(buf.data(), 1, buf.size(), pipe.get())) > 0) out.append(buf.data(), got);
  const int status = pclose(pipe.release());
  code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
  return out;
}

void ratio_suite(Outcome& out, const std::string& label, const fd::AlgebraSpec& a, int n, double bound) {
  const auto x = fd::regular_bimodule(a);
  const auto r = fd::hyperref_ratio(a, x, n, 200, 2024);
  const auto conclusive = r.samples.size() - r.skipped;
  const double rate = conclusive ? static_cast<double>(r.inconclusive) / static_cast<double>(conclusive) : 0.0;
  std::size_t over = 0;
  for (const auto& s : r.samples)
    if (s.status == fd::SampleStatus::within_bound && s.ratio > bound) ++over;
  out.detail << " " << label << ": max " << r.max_ratio << ", inconclusive " << r.inconclusive << "/" << conclusive
             << ", skipped " << r.skipped << ";";
  out.require(over == 0, label + " ratio above bound");
  out.require(r.bound <= bound * (1 + 1e-9) && r.bound >= bound * (1 - 1e-6), label + " bound value");
  out.require(rate < 0.2, label + " inconclusive rate");
}

}  // namespace

int main(int argc, char** argv) {
  const std::string binary = argc > 1 ? argv[1] : "";

  criterion(1, "constant pipeline golden values", 1.0, [](Outcome& out) {
    const double lemma = k::circle_lemma_bound(1).value;
    const double cstar = k::cstar_group_constant().value;
    const double unit = k::unitization_constant(1, 2184.329).value;
    const double hyper = k::hyperref_bound(1, 1, 2184.329, 1).value;
    const auto sb = k::circle_strong_b(1);
    out.detail << " lemma " << lemma << ", cstar " << cstar << ", unitization " << unit << ", hyperref " << hyper;
    out.require(std::abs(lemma - 33.0479) <= 1e-3, "circle_lemma_bound(1)");
    out.require(std::abs(cstar - 2184.329) <= 1e-2, "cstar_group_constant");
    out.require(std::abs(unit - 2188.329) <= 1e-2, "unitization_constant");
    out.require(std::abs(hyper - 4.78878e6) <= 1e2, "hyperref_bound");
    out.require(sb.restricted.value / sb.general.value == 0.5, "restricted/general ratio");
  });

  criterion(2, "witness grid, 12 certified checks per epsilon", 60.0, [](Outcome& out) {
    for (double eps : {0.1, 0.3, 0.6, 1.0, 2.0, 2.9}) {
      const auto r = w::verify(w::WitnessParams::with_default_delta(eps, 100000));
      const auto tag = "eps=" + std::to_string(eps);
      out.require(r.entries.size() == 12 && r.count(w::Status::pass) == 12, tag + " all pass");
      const auto& u1 = r.at("u_l1_norm").bracket;
      out.require(u1.lo >= 1 - 1e-6 && u1.hi <= 1 + 1e-6, tag + " ||u||_1 bracket");
      const auto& fa = r.at("f_minus_a_fourier_norm");
      out.require(fa.bracket.hi < 3 * eps && 3 * eps - fa.bracket.hi > 0.01 * eps, tag + " ||f-a|| margin");
      out.detail << " " << eps << ":" << r.count(w::Status::pass) << "/12 (f-a margin " << fa.margin / eps << " eps);";
    }
  });

  criterion(3, "tensor and translation-average identities", 10.0, [](Outcome& out) {
    std::mt19937_64 rng(3);
    const auto f1 = hc::FourierElement::from_pairs({{1, 1.0}, {0, -1.0}});
    const auto e1 = hc::FourierElement::monomial(1);
    double worst_twist = 0.0, worst_avg = 0.0;
    for (int trial = 0; trial < 100; ++trial) {
      const auto f = random_poly(rng), h = random_poly(rng);
      const auto lhs = hc::twisted_lift(f1, f, h);
      const auto rhs = hc::TensorSeries::tensor(hc::pointwise_mul(f, e1), h) -
                       hc::TensorSeries::tensor(f, hc::pointwise_mul(e1, h));
      worst_twist = std::max(worst_twist, lhs.max_abs_difference(rhs));

      const auto phi = random_poly(rng), psi = random_poly(rng);
      const auto avg = hc::TensorSeries::translation_average(phi, psi);
      for (const auto& t : phi.terms())
        worst_avg = std::max(worst_avg, std::abs(avg.coefficient(t.frequency, -t.frequency) -
                                                 t.coefficient * psi.coefficient(-t.frequency)));
      worst_avg = std::max(worst_avg,
                           avg.max_abs_difference(hc::TensorSeries::diagonal_lift(hc::convolve(phi, hc::reflect(psi)))));
    }
    out.detail << " max deviations " << worst_twist << " / " << worst_avg;
    out.require(worst_twist <= 1e-12, "twisted lift");
    out.require(worst_avg <= 1e-12, "coefficient law");
  });

  criterion(4, "cochain machinery", 30.0, [](Outcome& out) {
    const std::vector<fd::AlgebraSpec> algebras{fd::pointwise(2), fd::pointwise(3), fd::matrix_algebra(2),
                                                fd::group_algebra(fd::FiniteGroup::cyclic(3))};
    std::mt19937_64 rng(4);
    double chain = 0.0, lam = 0.0;
    for (int i = 0; i < 50; ++i) {
      const auto& a = algebras[static_cast<std::size_t>(i) % algebras.size()];
      const auto x = fd::regular_bimodule(a);
      const int n = 1 + (i / 4) % 3;
      const auto t = fd::MultilinearMap::random(n, a.dim, x.dim, rng);
      chain = std::max(chain, fd::delta_n(fd::delta_n(t, a, x), a, x).tensor.cwiseAbs().maxCoeff());
      lam = std::max(lam, fd::lambda_check(t, a, x));
    }
    const auto m2 = fd::matrix_algebra(2);
    const auto c2 = fd::pointwise(2);
    const int dm = fd::cocycle_space(m2, fd::regular_bimodule(m2), 1).size();
    const int dc = fd::cocycle_space(c2, fd::regular_bimodule(c2), 1).size();
    out.detail << " chain " << chain << ", Lambda " << lam << ", dim Z1(M2)=" << dm << ", dim Z1(C2)=" << dc;
    out.require(chain <= 1e-10, "chain complex");
    out.require(lam <= 1e-10, "Lambda intertwining");
    out.require(dm == 3 && dc == 0, "cocycle dimensions");
  });

  criterion(5, "strong-(B) estimation", 300.0, [](Outcome& out) {
    const auto c2 = fd::strong_b_estimate(fd::pointwise(2), 400000, 5, 32);
    out.detail << " C^2: " << c2.value << ";";
    out.require(c2.value >= 2.0 - 1e-9, "C^2 estimate >= 2");
    for (int dim = 1; dim <= 4; ++dim)
      for (const auto& a : {fd::pointwise(dim), fd::group_algebra(fd::FiniteGroup::cyclic(dim))}) {
        const auto first = fd::strong_b_estimate(a, 400000, 5, 32);
        const auto second = fd::strong_b_estimate(a, 400000, 5, 32);
        out.detail << " " << a.name << ": " << first.value << ";";
        out.require(first.value <= 2184.33, a.name + " below 2184.33");
        out.require(first.value == second.value, a.name + " deterministic");
      }
  });

  criterion(6, "hyperreflexivity ratios", 600.0, [](Outcome& out) {
    const double b1 = k::hyperref_bound(1, 1, 2184.329, 1).value;
    const double b2 = k::hyperref_bound(2, 1, 2184.329, 1).value;
    ratio_suite(out, "C^2,n=1", fd::pointwise(2), 1, b1);
    ratio_suite(out, "M_2,n=1", fd::matrix_algebra(2), 1, b1);
    ratio_suite(out, "C^3,n=2", fd::pointwise(3), 2, b2);
  });

  criterion(7, "commutant suite for Z_3 on l^2", 300.0, [](Outcome& out) {
    const auto g = fd::FiniteGroup::cyclic(3);
    const auto rep = fd::regular_representation(g, 2.0);
    const int dim = fd::commutant(rep.action, 3).size();
    const auto r = fd::commutant_hyperref_check(g, 2.0, 200, 7);
    const double bound = 2184.33;
    std::size_t over = 0;
    for (const auto& s : r.ratios.samples)
      if (s.status == fd::SampleStatus::within_bound && s.ratio > bound) ++over;
    out.detail << " dim " << dim << ", max ratio " << r.ratios.max_ratio << ", inconclusive " << r.ratios.inconclusive
               << ", intermediate " << r.intermediate_checked << " checked / " << r.intermediate_violations
               << " violated";
    out.require(dim == 3, "commutant dimension");
    out.require(over == 0, "ratio bound");
    out.require(r.intermediate_checked > 0 && r.intermediate_violations == 0, "intermediate inequality");
  });

  criterion(8, "byte-identical reports for repeated runs", 0.0, [&](Outcome& out) {
    const std::vector<std::string> runs{
        "constants --n 2 --seed 5",
        "witness --epsilon 0.3,0.6 --truncation 20000 --seed 5",
        "findim --algebra ck:2 --degree 1 --samples 100 --seed 42",
        "findim --algebra m2 --degree 1 --samples 20 --seed 42 --format csv",
        "cvp --group cyclic:3 --samples 20 --seed 11",
    };
    for (const auto& args : runs) {
      std::string first, second;
      if (!binary.empty()) {
        int c1 = 0, c2 = 0;
        first = capture(binary + " " + args, c1);
        second = capture(binary + " " + args, c2);
        out.require(c1 == c2, args + " exit code");
      } else {
        std::vector<std::string> words{"hyperref"};
        std::istringstream in(args);
        for (std::string t; in >> t;) words.push_back(t);
        std::vector<const char*> argv_c;
        for (const auto& s : words) argv_c.push_back(s.c_str());
        const auto cfg = hyperref::cli::parse_command_line(static_cast<int>(argv_c.size()), argv_c.data(), std::cerr);
        std::ostringstream o1, o2, e;
        hyperref::cli::run(*cfg, o1, e);
        hyperref::cli::run(*cfg, o2, e);
        first = o1.str();
        second = o2.str();
      }
      out.require(!first.empty() && first == second, args);
    }
    out.detail << " " << runs.size() << " commands" << (binary.empty() ? " (in process)" : "");
  });

  return failures == 0 ? 0 : 1;
}
