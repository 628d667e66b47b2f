// Acceptance harness: one line per criterion, "--only N" runs a single one.
// Exit status is 0 iff every selected criterion passes within its time limit.

#include <array>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <functional>
#include <sstream>
#include <string>
#include <vector>
#include <sys/wait.h>

#include "wlpdisc/wlpdisc.hpp"

using namespace wlpdisc;

namespace {

struct Outcome {
  bool pass = true;
  std::string detail;
};

struct Criterion {
  int id;
  std::string name;
  double limit_seconds;
  std::function<Outcome()> run;
};

std::string fmt(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.3g", v);
  return buf;
}

std::vector<double> uniforms(Rng& rng, std::size_t n) {
  std::vector<double> x(n);
  for (auto& v : x) v = rng.uniform();
  return x;
}

std::size_t draw(Rng& rng, std::size_t lo, std::size_t hi) {
  return lo + static_cast<std::size_t>(rng.uniform() * static_cast<double>(hi - lo + 1));
}

Outcome initial_identity() {
  const std::vector<double> gam{1.0, 0.5, 0.25};
  double worst = 0.0;
  for (double p : {1.5, 2.0, 3.0, 4.0}) {
    for (std::size_t d = 1; d <= 3; ++d) {
      const std::span<const double> g(gam.data(), d);
      const auto hp = holder_from_p(p);
      worst = std::max(worst, std::abs(lp_quadrature(QuadRule::empty(d), g, hp).value - initial_discrepancy(g, hp)));
    }
  }
  return {worst <= 1e-8, "max err " + fmt(worst) + " (tol 1e-8)"};
}

Outcome expansion_oracle() {
  Rng rng(2024, 1);
  double worst = 0.0;
  for (int t = 0; t < 50; ++t) {
    const std::size_t n = draw(rng, 1, 8), d = draw(rng, 1, 3);
    const double p = t % 2 ? 4.0 : 2.0;
    const PointSet pts(d, uniforms(rng, n * d));
    std::vector<double> g(d);
    for (auto& x : g) x = 0.05 + 0.95 * rng.uniform();
    const double e = exact_even_p(pts, g, p).value;
    const double q = lp_quadrature(QuadRule::qmc(pts), g, holder_from_p(p)).value;
    worst = std::max(worst, std::abs(e - q));
  }
  return {worst <= 1e-8, "max err " + fmt(worst) + " over 50 instances (tol 1e-8)"};
}

Outcome reflection() {
  Rng rng(2024, 2);
  double worst = 0.0;
  for (int t = 0; t < 100; ++t) {
    const std::size_t n = draw(rng, 1, 16), d = draw(rng, 1, 4);
    const PointSet pts(d, uniforms(rng, n * d));
    std::vector<double> g(d);
    for (auto& x : g) x = 0.05 + 0.95 * rng.uniform();
    worst = std::max(worst, std::abs(qmc_worst_case_error_p2(pts, g) - exact_even_p(reflect(pts), g, 2.0).value));
  }
  return {worst <= 1e-12, "max err " + fmt(worst) + " over 100 instances (tol 1e-12)"};
}

Outcome lemma_identities() {
  const GaussLegendre gl(32);
  double worst = 0.0;
  for (double p : {2.0, 3.0, 4.0}) {
    const auto hp = holder_from_p(p);
    for (double g : {1.0, 0.5, 0.25, 0.1}) {
      const auto h = h_worst(g, p);
      worst = std::max(worst, std::abs(h.integral_abs_pow(1.0, gl) - h_worst_integral(g, p)));
      worst = std::max(worst, std::abs(norm_1d(h, g, hp) - h_worst_norm(g, hp)));
    }
  }
  return {worst <= 1e-10, "max err " + fmt(worst) + " (tol 1e-10)"};
}

Outcome theorem2_ingredients() {
  double err_a = 0.0, err_b = 0.0, err_alpha = 0.0, err_beta = 0.0;
  for (double p : {2.0, 3.0, 4.0}) {
    const auto hp = holder_from_p(p);
    const auto s = fooling_split(p);
    const double base = p / (2.0 * (p + 1.0));
    err_b = std::max(err_b, std::abs((s.h11 + s.h120).integral() - base));
    err_b = std::max(err_b, std::abs((s.h11 + s.h121).integral() - (base + split_constant(p) / 4.0)));
    const auto nodes = alpha_beta_nodes(p);
    for (double g : {1.0, 0.25}) {
      const double n0 = std::pow(norm_1d(s_function(g, p, s.a), g, hp), hp.q());
      const double n1 = std::pow(norm_1d(s_function(g, p, std::nextafter(s.a, 2.0)), g, hp), hp.q());
      err_a = std::max(err_a, std::abs(n0 - n1));
      const auto closed = alpha_beta(g, hp);
      const auto num = numeric_alpha_beta(g, hp, nodes);
      err_alpha = std::max(err_alpha, std::abs(std::pow(closed.alpha, hp.q()) - num.alpha_q));
      err_beta = std::max(err_beta, std::abs(closed.beta - num.beta));
    }
  }
  const bool a = err_a <= 1e-10, b = err_b <= 1e-12, c = err_alpha <= 1e-8 && err_beta <= 1e-8;
  return {a && b && c, std::string("(a) ") + (a ? "pass" : "FAIL") + " err " + fmt(err_a) + "; (b) " + (b ? "pass" : "FAIL") +
                           " err " + fmt(err_b) + "; (c) " + (c ? "pass" : "FAIL") + " alpha err " + fmt(err_alpha) +
                           ", beta err " + fmt(err_beta)};
}

Outcome positivity() {
  bool ok = true;
  for (int i = 0; i < 200; ++i) ok = ok && tau(1.01 * std::pow(64.0 / 1.01, i / 199.0)) > 0.0;
  for (int i = 0; i < 100; ++i) {
    const double q = 1.05 * std::pow(16.0 / 1.05, i / 99.0);
    ok = ok && rho(q, 0.5 * u_threshold(q)) > 0.0;
  }
  // pins recomputed in long double
  const long double k = 1.0L + std::pow(2.0L, 2.0L / 3.0L) - std::pow(2.0L, 1.0L / 3.0L);
  const long double tau2 = (4.0L - 3.0L * k) / (28.0L + 3.0L * k);
  const long double rho2 = 1.0L / 1536.0L - (1.0L / 4096.0L) * (4.0L / 3.0L);
  const bool pins = std::abs(tau(2.0) - 5.49e-4) <= 1e-6 && std::abs(tau(2.0) - static_cast<double>(tau2)) <= 1e-15 &&
                    std::abs(rho(2.0, 1.0 / 128.0) - 3.255e-4) <= 1e-7 &&
                    std::abs(rho(2.0, 1.0 / 128.0) - static_cast<double>(rho2)) <= 1e-15;
  return {ok && pins, "positivity " + std::string(ok ? "ok" : "violated") + "; tau_2 = " + fmt(tau(2.0)) +
                          ", rho_2(1/128) = " + fmt(rho(2.0, 1.0 / 128.0)) + (pins ? "" : " (pin mismatch)")};
}

Outcome bracket_consistency() {
  Rng rng(2024, 7);
  int violations = 0, closed = 0;
  for (int t = 0; t < 50; ++t) {
    const double p = t % 2 ? 4.0 : 2.0;
    const std::size_t d = draw(rng, 1, 6);
    const double eps = 0.05 + 0.4 * rng.uniform();
    const int fam = t % 3;
    const auto w = fam == 0   ? WeightSequence::polynomial(0.5 + 2.5 * rng.uniform())
                   : fam == 1 ? WeightSequence::geometric(0.1 + 0.8 * rng.uniform())
                              : WeightSequence::constant(0.1 + 0.9 * rng.uniform());
    const auto b = inverse_bracket(w, holder_from_p(p), eps, d, {GeneratorSpec::halton(), GeneratorSpec::grid()},
                                   p == 2.0 ? 512 : 64);
    if (!b.upper_estimate) continue;  // open bracket: upper is infinite
    ++closed;
    if (std::ceil(b.lower) > static_cast<double>(*b.upper_estimate) || b.witness_value > b.threshold) ++violations;
  }
  return {violations == 0, std::to_string(violations) + " violations; " + std::to_string(closed) + "/50 brackets closed"};
}

Outcome mc_calibration() {
  Rng rng(2024, 8);
  const std::size_t d = 20, n = 32;
  const PointSet pts(d, uniforms(rng, n * d));
  const auto g = WeightSequence::polynomial(1.0).materialize(d);
  const double exact = exact_even_p(pts, g, 2.0).value;
  int hits = 0;
  for (std::uint64_t seed = 0; seed < 100; ++seed) {
    const auto r = lp_monte_carlo(QuadRule::qmc(pts), g, holder_from_p(2.0), 20000, seed);
    if (r.std_error && std::abs(r.value - exact) <= 4.0 * *r.std_error) ++hits;
  }
  return {hits >= 95, std::to_string(hits) + "/100 runs cover the exact value " + fmt(exact)};
}

Outcome classifier() {
  const auto p2 = holder_from_p(2.0);
  bool table = classify(WeightSequence::polynomial(2.0), p2).tractability == TractabilityClass::SPT &&
               classify(WeightSequence::polynomial(1.0), p2).tractability == TractabilityClass::PTOnly &&
               classify(WeightSequence::inverse_sqrt_log(1.0), p2).tractability == TractabilityClass::WTOnly &&
               classify(WeightSequence::constant(1.0), p2).tractability == TractabilityClass::None;
  Rng rng(2024, 9);
  int broken = 0;
  for (auto f : {WeightFamily::Constant, WeightFamily::Polynomial, WeightFamily::Geometric, WeightFamily::Logarithmic,
                 WeightFamily::InverseSqrtLog}) {
    for (int i = 0; i < 20; ++i) {
      const double param = f == WeightFamily::Polynomial ? 0.1 + 4.0 * rng.uniform() : 0.05 + 0.9 * rng.uniform();
      const auto v = classify(WeightSequence::family(f, param), holder_from_p(1.0 + 5.0 * rng.uniform()));
      if ((v.cond_spt && !v.cond_pt) || (v.cond_pt && !v.cond_wt)) ++broken;
    }
  }
  return {table && broken == 0, std::string("table ") + (table ? "ok" : "mismatch") + "; chain violations " +
                                    std::to_string(broken) + "/100"};
}

std::pair<int, std::string> shell(const std::string& args) {
  const std::string cmd = std::string(WLPDISC_CLI_PATH) + " " + args + " 2>/dev/null";
  FILE* pipe = popen(cmd.c_str(), "r");
  if (!pipe) return {-1, {}};
  std::string out;
  std::array<char, 4096> buf{};
  std::size_t got = 0;
  while ((got = fread(buf.data(), 1, buf.size(), pipe)) > 0) out.append(buf.data(), got);
  const int status = pclose(pipe);
  return {WIFEXITED(status) ? WEXITSTATUS(status) : -1, out};
}

Outcome determinism() {
  const auto a = shell("verify --seed 42");
  const auto b = shell("verify --seed 42");
  const bool verify_same = !a.second.empty() && a == b;
  const std::string pts = "/tmp/wlpdisc_acceptance_points.txt";
  if (shell("gen --kind random:3 --n 50 --d 6 --output " + pts).first != 0) return {false, "could not write points"};
  const std::string disc = "disc --points " + pts +
                           R"( --weights '{"type":"family","name":"geometric","theta":0.7}' --p 3 --method mc --samples 30000 --seed 9)";
  const auto one = shell("--threads 1 " + disc);
  const auto many = shell("--threads 4 " + disc);
  const bool mc_same = one.first == 0 && !one.second.empty() && one.second == many.second;
  std::remove(pts.c_str());
  return {verify_same && mc_same, std::string("verify JSON ") + (verify_same ? "identical" : "differs") +
                                      "; monte-carlo across --threads " + (mc_same ? "identical" : "differs")};
}

}  // namespace

int main(int argc, char** argv) {
  int only = 0;
  for (int i = 1; i < argc; ++i) {
    if (std::string(argv[i]) == "--only" && i + 1 < argc) only = std::atoi(argv[++i]);
  }
  const std::vector<Criterion> all{
      {1, "initial-discrepancy identity", 10, initial_identity},
      {2, "even-p expansion vs quadrature oracle", 30, expansion_oracle},
      {3, "reflection/kernel identity", 5, reflection},
      {4, "worst-case function integral and norm", 5, lemma_identities},
      {5, "split functions and alpha/beta", 10, theorem2_ingredients},
      {6, "tau and rho positivity with pins", 1, positivity},
      {7, "bracket consistency", 300, bracket_consistency},
      {8, "Monte Carlo calibration", 120, mc_calibration},
      {9, "classifier table and chain", 1, classifier},
      {10, "determinism", 60, determinism},
  };
  bool ok = true;
  bool ran = false;
  for (const auto& c : all) {
    if (only != 0 && c.id != only) continue;
    ran = true;
    const auto t0 = std::chrono::steady_clock::now();
    Outcome o;
    try {
      o = c.run();
    } catch (const std::exception& e) {
      o = {false, std::string("exception: ") + e.what()};
    }
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    const bool in_time = secs < c.limit_seconds;
    const bool pass = o.pass && in_time;
    ok = ok && pass;
    std::printf("criterion %2d [PRIMARY] %-40s %s  %s  (%.2fs, limit %.0fs%s)\n", c.id, c.name.c_str(),
                pass ? "PASS" : "FAIL", o.detail.c_str(), secs, c.limit_seconds, in_time ? "" : ", over time");
  }
  if (!ran) {
    std::fprintf(stderr, "no criterion %d\n", only);
    return 2;
  }
  return ok ? 0 : 1;
}
