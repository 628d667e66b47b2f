// wlpdisc command-line front end. Exit codes: 0 ok, 1 verification failure,
// 2 usage or input error.

#include <cstdint>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>

#include <CLI11.hpp>

#include "wlpdisc/wlpdisc.hpp"

namespace {

using namespace wlpdisc;

constexpr int kExitOk = 0;
constexpr int kExitVerifyFailed = 1;
constexpr int kExitUsage = 2;

struct Common {
  unsigned threads = 0;
  std::string output;
  std::string format;
};

void emit(const Common& c, const std::string& text) {
  if (c.output.empty() || c.output == "-") {
    std::cout << text;
    return;
  }
  std::ofstream out(c.output, std::ios::binary);
  if (!out) throw ParseError("cannot write '" + c.output + "'");
  out << text;
}

void require_format(const Common& c, std::initializer_list<const char*> allowed) {
  if (c.format.empty()) return;
  for (const char* f : allowed) {
    if (c.format == f) return;
  }
  throw CLI::ValidationError("--format", "'" + c.format + "' is not supported by this subcommand");
}

std::string csv_row(std::initializer_list<std::string> cells) {
  std::string out;
  bool first = true;
  for (const auto& s : cells) {
    if (!first) out += ',';
    first = false;
    out += s;
  }
  return out + "\n";
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Weighted L_p discrepancy, inverse-discrepancy bounds and tractability classification"};
  app.require_subcommand(1);
  app.fallthrough();
  Common common;
  app.add_option("--threads", common.threads, "worker threads (0 = all cores)")->check(CLI::NonNegativeNumber);
  app.add_option("--output,-o", common.output, "output file (default stdout)");
  app.add_option("--format", common.format, "json | csv | table (subcommand dependent)")
      ->check(CLI::IsMember({"json", "csv", "table"}));

  // disc
  std::string points_path, weights_spec, method = "auto";
  double p = 2.0;
  std::size_t samples = 100000;
  std::uint64_t seed = 1;
  int order = kDefaultQuadratureOrder;
  auto* disc = app.add_subcommand("disc", "weighted L_p discrepancy of a point-set file");
  disc->add_option("--points", points_path, "point-set file")->required();
  disc->add_option("--weights", weights_spec, "weight spec (inline JSON or file)")->required();
  disc->add_option("--p", p, "exponent p >= 1")->required();
  disc->add_option("--method", method, "exact | quad | mc | auto")->check(CLI::IsMember({"exact", "quad", "mc", "auto"}));
  disc->add_option("--samples", samples, "Monte Carlo samples")->check(CLI::PositiveNumber);
  disc->add_option("--seed", seed, "Monte Carlo seed");
  disc->add_option("--order", order, "Gauss-Legendre order per cell")->check(CLI::Range(2, 256));

  // initial
  std::size_t d = 1;
  auto* initial = app.add_subcommand("initial", "initial discrepancy (empty point set)");
  initial->add_option("--weights", weights_spec)->required();
  initial->add_option("--d", d)->required()->check(CLI::PositiveNumber);
  initial->add_option("--p", p)->required();

  // bounds
  double eps = 0.1;
  std::optional<double> upper_c;
  auto* bounds = app.add_subcommand("bounds", "closed-form bounds on the inverse discrepancy");
  bounds->add_option("--weights", weights_spec)->required();
  bounds->add_option("--p", p)->required();
  bounds->add_option("--eps", eps)->required();
  bounds->add_option("--d", d)->required()->check(CLI::PositiveNumber);
  bounds->add_option("--upper-C", upper_c, "absolute constant of the upper bound");

  // inverse
  std::string generators = "halton,grid";
  std::size_t n_max = 1024;
  bool mc_risk = false;
  auto* inverse = app.add_subcommand("inverse", "bracket the inverse discrepancy by searching generated point sets");
  inverse->add_option("--weights", weights_spec)->required();
  inverse->add_option("--p", p)->required();
  inverse->add_option("--eps", eps)->required();
  inverse->add_option("--d", d)->required()->check(CLI::PositiveNumber);
  inverse->add_option("--generators", generators, "e.g. halton,grid,random:7,lattice:1,5 (';' also separates)");
  inverse->add_option("--n-max", n_max)->check(CLI::PositiveNumber);
  inverse->add_flag("--mc-risk", mc_risk, "accept Monte Carlo pass/fail (estimate + 3 std_error) for odd p, d > 8");
  inverse->add_option("--samples", samples, "Monte Carlo samples when --mc-risk applies")->check(CLI::PositiveNumber);
  inverse->add_option("--seed", seed, "Monte Carlo seed");

  // classify
  auto* classify_cmd = app.add_subcommand("classify", "tractability class of a weight family");
  classify_cmd->add_option("--weights", weights_spec)->required();
  classify_cmd->add_option("--p", p)->required();

  // poly2
  double q = 2.0;
  std::optional<double> u;
  auto* poly2 = app.add_subcommand("poly2", "lower bound for the degree-2 polynomial space");
  poly2->add_option("--weights", weights_spec)->required();
  poly2->add_option("--q", q)->required();
  poly2->add_option("--u", u, "u_q in (0, u_threshold(q)); default threshold/2");
  poly2->add_option("--eps", eps)->required();
  poly2->add_option("--d", d)->required()->check(CLI::PositiveNumber);

  // gen
  std::string kind;
  std::size_t n = 1;
  std::optional<std::uint64_t> gen_seed;
  auto* gen = app.add_subcommand("gen", "write a generated point set");
  gen->add_option("--kind", kind, "halton | grid | random | lattice:g1,... | korobov:a")->required();
  gen->add_option("--n", n)->required()->check(CLI::PositiveNumber);
  gen->add_option("--d", d)->required()->check(CLI::PositiveNumber);
  gen->add_option("--seed", gen_seed, "seed for random points");

  // verify
  std::uint64_t verify_seed = 42;
  auto* verify = app.add_subcommand("verify", "run the closed-form identity suite");
  verify->add_option("--seed", verify_seed);

  // sweep
  std::size_t d_from = 1, d_to = 10;
  auto* sweep = app.add_subcommand("sweep", "CSV of bounds against d");
  sweep->add_option("--weights", weights_spec)->required();
  sweep->add_option("--p", p)->required();
  sweep->add_option("--eps", eps)->required();
  sweep->add_option("--d-from", d_from)->required()->check(CLI::PositiveNumber);
  sweep->add_option("--d-to", d_to)->required()->check(CLI::PositiveNumber);
  sweep->add_option("--upper-C", upper_c);

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kExitUsage;
  }

  try {
    if (disc->parsed()) {
      require_format(common, {"json", "csv"});
      const auto w = parse_weight_spec(weights_spec);
      const auto pts = read_point_set(points_path);
      const auto hp = HolderPair::from_p(p);
      if (method == "auto") {
        method = is_even_integer(p) && p <= 64.0 ? "exact" : pts.d() <= kMaxQuadratureDim ? "quad" : "mc";
      }
      DiscrepancyResult r;
      if (method == "exact") {
        r = generalized_exact_even_p(QuadRule::qmc(pts), w.materialize(pts.d()), p, common.threads);
      } else if (method == "quad") {
        r = lp_quadrature(QuadRule::qmc(pts), w.materialize(pts.d()), hp, order, common.threads);
      } else {
        r = lp_monte_carlo(QuadRule::qmc(pts), w.materialize(pts.d()), hp, samples, seed, common.threads);
      }
      if (common.format == "csv") {
        emit(common, csv_row({"value", "method", "std_error", "p", "d", "n"}) +
                         csv_row({format_double(r.value), std::string(method_name(r.method)),
                                  r.std_error ? format_double(*r.std_error) : "", format_double(r.p),
                                  std::to_string(r.d), std::to_string(r.n)}));
      } else {
        emit(common, dump(to_json(r)));
      }
    } else if (initial->parsed()) {
      require_format(common, {"json"});
      const auto w = parse_weight_spec(weights_spec);
      Json j;
      j["value"] = initial_discrepancy(w, d, HolderPair::from_p(p));
      j["p"] = p;
      j["d"] = d;
      emit(common, dump(j));
    } else if (bounds->parsed()) {
      require_format(common, {"json"});
      emit(common, dump(to_json(bound_report(parse_weight_spec(weights_spec), HolderPair::from_p(p), eps, d, upper_c))));
    } else if (inverse->parsed()) {
      require_format(common, {"json"});
      SearchOptions opt;
      opt.mc_risk = mc_risk;
      opt.mc_samples = samples;
      opt.mc_seed = seed;
      opt.threads = common.threads;
      const auto b = inverse_bracket(parse_weight_spec(weights_spec), HolderPair::from_p(p), eps, d,
                                     parse_generator_list(generators), n_max, opt);
      emit(common, dump(to_json(b)));
    } else if (classify_cmd->parsed()) {
      require_format(common, {"json"});
      const auto w = parse_weight_spec(weights_spec);
      try {
        emit(common, dump(to_json(classify(w, HolderPair::from_p(p)))));
      } catch (const ClassificationUndecidable& e) {
        Json j;
        j["class"] = "undecidable";
        j["reason"] = e.what();
        j["partial_sums"] = to_json(e.trend());
        emit(common, dump(j));
        std::cerr << "error: " << e.what() << "\n";
        return kExitUsage;
      }
    } else if (poly2->parsed()) {
      require_format(common, {"json"});
      const Poly2Config cfg(q, parse_weight_spec(weights_spec), u);
      Json j;
      j["q"] = cfg.q();
      j["u"] = cfg.u();
      j["u_threshold"] = u_threshold(cfg.q());
      j["rho"] = cfg.rho_value();
      j["eps"] = eps;
      j["d"] = d;
      j["lower"] = poly2_lower_bound(cfg, eps, d);
      emit(common, dump(j));
    } else if (gen->parsed()) {
      auto spec = parse_generator(kind == "random" && gen_seed ? "random:" + std::to_string(*gen_seed) : kind);
      if (gen_seed && spec.kind != GeneratorKind::UniformRandom) {
        throw CLI::ValidationError("--seed", "only random points take a seed");
      }
      emit(common, write_point_set(generate(spec, n, d, common.threads)));
    } else if (verify->parsed()) {
      require_format(common, {"json", "table"});
      VerifyOptions opt;
      opt.seed = verify_seed;
      opt.threads = common.threads;
      const auto results = run_all(opt);
      if (common.format == "table") {
        std::string out;
        char line[256];
        for (const auto& r : results) {
          std::snprintf(line, sizeof line, "%-22s %-4s  err=%-12.4g tol=%-8.2g  %s\n", r.id.c_str(),
                        r.status == CheckStatus::Pass ? "pass" : "FAIL", r.max_abs_err, r.tolerance, r.grid.c_str());
          out += line;
        }
        emit(common, out);
      } else {
        emit(common, dump(to_json(results)));
      }
      return all_passed(results) ? kExitOk : kExitVerifyFailed;
    } else if (sweep->parsed()) {
      require_format(common, {"csv"});
      if (d_from > d_to) throw CLI::ValidationError("--d-from", "must not exceed --d-to");
      const auto w = parse_weight_spec(weights_spec);
      const auto hp = HolderPair::from_p(p);
      const auto gammas = w.materialize(d_to);
      std::string out = csv_row({"d", "lower", "upper"});
      for (std::size_t dd = d_from; dd <= d_to; ++dd) {
        const std::span<const double> g(gammas.data(), dd);
        const double lower = hp.p() > 1.0 && eps > 0.0 && eps < 0.5 ? lower_bound_inverse(g, hp, eps) : 0.0;
        const std::string upper = upper_c ? format_double(upper_bound_inverse(g, hp.p(), eps, upper_c)) : "";
        out += csv_row({std::to_string(dd), format_double(lower), upper});
      }
      emit(common, out);
    }
  } catch (const CLI::Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitUsage;
  }
  return kExitOk;
}
