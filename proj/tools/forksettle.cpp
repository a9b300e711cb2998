// Command-line front end: exact tables, bounds, game simulation and the
// brute-force verification harness.

#include <algorithm>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <set>
#include <sstream>

#include <CLI11.hpp>

#include "cli_support.hpp"
#include "forksettle/adversary.hpp"
#include "forksettle/errors.hpp"
#include "forksettle/exactprob.hpp"
#include "forksettle/game.hpp"
#include "forksettle/gfbounds.hpp"
#include "forksettle/io.hpp"
#include "forksettle/margin.hpp"
#include "forksettle/rng.hpp"
#include "forksettle/stats.hpp"
#include "forksettle/verify.hpp"

using namespace forksettle;
using cli::Cell;
using cli::Output;
using nlohmann::json;

namespace {

struct Common {
  std::uint64_t seed = 0;
  std::string format = "text";
  int precision = 3;
};

struct GridArgs {
  std::string alphas = "0.05:0.05:0.40";
  std::string ks = "50:50:1000";
  std::string init = "stationary";
  std::size_t m = 0;
  bool serial = false;
};

struct GridResult {
  std::vector<double> alphas;
  std::vector<std::size_t> ks;
  // probs[i][j] for alphas[i], ks[j]
  std::vector<std::vector<double>> probs;
};

std::vector<double> sorted_unique(std::vector<double> v) {
  std::sort(v.begin(), v.end());
  v.erase(std::unique(v.begin(), v.end()), v.end());
  return v;
}

GridResult compute_grid(const GridArgs& a) {
  GridResult g;
  g.alphas = sorted_unique(cli::parse_real_grid(a.alphas));
  g.ks = cli::parse_count_grid(a.ks);
  std::sort(g.ks.begin(), g.ks.end());
  g.ks.erase(std::unique(g.ks.begin(), g.ks.end()), g.ks.end());
  if (a.init != "stationary" && a.init != "finite") throw BadGrid("init must be 'stationary' or 'finite'");
  const bool stationary = a.init == "stationary";
  for (double alpha : g.alphas) {
    const bool ok = stationary ? (alpha > 0.0 && alpha < 0.5) : (alpha >= 0.0 && alpha <= 0.5);
    if (!ok) throw BadGrid("alpha " + std::to_string(alpha) + " outside the range for " + a.init + " start");
  }
  const std::size_t k_max = g.ks.back();
  const auto backend = a.serial ? DpBackend::Serial : DpBackend::Parallel;
  for (double alpha : g.alphas) {
    const ReachPmf init = stationary ? stationary_pmf(1.0 - 2.0 * alpha, k_max + 64) : finite_reach_pmf(a.m, alpha);
    const auto series = nonneg_margin_series(k_max, alpha, init, backend);
    auto& row = g.probs.emplace_back();
    for (std::size_t k : g.ks) row.push_back(series[k]);
  }
  return g;
}

json grid_params(const GridArgs& a) {
  json p = {{"alphas", a.alphas}, {"ks", a.ks}, {"init", a.init}};
  if (a.init == "finite") p["m"] = a.m;
  return p;
}

Output cmd_exact_table(const GridArgs& a) {
  const auto g = compute_grid(a);
  Output o;
  o.command = "exact-table";
  o.parameters = grid_params(a);
  o.columns = {"alpha", "k", "init", "probability"};
  for (std::size_t i = 0; i < g.alphas.size(); ++i) {
    for (std::size_t j = 0; j < g.ks.size(); ++j) {
      o.rows.push_back({Cell(g.alphas[i]), Cell(static_cast<std::int64_t>(g.ks[j])), Cell(a.init), Cell(g.probs[i][j])});
    }
  }
  return o;
}

Output cmd_logplot(const GridArgs& a) {
  const auto g = compute_grid(a);
  Output o;
  o.command = "logplot-data";
  o.parameters = grid_params(a);
  o.columns = {"alpha", "k", "log10_probability"};
  json fits = json::array();
  for (std::size_t i = 0; i < g.alphas.size(); ++i) {
    std::vector<double> xs;
    std::vector<double> ys;
    for (std::size_t j = 0; j < g.ks.size(); ++j) {
      const double lp = std::log10(g.probs[i][j]);
      o.rows.push_back({Cell(g.alphas[i]), Cell(static_cast<std::int64_t>(g.ks[j])), Cell(lp)});
      if (std::isfinite(lp)) {
        xs.push_back(static_cast<double>(g.ks[j]));
        ys.push_back(lp);
      }
    }
    if (xs.size() >= 2) {
      const auto f = linear_fit(xs, ys);
      fits.push_back({{"alpha", g.alphas[i]}, {"slope", f.slope}, {"intercept", f.intercept}, {"r2", f.r2}});
    }
  }
  o.extra["fits"] = std::move(fits);
  return o;
}

Output cmd_bound(const std::string& method, const std::string& eps_text, const std::string& k_text) {
  const auto epss = sorted_unique(cli::parse_real_grid(eps_text));
  auto ks = cli::parse_count_grid(k_text);
  std::sort(ks.begin(), ks.end());
  for (double e : epss) {
    if (!(e > 0.0 && e < 1.0)) throw BadGrid("eps must lie in (0, 1)");
  }
  Output o;
  o.command = "bound";
  o.parameters = {{"method", method}, {"eps", eps_text}, {"k", k_text}};
  if (method == "gf") {
    o.columns = {"eps", "k", "forkable_bound", "relative_bound", "radius"};
    for (double e : epss) {
      const GfBounds gf(e, default_order(ks.back()));
      const double radius = convergence_radius(e);
      for (std::size_t k : ks) {
        o.rows.push_back({Cell(e), Cell(static_cast<std::int64_t>(k)), Cell(gf.forkable_tail(k)),
                          Cell(gf.relative_tail(k)), Cell(radius)});
      }
    }
  } else if (method == "azuma") {
    o.columns = {"eps", "k", "azuma_bound", "azuma_forkable_bound"};
    for (double e : epss) {
      for (std::size_t k : ks) {
        o.rows.push_back({Cell(e), Cell(static_cast<std::int64_t>(k)), Cell(azuma_bound(k, e)),
                          Cell(azuma_forkable_bound(k, e))});
      }
    }
  } else {
    throw BadParams("unknown bound method '" + method + "'");
  }
  return o;
}

struct SimArgs {
  double alpha = 0.3;
  std::size_t T = 100;
  std::size_t s = 10;
  std::size_t k = 10;
  std::size_t trials = 10000;
  std::string transcripts_dir;
  std::size_t max_transcripts = 20;
  bool serial = false;
};

Output cmd_simulate(const SimArgs& a, std::uint64_t seed) {
  if (!(a.alpha >= 0.0 && a.alpha <= 1.0)) throw BadParams("alpha must lie in [0, 1]");
  const BernoulliParams dist{a.alpha, a.T};
  const auto est =
      monte_carlo_insecurity(dist, a.s, a.k, a.trials, seed, a.serial ? TrialBackend::Serial : TrialBackend::Parallel);
  const double exact = prob_settlement_violation(std::min(a.alpha, 0.5), a.s - 1, a.k + 1, a.T - a.s + 1);

  if (!a.transcripts_dir.empty()) {
    std::filesystem::create_directories(a.transcripts_dir);
    for (std::size_t i = 0; i < std::min(a.trials, a.max_transcripts); ++i) {
      const auto w = sample_bernoulli(dist, derive_seed(seed, i));
      CanonicalAdversary adv;
      const auto tr = run_game(w, adv, a.s, a.k, Validation::Deep);
      std::ofstream f(std::filesystem::path(a.transcripts_dir) / ("transcript_" + std::to_string(i) + ".json"));
      f << transcript_to_json(tr).dump(2) << '\n';
      if (!f) throw Error("could not write transcript " + std::to_string(i));
    }
  }

  Output o;
  o.command = "simulate";
  o.seed = seed;
  o.parameters = {{"alpha", a.alpha}, {"T", a.T}, {"s", a.s}, {"k", a.k}, {"trials", a.trials}};
  o.columns = {"alpha", "T", "s", "k", "trials", "wins", "estimate", "ci95", "string_probability"};
  const Cell exact_cell = a.alpha <= 0.5 ? Cell(exact) : Cell(std::string("n/a"));
  o.rows.push_back({Cell(a.alpha), Cell(static_cast<std::int64_t>(a.T)), Cell(static_cast<std::int64_t>(a.s)),
                    Cell(static_cast<std::int64_t>(a.k)), Cell(static_cast<std::int64_t>(est.trials)),
                    Cell(static_cast<std::int64_t>(est.wins)), Cell(est.estimate), Cell(est.ci95), exact_cell});
  return o;
}

Output cmd_margin(const std::string& text, std::size_t split) {
  const auto w = CharString::parse(text);
  if (split > w.size()) throw BadParams("split exceeds the string length");
  auto walk = MarginWalk::start(split);
  for (auto b : w.bits()) walk = walk_step(walk, b);
  Output o;
  o.command = "margin";
  o.parameters = {{"w", w.to_string()}, {"split", split}};
  o.columns = {"w", "split", "rho", "mu"};
  o.rows.push_back({Cell(w.to_string()), Cell(static_cast<std::int64_t>(split)), Cell(walk.rho), Cell(walk.mu)});
  o.preamble = "rho=" + std::to_string(walk.rho) + " mu=" + std::to_string(walk.mu) + "\n";
  return o;
}

Output cmd_canonical(const std::string& text) {
  const auto w = CharString::parse(text);
  const auto res = build_canonical_fork(w);
  const auto report = verify_canonical(res, w);
  if (!report.ok()) throw MismatchFound("canonical fork check failed: " + report.message);
  const auto margins = relative_margins(w);
  Output o;
  o.command = "canonical";
  o.parameters = {{"w", w.to_string()}};
  o.columns = {"split", "mu", "rho_tine_label", "tine_label", "rho_tine_id", "tine_id"};
  for (std::size_t m = 0; m <= w.size(); ++m) {
    const auto& p = res.witnesses[m];
    if (!p) {
      o.rows.push_back({Cell(static_cast<std::int64_t>(m)), Cell(margins[m]), Cell(std::string("-")),
                        Cell(std::string("-")), Cell(std::string("-")), Cell(std::string("-"))});
      continue;
    }
    const auto& f = res.fork;
    o.rows.push_back({Cell(static_cast<std::int64_t>(m)), Cell(margins[m]),
                      Cell(static_cast<std::int64_t>(f.label(p->rho_tine.terminal))),
                      Cell(static_cast<std::int64_t>(f.label(p->tine.terminal))),
                      Cell(static_cast<std::int64_t>(p->rho_tine.terminal)),
                      Cell(static_cast<std::int64_t>(p->tine.terminal))});
  }
  o.preamble = to_dot(res.fork, w);
  o.extra["fork"] = fork_to_json(res.fork);
  o.extra_in_text = false;
  return o;
}

Output cmd_verify(std::size_t max_len, bool mutate) {
  VerifyOptions opt;
  opt.max_len = max_len;
  if (mutate) opt.margin = corrupted_relative_margin;
  const auto rep = verify_recursion(opt);
  Output o;
  o.command = "verify-recursion";
  o.parameters = {{"max_len", max_len}, {"mutate", mutate}};
  o.columns = {"max_len", "strings", "split_checks", "canonical_checks", "status"};
  o.rows.push_back({Cell(static_cast<std::int64_t>(max_len)), Cell(static_cast<std::int64_t>(rep.strings)),
                    Cell(static_cast<std::int64_t>(rep.split_checks)),
                    Cell(static_cast<std::int64_t>(rep.canonical_checks)), Cell(std::string("ok"))});
  return o;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Settlement analysis for longest-chain protocols"};
  app.set_version_flag("--version", std::string(FORKSETTLE_VERSION));
  app.require_subcommand(1);
  app.fallthrough();

  Common common;
  app.add_option("--seed", common.seed, "Seed for stochastic commands (echoed in output)");
  app.add_option("--format", common.format, "Output format")->check(CLI::IsMember({"csv", "json", "text"}));
  app.add_option("--precision", common.precision, "Significant digits for reals")->check(CLI::Range(1, 17));

  std::function<Output()> run;

  GridArgs table;
  auto* exact = app.add_subcommand("exact-table", "Exact Pr[mu_x(y) >= 0] over an (alpha, k) grid");
  exact->add_option("--alphas", table.alphas, "Alpha grid: list, a..b or start:step:stop");
  exact->add_option("--ks", table.ks, "Suffix-length grid");
  exact->add_option("--init", table.init, "Reach law of x: stationary or finite");
  exact->add_option("--m", table.m, "Prefix length for --init finite");
  exact->add_flag("--serial", table.serial, "Use the serial reference kernel");
  exact->callback([&] { run = [&] { return cmd_exact_table(table); }; });

  GridArgs plot;
  auto* logplot = app.add_subcommand("logplot-data", "log10 probabilities and per-alpha linear fits");
  logplot->add_option("--alphas", plot.alphas, "Alpha grid");
  logplot->add_option("--ks", plot.ks, "Suffix-length grid");
  logplot->add_flag("--serial", plot.serial, "Use the serial reference kernel");
  logplot->callback([&] { run = [&] { return cmd_logplot(plot); }; });

  std::string method = "gf";
  std::string eps_text = "0.5";
  std::string k_text = "100";
  auto* bound = app.add_subcommand("bound", "Generating-function or Azuma upper bounds");
  bound->add_option("--method", method, "gf or azuma")->check(CLI::IsMember({"gf", "azuma"}));
  bound->add_option("--eps", eps_text, "Epsilon grid")->required();
  bound->add_option("--k", k_text, "k grid")->required();
  bound->callback([&] { run = [&] { return cmd_bound(method, eps_text, k_text); }; });

  SimArgs sim;
  auto* simulate = app.add_subcommand("simulate", "Monte-Carlo settlement game with the canonical adversary");
  simulate->add_option("--alpha", sim.alpha, "Pr[slot is adversarial]")->required();
  simulate->add_option("--T", sim.T, "Slots per game")->required();
  simulate->add_option("--s", sim.s, "Target slot")->required();
  simulate->add_option("--k", sim.k, "Settlement delay")->required();
  simulate->add_option("--trials", sim.trials, "Number of games");
  simulate->add_option("--emit-transcripts", sim.transcripts_dir, "Directory for JSON transcripts of the first games");
  simulate->add_option("--max-transcripts", sim.max_transcripts, "How many transcripts to write");
  simulate->add_flag("--serial", sim.serial, "Run trials on one thread");
  simulate->callback([&] { run = [&] { return cmd_simulate(sim, common.seed); }; });

  std::string margin_w;
  std::size_t split = 0;
  auto* margin = app.add_subcommand("margin", "rho and relative margin of a string");
  margin->add_option("--split", split, "|x|")->required();
  margin->add_option("string", margin_w, "Characteristic string of 0s and 1s")->required();
  margin->callback([&] { run = [&] { return cmd_margin(margin_w, split); }; });

  std::string canon_w;
  auto* canonical = app.add_subcommand("canonical", "Canonical fork (DOT) and its witness pairs");
  canonical->add_option("string", canon_w, "Characteristic string")->required();
  canonical->callback([&] { run = [&] { return cmd_canonical(canon_w); }; });

  std::size_t max_len = 6;
  bool mutate = false;
  auto* verify = app.add_subcommand("verify-recursion", "Recursion vs brute force vs canonical fork");
  verify->add_option("--max-len", max_len, "Longest string checked (<= 10)");
  verify->add_flag("--mutate", mutate, "Check a deliberately wrong recursion (should fail)");
  verify->callback([&] { run = [&] { return cmd_verify(max_len, mutate); }; });

  try {
    app.parse(argc, argv);
  } catch (const CLI::Success& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 2;
  }

  try {
    Output out = run();
    out.seed = common.seed;
    std::ostringstream buf;
    cli::write(buf, out, cli::parse_format(common.format), common.precision);
    std::cout << buf.str();
    return 0;
  } catch (const MismatchFound& e) {
    std::cerr << "mismatch: " << e.what() << '\n';
    return 3;
  } catch (const InvalidAdversaryFork& e) {
    std::cerr << "internal error: " << e.what() << '\n';
    return 3;
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "internal error: " << e.what() << '\n';
    return 3;
  }
}
