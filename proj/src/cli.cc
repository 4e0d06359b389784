// Copyright 2026 The rrm Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "rrm/cli.h"

#include <chrono>
#include <cmath>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <optional>
#include <sstream>

#include "CLI11.hpp"
#include "json.hpp"
#include "rrm/datagen.h"
#include "rrm/eval.h"
#include "rrm/oracle.h"
#include "rrm/solver2d.h"
#include "rrm/solverhd.h"

namespace rrm {
namespace {

using nlohmann::json;

class UsageError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// "1,3,5", "1..7" or a mix ("1..3,6"); 1-based in, 0-based out.
IndexSet ParseIndexList(const std::string& text) {
  IndexSet out;
  std::stringstream ss(text);
  std::string part;
  auto number = [&](const std::string& s) -> std::size_t {
    std::size_t pos = 0;
    unsigned long long v = 0;
    try {
      v = std::stoull(s, &pos);
    } catch (const std::exception&) {
      throw UsageError("bad index '" + s + "' in --set");
    }
    if (pos != s.size() || v < 1) throw UsageError("bad index '" + s + "' in --set");
    return static_cast<std::size_t>(v - 1);
  };
  while (std::getline(ss, part, ',')) {
    if (part.empty()) continue;
    const auto dots = part.find("..");
    if (dots == std::string::npos) {
      out.push_back(number(part));
    } else {
      const std::size_t lo = number(part.substr(0, dots));
      const std::size_t hi = number(part.substr(dots + 2));
      if (hi < lo) throw UsageError("empty range '" + part + "' in --set");
      for (std::size_t i = lo; i <= hi; ++i) out.push_back(i);
    }
  }
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  if (out.empty()) throw UsageError("--set is empty");
  return out;
}

std::vector<std::string> SplitList(const std::string& text) {
  std::vector<std::string> out;
  std::stringstream ss(text);
  std::string part;
  while (std::getline(ss, part, ',')) {
    if (!part.empty()) out.push_back(part);
  }
  return out;
}

json OneBased(const IndexSet& set) {
  json a = json::array();
  for (TupleIndex t : set) a.push_back(t + 1);
  return a;
}

// Where the command writes; stdout unless --out names a file.
class Sink {
 public:
  Sink(const std::string& path, std::ostream& fallback) : fallback_(fallback) {
    if (!path.empty()) {
      file_.open(path, std::ios::binary);
      if (!file_) throw std::runtime_error("cannot write " + path);
    }
  }
  std::ostream& stream() { return file_.is_open() ? file_ : fallback_; }

 private:
  std::ofstream file_;
  std::ostream& fallback_;
};

struct Common {
  std::string input;
  std::string restrict_path;
  std::string out;
  std::uint64_t seed = 0;
  unsigned threads = 1;
  std::vector<std::string> negate;
  bool raw = false;  // input already normalized; keep values as they are
};

void AddInput(CLI::App* cmd, Common& c, bool required = true) {
  auto* opt = cmd->add_option("--input,-i", c.input, "CSV dataset (header row, comma separated)")
                  ->check(CLI::ExistingFile);
  if (required) opt->required();
  cmd->add_option("--negate", c.negate, "columns where smaller is better")->delimiter(',');
  cmd->add_flag("--no-normalize", c.raw, "use values as given (must already be in [0,1])");
}

void AddCommon(CLI::App* cmd, Common& c) {
  cmd->add_option("--restrict", c.restrict_path, "JSON file {\"halfspaces\": [[...], ...]}");
  cmd->add_option("--seed", c.seed, "random seed")->envname("RRK_SEED");
  cmd->add_option("--threads", c.threads, "worker threads (results do not depend on it)")
      ->check(CLI::Range(1u, 1024u));
  cmd->add_option("--out,-o", c.out, "output file (default: stdout)");
}

Dataset Load(const Common& c) {
  CsvOptions opts;
  opts.normalize = !c.raw;
  opts.negate_columns = c.negate;
  return LoadCsv(c.input, opts);
}

RestrictedSpace Space(const Common& c) {
  return c.restrict_path.empty() ? RestrictedSpace() : LoadRestrictedSpace(c.restrict_path);
}

json CommonConfig(const std::string& command, const Common& c) {
  json j = {{"command", command}, {"seed", c.seed}, {"threads", c.threads}};
  if (!c.input.empty()) j["input"] = c.input;
  if (!c.restrict_path.empty()) j["restrict"] = c.restrict_path;
  if (!c.negate.empty()) j["negate"] = c.negate;
  if (c.raw) j["normalize"] = false;
  return j;
}

std::string PickAlgo(const std::string& algo, const Dataset& data) {
  if (algo.empty()) return data.dims() == 2 ? "2d" : "hd";
  if (algo == "2d" && data.dims() != 2) {
    throw UsageError("--algo 2d needs a 2-attribute dataset (got d = " + std::to_string(data.dims()) + ")");
  }
  return algo;
}

struct HdFlags {
  std::size_t gamma = 6;
  double delta = 0.03;
  std::optional<std::size_t> m;
  bool linear_scan = false;
};

void AddHdFlags(CLI::App* cmd, HdFlags& f) {
  cmd->add_option("--gamma", f.gamma, "polar grid segments per angle")->check(CLI::PositiveNumber);
  cmd->add_option("--delta", f.delta, "failure probability for the sample size")
      ->check(CLI::Range(0.0, 1.0));
  cmd->add_option("--m", f.m, "sample size (default: derived from n, d, r, delta)");
}

HdParams MakeHdParams(const HdFlags& f, const Common& c, std::size_t r) {
  HdParams p;
  p.r = r;
  p.gamma = f.gamma;
  p.delta = f.delta;
  p.m = f.m;
  p.seed = c.seed;
  p.threads = c.threads;
  p.linear_scan = f.linear_scan;
  return p;
}

template <typename Fn>
double TimeMs(Fn&& fn) {
  const auto t0 = std::chrono::steady_clock::now();
  fn();
  return std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - t0).count();
}

}  // namespace

int RunCli(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Rank-regret minimization: pick r tuples whose best member ranks well for every linear utility."};
  app.name("rrm");
  app.require_subcommand(1);

  Common c;
  std::function<int()> action;

  // gen
  auto* gen = app.add_subcommand("gen", "generate a synthetic dataset (CSV)");
  std::string family = "independent";
  GenSpec spec;
  gen->add_option("--family", family, "independent | correlated | anti-correlated");
  gen->add_option("--n", spec.n, "number of tuples")->check(CLI::PositiveNumber);
  gen->add_option("--d", spec.d, "number of attributes")->check(CLI::Range(2, 64));
  gen->add_option("--strength", spec.correlation_strength, "correlation strength in (0,1]");
  gen->add_option("--seed", c.seed, "random seed")->envname("RRK_SEED");
  gen->add_option("--out,-o", c.out, "output file (default: stdout)");
  gen->callback([&] {
    action = [&] {
      spec.family = ParseFamily(family);
      spec.seed = c.seed;
      const Dataset data = Generate(spec);
      Sink sink(c.out, out);
      WriteCsv(data, sink.stream());
      return kExitOk;
    };
  });

  // solve
  auto* solve = app.add_subcommand("solve", "choose at most r tuples minimizing rank-regret");
  std::string algo;
  std::size_t r = 0;
  HdFlags hd;
  AddInput(solve, c);
  AddCommon(solve, c);
  AddHdFlags(solve, hd);
  solve->add_option("--algo", algo, "2d (exact sweep) | hd (discretize + set cover)")
      ->check(CLI::IsMember({"2d", "hd"}));
  solve->add_option("--r", r, "output size budget")->required()->check(CLI::PositiveNumber);
  solve->add_flag("--linear-scan", hd.linear_scan, "hd: try k = 1, 2, ... instead of doubling + bisection");
  solve->callback([&] {
    action = [&] {
      const Dataset data = Load(c);
      const RestrictedSpace space = Space(c);
      const std::string chosen = PickAlgo(algo, data);
      RegretResult result;
      if (chosen == "2d") {
        result = SolveRrm2d(data, r, space);
      } else {
        result = Hdrrm(data, MakeHdParams(hd, c, r), space);
      }
      json config = CommonConfig("solve", c);
      config.update({{"algo", chosen}, {"r", r}});
      if (chosen == "hd") {
        config.update({{"gamma", hd.gamma}, {"delta", hd.delta}, {"linear_scan", hd.linear_scan}});
        if (hd.m) config["m"] = *hd.m;
      }
      result.params["config"] = config;
      Sink sink(c.out, out);
      sink.stream() << CanonicalDump(ResultToJson(result));
      return kExitOk;
    };
  });

  // rrr
  auto* rrr = app.add_subcommand("rrr", "smallest set with rank-regret at most k");
  std::size_t k = 0;
  AddInput(rrr, c);
  AddCommon(rrr, c);
  AddHdFlags(rrr, hd);
  rrr->add_option("--algo", algo, "2d | hd")->check(CLI::IsMember({"2d", "hd"}));
  rrr->add_option("--k", k, "rank-regret target")->required()->check(CLI::PositiveNumber);
  rrr->callback([&] {
    action = [&] {
      const Dataset data = Load(c);
      const RestrictedSpace space = Space(c);
      const std::string chosen = PickAlgo(algo, data);
      RegretResult result = chosen == "2d" ? SolveRrr2d(data, k, space)
                                           : HdRrr(data, k, MakeHdParams(hd, c, data.dims()), space);
      json config = CommonConfig("rrr", c);
      config.update({{"algo", chosen}, {"k", k}});
      if (chosen == "hd") {
        config.update({{"gamma", hd.gamma}, {"delta", hd.delta}});
        if (hd.m) config["m"] = *hd.m;
      }
      result.params["config"] = config;
      Sink sink(c.out, out);
      sink.stream() << CanonicalDump(ResultToJson(result));
      return kExitOk;
    };
  });

  // eval
  auto* eval = app.add_subcommand("eval", "Monte-Carlo evaluation of a chosen set");
  std::string set_text, result_path, metrics_text = "rank,ratk", rat_text;
  std::size_t samples = 100'000;
  AddInput(eval, c);
  AddCommon(eval, c);
  eval->add_option("--set", set_text, "1-based tuple list, e.g. \"1,4,7\" or \"1..7\"");
  eval->add_option("--result", result_path, "take the set from a result JSON written by solve/rrr");
  eval->add_option("--samples", samples, "utility vectors to draw")->check(CLI::PositiveNumber);
  eval->add_option("--metrics", metrics_text, "comma list of rank, ratk, regret-ratio");
  eval->add_option("--rat-k", rat_text, "thresholds for ratk (default: the estimated rank-regret)");
  eval->callback([&] {
    action = [&] {
      if (set_text.empty() == result_path.empty()) throw UsageError("give exactly one of --set and --result");
      const Dataset data = Load(c);
      std::optional<RegretResult> loaded;
      IndexSet set;
      if (!result_path.empty()) {
        loaded = LoadResult(result_path);
        set = loaded->selected;
      } else {
        set = ParseIndexList(set_text);
      }
      bool want_rank = false, want_ratk = false, want_ratio = false;
      for (const auto& m : SplitList(metrics_text)) {
        if (m == "rank") {
          want_rank = true;
        } else if (m == "ratk") {
          want_ratk = true;
        } else if (m == "regret-ratio") {
          want_ratio = true;
        } else {
          throw UsageError("unknown metric '" + m + "'");
        }
      }
      EvalOptions opts;
      opts.samples = samples;
      opts.seed = c.seed;
      opts.space = Space(c);
      opts.threads = c.threads;
      std::vector<std::size_t> thresholds;
      for (const auto& s : SplitList(rat_text)) thresholds.push_back(ParseIndexList(s)[0] + 1);
      if (want_ratk && thresholds.empty() && loaded) thresholds.push_back(loaded->rank_regret);
      opts.rat_thresholds = thresholds;

      json report = {{"indices", OneBased(set)}, {"samples", samples}, {"seed", c.seed}};
      if (want_rank || want_ratk) {
        EvalReport ev = EstimateRankRegret(set, data, opts);
        if (want_ratk && thresholds.empty()) {
          opts.rat_thresholds = {ev.estimated_rank_regret};
          ev = EstimateRankRegret(set, data, opts);
        }
        if (want_rank) report["estimated_rank_regret"] = ev.estimated_rank_regret;
        if (want_ratk) {
          json rat = json::object();
          for (const auto& [kk, frac] : ev.rat_k) rat[std::to_string(kk)] = frac;
          report["rat_k"] = rat;
        }
      }
      if (want_ratio) {
        const auto rr = MaxRegretRatio(set, data, samples, c.seed, c.threads);
        report["max_regret_ratio"] = rr.max_regret_ratio;
        report["regret_ratio_skipped"] = rr.skipped;
        if (rr.unnormalized_input) report["unnormalized_input"] = true;
        if (rr.skipped > 0) err << "warning: " << rr.skipped << " samples had w(u,D) <= 0 and were skipped\n";
      }
      if (loaded) report["rank_regret"] = loaded->rank_regret;
      json config = CommonConfig("eval", c);
      config.update({{"metrics", SplitList(metrics_text)}, {"samples", samples}});
      if (!result_path.empty()) config["result"] = result_path;
      if (!set_text.empty()) config["set"] = set_text;
      report["config"] = config;
      Sink sink(c.out, out);
      sink.stream() << CanonicalDump(report);
      return kExitOk;
    };
  });

  // oracle
  auto* oracle = app.add_subcommand("oracle", "brute-force reference values");
  std::string mode = "exhaustive";
  std::size_t arc_n = 0;
  bool all_tuples = false;
  std::size_t oracle_samples = 100'000;
  AddInput(oracle, c, false);
  AddCommon(oracle, c);
  oracle->add_option("--mode", mode, "exhaustive | arc")->check(CLI::IsMember({"exhaustive", "arc"}));
  oracle->add_option("--r", r, "output size budget")->required()->check(CLI::PositiveNumber);
  oracle->add_option("--n", arc_n, "arc: number of tuples on the quarter circle");
  oracle->add_flag("--all-tuples", all_tuples, "enumerate subsets of all tuples, not only the skyline");
  oracle->add_option("--samples", oracle_samples, "d > 2: utility vectors used");
  oracle->callback([&] {
    action = [&] {
      std::optional<Dataset> data;
      if (mode == "arc") {
        if (arc_n < 2) throw UsageError("--mode arc needs --n >= 2");
        data = ArcDataset(arc_n);
      } else {
        if (c.input.empty()) throw UsageError("--mode exhaustive needs --input");
        data = Load(c);
      }
      ExhaustiveOptions opts;
      opts.all_tuples = all_tuples;
      opts.samples = oracle_samples;
      opts.seed = c.seed;
      const OracleReport rep = ExhaustiveRrm(*data, r, Space(c), opts);
      json sets = json::array();
      for (const auto& s : rep.optimal_sets) sets.push_back(OneBased(s));
      json config = CommonConfig("oracle", c);
      config.update({{"mode", mode}, {"r", r}, {"all_tuples", all_tuples}});
      if (mode == "arc") config["n"] = arc_n;
      if (data->dims() > 2) config["samples"] = oracle_samples;
      const json report = {{"optimal_value", rep.optimal_value},
                           {"optimal_sets", sets},
                           {"method", MethodName(rep.method)},
                           {"work_bound", rep.work_bound},
                           {"config", config}};
      Sink sink(c.out, out);
      sink.stream() << CanonicalDump(report);
      return kExitOk;
    };
  });

  // netbound
  auto* netbound = app.add_subcommand("netbound", "samples needed for a net of the cube's up-facets");
  NetBoundParams nb;
  netbound->add_option("--c", nb.c, "confidence multiplier")->check(CLI::Range(1.0, 1e12));
  netbound->add_option("--d", nb.d, "dimension")->check(CLI::Range(2, 64));
  netbound->add_option("--eps", nb.epsilon, "net epsilon in (0,1)")->check(CLI::Range(0.0, 1.0));
  netbound->callback([&] {
    action = [&] {
      if (!(nb.epsilon > 0.0 && nb.epsilon < 1.0)) throw UsageError("--eps must lie in (0, 1)");
      out << NetSampleBound(nb) << "\n";
      return kExitOk;
    };
  });

  // bench
  auto* bench = app.add_subcommand("bench", "parameter sweep on synthetic data, tidy CSV out");
  std::string b_algos = "2d,hd", b_family = "independent", b_n = "1000", b_d = "2,3", b_r = "10",
              b_delta = "0.03", b_seeds = "0";
  std::size_t b_eval = 10'000;
  bench->add_option("--algo", b_algos, "comma list of 2d, hd");
  bench->add_option("--family", b_family, "independent | correlated | anti-correlated");
  bench->add_option("--n", b_n, "comma list of n");
  bench->add_option("--d", b_d, "comma list of d");
  bench->add_option("--r", b_r, "comma list of r");
  bench->add_option("--delta", b_delta, "comma list of delta (hd)");
  bench->add_option("--gamma", hd.gamma, "polar grid segments (hd)")->check(CLI::PositiveNumber);
  bench->add_option("--m", hd.m, "fixed sample size (hd)");
  bench->add_option("--seeds", b_seeds, "comma list of seeds");
  bench->add_option("--eval-samples", b_eval, "vectors for the estimated rank-regret (0: skip)");
  bench->add_option("--threads", c.threads, "worker threads")->check(CLI::Range(1u, 1024u));
  bench->add_option("--out,-o", c.out, "output file (default: stdout)");
  bench->callback([&] {
    action = [&] {
      auto sizes = [](const std::string& s) {
        std::vector<std::size_t> v;
        for (const auto& p : SplitList(s)) v.push_back(std::stoull(p));
        return v;
      };
      std::vector<double> deltas;
      for (const auto& p : SplitList(b_delta)) deltas.push_back(std::stod(p));
      const auto algos = SplitList(b_algos);
      for (const auto& a : algos) {
        if (a != "2d" && a != "hd") throw UsageError("unknown algorithm '" + a + "'");
      }
      Sink sink(c.out, out);
      auto& os = sink.stream();
      os << "algo,family,n,d,r,gamma,delta,m,seed,time_ms,size,rank_regret,estimated_rank_regret\n";
      for (const std::size_t seed : sizes(b_seeds)) {
        for (const std::size_t n : sizes(b_n)) {
          for (const std::size_t d : sizes(b_d)) {
            const Dataset data = Generate({ParseFamily(b_family), n, d, seed, 0.8});
            for (const std::size_t rr : sizes(b_r)) {
              for (const auto& a : algos) {
                if (a == "2d" && d != 2) continue;
                const std::vector<double> grid = a == "2d" ? std::vector<double>{deltas.front()} : deltas;
                for (const double delta : grid) {
                  RegretResult res;
                  HdFlags f = hd;
                  f.delta = delta;
                  Common cc = c;
                  cc.seed = seed;
                  const double ms = TimeMs([&] {
                    res = a == "2d" ? SolveRrm2d(data, rr) : Hdrrm(data, MakeHdParams(f, cc, rr));
                  });
                  std::string est;
                  if (b_eval > 0) {
                    EvalOptions eo;
                    eo.samples = b_eval;
                    eo.seed = seed;
                    eo.threads = c.threads;
                    est = std::to_string(EstimateRankRegret(res.selected, data, eo).estimated_rank_regret);
                  }
                  os << a << ',' << b_family << ',' << n << ',' << d << ',' << rr << ',';
                  if (a == "hd") {
                    os << hd.gamma << ',' << delta << ',' << res.params.value("m", std::size_t{0});
                  } else {
                    os << ",,";
                  }
                  os << ',' << seed << ',' << std::fixed << std::setprecision(3) << ms
                     << std::defaultfloat << ',' << res.size() << ',' << res.rank_regret << ',' << est
                     << '\n';
                }
              }
            }
          }
        }
      }
      return kExitOk;
    };
  });

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kExitOk : kExitUsage;
  }
  try {
    return action();
  } catch (const UsageError& e) {
    err << "error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const GuardExceeded& e) {
    err << "guard: " << e.what() << "\n";
    return kExitFailure;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return kExitFailure;
  }
}

}  // namespace rrm
