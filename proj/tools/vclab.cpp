// vclab command-line runner. Every subcommand is seeded from --seed and
// writes its artifact (JSON or CSV) to --out, or to stdout when --out is
// absent. Exit codes: 0 ok, 1 verification failure, 2 usage or input error,
// 3 budget exhausted.

#include <CLI11.hpp>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "vclab/vclab.hpp"

namespace {

using namespace vclab;
using nlohmann::json;

constexpr int kOk = 0;
constexpr int kFailed = 1;
constexpr int kUsage = 2;
constexpr int kBudget = 3;

struct Globals {
  std::uint64_t seed = 0;
  std::string out;
  std::string config;
  unsigned jobs = 1;
};

std::filesystem::path resolve_out(const std::string& out) {
  std::filesystem::path p(out);
  if (p.is_relative())
    if (const char* dir = std::getenv("VCLAB_OUT_DIR"); dir && *dir) p = std::filesystem::path(dir) / p;
  return p;
}

void emit(const Globals& g, const std::string& artifact) {
  if (g.out.empty()) {
    std::cout << artifact;
    return;
  }
  const auto path = resolve_out(g.out);
  if (path.has_parent_path()) std::filesystem::create_directories(path.parent_path());
  std::ofstream f(path, std::ios::binary);
  if (!f) throw InvalidInput("cannot open output file " + path.string());
  f << artifact;
}

/// Human-readable summaries go to stdout when the artifact went to a file.
std::ostream& info(const Globals& g) { return g.out.empty() ? std::cerr : std::cout; }

std::string q(const Rational& r) { return to_string(r); }

std::vector<std::string> split(const std::string& s, char sep) {
  std::vector<std::string> out;
  std::stringstream ss(s);
  std::string item;
  while (std::getline(ss, item, sep))
    if (!item.empty()) out.push_back(item);
  return out;
}

std::vector<Rational> parse_rational_list(const std::string& s) {
  std::vector<Rational> out;
  for (const auto& t : split(s, ',')) out.push_back(parse_rational(t));
  return out;
}

std::vector<std::int64_t> parse_int_list(const std::string& s) {
  std::vector<std::int64_t> out;
  for (const auto& t : split(s, ',')) {
    try {
      out.push_back(std::stoll(t));
    } catch (const std::exception&) {
      throw InvalidInput("not an integer: '" + t + "'");
    }
  }
  return out;
}

bool starts_with(const std::string& s, const std::string& p) { return s.rfind(p, 0) == 0; }

/// arc:L or list:a,b,c in a finite model.
FiniteSubset parse_finite_set(const GroupModel& g, const std::string& text) {
  if (starts_with(text, "arc:")) {
    const auto len = parse_int_list(text.substr(4));
    if (len.size() != 1 || len[0] < 0 || len[0] > g.order()) throw InvalidInput("bad arc length in '" + text + "'");
    std::vector<std::int64_t> idx;
    for (std::int64_t i = 0; i < len[0]; ++i) idx.push_back(i);
    return FiniteSubset::of(idx);
  }
  if (starts_with(text, "list:")) {
    auto idx = parse_int_list(text.substr(5));
    for (auto i : idx)
      if (i < 0 || i >= g.order()) throw InvalidInput("element index out of range in '" + text + "'");
    return FiniteSubset::of(idx);
  }
  throw InvalidInput("finite set must be arc:L or list:a,b,...; got '" + text + "'");
}

/// cantor:m, counterexample:m (matched budgets) or the interval-union text form.
ConstructibleSet1D parse_real_set(const std::string& text) {
  if (starts_with(text, "cantor:")) return FatCantor().stage(static_cast<int>(parse_int_list(text.substr(7)).at(0)));
  if (starts_with(text, "counterexample:")) {
    const int m = static_cast<int>(parse_int_list(text.substr(15)).at(0));
    return counterexample_points(matched_counterexample_spec(m)).as_set();
  }
  return parse_set(text);
}

Interval parse_window(const std::string& text) {
  const auto v = parse_rational_list(text);
  if (v.size() != 2 || !(v[0] < v[1])) throw InvalidInput("window must be lo,hi with lo < hi");
  return Interval::closed(v[0], v[1]);
}

// ---------------------------------------------------------------------------
// Subcommands

struct VcdimArgs {
  std::string group = "cyclic:12";
  std::string set = "arc:3";
  std::string window = "0,1";
  std::string translators;
  int max_k = 4;
  int dyadic_depth = 4;
  bool dual = false;
};

int run_vcdim(const Globals& g, const VcdimArgs& a) {
  json j;
  j["group"] = a.group;
  j["set"] = a.set;
  if (starts_with(a.group, "reals")) {
    TranslateSearch cfg;
    cfg.window = parse_window(a.window);
    if (!a.translators.empty()) cfg.translators = parse_window(a.translators);
    cfg.max_k = a.max_k;
    cfg.dyadic_depth = a.dyadic_depth;
    const auto x = parse_real_set(a.set);
    const auto res = translate_vc_dimension(x, cfg);
    if (!verify_translate_certificate(x, res.certificate)) {
      std::cerr << "certificate failed re-verification\n";
      return kFailed;
    }
    j["lower_bound"] = res.lower_bound;
    j["searched_up_to"] = res.searched_up_to;
    j["upper_status"] = res.upper_status;
    j["certificate"] = to_json(res.certificate);
    std::cout << res.lower_bound << '\n';
  } else {
    const auto model = parse_group(a.group);
    const auto sys = SetSystem::translates(model, parse_finite_set(model, a.set));
    const auto res = vc_dimension(sys);
    if (!verify_report(sys, res.certificate)) {
      std::cerr << "certificate failed re-verification\n";
      return kFailed;
    }
    j["vc_dimension"] = res.dimension;
    j["certificate"] = to_json(sys, res.certificate);
    std::cout << res.dimension << '\n';
    if (a.dual) {
      const auto d = dual_vc_dimension(sys);
      j["dual_vc_dimension"] = d.dimension;
      std::cout << "dual " << d.dimension << '\n';
    }
  }
  if (!g.out.empty()) emit(g, j.dump(2) + "\n");
  return kOk;
}

struct EpsArgs {
  std::string group = "cyclic:1000";
  std::string set = "arc:300";
  std::string epsilon = "1/20";
  std::int64_t trials = 100;
  std::string grid;
  std::int64_t cap = 2000;
  std::string target = "95/100";
};

int run_eps(const Globals& g, const EpsArgs& a) {
  const auto model = parse_group(a.group);
  if (!model.finite()) throw InvalidInput("eps-approx runs on finite models only");
  const auto sys = SetSystem::translates(model, parse_finite_set(model, a.set));
  SweepConfig cfg;
  cfg.epsilon = parse_rational(a.epsilon);
  cfg.trials = a.trials;
  cfg.seed = derive_seed(g.seed, "eps-approx");
  cfg.grid = parse_int_list(a.grid);
  cfg.cap = a.cap;
  cfg.target_rate = parse_rational(a.target);
  cfg.jobs = g.jobs;
  const auto res = sample_complexity_sweep(model, sys, cfg);
  std::ostringstream csv;
  write_sweep_csv(csv, res);
  emit(g, csv.str());
  if (!res.smallest_n) {
    info(g) << "no N in the grid reached rate " << a.target << '\n';
    return kBudget;
  }
  info(g) << "smallest_N " << *res.smallest_n << '\n';
  return kOk;
}

struct SteinhausArgs {
  int stage = 6;
  std::string u = "-1/10,-1/20,-1/100,1/100,1/20,1/10";
  std::string min = "1/10";
};

int run_steinhaus(const Globals& g, const SteinhausArgs& a) {
  const auto inst = fat_cantor_parity_instance();
  const auto cert = steinhaus_neighborhood(inst, a.stage);
  const Rational floor_min = parse_rational(a.min);
  const FatCantor k;
  const Rational mk = k.closed_form_measure(a.stage);
  std::ostringstream csv;
  csv << "u,overlap,overlap_float,floor,floor_float,meets_min\n";
  bool ok = true;
  for (const auto& u : parse_rational_list(a.u)) {
    const Rational ov = overlap_measure(k, a.stage, u);
    // K_m and K_m + u sit inside an interval of length 1 + |u|.
    const Rational fl = 2 * mk - 1 - abs(u);
    const bool meets = ov >= floor_min && ov >= fl;
    ok = ok && meets;
    csv << q(u) << ',' << q(ov) << ',' << ov.get_d() << ',' << q(fl) << ',' << fl.get_d() << ','
        << (meets ? "true" : "false") << '\n';
  }
  emit(g, csv.str());
  info(g) << "radius " << q(cert.radius) << " density " << q(cert.density) << '\n';
  return ok ? kOk : kFailed;
}

struct WitnessArgs {
  int depth = 3;
  std::string verify;
  std::string instance = "fat-cantor";
  int stage_window = 12;
};

TamePairInstance instance_named(const std::string& name) {
  if (name == "fat-cantor") return fat_cantor_parity_instance();
  if (name == "toy") return toy_instance();
  throw InvalidInput("unknown instance '" + name + "' (fat-cantor or toy)");
}

int report_check(const Globals& g, const WitnessCheck& c) {
  info(g) << "verified " << (c.ok ? "true" : "false") << " conditions " << c.conditions;
  if (c.min_slack) info(g) << " min_slack " << q(*c.min_slack);
  if (!c.ok) info(g) << " reason " << c.reason;
  info(g) << '\n';
  return c.ok ? kOk : kFailed;
}

int run_witness(const Globals& g, const WitnessArgs& a) {
  const auto inst = instance_named(a.instance);
  if (!a.verify.empty()) {
    std::ifstream f(a.verify);
    if (!f) throw InvalidInput("cannot read " + a.verify);
    json j;
    try {
      j = json::parse(f);
    } catch (const json::exception& e) {
      throw InvalidInput(std::string("witness file is not JSON: ") + e.what());
    }
    return report_check(g, verify_witness(witness_from_json(j), inst, g.jobs));
  }
  Rng rng(derive_seed(g.seed, "witness"));
  WitnessBudgets b;
  b.stage_window = a.stage_window;
  const auto w = construct_witness(inst, a.depth, b, rng);
  const auto c = verify_witness(w, inst, g.jobs);
  emit(g, to_json(w).dump(2) + "\n");
  return report_check(g, c);
}

struct BorderArgs {
  int sets = 20;
  int rmin = 4;
  int rmax = 12;
  int counterexample_max_m = 8;
};

int run_border(const Globals& g, const BorderArgs& a) {
  Rng rng(derive_seed(g.seed, "border-sweep"));
  std::vector<ConstructibleSet1D> sets;
  for (int i = 0; i < a.sets; ++i) sets.push_back(random_closed_set(rng));
  auto rows = border_convergence_experiment(sets, dyadic_radii(a.rmin, a.rmax), g.jobs);
  const auto ce = counterexample_border_rows(a.counterexample_max_m, g.jobs);
  rows.insert(rows.end(), ce.begin(), ce.end());
  std::ostringstream csv;
  write_border_csv(csv, rows);
  emit(g, csv.str());
  const auto bad = std::count_if(rows.begin(), rows.end(), [](const BorderRow& r) { return !r.holds(); });
  info(g) << rows.size() << " rows, " << bad << " violating\n";
  return bad == 0 ? kOk : kFailed;
}

struct CounterexampleArgs {
  std::int64_t intervals = 7;
  int per_interval = 3;
  int matched = -1;
  std::size_t triples = 1000;
};

json points_json(const std::vector<Rational>& pts) {
  json a = json::array();
  for (const auto& p : pts) a.push_back(q(p));
  return a;
}

int run_counterexample(const Globals& g, const CounterexampleArgs& a) {
  CounterexampleSpec spec;
  if (a.matched >= 0) {
    spec = matched_counterexample_spec(a.matched);
  } else {
    spec.interval_budget = a.intervals;
    spec.per_interval_budget = a.per_interval;
  }
  const auto ce = counterexample_points(spec);
  const bool injective = is_difference_injective(ce.points);
  const auto rep = no_shatter3_check(ce.points, candidate_triples(ce.points, a.triples, derive_seed(g.seed, "triples")), g.jobs);
  const auto t5 = density_report(ce.as_set(), Interval::closed(0, 1));
  json j;
  j["count"] = ce.points.size();
  j["points"] = points_json(ce.points);
  j["difference_injective"] = injective;
  j["pair_uniqueness"] = rep.pair_uniqueness;
  j["max_translates_per_pair"] = rep.max_translates_per_pair;
  j["triples"] = rep.triples;
  j["max_patterns"] = rep.max_patterns;
  j["shattered_triple"] = rep.shattered_triple ? points_json({(*rep.shattered_triple)[0], (*rep.shattered_triple)[1],
                                                              (*rep.shattered_triple)[2]})
                                               : json(nullptr);
  j["density_hypothesis_x"] = t5.hyp_x;
  j["density_hypothesis_complement"] = t5.hyp_xc;
  emit(g, j.dump(2) + "\n");
  const bool ok = injective && rep.pair_uniqueness && rep.max_patterns < 8;
  info(g) << ce.points.size() << " points, injective " << injective << ", max patterns " << rep.max_patterns << '\n';
  return ok ? kOk : kFailed;
}

struct DensityArgs {
  std::string set;
  int random = 0;
  std::string window = "0,1";
};

json report_json(const DensityReport& r) {
  json j;
  j["hyp_x"] = r.hyp_x;
  j["hyp_xc"] = r.hyp_xc;
  j["border_measure"] = q(r.border_measure);
  j["identity"] = r.identity ? json(*r.identity) : json(nullptr);
  j["consistent"] = r.consistent;
  return j;
}

int run_density_report(const Globals& g, const DensityArgs& a) {
  const auto window = parse_window(a.window);
  if (!a.set.empty()) {
    const auto x = parse_real_set(a.set);
    const auto r = density_report(x, window);
    auto j = report_json(r);
    j["set"] = a.set;
    emit(g, j.dump(2) + "\n");
    return r.consistent ? kOk : kFailed;
  }
  if (a.random <= 0) throw InvalidInput("theorem5-report needs --set or --random N");
  Rng rng(derive_seed(g.seed, "theorem5-report"));
  std::vector<ConstructibleSet1D> sets;
  for (int i = 0; i < a.random; ++i) sets.push_back(random_constructible_set(rng));
  std::vector<DensityReport> reps(sets.size());
  parallel_for(sets.size(), g.jobs, [&](std::size_t i) { reps[i] = density_report(sets[i], window); });
  std::ostringstream csv;
  csv << "set_id,set,hyp_x,hyp_xc,border_measure,identity,consistent\n";
  std::size_t bad = 0;
  for (std::size_t i = 0; i < reps.size(); ++i) {
    const auto& r = reps[i];
    bad += r.consistent ? 0 : 1;
    csv << i << ",\"" << to_string(sets[i]) << "\"," << r.hyp_x << ',' << r.hyp_xc << ',' << q(r.border_measure) << ','
        << (r.identity ? (*r.identity ? "1" : "0") : "") << ',' << r.consistent << '\n';
  }
  emit(g, csv.str());
  info(g) << reps.size() << " sets, " << bad << " inconsistent\n";
  return bad == 0 ? kOk : kFailed;
}

int run_selftest(const Globals& g) {
  const auto results = invariant_suite(g.seed);
  std::ostringstream out;
  bool all = true;
  for (const auto& r : results) {
    out << (r.passed ? "[PASS] " : "[FAIL] ") << r.name << ": " << r.detail << '\n';
    all = all && r.passed;
  }
  if (g.out.empty())
    std::cout << out.str();
  else
    emit(g, out.str());
  return all ? kOk : kFailed;
}

// ---------------------------------------------------------------------------
// JSON config: keys mirror long flag names; flags on the command line win.

std::vector<std::string> with_config(std::vector<std::string> args) {
  std::string path;
  for (std::size_t i = 0; i < args.size(); ++i) {
    if (args[i] == "--config" && i + 1 < args.size()) path = args[i + 1];
    if (starts_with(args[i], "--config=")) path = args[i].substr(9);
  }
  if (path.empty()) return args;
  std::ifstream f(path);
  if (!f) throw CLI::ValidationError("--config", "cannot read " + path);
  json cfg;
  try {
    cfg = json::parse(f);
  } catch (const json::exception& e) {
    throw CLI::ValidationError("--config", e.what());
  }
  if (!cfg.is_object()) throw CLI::ValidationError("--config", "config must be a JSON object");
  auto given = [&](const std::string& flag) {
    return std::any_of(args.begin(), args.end(), [&](const std::string& s) { return s == flag || starts_with(s, flag + "="); });
  };
  for (const auto& [key, value] : cfg.items()) {
    const std::string flag = "--" + key;
    if (given(flag)) continue;
    if (value.is_boolean()) {
      if (value.get<bool>()) args.push_back(flag);
    } else if (value.is_string()) {
      args.push_back(flag);
      args.push_back(value.get<std::string>());
    } else if (value.is_array()) {
      std::string joined;
      for (const auto& v : value) joined += (joined.empty() ? "" : ",") + (v.is_string() ? v.get<std::string>() : v.dump());
      args.push_back(flag);
      args.push_back(joined);
    } else {
      args.push_back(flag);
      args.push_back(value.dump());
    }
  }
  return args;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"vclab: VC-dimension and tame-pair experiments with exact rationals"};
  app.require_subcommand(1);
  app.fallthrough();
  Globals g;
  app.add_option("--seed", g.seed, "Global seed");
  app.add_option("--out", g.out, "Artifact path (relative paths resolve against VCLAB_OUT_DIR)");
  app.add_option("--config", g.config, "JSON config whose keys mirror the flags");
  app.add_option("--jobs", g.jobs, "Worker threads for independent cells")->check(CLI::Range(1u, 256u));

  VcdimArgs vc;
  auto* s_vc = app.add_subcommand("vcdim", "VC dimension of a translate family");
  s_vc->add_option("--group", vc.group, "cyclic:N, product:AxB or reals");
  s_vc->add_option("--set", vc.set, "arc:L, list:a,b,..., cantor:m, counterexample:m or interval text");
  s_vc->add_option("--window", vc.window, "Point window lo,hi for reals");
  s_vc->add_option("--translators", vc.translators, "Translator range lo,hi for reals");
  s_vc->add_option("--max-k", vc.max_k, "Largest point set size searched for reals");
  s_vc->add_option("--dyadic-depth", vc.dyadic_depth, "Dyadic refinement of the point grid for reals");
  s_vc->add_flag("--dual", vc.dual, "Also compute the dual VC dimension");

  EpsArgs eps;
  auto* s_eps = app.add_subcommand("eps-approx", "Sample-size sweep for epsilon-approximations");
  s_eps->add_option("--group", eps.group);
  s_eps->add_option("--set", eps.set);
  s_eps->add_option("--epsilon", eps.epsilon);
  s_eps->add_option("--trials", eps.trials);
  s_eps->add_option("--grid", eps.grid, "Comma-separated sample sizes");
  s_eps->add_option("--cap", eps.cap, "Largest sample size of the default grid");
  s_eps->add_option("--target-rate", eps.target);

  SteinhausArgs st;
  auto* s_st = app.add_subcommand("steinhaus", "Overlap measures of a fat Cantor stage with its shifts");
  s_st->add_option("--stage", st.stage)->check(CLI::Range(0, 24));
  s_st->add_option("--u", st.u, "Comma-separated shifts");
  s_st->add_option("--min", st.min, "Required overlap floor");

  WitnessArgs wi;
  auto* s_wi = app.add_subcommand("witness", "Build or verify a tame-pair shatter witness");
  s_wi->add_option("--depth", wi.depth)->check(CLI::Range(0, 12));
  s_wi->add_option("--verify", wi.verify, "Re-verify a witness JSON file instead of building one");
  s_wi->add_option("--instance", wi.instance, "fat-cantor or toy");
  s_wi->add_option("--stage-window", wi.stage_window);

  BorderArgs bo;
  auto* s_bo = app.add_subcommand("border-sweep", "r-border measures of closed sets and the counterexample");
  s_bo->add_option("--sets", bo.sets);
  s_bo->add_option("--rmin", bo.rmin, "Smallest j in r = 2^-j");
  s_bo->add_option("--rmax", bo.rmax, "Largest j in r = 2^-j");
  s_bo->add_option("--counterexample-max-m", bo.counterexample_max_m);

  CounterexampleArgs ce;
  auto* s_ce = app.add_subcommand("counterexample", "Difference-injective counterexample and its triple check");
  s_ce->add_option("--intervals", ce.intervals);
  s_ce->add_option("--per-interval", ce.per_interval);
  s_ce->add_option("--matched", ce.matched, "Use the budgets matched to r = 2^-m");
  s_ce->add_option("--triples", ce.triples);

  DensityArgs t5;
  auto* s_t5 = app.add_subcommand("theorem5-report", "Density hypotheses and border measure");
  s_t5->add_option("--set", t5.set);
  s_t5->add_option("--random", t5.random, "Number of random constructible sets");
  s_t5->add_option("--window", t5.window);

  app.add_subcommand("selftest", "Run the randomized invariant suite");

  std::vector<std::string> args;
  for (int i = argc - 1; i >= 1; --i) args.emplace_back(argv[i]);
  try {
    std::vector<std::string> forward(args.rbegin(), args.rend());
    forward = with_config(std::move(forward));
    args.assign(forward.rbegin(), forward.rend());
    app.parse(args);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    std::cerr << "error: " << e.what() << "\n\n" << app.help();
    return kUsage;
  }

  try {
    if (s_vc->parsed()) return run_vcdim(g, vc);
    if (s_eps->parsed()) return run_eps(g, eps);
    if (s_st->parsed()) return run_steinhaus(g, st);
    if (s_wi->parsed()) return run_witness(g, wi);
    if (s_bo->parsed()) return run_border(g, bo);
    if (s_ce->parsed()) return run_counterexample(g, ce);
    if (s_t5->parsed()) return run_density_report(g, t5);
    return run_selftest(g);
  } catch (const QuantitativeRegime& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kFailed;
  } catch (const InvalidInput& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kUsage;
  } catch (const ModelMismatch& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kUsage;
  } catch (const BudgetExceeded& e) {
    std::cerr << "budget exhausted: " << e.what() << " (lower bound " << e.lower_bound() << ")\n";
    return kBudget;
  } catch (const PartialWitness& e) {
    std::cerr << "budget exhausted: " << e.what() << " (" << e.completed_levels() << " levels completed)\n";
    return kBudget;
  } catch (const Unsampleable& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kUsage;
  } catch (const Error& e) {
    // Undecided, InsufficientStage, HittingSetFailure.
    std::cerr << "budget exhausted: " << e.what() << '\n';
    return kBudget;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kUsage;
  }
}
