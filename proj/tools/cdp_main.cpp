#include <filesystem>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <sstream>
#include <string>

#include "CLI11.hpp"
#include "cdp/corpus.hpp"
#include "cdp/formula.hpp"
#include "cdp/problem.hpp"
#include "cdp/proof.hpp"
#include "cdp/refine.hpp"
#include "cdp/search.hpp"
#include "cdp/unify.hpp"

namespace {

using namespace cdp;

constexpr int kExitOk = 0;
constexpr int kExitNoProof = 1;   // verification failed / not unifiable /
                                  // saturated without a proof
constexpr int kExitUsage = 2;     // bad input or bad file
constexpr int kExitResource = 3;  // a search limit stopped the run

struct StrategyFlags {
  std::string mode;
  int max_weight = 0;
  std::string term_avoidance;
  std::string ancestor_subsumption;
  int max_vars = 0;
  std::uint64_t limit_given = 0;
  long long limit_secs = -1;

  void attach(CLI::App* cmd) {
    cmd->add_option("--mode", mode, "given-clause order: ratio:<n> or bfs");
    cmd->add_option("--max-weight", max_weight,
                    "discard conclusions above this effective weight");
    cmd->add_option("--term-avoidance", term_avoidance,
                    "discard conclusions with a proper e(t,t) subformula "
                    "(on|off)")
        ->check(CLI::IsMember({"on", "off"}));
    cmd->add_option("--ancestor-subsumption", ancestor_subsumption,
                    "prefer shorter derivations of repeated conclusions "
                    "(on|off)")
        ->check(CLI::IsMember({"on", "off"}));
    cmd->add_option("--max-vars", max_vars,
                    "discard conclusions with more distinct variables");
    cmd->add_option("--limit-given", limit_given,
                    "stop after this many given clauses");
    cmd->add_option("--limit-secs", limit_secs, "wall-clock limit");
  }

  void apply(SearchConfig& cfg) const {
    if (!mode.empty()) {
      if (mode == "bfs") {
        cfg.mode = SearchConfig::Mode::breadth_first;
      } else if (mode.rfind("ratio:", 0) == 0) {
        cfg.mode = SearchConfig::Mode::ratio;
        cfg.pick_given_ratio = std::stoi(mode.substr(6));
      } else {
        throw CLI::ValidationError("--mode", "expected ratio:<n> or bfs");
      }
    }
    if (max_weight > 0) cfg.max_weight = max_weight;
    if (term_avoidance == "on") cfg.term_avoidance = true;
    if (term_avoidance == "off") cfg.term_avoidance = false;
    if (ancestor_subsumption == "on") cfg.ancestor_subsumption = true;
    if (ancestor_subsumption == "off") cfg.ancestor_subsumption = false;
    if (max_vars > 0) cfg.max_distinct_vars = max_vars;
    if (limit_given > 0) cfg.limits.max_given = limit_given;
    if (limit_secs >= 0)
      cfg.limits.wall_clock_secs = static_cast<double>(limit_secs);
  }
};

std::string slurp(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot open '" + path + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

Formula resolve_formula_arg(const std::string& arg) {
  // corpus name, then literal formula text, then a list file
  try {
    return corpus::get(arg).formula;
  } catch (const std::out_of_range&) {
  }
  try {
    return parse_formula(arg);
  } catch (const ParseError&) {
  }
  auto list = load_formula_list(arg);
  if (list.empty()) throw std::runtime_error("'" + arg + "' has no formulas");
  return list.front();
}

const char* stop_text(StopReason r) {
  switch (r) {
    case StopReason::all_targets_closed:
      return "all_targets_closed";
    case StopReason::saturated:
      return "saturated";
    case StopReason::given_limit:
      return "given_limit";
    case StopReason::kept_limit:
      return "kept_limit";
    case StopReason::time_limit:
      return "time_limit";
  }
  return "unknown";
}

void print_stats(const SearchOutcome& out) {
  std::cout << "stats:\n"
            << "  generated: " << out.generated << "\n"
            << "  kept: " << out.kept << "\n"
            << "  input: " << out.input_count << "\n"
            << "  discarded_by_weight: " << out.discarded_by_weight << "\n"
            << "  discarded_by_term_avoidance: "
            << out.discarded_by_term_avoidance << "\n"
            << "  discarded_by_var_cap: " << out.discarded_by_var_cap << "\n"
            << "  discarded_blocked: " << out.discarded_blocked << "\n"
            << "  subsumed: " << out.subsumed << "\n"
            << "  given: " << out.given_count << "\n";
  std::cout << "  per_level:";
  for (std::uint64_t n : out.per_level_census) std::cout << ' ' << n;
  std::cout << "\nstop: " << stop_text(out.stop) << "\n";
}

void print_wall_time(double secs) {
  std::cout << "% wall_time_secs: " << std::fixed << std::setprecision(3)
            << secs << "\n";
}

int exit_for(const SearchOutcome& out) {
  if (out.all_targets_closed()) return kExitOk;
  if (out.stop == StopReason::saturated) return kExitNoProof;
  return kExitResource;
}

int run_prove(const std::string& problem_path, const StrategyFlags& flags,
              const std::string& out_dir) {
  Problem prob = load_problem(problem_path);
  flags.apply(prob.config);
  if (prob.targets.empty())
    std::cout << "% no targets: exploring until saturation or a limit\n";
  SearchOutcome out = saturate(prob.sos, prob.config, prob.targets);

  std::filesystem::create_directories(out_dir);
  for (const auto& [name, proof] : out.proofs) {
    ProofMetrics m = verify(proof);
    std::string file = out_dir + "/" + name + ".proof";
    std::ofstream f(file, std::ios::binary);
    f << render(proof);
    std::cout << "proof " << name << ": length=" << m.length
              << " level=" << m.level << " max_weight=" << m.max_weight
              << " max_vars=" << m.max_distinct_vars << " file=" << file
              << "\n";
  }
  print_stats(out);
  print_wall_time(out.wall_secs);
  return exit_for(out);
}

int run_check(const std::string& proof_path) {
  Proof p = parse_proof(slurp(proof_path));
  std::vector<std::pair<std::string, Formula>> goals;
  std::vector<std::string> unknown;
  for (const auto& [name, id] : p.targets) {
    (void)id;
    try {
      goals.emplace_back(name, corpus::get(name).formula);
    } catch (const std::out_of_range&) {
      unknown.push_back(name);
    }
  }
  try {
    ProofMetrics m = verify(p, goals);
    std::cout << "verified: length=" << m.length << " level=" << m.level
              << " max_weight=" << m.max_weight
              << " max_vars=" << m.max_distinct_vars << "\n";
    for (const std::string& name : unknown)
      std::cout << "target " << name << ": unchecked (not a corpus name)\n";
    return kExitOk;
  } catch (const VerifyError& e) {
    std::cout << "error: " << e.what() << "\n";
    return kExitNoProof;
  }
}

int run_shorten(const std::string& proof_path, const std::string& problem_path,
                const StrategyFlags& flags, const std::string& out_dir,
                int rounds) {
  Proof p = parse_proof(slurp(proof_path));
  Problem prob = load_problem(problem_path);
  ShortenBudget budget;
  budget.max_rounds = rounds;
  budget.config = prob.config;
  flags.apply(budget.config);
  Proof q = shorten(p, prob.targets, budget);
  ProofMetrics m = verify(q);

  std::filesystem::create_directories(out_dir);
  std::string stem = std::filesystem::path(proof_path).stem().string();
  std::string file = out_dir + "/" + stem + ".short.proof";
  std::ofstream f(file, std::ios::binary);
  f << render(q);
  std::cout << "shortened: length=" << m.length << " (input " << p.length()
            << ") level=" << m.level << " file=" << file << "\n";
  return kExitOk;
}

int run_enumerate(int n, bool two_property_only) {
  auto all = two_property_only
                 ? enumerate_two_property_theorems(static_cast<std::size_t>(n))
                 : enumerate_formulas(static_cast<std::size_t>(n));
  for (const Formula& f : all) std::cout << format_formula(f) << "\n";
  std::cout << "count: " << all.size() << "\n";
  return kExitOk;
}

int run_census(const std::string& seed_arg, int levels,
               const std::string& pattern_arg, int jobs,
               const std::string& dedup_arg) {
  Formula seed = resolve_formula_arg(seed_arg);
  std::optional<Formula> pattern;
  if (!pattern_arg.empty()) pattern = resolve_formula_arg(pattern_arg);
  CensusDedup dedup = dedup_arg == "subsume" ? CensusDedup::forward_subsumption
                                             : CensusDedup::variant_only;
  auto t0 = std::chrono::steady_clock::now();
  CensusResult res =
      level_census(seed, levels, pattern ? &*pattern : nullptr, jobs, dedup);
  for (std::size_t k = 1; k <= res.levels(); ++k) {
    std::cout << "level " << k << ": new=" << res.new_at(k)
              << " exceptions=" << res.exceptions[k].size() << "\n";
    for (const Formula& f : res.exceptions[k])
      std::cout << "exception: " << format_formula(f) << "\n";
  }
  std::cout << "total new through level " << res.levels() << ": "
            << res.cumulative_through(res.levels()) << "\n";
  print_wall_time(
      std::chrono::duration<double>(std::chrono::steady_clock::now() - t0)
          .count());
  return kExitOk;
}

int run_cd(const std::string& major_text, const std::string& minor_text) {
  Formula major = parse_formula(major_text);
  Formula minor = parse_formula(minor_text);
  try {
    auto r = condensed_detach(major, minor);
    if (!r) {
      std::cout << "not unifiable\n";
      return kExitNoProof;
    }
    std::cout << format_formula(*r) << "\n";
    std::cout << "common_instance_size: "
              << *common_instance_size(major, minor) << "\n";
    return kExitOk;
  } catch (const MajorNotConditional&) {
    std::cout << "major premiss is not an e(...) conditional\n";
    return kExitNoProof;
  }
}

int run_corpus_list() {
  for (const NamedFormula& nf : corpus::all())
    std::cout << nf.name << " " << tag_names(nf.tags) << " "
              << format_formula(nf.formula) << "\n";
  return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"condensed-detachment prover for the equivalential calculus"};
  app.require_subcommand(1);

  StrategyFlags prove_flags, shorten_flags;
  std::string problem_path, proof_path, out_dir = ".";
  int shorten_rounds = 3;

  auto* prove = app.add_subcommand("prove", "run a saturation search");
  prove->add_option("problem", problem_path, "problem file")->required();
  prove->add_option("--out-dir", out_dir, "directory for proof files");
  prove_flags.attach(prove);

  auto* check = app.add_subcommand("check", "verify a proof file");
  check->add_option("proof", proof_path, "proof file")->required();

  std::string shorten_problem;
  auto* shorten_cmd =
      app.add_subcommand("shorten", "search for an abridged proof");
  shorten_cmd->add_option("proof", proof_path, "proof file")->required();
  shorten_cmd->add_option("problem", shorten_problem, "problem file")
      ->required();
  shorten_cmd->add_option("--out-dir", out_dir, "directory for proof files");
  shorten_cmd->add_option("--rounds", shorten_rounds,
                          "refinement rounds before giving up");
  shorten_flags.attach(shorten_cmd);

  int enum_n = 0;
  bool enum_two = false;
  auto* enum_cmd =
      app.add_subcommand("enumerate", "list formulas of a given size");
  enum_cmd->add_option("n", enum_n, "symbol count")->required();
  enum_cmd->add_flag("--two-property", enum_two,
                     "only theorems with the 2-property");

  std::string census_seed, census_pattern, census_dedup = "variant";
  int census_levels = 0, census_jobs = 1;
  auto* census_cmd =
      app.add_subcommand("census", "level-by-level deduction closure");
  census_cmd->add_option("seed", census_seed, "corpus name, formula or file")
      ->required();
  census_cmd->add_option("levels", census_levels, "levels to close")
      ->required()
      ->check(CLI::PositiveNumber);
  census_cmd->add_option("pattern", census_pattern,
                         "report formulas lacking a variant subformula");
  census_cmd->add_option("--jobs", census_jobs, "worker threads")
      ->check(CLI::PositiveNumber);
  census_cmd->add_option("--dedup", census_dedup,
                         "duplicate policy: variant or subsume")
      ->check(CLI::IsMember({"variant", "subsume"}));

  std::string cd_major, cd_minor;
  auto* cd_cmd = app.add_subcommand("cd", "one condensed-detachment step");
  cd_cmd->add_option("major", cd_major, "major premiss e(s,t)")->required();
  cd_cmd->add_option("minor", cd_minor, "minor premiss")->required();

  auto* corpus_cmd = app.add_subcommand("corpus", "bundled formulas");
  auto* corpus_list = corpus_cmd->add_subcommand("list", "print all entries");
  corpus_cmd->require_subcommand(1);

  CLI11_PARSE(app, argc, argv);

  try {
    if (prove->parsed()) return run_prove(problem_path, prove_flags, out_dir);
    if (check->parsed()) return run_check(proof_path);
    if (shorten_cmd->parsed())
      return run_shorten(proof_path, shorten_problem, shorten_flags, out_dir,
                         shorten_rounds);
    if (enum_cmd->parsed()) {
      if (enum_two && enum_n % 2 == 0) {
        std::cerr << "error: --two-property needs an odd symbol count\n";
        return kExitUsage;
      }
      return run_enumerate(enum_n, enum_two);
    }
    if (census_cmd->parsed())
      return run_census(census_seed, census_levels, census_pattern,
                        census_jobs, census_dedup);
    if (cd_cmd->parsed()) return run_cd(cd_major, cd_minor);
    if (corpus_list->parsed()) return run_corpus_list();
  } catch (const ParseError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitUsage;
  }
  return kExitUsage;
}
