/**
 * Command-line front end for the enumeration-scheme toolkit.
 *
 * Subcommands: discover, deepen, count, distribute, verify, render.
 * Exit codes are a stable contract: 0 success, 1 domain failure (no
 * scheme within bounds, oracle divergence, invalid scheme file,
 * clearance shortfall without --auto-deepen), 2 usage error (bad flags,
 * unparsable patterns or statistics, maj without --via-reverse).
 */

#include <CLI11.hpp>
#include <json.hpp>

#include <cstdio>
#include <exception>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "eschemes/eschemes.hpp"

namespace {

using namespace eschemes;

/** Failure carrying its process exit code (1 domain, 2 usage). */
struct CliError : std::runtime_error {
  CliError(int exitCode, const std::string &message)
      : std::runtime_error(message), code(exitCode) {}
  int code;
};

CliError usage(const std::string &message) { return CliError(2, message); }
CliError failure(const std::string &message) { return CliError(1, message); }

PatternSet parse_patterns_or_usage(const std::string &arg) {
  try {
    return parse_pattern_set(arg);
  } catch (const std::exception &e) {
    throw usage(std::string("bad pattern list: ") + e.what());
  }
}

MultiStat parse_stats_or_usage(const std::string &arg) {
  try {
    return parse_statistic_list(arg);
  } catch (const std::exception &e) {
    throw usage(std::string("bad statistic list: ") + e.what());
  }
}

/**
 * "--bounds depth:gapsum:verify" with any field left empty to keep the
 * default computed from the pattern set and clearance.
 */
SearchBounds resolve_bounds(const PatternSet &patterns, int clearance,
                            const std::string &boundsSpec, int maxDepthFlag) {
  SearchBounds b = SearchBounds::defaults(patterns, clearance);
  if (!boundsSpec.empty()) {
    std::vector<std::string> parts;
    std::size_t start = 0;
    while (true) {
      const std::size_t colon = boundsSpec.find(':', start);
      parts.push_back(boundsSpec.substr(
          start, colon == std::string::npos ? colon : colon - start));
      if (colon == std::string::npos) {
        break;
      }
      start = colon + 1;
    }
    if (parts.size() > 3) {
      throw usage("--bounds wants depth:gapsum:verify (fields may be empty).");
    }
    const auto field = [&](std::size_t i, int fallback) {
      if (i >= parts.size() || parts[i].empty()) {
        return fallback;
      }
      try {
        std::size_t used = 0;
        const int v = std::stoi(parts[i], &used);
        if (used != parts[i].size()) {
          throw std::invalid_argument(parts[i]);
        }
        return v;
      } catch (const std::exception &) {
        throw usage("--bounds field '" + parts[i] + "' is not an integer.");
      }
    };
    b.max_depth = field(0, b.max_depth);
    b.max_gap_sum = field(1, b.max_gap_sum);
    b.verify_n = field(2, b.verify_n);
  }
  if (maxDepthFlag > 0) {
    b.max_depth = maxDepthFlag;
  }
  try {
    b.check(patterns);
  } catch (const std::exception &e) {
    throw usage(std::string("bad search bounds: ") + e.what());
  }
  return b;
}

std::string frontier_line(const std::vector<Perm> &frontier) {
  std::string out;
  for (std::size_t i = 0; i < frontier.size(); ++i) {
    out += (i ? ", " : "") + to_string(frontier[i]);
  }
  return out;
}

/** Inline discovery with the standard failure report (frontier, bounds). */
Scheme discover_or_fail(const PatternSet &patterns, int clearance,
                        const SearchBounds &bounds, bool trySymmetries) {
  if (trySymmetries) {
    SymmetricDiscoveryOutcome out =
        discover_with_symmetry(patterns, clearance, bounds);
    if (out.scheme) {
      return *std::move(out.scheme);
    }
    std::ostringstream msg;
    msg << "no scheme found for {" << to_string(patterns) << "} within "
        << bounds.str() << " under any symmetry.";
    for (const auto &attempt : out.attempts) {
      msg << "\n  [" << tag(attempt.symmetry) << "] {"
          << to_string(attempt.transformed)
          << "} open frontier: " << frontier_line(attempt.frontier);
    }
    throw failure(msg.str());
  }
  DiscoveryOutcome out = discover(patterns, clearance, bounds);
  if (!out.scheme) {
    std::ostringstream msg;
    msg << "no scheme found for {" << to_string(patterns) << "} within "
        << bounds.str() << ".\nopen frontier ("
        << out.frontier.size() << " prefixes): "
        << frontier_line(out.frontier);
    throw failure(msg.str());
  }
  return *std::move(out.scheme);
}

Scheme load_scheme_or_fail(const std::string &path) {
  Scheme s;
  try {
    s = load_scheme(path);
  } catch (const std::exception &e) {
    throw failure("cannot load scheme file '" + path + "': " + e.what());
  }
  if (const auto bad = validate(s)) {
    throw failure("scheme file '" + path + "' is invalid at \"" +
                  to_string(bad->prefix) + "\": " + bad->message);
  }
  return s;
}

void write_scheme_file(const Scheme &s, const std::string &path) {
  try {
    save_scheme(s, path);
  } catch (const std::exception &e) {
    throw failure("cannot write scheme file '" + path + "': " + e.what());
  }
  std::cout << "wrote scheme to " << path << "\n";
}

/* ------------------------------------------------------------------ */
/* Output formatting.                                                 */
/* ------------------------------------------------------------------ */

nlohmann::ordered_json polynomial_json(const Polynomial &p) {
  nlohmann::ordered_json terms = nlohmann::ordered_json::array();
  for (const auto &[exponents, coefficient] : p.terms()) {
    nlohmann::ordered_json term;
    term["exponents"] = exponents;
    term["coefficient"] = coefficient.get_str();
    terms.push_back(term);
  }
  return terms;
}

void print_distribution_csv(const std::vector<std::string> &statNames,
                            const std::vector<Polynomial> &perN) {
  std::cout << "n";
  for (const auto &name : statNames) {
    std::cout << "," << name;
  }
  std::cout << ",coefficient\n";
  for (std::size_t i = 0; i < perN.size(); ++i) {
    for (const auto &[exponents, coefficient] : perN[i].terms()) {
      std::cout << (i + 1);
      for (int e : exponents) {
        std::cout << "," << e;
      }
      std::cout << "," << coefficient.get_str() << "\n";
    }
  }
}

/* ------------------------------------------------------------------ */
/* Subcommand configuration and runners.                              */
/* ------------------------------------------------------------------ */

struct RunConfig {
  std::string patternArg;
  std::string statArg;
  int clearance = 0;
  int nMax = 0;
  std::string boundsSpec;
  int maxDepthFlag = 0;
  std::string schemeFile;
  std::string outFile;
  std::string output = "text";
  bool trySymmetries = false;
  bool autoDeepen = false;
  bool viaReverse = false;
};

int run_discover(const RunConfig &cfg) {
  const PatternSet patterns = parse_patterns_or_usage(cfg.patternArg);
  const SearchBounds bounds = resolve_bounds(patterns, cfg.clearance,
                                             cfg.boundsSpec, cfg.maxDepthFlag);
  const Scheme s = discover_or_fail(patterns, cfg.clearance, bounds,
                                    cfg.trySymmetries);
  if (cfg.output == "json") {
    std::cout << scheme_to_json(s).dump(2) << "\n";
  } else {
    std::cout << render(s);
  }
  if (!cfg.outFile.empty()) {
    write_scheme_file(s, cfg.outFile);
  }
  return 0;
}

int run_deepen(const RunConfig &cfg) {
  if (cfg.schemeFile.empty()) {
    throw usage("deepen needs --scheme FILE.");
  }
  if (cfg.clearance < 0) {
    throw usage("deepen needs -c (extra clearance) >= 0.");
  }
  const Scheme base = load_scheme_or_fail(cfg.schemeFile);
  std::optional<SearchBounds> bounds;
  if (!cfg.boundsSpec.empty() || cfg.maxDepthFlag > 0) {
    bounds = resolve_bounds(base.patterns, cfg.clearance, cfg.boundsSpec,
                            cfg.maxDepthFlag);
  }
  Scheme deeper = deepen(base, cfg.clearance, bounds);
  if (const auto bad = validate(deeper)) {
    throw failure("deepened scheme failed validation at \"" +
                  to_string(bad->prefix) + "\": " + bad->message);
  }
  if (cfg.output == "json") {
    std::cout << scheme_to_json(deeper).dump(2) << "\n";
  } else {
    std::cout << render(deeper);
  }
  if (!cfg.outFile.empty()) {
    write_scheme_file(deeper, cfg.outFile);
  }
  return 0;
}

/** Scheme for count/verify: a file, or inline discovery over -B. */
Scheme acquire_scheme(const RunConfig &cfg, int clearanceNeeded) {
  if (!cfg.schemeFile.empty()) {
    return load_scheme_or_fail(cfg.schemeFile);
  }
  const PatternSet patterns = parse_patterns_or_usage(cfg.patternArg);
  const int c = std::max(cfg.clearance, clearanceNeeded);
  const SearchBounds bounds =
      resolve_bounds(patterns, c, cfg.boundsSpec, cfg.maxDepthFlag);
  return discover_or_fail(patterns, c, bounds, cfg.trySymmetries);
}

int run_count(const RunConfig &cfg) {
  if (cfg.nMax <= 0) {
    throw usage("count needs -n/--n-max >= 1.");
  }
  Scheme s = acquire_scheme(cfg, 0);
  SchemeEvaluator eval(std::move(s));
  std::vector<mpz_class> seq;
  for (int n = 1; n <= cfg.nMax; ++n) {
    seq.push_back(eval.count(n));
  }
  if (cfg.output == "json") {
    nlohmann::ordered_json out;
    out["patterns"] = to_string(eval.scheme().patterns);
    out["counts"] = nlohmann::ordered_json::array();
    for (const auto &v : seq) {
      out["counts"].push_back(v.get_str());
    }
    std::cout << out.dump(2) << "\n";
  } else if (cfg.output == "csv") {
    std::cout << "n,count\n";
    for (std::size_t i = 0; i < seq.size(); ++i) {
      std::cout << (i + 1) << "," << seq[i].get_str() << "\n";
    }
  } else {
    for (std::size_t i = 0; i < seq.size(); ++i) {
      std::cout << "a(" << (i + 1) << ") = " << seq[i].get_str() << "\n";
    }
    std::cout << "sequence: " << oeis_format(seq) << "\n";
  }
  return 0;
}

int run_distribute(const RunConfig &cfg) {
  if (cfg.nMax <= 0) {
    throw usage("distribute needs -n/--n-max >= 1.");
  }
  const MultiStat stats = parse_stats_or_usage(cfg.statArg);
  if (stats.empty()) {
    throw usage("distribute needs -s with at least one statistic.");
  }
  std::vector<std::string> statNames = names(stats);
  std::vector<Polynomial> perN;

  if (cfg.viaReverse) {
    if (!cfg.schemeFile.empty()) {
      throw usage("--via-reverse discovers its own scheme for the reversed "
                  "set; drop --scheme.");
    }
    const PatternSet patterns = parse_patterns_or_usage(cfg.patternArg);
    std::optional<SearchBounds> bounds;
    if (!cfg.boundsSpec.empty() || cfg.maxDepthFlag > 0) {
      int needed = cfg.clearance;
      try {
        needed = std::max(needed, margin(reversed_counterpart(stats)));
      } catch (const std::exception &e) {
        throw usage(std::string("--via-reverse: ") + e.what());
      }
      bounds = resolve_bounds(apply_symmetry(patterns, Symmetry::reverse),
                              needed, cfg.boundsSpec, cfg.maxDepthFlag);
    }
    try {
      ReversalEvaluator eval(patterns, stats, cfg.clearance, bounds);
      for (int n = 1; n <= cfg.nMax; ++n) {
        perN.push_back(eval.distribution(n));
      }
    } catch (const std::invalid_argument &e) {
      throw usage(std::string("--via-reverse: ") + e.what());
    } catch (const CliError &) {
      throw;
    } catch (const std::exception &e) {
      throw failure(e.what());
    }
  } else {
    for (const auto &s : stats) {
      if (s.requires_reversal()) {
        throw usage("statistic '" + s.name() +
                    "' is only available through --via-reverse.");
      }
    }
    const int needed = margin(stats);
    Scheme s = acquire_scheme(cfg, needed);
    if (!clearance(s).covers(needed)) {
      if (!cfg.autoDeepen) {
        throw failure(
            "scheme clearance " + clearance(s).str() +
            " is below the statistics' margin " + std::to_string(needed) +
            "; re-run with --auto-deepen, or deepen the scheme file.");
      }
      s = ensure_clearance(s, needed);
    }
    try {
      SchemeEvaluator eval(std::move(s), stats);
      for (int n = 1; n <= cfg.nMax; ++n) {
        perN.push_back(eval.distribution(n));
      }
    } catch (const std::exception &e) {
      throw failure(e.what());
    }
  }

  if (cfg.output == "json") {
    nlohmann::ordered_json out;
    out["patterns"] = cfg.patternArg;
    out["statistics"] = statNames;
    out["distributions"] = nlohmann::ordered_json::array();
    for (std::size_t i = 0; i < perN.size(); ++i) {
      nlohmann::ordered_json row;
      row["n"] = i + 1;
      row["terms"] = polynomial_json(perN[i]);
      out["distributions"].push_back(row);
    }
    std::cout << out.dump(2) << "\n";
  } else if (cfg.output == "csv") {
    print_distribution_csv(statNames, perN);
  } else {
    for (std::size_t i = 0; i < perN.size(); ++i) {
      std::cout << "n = " << (i + 1) << ": " << perN[i].str(statNames)
                << "\n";
    }
  }
  return 0;
}

int run_verify(const RunConfig &cfg) {
  if (cfg.nMax <= 0) {
    throw usage("verify needs -n/--n-max >= 1.");
  }
  if (cfg.nMax > kOracleCap) {
    throw usage("verify compares against the brute-force oracle; -n must be "
                "<= " + std::to_string(kOracleCap) + ".");
  }
  const MultiStat stats =
      cfg.statArg.empty() ? MultiStat{} : parse_stats_or_usage(cfg.statArg);
  for (const auto &s : stats) {
    if (s.requires_reversal()) {
      throw usage("statistic '" + s.name() +
                  "' has no direct evaluator to verify; use distribute "
                  "--via-reverse and compare by hand.");
    }
  }
  Scheme s = acquire_scheme(cfg, stats.empty() ? 0 : margin(stats));
  if (!stats.empty() && !clearance(s).covers(margin(stats))) {
    throw failure("scheme clearance " + clearance(s).str() +
                  " is below the statistics' margin " +
                  std::to_string(margin(stats)) +
                  "; deepen the scheme before verifying distributions.");
  }
  const std::vector<std::string> statNames = names(stats);
  SchemeEvaluator eval(std::move(s), stats);
  const PatternSet &patterns = eval.scheme().patterns;
  for (int n = 1; n <= cfg.nMax; ++n) {
    const mpz_class fromOracle = brute_count(n, patterns);
    const mpz_class fromScheme = eval.count(n);
    if (fromScheme != fromOracle) {
      std::cout << "divergence at n = " << n << " (count): scheme says "
                << fromScheme.get_str() << ", oracle says "
                << fromOracle.get_str() << "\n";
      return 1;
    }
    if (!stats.empty()) {
      const Polynomial fromSchemeDist = eval.distribution(n);
      const Polynomial fromOracleDist =
          brute_distribution(n, patterns, eval.stats());
      if (!(fromSchemeDist == fromOracleDist)) {
        std::cout << "divergence at n = " << n << " (statistics ";
        for (std::size_t i = 0; i < statNames.size(); ++i) {
          std::cout << (i ? "," : "") << statNames[i];
        }
        std::cout << "):\n  scheme: " << fromSchemeDist.str(statNames)
                  << "\n  oracle: " << fromOracleDist.str(statNames) << "\n";
        return 1;
      }
    }
    std::cout << "n = " << n << ": ok (count " << fromScheme.get_str();
    if (!stats.empty()) {
      std::cout << ", distribution matches";
    }
    std::cout << ")\n";
  }
  std::cout << "verified against the oracle for n <= " << cfg.nMax << "\n";
  return 0;
}

int run_render(const RunConfig &cfg) {
  Scheme s = acquire_scheme(cfg, 0);
  std::cout << render(s);
  return 0;
}

} // namespace

int main(int argc, char **argv) {
  CLI::App app{"enumeration schemes for vincular pattern avoidance: "
               "discovery, deepening, counting, statistic distributions"};
  app.require_subcommand(1);

  RunConfig cfg;
  const auto addPatternFlag = [&](CLI::App *cmd) {
    cmd->add_option("-B,--patterns", cfg.patternArg,
                    "comma-separated vincular patterns, e.g. 1-2-3,12-3");
  };
  const auto addBoundsFlags = [&](CLI::App *cmd) {
    cmd->add_option("--bounds", cfg.boundsSpec,
                    "search bounds depth:gapsum:verify (empty field = "
                    "default)");
    cmd->add_option("--max-depth", cfg.maxDepthFlag,
                    "shorthand for the depth field of --bounds");
  };
  const auto addOutputFlag = [&](CLI::App *cmd,
                                 const std::string &choices) {
    cmd->add_option("--output", cfg.output, "output format")
        ->check(CLI::IsMember(
            choices == "all" ? std::vector<std::string>{"text", "json", "csv"}
                             : std::vector<std::string>{"text", "json"}));
  };

  CLI::App *discoverCmd =
      app.add_subcommand("discover", "search for an enumeration scheme");
  addPatternFlag(discoverCmd);
  discoverCmd->add_option("-c,--clearance", cfg.clearance,
                          "required clearance (prefix letters kept intact)");
  addBoundsFlags(discoverCmd);
  discoverCmd->add_flag("--symmetry", cfg.trySymmetries,
                        "also try reverse/complement images of the set");
  discoverCmd->add_option("-o,--out", cfg.outFile, "write scheme JSON here");
  addOutputFlag(discoverCmd, "textjson");

  CLI::App *deepenCmd = app.add_subcommand(
      "deepen", "extend a scheme's clearance by -c extra letters");
  deepenCmd->add_option("--scheme", cfg.schemeFile, "scheme JSON file");
  deepenCmd->add_option("-c,--clearance", cfg.clearance, "extra clearance");
  addBoundsFlags(deepenCmd);
  deepenCmd->add_option("-o,--out", cfg.outFile, "write scheme JSON here");
  addOutputFlag(deepenCmd, "textjson");

  CLI::App *countCmd =
      app.add_subcommand("count", "count avoiders for n = 1..N");
  addPatternFlag(countCmd);
  countCmd->add_option("-c,--clearance", cfg.clearance,
                       "clearance for inline discovery");
  countCmd->add_option("-n,--n-max", cfg.nMax, "largest length to count");
  addBoundsFlags(countCmd);
  countCmd->add_flag("--symmetry", cfg.trySymmetries,
                     "allow discovery on a symmetric image (counts agree)");
  countCmd->add_option("--scheme", cfg.schemeFile,
                       "use this scheme file instead of discovering");
  addOutputFlag(countCmd, "all");

  CLI::App *distributeCmd = app.add_subcommand(
      "distribute", "statistic distribution polynomials for n = 1..N");
  addPatternFlag(distributeCmd);
  distributeCmd->add_option("-s,--stats", cfg.statArg,
                            "comma-separated statistics, e.g. des or "
                            "maj,des or cons:132");
  distributeCmd->add_option("-c,--clearance", cfg.clearance,
                            "extra clearance for inline discovery");
  distributeCmd->add_option("-n,--n-max", cfg.nMax, "largest length");
  addBoundsFlags(distributeCmd);
  distributeCmd->add_option("--scheme", cfg.schemeFile,
                            "use this scheme file instead of discovering");
  distributeCmd->add_flag("--auto-deepen", cfg.autoDeepen,
                          "deepen a loaded scheme if its clearance is short");
  distributeCmd->add_flag("--via-reverse", cfg.viaReverse,
                          "evaluate through the reversed class (needed for "
                          "maj)");
  addOutputFlag(distributeCmd, "all");

  CLI::App *verifyCmd = app.add_subcommand(
      "verify", "compare scheme counts/distributions with the brute-force "
                "oracle");
  addPatternFlag(verifyCmd);
  verifyCmd->add_option("-s,--stats", cfg.statArg, "statistics to verify");
  verifyCmd->add_option("-c,--clearance", cfg.clearance,
                        "clearance for inline discovery");
  verifyCmd->add_option("-n,--n-max", cfg.nMax, "verify for n = 1..N");
  addBoundsFlags(verifyCmd);
  verifyCmd->add_option("--scheme", cfg.schemeFile,
                        "verify this scheme file");

  CLI::App *renderCmd = app.add_subcommand(
      "render", "print the tree view of a scheme");
  addPatternFlag(renderCmd);
  renderCmd->add_option("-c,--clearance", cfg.clearance,
                        "clearance for inline discovery");
  addBoundsFlags(renderCmd);
  renderCmd->add_option("--scheme", cfg.schemeFile, "scheme JSON file");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp &e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp &e) {
    return app.exit(e);
  } catch (const CLI::ParseError &e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }

  try {
    if (app.got_subcommand(discoverCmd)) {
      return run_discover(cfg);
    }
    if (app.got_subcommand(deepenCmd)) {
      return run_deepen(cfg);
    }
    if (app.got_subcommand(countCmd)) {
      return run_count(cfg);
    }
    if (app.got_subcommand(distributeCmd)) {
      return run_distribute(cfg);
    }
    if (app.got_subcommand(verifyCmd)) {
      return run_verify(cfg);
    }
    if (app.got_subcommand(renderCmd)) {
      return run_render(cfg);
    }
    std::cerr << "error: no subcommand.\n";
    return 2;
  } catch (const CliError &e) {
    std::cerr << "error: " << e.what() << "\n";
    return e.code;
  } catch (const clearance_error &e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  } catch (const std::exception &e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
}
