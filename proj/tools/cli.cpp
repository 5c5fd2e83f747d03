#include "cli.hpp"

#include <algorithm>
#include <chrono>
#include <cstdio>
#include <fstream>
#include <functional>
#include <map>
#include <optional>
#include <sstream>

#include <CLI11.hpp>

#include "config.hpp"
#include "patdens/exact.hpp"
#include "patdens/matcher.hpp"
#include "patdens/montecarlo.hpp"
#include "patdens/window_counting.hpp"
#include "table.hpp"

namespace patdens::cli {

namespace {

constexpr int kCliMaxAlphabet = 26;

std::string tool_name() { return std::string("patdens ") + PATDENS_VERSION; }

Pattern parse_pattern(const std::string& text) {
  if (text.empty()) throw UsageError("pattern must be nonempty");
  return Pattern::parse(text);
}

Word parse_word(const std::string& text) {
  if (text.empty()) throw UsageError("word must be nonempty");
  return Word::parse(text, kCliMaxAlphabet);
}

/// Pattern letters in first-occurrence order, i.e. the names of variables 0..k-1.
std::vector<std::string> variable_names(const std::string& text) {
  std::vector<std::string> names;
  for (char c : text) {
    std::string s(1, c);
    if (std::find(names.begin(), names.end(), s) == names.end()) names.push_back(s);
  }
  return names;
}

void require_cli_alphabet(int q) {
  if (q < 1 || q > kCliMaxAlphabet) throw UsageError("q must be in [1, 26]");
}

int as_int(std::size_t n) {
  if (n > 1'000'000) throw UsageError("n too large");
  return static_cast<int>(n);
}

Cell decimal(const Rational& r) { return r.get_d(); }

/// Common flags of the exact and experiment commands.
struct RunFlags {
  std::string format = "csv";
  std::string out_path;
  unsigned workers = 0;
  std::optional<std::uint64_t> budget;
};

void add_run_flags(CLI::App* app, RunFlags& flags) {
  app->add_option("--format", flags.format, "csv or json")->check(CLI::IsMember({"csv", "json"}));
  app->add_option("--out", flags.out_path, "write the table to this file");
  app->add_option("--workers", flags.workers, "worker threads (0 = all cores); never changes results");
  app->add_option("--budget", flags.budget, "work-unit limit (overrides PATDENS_BUDGET)");
}

class Emitter {
 public:
  Emitter(std::ostream& out, std::ostream& err) : out_(out), err_(err) {}

  void emit(const ResultTable& t, const std::string& format, const std::string& path) {
    const std::string text = format == "json" ? render_json(t) : render_csv(t);
    if (path.empty()) {
      out_ << text;
      return;
    }
    std::ofstream file(path, std::ios::binary);
    if (!file) throw UsageError("cannot open " + path + " for writing");
    file << text;
  }

  std::ostream& err() { return err_; }

 private:
  std::ostream& out_;
  std::ostream& err_;
};

// ---------------------------------------------------------------- match etc.

int cmd_match(const std::string& pattern_text, const std::string& word_text, std::ostream& out) {
  const Pattern p = parse_pattern(pattern_text);
  const Word w = parse_word(word_text);
  const auto phi = find_witness(w, p);
  if (!phi) {
    out << "not an instance\n";
    return kExitNegative;
  }
  out << render_witness(*phi, variable_names(pattern_text)) << "\n";
  return kExitOk;
}

ResultTable word_table(const std::string& kind, const std::string& pattern, const std::string& word) {
  ResultTable t;
  t.tool = tool_name();
  t.config = {{"kind", kind}, {"pattern", pattern}, {"word", word}};
  return t;
}

ResultTable cmd_density(const std::string& pattern_text, const std::string& word_text) {
  const Pattern p = parse_pattern(pattern_text);
  const Word w = parse_word(word_text);
  const DensityValue d = density(p, w);
  ResultTable t = word_table("density", pattern_text, word_text);
  t.columns = {"numerator", "denominator", "exact", "decimal"};
  t.add_row({d.numerator, d.denominator, to_string(d.value), d.to_double()});
  return t;
}

ResultTable cmd_hom(const std::string& pattern_text, const std::string& word_text) {
  const Pattern p = parse_pattern(pattern_text);
  const Word w = parse_word(word_text);
  ResultTable t = word_table("hom", pattern_text, word_text);
  t.columns = {"hom"};
  t.add_row({count_encounters(p, w)});
  return t;
}

// ---------------------------------------------------------------- exact

struct ExactArgs {
  std::string pattern;
  int q = 2;
  std::string n;
  std::string q_range = "2:7";
  double f = 1;
  double tol = 1e-7;
};

ResultTable cmd_exact(const std::string& sub, const ExactArgs& a, const ExactOptions& opts) {
  ResultTable t;
  t.tool = tool_name();
  t.config = {{"kind", "exact " + sub}};

  if (sub == "z2limit") {
    const auto qs = parse_n_range(a.q_range);
    if (!(a.tol > 0)) throw UsageError("tol must be positive");
    t.config.emplace_back("q", a.q_range);
    t.config.emplace_back("tol", format_double(a.tol));
    t.columns = {"q", "limit"};
    for (std::size_t q : qs) {
      if (q < 2 || q > kCliMaxAlphabet) throw UsageError("q must be in [2, 26]");
      t.add_row({static_cast<std::uint64_t>(q), bordered_limit(static_cast<int>(q), a.tol)});
    }
    return t;
  }

  require_cli_alphabet(a.q);
  const Pattern p = parse_pattern(a.pattern);
  if (a.n.empty()) throw UsageError("--n is required");
  const auto ns = parse_n_range(a.n);
  t.config.emplace_back("pattern", a.pattern);
  t.config.emplace_back("q", std::to_string(a.q));
  t.config.emplace_back("n", a.n);

  if (sub == "instprob") {
    t.columns = {"n", "count", "exact", "decimal"};
    for (std::size_t n : ns) {
      const Rational r = instance_probability(p, a.q, as_int(n), opts);
      const BigInt count = instance_count(p, a.q, as_int(n), opts);
      t.add_row({static_cast<std::uint64_t>(n), count.get_str(), to_string(r), decimal(r)});
    }
  } else if (sub == "expdens") {
    t.columns = {"n", "exact", "decimal"};
    for (std::size_t n : ns) {
      const Rational r = expected_density(p, a.q, as_int(n), opts);
      t.add_row({static_cast<std::uint64_t>(n), to_string(r), decimal(r)});
    }
  } else if (sub == "exphom") {
    t.columns = {"n", "exact", "decimal"};
    for (std::size_t n : ns) {
      const Rational r = expected_hom(p, a.q, as_int(n));
      t.add_row({static_cast<std::uint64_t>(n), to_string(r), decimal(r)});
    }
  } else if (sub == "bound") {
    if (!is_doubled(p)) throw UsageError("bound needs a doubled pattern");
    t.columns = {"n", "instprob", "bound", "holds"};
    for (std::size_t n : ns) {
      const Rational r = instance_probability(p, a.q, as_int(n), opts);
      const double bound = instance_count_bound(p, a.q, as_int(n));
      t.add_row({static_cast<std::uint64_t>(n), decimal(r), bound,
                 std::string(r.get_d() <= bound ? "yes" : "no")});
    }
  } else if (sub == "tailbound") {
    if (!is_doubled(p)) throw UsageError("tailbound needs a doubled pattern");
    if (!(a.f > 0)) throw UsageError("f must be positive");
    t.config.emplace_back("f", format_double(a.f));
    t.columns = {"n", "exact", "decimal", "bound", "holds"};
    for (std::size_t n : ns) {
      const Rational r = tail_probability(p, a.q, as_int(n), a.f, opts);
      const double bound = tail_bound(p, a.q, as_int(n), a.f);
      t.add_row({static_cast<std::uint64_t>(n), to_string(r), decimal(r), bound,
                 std::string(r.get_d() <= bound ? "yes" : "no")});
    }
  } else if (sub == "smallcore") {
    t.columns = {"n", "exact", "decimal"};
    for (std::size_t n : ns) {
      const Rational r = lemma_base_fraction(p, a.q, as_int(n), opts);
      t.add_row({static_cast<std::uint64_t>(n), to_string(r), decimal(r)});
    }
  } else {
    throw UsageError("unknown exact subcommand '" + sub + "'");
  }
  return t;
}

// ---------------------------------------------------------------- experiment

ResultTable cmd_experiment(const ExperimentConfig& cfg, unsigned workers) {
  validate(cfg);
  const Pattern p = parse_pattern(cfg.pattern);
  const auto ns = parse_n_range(cfg.n);
  MonteCarloOptions opts;
  opts.workers = workers;
  if (cfg.budget) opts.budget = *cfg.budget;

  ResultTable t;
  t.tool = tool_name();
  t.config = config_entries(cfg);

  double linear_units = 0;
  double sweep_units = 0;
  for (std::size_t n : ns) {
    linear_units += static_cast<double>(cfg.samples) * static_cast<double>(n);
    sweep_units += static_cast<double>(cfg.samples) * strategy_cost(select_strategy(p), n);
  }
  auto units = [](double v) { return Cell{static_cast<std::uint64_t>(std::llround(v))}; };

  if (cfg.kind == "instprob") {
    t.columns = {"n", "samples", "mean", "ci_half_width"};
    for (std::size_t n : ns) {
      const auto e = estimate_instance_probability(p, cfg.q, n, cfg.samples, cfg.seed, opts);
      t.add_row({static_cast<std::uint64_t>(n), e.sample_count, e.mean, e.ci_half_width});
    }
    t.footer.emplace_back("work_units", units(linear_units));
    return t;
  }

  if (cfg.kind == "smallcore") {
    const auto rows = lemma_base_diagnostic(p, cfg.q, ns, cfg.samples, cfg.seed, opts);
    t.columns = {"n", "samples", "fraction", "ci_half_width"};
    for (const auto& r : rows) {
      t.add_row({static_cast<std::uint64_t>(r.n), r.sample_count, r.estimate, r.ci_half_width});
    }
    t.footer.emplace_back("work_units", units(linear_units));
    return t;
  }

  const bool doubled = is_doubled(p);
  if ((cfg.kind == "variance" || cfg.kind == "moments") && !doubled && !cfg.exploratory) {
    throw UsageError(cfg.kind + " scaling is only claimed for doubled patterns; pass --exploratory");
  }
  const int p_max = cfg.kind == "dichotomy" ? 1 : cfg.kind == "variance" ? 2 : cfg.pmax;
  const auto sweep = density_sweep(p, cfg.q, ns, cfg.samples, cfg.seed, p_max, opts);

  if (cfg.kind == "dichotomy") {
    const auto rows = dichotomy_rows(sweep);
    t.columns = {"n", "samples", "mean", "ci_half_width", "n_mean"};
    for (const auto& r : rows) {
      t.add_row({static_cast<std::uint64_t>(r.n), r.sample_count, r.estimate, r.ci_half_width,
                 r.scaled_estimate});
    }
    t.footer.emplace_back("tail_ratio", tail_ratio(rows));
  } else if (cfg.kind == "variance") {
    const auto rows = variance_rows(sweep);
    t.columns = {"n", "samples", "mean", "variance", "variance_ci", "scaled"};
    for (std::size_t i = 0; i < rows.size(); ++i) {
      t.add_row({static_cast<std::uint64_t>(rows[i].n), rows[i].sample_count, sweep[i].mean,
                 rows[i].estimate, rows[i].ci_half_width, rows[i].scaled_estimate});
    }
    t.footer.emplace_back("tail_ratio", tail_ratio(rows));
  } else {
    const MomentKind kind = cfg.moment == "raw" ? MomentKind::kRaw : MomentKind::kCentral;
    std::vector<Trajectory> orders;
    t.columns = {"n", "samples", "mean"};
    for (int k = 1; k <= p_max; ++k) {
      orders.push_back(moment_rows(sweep, k, kind));
      const auto id = std::to_string(k);
      t.columns.insert(t.columns.end(), {"m" + id, "m" + id + "_ci", "scaled" + id});
    }
    for (std::size_t i = 0; i < sweep.size(); ++i) {
      std::vector<Cell> row = {static_cast<std::uint64_t>(sweep[i].n), sweep[i].sample_count,
                               sweep[i].mean};
      for (const auto& rows : orders) {
        row.insert(row.end(), {rows[i].estimate, rows[i].ci_half_width, rows[i].scaled_estimate});
      }
      t.add_row(std::move(row));
    }
    for (int k = 1; k <= p_max; ++k) {
      t.footer.emplace_back("tail_ratio_" + std::to_string(k), tail_ratio(orders[k - 1]));
    }
  }
  t.footer.emplace_back("work_units", units(sweep_units));
  return t;
}

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw UsageError("cannot read " + path);
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

void report_wall_time(std::ostream& err, std::chrono::steady_clock::time_point start) {
  const std::chrono::duration<double> elapsed = std::chrono::steady_clock::now() - start;
  char buf[64];
  std::snprintf(buf, sizeof buf, "wall time %.3f s\n", elapsed.count());
  err << buf;
}

}  // namespace

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Pattern encounter densities in random words", "patdens"};
  app.set_version_flag("--version", tool_name());
  app.require_subcommand(1);

  std::string pattern_text, word_text, format = "csv";
  auto* match = app.add_subcommand("match", "is WORD an instance of PATTERN? prints a witness");
  match->add_option("pattern", pattern_text)->required();
  match->add_option("word", word_text)->required();

  auto* dens = app.add_subcommand("density", "exact density of PATTERN in WORD");
  dens->add_option("pattern", pattern_text)->required();
  dens->add_option("word", word_text)->required();
  dens->add_option("--format", format)->check(CLI::IsMember({"csv", "json"}));

  auto* hom = app.add_subcommand("hom", "number of encounters of PATTERN in WORD");
  hom->add_option("pattern", pattern_text)->required();
  hom->add_option("word", word_text)->required();
  hom->add_option("--format", format)->check(CLI::IsMember({"csv", "json"}));

  RunFlags flags;
  ExactArgs exact_args;
  auto* exact = app.add_subcommand("exact", "exhaustive computations over all q^n words");
  exact->require_subcommand(1);
  const std::vector<std::pair<std::string, std::string>> exact_subs = {
      {"instprob", "I_n: fraction of words that are instances"},
      {"expdens", "expected density"},
      {"exphom", "expected number of encounters"},
      {"bound", "instance probability against its upper bound (doubled patterns)"},
      {"tailbound", "P(C(n+1,2) delta > n f) against its upper bound (doubled patterns)"},
      {"smallcore", "fraction of instances with a short core witness"},
      {"z2limit", "limit instance probability of xyx"},
  };
  for (const auto& [name, help] : exact_subs) {
    auto* sub = exact->add_subcommand(name, help);
    add_run_flags(sub, flags);
    if (name == "z2limit") {
      sub->add_option("--q", exact_args.q_range, "alphabet sizes, as an n-style range");
      sub->add_option("--tol", exact_args.tol);
      continue;
    }
    sub->add_option("--pattern", exact_args.pattern)->required();
    sub->add_option("--q", exact_args.q);
    sub->add_option("--n", exact_args.n, "N, a:b, a:b:xK or a:b:+K")->required();
    if (name == "tailbound") sub->add_option("--f", exact_args.f)->required();
  }

  std::string kind, config_path;
  auto* experiment = app.add_subcommand("experiment", "Monte Carlo experiment over a grid of lengths");
  experiment->add_option("kind", kind, "dichotomy, variance, moments, smallcore or instprob");
  experiment->add_option("--config", config_path, "config file or a previous result");
  const std::vector<std::string> keys = {"pattern", "q", "n", "samples", "seed", "pmax", "moment", "tol"};
  std::map<std::string, std::string> overrides;
  std::map<std::string, CLI::Option*> override_opts;
  for (const auto& key : keys) override_opts[key] = experiment->add_option("--" + key, overrides[key]);
  add_run_flags(experiment, flags);
  bool exploratory = false;
  experiment->add_flag("--exploratory", exploratory, "allow nondoubled patterns in scaling runs");

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e, out, err);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e, out, err);
  } catch (const CLI::CallForVersion& e) {
    return app.exit(e, out, err);
  } catch (const CLI::ParseError& e) {
    app.exit(e, out, err);
    return kExitUsage;
  }

  Emitter emitter(out, err);
  const auto start = std::chrono::steady_clock::now();
  try {
    if (match->parsed()) return cmd_match(pattern_text, word_text, out);
    if (dens->parsed()) {
      emitter.emit(cmd_density(pattern_text, word_text), format, "");
      return kExitOk;
    }
    if (hom->parsed()) {
      emitter.emit(cmd_hom(pattern_text, word_text), format, "");
      return kExitOk;
    }
    if (exact->parsed()) {
      const auto* sub = exact->get_subcommands().front();
      ExactOptions opts;
      opts.workers = flags.workers;
      if (flags.budget) opts.budget = *flags.budget;
      emitter.emit(cmd_exact(sub->get_name(), exact_args, opts), flags.format, flags.out_path);
      report_wall_time(err, start);
      return kExitOk;
    }
    if (experiment->parsed()) {
      ExperimentConfig cfg;
      if (!config_path.empty()) cfg = read_config(read_file(config_path));
      if (!kind.empty()) cfg.kind = kind;
      for (const auto& key : keys) {
        if (override_opts[key]->count() > 0) set_config_value(cfg, key, overrides[key]);
      }
      if (experiment->get_option("--format")->count() > 0) cfg.format = flags.format;
      if (flags.budget) cfg.budget = flags.budget;
      if (exploratory) cfg.exploratory = true;
      emitter.emit(cmd_experiment(cfg, flags.workers), cfg.format, flags.out_path);
      report_wall_time(err, start);
      return kExitOk;
    }
  } catch (const BudgetExceeded& e) {
    err << "error: " << e.what() << "\n";
    return kExitBudget;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return kExitUsage;
  }
  return kExitUsage;
}

}  // namespace patdens::cli
