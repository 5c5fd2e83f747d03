#include "config.hpp"

#include <charconv>
#include <set>
#include <sstream>

#include <json.hpp>

namespace patdens::cli {

namespace {

const std::set<std::string, std::less<>> kKinds = {"dichotomy", "variance", "moments", "smallcore",
                                                   "instprob"};

template <class T>
T parse_number(std::string_view key, std::string_view text) {
  T value{};
  const auto* end = text.data() + text.size();
  auto [ptr, ec] = std::from_chars(text.data(), end, value);
  if (ec != std::errc{} || ptr != end || text.empty()) {
    throw UsageError("invalid value for " + std::string(key) + ": '" + std::string(text) + "'");
  }
  return value;
}

std::string_view trim(std::string_view s) {
  const auto first = s.find_first_not_of(" \t\r");
  if (first == std::string_view::npos) return {};
  const auto last = s.find_last_not_of(" \t\r");
  return s.substr(first, last - first + 1);
}

bool parse_bool(std::string_view key, std::string_view text) {
  if (text == "true" || text == "1") return true;
  if (text == "false" || text == "0") return false;
  throw UsageError("invalid value for " + std::string(key) + ": '" + std::string(text) + "'");
}

void apply_line(ExperimentConfig& cfg, std::string_view line) {
  const auto eq = line.find('=');
  if (eq == std::string_view::npos) {
    throw UsageError("config line without '=': '" + std::string(line) + "'");
  }
  set_config_value(cfg, trim(line.substr(0, eq)), trim(line.substr(eq + 1)));
}

}  // namespace

std::string format_double(double v) {
  char buf[64];
  auto [ptr, ec] = std::to_chars(buf, buf + sizeof buf, v);
  return std::string(buf, ptr);
}

std::vector<std::pair<std::string, std::string>> config_entries(const ExperimentConfig& cfg) {
  std::vector<std::pair<std::string, std::string>> out = {
      {"kind", cfg.kind},
      {"pattern", cfg.pattern},
      {"q", std::to_string(cfg.q)},
      {"n", cfg.n},
      {"samples", std::to_string(cfg.samples)},
      {"seed", std::to_string(cfg.seed)},
      {"pmax", std::to_string(cfg.pmax)},
      {"moment", cfg.moment},
      {"tol", format_double(cfg.tol)},
      {"format", cfg.format},
      {"exploratory", cfg.exploratory ? "true" : "false"},
  };
  if (cfg.budget) out.emplace_back("budget", std::to_string(*cfg.budget));
  return out;
}

void set_config_value(ExperimentConfig& cfg, std::string_view key, std::string_view value) {
  if (key == "kind") {
    cfg.kind = value;
  } else if (key == "pattern") {
    cfg.pattern = value;
  } else if (key == "q") {
    cfg.q = parse_number<int>(key, value);
  } else if (key == "n") {
    cfg.n = value;
  } else if (key == "samples") {
    cfg.samples = parse_number<std::uint64_t>(key, value);
  } else if (key == "seed") {
    cfg.seed = parse_number<std::uint64_t>(key, value);
  } else if (key == "pmax") {
    cfg.pmax = parse_number<int>(key, value);
  } else if (key == "moment") {
    cfg.moment = value;
  } else if (key == "tol") {
    cfg.tol = parse_number<double>(key, value);
  } else if (key == "format") {
    cfg.format = value;
  } else if (key == "budget") {
    cfg.budget = parse_number<std::uint64_t>(key, value);
  } else if (key == "exploratory") {
    cfg.exploratory = parse_bool(key, value);
  } else {
    throw UsageError("unknown config key '" + std::string(key) + "'");
  }
}

std::string write_config(const ExperimentConfig& cfg) {
  std::string out;
  for (const auto& [key, value] : config_entries(cfg)) out += key + "=" + value + "\n";
  return out;
}

ExperimentConfig read_config(std::string_view text) {
  ExperimentConfig cfg;
  const auto body = trim(text);
  if (!body.empty() && body.front() == '{') {
    nlohmann::json doc;
    try {
      doc = nlohmann::json::parse(body);
    } catch (const nlohmann::json::exception& e) {
      throw UsageError(std::string("invalid JSON config: ") + e.what());
    }
    if (!doc.contains("config") || !doc["config"].is_object()) {
      throw UsageError("JSON config has no \"config\" object");
    }
    for (const auto& [key, value] : doc["config"].items()) {
      if (!value.is_string()) throw UsageError("config value for " + key + " must be a string");
      set_config_value(cfg, key, value.get<std::string>());
    }
    return cfg;
  }

  constexpr std::string_view kEmbedded = "# config: ";
  const bool embedded = text.find(kEmbedded) != std::string_view::npos;
  std::istringstream in{std::string(text)};
  std::string line;
  while (std::getline(in, line)) {
    std::string_view view = line;
    if (embedded) {
      if (view.starts_with(kEmbedded)) apply_line(cfg, view.substr(kEmbedded.size()));
      continue;
    }
    view = trim(view);
    if (view.empty() || view.front() == '#') continue;
    apply_line(cfg, view);
  }
  return cfg;
}

void validate(const ExperimentConfig& cfg) {
  if (!kKinds.contains(cfg.kind)) {
    throw UsageError("unknown experiment kind '" + cfg.kind +
                     "' (dichotomy, variance, moments, smallcore, instprob)");
  }
  if (cfg.pattern.empty()) throw UsageError("pattern is required");
  if (cfg.n.empty()) throw UsageError("n is required");
  if (cfg.q < 1 || cfg.q > 26) throw UsageError("q must be in [1, 26]");
  if (cfg.samples < 2) throw UsageError("samples must be at least 2");
  if (cfg.pmax < 1 || cfg.pmax > 4) throw UsageError("pmax must be in [1, 4]");
  if (cfg.moment != "central" && cfg.moment != "raw") throw UsageError("moment must be central or raw");
  if (cfg.format != "csv" && cfg.format != "json") throw UsageError("format must be csv or json");
  if (!(cfg.tol > 0)) throw UsageError("tol must be positive");
  parse_n_range(cfg.n);
}

std::vector<std::size_t> parse_n_range(std::string_view text) {
  std::vector<std::string_view> parts;
  std::size_t from = 0;
  while (true) {
    const auto colon = text.find(':', from);
    parts.push_back(text.substr(from, colon == std::string_view::npos ? colon : colon - from));
    if (colon == std::string_view::npos) break;
    from = colon + 1;
  }
  if (parts.size() > 3) throw UsageError("bad n range '" + std::string(text) + "'");

  const auto start = parse_number<std::size_t>("n", parts[0]);
  if (start < 1) throw UsageError("n must be at least 1");
  if (parts.size() == 1) return {start};
  const auto stop = parse_number<std::size_t>("n", parts[1]);
  if (stop < start) throw UsageError("n range stop is below start");

  bool geometric = false;
  std::size_t step = 1;
  if (parts.size() == 3) {
    const auto spec = parts[2];
    if (spec.size() < 2 || (spec[0] != 'x' && spec[0] != '+')) {
      throw UsageError("n range step must be xK or +K, got '" + std::string(spec) + "'");
    }
    geometric = spec[0] == 'x';
    step = parse_number<std::size_t>("n", spec.substr(1));
    if (step < (geometric ? 2U : 1U)) throw UsageError("n range step too small");
  }
  std::vector<std::size_t> out;
  for (std::size_t n = start; n <= stop; n = geometric ? n * step : n + step) out.push_back(n);
  return out;
}

}  // namespace patdens::cli
