#include "cli.hpp"

#include <chrono>
#include <cstdio>
#include <cstdlib>
#include <ctime>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>

#include <CLI11.hpp>

#ifndef DSWAP_VERSION
#define DSWAP_VERSION "0.0.0"
#endif

namespace dswap::cli {

namespace {

using nlohmann::json;

const char* const kNumericKeys[] = {"guest-size", "range-max", "requests", "reps", "seed", "sample-every"};
const char* const kStringKeys[] = {"host", "guest", "weights", "policy", "mode", "placement"};
const char* const kBoolKeys[] = {"lenient", "keep-stats"};

json default_settings() {
  return json{{"guest", "clique"},   {"guest-size", 27},   {"weights", "unweighted"},
              {"range-max", 100},    {"policy", "bestneighbor-direct"}, {"mode", "inter"},
              {"requests", 100000},  {"reps", 10},         {"seed", 1},
              {"sample-every", 0},   {"placement", "random"}, {"lenient", false},
              {"keep-stats", false}};
}

struct Flags {
  std::string config;
  std::string out;
  std::string sizes;
  std::string policies;
  std::string spec;
  unsigned threads = 0;
  std::map<std::string, std::string> values;
  std::map<std::string, bool> switches;
};

json read_json_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw UsageError("cannot open '" + path + "'");
  try {
    return json::parse(in);
  } catch (const json::exception& e) {
    throw UsageError("'" + path + "' is not valid JSON: " + e.what());
  }
}

// Copies known setting keys; a manifest's "config" object is unwrapped.
void merge_settings(json& settings, const json& source) {
  const json& src = source.contains("config") && source["config"].is_object() ? source["config"] : source;
  if (!src.is_object()) throw UsageError("configuration must be a JSON object");
  for (const auto& [key, value] : src.items()) {
    if (key == "phases") {
      settings["phases"] = value;
      continue;
    }
    if (!default_settings().contains(key) && key != "host") throw UsageError("unknown configuration key '" + key + "'");
    settings[key] = value;
  }
}

std::uint64_t parse_uint(const std::string& key, const std::string& text) {
  std::size_t used = 0;
  unsigned long long v = 0;
  try {
    if (!text.empty() && text[0] == '-') throw std::invalid_argument("negative");
    v = std::stoull(text, &used);
  } catch (const std::exception&) {
    used = 0;
  }
  if (used == 0 || used != text.size()) throw UsageError("--" + key + " expects a non-negative integer, got '" + text + "'");
  return v;
}

std::vector<std::string> split(const std::string& text, char sep) {
  std::vector<std::string> parts;
  std::string item;
  std::istringstream in(text);
  while (std::getline(in, item, sep)) {
    if (!item.empty()) parts.push_back(item);
  }
  return parts;
}

BCubeParams parse_host(const std::string& text) {
  const auto parts = split(text, ',');
  if (parts.size() != 2) throw UsageError("--host expects 'n,k', got '" + text + "'");
  return {static_cast<int>(parse_uint("host", parts[0])), static_cast<int>(parse_uint("host", parts[1]))};
}

std::uint64_t get_uint(const json& j, const std::string& key) {
  const json& v = j.at(key);
  if (v.is_number_unsigned()) return v.get<std::uint64_t>();
  if (v.is_number_integer() && v.get<std::int64_t>() >= 0) return static_cast<std::uint64_t>(v.get<std::int64_t>());
  if (v.is_string()) return parse_uint(key, v.get<std::string>());
  throw UsageError("'" + key + "' must be a non-negative integer");
}

std::string get_string(const json& j, const std::string& key) {
  const json& v = j.at(key);
  if (!v.is_string()) throw UsageError("'" + key + "' must be a string");
  return v.get<std::string>();
}

GuestSpec guest_from(const json& j) {
  GuestSpec g;
  g.kind = parse_guest_kind(get_string(j, "guest"));
  g.size = static_cast<std::uint32_t>(get_uint(j, "guest-size"));
  g.weights.kind = parse_weight_kind(get_string(j, "weights"));
  g.weights.range_max = get_uint(j, "range-max");
  return g;
}

std::string iso_now() {
  const std::time_t now = std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
  std::tm tm{};
  gmtime_r(&now, &tm);
  char buf[32];
  std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", &tm);
  return buf;
}

std::string sibling_path(const std::string& base, const std::string& policy, std::uint32_t size) {
  std::filesystem::path p(base);
  const std::string stem = p.stem().string();
  const std::string ext = p.has_extension() ? p.extension().string() : ".csv";
  return (p.parent_path() / (stem + "." + policy + ".size" + std::to_string(size) + ext)).string();
}

void add_common_options(CLI::App* sub, Flags& f) {
  sub->add_option("--config", f.config, "JSON settings file (or a previous run's manifest)");
  sub->add_option("--host", f.values["host"], "BCube parameters n,k");
  sub->add_option("--guest", f.values["guest"], "clique | star | subcube | matching");
  sub->add_option("--guest-size", f.values["guest-size"], "VMs per tenant");
  sub->add_option("--weights", f.values["weights"], "unweighted | product");
  sub->add_option("--range-max", f.values["range-max"], "upper end of per-VM product weights");
  sub->add_option("--policy", f.values["policy"], "none | meetmiddle | <random|bestswitch|bestneighbor>-<direct|indirect>");
  sub->add_option("--mode", f.values["mode"], "inter | intra");
  sub->add_option("--requests", f.values["requests"], "requests per repetition");
  sub->add_option("--reps", f.values["reps"], "repetitions");
  sub->add_option("--seed", f.values["seed"], "master seed (DSWAP_SEED overrides)");
  sub->add_option("--sample-every", f.values["sample-every"], "requests per sample/window (0 = auto)");
  sub->add_option("--placement", f.values["placement"], "random | local | perfect");
  sub->add_flag("--lenient", f.switches["lenient"], "leave hosts empty when the tenant size does not divide the host count");
  sub->add_flag("--keep-stats", f.switches["keep-stats"], "keep request history across phases");
  sub->add_option("--threads", f.threads, "worker threads for repetitions (0 = all cores)");
  sub->add_option("--out", f.out, "output CSV path");
}

}  // namespace

ExperimentConfig config_from_settings(const json& settings) {
  if (!settings.contains("host")) throw UsageError("--host is required");
  ExperimentConfig c;
  try {
    c.host = parse_host(get_string(settings, "host"));
    c.guest = guest_from(settings);
    c.policy = parse_policy(get_string(settings, "policy"), parse_mode(get_string(settings, "mode")));
    c.requests = get_uint(settings, "requests");
    c.repetitions = static_cast<std::uint32_t>(get_uint(settings, "reps"));
    c.seed = get_uint(settings, "seed");
    c.sample_every = get_uint(settings, "sample-every");
    c.placement = parse_placement(get_string(settings, "placement"));
    c.cover = settings.at("lenient").get<bool>() ? CoverMode::lenient : CoverMode::strict;
    c.reset_stats_on_phase = !settings.at("keep-stats").get<bool>();
    if (settings.contains("phases")) {
      for (const json& p : settings.at("phases")) {
        json merged = settings;
        merged.erase("phases");
        for (const auto& [key, value] : p.items()) merged[key] = value;
        c.phases.push_back({guest_from(merged), get_uint(merged, "requests")});
      }
    }
  } catch (const UsageError&) {
    throw;
  } catch (const std::exception& e) {
    throw UsageError(e.what());
  }
  if (c.requests < 1) throw UsageError("--requests must be >= 1");
  if (c.repetitions < 1) throw UsageError("--reps must be >= 1");
  try {
    validate(c);
  } catch (const std::exception& e) {
    throw UsageError(e.what());
  }
  return c;
}

Invocation parse_args(int argc, const char* const* argv) {
  CLI::App app{"Online VM migration on BCube host graphs", "dswap"};
  app.set_version_flag("--version", DSWAP_VERSION);
  app.require_subcommand(1);
  Flags f;
  CLI::App* run_cmd = app.add_subcommand("run", "run one configuration");
  CLI::App* sweep_cmd = app.add_subcommand("sweep", "sweep tenant sizes (and policies)");
  CLI::App* baseline_cmd = app.add_subcommand("baseline", "no-migration baseline against the random-placement expectation");
  CLI::App* phases_cmd = app.add_subcommand("phases", "pattern-shift run from a phase spec");
  for (CLI::App* sub : {run_cmd, sweep_cmd, baseline_cmd, phases_cmd}) add_common_options(sub, f);
  sweep_cmd->add_option("--sizes", f.sizes, "comma-separated tenant sizes")->required();
  sweep_cmd->add_option("--policies", f.policies, "comma-separated policies (default: --policy)");
  phases_cmd->add_option("--spec", f.spec, "JSON phase spec")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    if (e.get_exit_code() != 0) throw UsageError(e.what());
    std::ostringstream text;
    app.exit(e, text, text);
    throw InfoRequested(text.str());
  }

  CLI::App* sub = app.get_subcommands().front();
  Invocation inv;
  if (sub == run_cmd) inv.command = Command::run;
  if (sub == sweep_cmd) inv.command = Command::sweep;
  if (sub == baseline_cmd) inv.command = Command::baseline;
  if (sub == phases_cmd) inv.command = Command::phases;

  json settings = default_settings();
  if (!f.config.empty()) merge_settings(settings, read_json_file(f.config));
  if (inv.command == Command::phases) {
    const json spec = read_json_file(f.spec);
    merge_settings(settings, spec);
    if (!settings.contains("phases") || !settings["phases"].is_array() || settings["phases"].size() < 2) {
      throw UsageError("phase spec needs a \"phases\" array with at least two entries");
    }
  }
  for (const char* key : kStringKeys) {
    if (sub->count(std::string("--") + key)) settings[key] = f.values[key];
  }
  for (const char* key : kNumericKeys) {
    if (sub->count(std::string("--") + key)) settings[key] = parse_uint(key, f.values[key]);
  }
  for (const char* key : kBoolKeys) {
    if (sub->count(std::string("--") + key)) settings[key] = true;
  }
  if (const char* env = std::getenv("DSWAP_SEED"); env && *env) settings["seed"] = parse_uint("seed", env);
  if (inv.command == Command::baseline) settings["policy"] = "none";

  inv.config = config_from_settings(settings);
  inv.config.threads = f.threads;
  inv.settings = settings;
  inv.out = f.out;
  if (inv.command == Command::sweep) {
    for (const auto& s : split(f.sizes, ',')) inv.sizes.push_back(static_cast<std::uint32_t>(parse_uint("sizes", s)));
    if (inv.sizes.empty()) throw UsageError("--sizes needs at least one size");
    inv.policies = f.policies.empty() ? std::vector<std::string>{settings["policy"].get<std::string>()}
                                      : split(f.policies, ',');
    const Mode mode = parse_mode(settings["mode"].get<std::string>());
    for (const auto& p : inv.policies) {
      try {
        parse_policy(p, mode);
      } catch (const std::exception& e) {
        throw UsageError(e.what());
      }
    }
  }
  if ((inv.command == Command::run || inv.command == Command::sweep || inv.command == Command::phases) &&
      inv.out.empty()) {
    throw UsageError("--out is required");
  }
  return inv;
}

void write_csv(std::ostream& out, const ExperimentResult& result) {
  out << "t,requests_per_edge,cost_cum_mean,cost_cum_std,cost_win_mean,cost_win_std,cost_mig_mean,swaps_mean\n";
  char line[512];
  for (const AggregatePoint& p : result.points) {
    std::snprintf(line, sizeof line, "%llu,%.6f,%.6f,%.6f,%.6f,%.6f,%.6f,%.3f\n",
                  static_cast<unsigned long long>(p.t), p.requests_per_edge, p.cost_cum_mean, p.cost_cum_std,
                  p.cost_win_mean, p.cost_win_std, p.cost_mig_mean, p.swaps_mean);
    out << line;
  }
}

void emit_csv(const ExperimentResult& result, const std::string& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot write '" + path + "'");
  write_csv(out, result);
  if (!out) throw std::runtime_error("write to '" + path + "' failed");
}

json manifest(const Invocation& inv, const json& settings, const std::string& started, const std::string& finished,
              const std::vector<std::string>& outputs) {
  static const char* const names[] = {"run", "sweep", "baseline", "phases"};
  return json{{"tool", "dswap"},
              {"version", DSWAP_VERSION},
              {"command", names[static_cast<int>(inv.command)]},
              {"config", settings},
              {"seed", settings.at("seed")},
              {"started_at", started},
              {"finished_at", finished},
              {"outputs", outputs}};
}

void write_manifest(const std::string& csv_path, const json& m) {
  const std::string path = csv_path + ".manifest.json";
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot write '" + path + "'");
  out << m.dump(2) << '\n';
}

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  Invocation inv;
  try {
    inv = parse_args(argc, argv);
  } catch (const InfoRequested& e) {
    out << e.what();
    return 0;
  } catch (const UsageError& e) {
    err << "dswap: " << e.what() << "\nRun with --help for usage.\n";
    return 2;
  }

  try {
    const std::string started = iso_now();
    switch (inv.command) {
      case Command::run:
      case Command::phases: {
        const ExperimentResult r = run_repetitions(inv.config);
        emit_csv(r, inv.out);
        write_manifest(inv.out, manifest(inv, inv.settings, started, iso_now(), {inv.out}));
        out << policy_name(inv.config.policy) << " final amortized cost " << r.final_point().cost_cum_mean << " (initial "
            << r.initial_cost_mean << ")\n";
        return 0;
      }
      case Command::baseline: {
        const Ratio expected = expected_random_distance(inv.config.host);
        char line[128];
        std::snprintf(line, sizeof line, "expected %.3f (%lld/%lld)\n", expected.value(),
                      static_cast<long long>(expected.num), static_cast<long long>(expected.den));
        out << line;
        const ExperimentResult r = run_repetitions(inv.config);
        std::snprintf(line, sizeof line, "measured %.6f +- %.6f over %u repetitions\n", r.final_point().cost_cum_mean,
                      r.final_point().cost_cum_std, inv.config.repetitions);
        out << line;
        if (!inv.out.empty()) {
          emit_csv(r, inv.out);
          write_manifest(inv.out, manifest(inv, inv.settings, started, iso_now(), {inv.out}));
        }
        return 0;
      }
      case Command::sweep: {
        std::ostringstream summary;
        summary << "size,policy,final_cost\n";
        std::vector<std::string> outputs;
        bool all_ok = true;
        for (const std::string& policy : inv.policies) {
          ExperimentConfig c = inv.config;
          c.policy = parse_policy(policy, parse_mode(inv.settings["mode"].get<std::string>()));
          for (const SweepEntry& e : sweep_guest_size(c, inv.sizes)) {
            if (!e.result) {
              err << "dswap: size " << e.size << " (" << policy << "): " << e.error << '\n';
              all_ok = false;
              continue;
            }
            const std::string path = sibling_path(inv.out, policy, e.size);
            emit_csv(*e.result, path);
            json settings = inv.settings;
            settings["policy"] = policy;
            settings["guest-size"] = e.size;
            write_manifest(path, manifest(inv, settings, started, iso_now(), {path}));
            outputs.push_back(path);
            char row[128];
            std::snprintf(row, sizeof row, "%u,%s,%.6f\n", e.size, policy.c_str(),
                          e.result->final_point().cost_cum_mean);
            summary << row;
            out << row;
          }
        }
        std::ofstream sum(inv.out, std::ios::binary);
        if (!sum) throw std::runtime_error("cannot write '" + inv.out + "'");
        sum << summary.str();
        outputs.push_back(inv.out);
        write_manifest(inv.out, manifest(inv, inv.settings, started, iso_now(), outputs));
        return all_ok ? 0 : 1;
      }
    }
  } catch (const std::exception& e) {
    err << "dswap: " << e.what() << '\n';
    return 1;
  }
  return 1;
}

}  // namespace dswap::cli
