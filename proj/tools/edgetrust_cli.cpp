// Command-line front end: registration, credential verification, activity
// logging, trust queries, fuzzy evaluation, scenario simulation and trace
// export, all against a file-backed data directory.

#include <chrono>
#include <filesystem>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <map>
#include <optional>
#include <string>

#include "CLI11.hpp"
#include "edgetrust/errors.hpp"
#include "edgetrust/fuzzy.hpp"
#include "edgetrust/registration.hpp"
#include "edgetrust/sim.hpp"
#include "edgetrust/store.hpp"
#include "edgetrust/trust.hpp"

namespace {

using namespace edgetrust;

// Exit codes: 0 success, 2 usage, 3 not registered / verification failed,
// 4 parse or integrity failure, 5 invalid window.
constexpr int kExitUsage = 2;
constexpr int kExitNotRegistered = 3;
constexpr int kExitDataError = 4;
constexpr int kExitInvalidWindow = 5;

int exit_code_for(ErrorCode code) {
  switch (code) {
    case ErrorCode::invalid_identity:
      return kExitUsage;
    case ErrorCode::not_registered:
      return kExitNotRegistered;
    case ErrorCode::invalid_window:
      return kExitInvalidWindow;
    default:
      return kExitDataError;
  }
}

struct DataDir {
  std::filesystem::path root;

  std::filesystem::path secret_path() const { return root / "secret.hex"; }
  std::filesystem::path trust_center_path() const { return root / "trust_center.tsv"; }
  std::filesystem::path devices_path() const { return root / "devices.tsv"; }
  std::filesystem::path activity_path() const { return root / "activity.tsv"; }
};

TrustCenterSecret load_or_create_secret(const DataDir& dir) {
  if (auto secret = load_secret(dir.secret_path())) {
    return *secret;
  }
  SystemRandom rng;
  TrustCenterSecret secret = TrustCenterSecret::generate(rng);
  save_secret(secret, dir.secret_path());
  return secret;
}

TrustCenterSecret require_secret(const DataDir& dir) {
  if (auto secret = load_secret(dir.secret_path())) {
    return *secret;
  }
  throw Error(ErrorCode::not_registered, "no trust center state in " + dir.root.string());
}

Timestamp wall_clock_now() {
  return std::chrono::duration_cast<std::chrono::seconds>(
             std::chrono::system_clock::now().time_since_epoch())
      .count();
}

fuzzy::FuzzyConfig resolve_fuzzy_config(const std::string& config_path, int samples_override) {
  fuzzy::FuzzyConfig config =
      config_path.empty() ? fuzzy::FuzzyConfig::standard() : fuzzy::load_config(config_path);
  if (samples_override > 0) {
    config.samples = samples_override;
    config.validate();
  }
  return config;
}

/// Looks the device up in the trust center; unknown devices get an empty log.
ActivityLog log_for_registered(const DataDir& dir, const ByteString& uid) {
  TrustCenterTable table = load_trust_center_table(dir.trust_center_path());
  if (!table.contains(uid)) {
    throw Error(ErrorCode::not_registered, "uid '" + string_of(uid) + "' is not registered");
  }
  ActivityStore store = load_activity_store(dir.activity_path());
  if (const ActivityLog* log = store.find(uid)) {
    return *log;
  }
  return ActivityLog(uid);
}

int cmd_register(const DataDir& dir, const std::string& uid, const std::string& password) {
  std::filesystem::create_directories(dir.root);
  TrustCenterSecret secret = load_or_create_secret(dir);
  TrustCenterTable tc_table = load_trust_center_table(dir.trust_center_path());
  DeviceTable device_table = load_device_table(dir.devices_path());

  SystemRandom rng;
  RegistrationMessage msg = device_enroll(bytes_of(uid), bytes_of(password), rng, wall_clock_now());
  TrustCenterRecord record = tc_register(msg, secret, tc_table);
  device_table.insert(device_store(msg.uid, bytes_of(password), record.d, msg.b));

  save_trust_center_table(tc_table, dir.trust_center_path());
  save_device_table(device_table, dir.devices_path());
  std::cout << "registered " << uid << '\n';
  return 0;
}

int cmd_verify(const DataDir& dir, const std::string& uid, const std::string& password) {
  TrustCenterSecret secret = require_secret(dir);
  TrustCenterTable tc_table = load_trust_center_table(dir.trust_center_path());
  DeviceTable device_table = load_device_table(dir.devices_path());

  const DeviceRecord* device = device_table.find(bytes_of(uid));
  if (device == nullptr) {
    throw Error(ErrorCode::not_registered, "uid '" + uid + "' has no device record");
  }
  if (verify_credentials(bytes_of(uid), bytes_of(password), device->b, secret, tc_table)) {
    std::cout << "verified " << uid << '\n';
    return 0;
  }
  std::cout << "verification failed\n";
  return kExitNotRegistered;
}

int cmd_log_action(const DataDir& dir, const std::string& uid, const std::string& sid,
                   const std::string& kind, Timestamp time) {
  TrustCenterTable table = load_trust_center_table(dir.trust_center_path());
  if (!table.contains(bytes_of(uid))) {
    throw Error(ErrorCode::not_registered, "uid '" + uid + "' is not registered");
  }
  ActivityRecord record;
  record.uid = bytes_of(uid);
  record.sid = bytes_of(sid);
  record.kind = kind == "PA" ? ActionKind::positive : ActionKind::negative;
  record.action_time = time;
  append_activity_row(dir.activity_path(), record);
  std::cout << "logged " << kind << " for " << uid << " at " << time << '\n';
  return 0;
}

int cmd_trust(const DataDir& dir, const std::string& uid, Timestamp now, Timestamp pos_boundary,
              Timestamp neg_boundary, const std::string& config_path, int samples) {
  ActivityLog log = log_for_registered(dir, bytes_of(uid));
  fuzzy::FuzzyConfig config = resolve_fuzzy_config(config_path, samples);
  TrustReport report = assess_trust(log, now, {pos_boundary, neg_boundary}, config);
  std::cout << "uid=" << uid << '\n'
            << "qualified_pos=" << report.qualified_pos << '\n'
            << "qualified_neg=" << report.qualified_neg << '\n'
            << "net_activity=" << report.net_activity << '\n'
            << "trust_degree=" << std::fixed << std::setprecision(6) << report.trust_degree
            << '\n';
  return 0;
}

int cmd_fuzzy_eval(double pos, double neg, const std::string& config_path, int samples) {
  fuzzy::FuzzyConfig config = resolve_fuzzy_config(config_path, samples);
  std::cout << std::fixed << std::setprecision(6) << fuzzy::trust_score(config, pos, neg) << '\n';
  return 0;
}

int cmd_simulate(std::size_t devices, AdversaryKind adversary, std::uint64_t seed,
                 std::optional<std::uint64_t> adversary_seed, const std::string& transcript_path) {
  AdversaryMode mode;
  mode.kind = adversary;
  mode.rng_seed = adversary_seed.value_or(seed);
  ScenarioRun run = run_registration_scenario(devices, mode, seed);

  std::ofstream out(transcript_path, std::ios::binary);
  if (!out) {
    throw Error(ErrorCode::io_error, "cannot write transcript to " + transcript_path);
  }
  out << format_transcript(run.transcript);
  std::cout << format_result(run.result);
  return 0;
}

int cmd_trace(const DataDir& dir, const std::string& uid, Timestamp from, Timestamp to,
              Timestamp step, Timestamp pos_window, Timestamp neg_window,
              const std::string& config_path, int samples) {
  ActivityLog log = log_for_registered(dir, bytes_of(uid));
  fuzzy::FuzzyConfig config = resolve_fuzzy_config(config_path, samples);
  std::cout << "time,qualified_pos,qualified_neg,trust_degree\n";
  for (Timestamp t = from; t <= to; t += step) {
    WindowConfig window{t - pos_window, t - neg_window};
    TrustReport report = assess_trust(log, t, window, config);
    std::cout << t << ',' << report.qualified_pos << ',' << report.qualified_neg << ','
              << std::fixed << std::setprecision(6) << report.trust_degree << '\n';
  }
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Device trust tooling: registration, trust scoring, simulation"};
  app.require_subcommand(1);

  std::string data_dir = "edgetrust_data";
  app.add_option("--data-dir", data_dir, "Directory holding the trust center state")
      ->capture_default_str();

  std::string uid;
  std::string password;
  std::string sid;
  std::string kind;
  std::string config_path;
  std::string transcript_path = "transcript.txt";
  std::string adversary_name = "none";
  Timestamp now = 0;
  Timestamp pos_boundary = 0;
  Timestamp neg_boundary = 0;
  Timestamp time = 0;
  Timestamp from = 0;
  Timestamp to = 0;
  Timestamp step = 1;
  Timestamp pos_window = 0;
  Timestamp neg_window = 0;
  double pos = 0;
  double neg = 0;
  int samples = 0;
  std::size_t devices = 1;
  std::uint64_t seed = 0;
  std::optional<std::uint64_t> adversary_seed;

  CLI::App* reg = app.add_subcommand("register", "Enroll a device with the trust center");
  reg->add_option("--uid", uid, "Device identity")->required();
  reg->add_option("--password", password, "Device password")->required();

  CLI::App* verify = app.add_subcommand("verify", "Re-check a device's stored credentials");
  verify->add_option("--uid", uid, "Device identity")->required();
  verify->add_option("--password", password, "Password to check")->required();

  CLI::App* log_action = app.add_subcommand("log-action", "Append one reported action");
  log_action->add_option("--uid", uid, "Device identity")->required();
  log_action->add_option("--sid", sid, "Reporting service provider")->required();
  log_action->add_option("--kind", kind, "PA (positive) or NA (negative)")
      ->required()
      ->check(CLI::IsMember({"PA", "NA"}));
  log_action->add_option("--time", time, "Action time")->required();

  CLI::App* trust = app.add_subcommand("trust", "Evaluate a device's trust degree");
  trust->add_option("--uid", uid, "Device identity")->required();
  trust->add_option("--now", now, "Evaluation time")->required();
  trust->add_option("--pos-boundary", pos_boundary, "Positive frame boundary time")->required();
  trust->add_option("--neg-boundary", neg_boundary, "Negative frame boundary time")->required();
  trust->add_option("--config", config_path, "Fuzzy configuration file");
  trust->add_option("--samples", samples, "Output discretization override");

  CLI::App* fuzzy_eval = app.add_subcommand("fuzzy-eval", "Score one (pos, neg) pair");
  fuzzy_eval->add_option("--pos", pos, "Qualified positive actions")->required();
  fuzzy_eval->add_option("--neg", neg, "Qualified negative actions")->required();
  fuzzy_eval->add_option("--config", config_path, "Fuzzy configuration file");
  fuzzy_eval->add_option("--samples", samples, "Output discretization override");

  CLI::App* simulate = app.add_subcommand("simulate", "Run a seeded registration scenario");
  simulate->add_option("--devices", devices, "Number of devices to enroll")->required();
  simulate->add_option("--adversary", adversary_name, "none, eavesdrop, replay or tamper")
      ->check(CLI::IsMember({"none", "eavesdrop", "replay", "tamper"}))
      ->capture_default_str();
  simulate->add_option("--seed", seed, "Scenario seed")->required();
  simulate->add_option("--adversary-seed", adversary_seed,
                       "Adversary seed (defaults to the scenario seed)");
  simulate->add_option("--transcript", transcript_path, "Transcript output file")
      ->capture_default_str();

  CLI::App* trace = app.add_subcommand("trace", "Emit a CSV trust time-series");
  trace->add_option("--uid", uid, "Device identity")->required();
  trace->add_option("--from", from, "First evaluation time")->required();
  trace->add_option("--to", to, "Last evaluation time")->required();
  trace->add_option("--step", step, "Time increment")->required()->check(CLI::PositiveNumber);
  trace->add_option("--pos-window", pos_window, "Positive frame length")->required();
  trace->add_option("--neg-window", neg_window, "Negative frame length")->required();
  trace->add_option("--config", config_path, "Fuzzy configuration file");
  trace->add_option("--samples", samples, "Output discretization override");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& help) {
    return app.exit(help);
  } catch (const CLI::ParseError& error) {
    std::cerr << "error: " << error.what() << '\n';
    return kExitUsage;
  }

  static const std::map<std::string, AdversaryKind> kAdversaries = {
      {"none", AdversaryKind::none},
      {"eavesdrop", AdversaryKind::eavesdrop},
      {"replay", AdversaryKind::replay},
      {"tamper", AdversaryKind::tamper},
  };

  DataDir dir{data_dir};
  try {
    if (reg->parsed()) {
      return cmd_register(dir, uid, password);
    }
    if (verify->parsed()) {
      return cmd_verify(dir, uid, password);
    }
    if (log_action->parsed()) {
      return cmd_log_action(dir, uid, sid, kind, time);
    }
    if (trust->parsed()) {
      return cmd_trust(dir, uid, now, pos_boundary, neg_boundary, config_path, samples);
    }
    if (fuzzy_eval->parsed()) {
      return cmd_fuzzy_eval(pos, neg, config_path, samples);
    }
    if (simulate->parsed()) {
      return cmd_simulate(devices, kAdversaries.at(adversary_name), seed, adversary_seed,
                          transcript_path);
    }
    if (trace->parsed()) {
      return cmd_trace(dir, uid, from, to, step, pos_window, neg_window, config_path, samples);
    }
  } catch (const Error& error) {
    std::cerr << "error: " << error.what() << '\n';
    return exit_code_for(error.code());
  } catch (const std::exception& error) {
    std::cerr << "error: " << error.what() << '\n';
    return kExitDataError;
  }
  return kExitUsage;
}
