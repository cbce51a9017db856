// Command-line surface: channel twirl analysis, optimal discrimination,
// the measurement-coding protocol, experiment curve sweeps, and a design
// self-check. Deterministic for a fixed config (including seed).

#include <cstdio>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>

#include <CLI11.hpp>
#include <json.hpp>

#include "chancode/json_io.hpp"
#include "chancode/sweep.hpp"

using namespace chancode;
using nlohmann::json;

namespace {

// Exit codes shared by all subcommands.
constexpr int kExitOk = 0;
constexpr int kExitConfig = 2;
constexpr int kExitSolver = 3;
constexpr int kExitPrecondition = 4;

std::string format_double(double v) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.12g", v);
  return buf;
}

void write_output(const std::string& path, const std::string& text) {
  if (path.empty()) {
    std::cout << text;
    return;
  }
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw ConfigError("cannot open output file: " + path);
  out << text;
}

json parse_json_text(const std::string& text, const std::string& what) {
  json parsed = json::parse(text, nullptr, false);
  if (parsed.is_discarded()) throw ConfigError("malformed JSON for " + what);
  return parsed;
}

// Accepts inline JSON or a path to a JSON file.
json json_arg(const std::string& arg, const std::string& what) {
  if (!arg.empty() && (arg.front() == '{' || arg.front() == '[')) {
    return parse_json_text(arg, what);
  }
  std::ifstream in(arg);
  if (!in) throw ConfigError("cannot read " + what + " file: " + arg);
  std::stringstream buffer;
  buffer << in.rdbuf();
  return parse_json_text(buffer.str(), what);
}

Ensemble ensemble_arg(const std::string& arg) {
  if (arg == "SZ") return builtin(BuiltinEnsemble::SZ);
  if (arg == "SBB84") return builtin(BuiltinEnsemble::SBB84);
  if (arg == "TRINE_MOD") return builtin(BuiltinEnsemble::TRINE_MOD);
  return ensemble_from_json(json_arg(arg, "ensemble"));
}

json transfer_to_json(const PauliTransfer& pt) {
  json rows = json::array();
  for (const auto& row : pt.t) rows.push_back(row);
  return rows;
}

// Options shared across subcommands, loadable from a JSON config file.
struct CliConfig {
  std::string config_path;
  std::string ensemble;
  std::string channel;
  std::string out;
  std::string transcript;
  std::string format = "csv";
  std::string panel = "a";
  std::vector<double> sweep;
  double pf = -1.0;
  double noise_eta = -1.0;
  std::uint64_t shots = 8000;
  std::uint64_t seed = 1;
  std::uint64_t rounds = 0;
};

// Fills flag defaults from --config; explicitly passed flags win.
void merge_config_file(CLI::App& cmd, CliConfig& cfg) {
  if (cfg.config_path.empty()) return;
  const json file = json_arg(cfg.config_path, "config");
  if (!file.is_object()) throw ConfigError("config file must hold a JSON object");
  auto load_string = [&](const char* key, const std::string& flag, std::string& slot) {
    if (file.contains(key) && cmd.count(flag) == 0) slot = file[key].get<std::string>();
  };
  auto load_u64 = [&](const char* key, const std::string& flag, std::uint64_t& slot) {
    if (file.contains(key) && cmd.count(flag) == 0) slot = file[key].get<std::uint64_t>();
  };
  load_string("ensemble", "--ensemble", cfg.ensemble);
  load_string("out", "--out", cfg.out);
  load_string("transcript", "--transcript", cfg.transcript);
  load_string("format", "--format", cfg.format);
  load_string("panel", "--panel", cfg.panel);
  if (file.contains("channel") && cmd.count("--channel") == 0) {
    cfg.channel = file["channel"].is_string() ? file["channel"].get<std::string>()
                                              : file["channel"].dump();
  }
  if (file.contains("sweep") && cmd.count("--sweep") == 0) {
    cfg.sweep = file["sweep"].get<std::vector<double>>();
  }
  if (file.contains("pf") && cmd.count("--pf") == 0) cfg.pf = file["pf"].get<double>();
  if (file.contains("noise_eta") && cmd.count("--noise-eta") == 0) {
    cfg.noise_eta = file["noise_eta"].get<double>();
  }
  load_u64("shots", "--shots", cfg.shots);
  load_u64("seed", "--seed", cfg.seed);
  load_u64("rounds", "--rounds", cfg.rounds);
}

int cmd_twirl(const CliConfig& cfg) {
  if (cfg.channel.empty()) throw ConfigError("twirl needs --channel");
  const KrausChannel n = channel_from_json(json_arg(cfg.channel, "channel"));
  const KrausChannel twirled = twirl_channel(n, tetrahedral_design());
  const DepolarizingFit fit = fit_depolarizing(twirled);
  const json report{{"eta", fit.eta},
                    {"residual", fit.residual},
                    {"pauli_transfer_before", transfer_to_json(pauli_transfer(n))},
                    {"pauli_transfer_after", transfer_to_json(pauli_transfer(twirled))}};
  write_output(cfg.out, report.dump(2) + "\n");
  return kExitOk;
}

int cmd_discriminate(const CliConfig& cfg) {
  if (cfg.ensemble.empty()) throw ConfigError("discriminate needs --ensemble");
  Ensemble e = ensemble_arg(cfg.ensemble);
  if (!cfg.channel.empty()) {
    e = apply_channel_to_ensemble(e, channel_from_json(json_arg(cfg.channel, "channel")));
  }
  const DiscrimResult res = optimal_discrimination(e);
  const json report{{"p_guess", res.p_guess},
                    {"trivial", res.trivial},
                    {"trivial_boundary", res.trivial_boundary},
                    {"certificate_residual", res.certificate_residual},
                    {"povm", povm_to_json(res.povm)}};
  write_output(cfg.out, report.dump(2) + "\n");
  return kExitOk;
}

int cmd_protocol(const CliConfig& cfg) {
  if (cfg.ensemble.empty() || cfg.channel.empty()) {
    throw ConfigError("protocol needs --ensemble and --channel");
  }
  const Ensemble e = ensemble_arg(cfg.ensemble);
  const KrausChannel n = channel_from_json(json_arg(cfg.channel, "channel"));
  const Povm fixed = optimal_discrimination(e).povm;

  json report;
  if (cfg.rounds == 0) {
    report = protocol_report_to_json(run_exact(e, n, tetrahedral_design(), fixed));
    report["mode"] = "exact";
  } else {
    std::string transcript_path = cfg.transcript;
    if (transcript_path.empty()) {
      if (cfg.out.empty()) {
        throw ConfigError("sampled protocol runs need --transcript or --out");
      }
      transcript_path = cfg.out + ".transcript.jsonl";
    }
    const auto [transcript, sampled] =
        run_sampled(e, n, tetrahedral_design(), fixed, cfg.rounds, cfg.seed);
    write_output(transcript_path, transcript_to_jsonl(transcript));
    report = protocol_report_to_json(sampled);
    report["mode"] = "sampled";
    report["rounds"] = cfg.rounds;
    report["seed"] = cfg.seed;
    report["transcript"] = transcript_path;
  }
  report["measurement"] = povm_to_json(fixed);
  write_output(cfg.out, report.dump(2) + "\n");
  return kExitOk;
}

int cmd_figure3(const CliConfig& cfg) {
  SweepPanel panel;
  if (cfg.panel == "a") {
    panel = SweepPanel::OrthogonalPairX;
  } else if (cfg.panel == "b") {
    panel = SweepPanel::Bb84Y;
  } else {
    throw ConfigError("panel must be 'a' or 'b'");
  }
  SweepConfig sweep;
  sweep.shots = cfg.shots;
  sweep.seed = cfg.seed;
  sweep.noise_eta = cfg.noise_eta;
  if (!cfg.sweep.empty()) {
    sweep.p_f_values = cfg.sweep;
  } else if (cfg.pf >= 0.0) {
    sweep.p_f_values = {cfg.pf};
  }
  for (double v : sweep.p_f_values) {
    if (v < 0.0 || v > 1.0) throw ConfigError("sweep values must lie in [0,1]");
  }
  if (sweep.shots < 1) throw ConfigError("shots must be at least 1");
  const std::vector<SweepRow> rows = run_guess_sweep(panel, sweep);

  if (cfg.format == "json") {
    json arr = json::array();
    for (const SweepRow& r : rows) {
      arr.push_back({{"p_f", r.p_f},
                     {"p_N_analytic", r.p_channel_exact},
                     {"p_TN_analytic", r.p_coded_exact},
                     {"p_N_sim", r.p_channel_sampled},
                     {"p_TN_sim", r.p_coded_sampled},
                     {"p_N_noise", r.p_channel_noise},
                     {"p_TN_noise", r.p_coded_noise}});
    }
    write_output(cfg.out, arr.dump(2) + "\n");
    return kExitOk;
  }
  if (cfg.format != "csv") throw ConfigError("format must be 'csv' or 'json'");
  std::ostringstream csv;
  csv << "p_f,p_N_analytic,p_TN_analytic,p_N_sim,p_TN_sim,p_N_noise,p_TN_noise\n";
  for (const SweepRow& r : rows) {
    csv << format_double(r.p_f) << ',' << format_double(r.p_channel_exact) << ','
        << format_double(r.p_coded_exact) << ',' << format_double(r.p_channel_sampled) << ','
        << format_double(r.p_coded_sampled) << ',' << format_double(r.p_channel_noise) << ','
        << format_double(r.p_coded_noise) << '\n';
  }
  write_output(cfg.out, csv.str());
  return kExitOk;
}

int cmd_design_check(const CliConfig& cfg) {
  const bool ok = verify_two_design(tetrahedral_design(), default_probe_channels());
  std::ostringstream out;
  out << "design elements: " << tetrahedral_design().size() << "\n";
  out << "probe channels:  " << default_probe_channels().size() << "\n";
  out << "verdict:         " << (ok ? "PASS" : "FAIL") << "\n";
  write_output(cfg.out, out.str());
  return ok ? kExitOk : 1;
}

void add_common_flags(CLI::App* cmd, CliConfig& cfg) {
  cmd->add_option("--config", cfg.config_path, "JSON config file; flags override its values");
  cmd->add_option("--out", cfg.out, "output file (stdout when omitted)");
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"channel coding of qubit measurements: twirl, discriminate, protocol, sweeps"};
  app.require_subcommand(1);
  CliConfig cfg;

  CLI::App* twirl = app.add_subcommand("twirl", "twirl a channel and fit the depolarizing form");
  twirl->add_option("--channel", cfg.channel, "channel spec (inline JSON or file)");
  add_common_flags(twirl, cfg);

  CLI::App* discriminate =
      app.add_subcommand("discriminate", "certified minimum-error measurement for an ensemble");
  discriminate->add_option("--ensemble", cfg.ensemble, "SZ | SBB84 | TRINE_MOD | JSON/file");
  discriminate->add_option("--channel", cfg.channel, "optional channel applied first");
  add_common_flags(discriminate, cfg);

  CLI::App* protocol =
      app.add_subcommand("protocol", "run the measurement-coding protocol end to end");
  protocol->add_option("--ensemble", cfg.ensemble, "equal-prior ensemble");
  protocol->add_option("--channel", cfg.channel, "channel spec");
  protocol->add_option("--rounds", cfg.rounds, "sampled rounds (0 = exact mixture)");
  protocol->add_option("--seed", cfg.seed, "sampling seed");
  protocol->add_option("--transcript", cfg.transcript, "JSONL transcript path (sampled mode)");
  add_common_flags(protocol, cfg);

  CLI::App* figure3 = app.add_subcommand(
      "figure3", "guessing-probability sweep over the flip strength (CSV/JSON)");
  figure3->add_option("--panel", cfg.panel, "a: orthogonal pair / X flip, b: BB84 / Y flip");
  figure3->add_option("--sweep", cfg.sweep, "comma-separated flip probabilities")->delimiter(',');
  figure3->add_option("--pf", cfg.pf, "single flip probability");
  figure3->add_option("--shots", cfg.shots, "shots per circuit");
  figure3->add_option("--seed", cfg.seed, "sampling seed");
  figure3->add_option("--noise-eta", cfg.noise_eta, "readout-noise fraction for the model columns");
  figure3->add_option("--format", cfg.format, "csv | json");
  add_common_flags(figure3, cfg);

  CLI::App* design_check =
      app.add_subcommand("design-check", "verify the twirl set against the probe channels");
  add_common_flags(design_check, cfg);

  CLI11_PARSE(app, argc, argv);

  try {
    CLI::App* cmd = app.get_subcommands().front();
    merge_config_file(*cmd, cfg);
    if (cmd == twirl) return cmd_twirl(cfg);
    if (cmd == discriminate) return cmd_discriminate(cfg);
    if (cmd == protocol) return cmd_protocol(cfg);
    if (cmd == figure3) return cmd_figure3(cfg);
    if (cmd == design_check) return cmd_design_check(cfg);
    throw ConfigError("unknown subcommand");
  } catch (const ConfigError& err) {
    std::cerr << "config error: " << err.what() << "\n";
    return kExitConfig;
  } catch (const ConvergenceFailureError& err) {
    std::cerr << "solver failure: " << err.what() << "\n";
    return kExitSolver;
  } catch (const Error& err) {
    std::cerr << "error: " << err.what() << "\n";
    return kExitPrecondition;
  } catch (const std::exception& err) {
    std::cerr << "error: " << err.what() << "\n";
    return kExitPrecondition;
  }
}
