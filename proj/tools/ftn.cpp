#include <chrono>
#include <cmath>
#include <ctime>
#include <fstream>
#include <functional>
#include <iostream>
#include <sstream>
#include <string>

#include <CLI11.hpp>
#include <nlohmann/json.hpp>

#include "ftn/channel.hpp"
#include "ftn/equalizer.hpp"
#include "ftn/harness.hpp"
#include "ftn/link.hpp"
#include "ftn/oracles.hpp"
#include "ftn/rng.hpp"

namespace {

struct CommonArgs {
  std::string config_path;
  std::string out_path; // empty -> stdout
  std::vector<std::string> overrides;
  int64_t seed = -1; // -1 -> keep config value
};

std::string slurp(const std::string& path) {
  std::ifstream in(path);
  if (!in)
    throw ftn::ConfigError("cannot open config file: " + path);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

ftn::ExperimentConfig load_config(const CommonArgs& args) {
  if (args.config_path.empty())
    throw ftn::ConfigError("--config is required");
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(slurp(args.config_path));
  } catch (const nlohmann::json::parse_error& e) {
    throw ftn::ConfigError(std::string("config is not valid JSON: ") + e.what());
  }
  if (!j.is_object())
    throw ftn::ConfigError("config root must be a JSON object");

  for (const auto& kv : args.overrides) {
    const auto eq = kv.find('=');
    if (eq == std::string::npos || eq == 0)
      throw ftn::ConfigError("--set expects key=value, got: " + kv);
    const std::string key = kv.substr(0, eq);
    const std::string value = kv.substr(eq + 1);
    nlohmann::json parsed = nlohmann::json::parse(value, nullptr, false);
    j[key] = parsed.is_discarded() ? nlohmann::json(value) : parsed;
  }
  if (args.seed >= 0)
    j["rng_seed"] = static_cast<uint64_t>(args.seed);

  return ftn::config_from_json(j.dump());
}

void echo_run(const ftn::ExperimentConfig& cfg, const std::string& out_path) {
  const std::string effective = ftn::config_to_json(cfg);
  const auto now = std::chrono::system_clock::to_time_t(
      std::chrono::system_clock::now());
  char when[32];
  std::strftime(when, sizeof(when), "%Y-%m-%dT%H:%M:%SZ", std::gmtime(&now));
  uint64_t digest = 0xcbf29ce484222325ULL;
  for (char c : effective)
    digest = (digest ^ static_cast<unsigned char>(c)) * 0x100000001b3ULL;
  char stamp[24];
  std::snprintf(stamp, sizeof(stamp), "%08llx",
                static_cast<unsigned long long>(digest & 0xffffffffULL));
  std::cerr << "# run " << stamp << " " << when << " out="
            << (out_path.empty() ? "<stdout>" : out_path) << "\n";
  std::cerr << effective << "\n";
}

void write_output(const std::string& out_path,
                  const std::function<void(std::ostream&)>& writer) {
  if (out_path.empty()) {
    writer(std::cout);
    return;
  }
  std::ofstream out(out_path);
  if (!out)
    throw ftn::ConfigError("cannot open output file: " + out_path);
  writer(out);
}

int cmd_ber(const CommonArgs& args) {
  ftn::ExperimentConfig cfg = load_config(args);
  if (cfg.mode == ftn::Mode::rmse_position)
    throw ftn::ConfigError(
        "mode: expected ber_cp or ber_overlap for this subcommand");
  echo_run(cfg, args.out_path);
  const auto rows = ftn::run_ber(cfg);
  write_output(args.out_path,
               [&](std::ostream& os) { ftn::write_ber_csv(rows, os); });
  for (const auto& row : rows)
    if (std::isnan(row.ber))
      return 2;
  return 0;
}

int cmd_rmse(const CommonArgs& args) {
  ftn::ExperimentConfig cfg = load_config(args);
  if (cfg.mode != ftn::Mode::rmse_position)
    throw ftn::ConfigError("mode: expected rmse_position for this subcommand");
  echo_run(cfg, args.out_path);
  const ftn::rvec rmse = ftn::run_rmse(cfg);
  write_output(args.out_path,
               [&](std::ostream& os) { ftn::write_rmse_csv(rmse, os); });
  return 0;
}

// Per-bin dump of the spectrum, noise PSD and the two diagonal weights.
int cmd_weights(const CommonArgs& args) {
  ftn::ExperimentConfig cfg = load_config(args);
  echo_run(cfg, args.out_path);

  const ftn::PulseSpec spec{cfg.rolloff, 1.0, cfg.nu};
  const double gamma = cfg.gamma.front();
  const double n0 = cfg.ebn0_db.empty()
                        ? 0.0
                        : ftn::ebn0_to_n0(cfg.ebn0_db.front(), 1.0);

  ftn::TapDelayLine ch;
  if (cfg.channel.type == ftn::ChannelSpec::Type::awgn) {
    ch = ftn::identity_channel();
  } else {
    ch = ftn::rayleigh_channel(cfg.channel.num_taps,
                               cfg.channel.span_symbols * gamma * spec.t0,
                               ftn::derive_seed(cfg.rng_seed, 0, 0, 3));
  }
  const ftn::DiscreteChannel dch = ftn::discretize(spec, ch, gamma);
  const ftn::CirculantSpectrum spectrum = ftn::build_spectrum(dch, cfg.n);
  const ftn::rvec psd = ftn::noise_psd(spec, gamma, n0, cfg.n);
  const ftn::WeightSet white = ftn::weight_white(spectrum, n0, 1.0);
  const ftn::WeightSet colored = ftn::weight_colored_diag(spectrum, psd, 1.0);

  write_output(args.out_path, [&](std::ostream& os) {
    os.precision(12);
    os << "bin,lambda_re,lambda_im,phi_eta,w_white_re,w_white_im,"
          "w_colored_re,w_colored_im\n";
    for (int k = 0; k < cfg.n; ++k) {
      os << k << ',' << spectrum.lambda[k].real() << ','
         << spectrum.lambda[k].imag() << ',' << psd[k] << ','
         << white.diag[k].real() << ',' << white.diag[k].imag() << ','
         << colored.diag[k].real() << ',' << colored.diag[k].imag() << '\n';
    }
  });
  return 0;
}

int cmd_channel(const std::string& out_path, int taps, double span_symbols,
                double gamma, uint64_t seed) {
  const ftn::TapDelayLine ch =
      ftn::rayleigh_channel(taps, span_symbols * gamma, seed);
  write_output(out_path,
               [&](std::ostream& os) { os << ftn::channel_to_json(ch) << "\n"; });
  return 0;
}

int cmd_selfcheck() {
  const auto results = ftn::oracle::run_selfcheck();
  bool all_pass = true;
  for (const auto& r : results) {
    all_pass = all_pass && r.pass();
    std::cout << (r.pass() ? "PASS" : "FAIL") << "  " << r.name
              << "  (err=" << r.error << ", tol=" << r.tolerance << ")\n";
  }
  return all_pass ? 0 : 2;
}

} // namespace

int main(int argc, char** argv) {
  CLI::App app{"Faster-than-Nyquist link simulator with overlap FDE"};
  app.require_subcommand(1);

  CommonArgs args;
  auto add_common = [&](CLI::App* sub) {
    sub->add_option("--config", args.config_path, "JSON experiment config");
    sub->add_option("--out", args.out_path, "output CSV path (default stdout)");
    sub->add_option("--seed", args.seed, "override rng_seed");
    sub->add_option("--set", args.overrides,
                    "override a config key, key=value (repeatable)");
  };

  auto* ber = app.add_subcommand("ber", "BER vs Eb/N0 sweep");
  add_common(ber);
  auto* rmse = app.add_subcommand("rmse", "per-position RMSE of FDE output");
  add_common(rmse);
  auto* weights = app.add_subcommand("weights", "dump per-bin FDE weights");
  add_common(weights);

  auto* channel =
      app.add_subcommand("channel", "generate a Rayleigh channel JSON");
  std::string ch_out;
  int ch_taps = 10;
  double ch_span = 16.0;
  double ch_gamma = 0.8;
  uint64_t ch_seed = 1;
  channel->add_option("--out", ch_out, "output JSON path (default stdout)");
  channel->add_option("--taps", ch_taps, "number of taps");
  channel->add_option("--span-symbols", ch_span, "delay span in units of T");
  channel->add_option("--gamma", ch_gamma, "FTN factor (T = gamma * t0)");
  channel->add_option("--seed", ch_seed, "channel seed");

  auto* selfcheck =
      app.add_subcommand("selfcheck", "run the small-N oracle suite");
  (void)selfcheck;

  CLI11_PARSE(app, argc, argv);

  try {
    if (ber->parsed())
      return cmd_ber(args);
    if (rmse->parsed())
      return cmd_rmse(args);
    if (weights->parsed())
      return cmd_weights(args);
    if (channel->parsed())
      return cmd_channel(ch_out, ch_taps, ch_span, ch_gamma, ch_seed);
    return cmd_selfcheck();
  } catch (const ftn::ConfigError& e) {
    std::cerr << "config error: " << e.what() << "\n";
    return 1;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
}
