#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "ftn/equalizer.hpp"
#include "ftn/types.hpp"

namespace ftn {

/// Configuration problems (bad keys, bad values, mode mismatches).
/// Distinct from numerical failures so the CLI can map exit codes.
struct ConfigError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

enum class Mode { ber_cp, ber_overlap, rmse_position };

const char* to_string(Mode mode);
Mode mode_from_string(const std::string& name);

struct ChannelSpec {
  enum class Type { awgn, rayleigh };
  Type type = Type::awgn;
  int num_taps = 10;          // rayleigh only
  double span_symbols = 16.0; // rayleigh delay span, in units of T
  int seed_count = 200;       // rayleigh: minimum independent draws per point
};

struct ExperimentConfig {
  Mode mode = Mode::ber_overlap;
  std::vector<double> gamma = {1.0}; // scalar or list in JSON
  std::vector<double> ebn0_db;
  int n = 512;
  int nu = 10;
  double rolloff = 0.5;
  int p = 30;
  int q = 30;
  int cp_len = 20;
  ChannelSpec channel;
  WeightKind weight_kind = WeightKind::colored_diag;
  long min_bits = 200000;
  long max_errors = 200;
  uint64_t rng_seed = 1;

  void validate() const;
};

/// Strict parse: unknown keys and mode-inapplicable keys are rejected.
ExperimentConfig config_from_json(const std::string& text);
std::string config_to_json(const ExperimentConfig& cfg);

struct ResultRow {
  Mode mode;
  double gamma;
  double rate_bps_hz;
  double ebn0_db;
  long bits;
  long errors;
  double ber;
  double seconds;
};

/// E_b = sigma2 for unit-energy-pulse BPSK, so n0 = sigma2 / 10^(dB/10).
double ebn0_to_n0(double ebn0_db, double sigma2);

/// BPSK rate 1/(gamma (1+beta)) bps/Hz, times n/(n+cp) when a cyclic
/// prefix is inserted.
double spectral_efficiency(double gamma, double beta, int n,
                           std::optional<int> cp_len);

/// Closed-form BPSK-over-AWGN reference Q(sqrt(2 Eb/N0)).
double bpsk_awgn_ber(double ebn0_db);

/// Monte Carlo BER sweep over every (gamma, ebn0) pair. Each point
/// simulates until bits >= min_bits and (errors >= max_errors or
/// bits >= 100*min_bits); fading points additionally cover at least
/// seed_count independent channel draws. Per-point failures surface on
/// stderr as a NaN row without aborting the sweep.
std::vector<ResultRow> run_ber(const ExperimentConfig& cfg);

/// Per-position RMSE of the untrimmed FDE output over 1000 blocks at
/// n0 = 0 on a flat channel (single gamma).
rvec run_rmse(const ExperimentConfig& cfg);

void write_ber_csv(const std::vector<ResultRow>& rows, std::ostream& os);
void write_rmse_csv(const rvec& rmse, std::ostream& os);

} // namespace ftn
