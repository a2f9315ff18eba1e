#include "ftn/harness.hpp"

#include <chrono>
#include <cmath>
#include <iostream>
#include <limits>
#include <ostream>
#include <set>

#include <nlohmann/json.hpp>

#include "ftn/link.hpp"
#include "ftn/rng.hpp"

namespace ftn {

namespace {
constexpr double kSigma2 = 1.0;
constexpr int kBlocksPerBatch = 50; // one fading draw per batch
constexpr int kRmseBlocks = 1000;
} // namespace

const char* to_string(Mode mode) {
  switch (mode) {
  case Mode::ber_cp:
    return "ber_cp";
  case Mode::ber_overlap:
    return "ber_overlap";
  case Mode::rmse_position:
    return "rmse_position";
  }
  return "?";
}

Mode mode_from_string(const std::string& name) {
  if (name == "ber_cp")
    return Mode::ber_cp;
  if (name == "ber_overlap")
    return Mode::ber_overlap;
  if (name == "rmse_position")
    return Mode::rmse_position;
  throw ConfigError("unknown mode: " + name);
}

void ExperimentConfig::validate() const {
  if (n < 1)
    throw ConfigError("n: must be >= 1");
  if (nu < 1)
    throw ConfigError("nu: must be >= 1");
  if (!(rolloff > 0.0) || !(rolloff <= 1.0))
    throw ConfigError("rolloff: must be in (0, 1]");
  if (gamma.empty())
    throw ConfigError("gamma: at least one value required");
  for (double g : gamma)
    if (!(g > 0.0) || g > 1.0)
      throw ConfigError("gamma: values must be in (0, 1]");
  if (mode == Mode::rmse_position) {
    if (gamma.size() != 1)
      throw ConfigError("gamma: expected a single value in rmse_position mode");
    if (channel.type != ChannelSpec::Type::awgn)
      throw ConfigError("channel: rmse_position runs on the flat channel only");
    return;
  }
  if (ebn0_db.empty())
    throw ConfigError("ebn0_db: at least one value required");
  if (min_bits < 1)
    throw ConfigError("min_bits: must be >= 1");
  if (max_errors < 1)
    throw ConfigError("max_errors: must be >= 1");
  if (mode == Mode::ber_overlap) {
    if (p < 0 || q < 0 || p + q >= n)
      throw ConfigError("p/q: need p, q >= 0 and p + q < n");
  } else {
    if (cp_len < 0 || cp_len > n)
      throw ConfigError("cp_len: must be in [0, n]");
  }
  if (channel.type == ChannelSpec::Type::rayleigh) {
    if (channel.num_taps < 2)
      throw ConfigError("channel.num_taps: must be >= 2");
    if (!(channel.span_symbols > 0.0))
      throw ConfigError("channel.span_symbols: must be positive");
    if (channel.seed_count < 1)
      throw ConfigError("channel.seed_count: must be >= 1");
  }
}

namespace {

std::vector<double> number_or_array(const nlohmann::json& v,
                                    const std::string& key) {
  std::vector<double> out;
  if (v.is_number()) {
    out.push_back(v.get<double>());
  } else if (v.is_array()) {
    for (const auto& e : v) {
      if (!e.is_number())
        throw ConfigError(key + ": expected numbers");
      out.push_back(e.get<double>());
    }
  } else {
    throw ConfigError(key + ": expected a number or an array of numbers");
  }
  return out;
}

ChannelSpec channel_spec_from_json(const nlohmann::json& v) {
  ChannelSpec ch;
  if (v.is_string()) {
    const std::string s = v.get<std::string>();
    if (s == "awgn")
      return ch;
    throw ConfigError("channel: unknown channel '" + s + "'");
  }
  if (!v.is_object())
    throw ConfigError("channel: expected \"awgn\" or an object");
  static const std::set<std::string> known{"type", "num_taps", "span_symbols",
                                           "seed_count"};
  for (const auto& item : v.items())
    if (!known.count(item.key()))
      throw ConfigError("channel: unknown key '" + item.key() + "'");
  const std::string type = v.at("type").get<std::string>();
  if (type == "awgn") {
    if (v.size() > 1)
      throw ConfigError("channel: awgn takes no parameters");
    return ch;
  }
  if (type != "rayleigh")
    throw ConfigError("channel: unknown channel '" + type + "'");
  ch.type = ChannelSpec::Type::rayleigh;
  if (v.contains("num_taps"))
    ch.num_taps = v.at("num_taps").get<int>();
  if (v.contains("span_symbols"))
    ch.span_symbols = v.at("span_symbols").get<double>();
  if (v.contains("seed_count"))
    ch.seed_count = v.at("seed_count").get<int>();
  return ch;
}

} // namespace

ExperimentConfig config_from_json(const std::string& text) {
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(text);
  } catch (const nlohmann::json::parse_error& e) {
    throw ConfigError(std::string("config is not valid JSON: ") + e.what());
  }
  if (!j.is_object())
    throw ConfigError("config root must be a JSON object");

  static const std::set<std::string> known{
      "mode",   "gamma",  "ebn0_db",     "n",        "nu",
      "rolloff", "p",      "q",           "cp_len",   "channel",
      "weight_kind", "min_bits", "max_errors", "rng_seed"};
  for (const auto& item : j.items())
    if (!known.count(item.key()))
      throw ConfigError("unknown config key: " + item.key());

  ExperimentConfig cfg;
  if (!j.contains("mode"))
    throw ConfigError("mode: required");
  cfg.mode = mode_from_string(j.at("mode").get<std::string>());

  // Mode-specific keys must not appear where they do not apply.
  const bool overlap = cfg.mode == Mode::ber_overlap;
  const bool cp = cfg.mode == Mode::ber_cp;
  const bool rmse = cfg.mode == Mode::rmse_position;
  if (j.contains("cp_len") && !cp)
    throw ConfigError("cp_len: only applies to ber_cp mode");
  if ((j.contains("p") || j.contains("q")) && !(overlap || rmse))
    throw ConfigError("p/q: only apply to ber_overlap and rmse_position");
  if (rmse) {
    for (const char* key : {"ebn0_db", "min_bits", "max_errors"})
      if (j.contains(key))
        throw ConfigError(std::string(key) +
                          ": does not apply to rmse_position (n0 is 0)");
  }

  if (j.contains("gamma"))
    cfg.gamma = number_or_array(j.at("gamma"), "gamma");
  if (j.contains("ebn0_db"))
    cfg.ebn0_db = number_or_array(j.at("ebn0_db"), "ebn0_db");
  if (j.contains("n"))
    cfg.n = j.at("n").get<int>();
  if (j.contains("nu"))
    cfg.nu = j.at("nu").get<int>();
  if (j.contains("rolloff"))
    cfg.rolloff = j.at("rolloff").get<double>();
  if (j.contains("p"))
    cfg.p = j.at("p").get<int>();
  if (j.contains("q"))
    cfg.q = j.at("q").get<int>();
  if (rmse && !j.contains("p"))
    cfg.p = 0;
  if (rmse && !j.contains("q"))
    cfg.q = 0;
  if (j.contains("cp_len"))
    cfg.cp_len = j.at("cp_len").get<int>();
  if (j.contains("channel"))
    cfg.channel = channel_spec_from_json(j.at("channel"));
  if (j.contains("weight_kind"))
    cfg.weight_kind =
        weight_kind_from_string(j.at("weight_kind").get<std::string>());
  if (j.contains("min_bits"))
    cfg.min_bits = j.at("min_bits").get<long>();
  if (j.contains("max_errors"))
    cfg.max_errors = j.at("max_errors").get<long>();
  if (j.contains("rng_seed"))
    cfg.rng_seed = j.at("rng_seed").get<uint64_t>();

  cfg.validate();
  return cfg;
}

std::string config_to_json(const ExperimentConfig& cfg) {
  nlohmann::json j;
  j["mode"] = to_string(cfg.mode);
  j["gamma"] = cfg.gamma;
  j["n"] = cfg.n;
  j["nu"] = cfg.nu;
  j["rolloff"] = cfg.rolloff;
  j["weight_kind"] = to_string(cfg.weight_kind);
  j["rng_seed"] = cfg.rng_seed;
  if (cfg.channel.type == ChannelSpec::Type::awgn) {
    j["channel"] = "awgn";
  } else {
    j["channel"] = {{"type", "rayleigh"},
                    {"num_taps", cfg.channel.num_taps},
                    {"span_symbols", cfg.channel.span_symbols},
                    {"seed_count", cfg.channel.seed_count}};
  }
  if (cfg.mode != Mode::rmse_position) {
    j["ebn0_db"] = cfg.ebn0_db;
    j["min_bits"] = cfg.min_bits;
    j["max_errors"] = cfg.max_errors;
  }
  if (cfg.mode == Mode::ber_overlap || cfg.mode == Mode::rmse_position) {
    j["p"] = cfg.p;
    j["q"] = cfg.q;
  }
  if (cfg.mode == Mode::ber_cp)
    j["cp_len"] = cfg.cp_len;
  return j.dump(2);
}

double ebn0_to_n0(double ebn0_db, double sigma2) {
  if (!(sigma2 > 0.0))
    throw std::invalid_argument("ebn0_to_n0: sigma2 must be positive");
  return sigma2 / std::pow(10.0, ebn0_db / 10.0);
}

double spectral_efficiency(double gamma, double beta, int n,
                           std::optional<int> cp_len) {
  double rate = 1.0 / (gamma * (1.0 + beta));
  if (cp_len)
    rate *= static_cast<double>(n) / (n + *cp_len);
  return rate;
}

double bpsk_awgn_ber(double ebn0_db) {
  const double ebn0 = std::pow(10.0, ebn0_db / 10.0);
  return 0.5 * std::erfc(std::sqrt(ebn0));
}

namespace {

struct PointSetup {
  PulseSpec spec;
  double gamma;
  double n0;
  NoiseModel model;
  rvec psd; // noise PSD at this n0 (independent of the channel draw)
};

WeightSet build_weight(const ExperimentConfig& cfg, const PointSetup& pt,
                       const CirculantSpectrum& spectrum) {
  switch (cfg.weight_kind) {
  case WeightKind::white:
    return weight_white(spectrum, pt.n0, kSigma2);
  case WeightKind::colored_diag:
    return weight_colored_diag(spectrum, pt.psd, kSigma2);
  case WeightKind::colored_full:
    return weight_colored_full(spectrum, pt.spec, pt.gamma, pt.n0, kSigma2,
                               cfg.n);
  }
  throw std::logic_error("unreachable weight kind");
}

struct BatchCounts {
  long bits = 0;
  long errors = 0;
};

BatchCounts overlap_batch(const ExperimentConfig& cfg, const PointSetup& pt,
                          const DiscreteChannel& dch, const WeightSet& w,
                          uint64_t bits_seed, uint64_t noise_seed) {
  const BlockConfig bc{cfg.n, cfg.p, cfg.q};
  const int m = bc.m();
  const size_t nbits = static_cast<size_t>(kBlocksPerBatch) * m;
  const auto bits = random_bits(nbits, bits_seed);
  const SymbolStream sym = modulate_bpsk(bits, kSigma2);

  const long k0 = dch.n_max - cfg.p;
  const size_t rlen =
      static_cast<size_t>(kBlocksPerBatch - 1) * m + cfg.n;
  const cvec r =
      synthesize_received(sym, dch, pt.model, noise_seed, k0, rlen);
  const Equalized eq = overlap_fde(r, k0, bc, w, dch);
  const auto decided = detect_bpsk(eq.estimates);

  BatchCounts c;
  c.bits = static_cast<long>(nbits);
  for (size_t i = 0; i < nbits; ++i)
    c.errors += decided[i] != bits[i];
  return c;
}

BatchCounts cp_batch(const ExperimentConfig& cfg, const PointSetup& pt,
                     const DiscreteChannel& dch, const WeightSet& w,
                     uint64_t bits_seed, uint64_t noise_seed) {
  const size_t nbits = static_cast<size_t>(kBlocksPerBatch) * cfg.n;
  const auto bits = random_bits(nbits, bits_seed);
  const SymbolStream sym = modulate_bpsk(bits, kSigma2);
  const cvec est = cp_fde_chain(sym, dch, CpConfig{cfg.n, cfg.cp_len}, w,
                                pt.model, noise_seed);
  const auto decided = detect_bpsk(est);

  BatchCounts c;
  c.bits = static_cast<long>(nbits);
  for (size_t i = 0; i < nbits; ++i)
    c.errors += decided[i] != bits[i];
  return c;
}

ResultRow run_point(const ExperimentConfig& cfg, size_t gamma_idx,
                    size_t point_idx) {
  const double gamma = cfg.gamma[gamma_idx];
  const double db = cfg.ebn0_db[point_idx];

  PointSetup pt;
  pt.spec = PulseSpec{cfg.rolloff, 1.0, cfg.nu};
  pt.gamma = gamma;
  pt.n0 = ebn0_to_n0(db, kSigma2);
  pt.model = NoiseModel::make(pt.spec, gamma, pt.n0);
  if (cfg.weight_kind == WeightKind::colored_diag)
    pt.psd = noise_psd(pt.spec, gamma, pt.n0, cfg.n);

  const bool fading = cfg.channel.type == ChannelSpec::Type::rayleigh;
  const uint64_t point_key = gamma_idx * 1048576 + point_idx;

  // Fixed channel and weight for AWGN; rebuilt per draw when fading.
  DiscreteChannel dch;
  WeightSet w;
  if (!fading) {
    dch = discretize(pt.spec, identity_channel(), gamma);
    w = build_weight(cfg, pt, build_spectrum(dch, cfg.n));
  }

  long bits = 0;
  long errors = 0;
  long draws = 0;
  uint64_t batch = 0;
  const auto t0 = std::chrono::steady_clock::now();

  auto need_more = [&]() {
    if (bits < cfg.min_bits)
      return true;
    if (fading && draws < cfg.channel.seed_count)
      return true;
    return errors < cfg.max_errors && bits < 100 * cfg.min_bits;
  };

  while (need_more()) {
    if (fading) {
      const double t = gamma * pt.spec.t0;
      const TapDelayLine ch =
          rayleigh_channel(cfg.channel.num_taps, cfg.channel.span_symbols * t,
                           derive_seed(cfg.rng_seed, point_key, batch, 3));
      dch = discretize(pt.spec, ch, gamma);
      w = build_weight(cfg, pt, build_spectrum(dch, cfg.n));
      ++draws;
    }
    const uint64_t bits_seed = derive_seed(cfg.rng_seed, point_key, batch, 1);
    const uint64_t noise_seed = derive_seed(cfg.rng_seed, point_key, batch, 2);
    const BatchCounts c =
        cfg.mode == Mode::ber_overlap
            ? overlap_batch(cfg, pt, dch, w, bits_seed, noise_seed)
            : cp_batch(cfg, pt, dch, w, bits_seed, noise_seed);
    bits += c.bits;
    errors += c.errors;
    ++batch;
  }

  const auto t1 = std::chrono::steady_clock::now();
  ResultRow row;
  row.mode = cfg.mode;
  row.gamma = gamma;
  row.rate_bps_hz = spectral_efficiency(
      gamma, cfg.rolloff, cfg.n,
      cfg.mode == Mode::ber_cp ? std::optional<int>(cfg.cp_len) : std::nullopt);
  row.ebn0_db = db;
  row.bits = bits;
  row.errors = errors;
  row.ber = static_cast<double>(errors) / static_cast<double>(bits);
  row.seconds = std::chrono::duration<double>(t1 - t0).count();
  return row;
}

} // namespace

std::vector<ResultRow> run_ber(const ExperimentConfig& cfg) {
  cfg.validate();
  if (cfg.mode == Mode::rmse_position)
    throw ConfigError("run_ber: mode must be ber_cp or ber_overlap");

  std::vector<ResultRow> rows;
  for (size_t gi = 0; gi < cfg.gamma.size(); ++gi) {
    for (size_t pi = 0; pi < cfg.ebn0_db.size(); ++pi) {
      try {
        rows.push_back(run_point(cfg, gi, pi));
      } catch (const std::exception& e) {
        std::cerr << "point gamma=" << cfg.gamma[gi]
                  << " ebn0_db=" << cfg.ebn0_db[pi] << " failed: " << e.what()
                  << "\n";
        ResultRow row{};
        row.mode = cfg.mode;
        row.gamma = cfg.gamma[gi];
        row.rate_bps_hz = spectral_efficiency(
            cfg.gamma[gi], cfg.rolloff, cfg.n,
            cfg.mode == Mode::ber_cp ? std::optional<int>(cfg.cp_len)
                                     : std::nullopt);
        row.ebn0_db = cfg.ebn0_db[pi];
        row.ber = std::numeric_limits<double>::quiet_NaN();
        rows.push_back(row);
      }
    }
  }
  return rows;
}

rvec run_rmse(const ExperimentConfig& cfg) {
  cfg.validate();
  if (cfg.mode != Mode::rmse_position)
    throw ConfigError("run_rmse: mode must be rmse_position");

  const double gamma = cfg.gamma.front();
  const PulseSpec spec{cfg.rolloff, 1.0, cfg.nu};
  const DiscreteChannel dch = discretize(spec, identity_channel(), gamma);
  const CirculantSpectrum spectrum = build_spectrum(dch, cfg.n);
  const NoiseModel quiet = NoiseModel::make(spec, gamma, 0.0);

  WeightSet w;
  switch (cfg.weight_kind) {
  case WeightKind::white:
    w = weight_white(spectrum, 0.0, kSigma2);
    break;
  case WeightKind::colored_diag: {
    const rvec zeros(cfg.n, 0.0);
    w = weight_colored_diag(spectrum, zeros, kSigma2);
    break;
  }
  case WeightKind::colored_full:
    w = weight_colored_full(spectrum, spec, gamma, 0.0, kSigma2, cfg.n);
    break;
  }

  const BlockConfig bc{cfg.n, cfg.p, cfg.q};
  const int m = bc.m();
  rvec err2(m, 0.0);
  for (int b = 0; b < kRmseBlocks; ++b) {
    const auto bits = random_bits(cfg.n + dch.span() - 1,
                                  derive_seed(cfg.rng_seed, 0, b, 1));
    const SymbolStream sym = modulate_bpsk(bits, kSigma2);
    const cvec r = synthesize_interior(sym, dch, quiet, 0);
    const Equalized eq = overlap_fde(r, dch.n_max, bc, w, dch);
    for (int i = 0; i < m; ++i)
      err2[i] += std::norm(eq.estimates[i] -
                           sym.symbols[eq.first_symbol + i]);
  }
  rvec rmse(m);
  for (int i = 0; i < m; ++i)
    rmse[i] = std::sqrt(err2[i] / kRmseBlocks);
  return rmse;
}

void write_ber_csv(const std::vector<ResultRow>& rows, std::ostream& os) {
  os.precision(10);
  os << "mode,gamma,rate_bps_hz,ebn0_db,bits,errors,ber,seconds\n";
  for (const auto& r : rows) {
    os << to_string(r.mode) << ',' << r.gamma << ',' << r.rate_bps_hz << ','
       << r.ebn0_db << ',' << r.bits << ',' << r.errors << ',' << r.ber << ','
       << r.seconds << '\n';
  }
}

void write_rmse_csv(const rvec& rmse, std::ostream& os) {
  os.precision(10);
  os << "position,rmse\n";
  for (size_t i = 0; i < rmse.size(); ++i)
    os << i << ',' << rmse[i] << '\n';
}

} // namespace ftn
