#include <pybind11/complex.h>
#include <pybind11/numpy.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <sstream>

#include "ftn/channel.hpp"
#include "ftn/equalizer.hpp"
#include "ftn/harness.hpp"
#include "ftn/link.hpp"
#include "ftn/oracles.hpp"
#include "ftn/pulse.hpp"

namespace py = pybind11;
using namespace ftn;

namespace {

py::array_t<cplx> to_array(const cvec& v) {
  py::array_t<cplx> out(v.size());
  std::copy(v.begin(), v.end(), out.mutable_data());
  return out;
}

py::array_t<double> to_array(const rvec& v) {
  py::array_t<double> out(v.size());
  std::copy(v.begin(), v.end(), out.mutable_data());
  return out;
}

py::dict row_to_dict(const ResultRow& r) {
  py::dict d;
  d["mode"] = std::string(to_string(r.mode));
  d["gamma"] = r.gamma;
  d["rate_bps_hz"] = r.rate_bps_hz;
  d["ebn0_db"] = r.ebn0_db;
  d["bits"] = r.bits;
  d["errors"] = r.errors;
  d["ber"] = r.ber;
  d["seconds"] = r.seconds;
  return d;
}

} // namespace

PYBIND11_MODULE(ftnsim, m) {
  m.doc() = "Faster-than-Nyquist link simulation with overlap FDE";

  py::class_<PulseSpec>(m, "PulseSpec")
      .def(py::init<double, double, int>(), py::arg("rolloff") = 0.5,
           py::arg("t0") = 1.0, py::arg("nu") = 10)
      .def_readwrite("rolloff", &PulseSpec::rolloff)
      .def_readwrite("t0", &PulseSpec::t0)
      .def_readwrite("nu", &PulseSpec::nu);

  m.def("rrc_impulse", &rrc_impulse, py::arg("spec"), py::arg("t"));
  m.def("rrc_impulse",
        [](const PulseSpec& spec, py::array_t<double> t) {
          py::array_t<double> out(t.size());
          const auto in = t.unchecked<1>();
          auto res = out.mutable_unchecked<1>();
          for (py::ssize_t i = 0; i < in.shape(0); ++i)
            res(i) = rrc_impulse(spec, in(i));
          return out;
        },
        py::arg("spec"), py::arg("t"));
  m.def("nyquist_autocorr", &nyquist_autocorr, py::arg("spec"), py::arg("t"));
  m.def("nyquist_autocorr",
        [](const PulseSpec& spec, py::array_t<double> t) {
          py::array_t<double> out(t.size());
          const auto in = t.unchecked<1>();
          auto res = out.mutable_unchecked<1>();
          for (py::ssize_t i = 0; i < in.shape(0); ++i)
            res(i) = nyquist_autocorr(spec, in(i));
          return out;
        },
        py::arg("spec"), py::arg("t"));

  py::class_<TapDelayLine>(m, "TapDelayLine")
      .def_readonly("delays", &TapDelayLine::delays)
      .def_readonly("gains", &TapDelayLine::gains)
      .def_property_readonly("t_min", &TapDelayLine::t_min)
      .def_property_readonly("t_max", &TapDelayLine::t_max);
  m.def("identity_channel", &identity_channel);
  m.def("rayleigh_channel", &rayleigh_channel, py::arg("num_taps"),
        py::arg("span"), py::arg("rng_seed"));
  m.def("channel_to_json", &channel_to_json);
  m.def("channel_from_json", &channel_from_json);

  py::class_<DiscreteChannel>(m, "DiscreteChannel")
      .def_property_readonly(
          "taps", [](const DiscreteChannel& d) { return to_array(d.taps); })
      .def_readonly("n_min", &DiscreteChannel::n_min)
      .def_readonly("n_max", &DiscreteChannel::n_max)
      .def_readonly("t", &DiscreteChannel::t)
      .def("span", &DiscreteChannel::span);
  m.def("combined_response", &combined_response);
  m.def("discretize", &discretize, py::arg("spec"), py::arg("channel"),
        py::arg("gamma"));

  py::class_<SymbolStream>(m, "SymbolStream")
      .def(py::init([](const cvec& symbols, double sigma2) {
             return SymbolStream{symbols, sigma2};
           }),
           py::arg("symbols"), py::arg("sigma2") = 1.0)
      .def_property_readonly(
          "symbols", [](const SymbolStream& s) { return to_array(s.symbols); })
      .def_readonly("sigma2", &SymbolStream::sigma2);
  m.def("modulate_bpsk", &modulate_bpsk, py::arg("bits"),
        py::arg("sigma2") = 1.0);
  m.def("random_bits", &random_bits);

  py::class_<NoiseModel>(m, "NoiseModel")
      .def_static("make", &NoiseModel::make, py::arg("spec"), py::arg("gamma"),
                  py::arg("n0"))
      .def_readonly("n0", &NoiseModel::n0)
      .def_readonly("cov_lags", &NoiseModel::cov_lags);
  m.def("colored_noise",
        [](const NoiseModel& model, size_t length, uint64_t seed) {
          return to_array(colored_noise(model, length, seed));
        });
  m.def("colored_noise_stream",
        [](const NoiseModel& model, size_t length, uint64_t seed) {
          return to_array(colored_noise_stream(model, length, seed));
        });
  m.def("synthesize_received",
        [](const SymbolStream& sym, const DiscreteChannel& dch,
           const NoiseModel& model, uint64_t seed, long first_out,
           size_t out_len) {
          return to_array(
              synthesize_received(sym, dch, model, seed, first_out, out_len));
        });
  m.def("synthesize_full", [](const SymbolStream& sym,
                              const DiscreteChannel& dch,
                              const NoiseModel& model, uint64_t seed) {
    return to_array(synthesize_full(sym, dch, model, seed));
  });
  m.def("synthesize_interior", [](const SymbolStream& sym,
                                  const DiscreteChannel& dch,
                                  const NoiseModel& model, uint64_t seed) {
    return to_array(synthesize_interior(sym, dch, model, seed));
  });
  m.def("waveform_oracle",
        [](const SymbolStream& sym, const PulseSpec& spec,
           const TapDelayLine& ch, int num, int den, double n0, uint64_t seed,
           long first_out, size_t out_len, int oversample) {
          return to_array(waveform_oracle(sym, spec, ch, GammaRatio{num, den},
                                          n0, seed, first_out, out_len,
                                          oversample));
        },
        py::arg("sym"), py::arg("spec"), py::arg("channel"), py::arg("num"),
        py::arg("den"), py::arg("n0"), py::arg("rng_seed"),
        py::arg("first_out"), py::arg("out_len"), py::arg("oversample") = 16);

  py::class_<CirculantSpectrum>(m, "CirculantSpectrum")
      .def_property_readonly("lambda_", [](const CirculantSpectrum& s) {
        return to_array(s.lambda);
      });
  m.def("build_spectrum", &build_spectrum, py::arg("dch"), py::arg("n"));
  m.def("noise_psd", [](const PulseSpec& spec, double gamma, double n0,
                        int n) { return to_array(noise_psd(spec, gamma, n0, n)); });

  py::class_<WeightSet>(m, "WeightSet")
      .def_property_readonly(
          "kind", [](const WeightSet& w) { return std::string(to_string(w.kind)); })
      .def_property_readonly("diag",
                             [](const WeightSet& w) { return to_array(w.diag); })
      .def_property_readonly("psd",
                             [](const WeightSet& w) { return to_array(w.psd); })
      .def_readonly("regularized", &WeightSet::regularized);
  m.def("weight_white", &weight_white);
  m.def("weight_colored_diag",
        [](const CirculantSpectrum& s, const rvec& psd, double sigma2) {
          return weight_colored_diag(s, psd, sigma2);
        });
  m.def("weight_colored_full", &weight_colored_full);

  m.def("overlap_fde",
        [](const cvec& r, long r_first, int n, int p, int q,
           const WeightSet& w, const DiscreteChannel& dch) {
          const Equalized eq = overlap_fde(r, r_first, BlockConfig{n, p, q}, w, dch);
          return py::make_tuple(to_array(eq.estimates), eq.first_symbol);
        },
        py::arg("r"), py::arg("r_first"), py::arg("n"), py::arg("p"),
        py::arg("q"), py::arg("weights"), py::arg("dch"));
  m.def("cp_fde_chain",
        [](const SymbolStream& sym, const DiscreteChannel& dch, int n,
           int cp_len, const WeightSet& w, const NoiseModel& model,
           uint64_t seed) {
          return to_array(cp_fde_chain(sym, dch, CpConfig{n, cp_len}, w, model, seed));
        },
        py::arg("sym"), py::arg("dch"), py::arg("n"), py::arg("cp_len"),
        py::arg("weights"), py::arg("model"), py::arg("rng_seed"));
  m.def("detect_bpsk", [](const cvec& est) { return detect_bpsk(est); });

  m.def("ebn0_to_n0", &ebn0_to_n0);
  m.def("spectral_efficiency",
        [](double gamma, double beta, int n, py::object cp_len) {
          std::optional<int> cp;
          if (!cp_len.is_none())
            cp = cp_len.cast<int>();
          return spectral_efficiency(gamma, beta, n, cp);
        },
        py::arg("gamma"), py::arg("beta"), py::arg("n") = 512,
        py::arg("cp_len") = py::none());
  m.def("bpsk_awgn_ber", &bpsk_awgn_ber);

  m.def("run_ber", [](const std::string& config_json) {
    const auto rows = run_ber(config_from_json(config_json));
    py::list out;
    for (const auto& r : rows)
      out.append(row_to_dict(r));
    return out;
  });
  m.def("run_rmse", [](const std::string& config_json) {
    return to_array(run_rmse(config_from_json(config_json)));
  });

  m.def("selfcheck", []() {
    py::list out;
    for (const auto& r : oracle::run_selfcheck()) {
      py::dict d;
      d["name"] = r.name;
      d["error"] = r.error;
      d["tolerance"] = r.tolerance;
      d["pass"] = r.pass();
      out.append(d);
    }
    return out;
  });
}
