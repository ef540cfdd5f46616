// Copyright 2026 The litebeam Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include <pybind11/complex.h>
#include <pybind11/numpy.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <string>

#include "litebeam/eval.hpp"
#include "litebeam/maxsnr.hpp"
#include "litebeam/pairsel.hpp"
#include "litebeam/scenesim.hpp"
#include "litebeam/ssl.hpp"
#include "litebeam/stft.hpp"

namespace py = pybind11;
using namespace litebeam;

namespace {

using RealArray = py::array_t<double, py::array::c_style | py::array::forcecast>;
using ComplexArray = py::array_t<Complex, py::array::c_style | py::array::forcecast>;

// (channels, samples) array, or a 1-D array as a single channel.
MultichannelSignal to_signal(const RealArray& x, int sample_rate) {
  if (x.ndim() != 1 && x.ndim() != 2) throw py::value_error("signal must be 1-D or (channels, samples)");
  const auto channels = x.ndim() == 1 ? std::size_t{1} : static_cast<std::size_t>(x.shape(0));
  const auto samples = static_cast<std::size_t>(x.shape(x.ndim() - 1));
  MultichannelSignal s(channels, samples, sample_rate);
  const double* p = x.data();
  for (std::size_t c = 0; c < channels; ++c) s.channels[c].assign(p + c * samples, p + (c + 1) * samples);
  return s;
}

RealArray from_signal(const MultichannelSignal& s) {
  RealArray out({s.num_channels(), s.num_samples()});
  double* p = out.mutable_data();
  for (std::size_t c = 0; c < s.num_channels(); ++c)
    std::copy(s.channels[c].begin(), s.channels[c].end(), p + c * s.num_samples());
  return out;
}

// Frames as a (frames, channels, bins) complex array.
ComplexArray from_frames(const FrameSequence& frames) {
  const std::size_t t = frames.size();
  const std::size_t c = t ? frames[0].num_channels() : 0;
  const std::size_t k = t ? frames[0].num_bins() : 0;
  ComplexArray out({t, c, k});
  Complex* p = out.mutable_data();
  for (std::size_t i = 0; i < t; ++i)
    for (std::size_t j = 0; j < c; ++j)
      std::copy(frames[i].bins[j].begin(), frames[i].bins[j].end(), p + (i * c + j) * k);
  return out;
}

FrameSequence to_frames(const ComplexArray& x, double hz_per_bin) {
  if (x.ndim() != 3) throw py::value_error("frames must be (frames, channels, bins)");
  const auto t = static_cast<std::size_t>(x.shape(0));
  const auto c = static_cast<std::size_t>(x.shape(1));
  const auto k = static_cast<std::size_t>(x.shape(2));
  FrameSequence frames(t);
  const Complex* p = x.data();
  for (std::size_t i = 0; i < t; ++i) {
    frames[i].frame_index = i;
    frames[i].hz_per_bin = hz_per_bin;
    frames[i].bins.resize(c);
    for (std::size_t j = 0; j < c; ++j) frames[i].bins[j].assign(p + (i * c + j) * k, p + (i * c + j + 1) * k);
  }
  return frames;
}

StftConfig stft_config(std::size_t fft_size, std::size_t hop, const std::string& window) {
  StftConfig cfg;
  cfg.fft_size = fft_size;
  cfg.hop = hop;
  cfg.window = parse_window(window);
  return cfg;
}

ArrayGeometry geometry(const std::string& array, std::size_t mics, double spacing, const std::string& labeling) {
  if (array == "dual") return make_dual(spacing);
  if (array == "circular") return make_circular(mics, spacing, kDefaultSoundSpeed, parse_labeling(labeling));
  throw py::value_error("array must be 'dual' or 'circular'");
}

py::dict doa_dict(const DoaEstimate& d) {
  py::dict out;
  out["azimuth_deg"] = d.azimuth_deg;
  out["peak_count"] = d.peak_count;
  out["second_count"] = d.second_count;
  out["gap"] = d.gap;
  out["n_votes"] = d.n_votes;
  out["grid_start_deg"] = d.grid_start_deg;
  out["grid_step_deg"] = d.grid_step_deg;
  out["histogram"] = d.histogram;
  return out;
}

}  // namespace

PYBIND11_MODULE(_litebeam, m) {
  m.doc() = "Maximum-SNR two-microphone beamforming and phase-histogram localization";

  py::register_exception<Error>(m, "LitebeamError", PyExc_RuntimeError);

  m.attr("DEFAULT_SPACING") = kDefaultSpacing;
  m.attr("DEFAULT_SOUND_SPEED") = kDefaultSoundSpeed;

  m.def(
      "stft",
      [](const RealArray& x, std::size_t fft_size, std::size_t hop, const std::string& window) {
        return from_frames(stft(to_signal(x, 16000), stft_config(fft_size, hop, window)));
      },
      py::arg("signal"), py::arg("fft_size") = 512, py::arg("hop") = 256, py::arg("window") = "sqrt-hann",
      "Analysis frames of a (channels, samples) signal as a (frames, channels, bins) array.");

  m.def(
      "istft",
      [](const ComplexArray& frames, std::size_t fft_size, std::size_t hop, const std::string& window) {
        const auto cfg = stft_config(fft_size, hop, window);
        return from_signal(istft_all(to_frames(frames, 16000.0 / static_cast<double>(fft_size)), cfg, 16000));
      },
      py::arg("frames"), py::arg("fft_size") = 512, py::arg("hop") = 256, py::arg("window") = "sqrt-hann",
      "Overlap-add synthesis of every channel.");

  m.def(
      "solve_gevd",
      [](const ComplexArray& a, const ComplexArray& b) {
        if (a.ndim() != 2 || a.shape(0) != 2 || a.shape(1) != 2 || b.ndim() != 2 || b.shape(0) != 2 ||
            b.shape(1) != 2)
          throw py::value_error("expected two 2x2 matrices");
        const auto A = a.unchecked<2>();
        const auto B = b.unchecked<2>();
        const Hermitian2 ha{A(0, 0).real(), A(0, 1), A(1, 1).real()};
        const Hermitian2 hb{B(0, 0).real(), B(0, 1), B(1, 1).real()};
        const auto sol = solve_gevd(ha, hb);
        ComplexArray w(std::vector<py::ssize_t>{2});
        w.mutable_at(0) = sol.w[0];
        w.mutable_at(1) = sol.w[1];
        return py::make_tuple(w, sol.lambda_max, sol.degenerate);
      },
      py::arg("a"), py::arg("b"),
      "Principal generalized eigenvector of Hermitian 2x2 (a, b + eps I): (w, lambda_max, degenerate).");

  m.def(
      "render_scene",
      [](double target_deg, std::vector<std::pair<std::string, double>> interferers,
         std::optional<double> input_sinr_db, double duration_s, std::uint64_t seed, const std::string& array,
         std::size_t mics, const std::string& labeling, const std::string& target_kind, double diffuse_noise_db) {
        SceneSpec spec;
        spec.geometry = geometry(array, mics, kDefaultSpacing, labeling);
        spec.target = {parse_source_kind(target_kind), target_deg};
        for (const auto& [kind, az] : interferers) spec.interferers.push_back({parse_source_kind(kind), az});
        spec.input_sinr_db = input_sinr_db;
        spec.duration_s = duration_s;
        spec.seed = seed;
        spec.diffuse_noise_db = diffuse_noise_db;
        const auto sc = render_scene(spec);
        py::dict out;
        out["mixture"] = from_signal(sc.mixture);
        out["target"] = from_signal(sc.target_only);
        out["interference"] = from_signal(sc.interference_plus_noise_only);
        out["measured_sinr_db"] = measured_sinr_db(sc);
        out["sample_rate"] = sc.mixture.sample_rate;
        return out;
      },
      py::arg("target_deg"), py::arg("interferers") = std::vector<std::pair<std::string, double>>{},
      py::arg("input_sinr_db") = 6.0, py::arg("duration_s") = 3.0, py::arg("seed") = 1, py::arg("array") = "dual",
      py::arg("mics") = 6, py::arg("labeling") = "cyclic", py::arg("target_kind") = "speech-like",
      py::arg("diffuse_noise_db") = -30.0,
      "Anechoic far-field scene. Interferers are (kind, azimuth_deg) tuples.");

  m.def(
      "localize",
      [](const RealArray& x, const std::string& array, std::size_t mics, double spacing,
         const std::string& labeling) {
        const auto g = geometry(array, mics, spacing, labeling);
        const auto frames = stft(to_signal(x, 16000), StftConfig{});
        if (frames.front().num_channels() != g.num_mics())
          throw py::value_error("channel count does not match the array");
        const auto d = g.kind == ArrayKind::Dual ? dual_doa(frames, g.pair_spacing(0), g.sound_speed)
                                                 : circular_doa(frames, g);
        return doa_dict(d);
      },
      py::arg("signal"), py::arg("array") = "dual", py::arg("mics") = 6, py::arg("spacing") = kDefaultSpacing,
      py::arg("labeling") = "cyclic",
      "Phase-histogram DOA. Dual arrays report the broadside angle, circular arrays the azimuth.");

  m.def(
      "beamform",
      [](const RealArray& x, const std::string& array, std::size_t mics, double spacing,
         const std::string& labeling, double beta, bool online) {
        const auto g = geometry(array, mics, spacing, labeling);
        const auto sig = to_signal(x, 16000);
        const StftConfig cfg;
        const auto frames = stft(sig, cfg);
        if (frames.front().num_channels() != g.num_mics())
          throw py::value_error("channel count does not match the array");
        MaxSnrConfig ms;
        ms.beta = beta;
        ms.online = online;
        py::dict out;
        BeamformResult beam;
        if (g.kind == ArrayKind::Dual) {
          beam = beamform_pipeline(frames, g.pair_spacing(0), g.sound_speed, ms);
          out["doa"] = doa_dict(beam.doa);
          out["pair"] = py::make_tuple(g.pairs[0].first, g.pairs[0].second);
        } else {
          auto res = beamform_circular(frames, g, ms);
          out["doa"] = doa_dict(res.doa);
          out["pair"] = py::make_tuple(g.pairs[res.pair.pair_index].first, g.pairs[res.pair.pair_index].second);
          beam = std::move(res.beam);
        }
        auto y = istft(beam.output, cfg, 0);
        y.resize(sig.num_samples(), 0.0);
        RealArray enhanced(std::vector<py::ssize_t>{static_cast<py::ssize_t>(y.size())});
        std::copy(y.begin(), y.end(), enhanced.mutable_data());
        out["output"] = enhanced;
        out["beamwidth_deg"] = beam.beamwidth_deg;
        return out;
      },
      py::arg("signal"), py::arg("array") = "dual", py::arg("mics") = 6, py::arg("spacing") = kDefaultSpacing,
      py::arg("labeling") = "cyclic", py::arg("beta") = 0.96, py::arg("online") = false,
      "Maximum-SNR beamforming of a (channels, samples) signal. Pair indices are 0-based.");

  m.def(
      "select_pair",
      [](double doa_deg, std::size_t mics, const std::string& labeling) {
        const auto g = make_circular(mics, kDefaultSpacing, kDefaultSoundSpeed, parse_labeling(labeling));
        const auto c = select_pair(doa_deg, g);
        py::dict out;
        out["pair_index"] = c.pair_index;
        out["mics"] = py::make_tuple(g.pairs[c.pair_index].first, g.pairs[c.pair_index].second);
        out["theta_b_local"] = c.theta_b_local;
        out["mirrored"] = c.mirrored;
        return out;
      },
      py::arg("doa_deg"), py::arg("mics") = 6, py::arg("labeling") = "cyclic");

  m.def(
      "sinr_gain",
      [](double source_deg, double interferer_deg, double input_sinr_db, std::uint64_t seed,
         const std::string& method, const std::string& array, double duration_s) {
        EvalConfig cfg;
        cfg.duration_s = duration_s;
        const auto g = sinr_gain({source_deg, interferer_deg, input_sinr_db, seed}, parse_method(method),
                                 parse_array_mode(array), cfg);
        return g.gain_db;
      },
      py::arg("source_deg"), py::arg("interferer_deg"), py::arg("input_sinr_db") = 6.0, py::arg("seed") = 1,
      py::arg("method") = "maxsnr", py::arg("array") = "dual", py::arg("duration_s") = 3.0,
      "SINR gain in dB measured by filtering the clean components with the mixture's weights.");
}
