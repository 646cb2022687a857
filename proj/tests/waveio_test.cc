// tests/waveio_test.cc

// Copyright 2026  spoofkit authors

// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//  http://www.apache.org/licenses/LICENSE-2.0
//
// THIS CODE IS PROVIDED *AS IS* BASIS, WITHOUT WARRANTIES OR CONDITIONS OF ANY
// KIND, EITHER EXPRESS OR IMPLIED, INCLUDING WITHOUT LIMITATION ANY IMPLIED
// WARRANTIES OR CONDITIONS OF TITLE, FITNESS FOR A PARTICULAR PURPOSE,
// MERCHANTABLITY OR NON-INFRINGEMENT.
// See the Apache 2 License for the specific language governing permissions and
// limitations under the License.

#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>
#include <cstdint>
#include <filesystem>
#include <fstream>
#include <numbers>
#include <random>
#include <string>
#include <vector>

#include "spoofkit/common.h"
#include "spoofkit/wav_io.h"
#include "spoofkit/waveform.h"

namespace fs = std::filesystem;
using namespace spoofkit;

namespace {

fs::path temp_dir() {
  static int counter = 0;
  fs::path d = fs::temp_directory_path() /
               ("spoofkit_waveio_" + std::to_string(::getpid()) + "_" +
                std::to_string(counter++));
  fs::create_directories(d);
  return d;
}

void append_u32(std::string* s, uint32_t v) {
  for (int i = 0; i < 4; ++i) s->push_back(char((v >> (8 * i)) & 0xFF));
}
void append_u16(std::string* s, uint16_t v) {
  for (int i = 0; i < 2; ++i) s->push_back(char((v >> (8 * i)) & 0xFF));
}

// Hand-built RIFF/WAVE container, independent of the library's writer.
std::string wav_bytes(const std::vector<int16_t>& samples, uint32_t rate,
                      uint16_t channels = 1, uint16_t bits = 16,
                      uint16_t codec = 1) {
  std::string s;
  const uint32_t data_len = uint32_t(samples.size() * 2);
  s += "RIFF";
  append_u32(&s, 36 + data_len);
  s += "WAVE";
  s += "fmt ";
  append_u32(&s, 16);
  append_u16(&s, codec);
  append_u16(&s, channels);
  append_u32(&s, rate);
  append_u32(&s, rate * channels * bits / 8);
  append_u16(&s, uint16_t(channels * bits / 8));
  append_u16(&s, bits);
  s += "data";
  append_u32(&s, data_len);
  for (int16_t v : samples) append_u16(&s, uint16_t(v));
  return s;
}

fs::path write_bytes(const fs::path& dir, const std::string& name,
                     const std::string& bytes) {
  fs::path p = dir / name;
  std::ofstream out(p, std::ios::binary);
  out.write(bytes.data(), std::streamsize(bytes.size()));
  return p;
}

std::string read_bytes(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  return {std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>()};
}

int16_t payload_sample(const std::string& bytes, size_t i) {
  // 44-byte canonical header, then little-endian int16 samples.
  const size_t off = 44 + 2 * i;
  return int16_t(uint16_t(uint8_t(bytes[off])) |
                 (uint16_t(uint8_t(bytes[off + 1])) << 8));
}

}  // namespace

TEST_CASE("read_wav maps int16 codes onto [-1, 1) by dividing by 32768") {
  const fs::path dir = temp_dir();
  const Waveform zero = read_wav(write_bytes(dir, "z.wav", wav_bytes({0}, 16000)));
  REQUIRE(zero.samples.size() == 1);
  CHECK(zero.samples[0] == 0.0);
  CHECK(zero.sample_rate == 16000);

  const Waveform full =
      read_wav(write_bytes(dir, "f.wav", wav_bytes({-32768}, 8000)));
  CHECK(full.samples[0] == -1.0);
  CHECK(full.sample_rate == 8000);

  const Waveform mix = read_wav(
      write_bytes(dir, "m.wav", wav_bytes({16384, -16384, 32767}, 44100)));
  CHECK(mix.samples[0] == doctest::Approx(0.5).epsilon(1e-12));
  CHECK(mix.samples[1] == doctest::Approx(-0.5).epsilon(1e-12));
  CHECK(mix.samples[2] == doctest::Approx(32767.0 / 32768.0).epsilon(1e-12));
}

TEST_CASE("read_wav rejects malformed and unsupported containers") {
  const fs::path dir = temp_dir();
  CHECK_THROWS_AS(read_wav(dir / "missing.wav"), IoError);

  std::string bad = wav_bytes({0, 0}, 16000);
  bad[0] = 'X';  // corrupt RIFF magic
  CHECK_THROWS_AS(read_wav(write_bytes(dir, "bad.wav", bad)), FormatError);

  std::string trunc = wav_bytes({1000, 2000, 3000}, 16000);
  trunc.resize(trunc.size() - 3);  // cut into the sample payload
  CHECK_THROWS_AS(read_wav(write_bytes(dir, "tr.wav", trunc)), FormatError);

  CHECK_THROWS_AS(
      read_wav(write_bytes(dir, "st.wav", wav_bytes({0, 0}, 16000, 2))),
      UnsupportedFormatError);
  CHECK_THROWS_AS(
      read_wav(write_bytes(dir, "f32.wav", wav_bytes({0, 0}, 16000, 1, 16, 3))),
      UnsupportedFormatError);
}

TEST_CASE("write_wav quantizes round-half-away-from-zero and saturates +1") {
  const fs::path dir = temp_dir();
  Waveform w;
  w.sample_rate = 16000;
  w.samples = {0.0, 1.0, -1.0, 0.5, 1.5 / 32768.0, -1.5 / 32768.0};
  const fs::path p = dir / "q.wav";
  write_wav(w, p);
  const std::string bytes = read_bytes(p);
  CHECK(payload_sample(bytes, 0) == 0);
  CHECK(payload_sample(bytes, 1) == 32767);  // +1 saturates one code early
  CHECK(payload_sample(bytes, 2) == -32768);
  CHECK(payload_sample(bytes, 3) == 16384);
  CHECK(payload_sample(bytes, 4) == 2);   // 1.5 rounds away from zero
  CHECK(payload_sample(bytes, 5) == -2);

  Waveform out_of_range;
  out_of_range.samples = {1.0001};
  CHECK_THROWS_AS(write_wav(out_of_range, dir / "r.wav"), RangeError);
}

TEST_CASE("sine and random waveforms round-trip within one quantization step") {
  const fs::path dir = temp_dir();

  Waveform sine;
  sine.sample_rate = 16000;
  sine.samples.resize(1600);
  for (size_t i = 0; i < sine.samples.size(); ++i)
    sine.samples[i] =
        0.9 * std::sin(2.0 * std::numbers::pi * 440.0 * double(i) / 16000.0);
  const fs::path p = dir / "sine.wav";
  write_wav(sine, p);
  const Waveform back = read_wav(p);
  REQUIRE(back.samples.size() == sine.samples.size());
  CHECK(back.sample_rate == 16000);
  double max_err = 0.0;
  for (size_t i = 0; i < sine.samples.size(); ++i)
    max_err = std::max(max_err, std::abs(back.samples[i] - sine.samples[i]));
  CHECK(max_err <= 1.0 / 32768.0);

  Rng rng = make_rng(20260817);
  std::uniform_real_distribution<double> amp(-1.0, 1.0);
  Waveform noise;
  noise.sample_rate = 8000;
  noise.samples.resize(4096);
  for (double& v : noise.samples) v = amp(rng);
  const fs::path p2 = dir / "noise.wav";
  write_wav(noise, p2);
  const Waveform back2 = read_wav(p2);
  max_err = 0.0;
  for (size_t i = 0; i < noise.samples.size(); ++i)
    max_err = std::max(max_err, std::abs(back2.samples[i] - noise.samples[i]));
  CHECK(max_err <= 1.0 / 32768.0);
}

TEST_CASE("fit_length truncates long inputs and tiles short ones cyclically") {
  Waveform w;
  w.samples = {1.0, 2.0, 3.0};

  const Waveform same = fit_length(w, 3);
  CHECK(same.samples == w.samples);

  const Waveform tiled = fit_length(w, 7);
  CHECK(tiled.samples == std::vector<double>{1, 2, 3, 1, 2, 3, 1});

  Waveform longw;
  longw.samples.resize(96000);
  for (size_t i = 0; i < longw.samples.size(); ++i)
    longw.samples[i] = double(i % 997) / 997.0;
  const Waveform cut = fit_length(longw, 64600);
  REQUIRE(cut.samples.size() == 64600);
  for (size_t i = 0; i < 64600; i += 9973)
    CHECK(cut.samples[i] == longw.samples[i]);

  CHECK_THROWS_AS(fit_length(w, 0), RangeError);
  Waveform empty;
  CHECK_THROWS_AS(fit_length(empty, 10), RangeError);
}

TEST_CASE("fit_length tiling preserves the value multiset ratios") {
  Waveform w;
  w.samples = {5.0, 7.0};  // 1:1 mix of two values
  const Waveform t = fit_length(w, 1000);
  size_t n5 = 0;
  for (double v : t.samples) n5 += (v == 5.0);
  CHECK(n5 == 500);
}

TEST_CASE("manifest round trip preserves entries and resolves paths") {
  const fs::path dir = temp_dir();
  DatasetManifest m;
  m.entries.push_back({"trial_b", "wav/b.wav", Label::kBonafide, "spk1"});
  m.entries.push_back({"trial_s", "wav/s.wav", Label::kSpoof, "spk2"});
  const fs::path p = dir / "manifest.tsv";
  write_manifest(m, p);

  const DatasetManifest back = read_manifest(p);
  REQUIRE(back.entries.size() == 2);
  CHECK(back.entries[0].trial_id == "trial_b");
  CHECK(back.entries[0].label == Label::kBonafide);
  CHECK(back.entries[1].label == Label::kSpoof);
  CHECK(back.entries[1].speaker_id == "spk2");
  CHECK(back.resolve_path(back.entries[0]) == dir / "wav/b.wav");

  const std::string text = read_bytes(p);
  CHECK(text.rfind("trial_id\tpath\tlabel\tspeaker_id\n", 0) == 0);
}

TEST_CASE("manifest parsing rejects structural violations") {
  const fs::path dir = temp_dir();
  auto write_text = [&](const std::string& name, const std::string& text) {
    return write_bytes(dir, name, text);
  };

  CHECK_THROWS_AS(
      read_manifest(write_text("nohdr.tsv", "a\tb.wav\tbonafide\ts\n")),
      FormatError);
  CHECK_THROWS_AS(
      read_manifest(write_text(
          "cols.tsv", "trial_id\tpath\tlabel\tspeaker_id\na\tb.wav\tspoof\n")),
      FormatError);
  CHECK_THROWS_AS(
      read_manifest(write_text("label.tsv",
                               "trial_id\tpath\tlabel\tspeaker_id\n"
                               "a\tb.wav\tgenuine\ts\n")),
      FormatError);
  CHECK_THROWS_AS(
      read_manifest(write_text("dup.tsv",
                               "trial_id\tpath\tlabel\tspeaker_id\n"
                               "a\tb.wav\tspoof\ts\n"
                               "a\tc.wav\tbonafide\ts\n")),
      FormatError);
  // Header-only manifests are valid and empty.
  const DatasetManifest empty =
      read_manifest(write_text("empty.tsv", "trial_id\tpath\tlabel\tspeaker_id\n"));
  CHECK(empty.entries.empty());
}

TEST_CASE("label strings round trip") {
  CHECK(label_to_string(Label::kBonafide) == "bonafide");
  CHECK(label_to_string(Label::kSpoof) == "spoof");
  CHECK(label_from_string("bonafide") == Label::kBonafide);
  CHECK(label_from_string("spoof") == Label::kSpoof);
  CHECK_THROWS_AS(label_from_string("other"), FormatError);
}
