// src/wav_io.cc

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

#include "spoofkit/wav_io.h"

#include <cmath>
#include <cstdint>
#include <cstring>
#include <fstream>
#include <vector>

namespace spoofkit {

namespace {

// All multi-byte fields in RIFF/WAVE are little-endian.
uint32_t read_le32(const uint8_t* p) {
  return static_cast<uint32_t>(p[0]) | (static_cast<uint32_t>(p[1]) << 8) |
         (static_cast<uint32_t>(p[2]) << 16) |
         (static_cast<uint32_t>(p[3]) << 24);
}

uint16_t read_le16(const uint8_t* p) {
  return static_cast<uint16_t>(p[0] | (p[1] << 8));
}

void put_le32(std::vector<uint8_t>& buf, uint32_t v) {
  buf.push_back(static_cast<uint8_t>(v & 0xff));
  buf.push_back(static_cast<uint8_t>((v >> 8) & 0xff));
  buf.push_back(static_cast<uint8_t>((v >> 16) & 0xff));
  buf.push_back(static_cast<uint8_t>((v >> 24) & 0xff));
}

void put_le16(std::vector<uint8_t>& buf, uint16_t v) {
  buf.push_back(static_cast<uint8_t>(v & 0xff));
  buf.push_back(static_cast<uint8_t>((v >> 8) & 0xff));
}

void put_tag(std::vector<uint8_t>& buf, const char* tag) {
  buf.insert(buf.end(), tag, tag + 4);
}

constexpr uint16_t kFormatPcm = 1;

}  // namespace

Waveform read_wav(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot open wav file: " + path.string());
  std::vector<uint8_t> raw((std::istreambuf_iterator<char>(in)),
                           std::istreambuf_iterator<char>());

  if (raw.size() < 12 || std::memcmp(raw.data(), "RIFF", 4) != 0 ||
      std::memcmp(raw.data() + 8, "WAVE", 4) != 0)
    throw FormatError("not a RIFF/WAVE file: " + path.string());

  bool have_fmt = false;
  uint16_t channels = 0, bits = 0, format = 0;
  uint32_t sample_rate = 0;
  const uint8_t* data = nullptr;
  uint32_t data_len = 0;

  // Walk the chunk list; unknown chunks (LIST, fact, ...) are skipped.
  size_t pos = 12;
  while (pos + 8 <= raw.size()) {
    const uint8_t* hdr = raw.data() + pos;
    uint32_t chunk_len = read_le32(hdr + 4);
    size_t body = pos + 8;
    if (body + chunk_len > raw.size())
      throw FormatError("truncated chunk in wav file: " + path.string());
    if (std::memcmp(hdr, "fmt ", 4) == 0) {
      if (chunk_len < 16)
        throw FormatError("fmt chunk too short: " + path.string());
      const uint8_t* f = raw.data() + body;
      format = read_le16(f + 0);
      channels = read_le16(f + 2);
      sample_rate = read_le32(f + 4);
      bits = read_le16(f + 14);
      have_fmt = true;
    } else if (std::memcmp(hdr, "data", 4) == 0) {
      data = raw.data() + body;
      data_len = chunk_len;
      // fmt is required to interpret data; keep scanning only before it.
      if (have_fmt) break;
    }
    // Chunks are word-aligned: odd sizes carry one pad byte.
    pos = body + chunk_len + (chunk_len & 1);
  }

  if (!have_fmt) throw FormatError("missing fmt chunk: " + path.string());
  if (data == nullptr) throw FormatError("missing data chunk: " + path.string());
  if (format != kFormatPcm)
    throw UnsupportedFormatError("only PCM wav supported (format tag " +
                                 std::to_string(format) + "): " +
                                 path.string());
  if (channels != 1)
    throw UnsupportedFormatError("only mono wav supported (channels=" +
                                 std::to_string(channels) + "): " +
                                 path.string());
  if (bits != 16)
    throw UnsupportedFormatError("only 16-bit wav supported (bits=" +
                                 std::to_string(bits) + "): " + path.string());
  if (sample_rate == 0)
    throw FormatError("zero sample rate: " + path.string());
  if (data_len % 2 != 0)
    throw FormatError("odd data chunk length: " + path.string());

  Waveform w;
  w.sample_rate = static_cast<int>(sample_rate);
  const size_t n = data_len / 2;
  w.samples.resize(n);
  for (size_t i = 0; i < n; ++i) {
    int16_t s = static_cast<int16_t>(read_le16(data + 2 * i));
    w.samples[i] = static_cast<double>(s) / 32768.0;
  }
  return w;
}

void write_wav(const Waveform& w, const std::filesystem::path& path) {
  if (w.sample_rate <= 0) throw RangeError("write_wav: bad sample rate");

  // Validate before touching the filesystem so a range error leaves no file.
  std::vector<int16_t> pcm(w.samples.size());
  for (size_t i = 0; i < w.samples.size(); ++i) {
    double x = w.samples[i];
    if (!(x >= -1.0 && x <= 1.0))
      throw RangeError("write_wav: sample " + std::to_string(i) + " = " +
                       std::to_string(x) + " outside [-1, 1]");
    long long q = std::llround(x * 32768.0);  // rounds half away from zero
    if (q > 32767) q = 32767;                 // only +1.0 reaches 32768
    pcm[i] = static_cast<int16_t>(q);
  }

  const uint32_t data_len = static_cast<uint32_t>(pcm.size() * 2);
  std::vector<uint8_t> buf;
  buf.reserve(44 + data_len);
  put_tag(buf, "RIFF");
  put_le32(buf, 36 + data_len);
  put_tag(buf, "WAVE");
  put_tag(buf, "fmt ");
  put_le32(buf, 16);
  put_le16(buf, kFormatPcm);
  put_le16(buf, 1);  // mono
  put_le32(buf, static_cast<uint32_t>(w.sample_rate));
  put_le32(buf, static_cast<uint32_t>(w.sample_rate) * 2);  // byte rate
  put_le16(buf, 2);                                         // block align
  put_le16(buf, 16);                                        // bits
  put_tag(buf, "data");
  put_le32(buf, data_len);
  for (int16_t s : pcm) put_le16(buf, static_cast<uint16_t>(s));

  std::ofstream out(path, std::ios::binary);
  if (!out) throw IoError("cannot write wav file: " + path.string());
  out.write(reinterpret_cast<const char*>(buf.data()),
            static_cast<std::streamsize>(buf.size()));
  if (!out) throw IoError("short write on wav file: " + path.string());
}

}  // namespace spoofkit
