// src/checkpoint.cc

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

#include "spoofkit/checkpoint.h"

#include <zlib.h>

#include <bit>
#include <cstdint>
#include <cstring>
#include <fstream>
#include <string>

namespace spoofkit {

namespace {

constexpr char kMagic[8] = {'S', 'P', 'F', 'K', 'I', 'T', '0', '1'};

static_assert(std::endian::native == std::endian::little,
              "checkpoint codec assumes a little-endian host");

void put_u32(std::string* buf, uint32_t v) {
  buf->append(reinterpret_cast<const char*>(&v), 4);
}

void put_u64(std::string* buf, uint64_t v) {
  buf->append(reinterpret_cast<const char*>(&v), 8);
}

void put_f64(std::string* buf, double v) {
  buf->append(reinterpret_cast<const char*>(&v), 8);
}

class Reader {
 public:
  Reader(const std::string& data, const std::string& what)
      : data_(data), what_(what) {}

  uint32_t u32() { return get<uint32_t>(); }
  uint64_t u64() { return get<uint64_t>(); }
  double f64() { return get<double>(); }

  void raw(void* out, size_t n) {
    if (pos_ + n > data_.size())
      throw FormatError(what_ + ": truncated checkpoint");
    std::memcpy(out, data_.data() + pos_, n);
    pos_ += n;
  }

  size_t pos() const { return pos_; }

 private:
  template <typename T>
  T get() {
    T v;
    raw(&v, sizeof(T));
    return v;
  }

  const std::string& data_;
  std::string what_;
  size_t pos_ = 0;
};

uint32_t crc_of(const std::string& buf, size_t len) {
  uLong crc = crc32(0L, Z_NULL, 0);
  crc = crc32(crc, reinterpret_cast<const Bytef*>(buf.data()),
              static_cast<uInt>(len));
  return static_cast<uint32_t>(crc);
}

}  // namespace

void save_checkpoint(const Checkpoint& ckpt,
                     const std::filesystem::path& path) {
  validate_model_spec(ckpt.spec);
  if (ckpt.theta.size() != ckpt.spec.param_count())
    throw RangeError("checkpoint: parameter vector does not match model");

  std::string buf;
  buf.reserve(48 + 8 * ckpt.theta.size());
  buf.append(kMagic, sizeof(kMagic));
  put_u32(&buf, static_cast<uint32_t>(ckpt.spec.widths.size()));
  for (size_t w : ckpt.spec.widths) put_u32(&buf, static_cast<uint32_t>(w));
  put_f64(&buf, ckpt.spec.leaky_slope);
  put_u64(&buf, static_cast<uint64_t>(ckpt.theta.size()));
  for (double v : ckpt.theta) put_f64(&buf, v);
  put_u32(&buf, crc_of(buf, buf.size()));

  // Write to a sibling temp file, then rename: a crash mid-write never
  // leaves a half-written file under the final name.
  const std::filesystem::path tmp = path.string() + ".tmp";
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) throw IoError("checkpoint: cannot open " + tmp.string());
    out.write(buf.data(), static_cast<std::streamsize>(buf.size()));
    if (!out) throw IoError("checkpoint: write failed for " + tmp.string());
  }
  std::error_code ec;
  std::filesystem::rename(tmp, path, ec);
  if (ec) {
    std::filesystem::remove(tmp, ec);
    throw IoError("checkpoint: cannot rename into " + path.string());
  }
}

Checkpoint load_checkpoint(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("checkpoint: cannot open " + path.string());
  std::string data((std::istreambuf_iterator<char>(in)),
                   std::istreambuf_iterator<char>());
  const std::string what = path.string();

  if (data.size() < sizeof(kMagic) + 4)
    throw FormatError(what + ": truncated checkpoint");
  if (std::memcmp(data.data(), kMagic, sizeof(kMagic)) != 0)
    throw FormatError(what + ": not a checkpoint file (bad magic)");
  if (data.size() < 4) throw FormatError(what + ": truncated checkpoint");
  const size_t body_len = data.size() - 4;
  uint32_t stored_crc;
  std::memcpy(&stored_crc, data.data() + body_len, 4);
  if (crc_of(data, body_len) != stored_crc)
    throw FormatError(what + ": checksum mismatch (corrupt checkpoint)");

  Reader r(data, what);
  char magic[8];
  r.raw(magic, sizeof(magic));
  const uint32_t n_widths = r.u32();
  if (n_widths < 2 || n_widths > 64)
    throw FormatError(what + ": implausible layer count");
  Checkpoint ckpt;
  ckpt.spec.widths.clear();
  for (uint32_t i = 0; i < n_widths; ++i)
    ckpt.spec.widths.push_back(r.u32());
  ckpt.spec.leaky_slope = r.f64();
  const uint64_t n_params = r.u64();
  try {
    validate_model_spec(ckpt.spec);
  } catch (const Error& e) {
    throw FormatError(what + ": " + e.what());
  }
  if (n_params != ckpt.spec.param_count())
    throw FormatError(what + ": parameter count does not match widths");
  if (body_len != r.pos() + 8 * n_params)
    throw FormatError(what + ": size does not match header");
  ckpt.theta.resize(n_params);
  r.raw(ckpt.theta.data(), 8 * n_params);
  return ckpt;
}

}  // namespace spoofkit
