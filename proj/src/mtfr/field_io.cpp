/* Copyright (C) 2026 The mtfr Authors.
 * Licensed under the Apache License, Version 2.0 (the "License"); you may not
 * use this file except in compliance with the License. You may obtain a copy
 * of the License at http://www.apache.org/licenses/LICENSE-2.0
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS, WITHOUT
 * WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied. See the
 * License for the specific language governing permissions and limitations
 * under the License.
 */
#include "mtfr/field_io.hpp"

#include <algorithm>
#include <bit>
#include <cstdint>
#include <cstdio>
#include <cstring>
#include <fstream>
#include <sstream>

#include <unistd.h>

namespace mtfr {

namespace {

constexpr std::uint32_t kVersion = 1;

template <typename T>
void put(std::string& out, T v) {
  static_assert(std::is_trivially_copyable_v<T>);
  char b[sizeof(T)];
  std::memcpy(b, &v, sizeof(T));
  if constexpr (std::endian::native == std::endian::big) std::reverse(b, b + sizeof(T));
  out.append(b, sizeof(T));
}

template <typename T>
T get(const std::string& in, std::size_t& pos) {
  if (pos + sizeof(T) > in.size()) throw Error(ErrorKind::InvalidInput, "truncated field file");
  char b[sizeof(T)];
  std::memcpy(b, in.data() + pos, sizeof(T));
  if constexpr (std::endian::native == std::endian::big) std::reverse(b, b + sizeof(T));
  pos += sizeof(T);
  T v;
  std::memcpy(&v, b, sizeof(T));
  return v;
}

}  // namespace

std::string encode_field(const SampledField& f) {
  std::string out = "MTFR";
  put<std::uint32_t>(out, kVersion);
  put<std::uint32_t>(out, static_cast<std::uint32_t>(f.dims()));
  for (const Axis& a : f.axes()) {
    put<std::uint64_t>(out, a.points);
    put<double>(out, a.extent);
  }
  out.reserve(out.size() + 16 * f.size());
  for (const cd& z : f.values()) {
    put<double>(out, z.real());
    put<double>(out, z.imag());
  }
  return out;
}

SampledField decode_field(const std::string& bytes, const GridConfig& cfg) {
  if (bytes.size() < 12 || bytes.compare(0, 4, "MTFR") != 0) throw Error(ErrorKind::InvalidInput, "not an MTFR field");
  std::size_t pos = 4;
  auto version = get<std::uint32_t>(bytes, pos);
  if (version != kVersion) throw Error(ErrorKind::InvalidInput, "unsupported field version " + std::to_string(version));
  auto n = get<std::uint32_t>(bytes, pos);
  if (n == 0 || n > 8) throw Error(ErrorKind::InvalidInput, "field dimension out of range");
  std::vector<Axis> axes;
  for (std::uint32_t i = 0; i < n; ++i) {
    auto pts = get<std::uint64_t>(bytes, pos);
    auto ext = get<double>(bytes, pos);
    axes.push_back(Axis{static_cast<std::size_t>(pts), ext});
  }
  SampledField f(axes, cfg);
  if (bytes.size() - pos != 16 * f.size()) throw Error(ErrorKind::InvalidInput, "field payload size mismatch");
  for (std::size_t i = 0; i < f.size(); ++i) {
    double re = get<double>(bytes, pos);
    double im = get<double>(bytes, pos);
    f[i] = cd(re, im);
  }
  return f;
}

void write_file_atomic(const std::string& path, const std::string& content) {
  std::string tmp = path + ".tmp." + std::to_string(::getpid());
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) throw Error(ErrorKind::InvalidInput, "cannot write " + tmp);
    out.write(content.data(), static_cast<std::streamsize>(content.size()));
    out.flush();
    if (!out) {
      std::remove(tmp.c_str());
      throw Error(ErrorKind::InvalidInput, "write failed for " + tmp);
    }
  }
  if (std::rename(tmp.c_str(), path.c_str()) != 0) {
    std::remove(tmp.c_str());
    throw Error(ErrorKind::InvalidInput, "cannot rename into " + path);
  }
}

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorKind::InvalidInput, "cannot open " + path);
  std::ostringstream s;
  s << in.rdbuf();
  return s.str();
}

void write_field(const std::string& path, const SampledField& f) { write_file_atomic(path, encode_field(f)); }

SampledField read_field(const std::string& path, const GridConfig& cfg) { return decode_field(read_file(path), cfg); }

std::string field_csv(const SampledField& f) {
  if (f.dims() > 2) throw Error(ErrorKind::DimensionMismatch, "CSV export takes 1-D or 2-D fields; slice first");
  std::ostringstream out;
  out.precision(17);
  out << (f.dims() == 1 ? "t0,re,im,abs\n" : "t0,t1,re,im,abs\n");
  for (std::size_t i = 0; i < f.size(); ++i) {
    RVec t = f.coords(i);
    for (int k = 0; k < t.size(); ++k) out << t(k) << ',';
    out << f[i].real() << ',' << f[i].imag() << ',' << std::abs(f[i]) << '\n';
  }
  return out.str();
}

SampledField field_slice(const SampledField& f, int a, int b, const std::vector<std::size_t>& fixed) {
  const int n = f.dims();
  if (a < 0 || b < 0 || a >= n || b >= n || a == b) throw Error(ErrorKind::InvalidInput, "invalid slice axes");
  if (static_cast<int>(fixed.size()) != n) throw Error(ErrorKind::DimensionMismatch, "one fixed index per axis");
  for (int i = 0; i < n; ++i)
    if (i != a && i != b && fixed[i] >= f.axes()[i].points) throw Error(ErrorKind::InvalidInput, "fixed index out of range");
  SampledField s({f.axes()[a], f.axes()[b]});
  std::size_t base = 0;
  for (int i = 0; i < n; ++i)
    if (i != a && i != b) base += fixed[i] * f.stride(i);
  const std::size_t na = f.axes()[a].points, nb = f.axes()[b].points;
  for (std::size_t i = 0; i < na; ++i)
    for (std::size_t j = 0; j < nb; ++j) s[i * nb + j] = f[base + i * f.stride(a) + j * f.stride(b)];
  return s;
}

}  // namespace mtfr
