// Copyright 2026 The cylflow Authors
// SPDX-License-Identifier: Apache-2.0
#include "cylflow/snapshot.hpp"

#include <bit>
#include <cstring>
#include <stdexcept>

#include "cylflow/io.hpp"

namespace cylflow {

static_assert(std::endian::native == std::endian::little, "CYLG writer assumes a little-endian host");

namespace {

template <class T>
void put(std::string& out, T v) {
  char buf[sizeof(T)];
  std::memcpy(buf, &v, sizeof(T));
  out.append(buf, sizeof(T));
}

void put_doubles(std::string& out, const std::vector<double>& v) {
  out.append(reinterpret_cast<const char*>(v.data()), v.size() * sizeof(double));
}

template <class T>
T get(const std::string& in, std::size_t& off) {
  if (off + sizeof(T) > in.size()) throw std::runtime_error("CYLG: truncated record");
  T v;
  std::memcpy(&v, in.data() + off, sizeof(T));
  off += sizeof(T);
  return v;
}

std::vector<double> get_doubles(const std::string& in, std::size_t& off, std::size_t count) {
  if (off + count * sizeof(double) > in.size()) throw std::runtime_error("CYLG: truncated record");
  std::vector<double> v(count);
  std::memcpy(v.data(), in.data() + off, count * sizeof(double));
  off += count * sizeof(double);
  return v;
}

}  // namespace

std::string encode_snapshot(const Snapshot& s) {
  if (!s.grid) throw std::invalid_argument("encode_snapshot: no grid");
  const CylinderGrid& g = *s.grid;
  if (s.values.size() != g.size()) throw std::invalid_argument("encode_snapshot: value count mismatch");
  std::string out = "CYLG";
  put<std::uint32_t>(out, kSnapshotVersion);
  put<std::int32_t>(out, g.shape().n);
  put<std::int32_t>(out, g.shape().k);
  put<double>(out, s.tau);
  put<double>(out, g.truncation_radius());
  put<std::uint64_t>(out, g.sphere().size());
  put<std::uint64_t>(out, g.spine().size());
  put<std::int32_t>(out, g.sphere().exact_degree);
  put<std::int32_t>(out, g.spine().exact_degree);
  put_doubles(out, g.sphere().nodes);
  put_doubles(out, g.sphere().w);
  put_doubles(out, g.spine().nodes);
  put_doubles(out, g.spine().w);
  put_doubles(out, s.values);
  put<std::uint32_t>(out, static_cast<std::uint32_t>(s.extra_tag.size()));
  out += s.extra_tag;
  put<std::uint64_t>(out, s.extra.size());
  put_doubles(out, s.extra);
  return out;
}

Snapshot decode_snapshot(const std::string& bytes, std::size_t& off) {
  if (bytes.compare(off, 4, "CYLG") != 0) throw std::runtime_error("CYLG: bad magic");
  off += 4;
  const auto version = get<std::uint32_t>(bytes, off);
  if (version != kSnapshotVersion) throw std::runtime_error("CYLG: unsupported version");
  const int n = get<std::int32_t>(bytes, off);
  const int k = get<std::int32_t>(bytes, off);
  const CylinderShape shape = CylinderShape::make(n, k);
  Snapshot s;
  s.tau = get<double>(bytes, off);
  const double R = get<double>(bytes, off);
  const auto ns = get<std::uint64_t>(bytes, off);
  const auto ny = get<std::uint64_t>(bytes, off);
  SphereRule sr;
  sr.m = shape.m();
  sr.exact_degree = get<std::int32_t>(bytes, off);
  SpineRule yr;
  yr.k = k;
  yr.exact_degree = get<std::int32_t>(bytes, off);
  yr.radius = R;
  sr.nodes = get_doubles(bytes, off, ns * static_cast<std::size_t>(shape.dim_theta()));
  sr.w = get_doubles(bytes, off, ns);
  yr.nodes = get_doubles(bytes, off, ny * static_cast<std::size_t>(k));
  yr.w = get_doubles(bytes, off, ny);
  s.grid = std::make_shared<const CylinderGrid>(shape, std::move(sr), std::move(yr));
  s.values = get_doubles(bytes, off, ns * ny);
  const auto tag_len = get<std::uint32_t>(bytes, off);
  if (off + tag_len > bytes.size()) throw std::runtime_error("CYLG: truncated record");
  s.extra_tag = bytes.substr(off, tag_len);
  off += tag_len;
  const auto ne = get<std::uint64_t>(bytes, off);
  s.extra = get_doubles(bytes, off, ne);
  return s;
}

void write_snapshot(const std::filesystem::path& path, const Snapshot& s) {
  io::write_atomic(path, encode_snapshot(s));
}

Snapshot read_snapshot(const std::filesystem::path& path) {
  const std::string bytes = io::read_file(path);
  std::size_t off = 0;
  return decode_snapshot(bytes, off);
}

std::string encode_trajectory(const std::vector<Snapshot>& snaps) {
  std::string out;
  std::vector<std::pair<double, std::uint64_t>> index;
  for (const Snapshot& s : snaps) {
    index.emplace_back(s.tau, out.size());
    out += encode_snapshot(s);
  }
  const std::uint64_t footer = out.size();
  put<std::uint64_t>(out, index.size());
  for (const auto& [tau, o] : index) {
    put<double>(out, tau);
    put<std::uint64_t>(out, o);
  }
  put<std::uint64_t>(out, footer);
  out += "CYGI";
  return out;
}

void write_trajectory_file(const std::filesystem::path& path, const std::vector<Snapshot>& snaps) {
  io::write_atomic(path, encode_trajectory(snaps));
}

namespace {

std::vector<std::pair<double, std::uint64_t>> parse_index(const std::string& bytes) {
  if (bytes.size() < 12 || bytes.compare(bytes.size() - 4, 4, "CYGI") != 0)
    throw std::runtime_error("trajectory file: missing index footer");
  std::size_t off = bytes.size() - 12;
  std::size_t footer = get<std::uint64_t>(bytes, off);
  const auto count = get<std::uint64_t>(bytes, footer);
  std::vector<std::pair<double, std::uint64_t>> index;
  for (std::uint64_t i = 0; i < count; ++i) {
    const double tau = get<double>(bytes, footer);
    index.emplace_back(tau, get<std::uint64_t>(bytes, footer));
  }
  return index;
}

}  // namespace

std::vector<std::pair<double, std::uint64_t>> read_trajectory_index(const std::filesystem::path& path) {
  return parse_index(io::read_file(path));
}

std::vector<Snapshot> read_trajectory_file(const std::filesystem::path& path) {
  const std::string bytes = io::read_file(path);
  std::vector<Snapshot> out;
  for (const auto& [tau, o] : parse_index(bytes)) {
    std::size_t off = o;
    out.push_back(decode_snapshot(bytes, off));
  }
  return out;
}

std::string snapshot_csv(const Snapshot& s) {
  const CylinderGrid& g = *s.grid;
  io::CsvTable t;
  for (int c = 0; c < g.shape().dim_theta(); ++c) t.header.push_back("omega" + std::to_string(c));
  for (int b = 0; b < g.shape().k; ++b) t.header.push_back("y" + std::to_string(b));
  t.header.push_back("v");
  for (std::size_t a = 0; a < g.size(); ++a) {
    std::vector<double> row(g.omega(a).begin(), g.omega(a).end());
    row.insert(row.end(), g.y(a).begin(), g.y(a).end());
    row.push_back(s.values[a]);
    t.add_numeric_row(row);
  }
  return t.str();
}

}  // namespace cylflow
