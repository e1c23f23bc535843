// Copyright 2026 The cylflow Authors
// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <cstdint>
#include <filesystem>
#include <string>
#include <vector>

#include "cylflow/geometry.hpp"

namespace cylflow {

/// Snapshot record in the CYLG binary layout (little-endian):
/// "CYLG", u32 version, i32 n, i32 k, f64 tau, f64 R, u64 sphere nodes,
/// u64 spine nodes, i32 sphere degree, i32 spine degree, sphere nodes and
/// weights, spine nodes and weights, values, then a tagged extra block
/// (u32 tag length, tag bytes, u64 count, f64 payload).
struct Snapshot {
  double tau = 0.0;
  std::shared_ptr<const CylinderGrid> grid;
  std::vector<double> values;
  std::string extra_tag;
  std::vector<double> extra;

  GraphFunction graph() const { return GraphFunction(grid, values); }
};

inline constexpr std::uint32_t kSnapshotVersion = 1;

std::string encode_snapshot(const Snapshot& s);
/// Decodes one record starting at `offset`; advances `offset` past it.
Snapshot decode_snapshot(const std::string& bytes, std::size_t& offset);

void write_snapshot(const std::filesystem::path& path, const Snapshot& s);
Snapshot read_snapshot(const std::filesystem::path& path);

/// Trajectory file: concatenated records followed by an index footer
/// (u64 count, count x (f64 tau, u64 offset), u64 footer offset, "CYGI").
std::string encode_trajectory(const std::vector<Snapshot>& snaps);
void write_trajectory_file(const std::filesystem::path& path, const std::vector<Snapshot>& snaps);
std::vector<Snapshot> read_trajectory_file(const std::filesystem::path& path);
/// Reads only the index footer: (tau, offset) pairs.
std::vector<std::pair<double, std::uint64_t>> read_trajectory_index(const std::filesystem::path& path);

/// CSV export of node samples: omega components, y components, value.
std::string snapshot_csv(const Snapshot& s);

}  // namespace cylflow
