#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <variant>
#include <vector>

#include "hcons/intern.hpp"
#include "hcons/memo.hpp"

namespace hcons {

inline constexpr int kReportSchema = 1;

/// One command's outcome as emitted on stdout. Serialization is deterministic
/// apart from wall_time_ms.
struct RunReport {
  std::string command;
  std::optional<std::uint64_t> size;  // benchmark size, when there is one
  std::variant<bool, std::vector<std::uint64_t>> result = false;
  std::uint64_t node_count = 0;
  PoolStats pool_stats;
  std::vector<std::pair<std::string, MemoStats>> memo_stats;
  double wall_time_ms = 0.0;
};

/// Single-line JSON object with a "schema" field.
std::string to_json(const RunReport& r);

}  // namespace hcons
