#include "hcons/report.hpp"

#include "json.hpp"

namespace hcons {

std::string to_json(const RunReport& r) {
  nlohmann::ordered_json j;
  j["schema"] = kReportSchema;
  j["command"] = r.command;
  if (r.size) j["size"] = *r.size;
  if (const bool* b = std::get_if<bool>(&r.result)) {
    j["result"] = *b;
  } else {
    j["result"] = std::get<std::vector<std::uint64_t>>(r.result);
  }
  j["node_count"] = r.node_count;
  j["pool_stats"] = {{"node_count", r.pool_stats.node_count},
                     {"intern_hits", r.pool_stats.intern_hits},
                     {"intern_misses", r.pool_stats.intern_misses}};
  nlohmann::ordered_json memo = nlohmann::ordered_json::object();
  for (const auto& [name, s] : r.memo_stats) {
    memo[name] = {{"hits", s.hits}, {"misses", s.misses}, {"body_evaluations", s.body_evaluations}};
  }
  j["memo_stats"] = std::move(memo);
  j["wall_time_ms"] = r.wall_time_ms;
  return j.dump();
}

}  // namespace hcons
