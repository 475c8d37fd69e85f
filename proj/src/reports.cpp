#include "devrec/reports.hpp"

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>

#include <nlohmann/json.hpp>

namespace devrec {

void atomic_write(const std::string& path, const std::string& content) {
  namespace fs = std::filesystem;
  fs::path target(path);
  if (target.has_parent_path()) fs::create_directories(target.parent_path());
  fs::path tmp = target;
  tmp += ".tmp";
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) throw std::runtime_error("cannot write " + tmp.string());
    out << content;
  }
  fs::rename(tmp, target);
}

std::string format_score(double score) {
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%.1f", score);
  return buf;
}

std::string leaderboard_csv(const std::vector<MetricEvaluation>& evals) {
  std::ostringstream out;
  out << "metric,hit_score,developers\n";
  for (const auto& ev : evals) {
    const auto& r = ev.row;
    out << r.metric << ",";
    if (r.unsupported)
      out << "x";
    else if (r.mean_score)
      out << format_score(*r.mean_score);
    else
      out << "n/a";
    out << "," << r.developers_evaluated << "\n";
  }
  return out.str();
}

std::string leaderboard_markdown(const std::vector<MetricEvaluation>& evals) {
  std::ostringstream out;
  out << "| Metric | Hit Score (%) | Developers |\n";
  out << "|---|---|---|\n";
  for (const auto& ev : evals) {
    const auto& r = ev.row;
    out << "| " << r.metric << " | ";
    if (r.unsupported)
      out << "x";
    else if (r.mean_score)
      out << format_score(*r.mean_score);
    else
      out << "n/a";
    out << " | " << r.developers_evaluated << " |\n";
  }
  return out.str();
}

std::string breakdown_jsonl(const std::vector<MetricEvaluation>& evals,
                            const EventStore& store) {
  std::ostringstream out;
  for (const auto& ev : evals) {
    for (const auto& hb : ev.breakdowns) {
      nlohmann::json j{{"metric", ev.row.metric},
                       {"developer", store.developer_login(hb.developer)},
                       {"hit_fullname", hb.hit_fullname},
                       {"hit_owner", hb.hit_owner},
                       {"num_watched", hb.num_watched},
                       {"n", hb.n},
                       {"score", hb.score},
                       {"skipped", hb.skipped}};
      out << j.dump() << "\n";
    }
  }
  return out.str();
}

std::string recommendations_csv(const std::vector<RecommendationList>& lists,
                                const EventStore& store) {
  std::ostringstream out;
  out << "developer,rank,project,score\n";
  for (const auto& list : lists) {
    int rank = 1;
    for (const auto& [pi, score] : list.items) {
      char buf[32];
      std::snprintf(buf, sizeof(buf), "%.6f", score);
      out << store.developer_login(list.developer) << "," << rank++ << ","
          << store.project_full_name(pi) << "," << buf << "\n";
    }
  }
  return out.str();
}

std::string metric_matrix_csv(const MetricMatrix& m, const EventStore& store) {
  std::ostringstream out;
  out << "developer,project,value\n";
  out.precision(17);
  for (std::size_t di = 0; di < m.rows.size(); ++di)
    for (const auto& [pi, v] : m.rows[di])
      out << store.developer_login(static_cast<int>(di)) << ","
          << store.project_full_name(pi) << "," << v << "\n";
  return out.str();
}

std::string events_jsonl(const EventStore& store) { return store.normalized_jsonl(); }

std::string events_csv(const EventStore& store) {
  std::ostringstream out;
  out << "developer,owner,repo,kind,count\n";
  for (const auto& [key, count] : store.counts()) {
    auto [di, pi, k] = key;
    out << fold(store.developer_login(di)) << "," << fold(store.project_owner(pi)) << ","
        << fold(store.project_name(pi)) << "," << to_string(static_cast<EventKind>(k))
        << "," << count << "\n";
  }
  return out.str();
}

}  // namespace devrec
