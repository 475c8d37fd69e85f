#pragma once

#include <string>
#include <vector>

#include "devrec/evaluation.hpp"

namespace devrec {

// temp-file + rename, so readers never observe a partial report
void atomic_write(const std::string& path, const std::string& content);

std::string leaderboard_csv(const std::vector<MetricEvaluation>& evals);
std::string leaderboard_markdown(const std::vector<MetricEvaluation>& evals);
std::string breakdown_jsonl(const std::vector<MetricEvaluation>& evals,
                            const EventStore& store);
std::string recommendations_csv(const std::vector<RecommendationList>& lists,
                                const EventStore& store);

// sparse triples `developer,project,value`, sorted, for golden fixtures
std::string metric_matrix_csv(const MetricMatrix& m, const EventStore& store);

std::string events_jsonl(const EventStore& store);  // normalized export
std::string events_csv(const EventStore& store);

std::string format_score(double score);  // one-decimal rendering

}  // namespace devrec
