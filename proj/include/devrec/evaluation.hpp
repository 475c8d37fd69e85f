#pragma once

#include <functional>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "devrec/recommender.hpp"

namespace devrec {

struct HitBreakdown {
  int developer;
  int hit_fullname = 0;
  int hit_owner = 0;
  int num_watched = 0;
  int n = 0;
  double score = 0.0;  // percent in [0, 100]
  bool skipped = false;  // empty watch set: unmeasurable, not wrong
};

struct LeaderboardRow {
  std::string metric;
  std::optional<double> mean_score;  // empty when no developer was evaluable
  int developers_evaluated = 0;
  bool unsupported = false;  // rendered as "x"
};

// Hit scoring against the watch ground truth: full-name matches count 1,
// owner-only matches count 0.5 (at most once per recommended project, and
// never for a project that is already a full-name hit). The denominator is
// n when the developer watches at least n projects, num_watched otherwise.
// Scores are capped at 100.
HitBreakdown hit_score(const RecommendationList& recs, const std::set<int>& watched,
                       int n, const EventStore& store);

struct MetricEvaluation {
  LeaderboardRow row;
  std::vector<HitBreakdown> breakdowns;  // one per developer, skipped included
};

MetricEvaluation evaluate_metric(const RatingMatrix& ratings, const SimilarityMatrix& sims,
                                 const EventStore& store, int k = 5,
                                 bool normalize = false);

// One row per spec, sorted by descending mean hit score then metric name.
// Unsupported specs (ratio-based binary fusions) keep their place at the
// bottom with no score.
// Optional hook for reusing similarity matrices across runs (disk cache).
using SimilarityProvider =
    std::function<SimilarityMatrix(const std::string& metric, const RatingMatrix&)>;

std::vector<MetricEvaluation> run_leaderboard(const EventStore& store,
                                              const std::vector<MetricSpec>& specs,
                                              int k = 5, double scale_hi = 10.0,
                                              bool normalize = false,
                                              const SimilarityProvider& sims = {});

}  // namespace devrec
