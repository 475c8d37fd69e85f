#include "devrec/evaluation.hpp"

#include <algorithm>

namespace devrec {

HitBreakdown hit_score(const RecommendationList& recs, const std::set<int>& watched,
                       int n, const EventStore& store) {
  if (n < 1) throw std::invalid_argument("n must be >= 1");
  HitBreakdown hb;
  hb.developer = recs.developer;
  hb.n = n;
  hb.num_watched = static_cast<int>(watched.size());
  if (watched.empty()) {
    hb.skipped = true;
    return hb;
  }
  std::set<std::string> watched_owners;
  for (int pi : watched) watched_owners.insert(fold(store.project_owner(pi)));
  for (const auto& [pi, score] : recs.items) {
    (void)score;
    if (watched.count(pi)) {
      ++hb.hit_fullname;
    } else if (watched_owners.count(fold(store.project_owner(pi)))) {
      ++hb.hit_owner;  // half credit, once per recommended project
    }
  }
  int denom = hb.num_watched >= n ? n : hb.num_watched;
  hb.score = 100.0 * (hb.hit_fullname + 0.5 * hb.hit_owner) / denom;
  hb.score = std::min(hb.score, 100.0);
  return hb;
}

MetricEvaluation evaluate_metric(const RatingMatrix& ratings, const SimilarityMatrix& sims,
                                 const EventStore& store, int k, bool normalize) {
  MetricEvaluation ev;
  ev.row.metric = ratings.source;
  double total = 0.0;
  int evaluated = 0;
  for (int di = 0; di < store.developer_count(); ++di) {
    auto recs = recommend_top_k(di, ratings, sims, store, k, normalize);
    auto hb = hit_score(recs, store.watched(di), k, store);
    if (!hb.skipped) {
      total += hb.score;
      ++evaluated;
    }
    ev.breakdowns.push_back(hb);
  }
  ev.row.developers_evaluated = evaluated;
  if (evaluated > 0) ev.row.mean_score = total / evaluated;
  return ev;
}

std::vector<MetricEvaluation> run_leaderboard(const EventStore& store,
                                              const std::vector<MetricSpec>& specs,
                                              int k, double scale_hi, bool normalize,
                                              const SimilarityProvider& sim_provider) {
  if (specs.empty()) throw std::invalid_argument("no metrics selected");
  std::vector<MetricEvaluation> evals;
  for (const auto& spec : specs) {
    if (!spec.supported) {
      MetricEvaluation ev;
      ev.row.metric = spec.name;
      ev.row.unsupported = true;
      evals.push_back(std::move(ev));
      continue;
    }
    auto raw = compute_metric(store, spec);
    if (raw.empty()) {
      MetricEvaluation ev;
      ev.row.metric = spec.name;
      evals.push_back(std::move(ev));
      continue;
    }
    auto ratings = minmax_scale(raw, 0.0, scale_hi);
    auto sims = sim_provider ? sim_provider(spec.name, ratings)
                             : SimilarityMatrix::build(ratings, store.project_count());
    evals.push_back(evaluate_metric(ratings, sims, store, k, normalize));
  }
  std::stable_sort(evals.begin(), evals.end(), [](const auto& a, const auto& b) {
    // scored rows first by descending mean, ties by name; then unscored rows
    double sa = a.row.unsupported || !a.row.mean_score ? -1.0 : *a.row.mean_score;
    double sb = b.row.unsupported || !b.row.mean_score ? -1.0 : *b.row.mean_score;
    if (sa != sb) return sa > sb;
    return a.row.metric < b.row.metric;
  });
  return evals;
}

}  // namespace devrec
