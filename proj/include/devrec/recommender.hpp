#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <unordered_map>
#include <utility>
#include <vector>

#include "devrec/metrics.hpp"

namespace devrec {

// Cosine of two non-negative vectors over the same developer universe.
// Either norm zero yields 0 (the zero-vector rule), so the range is [0, 1].
double cosine_similarity(std::span<const double> a, std::span<const double> b);

// Pairwise project-project cosine similarity over rating columns. Only
// co-supported pairs are stored; everything else is 0. Self-similarity is 1
// for projects with a nonzero column and 0 for zero columns.
class SimilarityMatrix {
 public:
  static SimilarityMatrix build(const RatingMatrix& ratings, int project_count);

  double at(int a, int b) const;
  bool nonzero_column(int p) const { return p < (int)norms_.size() && norms_[p] > 0.0; }

  // neighbors of p with similarity > 0, ascending project index
  const std::vector<std::pair<int, double>>& neighbors(int p) const;

  int project_count() const { return static_cast<int>(norms_.size()); }

  // serialization for the on-disk cache
  std::string serialize() const;
  static SimilarityMatrix deserialize(const std::string& text);

 private:
  std::vector<double> norms_;
  std::vector<std::vector<std::pair<int, double>>> adj_;
  static const std::vector<std::pair<int, double>> kEmpty;
};

struct PredictedRating {
  int developer;
  int project;
  double score;
};

struct RecommendationList {
  int developer;
  std::vector<std::pair<int, double>> items;  // (project, score), ranked
};

// Dot product of the developer's known ratings with the similarities to the
// unknown project; no normalization by similarity mass unless requested.
PredictedRating predict_rating(int developer, int unknown, const RatingMatrix& ratings,
                               const SimilarityMatrix& sims, bool normalize = false);

// Top-k unknown projects by predicted score. Zero-score candidates are
// dropped, so the list may be shorter than k. Ties break by ascending folded
// full name. A developer with no row yields an empty list.
RecommendationList recommend_top_k(int developer, const RatingMatrix& ratings,
                                   const SimilarityMatrix& sims, const EventStore& store,
                                   int k = 5, bool normalize = false);

}  // namespace devrec
