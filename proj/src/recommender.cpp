#include "devrec/recommender.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <sstream>
#include <stdexcept>

namespace devrec {

const std::vector<std::pair<int, double>> SimilarityMatrix::kEmpty;

double cosine_similarity(std::span<const double> a, std::span<const double> b) {
  if (a.size() != b.size())
    throw std::invalid_argument("cosine: vectors over different universes");
  double dot = 0.0, na = 0.0, nb = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) {
    dot += a[i] * b[i];
    na += a[i] * a[i];
    nb += b[i] * b[i];
  }
  if (na == 0.0 || nb == 0.0) return 0.0;
  return dot / (std::sqrt(na) * std::sqrt(nb));
}

SimilarityMatrix SimilarityMatrix::build(const RatingMatrix& ratings, int project_count) {
  SimilarityMatrix sm;
  sm.norms_.assign(project_count, 0.0);
  std::map<std::pair<int, int>, double> dots;  // (a<b) -> column dot product
  for (const auto& row : ratings.rows) {
    for (auto it = row.begin(); it != row.end(); ++it) {
      sm.norms_[it->first] += it->second * it->second;
      for (auto jt = std::next(it); jt != row.end(); ++jt)
        dots[{it->first, jt->first}] += it->second * jt->second;
    }
  }
  for (auto& n : sm.norms_) n = std::sqrt(n);
  sm.adj_.assign(project_count, {});
  for (const auto& [pq, dot] : dots) {
    auto [p, q] = pq;
    double s = dot / (sm.norms_[p] * sm.norms_[q]);
    if (s > 0.0) {
      sm.adj_[p].emplace_back(q, s);
      sm.adj_[q].emplace_back(p, s);
    }
  }
  for (auto& nb : sm.adj_)
    std::sort(nb.begin(), nb.end());
  return sm;
}

double SimilarityMatrix::at(int a, int b) const {
  if (a == b) return nonzero_column(a) ? 1.0 : 0.0;
  const auto& nb = neighbors(a);
  auto it = std::lower_bound(nb.begin(), nb.end(), std::make_pair(b, 0.0),
                             [](const auto& x, const auto& y) { return x.first < y.first; });
  if (it != nb.end() && it->first == b) return it->second;
  return 0.0;
}

const std::vector<std::pair<int, double>>& SimilarityMatrix::neighbors(int p) const {
  if (p < 0 || p >= static_cast<int>(adj_.size())) return kEmpty;
  return adj_[p];
}

std::string SimilarityMatrix::serialize() const {
  std::ostringstream out;
  out.precision(17);
  out << "simcache v1 " << norms_.size() << "\n";
  for (double n : norms_) out << n << "\n";
  for (std::size_t p = 0; p < adj_.size(); ++p) {
    for (const auto& [q, s] : adj_[p])
      if (static_cast<int>(p) < q) out << p << " " << q << " " << s << "\n";
  }
  return out.str();
}

SimilarityMatrix SimilarityMatrix::deserialize(const std::string& text) {
  std::istringstream in(text);
  std::string tag, ver;
  std::size_t n = 0;
  in >> tag >> ver >> n;
  if (tag != "simcache" || ver != "v1") throw std::runtime_error("bad similarity cache");
  SimilarityMatrix sm;
  sm.norms_.resize(n);
  for (auto& x : sm.norms_) in >> x;
  sm.adj_.assign(n, {});
  int p, q;
  double s;
  while (in >> p >> q >> s) {
    sm.adj_[p].emplace_back(q, s);
    sm.adj_[q].emplace_back(p, s);
  }
  for (auto& nb : sm.adj_)
    std::sort(nb.begin(), nb.end());
  return sm;
}

PredictedRating predict_rating(int developer, int unknown, const RatingMatrix& ratings,
                               const SimilarityMatrix& sims, bool normalize) {
  const auto& row = ratings.rows.at(developer);
  if (row.count(unknown))
    throw std::invalid_argument("not an unknown project for this developer");
  double score = 0.0, mass = 0.0;
  for (const auto& [p, rating] : row) {
    double s = sims.at(p, unknown);
    score += rating * s;
    mass += s;
  }
  if (normalize && mass > 0.0) score /= mass;
  return {developer, unknown, score};
}

RecommendationList recommend_top_k(int developer, const RatingMatrix& ratings,
                                   const SimilarityMatrix& sims, const EventStore& store,
                                   int k, bool normalize) {
  if (k < 1) throw std::invalid_argument("k must be >= 1");
  RecommendationList out{developer, {}};
  if (developer < 0 || developer >= static_cast<int>(ratings.rows.size())) return out;
  const auto& row = ratings.rows[developer];
  std::map<int, double> score, mass;
  for (const auto& [p, rating] : row)
    for (const auto& [q, s] : sims.neighbors(p)) {
      if (row.count(q)) continue;  // known projects are never candidates
      score[q] += rating * s;
      mass[q] += s;
    }
  std::vector<std::pair<int, double>> cand;
  for (auto& [q, sc] : score) {
    if (normalize && mass[q] > 0.0) sc /= mass[q];
    if (sc > 0.0) cand.emplace_back(q, sc);
  }
  std::sort(cand.begin(), cand.end(), [&](const auto& a, const auto& b) {
    if (a.second != b.second) return a.second > b.second;
    return fold(store.project_full_name(a.first)) < fold(store.project_full_name(b.first));
  });
  if (static_cast<int>(cand.size()) > k) cand.resize(k);
  out.items = std::move(cand);
  return out;
}

}  // namespace devrec
