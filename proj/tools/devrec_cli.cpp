// devrec: developer-activity project recommender pipeline.
//
// Subcommands: ingest, leaderboard, recommend, synth.
// Exit codes: 0 success, 2 input parse failure, 3 configuration error,
// 4 empty result (empty store / no recommendations).

#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>

#include <CLI11.hpp>
#include <nlohmann/json.hpp>

#include "devrec/evaluation.hpp"
#include "devrec/reports.hpp"
#include "devrec/synth.hpp"

namespace fs = std::filesystem;
using namespace devrec;

namespace {

constexpr int kExitOk = 0;
constexpr int kExitParse = 2;
constexpr int kExitConfig = 3;
constexpr int kExitEmpty = 4;

EventFormat parse_format(const std::string& s) {
  if (s == "jsonl") return EventFormat::jsonl;
  if (s == "csv") return EventFormat::csv;
  throw CLI::ValidationError("--format", "expected jsonl or csv");
}

EventStore load_store(const std::vector<std::string>& paths, const std::string& format,
                      bool fail_fast, ParseReport& report) {
  EventStore merged;
  for (const auto& path : paths) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open " + path);
    ParseOptions opts{parse_format(format), fail_fast};
    ParseReport rep;
    auto store = parse_events(in, opts, &rep);
    report.lines_read += rep.lines_read;
    report.records_accepted += rep.records_accepted;
    for (auto& e : rep.errors) report.errors.push_back(std::move(e));
    // merge into one store
    for (const auto& [key, count] : store.counts()) {
      auto [di, pi, k] = key;
      int mdi = merged.intern_developer(store.developer_login(di));
      int mpi = merged.intern_project(store.project_owner(pi), store.project_name(pi));
      merged.add(mdi, mpi, static_cast<EventKind>(k), count);
    }
  }
  return merged;
}

void print_parse_warnings(const ParseReport& report) {
  for (const auto& e : report.errors)
    std::cerr << "warning: line " << e.line << ": " << e.message << "\n";
}

std::vector<MetricSpec> select_metrics(const std::string& selection) {
  std::vector<MetricSpec> specs;
  std::stringstream ss(selection);
  std::string token;
  auto add_family = [&](MetricFamily fam, bool include_unsupported) {
    for (const auto& s : metric_registry())
      if (s.family == fam && (s.supported || include_unsupported)) specs.push_back(s);
  };
  while (std::getline(ss, token, ',')) {
    if (token.empty()) continue;
    if (token == "all-single") {
      add_family(MetricFamily::single, false);
    } else if (token == "all-fusion") {
      add_family(MetricFamily::fusion_sum, false);
      add_family(MetricFamily::fusion_ratio, false);
    } else if (token == "all-binary-fusion") {
      add_family(MetricFamily::binary_fusion, false);
    } else if (token == "baseline") {
      specs.push_back(*find_metric("sun_baseline"));
    } else if (token == "all") {
      add_family(MetricFamily::single, false);
      add_family(MetricFamily::fusion_sum, false);
      add_family(MetricFamily::fusion_ratio, false);
      add_family(MetricFamily::binary_fusion, true);
      specs.push_back(*find_metric("sun_baseline"));
    } else {
      const auto* spec = find_metric(token);
      if (!spec) throw std::runtime_error("unknown metric '" + token + "'");
      specs.push_back(*spec);
    }
  }
  return specs;
}

// Similarity matrices cached on disk keyed by store digest + metric name.
SimilarityProvider make_cached_provider(const EventStore& store, const fs::path& cache_dir,
                                        int project_count) {
  std::string digest = store.digest();
  return [digest, cache_dir, project_count](const std::string& metric,
                                            const RatingMatrix& ratings) {
    fs::path file = cache_dir / (digest + "." + metric + ".sim");
    if (fs::exists(file)) {
      std::ifstream in(file, std::ios::binary);
      std::stringstream buf;
      buf << in.rdbuf();
      try {
        return SimilarityMatrix::deserialize(buf.str());
      } catch (const std::exception&) {
        // stale or corrupt cache entry: rebuild below
      }
    }
    auto sims = SimilarityMatrix::build(ratings, project_count);
    atomic_write(file.string(), sims.serialize());
    return sims;
  };
}

struct CommonOpts {
  std::vector<std::string> inputs;
  std::string format = "jsonl";
  bool fail_fast = false;
  std::string out = "out";
};

int cmd_ingest(const CommonOpts& c) {
  ParseReport report;
  auto store = load_store(c.inputs, c.format, c.fail_fast, report);
  print_parse_warnings(report);
  atomic_write((fs::path(c.out) / "store.jsonl").string(), events_jsonl(store));
  double cells = static_cast<double>(store.developer_count()) * store.project_count();
  double sparsity = cells > 0 ? 1.0 - static_cast<double>(store.counts().size()) / cells : 1.0;
  std::cout << "developers: " << store.developer_count() << "\n"
            << "projects: " << store.project_count() << "\n"
            << "events: " << store.total_events() << "\n"
            << "sparsity: " << sparsity << "\n"
            << "digest: " << store.digest() << "\n";
  if (store.total_events() == 0) {
    std::cerr << "error: empty store\n";
    return kExitEmpty;
  }
  return report.ok() ? kExitOk : kExitParse;
}

int cmd_leaderboard(const CommonOpts& c, const std::string& metrics, int k,
                    double scale_hi, bool normalize, bool no_cache,
                    bool dump_matrices) {
  ParseReport report;
  auto store = load_store(c.inputs, c.format, c.fail_fast, report);
  print_parse_warnings(report);
  if (store.total_events() == 0) {
    std::cerr << "error: empty store\n";
    return kExitEmpty;
  }
  auto specs = select_metrics(metrics);
  if (specs.empty()) {
    std::cerr << "error: no metrics selected\n";
    return kExitConfig;
  }
  SimilarityProvider provider;
  if (!no_cache)
    provider = make_cached_provider(store, fs::path(c.out) / ".cache",
                                    store.project_count());
  if (dump_matrices) {
    for (const auto& spec : specs) {
      if (!spec.supported) continue;
      auto m = compute_metric(store, spec);
      atomic_write((fs::path(c.out) / "matrices" / (spec.name + ".csv")).string(),
                   metric_matrix_csv(m, store));
    }
  }
  auto evals = run_leaderboard(store, specs, k, scale_hi, normalize, provider);
  atomic_write((fs::path(c.out) / "leaderboard.csv").string(), leaderboard_csv(evals));
  atomic_write((fs::path(c.out) / "leaderboard.md").string(), leaderboard_markdown(evals));
  atomic_write((fs::path(c.out) / "breakdown.jsonl").string(),
               breakdown_jsonl(evals, store));
  std::cout << leaderboard_markdown(evals);
  return kExitOk;
}

int cmd_recommend(const CommonOpts& c, const std::string& metric,
                  const std::string& developer, int k, double scale_hi, bool normalize) {
  ParseReport report;
  auto store = load_store(c.inputs, c.format, c.fail_fast, report);
  print_parse_warnings(report);
  auto di = store.developer_index(developer);
  if (!di) {
    std::cerr << "error: unknown developer '" << developer << "'\n";
    return kExitConfig;
  }
  const auto* spec = find_metric(metric);
  if (!spec || !spec->supported) {
    std::cerr << "error: unknown metric '" << metric << "'\n";
    return kExitConfig;
  }
  auto raw = compute_metric(store, *spec);
  if (raw.empty()) {
    std::cerr << "error: metric matrix is empty\n";
    return kExitEmpty;
  }
  auto ratings = minmax_scale(raw, 0.0, scale_hi);
  auto sims = SimilarityMatrix::build(ratings, store.project_count());
  auto recs = recommend_top_k(*di, ratings, sims, store, k, normalize);
  const auto& watched = store.watched(*di);
  std::set<std::string> watched_owners;
  for (int pi : watched) watched_owners.insert(fold(store.project_owner(pi)));

  std::vector<RecommendationList> lists{recs};
  atomic_write((fs::path(c.out) / "recommendations.csv").string(),
               recommendations_csv(lists, store));

  std::cout << "recommendation | score | full_name_match | owner_match\n";
  for (const auto& [pi, score] : recs.items) {
    bool full = watched.count(pi) > 0;
    bool owner = !full && watched_owners.count(fold(store.project_owner(pi))) > 0;
    std::cout << store.project_full_name(pi) << " | " << format_score(score) << " | "
              << (full ? store.project_full_name(pi) : "") << " | "
              << (owner ? store.project_owner(pi) : "") << "\n";
  }
  if (recs.items.empty()) {
    std::cerr << "warning: no recommendable projects for '" << developer << "'\n";
    return kExitEmpty;
  }
  return kExitOk;
}

int cmd_synth(const SynthConfig& cfg, const std::string& out) {
  auto store = generate(cfg);
  atomic_write((fs::path(out) / "events.jsonl").string(), events_jsonl(store));
  atomic_write((fs::path(out) / "events.synth.json").string(), synth_sidecar_json(cfg));
  std::cout << "developers: " << store.developer_count() << "\n"
            << "projects: " << store.project_count() << "\n"
            << "events: " << store.total_events() << "\n";
  return kExitOk;
}

// a JSON config file supplies defaults; command-line flags win
nlohmann::json load_config_file(int argc, char** argv) {
  for (int i = 1; i + 1 < argc; ++i)
    if (std::string(argv[i]) == "--config") {
      std::ifstream in(argv[i + 1]);
      if (!in) throw std::runtime_error(std::string("cannot open config ") + argv[i + 1]);
      return nlohmann::json::parse(in);
    }
  return nlohmann::json::object();
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{
      "devrec: developer activity metrics, item-similarity project "
      "recommendations, and watch-based hit-score evaluation.\n"
      "Exit codes: 0 ok, 2 parse failure, 3 config error, 4 empty result."};
  app.require_subcommand(1);

  nlohmann::json cfg_file;
  try {
    cfg_file = load_config_file(argc, argv);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitConfig;
  }
  auto cfg_or = [&](const char* key, auto fallback) {
    using T = decltype(fallback);
    return cfg_file.contains(key) ? cfg_file.at(key).get<T>() : fallback;
  };

  CommonOpts common;
  common.format = cfg_or("format", std::string("jsonl"));
  common.out = cfg_or("out", std::string("out"));
  std::string metrics = cfg_or("metrics", std::string("all"));
  int k = cfg_or("k", 5);
  double scale_hi = cfg_or("scale_hi", 10.0);
  bool normalize = cfg_or("normalize_prediction", false);
  bool no_cache = false;
  std::string developer, metric = cfg_or("metric", std::string("count"));
  std::string config_path;  // consumed by load_config_file; declared for help

  auto add_common = [&](CLI::App* sub, bool needs_input) {
    auto* in = sub->add_option("--input,-i", common.inputs, "input event file(s)");
    if (needs_input) in->required();
    sub->add_option("--format", common.format, "jsonl or csv");
    sub->add_flag("--fail-fast", common.fail_fast, "abort on first malformed line");
    sub->add_option("--out,-o", common.out, "output directory");
    sub->add_option("--config", config_path, "JSON config file (flags win)");
  };

  auto* ingest = app.add_subcommand("ingest", "parse and validate an event file");
  add_common(ingest, true);

  auto* board = app.add_subcommand("leaderboard", "run the full metric leaderboard");
  add_common(board, true);
  board->add_option("--metrics", metrics,
                    "comma list of metric names or all-single / all-fusion / "
                    "all-binary-fusion / baseline / all");
  board->add_option("--k", k, "recommendation list length");
  board->add_option("--scale-hi", scale_hi, "rating scale upper bound");
  board->add_flag("--normalize-prediction", normalize,
                  "divide predictions by total similarity mass");
  board->add_flag("--no-cache", no_cache, "disable the similarity disk cache");
  bool dump_matrices = false;
  board->add_flag("--dump-matrices", dump_matrices,
                  "also write each raw metric matrix as sparse CSV triples");

  auto* rec = app.add_subcommand("recommend", "top-k projects for one developer");
  add_common(rec, true);
  rec->add_option("--developer,-d", developer, "developer login")->required();
  rec->add_option("--metric", metric, "metric to rate projects with");
  rec->add_option("--k", k, "recommendation list length");
  rec->add_option("--scale-hi", scale_hi, "rating scale upper bound");
  rec->add_flag("--normalize-prediction", normalize, "");

  SynthConfig synth_cfg;
  synth_cfg.seed = cfg_or("seed", std::uint64_t{0});
  std::string count_dist = "uniform:5";
  std::vector<std::string> kind_weights;
  auto* synth = app.add_subcommand("synth", "generate a deterministic synthetic dataset");
  synth->add_option("--seed", synth_cfg.seed, "RNG seed");
  synth->add_option("--developers", synth_cfg.developers, "developer count")->required();
  synth->add_option("--projects", synth_cfg.projects, "project count")->required();
  synth->add_option("--density", synth_cfg.density, "active pair fraction (0,1]");
  synth->add_option("--watch-rate", synth_cfg.watch_rate, "watch edge probability");
  synth->add_option("--count-dist", count_dist, "uniform:<max> or zipf:<s>");
  synth->add_option("--kind-weight", kind_weights, "kind=weight (repeatable)");
  synth->add_option("--out,-o", common.out, "output directory");
  synth->add_option("--config", config_path, "JSON config file (flags win)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e) ? kExitConfig : kExitOk;
  }

  try {
    if (*ingest) return cmd_ingest(common);
    if (*board)
      return cmd_leaderboard(common, metrics, k, scale_hi, normalize, no_cache,
                             dump_matrices);
    if (*rec) return cmd_recommend(common, metric, developer, k, scale_hi, normalize);
    if (*synth) {
      auto colon = count_dist.find(':');
      std::string dist = count_dist.substr(0, colon);
      std::string arg = colon == std::string::npos ? "" : count_dist.substr(colon + 1);
      if (dist == "uniform") {
        synth_cfg.count_dist = CountDistribution::uniform;
        if (!arg.empty()) synth_cfg.count_max = std::stoi(arg);
      } else if (dist == "zipf") {
        synth_cfg.count_dist = CountDistribution::zipf;
        if (!arg.empty()) synth_cfg.zipf_s = std::stod(arg);
      } else {
        std::cerr << "error: bad --count-dist\n";
        return kExitConfig;
      }
      for (const auto& kw : kind_weights) {
        auto eq = kw.find('=');
        if (eq == std::string::npos) {
          std::cerr << "error: bad --kind-weight '" << kw << "'\n";
          return kExitConfig;
        }
        auto kind = parse_event_kind(kw.substr(0, eq));
        if (!kind) {
          std::cerr << "error: unknown kind in --kind-weight '" << kw << "'\n";
          return kExitConfig;
        }
        synth_cfg.kind_weights[*kind] = std::stod(kw.substr(eq + 1));
      }
      return cmd_synth(synth_cfg, common.out);
    }
  } catch (const ParseFailure& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitParse;
  } catch (const std::invalid_argument& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitConfig;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitConfig;
  }
  return kExitOk;
}
