#include "devrec/event_store.hpp"

#include <algorithm>
#include <array>
#include <cctype>
#include <fstream>
#include <sstream>

#include <nlohmann/json.hpp>

namespace devrec {

namespace {

constexpr std::array<std::string_view, kNumEventKinds> kKindNames = {
    "issue_opened",  "issue_commented", "issue_closed", "issue_closed_with_pr",
    "issue_assigned", "commit_commented", "commit_authored", "commit_committed",
    "pr_opened",     "pr_merged",       "pr_assigned",  "pr_commented",
    "pr_closed",     "watch",           "star",         "create",
};

bool has_whitespace(std::string_view s) {
  return std::any_of(s.begin(), s.end(),
                     [](unsigned char c) { return std::isspace(c) != 0; });
}

}  // namespace

std::string_view to_string(EventKind k) { return kKindNames[static_cast<int>(k)]; }

std::optional<EventKind> parse_event_kind(std::string_view s) {
  for (int i = 0; i < kNumEventKinds; ++i) {
    if (kKindNames[i] == s) return static_cast<EventKind>(i);
  }
  // accept "like" as an alias for star (Sun-style naming)
  if (s == "like") return EventKind::star;
  return std::nullopt;
}

std::string fold(std::string_view s) {
  std::string out(s);
  std::transform(out.begin(), out.end(), out.begin(),
                 [](unsigned char c) { return static_cast<char>(std::tolower(c)); });
  return out;
}

std::optional<int> EventStore::developer_index(std::string_view login) const {
  auto it = dev_index_.find(fold(login));
  if (it == dev_index_.end()) return std::nullopt;
  return it->second;
}

std::optional<int> EventStore::project_index(std::string_view full_name) const {
  auto it = proj_index_.find(fold(full_name));
  if (it == proj_index_.end()) return std::nullopt;
  return it->second;
}

std::int64_t EventStore::raw_count(int di, int pi, EventKind k) const {
  auto it = counts_.find({di, pi, static_cast<int>(k)});
  return it == counts_.end() ? 0 : it->second;
}

std::int64_t EventStore::raw_count(const DeveloperId& d, const ProjectId& p,
                                   EventKind k) const {
  auto di = developer_index(d.login);
  auto pi = project_index(p.full_name());
  if (!di || !pi) return 0;
  return raw_count(*di, *pi, k);
}

int EventStore::intern_developer(std::string_view login) {
  auto key = fold(login);
  auto it = dev_index_.find(key);
  if (it != dev_index_.end()) return it->second;
  int di = static_cast<int>(developers_.size());
  developers_.emplace_back(login);
  watch_.emplace_back();
  dev_index_.emplace(std::move(key), di);
  return di;
}

int EventStore::intern_project(std::string_view owner, std::string_view name) {
  auto key = fold(owner) + "/" + fold(name);
  auto it = proj_index_.find(key);
  if (it != proj_index_.end()) return it->second;
  int pi = static_cast<int>(owners_.size());
  owners_.emplace_back(owner);
  names_.emplace_back(name);
  proj_index_.emplace(std::move(key), pi);
  return pi;
}

void EventStore::add(int di, int pi, EventKind k, std::int64_t count) {
  counts_[{di, pi, static_cast<int>(k)}] += count;
  total_events_ += count;
  if (k == EventKind::watch) watch_[di].insert(pi);
}

std::string EventStore::normalized_jsonl() const {
  // sort by folded developer, folded project full name, kind
  std::vector<std::tuple<std::string, std::string, int, std::int64_t>> recs;
  recs.reserve(counts_.size());
  for (const auto& [key, count] : counts_) {
    auto [di, pi, k] = key;
    recs.emplace_back(fold(developers_[di]), fold(project_full_name(pi)), k, count);
  }
  std::sort(recs.begin(), recs.end());
  std::ostringstream out;
  for (const auto& [dev, proj, k, count] : recs) {
    auto slash = proj.find('/');
    nlohmann::json j{{"developer", dev},
                     {"owner", proj.substr(0, slash)},
                     {"repo", proj.substr(slash + 1)},
                     {"kind", to_string(static_cast<EventKind>(k))},
                     {"count", count}};
    out << j.dump() << "\n";
  }
  return out.str();
}

std::string EventStore::digest() const {
  std::uint64_t h = 1469598103934665603ULL;  // FNV-1a 64
  for (unsigned char c : normalized_jsonl()) {
    h ^= c;
    h *= 1099511628211ULL;
  }
  char buf[17];
  std::snprintf(buf, sizeof(buf), "%016llx", static_cast<unsigned long long>(h));
  return buf;
}

namespace {

struct RawRecord {
  std::string developer, owner, repo, kind;
  std::int64_t count = 1;
};

void ingest_record(EventStore& store, const RawRecord& r, std::size_t line) {
  if (r.developer.empty() || has_whitespace(r.developer))
    throw ParseFailure(line, "invalid developer login '" + r.developer + "'");
  if (r.owner.empty() || r.repo.empty())
    throw ParseFailure(line, "empty project owner or name");
  auto kind = parse_event_kind(r.kind);
  if (!kind) throw ParseFailure(line, "unknown event kind '" + r.kind + "'");
  if (r.count < 1) throw ParseFailure(line, "count must be >= 1");
  int di = store.intern_developer(r.developer);
  int pi = store.intern_project(r.owner, r.repo);
  store.add(di, pi, *kind, r.count);
}

RawRecord parse_jsonl_line(const std::string& line, std::size_t lineno) {
  nlohmann::json j = nlohmann::json::parse(line, nullptr, false);
  if (j.is_discarded() || !j.is_object())
    throw ParseFailure(lineno, "malformed JSON object");
  RawRecord r;
  try {
    r.developer = j.at("developer").get<std::string>();
    r.owner = j.at("owner").get<std::string>();
    r.repo = j.at("repo").get<std::string>();
    r.kind = j.at("kind").get<std::string>();
    if (j.contains("count")) r.count = j.at("count").get<std::int64_t>();
  } catch (const nlohmann::json::exception& e) {
    throw ParseFailure(lineno, e.what());
  }
  return r;
}

std::vector<std::string> split_csv(const std::string& line) {
  // plain splitting; identifiers in this format never contain commas
  std::vector<std::string> out;
  std::string cur;
  for (char c : line) {
    if (c == ',') {
      out.push_back(cur);
      cur.clear();
    } else {
      cur += c;
    }
  }
  out.push_back(cur);
  return out;
}

}  // namespace

EventStore parse_events(std::istream& in, const ParseOptions& opts, ParseReport* report) {
  EventStore store;
  ParseReport local;
  ParseReport& rep = report ? *report : local;
  std::string line;
  std::size_t lineno = 0;
  bool csv_header_seen = false;
  while (std::getline(in, line)) {
    ++lineno;
    ++rep.lines_read;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty()) continue;
    try {
      RawRecord r;
      if (opts.format == EventFormat::jsonl) {
        r = parse_jsonl_line(line, lineno);
      } else {
        auto cols = split_csv(line);
        if (!csv_header_seen) {
          csv_header_seen = true;
          if (!cols.empty() && fold(cols[0]) == "developer") continue;  // header row
        }
        if (cols.size() < 4 || cols.size() > 5)
          throw ParseFailure(lineno, "expected 4 or 5 CSV columns");
        r.developer = cols[0];
        r.owner = cols[1];
        r.repo = cols[2];
        r.kind = cols[3];
        if (cols.size() == 5 && !cols[4].empty()) {
          try {
            r.count = std::stoll(cols[4]);
          } catch (const std::exception&) {
            throw ParseFailure(lineno, "bad count '" + cols[4] + "'");
          }
        }
      }
      ingest_record(store, r, lineno);
      ++rep.records_accepted;
    } catch (const ParseFailure& e) {
      if (opts.fail_fast) throw;
      rep.errors.push_back({e.line(), e.what()});
    }
  }
  return store;
}

EventStore parse_events_file(const std::string& path, const ParseOptions& opts,
                             ParseReport* report) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open " + path);
  return parse_events(in, opts, report);
}

}  // namespace devrec
