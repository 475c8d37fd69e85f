#pragma once

#include <cstdint>
#include <iosfwd>
#include <map>
#include <optional>
#include <set>
#include <stdexcept>
#include <tuple>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

namespace devrec {

// One developer action kind on one project. The first 12 are the single
// developer metrics; pr_closed only appears inside the pr_related fusion;
// watch is ground truth; star/create feed the like-star-create baseline.
enum class EventKind : int {
  issue_opened = 0,
  issue_commented,
  issue_closed,
  issue_closed_with_pr,
  issue_assigned,
  commit_commented,
  commit_authored,
  commit_committed,
  pr_opened,
  pr_merged,
  pr_assigned,
  pr_commented,
  pr_closed,
  watch,
  star,
  create,
};

inline constexpr int kNumEventKinds = 16;
inline constexpr int kNumSingleKinds = 12;   // Table of single metrics
inline constexpr int kNumActivityKinds = 13; // singles + pr_closed

std::string_view to_string(EventKind k);
std::optional<EventKind> parse_event_kind(std::string_view s);

// Case-insensitive fold used for all identifier comparisons (GitHub login
// semantics). Original casing is preserved separately for display.
std::string fold(std::string_view s);

struct DeveloperId {
  std::string login;  // display casing
  bool operator==(const DeveloperId& o) const { return fold(login) == fold(o.login); }
};

struct ProjectId {
  std::string owner;
  std::string name;
  std::string full_name() const { return owner + "/" + name; }
  bool operator==(const ProjectId& o) const {
    return fold(full_name()) == fold(o.full_name());
  }
};

struct ActivityEvent {
  DeveloperId developer;
  ProjectId project;
  EventKind kind;
  std::int64_t count = 1;
};

enum class EventFormat { jsonl, csv };

struct ParseError {
  std::size_t line;
  std::string message;
};

struct ParseReport {
  std::size_t lines_read = 0;
  std::size_t records_accepted = 0;
  std::vector<ParseError> errors;
  bool ok() const { return errors.empty(); }
};

class ParseFailure : public std::runtime_error {
 public:
  ParseFailure(std::size_t line, const std::string& msg)
      : std::runtime_error("line " + std::to_string(line) + ": " + msg), line_(line) {}
  std::size_t line() const { return line_; }

 private:
  std::size_t line_;
};

// Immutable once built: ingestion is single-writer, readers share freely.
class EventStore {
 public:
  int developer_count() const { return static_cast<int>(developers_.size()); }
  int project_count() const { return static_cast<int>(owners_.size()); }

  const std::string& developer_login(int di) const { return developers_[di]; }
  const std::string& project_owner(int pi) const { return owners_[pi]; }
  const std::string& project_name(int pi) const { return names_[pi]; }
  std::string project_full_name(int pi) const { return owners_[pi] + "/" + names_[pi]; }

  std::optional<int> developer_index(std::string_view login) const;
  std::optional<int> project_index(std::string_view full_name) const;

  std::int64_t raw_count(int di, int pi, EventKind k) const;
  std::int64_t raw_count(const DeveloperId& d, const ProjectId& p, EventKind k) const;

  // Projects with a watch event for this developer, ascending index order.
  const std::set<int>& watched(int di) const { return watch_[di]; }

  std::int64_t total_events() const { return total_events_; }

  // aggregated (developer, project, kind) -> count, deterministic order
  const std::map<std::tuple<int, int, int>, std::int64_t>& counts() const {
    return counts_;
  }

  // Deterministic normalized serialization: aggregated records, one JSONL
  // line per (developer, project, kind), sorted by folded keys. Identical
  // stores serialize identically regardless of input order.
  std::string normalized_jsonl() const;

  // FNV-1a digest of normalized_jsonl(), hex; used as cache key.
  std::string digest() const;

  // builder interface, used by parse_events and synth
  int intern_developer(std::string_view login);
  int intern_project(std::string_view owner, std::string_view name);
  void add(int di, int pi, EventKind k, std::int64_t count);

 private:
  std::vector<std::string> developers_;
  std::vector<std::string> owners_, names_;
  std::unordered_map<std::string, int> dev_index_;   // folded login
  std::unordered_map<std::string, int> proj_index_;  // folded full name
  std::map<std::tuple<int, int, int>, std::int64_t> counts_;
  std::vector<std::set<int>> watch_;
  std::int64_t total_events_ = 0;
};

struct ParseOptions {
  EventFormat format = EventFormat::jsonl;
  bool fail_fast = false;  // false: skip bad lines, collect warnings
};

EventStore parse_events(std::istream& in, const ParseOptions& opts, ParseReport* report = nullptr);
EventStore parse_events_file(const std::string& path, const ParseOptions& opts,
                             ParseReport* report = nullptr);

}  // namespace devrec
