#include "tforge/search.hpp"

#include "tforge/json_io.hpp"

#include <algorithm>
#include <chrono>
#include <condition_variable>
#include <fstream>
#include <mutex>
#include <stdexcept>
#include <thread>
#include <unordered_map>
#include <unordered_set>

namespace tforge {

using nlohmann::json;

const char* outcome_name(SearchOutcome o) {
  switch (o) {
    case SearchOutcome::Found: return "Found";
    case SearchOutcome::ExhaustedNone: return "ExhaustedNone";
    case SearchOutcome::BudgetExceeded: return "BudgetExceeded";
  }
  return "?";
}

namespace {

constexpr std::size_t kFailMemoLimit = 1 << 16;
constexpr std::size_t kSolvedMemoLimit = 1 << 14;

// Tile edges lying on each target side X, Y, Z, by class a, b, c.
using SideCounts = std::array<std::array<long, 3>, 3>;

struct Pending {
  Region region;
  int creator;  // depth of the frame whose placement produced the region
};

struct Frame {
  Region region;
  int creator = -1;
  std::vector<Expansion> children;
  std::size_t next = 0;
  std::size_t mark = 0;
  std::vector<Pending> rest;
  SideCounts counts{};
  bool solved = false;
};

// Translation-normalized boundary, used as the memo key.
struct ShapeKey {
  std::vector<Point> pts;
  friend bool operator==(const ShapeKey&, const ShapeKey&) = default;
};

struct ShapeKeyHash {
  std::size_t operator()(const ShapeKey& k) const noexcept {
    std::size_t h = k.pts.size();
    for (const auto& p : k.pts) h = h * 1000003u ^ p.hash();
    return h;
  }
};

ShapeKey key_of(const Region& r) {
  ShapeKey k;
  k.pts.reserve(r.size());
  for (const auto& p : r.boundary) k.pts.push_back(p - r.boundary[0]);
  return k;
}

Placement translated(const Placement& p, const Vec2& by) {
  return {{p.v[0] + by, p.v[1] + by, p.v[2] + by}, p.mirrored};
}

struct Instance {
  TileShape tile;
  TriangleSpec target;
  SearchConfig config;
  TilingContext ctx;
  std::array<std::pair<Point, Point>, 3> sides;  // X = BC, Y = CA, Z = AB
  std::vector<DMatrix> allowed;                  // used only with paper pruning
  QRoot3 twice_target_area;

  Instance(const TileShape& t, const TriangleSpec& tri, const SearchConfig& cfg, Chirality chirality)
      : tile(t), target(tri), config(cfg), ctx(t, tri.X, chirality) {
    const auto& v = tri.vertices;
    sides = {{{v[1], v[2]}, {v[2], v[0]}, {v[0], v[1]}}};
    twice_target_area = twice_signed_area(tri.boundary());
  }

  int edge_class(const QRoot3& len2) const {
    if (len2 == tile.a * tile.a) return 0;
    if (len2 == tile.b * tile.b) return 1;
    return 2;
  }

  void add_counts(SideCounts& c, const Placement& p) const {
    for (std::size_t k = 0; k < 3; ++k) {
      const Point& s = p.v[k];
      const Point& e = p.v[(k + 1) % 3];
      for (std::size_t side = 0; side < 3; ++side) {
        const auto& [q0, q1] = sides[side];
        if (orient(q0, q1, s) == 0 && orient(q0, q1, e) == 0) {
          ++c[side][static_cast<std::size_t>(edge_class(norm2(e - s)))];
          break;
        }
      }
    }
  }

  bool counts_ok(const SideCounts& c) const {
    return std::any_of(allowed.begin(), allowed.end(), [&](const DMatrix& m) {
      for (std::size_t s = 0; s < 3; ++s)
        for (std::size_t k = 0; k < 3; ++k)
          if (c[s][k] > m.rows[s][k]) return false;
      return true;
    });
  }
};

enum class TaskStatus { Found, Fail, Capped, Cancelled };

struct TaskResult {
  TaskStatus status = TaskStatus::Fail;
  int backjump = -1;
  std::uint64_t nodes = 0;
  std::uint64_t memo_hits = 0;
  std::vector<Placement> placements;
  json partial;
};

struct TaskStart {
  std::vector<Pending> pending;
  std::vector<Placement> placements;
  SideCounts counts{};
};

json pending_to_json(const std::vector<Pending>& ps) {
  json a = json::array();
  for (const auto& p : ps) a.push_back({{"region", p.region}, {"creator", p.creator}});
  return a;
}

std::vector<Pending> pending_from_json(const json& a) {
  std::vector<Pending> out;
  for (const auto& p : a) out.push_back({p.at("region").get<Region>(), p.at("creator").get<int>()});
  return out;
}

// Depth-first search over one subtree.  Each frame tiles one corner of the
// top pending component.  A component that cannot be tiled sends the search
// back to the frame that created it; choices made for unrelated components in
// between cannot help.
class Runner {
 public:
  Runner(const Instance& in, int base_depth) : in_(in), base_(base_depth) {
    memo_ = !in.config.paper_pruning;
  }

  TaskResult run_fresh(const TaskStart& s, std::uint64_t cap, const std::atomic<bool>* cancel) {
    pending_ = s.pending;
    placements_ = s.placements;
    counts_ = s.counts;
    TaskResult r;
    const Step st = descend();
    if (st == Step::Found) return found(r);
    if (st == Step::Fail) {
      r.status = TaskStatus::Fail;
      r.backjump = fail_target_;
      return r;
    }
    return loop(r, cap, cancel);
  }

  TaskResult run_resumed(const json& partial, std::uint64_t cap, const std::atomic<bool>* cancel) {
    placements_ = partial.at("placements").get<std::vector<Placement>>();
    for (const auto& fj : partial.at("frames")) {
      Frame f;
      f.region = fj.at("region").get<Region>();
      f.creator = fj.at("creator").get<int>();
      f.next = fj.at("next").get<std::size_t>();
      f.mark = fj.at("mark").get<std::size_t>();
      f.rest = pending_from_json(fj.at("rest"));
      f.counts = fj.at("counts").get<SideCounts>();
      f.solved = fj.at("solved").get<bool>();
      f.children = expand_corner(f.region, choose_corner(f.region), in_.ctx);
      if (f.next > f.children.size()) throw std::invalid_argument("checkpoint frame does not match the instance");
      stack_.push_back(std::move(f));
    }
    if (stack_.empty()) throw std::invalid_argument("checkpoint has no frames");
    TaskResult r;
    return loop(r, cap, cancel);
  }

 private:
  enum class Step { Found, Fail, Opened };

  int depth(std::size_t i) const { return base_ + static_cast<int>(i); }

  TaskResult& found(TaskResult& r) {
    r.status = TaskStatus::Found;
    r.placements = placements_;
    r.memo_hits = hits_;
    return r;
  }

  void record_solved() {
    if (!memo_) return;
    for (auto& f : stack_) {
      if (f.solved || f.rest.size() != pending_.size()) continue;
      f.solved = true;
      if (solved_.size() >= kSolvedMemoLimit) continue;
      std::vector<Placement> rel;
      const Vec2 origin = -f.region.boundary[0];
      for (std::size_t i = f.mark; i < placements_.size(); ++i) rel.push_back(translated(placements_[i], origin));
      solved_.emplace(key_of(f.region), std::move(rel));
    }
  }

  Step descend() {
    for (;;) {
      record_solved();
      if (pending_.empty()) return Step::Found;
      Pending& top = pending_.back();
      if (memo_) {
        ShapeKey key = key_of(top.region);
        if (failed_.contains(key)) {
          ++hits_;
          fail_target_ = top.creator;
          return Step::Fail;
        }
        if (auto it = solved_.find(key); it != solved_.end()) {
          ++hits_;
          for (const auto& p : it->second) placements_.push_back(translated(p, top.region.boundary[0]));
          pending_.pop_back();
          continue;
        }
      }
      Frame f;
      f.region = std::move(top.region);
      f.creator = top.creator;
      pending_.pop_back();
      f.rest = pending_;
      f.mark = placements_.size();
      f.counts = counts_;
      f.children = expand_corner(f.region, choose_corner(f.region), in_.ctx);
      stack_.push_back(std::move(f));
      return Step::Opened;
    }
  }

  bool backjump(int target) {
    while (!stack_.empty() && depth(stack_.size() - 1) > target) stack_.pop_back();
    return !stack_.empty();
  }

  void check_area() const {
    QRoot3 sum = QRoot3(static_cast<long>(placements_.size())) * QRoot3(2) * in_.tile.area;
    for (const auto& p : pending_) sum += p.region.twice_area();
    if (sum != in_.twice_target_area) throw std::logic_error("area not conserved during search");
  }

  json snapshot() const {
    json frames = json::array();
    for (const auto& f : stack_)
      frames.push_back({{"region", f.region},
                        {"creator", f.creator},
                        {"next", f.next},
                        {"mark", f.mark},
                        {"rest", pending_to_json(f.rest)},
                        {"counts", f.counts},
                        {"solved", f.solved}});
    const std::size_t keep = stack_.back().mark;
    return {{"frames", frames},
            {"placements", std::vector<Placement>(placements_.begin(), placements_.begin() + static_cast<long>(keep))}};
  }

  TaskResult loop(TaskResult& r, std::uint64_t cap, const std::atomic<bool>* cancel) {
    for (;;) {
      Frame& f = stack_.back();
      if (f.next == f.children.size()) {
        if (memo_ && failed_.size() < kFailMemoLimit) failed_.insert(key_of(f.region));
        const int target = in_.config.paper_pruning ? depth(stack_.size() - 1) - 1 : f.creator;
        if (!backjump(target)) {
          r.status = TaskStatus::Fail;
          r.backjump = target;
          r.memo_hits = hits_;
          return r;
        }
        continue;
      }
      if (r.nodes >= cap) {
        r.status = TaskStatus::Capped;
        r.partial = snapshot();
        r.memo_hits = hits_;
        return r;
      }
      const Expansion& child = f.children[f.next++];
      const int d = depth(stack_.size() - 1);
      if (memo_ && std::any_of(child.components.begin(), child.components.end(),
                               [&](const Region& c) { return failed_.contains(key_of(c)); })) {
        ++hits_;
        continue;
      }
      SideCounts counts = f.counts;
      if (in_.config.paper_pruning) {
        in_.add_counts(counts, child.placement);
        if (!in_.counts_ok(counts)) continue;
      }
      placements_.resize(f.mark);
      placements_.push_back(child.placement);
      pending_ = f.rest;
      for (auto it = child.components.rbegin(); it != child.components.rend(); ++it) pending_.push_back({*it, d});
      counts_ = counts;
      ++r.nodes;
      if (cancel && (r.nodes & 1023u) == 0 && cancel->load(std::memory_order_relaxed)) {
        r.status = TaskStatus::Cancelled;
        return r;
      }
      if (in_.config.verify_invariants) check_area();
      const Step st = descend();
      if (st == Step::Found) return found(r);
      if (st == Step::Fail && !backjump(fail_target_)) {
        r.status = TaskStatus::Fail;
        r.backjump = fail_target_;
        r.memo_hits = hits_;
        return r;
      }
    }
  }

  const Instance& in_;
  int base_;
  bool memo_;
  std::vector<Frame> stack_;
  std::vector<Pending> pending_;
  std::vector<Placement> placements_;
  SideCounts counts_{};
  int fail_target_ = -1;
  std::uint64_t hits_ = 0;
  std::unordered_set<ShapeKey, ShapeKeyHash> failed_;
  std::unordered_map<ShapeKey, std::vector<Placement>, ShapeKeyHash> solved_;
};

// Leaves of the shallow tree that partitions the search.
struct Event {
  enum class Kind { Task, Found, Exhausted } kind;
  std::vector<std::size_t> path;
  int target = -1;          // Exhausted: where the search resumes
  std::size_t task = 0;     // Task: ordinal
  TaskStart start;          // Task
  std::vector<Placement> placements;  // Found
  std::uint64_t prefix_nodes = 0;     // shallow nodes first reached at this event
};

class Partitioner {
 public:
  Partitioner(const Instance& in, int depth) : in_(in), depth_(depth) {}

  std::vector<Event> run() {
    std::vector<Pending> pending{{region_from_target(in_.target), -1}};
    std::vector<Placement> placements;
    std::vector<std::size_t> path;
    visit(pending, placements, SideCounts{}, path);
    return std::move(events_);
  }

 private:
  void emit(Event e) {
    e.prefix_nodes = unclaimed_;
    unclaimed_ = 0;
    events_.push_back(std::move(e));
  }

  void visit(std::vector<Pending>& pending, std::vector<Placement>& placements, const SideCounts& counts,
             std::vector<std::size_t>& path) {
    const int t = static_cast<int>(path.size());
    if (pending.empty()) {
      emit({Event::Kind::Found, path, -1, 0, {}, placements});
      return;
    }
    if (t == depth_) {
      emit({Event::Kind::Task, path, -1, tasks_++, {pending, placements, counts}, {}});
      return;
    }
    const Pending top = pending.back();
    pending.pop_back();
    const auto children = expand_corner(top.region, choose_corner(top.region), in_.ctx);
    for (std::size_t i = 0; i < children.size(); ++i) {
      SideCounts c = counts;
      if (in_.config.paper_pruning) {
        in_.add_counts(c, children[i].placement);
        if (!in_.counts_ok(c)) continue;
      }
      ++unclaimed_;
      auto next_pending = pending;
      for (auto it = children[i].components.rbegin(); it != children[i].components.rend(); ++it)
        next_pending.push_back({*it, t});
      placements.push_back(children[i].placement);
      path.push_back(i);
      visit(next_pending, placements, c, path);
      path.pop_back();
      placements.pop_back();
    }
    pending.push_back(top);
    const int target = in_.config.paper_pruning ? t - 1 : top.creator;
    emit({Event::Kind::Exhausted, path, target, 0, {}, {}});
  }

  const Instance& in_;
  int depth_;
  std::size_t tasks_ = 0;
  std::uint64_t unclaimed_ = 0;
  std::vector<Event> events_;
};

json instance_json(const Instance& in) {
  return {{"tile", in.tile},
          {"chirality", in.ctx.chirality() == Chirality::Any      ? "any"
                        : in.ctx.chirality() == Chirality::Direct ? "direct"
                                                                  : "mirrored"},
          {"target", in.target},
          {"allow_mirror", in.config.allow_mirror},
          {"paper_pruning", in.config.paper_pruning},
          {"partition_depth", in.config.partition_depth}};
}

json result_json(std::size_t task, const TaskResult& r) {
  json j = {{"task", task}, {"nodes", r.nodes}};
  if (r.status == TaskStatus::Found) {
    j["status"] = "found";
    j["placements"] = r.placements;
  } else {
    j["status"] = "fail";
    j["backjump"] = r.backjump;
  }
  return j;
}

TaskResult result_from_json(const json& j) {
  TaskResult r;
  r.nodes = j.at("nodes").get<std::uint64_t>();
  const auto status = j.at("status").get<std::string>();
  if (status == "found") {
    r.status = TaskStatus::Found;
    r.placements = j.at("placements").get<std::vector<Placement>>();
  } else if (status == "fail") {
    r.status = TaskStatus::Fail;
    r.backjump = j.at("backjump").get<int>();
  } else {
    throw std::invalid_argument("unknown task status in checkpoint: " + status);
  }
  return r;
}

// Runs tasks ahead of the merge on a small pool.  Results are used only in
// task order, so the outcome and node count do not depend on the pool size.
class TaskPool {
 public:
  TaskPool(const Instance& in, const std::vector<const Event*>& tasks, int workers, std::uint64_t loose_cap)
      : in_(in), tasks_(tasks), slots_(tasks.size()), loose_cap_(loose_cap) {
    for (int w = 0; w < workers; ++w) threads_.emplace_back([this, workers] { work(workers); });
  }

  ~TaskPool() { stop(); }

  void stop() {
    {
      std::lock_guard lock(mu_);
      stopping_ = true;
      for (auto& s : slots_) s.cancel.store(true);
    }
    cv_.notify_all();
    for (auto& t : threads_)
      if (t.joinable()) t.join();
  }

  void skip(std::size_t k) {
    std::lock_guard lock(mu_);
    slots_[k].skip = true;
    slots_[k].cancel.store(true);
  }

  void provide(std::size_t k, json partial) {
    std::lock_guard lock(mu_);
    slots_[k].partial = std::move(partial);
  }

  void preset(std::size_t k, TaskResult r) {
    std::lock_guard lock(mu_);
    slots_[k].preset = true;
    slots_[k].result = std::move(r);
  }

  // Result of task k computed with at most `cap` nodes.
  TaskResult take(std::size_t k, std::uint64_t cap) {
    std::unique_lock lock(mu_);
    merge_pos_ = k;
    exact_cap_ = cap;
    merging_ = true;
    cv_.notify_all();
    cv_.wait(lock, [&] { return slots_[k].done; });
    Slot& s = slots_[k];
    if (s.preset) return s.result;
    const TaskResult& r = s.result;
    const bool usable = (r.status == TaskStatus::Found || r.status == TaskStatus::Fail) && r.nodes <= cap;
    const bool exact_capped = s.exact && r.status == TaskStatus::Capped;
    if (usable || exact_capped) return r;
    json partial = s.partial;
    lock.unlock();
    return execute(k, partial, cap, nullptr);
  }

 private:
  struct Slot {
    bool done = false, skip = false, exact = false, preset = false;
    std::atomic<bool> cancel{false};
    json partial;
    TaskResult result;
  };

  TaskResult execute(std::size_t k, const json& partial, std::uint64_t cap, const std::atomic<bool>* cancel) {
    Runner runner(in_, static_cast<int>(tasks_[k]->path.size()));
    if (!partial.is_null()) return runner.run_resumed(partial, cap, cancel);
    return runner.run_fresh(tasks_[k]->start, cap, cancel);
  }

  void work(int workers) {
    for (;;) {
      const std::size_t k = next_.fetch_add(1);
      if (k >= slots_.size()) return;
      std::unique_lock lock(mu_);
      cv_.wait(lock, [&] { return stopping_ || k < merge_pos_ + static_cast<std::size_t>(workers); });
      Slot& s = slots_[k];
      if (stopping_ || s.skip || s.preset) {
        s.done = true;
        cv_.notify_all();
        continue;
      }
      s.exact = merging_ && merge_pos_ == k;
      const std::uint64_t cap = s.exact ? exact_cap_ : loose_cap_;
      const json partial = s.partial;
      lock.unlock();
      TaskResult r = execute(k, partial, cap, &s.cancel);
      lock.lock();
      s.result = std::move(r);
      s.done = true;
      cv_.notify_all();
    }
  }

  const Instance& in_;
  const std::vector<const Event*>& tasks_;
  std::vector<Slot> slots_;
  std::uint64_t loose_cap_;
  std::mutex mu_;
  std::condition_variable cv_;
  std::size_t merge_pos_ = 0;
  std::uint64_t exact_cap_ = 0;
  bool merging_ = false;  // exact_cap_ is meaningful
  bool stopping_ = false;
  std::atomic<std::size_t> next_{0};
  std::vector<std::thread> threads_;
};

void write_json_file(const std::filesystem::path& path, const json& j) {
  const auto tmp = path.string() + ".tmp";
  {
    std::ofstream f(tmp);
    if (!f) throw std::runtime_error("cannot write checkpoint " + tmp);
    f << j.dump(1) << "\n";
    if (!f) throw std::runtime_error("cannot write checkpoint " + tmp);
  }
  std::filesystem::rename(tmp, path);
}

struct PhaseResult {
  std::optional<std::vector<Placement>> found;
  bool out_of_budget = false;
  std::uint64_t used = 0;
  json checkpoint;
};

// Searches one chirality setting.  `resume` is the checkpoint when it was
// written during this phase.
PhaseResult run_phase(const Instance& in, std::size_t phase, const json* resume, std::uint64_t budget,
                      std::uint64_t earlier_nodes, SearchStats& stats) {
  const SearchConfig& config = in.config;
  std::unordered_map<std::size_t, TaskResult> saved;
  std::optional<std::pair<std::size_t, json>> partial;
  std::size_t counted = 0;  // events whose shallow nodes are already charged
  if (resume) {
    if (resume->at("instance") != instance_json(in))
      throw std::invalid_argument("checkpoint belongs to a different instance or configuration");
    counted = resume->at("events_counted").get<std::size_t>();
    for (const auto& rj : resume->at("results")) saved.emplace(rj.at("task").get<std::size_t>(), result_from_json(rj));
    if (resume->contains("partial") && !resume->at("partial").is_null())
      partial.emplace(resume->at("partial").at("task").get<std::size_t>(), resume->at("partial").at("state"));
  }

  const auto events = Partitioner(in, config.partition_depth).run();
  std::vector<const Event*> tasks;
  for (const auto& e : events)
    if (e.kind == Event::Kind::Task) tasks.push_back(&e);
  if (resume && resume->at("tasks_total").get<std::size_t>() != tasks.size())
    throw std::invalid_argument("checkpoint task count does not match the instance");
  stats.tasks += tasks.size();

  PhaseResult out;
  std::uint64_t& used = out.used;
  const std::uint64_t loose_cap = budget;
  std::vector<json> results_json;
  for (const auto& [k, r] : saved) results_json.push_back(result_json(k, r));
  std::sort(results_json.begin(), results_json.end(),
            [](const json& a, const json& b) { return a.at("task") < b.at("task"); });

  auto checkpoint_doc = [&](const std::optional<std::pair<std::size_t, json>>& part, bool complete) {
    json doc = {{"schema", "v1"},
                {"kind", "search-checkpoint"},
                {"phase", phase},
                {"instance", instance_json(in)},
                {"nodes_total", earlier_nodes + used},
                {"tasks_total", tasks.size()},
                {"events_counted", counted},
                {"results", results_json},
                {"complete", complete}};
    doc["partial"] = part ? json{{"task", part->first}, {"state", part->second}} : json(nullptr);
    return doc;
  };
  auto last_write = std::chrono::steady_clock::now();
  auto maybe_write = [&](bool force, const json& doc) {
    if (!config.checkpoint_path) return;
    const auto now = std::chrono::steady_clock::now();
    if (!force && std::chrono::duration<double>(now - last_write).count() < config.checkpoint_interval_seconds) return;
    write_json_file(*config.checkpoint_path, doc);
    last_write = now;
  };

  TaskPool pool(in, tasks, config.workers, loose_cap);
  for (const auto& [k, r] : saved) pool.preset(k, r);
  if (partial) pool.provide(partial->first, partial->second);

  std::optional<std::vector<std::size_t>> skip_prefix;
  auto skipping = [&](const Event& e) {
    if (!skip_prefix) return false;
    const auto& p = *skip_prefix;
    if (e.path.size() < p.size()) return false;
    return std::equal(p.begin(), p.end(), e.path.begin());
  };
  auto start_skip = [&](const Event& e, int target) {
    skip_prefix = std::vector<std::size_t>(e.path.begin(), e.path.begin() + (target + 1));
  };

  auto left = [&] { return used >= budget ? std::uint64_t{0} : budget - used; };
  for (std::size_t ei = 0; ei < events.size() && !out.found && !out.out_of_budget; ++ei) {
    const Event& e = events[ei];
    if (skipping(e)) {
      if (e.kind == Event::Kind::Task) pool.skip(e.task);
      continue;
    }
    skip_prefix.reset();
    if (ei >= counted) {
      // The first event is always charged so every invocation makes progress;
      // the overshoot is at most the partition depth.
      if (e.prefix_nodes > left() && used > 0) {
        out.out_of_budget = true;
        break;
      }
      used += e.prefix_nodes;
      counted = ei + 1;
    }
    switch (e.kind) {
      case Event::Kind::Found: out.found = e.placements; break;
      case Event::Kind::Exhausted: start_skip(e, e.target); break;
      case Event::Kind::Task: {
        const bool was_saved = saved.contains(e.task);
        if (partial && partial->first == e.task) partial.reset();
        TaskResult r = pool.take(e.task, left());
        if (!was_saved) {
          used += r.nodes;
          ++stats.tasks_run;
        }
        stats.memo_hits += r.memo_hits;
        if (r.status == TaskStatus::Capped) {
          out.out_of_budget = true;
          partial.emplace(e.task, r.partial);
          break;
        }
        if (!was_saved) results_json.push_back(result_json(e.task, r));
        if (r.status == TaskStatus::Found) {
          out.found = r.placements;
        } else {
          start_skip(e, r.backjump);
          maybe_write(false, checkpoint_doc(std::nullopt, false));
        }
        break;
      }
    }
  }
  pool.stop();
  out.checkpoint = checkpoint_doc(out.out_of_budget ? partial : std::nullopt, !out.out_of_budget);
  maybe_write(true, out.checkpoint);
  return out;
}

}  // namespace

SearchResult search(const TileShape& tile, const TriangleSpec& target, const SearchConfig& config) {
  const auto t0 = std::chrono::steady_clock::now();
  if (config.node_budget == 0) throw std::invalid_argument("node budget must be positive");
  if (config.workers < 1) throw std::invalid_argument("workers must be at least 1");
  if (config.partition_depth < 0) throw std::invalid_argument("partition depth must be nonnegative");
  const Rational n = area_count(tile, target);
  if (!n.is_integer() || n.sign() <= 0) throw std::invalid_argument("tile count " + n.to_pretty() + " is not a positive integer");

  SearchResult res{SearchOutcome::ExhaustedNone, std::nullopt, {}, false, std::nullopt, {}};
  auto finish = [&](SearchOutcome o) {
    res.outcome = o;
    res.stats.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    if (o == SearchOutcome::ExhaustedNone && config.paper_pruning) {
      res.conditional = true;
      res.notes.push_back("conditional on paper lemmas");
    }
    return res;
  };

  const auto dms = enumerate_dmatrices(tile, target);
  if (dms.empty()) {
    res.notes.push_back("no side of the target decomposes into tile edges");
    return finish(SearchOutcome::ExhaustedNone);
  }
  std::vector<DMatrix> allowed;
  if (config.paper_pruning) {
    for (const auto& m : dms)
      if (!m.missing_c_edge) allowed.push_back(m);
    if (allowed.empty()) {
      res.notes.push_back("every boundary decomposition lacks a c edge on some side");
      return finish(SearchOutcome::ExhaustedNone);
    }
  }

  // Without mirror images the whole tiling uses one handedness, tried in turn.
  std::vector<Chirality> phases{Chirality::Any};
  if (!config.allow_mirror) {
    phases = {Chirality::Direct};
    if (!tile.is_isosceles()) phases.push_back(Chirality::Mirrored);
  }

  std::size_t first_phase = 0;
  std::uint64_t earlier_nodes = 0;
  if (config.resume) {
    const json& cp = *config.resume;
    if (cp.value("schema", "") != "v1" || cp.value("kind", "") != "search-checkpoint")
      throw std::invalid_argument("not a v1 search checkpoint");
    first_phase = cp.value("phase", std::size_t{0});
    if (first_phase >= phases.size()) throw std::invalid_argument("checkpoint phase does not match the configuration");
    earlier_nodes = cp.at("nodes_total").get<std::uint64_t>();
  }

  std::uint64_t used = 0;
  for (std::size_t ph = first_phase; ph < phases.size(); ++ph) {
    Instance in(tile, target, config, phases[ph]);
    in.allowed = allowed;
    const json* resume = config.resume && ph == first_phase ? &*config.resume : nullptr;
    if (resume && resume->at("tasks_total").is_null()) {
      if (resume->at("instance") != instance_json(in))
        throw std::invalid_argument("checkpoint belongs to a different instance or configuration");
      resume = nullptr;
    }
    PhaseResult pr = run_phase(in, ph, resume, used >= config.node_budget ? 0 : config.node_budget - used,
                                earlier_nodes + used, res.stats);
    used += pr.used;
    res.stats.nodes = used;
    res.stats.nodes_total = earlier_nodes + used;
    if (pr.out_of_budget) {
      res.checkpoint = std::move(pr.checkpoint);
      return finish(SearchOutcome::BudgetExceeded);
    }
    if (pr.found) {
      Certificate cert{tile, target, config.allow_mirror, *pr.found};
      const auto report = check_certificate(cert);
      if (!report.valid())
        throw std::logic_error("search produced an invalid certificate: " + report.violations[0].to_string());
      res.certificate = std::move(cert);
      return finish(SearchOutcome::Found);
    }
    if (ph + 1 < phases.size() && used >= config.node_budget) {
      // Out of budget exactly at a phase boundary: the next phase starts fresh.
      res.checkpoint = json{{"schema", "v1"}, {"kind", "search-checkpoint"}, {"phase", ph + 1},
                            {"instance", instance_json(Instance(tile, target, config, phases[ph + 1]))},
                            {"nodes_total", earlier_nodes + used}, {"tasks_total", nullptr},
                            {"results", json::array()}, {"partial", nullptr}, {"complete", false}};
      return finish(SearchOutcome::BudgetExceeded);
    }
  }
  return finish(SearchOutcome::ExhaustedNone);
}

}  // namespace tforge
