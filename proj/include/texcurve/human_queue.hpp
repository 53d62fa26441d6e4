#pragma once

#include <atomic>
#include <cstddef>
#include <filesystem>
#include <map>
#include <memory>
#include <mutex>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "texcurve/pairwise.hpp"

namespace texcurve {

struct DimensionProgress {
  std::size_t total = 0;
  std::size_t done = 0;
};

struct QueueProgress {
  std::size_t total = 0;
  std::size_t done = 0;
  std::map<Dimension, DimensionProgress> dimensions;

  std::size_t pending() const noexcept { return total - done; }
};

/// Pending human comparisons. All members are safe to call concurrently;
/// each call is atomic with respect to the others.
class HumanQueue {
 public:
  HumanQueue() = default;

  /// Tasks that already have a record in `judged` start out done.
  explicit HumanQueue(const std::vector<ComparisonTask>& tasks,
                      const std::vector<ComparisonRecord>& judged = {});

  /// Appends a task; returns its zero-based position among the pending tasks
  /// of its dimension. Throws std::invalid_argument on a reused task id.
  std::size_t enqueue(ComparisonTask task);

  /// Oldest pending task, optionally restricted to one dimension.
  std::optional<ComparisonTask> next(std::optional<Dimension> dimension = std::nullopt) const;

  std::optional<ComparisonTask> find(TaskId id) const;

  /// Finalizes a task from a choice made on the displayed grid. Throws
  /// UnknownTask or DuplicateVerdict.
  ComparisonRecord collect(TaskId id, DisplayChoice choice, const std::string& judge_id);

  QueueProgress progress() const;
  bool finished() const;

 private:
  mutable std::mutex mutex_;
  std::map<TaskId, ComparisonTask> tasks_;
  std::vector<TaskId> order_;
  std::set<TaskId> done_;
};

struct ServeOptions {
  std::string host = "127.0.0.1";
  int port = 8080;  // 0 picks a free port
  std::filesystem::path records_out;
  std::filesystem::path ui_dir;  // static assets; optional
  std::string session_name = "texcurve";
  std::string judge_id = "human";
  /// Polled while serving; setting it ends the session.
  const std::atomic<bool>* interrupt = nullptr;
};

/// HTTP front end for a HumanQueue:
///   GET  /api/session             session metadata and per-dimension instructions
///   GET  /api/next?dimension=...  {"task": {...} | null, "progress": {...}}
///   GET  /api/grid/<task_id>      grid image bytes
///   POST /api/verdict             {"task_id": n, "winner": "option1"|"option2"|"tie"}
///                                 200, 400 malformed, 404 unknown task, 409 duplicate
///   GET  /api/progress            counts
/// Every accepted verdict is appended to records_out and flushed before the
/// response is sent.
class JudgeServer {
 public:
  JudgeServer(HumanQueue& queue, ServeOptions options);
  ~JudgeServer();

  JudgeServer(const JudgeServer&) = delete;
  JudgeServer& operator=(const JudgeServer&) = delete;

  /// Binds the listening socket; false when the port is unavailable.
  bool bind();
  int port() const noexcept { return bound_port_; }

  /// Serves until every task is judged, stop() is called or the interrupt
  /// flag is raised. Returns true when the queue finished.
  bool run();
  void stop();

 private:
  struct Impl;
  std::unique_ptr<Impl> impl_;
  int bound_port_ = -1;
};

}  // namespace texcurve
