#include "texcurve/human_queue.hpp"

#include <stdexcept>

#include "texcurve/error.hpp"

namespace texcurve {

HumanQueue::HumanQueue(const std::vector<ComparisonTask>& tasks, const std::vector<ComparisonRecord>& judged) {
  for (const ComparisonTask& t : tasks) enqueue(t);
  std::lock_guard lock(mutex_);
  for (const ComparisonRecord& r : judged) {
    if (tasks_.contains(r.task_id)) done_.insert(r.task_id);
  }
}

std::size_t HumanQueue::enqueue(ComparisonTask task) {
  std::lock_guard lock(mutex_);
  const TaskId id = task.task_id;
  const Dimension dimension = task.dimension;
  if (!tasks_.emplace(id, std::move(task)).second) {
    throw std::invalid_argument("task " + std::to_string(id) + " is already queued");
  }
  order_.push_back(id);
  std::size_t position = 0;
  for (TaskId other : order_) {
    if (other != id && !done_.contains(other) && tasks_.at(other).dimension == dimension) ++position;
  }
  return position;
}

std::optional<ComparisonTask> HumanQueue::next(std::optional<Dimension> dimension) const {
  std::lock_guard lock(mutex_);
  for (TaskId id : order_) {
    if (done_.contains(id)) continue;
    const ComparisonTask& task = tasks_.at(id);
    if (!dimension || task.dimension == *dimension) return task;
  }
  return std::nullopt;
}

std::optional<ComparisonTask> HumanQueue::find(TaskId id) const {
  std::lock_guard lock(mutex_);
  const auto it = tasks_.find(id);
  if (it == tasks_.end()) return std::nullopt;
  return it->second;
}

ComparisonRecord HumanQueue::collect(TaskId id, DisplayChoice choice, const std::string& judge_id) {
  std::lock_guard lock(mutex_);
  const auto it = tasks_.find(id);
  if (it == tasks_.end()) throw UnknownTask(id);
  if (done_.contains(id)) throw DuplicateVerdict(id);
  done_.insert(id);
  const ComparisonTask& task = it->second;
  return make_record(task, JudgeVerdict{unswap(choice, task.position_swapped), {}, judge_id, 0.0});
}

QueueProgress HumanQueue::progress() const {
  std::lock_guard lock(mutex_);
  QueueProgress p;
  p.total = tasks_.size();
  p.done = done_.size();
  for (const auto& [id, task] : tasks_) {
    DimensionProgress& d = p.dimensions[task.dimension];
    ++d.total;
    if (done_.contains(id)) ++d.done;
  }
  return p;
}

bool HumanQueue::finished() const {
  std::lock_guard lock(mutex_);
  return done_.size() == tasks_.size();
}

}  // namespace texcurve
