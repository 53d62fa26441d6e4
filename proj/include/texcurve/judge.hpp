#pragma once

#include <chrono>
#include <cstddef>
#include <functional>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "texcurve/pairwise.hpp"

namespace texcurve {

/// Produces a verdict for one assembled comparison. Implementations are
/// called concurrently from the judging pool and must be thread-safe.
class Judge {
 public:
  virtual ~Judge() = default;
  virtual JudgeVerdict judge(const ComparisonTask& task) const = 0;
  virtual std::string id() const = 0;
};

/// Deterministic judge: the method ranked earlier in `order` always wins.
/// It decides on the displayed rows and goes through the same un-swap path
/// as the other judges.
class MockJudge final : public Judge {
 public:
  explicit MockJudge(std::vector<std::string> order);
  JudgeVerdict judge(const ComparisonTask& task) const override;
  std::string id() const override { return "mock"; }

 private:
  std::map<std::string, std::size_t> rank_;
};

// ---------------------------------------------------------------------------
// VLM judge

/// Verdict token in a model reply. Looks after the last "Final answer:"
/// marker when present, otherwise takes the last standalone OPTION1, OPTION2
/// or TIE token in the text.
std::optional<DisplayChoice> parse_verdict_token(std::string_view reply);

/// Default prompt for a dimension. Placeholders: {dimension} is replaced by
/// the dimension's display name and {criteria} by its criteria text.
std::string default_prompt_template(Dimension dimension);

/// Instruction text shown to human judges for a dimension.
std::string human_instruction(Dimension dimension);

std::string render_prompt(std::string_view templ, Dimension dimension);

struct HttpReply {
  int status = 0;
  std::string body;
};

/// POSTs a JSON body; throws TransportError when no HTTP reply arrives.
using HttpPost = std::function<HttpReply(const std::string& url, const std::string& body,
                                         const std::string& bearer_token)>;

struct VlmConfig {
  std::string endpoint;  // full chat-completions URL
  std::string model;
  std::string api_key;
  std::map<Dimension, std::string> prompt_templates;  // falls back to defaults
  int max_retries = 3;
  std::chrono::milliseconds initial_backoff{500};
  std::chrono::seconds timeout{120};
  int max_tokens = 512;
};

/// Chat-completions client that sends the grid image and a dimension prompt
/// and parses the constrained verdict token.
class VlmJudge final : public Judge {
 public:
  explicit VlmJudge(VlmConfig config, HttpPost post = {},
                    std::function<void(std::chrono::milliseconds)> sleep = {});

  /// Transport failures and unparseable replies are retried up to
  /// max_retries times with exponential backoff; the last error is rethrown
  /// as TransportError or UnparseableVerdict.
  JudgeVerdict judge(const ComparisonTask& task) const override;
  std::string id() const override;

  std::string build_request(const ComparisonTask& task) const;

 private:
  VlmConfig config_;
  HttpPost post_;
  std::function<void(std::chrono::milliseconds)> sleep_;
};

/// Default transport over cpp-httplib (http and https).
HttpPost make_http_post(std::chrono::seconds timeout);

std::string base64_encode(std::string_view bytes);

// ---------------------------------------------------------------------------

struct TaskFailure {
  TaskId task_id = 0;
  std::string kind;  // "transport", "unparseable", "error"
  std::string message;
};

struct JudgingOutcome {
  std::vector<ComparisonRecord> records;  // sorted by task_id
  std::vector<TaskFailure> failures;      // sorted by task_id
};

/// Judges every task with up to `in_flight` concurrent calls. A failed task
/// yields exactly one failure entry and no record.
JudgingOutcome run_judging(const std::vector<ComparisonTask>& tasks, const Judge& judge,
                           std::size_t in_flight = 1);

}  // namespace texcurve
