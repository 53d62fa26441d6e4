#include "texcurve/judge.hpp"

#include <openssl/evp.h>

#include <algorithm>
#include <cctype>
#include <exception>
#include <fstream>
#include <iterator>
#include <thread>

#include <json.hpp>

#include "parallel.hpp"
#include "texcurve/error.hpp"

namespace texcurve {

using nlohmann::json;

MockJudge::MockJudge(std::vector<std::string> order) {
  for (std::size_t i = 0; i < order.size(); ++i) {
    if (!rank_.emplace(order[i], i).second) {
      throw std::invalid_argument("mock judge order repeats method '" + order[i] + "'");
    }
  }
}

JudgeVerdict MockJudge::judge(const ComparisonTask& task) const {
  const auto top = rank_.find(task.top_method());
  if (top == rank_.end()) throw UnknownMethod(task.top_method());
  const auto bottom = rank_.find(task.bottom_method());
  if (bottom == rank_.end()) throw UnknownMethod(task.bottom_method());

  const DisplayChoice choice = top->second < bottom->second ? DisplayChoice::option1 : DisplayChoice::option2;
  return {unswap(choice, task.position_swapped), {}, id(), 0.0};
}

// ---------------------------------------------------------------------------
// Verdict parsing

namespace {

struct Word {
  std::string text;  // upper-cased
  bool was_upper;
};

std::vector<Word> split_words(std::string_view text) {
  std::vector<Word> words;
  std::size_t i = 0;
  while (i < text.size()) {
    while (i < text.size() && !std::isalnum(static_cast<unsigned char>(text[i]))) ++i;
    const std::size_t start = i;
    while (i < text.size() && std::isalnum(static_cast<unsigned char>(text[i]))) ++i;
    if (i == start) break;
    Word w{std::string(text.substr(start, i - start)), true};
    for (char& c : w.text) {
      if (std::islower(static_cast<unsigned char>(c))) w.was_upper = false;
      c = static_cast<char>(std::toupper(static_cast<unsigned char>(c)));
    }
    words.push_back(std::move(w));
  }
  return words;
}

// Reads a token starting at words[i]; "OPTION 1" is accepted as OPTION1.
std::optional<DisplayChoice> token_at(const std::vector<Word>& words, std::size_t i, bool strict_case) {
  const Word& w = words[i];
  if (strict_case && !w.was_upper) return std::nullopt;
  if (w.text == "OPTION1") return DisplayChoice::option1;
  if (w.text == "OPTION2") return DisplayChoice::option2;
  if (w.text == "TIE") return DisplayChoice::tie;
  if (w.text == "OPTION" && i + 1 < words.size()) {
    if (words[i + 1].text == "1") return DisplayChoice::option1;
    if (words[i + 1].text == "2") return DisplayChoice::option2;
  }
  return std::nullopt;
}

std::size_t find_last_marker(std::string_view reply) {
  std::string lowered(reply);
  std::transform(lowered.begin(), lowered.end(), lowered.begin(),
                 [](unsigned char c) { return static_cast<char>(std::tolower(c)); });
  const std::size_t pos = lowered.rfind("final answer");
  return pos == std::string::npos ? pos : pos + std::string_view("final answer").size();
}

}  // namespace

std::optional<DisplayChoice> parse_verdict_token(std::string_view reply) {
  const std::size_t marker = find_last_marker(reply);
  if (marker != std::string::npos) {
    // First token after the marker; case-insensitive there.
    const auto words = split_words(reply.substr(marker));
    for (std::size_t i = 0; i < words.size(); ++i) {
      if (auto choice = token_at(words, i, false)) return choice;
    }
    return std::nullopt;
  }
  // No marker: only upper-case tokens count, so prose like "no tie" is ignored.
  const auto words = split_words(reply);
  for (std::size_t i = words.size(); i-- > 0;) {
    if (auto choice = token_at(words, i, true)) return choice;
  }
  return std::nullopt;
}

// ---------------------------------------------------------------------------
// Prompts

namespace {

struct DimensionText {
  const char* title;
  const char* criteria;
};

DimensionText dimension_text(Dimension d) {
  switch (d) {
    case Dimension::reference_alignment:
      return {"reference-texture alignment",
              "how faithfully each option's colors, patterns and materials match the reference image "
              "in the left column"};
    case Dimension::geometry_consistency:
      return {"geometry-texture consistency",
              "whether texture features such as eyes, seams, patterns and material boundaries sit on the "
              "correct parts of the geometry and follow the surface without shifting or stretching"};
    case Dimension::local_quality:
      return {"local texture quality",
              "sharpness and richness of fine surface detail, and freedom from blur, noise, seams, "
              "baked-in highlights and other artifacts"};
  }
  return {"", ""};
}

void replace_all(std::string& text, std::string_view from, std::string_view to) {
  for (std::size_t pos = text.find(from); pos != std::string::npos; pos = text.find(from, pos + to.size())) {
    text.replace(pos, from.size(), to);
  }
}

}  // namespace

std::string default_prompt_template(Dimension) {
  return "You are evaluating the output of 3D texture generation methods.\n"
         "The image shows a reference image in the left column. The top row, labeled \"Option 1\", "
         "and the bottom row, labeled \"Option 2\", each show four rendered views of the same 3D "
         "object textured by a different method.\n"
         "\n"
         "Compare the two options on {dimension}: {criteria}.\n"
         "\n"
         "Explain your reasoning briefly, then end your reply with exactly one of these lines:\n"
         "Final answer: OPTION1\n"
         "Final answer: OPTION2\n"
         "Final answer: TIE\n"
         "Answer TIE only if the two options are equally good on this criterion.\n";
}

std::string human_instruction(Dimension dimension) {
  const DimensionText t = dimension_text(dimension);
  std::string text = std::string("Which option is better on ") + t.title + "? Judge " + t.criteria + ".";
  return text;
}

std::string render_prompt(std::string_view templ, Dimension dimension) {
  const DimensionText t = dimension_text(dimension);
  std::string out(templ);
  replace_all(out, "{dimension}", t.title);
  replace_all(out, "{criteria}", t.criteria);
  return out;
}

// ---------------------------------------------------------------------------
// VLM judge

std::string base64_encode(std::string_view bytes) {
  std::string out(4 * ((bytes.size() + 2) / 3), '\0');
  const int n = EVP_EncodeBlock(reinterpret_cast<unsigned char*>(out.data()),
                                reinterpret_cast<const unsigned char*>(bytes.data()),
                                static_cast<int>(bytes.size()));
  out.resize(static_cast<std::size_t>(n));
  return out;
}

VlmJudge::VlmJudge(VlmConfig config, HttpPost post, std::function<void(std::chrono::milliseconds)> sleep)
    : config_(std::move(config)), post_(std::move(post)), sleep_(std::move(sleep)) {
  if (config_.endpoint.empty()) throw std::invalid_argument("VLM endpoint is not configured");
  if (config_.max_retries < 0) throw std::invalid_argument("max_retries must be non-negative");
  if (!post_) post_ = make_http_post(config_.timeout);
  if (!sleep_) sleep_ = [](std::chrono::milliseconds d) { std::this_thread::sleep_for(d); };
}

std::string VlmJudge::id() const { return "vlm:" + (config_.model.empty() ? std::string("default") : config_.model); }

std::string VlmJudge::build_request(const ComparisonTask& task) const {
  std::ifstream in(task.grid_path, std::ios::binary);
  if (!in) throw Error("cannot read grid image " + task.grid_path);
  const std::string image((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
  const bool jpeg = image.size() >= 2 && static_cast<unsigned char>(image[0]) == 0xFF &&
                    static_cast<unsigned char>(image[1]) == 0xD8;

  const auto templ = config_.prompt_templates.find(task.dimension);
  const std::string prompt = render_prompt(
      templ != config_.prompt_templates.end() ? templ->second : default_prompt_template(task.dimension),
      task.dimension);

  json content = json::array();
  content.push_back({{"type", "text"}, {"text", prompt}});
  content.push_back({{"type", "image_url"},
                     {"image_url",
                      {{"url", std::string("data:") + (jpeg ? "image/jpeg" : "image/png") + ";base64," +
                                   base64_encode(image)}}}});
  json body{{"messages", json::array({{{"role", "user"}, {"content", std::move(content)}}})},
            {"temperature", 0},
            {"max_tokens", config_.max_tokens}};
  if (!config_.model.empty()) body["model"] = config_.model;
  return body.dump();
}

namespace {

std::string reply_text(const std::string& body) {
  json doc;
  try {
    doc = json::parse(body);
  } catch (const json::exception&) {
    throw UnparseableVerdict("response body is not JSON");
  }
  const json* content = nullptr;
  if (doc.contains("choices") && doc["choices"].is_array() && !doc["choices"].empty()) {
    const json& choice = doc["choices"][0];
    if (choice.contains("message") && choice["message"].contains("content")) content = &choice["message"]["content"];
  }
  if (!content) throw UnparseableVerdict("response has no choices[0].message.content");
  if (content->is_string()) return content->get<std::string>();
  std::string text;
  if (content->is_array()) {
    for (const json& part : *content) {
      if (part.contains("text") && part["text"].is_string()) text += part["text"].get<std::string>();
    }
  }
  return text;
}

}  // namespace

JudgeVerdict VlmJudge::judge(const ComparisonTask& task) const {
  const auto start = std::chrono::steady_clock::now();
  const std::string request = build_request(task);

  std::exception_ptr last_error;
  std::chrono::milliseconds backoff = config_.initial_backoff;
  for (int attempt = 0; attempt <= config_.max_retries; ++attempt) {
    if (attempt > 0) {
      sleep_(backoff);
      backoff *= 2;
    }
    try {
      const HttpReply reply = post_(config_.endpoint, request, config_.api_key);
      if (reply.status != 200) {
        throw TransportError("HTTP " + std::to_string(reply.status) + " from " + config_.endpoint);
      }
      const std::string text = reply_text(reply.body);
      const auto choice = parse_verdict_token(text);
      if (!choice) throw UnparseableVerdict("no verdict token in reply");
      const double latency =
          std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start).count();
      return {unswap(*choice, task.position_swapped), text, id(), latency};
    } catch (const TransportError&) {
      last_error = std::current_exception();
    } catch (const UnparseableVerdict&) {
      last_error = std::current_exception();
    }
  }
  std::rethrow_exception(last_error);
}

// ---------------------------------------------------------------------------

JudgingOutcome run_judging(const std::vector<ComparisonTask>& tasks, const Judge& judge, std::size_t in_flight) {
  std::vector<std::optional<ComparisonRecord>> records(tasks.size());
  std::vector<std::optional<TaskFailure>> failures(tasks.size());
  detail::parallel_for(tasks.size(), in_flight, [&](std::size_t i) {
    const ComparisonTask& task = tasks[i];
    try {
      records[i] = make_record(task, judge.judge(task));
    } catch (const TransportError& e) {
      failures[i] = TaskFailure{task.task_id, "transport", e.what()};
    } catch (const UnparseableVerdict& e) {
      failures[i] = TaskFailure{task.task_id, "unparseable", e.what()};
    } catch (const std::exception& e) {
      failures[i] = TaskFailure{task.task_id, "error", e.what()};
    }
  });

  JudgingOutcome outcome;
  for (std::size_t i = 0; i < tasks.size(); ++i) {
    if (records[i]) outcome.records.push_back(std::move(*records[i]));
    if (failures[i]) outcome.failures.push_back(std::move(*failures[i]));
  }
  std::sort(outcome.records.begin(), outcome.records.end(),
            [](const auto& a, const auto& b) { return a.task_id < b.task_id; });
  std::sort(outcome.failures.begin(), outcome.failures.end(),
            [](const auto& a, const auto& b) { return a.task_id < b.task_id; });
  return outcome;
}

}  // namespace texcurve
