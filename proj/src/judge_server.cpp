#include <httplib.h>

#include <chrono>
#include <condition_variable>
#include <fstream>
#include <iterator>
#include <mutex>
#include <thread>

#include <json.hpp>

#include "texcurve/error.hpp"
#include "texcurve/human_queue.hpp"
#include "texcurve/judge.hpp"

namespace texcurve {

using nlohmann::json;

namespace {

json progress_json(const QueueProgress& p) {
  json dims = json::object();
  for (const auto& [d, dp] : p.dimensions) dims[std::string(to_string(d))] = {{"total", dp.total}, {"done", dp.done}};
  return {{"total", p.total}, {"done", p.done}, {"pending", p.pending()}, {"dimensions", std::move(dims)}};
}

json task_json(const ComparisonTask& t) {
  return {{"task_id", t.task_id},
          {"dimension", std::string(to_string(t.dimension))},
          {"grid_url", "/api/grid/" + std::to_string(t.task_id)},
          {"instruction", human_instruction(t.dimension)}};
}

void send_json(httplib::Response& res, int status, const json& body) {
  res.status = status;
  res.set_content(body.dump(), "application/json");
}

void send_error(httplib::Response& res, int status, const std::string& kind, const std::string& message) {
  send_json(res, status, {{"error", kind}, {"message", message}});
}

constexpr const char* kPlaceholderPage =
    "<!doctype html><html><head><meta charset=\"utf-8\"><title>texcurve judging</title></head>"
    "<body><p>No UI assets configured. The judging API is served under <code>/api/</code>.</p></body></html>";

}  // namespace

struct JudgeServer::Impl {
  HumanQueue& queue;
  ServeOptions options;
  httplib::Server server;
  std::ofstream records;
  std::mutex write_mutex;

  std::mutex state_mutex;
  std::condition_variable wake;
  bool stop_requested = false;

  Impl(HumanQueue& q, ServeOptions opts) : queue(q), options(std::move(opts)) {}

  void notify() {
    {
      std::lock_guard lock(state_mutex);
    }
    wake.notify_all();
  }

  void routes() {
    server.Get("/api/session", [this](const httplib::Request&, httplib::Response& res) {
      const QueueProgress p = queue.progress();
      json dims = json::array();
      for (Dimension d : all_dimensions()) {
        const auto it = p.dimensions.find(d);
        if (it == p.dimensions.end()) continue;
        dims.push_back({{"name", std::string(to_string(d))},
                        {"instruction", human_instruction(d)},
                        {"total", it->second.total},
                        {"done", it->second.done}});
      }
      send_json(res, 200,
                {{"session", options.session_name},
                 {"judge_id", options.judge_id},
                 {"labels", {"Option 1", "Option 2"}},
                 {"dimensions", std::move(dims)},
                 {"progress", progress_json(p)}});
    });

    server.Get("/api/next", [this](const httplib::Request& req, httplib::Response& res) {
      std::optional<Dimension> dimension;
      if (req.has_param("dimension") && !req.get_param_value("dimension").empty()) {
        try {
          dimension = parse_dimension(req.get_param_value("dimension"));
        } catch (const std::invalid_argument& e) {
          return send_error(res, 400, "BadRequest", e.what());
        }
      }
      const auto task = queue.next(dimension);
      send_json(res, 200, {{"task", task ? task_json(*task) : json(nullptr)}, {"progress", progress_json(queue.progress())}});
    });

    server.Get(R"(/api/grid/(\d+))", [this](const httplib::Request& req, httplib::Response& res) {
      const auto task = queue.find(std::stoull(req.matches[1].str()));
      if (!task) return send_error(res, 404, "UnknownTask", "no such task");
      std::ifstream in(task->grid_path, std::ios::binary);
      if (!in) return send_error(res, 404, "MissingGrid", "grid image not found");
      std::string bytes((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
      const bool jpeg = bytes.size() >= 2 && static_cast<unsigned char>(bytes[0]) == 0xFF;
      res.set_content(std::move(bytes), jpeg ? "image/jpeg" : "image/png");
    });

    server.Post("/api/verdict", [this](const httplib::Request& req, httplib::Response& res) {
      TaskId id = 0;
      DisplayChoice choice{};
      try {
        const json body = json::parse(req.body);
        id = body.at("task_id").get<TaskId>();
        choice = parse_display_choice(body.at("winner").get<std::string>());
      } catch (const std::exception& e) {
        return send_error(res, 400, "BadRequest", e.what());
      }
      try {
        std::lock_guard lock(write_mutex);
        const ComparisonRecord record = queue.collect(id, choice, options.judge_id);
        write_record(records, record);
        records.flush();
      } catch (const UnknownTask& e) {
        return send_error(res, 404, "UnknownTask", e.what());
      } catch (const DuplicateVerdict& e) {
        return send_error(res, 409, "DuplicateVerdict", e.what());
      }
      send_json(res, 200, {{"accepted", true}, {"task_id", id}, {"progress", progress_json(queue.progress())}});
      if (queue.finished()) notify();
    });

    server.Get("/api/progress", [this](const httplib::Request&, httplib::Response& res) {
      send_json(res, 200, progress_json(queue.progress()));
    });

    if (!options.ui_dir.empty()) {
      server.set_mount_point("/", options.ui_dir.string());
    } else {
      server.Get("/", [](const httplib::Request&, httplib::Response& res) {
        res.set_content(kPlaceholderPage, "text/html");
      });
    }
  }
};

JudgeServer::JudgeServer(HumanQueue& queue, ServeOptions options)
    : impl_(std::make_unique<Impl>(queue, std::move(options))) {
  if (impl_->options.records_out.empty()) throw std::invalid_argument("records_out is required");
  impl_->records.open(impl_->options.records_out, std::ios::app);
  if (!impl_->records) throw Error("cannot open " + impl_->options.records_out.string() + " for appending");
  // httplib's default adds SO_REUSEPORT, which would let a second session
  // bind a port that is already being served.
  impl_->server.set_socket_options([](socket_t sock) {
    int yes = 1;
    setsockopt(sock, SOL_SOCKET, SO_REUSEADDR, reinterpret_cast<const void*>(&yes), sizeof(yes));
  });
  impl_->routes();
}

JudgeServer::~JudgeServer() = default;

bool JudgeServer::bind() {
  if (impl_->options.port == 0) {
    bound_port_ = impl_->server.bind_to_any_port(impl_->options.host);
    return bound_port_ > 0;
  }
  if (!impl_->server.bind_to_port(impl_->options.host, impl_->options.port)) return false;
  bound_port_ = impl_->options.port;
  return true;
}

bool JudgeServer::run() {
  if (bound_port_ < 0 && !bind()) throw Error("cannot bind " + impl_->options.host);
  std::thread listener([this] { impl_->server.listen_after_bind(); });
  {
    std::unique_lock lock(impl_->state_mutex);
    while (!impl_->stop_requested && !impl_->queue.finished() &&
           !(impl_->options.interrupt && impl_->options.interrupt->load())) {
      impl_->wake.wait_for(lock, std::chrono::milliseconds(100));
    }
  }
  impl_->server.stop();
  listener.join();
  return impl_->queue.finished();
}

void JudgeServer::stop() {
  {
    std::lock_guard lock(impl_->state_mutex);
    impl_->stop_requested = true;
  }
  impl_->wake.notify_all();
}

}  // namespace texcurve
