#include <httplib.h>

#include "texcurve/error.hpp"
#include "texcurve/judge.hpp"

namespace texcurve {

namespace {

struct SplitUrl {
  std::string origin;  // scheme://host[:port]
  std::string path;
};

SplitUrl split_url(const std::string& url) {
  const std::size_t scheme_end = url.find("://");
  if (scheme_end == std::string::npos) throw TransportError("endpoint URL has no scheme: " + url);
  const std::size_t path_start = url.find('/', scheme_end + 3);
  if (path_start == std::string::npos) return {url, "/"};
  return {url.substr(0, path_start), url.substr(path_start)};
}

}  // namespace

HttpPost make_http_post(std::chrono::seconds timeout) {
  return [timeout](const std::string& url, const std::string& body, const std::string& bearer) {
    const SplitUrl target = split_url(url);
    httplib::Client client(target.origin);
    if (!client.is_valid()) throw TransportError("unsupported endpoint " + target.origin);
    client.set_connection_timeout(std::chrono::seconds(30));
    client.set_read_timeout(timeout);
    client.set_write_timeout(timeout);
    if (!bearer.empty()) client.set_bearer_token_auth(bearer);

    auto res = client.Post(target.path, body, "application/json");
    if (!res) throw TransportError("request to " + url + " failed: " + httplib::to_string(res.error()));
    return HttpReply{res->status, res->body};
  };
}

}  // namespace texcurve
