#pragma once

#include <filesystem>
#include <functional>
#include <map>
#include <optional>
#include <string>
#include <vector>

namespace texcurve::cli {

using EnvLookup = std::function<std::optional<std::string>(const std::string& name)>;

EnvLookup process_env();

/// Effective configuration: command-line flags override environment
/// variables, which override the config file, which overrides defaults.
///
/// Config file: one `key = value` per line, `#` starts a comment. Keys use
/// underscores (dashes are accepted). The environment variable for a key is
/// TEXCURVE_ followed by the upper-cased key, e.g. TEXCURVE_VLM_ENDPOINT.
class Settings {
 public:
  enum class Source { flag, env, file, fallback };

  explicit Settings(EnvLookup env = process_env());

  /// Throws std::runtime_error on unreadable files or malformed lines.
  void load_file(const std::filesystem::path& path);
  void set_flag(const std::string& key, std::string value);

  std::optional<std::string> lookup(const std::string& key) const;
  std::string get(const std::string& key, const std::string& fallback);
  double get_double(const std::string& key, double fallback);
  long long get_int(const std::string& key, long long fallback);
  unsigned long long get_uint(const std::string& key, unsigned long long fallback);

  struct Entry {
    std::string key;
    std::string value;
    Source source;
  };
  /// Every setting read through get*(), in first-read order.
  const std::vector<Entry>& effective() const noexcept { return used_; }

 private:
  std::optional<std::pair<std::string, Source>> resolve(const std::string& key) const;
  void note(const std::string& key, const std::string& value, Source source);

  EnvLookup env_;
  std::map<std::string, std::string> flags_;
  std::map<std::string, std::string> file_;
  std::vector<Entry> used_;
};

const char* to_string(Settings::Source source);

}  // namespace texcurve::cli
