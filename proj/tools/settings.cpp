#include "settings.hpp"

#include <algorithm>
#include <cctype>
#include <cstdlib>
#include <fstream>
#include <stdexcept>

namespace texcurve::cli {

namespace {

std::string normalize_key(std::string key) {
  std::replace(key.begin(), key.end(), '-', '_');
  std::transform(key.begin(), key.end(), key.begin(),
                 [](unsigned char c) { return static_cast<char>(std::tolower(c)); });
  return key;
}

std::string trim(const std::string& s) {
  const auto first = s.find_first_not_of(" \t\r");
  if (first == std::string::npos) return {};
  const auto last = s.find_last_not_of(" \t\r");
  return s.substr(first, last - first + 1);
}

std::string env_name(const std::string& key) {
  std::string name = "TEXCURVE_" + key;
  std::transform(name.begin(), name.end(), name.begin(),
                 [](unsigned char c) { return static_cast<char>(std::toupper(c)); });
  return name;
}

}  // namespace

EnvLookup process_env() {
  return [](const std::string& name) -> std::optional<std::string> {
    if (const char* v = std::getenv(name.c_str())) return std::string(v);
    return std::nullopt;
  };
}

const char* to_string(Settings::Source source) {
  switch (source) {
    case Settings::Source::flag: return "flag";
    case Settings::Source::env: return "env";
    case Settings::Source::file: return "config";
    case Settings::Source::fallback: return "default";
  }
  return "default";
}

Settings::Settings(EnvLookup env) : env_(std::move(env)) {}

void Settings::load_file(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot read config file " + path.string());
  std::string line;
  int line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (const auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
    line = trim(line);
    if (line.empty()) continue;
    const auto eq = line.find('=');
    if (eq == std::string::npos) {
      throw std::runtime_error(path.string() + ":" + std::to_string(line_no) + ": expected key = value");
    }
    std::string value = trim(line.substr(eq + 1));
    if (value.size() >= 2 && value.front() == '"' && value.back() == '"') value = value.substr(1, value.size() - 2);
    file_[normalize_key(trim(line.substr(0, eq)))] = value;
  }
}

void Settings::set_flag(const std::string& key, std::string value) { flags_[normalize_key(key)] = std::move(value); }

std::optional<std::pair<std::string, Settings::Source>> Settings::resolve(const std::string& key) const {
  if (const auto it = flags_.find(key); it != flags_.end()) return std::pair{it->second, Source::flag};
  if (env_) {
    if (auto v = env_(env_name(key)); v && !v->empty()) return std::pair{*v, Source::env};
  }
  if (const auto it = file_.find(key); it != file_.end()) return std::pair{it->second, Source::file};
  return std::nullopt;
}

std::optional<std::string> Settings::lookup(const std::string& key) const {
  if (auto r = resolve(normalize_key(key))) return r->first;
  return std::nullopt;
}

void Settings::note(const std::string& key, const std::string& value, Source source) {
  for (const Entry& e : used_) {
    if (e.key == key) return;
  }
  used_.push_back({key, value, source});
}

std::string Settings::get(const std::string& raw_key, const std::string& fallback) {
  const std::string key = normalize_key(raw_key);
  if (auto r = resolve(key)) {
    note(key, r->first, r->second);
    return r->first;
  }
  note(key, fallback, Source::fallback);
  return fallback;
}

double Settings::get_double(const std::string& key, double fallback) {
  const std::string text = get(key, "");
  if (text.empty()) {
    used_.back().value = std::to_string(fallback);
    return fallback;
  }
  std::size_t used = 0;
  double v = 0;
  try {
    v = std::stod(text, &used);
  } catch (const std::exception&) {
    used = 0;
  }
  if (used != text.size()) throw std::runtime_error("setting " + key + ": '" + text + "' is not a number");
  return v;
}

long long Settings::get_int(const std::string& key, long long fallback) {
  const std::string text = get(key, "");
  if (text.empty()) {
    used_.back().value = std::to_string(fallback);
    return fallback;
  }
  std::size_t used = 0;
  long long v = 0;
  try {
    v = std::stoll(text, &used);
  } catch (const std::exception&) {
    used = 0;
  }
  if (used != text.size()) throw std::runtime_error("setting " + key + ": '" + text + "' is not an integer");
  return v;
}

unsigned long long Settings::get_uint(const std::string& key, unsigned long long fallback) {
  const std::string text = get(key, "");
  if (text.empty()) {
    used_.back().value = std::to_string(fallback);
    return fallback;
  }
  std::size_t used = 0;
  unsigned long long v = 0;
  try {
    if (text.front() != '-') v = std::stoull(text, &used);
  } catch (const std::exception&) {
    used = 0;
  }
  if (used != text.size()) {
    throw std::runtime_error("setting " + key + ": '" + text + "' is not a non-negative integer");
  }
  return v;
}

}  // namespace texcurve::cli
