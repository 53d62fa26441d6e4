#pragma once

#include <stdexcept>
#include <string>
#include <vector>

namespace texcurve {

/// Base class for every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class DecodeError : public Error {
 public:
  using Error::Error;
};

/// A mask (or an empty channel) left no pixel to measure.
class EmptySelection : public Error {
 public:
  EmptySelection() : Error("selection contains no pixels") {}
};

class EmptyHistogram : public Error {
 public:
  EmptyHistogram() : Error("histogram has zero total count") {}
};

/// One or more views of an object could not be read or decoded.
class ViewLoadError : public Error {
 public:
  explicit ViewLoadError(std::vector<std::string> paths, const std::string& detail = {});
  const std::vector<std::string>& paths() const noexcept { return paths_; }

 private:
  std::vector<std::string> paths_;
};

class ManifestError : public Error {
 public:
  using Error::Error;
};

class UnscoredRecord : public Error {
 public:
  explicit UnscoredRecord(const std::string& object_id)
      : Error("record '" + object_id + "' has no score") {}
};

class MismatchedViewCount : public Error {
 public:
  using Error::Error;
};

class MissingSample : public Error {
 public:
  MissingSample(std::string sample_id, const std::string& method_id)
      : Error("method '" + method_id + "' has no renders for sample '" + sample_id + "'"),
        sample_id_(std::move(sample_id)) {}
  const std::string& sample_id() const noexcept { return sample_id_; }

 private:
  std::string sample_id_;
};

class UnknownMethod : public Error {
 public:
  explicit UnknownMethod(const std::string& method_id)
      : Error("method '" + method_id + "' is not covered by the judge") {}
};

class TransportError : public Error {
 public:
  using Error::Error;
};

class UnparseableVerdict : public Error {
 public:
  using Error::Error;
};

class UnknownTask : public Error {
 public:
  explicit UnknownTask(unsigned long long task_id)
      : Error("unknown task " + std::to_string(task_id)) {}
};

class DuplicateVerdict : public Error {
 public:
  explicit DuplicateVerdict(unsigned long long task_id)
      : Error("task " + std::to_string(task_id) + " already has a verdict") {}
};

class InvalidScore : public Error {
 public:
  using Error::Error;
};

}  // namespace texcurve
