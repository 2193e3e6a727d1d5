#ifndef LISTFORGE_UTIL_H_
#define LISTFORGE_UTIL_H_

#include <cstdint>
#include <functional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace listforge {

// Base class for all errors raised by the toolkit.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Malformed input file content. Carries the file name and 1-based line.
class ParseError : public Error {
 public:
  ParseError(std::string file, int line, const std::string &message);

  const std::string &file() const { return file_; }
  int line() const { return line_; }

 private:
  std::string file_;
  int line_;
};

// Cross-record consistency failure. Lists every offending reference.
class ValidationError : public Error {
 public:
  explicit ValidationError(std::vector<std::string> offenders);

  const std::vector<std::string> &offenders() const { return offenders_; }

 private:
  std::vector<std::string> offenders_;
};

// A documented precondition of an operation does not hold.
class PreconditionError : public Error {
 public:
  using Error::Error;
};

// A required input (file, directory, root category) is absent.
class MissingInputError : public Error {
 public:
  using Error::Error;
};

// String helpers.
std::string to_lower(std::string_view s);
std::string trim(std::string_view s);
bool starts_with(std::string_view s, std::string_view prefix);
std::vector<std::string> split(std::string_view s, char sep);
std::vector<std::string> split_words(std::string_view s);
std::string join(const std::vector<std::string> &parts, std::string_view sep);

// Replaces spaces with underscores and percent-encodes every byte outside
// the IRI-safe set [A-Za-z0-9-._~()!*',;:@$+=&/]. Used both for red-link
// IDs and for minted resource IRIs.
std::string percent_encode(std::string_view text);
std::string percent_decode(std::string_view text);

// 64-bit FNV-1a.
uint64_t fnv1a(std::string_view data, uint64_t seed = 0xcbf29ce484222325ULL);
std::string hex64(uint64_t value);

// Mean and population standard deviation; both 0 for an empty sample.
struct MeanStd {
  double mean = 0.0;
  double std = 0.0;
};
MeanStd mean_std(const std::vector<double> &values);

// Runs fn(i) for i in [0, n) on up to `threads` workers. Results must be
// written to per-index slots so that output is independent of scheduling.
void parallel_for(size_t n, int threads, const std::function<void(size_t)> &fn);

// Minimal leveled logging to stderr. Level is read once from LISTFORGE_LOG
// (error, warn, info, debug); default is warn.
enum class LogLevel { kError = 0, kWarn = 1, kInfo = 2, kDebug = 3 };
LogLevel log_level();
void set_log_level(LogLevel level);
void log(LogLevel level, const std::string &message);

}  // namespace listforge

#endif  // LISTFORGE_UTIL_H_
