#pragma once

#include <optional>
#include <ostream>
#include <string>
#include <utility>
#include <vector>

#include "invset/exactnum.hpp"

namespace invset::cli {

/// Exact value string (parseable by the exactnum parsers, or empty when the
/// value is only known numerically) and its decimal rendering.
struct ResultValue {
  std::optional<std::string> exact;
  std::string decimal;
};

struct RunRecord {
  std::string command;
  std::vector<std::pair<std::string, std::string>> parameters;
  std::vector<std::pair<std::string, ResultValue>> results;
  std::vector<std::pair<std::string, std::string>> artifacts;  // bit strings and other non-numeric output
  std::vector<std::string> flags;
  std::optional<std::string> seed;
  std::string version;

  void param(std::string key, std::string value);
  void result(std::string key, const Rational& value);
  void result(std::string key, const QuadExtElement& value);
  void result_numeric(std::string key, std::string decimal);
  void artifact(std::string key, std::string value);
  void flag(std::string f);
};

inline constexpr unsigned kRecordDecimals = 30;

/// One JSON object per line, keys in a fixed order.
std::string to_json_line(const RunRecord& record);
RunRecord from_json_line(const std::string& line);

enum class Format { Records, Csv };

class RecordWriter {
 public:
  RecordWriter(std::ostream& out, Format format) : out_(out), format_(format) {}
  void write(const RunRecord& record);

 private:
  std::ostream& out_;
  Format format_;
  bool header_done_ = false;
};

/// Header row used by the CSV format.
std::string csv_header();

}  // namespace invset::cli
