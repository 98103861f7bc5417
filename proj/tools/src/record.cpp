#include "invset_cli/record.hpp"

#include <json.hpp>

namespace invset::cli {

using Json = nlohmann::ordered_json;

void RunRecord::param(std::string key, std::string value) { parameters.emplace_back(std::move(key), std::move(value)); }

void RunRecord::result(std::string key, const Rational& value) {
  results.emplace_back(std::move(key), ResultValue{value.str(), value.decimal(kRecordDecimals)});
}

void RunRecord::result(std::string key, const QuadExtElement& value) {
  results.emplace_back(std::move(key), ResultValue{value.str(), value.decimal(kRecordDecimals)});
}

void RunRecord::result_numeric(std::string key, std::string decimal) {
  results.emplace_back(std::move(key), ResultValue{std::nullopt, std::move(decimal)});
}

void RunRecord::artifact(std::string key, std::string value) { artifacts.emplace_back(std::move(key), std::move(value)); }

void RunRecord::flag(std::string f) { flags.push_back(std::move(f)); }

std::string to_json_line(const RunRecord& r) {
  Json j;
  j["command"] = r.command;
  j["parameters"] = Json::object();
  for (const auto& [k, v] : r.parameters) j["parameters"][k] = v;
  j["results"] = Json::object();
  for (const auto& [k, v] : r.results) {
    Json entry;
    entry["exact"] = v.exact ? Json(*v.exact) : Json(nullptr);
    entry["decimal"] = v.decimal;
    j["results"][k] = entry;
  }
  if (!r.artifacts.empty()) {
    j["artifacts"] = Json::object();
    for (const auto& [k, v] : r.artifacts) j["artifacts"][k] = v;
  }
  j["flags"] = r.flags;
  j["seed"] = r.seed ? Json(*r.seed) : Json(nullptr);
  j["version"] = r.version;
  return j.dump();
}

RunRecord from_json_line(const std::string& line) {
  const auto j = Json::parse(line);
  RunRecord r;
  r.command = j.at("command").get<std::string>();
  for (const auto& [k, v] : j.at("parameters").items()) r.parameters.emplace_back(k, v.get<std::string>());
  for (const auto& [k, v] : j.at("results").items()) {
    ResultValue rv;
    if (!v.at("exact").is_null()) rv.exact = v.at("exact").get<std::string>();
    rv.decimal = v.at("decimal").get<std::string>();
    r.results.emplace_back(k, std::move(rv));
  }
  if (j.contains("artifacts")) {
    for (const auto& [k, v] : j.at("artifacts").items()) r.artifacts.emplace_back(k, v.get<std::string>());
  }
  r.flags = j.at("flags").get<std::vector<std::string>>();
  if (!j.at("seed").is_null()) r.seed = j.at("seed").get<std::string>();
  r.version = j.at("version").get<std::string>();
  return r;
}

namespace {

std::string csv_field(const std::string& s) {
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string out = "\"";
  for (char c : s) {
    if (c == '"') out += '"';
    out += c;
  }
  return out + "\"";
}

std::string joined_flags(const std::vector<std::string>& flags) {
  std::string out;
  for (const auto& f : flags) out += (out.empty() ? "" : ";") + f;
  return out;
}

}  // namespace

std::string csv_header() { return "command,kind,key,exact,decimal,flags,seed,version"; }

void RecordWriter::write(const RunRecord& r) {
  if (format_ == Format::Records) {
    out_ << to_json_line(r) << '\n';
    return;
  }
  if (!header_done_) {
    out_ << csv_header() << '\n';
    header_done_ = true;
  }
  const std::string tail =
      "," + csv_field(joined_flags(r.flags)) + "," + r.seed.value_or("") + "," + csv_field(r.version) + "\n";
  for (const auto& [k, v] : r.parameters) {
    out_ << csv_field(r.command) << ",parameter," << csv_field(k) << "," << csv_field(v) << "," << tail;
  }
  for (const auto& [k, v] : r.results) {
    out_ << csv_field(r.command) << ",result," << csv_field(k) << "," << csv_field(v.exact.value_or("")) << ","
         << v.decimal << tail;
  }
  for (const auto& [k, v] : r.artifacts) {
    out_ << csv_field(r.command) << ",artifact," << csv_field(k) << "," << csv_field(v) << "," << tail;
  }
  if (r.parameters.empty() && r.results.empty() && r.artifacts.empty()) {
    out_ << csv_field(r.command) << ",record,,," << tail;
  }
}

}  // namespace invset::cli
