#pragma once

// Structured verification results with text and JSON renderings.

#include <json.hpp>

#include <optional>
#include <sstream>
#include <string>
#include <vector>

namespace superreal {

using Json = nlohmann::ordered_json;

enum class Status { pass, fail, flagged };

inline const char* to_string(Status s) {
  switch (s) {
    case Status::pass: return "pass";
    case Status::fail: return "fail";
    default: return "flagged";
  }
}

struct Check {
  std::string name;
  Status status = Status::pass;
  std::optional<Json> witness;
  std::string note;
};

struct VerificationReport {
  std::string command;
  Json config = Json::object();
  std::vector<Check> checks;
  /// Command-specific payload (basis listings, scan tables, witnesses).
  Json details = Json::object();

  void add(Check c) { checks.push_back(std::move(c)); }

  void add(const std::string& name, bool ok, std::optional<Json> witness = std::nullopt, std::string note = {}) {
    add(Check{name, ok ? Status::pass : Status::fail, ok ? std::nullopt : std::move(witness), std::move(note)});
  }

  void flag(const std::string& name, std::string note, std::optional<Json> witness = std::nullopt) {
    add(Check{name, Status::flagged, std::move(witness), std::move(note)});
  }

  /// Append another report's checks, prefixing their names.
  void merge(const VerificationReport& other, const std::string& prefix) {
    for (auto c : other.checks) {
      c.name = prefix + c.name;
      checks.push_back(std::move(c));
    }
  }

  int count(Status s) const {
    int n = 0;
    for (const auto& c : checks) n += c.status == s;
    return n;
  }
  bool any_failed() const { return count(Status::fail) > 0; }

  const Check* find(const std::string& name) const {
    for (const auto& c : checks)
      if (c.name == name) return &c;
    return nullptr;
  }

  Json to_json() const {
    Json j;
    j["command"] = command;
    j["config"] = config;
    Json arr = Json::array();
    for (const auto& c : checks) {
      Json e;
      e["name"] = c.name;
      e["status"] = to_string(c.status);
      if (c.witness) e["witness"] = *c.witness;
      if (!c.note.empty()) e["note"] = c.note;
      arr.push_back(std::move(e));
    }
    j["checks"] = std::move(arr);
    if (!details.empty()) j["details"] = details;
    j["summary"] = {{"pass", count(Status::pass)}, {"fail", count(Status::fail)}, {"flagged", count(Status::flagged)}};
    return j;
  }

  std::string to_text() const {
    std::ostringstream os;
    os << command << "\n";
    for (const auto& [k, v] : config.items()) os << "  " << k << ": " << (v.is_string() ? v.get<std::string>() : v.dump()) << "\n";
    for (const auto& c : checks) {
      os << "[" << to_string(c.status) << "] " << c.name << "\n";
      if (!c.note.empty()) os << "    note: " << c.note << "\n";
      if (c.witness) os << "    witness: " << c.witness->dump() << "\n";
    }
    if (!details.empty()) os << "details: " << details.dump(2) << "\n";
    os << "summary: " << count(Status::pass) << " pass, " << count(Status::fail) << " fail, " << count(Status::flagged)
       << " flagged\n";
    return os.str();
  }
};

}  // namespace superreal
