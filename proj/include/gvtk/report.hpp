#pragma once

// Verification records shared by every checking operation and the CLI.

#include <string>
#include <utility>
#include <vector>

#include "json.hpp"

namespace gvtk {

using Json = nlohmann::ordered_json;

enum class Status { pass, fail, skipped };

inline const char* to_string(Status s) {
  switch (s) {
    case Status::pass: return "pass";
    case Status::fail: return "fail";
    case Status::skipped: return "skipped";
  }
  return "fail";
}

struct CheckRecord {
  std::string name;
  Status status = Status::pass;
  Json witnesses = Json::array();  // replayable data for each failure
  Json details = Json::object();   // counts and other summary data

  bool passed() const { return status != Status::fail; }

  void fail(Json witness) {
    status = Status::fail;
    witnesses.push_back(std::move(witness));
  }
  void require(bool ok, Json witness) {
    if (!ok) fail(std::move(witness));
  }

  Json to_json() const {
    Json j;
    j["name"] = name;
    j["status"] = to_string(status);
    if (!details.empty()) j["details"] = details;
    j["witnesses"] = witnesses;
    return j;
  }
};

inline CheckRecord skipped(std::string name, std::string reason) {
  CheckRecord r{std::move(name), Status::skipped};
  r.details["reason"] = std::move(reason);
  return r;
}

inline bool all_passed(const std::vector<CheckRecord>& records) {
  for (const auto& r : records)
    if (!r.passed()) return false;
  return true;
}

// Prefixes every record name, e.g. "case 3/" for corpus entries.
inline void prefix_names(std::vector<CheckRecord>& records, const std::string& prefix) {
  for (auto& r : records) r.name = prefix + r.name;
}

// Folds a failed sub-check into an aggregate record, keeping its witnesses
// behind a locator such as {"sample": 3}.
inline void absorb(CheckRecord& into, const CheckRecord& r, Json where) {
  if (r.passed()) return;
  where["check"] = r.name;
  where["witnesses"] = r.witnesses;
  into.fail(std::move(where));
}

}  // namespace gvtk
