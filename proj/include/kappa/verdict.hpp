#pragma once

#include <string>

#include <json.hpp>

#include "kappa/group.hpp"

namespace kappa {

using json = nlohmann::ordered_json;

struct TheoremVerdict {
  std::string theorem;
  bool applicable = false;
  bool passed = false;       // meaningful only when applicable
  bool not_computed = false; // refused at a cap; applicable/pass unknown
  json witness = json::object();
  double elapsed_ms = 0.0;

  bool failed() const { return applicable && !passed && !not_computed; }

  json to_json() const {
    json j;
    j["theorem"] = theorem;
    if (not_computed) {
      j["applicable"] = nullptr;
      j["passed"] = "not_computed";
    } else {
      j["applicable"] = applicable;
      if (applicable)
        j["passed"] = passed;
      else
        j["passed"] = "vacuous";
    }
    j["witness"] = witness;
    j["elapsed_ms"] = elapsed_ms;
    return j;
  }
};

// Witness helpers: membership lists keyed "<name>_members" are replayable
// (closure-checked against a rebuilt group by the report tooling).
json subgroup_witness(const Subgroup& s);

}  // namespace kappa
