#pragma once

#include <filesystem>
#include <string>
#include <vector>

#include "kappa/parser.hpp"
#include "kappa/verdict.hpp"

namespace kappa {

struct CorpusSpec {
  std::vector<CorpusEntry> entries;
  RunCaps caps;
  std::vector<std::string> theorem_ids;  // empty = all registered checks
};

struct RunOptions {
  unsigned jobs = 0;  // 0 = hardware concurrency
  bool strict = false;
};

struct RunOutput {
  json document;
  int exit_code = 0;  // 0 clean, 2 any failed verdict, 3 strict + cap refusals
};

// Builds every group up front (every descriptor must resolve), then verifies
// entries on a worker pool. Workers own their groups exclusively; results are
// merged in corpus order, so the document is independent of scheduling.
RunOutput run_corpus(const CorpusSpec& spec, const RunOptions& opts,
                     const std::filesystem::path& base_dir = ".");

std::string format_text_report(const json& doc);

// Copy with every elapsed_ms zeroed; two runs of the same spec must serialize
// identically after this.
json scrub_timing(json doc);

// Witness replay: rebuild each group from its descriptor and closure-check
// every membership list found in the verdict witnesses. Returns problem
// descriptions, empty when everything validates.
std::vector<std::string> replay_witnesses(const json& doc, const RunCaps& caps,
                                          const std::filesystem::path& base_dir = ".");

}  // namespace kappa
