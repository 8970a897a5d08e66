#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>

#include <CLI11.hpp>

#include "kappa/errors.hpp"
#include "kappa/runner.hpp"
#include "kappa/theorems.hpp"

namespace {

std::vector<std::string> split_ids(const std::string& csv) {
  std::vector<std::string> out;
  std::stringstream ss(csv);
  std::string tok;
  while (std::getline(ss, tok, ',')) {
    while (!tok.empty() && std::isspace(static_cast<unsigned char>(tok.front()))) tok.erase(tok.begin());
    while (!tok.empty() && std::isspace(static_cast<unsigned char>(tok.back()))) tok.pop_back();
    if (!tok.empty()) out.push_back(tok);
  }
  return out;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"kappa-verify: enumerate minimal non-abelian subgroups of explicit finite groups "
               "and verify the conjugacy-class structure results against them"};

  std::string corpus_path;
  std::vector<std::string> single_groups;
  std::string theorems = "all";
  unsigned max_order = kappa::limits::kDefaultMaxOrder;
  unsigned oracle_cap = kappa::limits::kDefaultOracleCap;
  unsigned assoc_cap = kappa::limits::kDefaultAssocCap;
  unsigned jobs = 0;
  bool strict = false;
  std::string format = "text";
  std::string output;
  bool list_theorems = false;

  app.add_option("--corpus", corpus_path, "corpus file: one group descriptor per line");
  app.add_option("--group", single_groups, "verify a single descriptor (repeatable)");
  app.add_option("--theorems", theorems, "comma-separated theorem ids, or 'all'");
  app.add_option("--max-order", max_order, "largest group order that will be constructed");
  app.add_option("--oracle-cap", oracle_cap, "largest order for full subgroup enumeration");
  app.add_option("--assoc-cap", assoc_cap,
                 "largest order for exhaustive associativity scans on Cayley input");
  app.add_option("--jobs", jobs, "worker threads (default: hardware concurrency)");
  app.add_flag("--strict", strict, "exit 3 when any computation was refused at a cap");
  app.add_option("--format", format, "report format: json or text")
      ->check(CLI::IsMember({"json", "text"}));
  app.add_option("--output", output, "write the report to a file instead of stdout");
  app.add_flag("--list-theorems", list_theorems, "list the available theorem ids and exit");

  CLI11_PARSE(app, argc, argv);

  if (list_theorems) {
    for (const kappa::TheoremCheck& c : kappa::theorem_registry())
      std::cout << c.id << "\n    " << c.summary << "\n";
    return 0;
  }

  try {
    kappa::CorpusSpec spec;
    spec.caps.max_order = max_order;
    spec.caps.oracle_cap = oracle_cap;
    spec.caps.assoc_cap = assoc_cap;
    if (theorems != "all") spec.theorem_ids = split_ids(theorems);

    std::filesystem::path base_dir = ".";
    if (!corpus_path.empty()) {
      spec.entries = kappa::load_corpus(corpus_path);
      base_dir = std::filesystem::path(corpus_path).parent_path();
      if (base_dir.empty()) base_dir = ".";
    }
    for (const std::string& d : single_groups)
      spec.entries.push_back({d, d, 0});
    if (spec.entries.empty()) {
      std::cerr << "nothing to do: provide --corpus and/or --group\n";
      return 1;
    }

    kappa::RunOptions opts;
    opts.jobs = jobs;
    opts.strict = strict;
    kappa::RunOutput run = kappa::run_corpus(spec, opts, base_dir);

    std::string rendered = format == "json" ? run.document.dump(2) + "\n"
                                            : kappa::format_text_report(run.document);
    if (output.empty()) {
      std::cout << rendered;
    } else {
      std::ofstream out(output);
      if (!out) {
        std::cerr << "cannot write " << output << "\n";
        return 1;
      }
      out << rendered;
    }
    return run.exit_code;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
}
