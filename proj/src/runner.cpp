#include "kappa/runner.hpp"

#include <atomic>
#include <map>
#include <sstream>
#include <thread>

#include "kappa/bitkernels.hpp"
#include "kappa/errors.hpp"
#include "kappa/invariants.hpp"
#include "kappa/mna.hpp"
#include "kappa/theorems.hpp"

namespace kappa {

namespace {

json group_summary(const FiniteGroup& g, const RunCaps& caps) {
  json j;
  j["order"] = g.order();
  j["abelian"] = g.is_abelian();
  MnaReport r = mna_report(g);
  j["alpha1"] = r.alpha1;
  j["kappa1"] = r.kappa1;
  if (r.beta1) j["beta1"] = *r.beta1;
  j["pi1"] = std::vector<std::uint32_t>(r.pi1.begin(), r.pi1.end());
  std::vector<std::size_t> sizes;
  for (const auto& o : r.classes.orbits) sizes.push_back(o.members.size());
  j["orbit_sizes"] = sizes;
  if (p_group_prime(g)) {
    try {
      j["at_level"] = at_level(g, caps.oracle_cap);
    } catch (const CapExceeded&) {
      j["at_level"] = nullptr;
    }
  }
  return j;
}

struct EntryResult {
  json group_row;
  std::vector<TheoremVerdict> verdicts;
  bool refused = false;
};

}  // namespace

RunOutput run_corpus(const CorpusSpec& spec, const RunOptions& opts,
                     const std::filesystem::path& base_dir) {
  for (const std::string& id : spec.theorem_ids)
    if (!is_known_theorem_id(id)) throw InputError("unknown theorem id: " + id);

  // resolve every descriptor first; a cap refusal is recorded, anything else throws
  struct Built {
    CorpusEntry entry;
    FiniteGroup group;
    bool refused = false;
    std::string refusal;
  };
  std::vector<Built> built;
  built.reserve(spec.entries.size());
  for (const CorpusEntry& e : spec.entries) {
    Built b;
    b.entry = e;
    try {
      b.group = parse_group(e.descriptor, spec.caps, base_dir);
    } catch (const CapExceeded& ex) {
      b.refused = true;
      b.refusal = ex.what();
    } catch (const ParseError& ex) {
      throw ParseError(e.line, ex.col, std::string(ex.what()) + " (corpus line " +
                                           std::to_string(e.line) + ": " + e.descriptor + ")");
    }
    built.push_back(std::move(b));
  }

  std::vector<EntryResult> results(built.size());
  std::atomic<std::size_t> next{0};
  auto worker = [&] {
    for (;;) {
      std::size_t i = next.fetch_add(1);
      if (i >= built.size()) return;
      EntryResult& res = results[i];
      json row;
      row["name"] = built[i].entry.name;
      row["descriptor"] = built[i].entry.descriptor;
      if (built[i].refused) {
        row["error"] = built[i].refusal;
        res.refused = true;
        res.group_row = std::move(row);
        continue;
      }
      const FiniteGroup& g = built[i].group;
      row["report"] = group_summary(g, spec.caps);
      res.group_row = std::move(row);
      res.verdicts = run_lemma_suite(g, spec.theorem_ids, spec.caps);
    }
  };
  unsigned jobs = opts.jobs ? opts.jobs : std::max(1u, std::thread::hardware_concurrency());
  jobs = static_cast<unsigned>(std::min<std::size_t>(jobs, std::max<std::size_t>(built.size(), 1)));
  std::vector<std::thread> pool;
  for (unsigned t = 1; t < jobs; ++t) pool.emplace_back(worker);
  worker();
  for (auto& t : pool) t.join();

  json doc;
  doc["config"] = {{"max_order", spec.caps.max_order},
                   {"oracle_cap", spec.caps.oracle_cap},
                   {"assoc_cap", spec.caps.assoc_cap},
                   {"strict", opts.strict},
                   {"kernels", bitk::kernels().name}};
  {
    std::vector<std::string> ids = spec.theorem_ids;
    if (ids.empty())
      for (const TheoremCheck& c : theorem_registry()) ids.push_back(c.id);
    doc["config"]["theorems"] = ids;
  }

  json groups = json::array();
  json flat = json::array();
  std::size_t checked = 0, passed = 0, failed = 0, vacuous = 0, not_computed = 0, refusals = 0;
  for (std::size_t i = 0; i < results.size(); ++i) {
    groups.push_back(results[i].group_row);
    if (results[i].refused) {
      ++refusals;
      continue;
    }
    for (const TheoremVerdict& v : results[i].verdicts) {
      json rec = v.to_json();
      rec.erase("theorem");
      json row;
      row["group"] = built[i].entry.name;
      row["theorem"] = v.theorem;
      for (auto& [k, val] : rec.items()) row[k] = val;
      flat.push_back(std::move(row));
      ++checked;
      if (v.not_computed) {
        ++not_computed;
      } else if (!v.applicable) {
        ++vacuous;
      } else if (v.passed) {
        ++passed;
      } else {
        ++failed;
      }
    }
  }
  doc["groups"] = std::move(groups);
  doc["results"] = std::move(flat);

  int exit_code = 0;
  if (failed) exit_code = 2;
  else if (opts.strict && (not_computed || refusals)) exit_code = 3;

  doc["summary"] = {{"groups", spec.entries.size()},  {"checked", checked},
                    {"passed", passed},               {"failed", failed},
                    {"vacuous", vacuous},             {"not_computed", not_computed},
                    {"construction_refusals", refusals}, {"exit_code", exit_code}};

  return RunOutput{std::move(doc), exit_code};
}

std::string format_text_report(const json& doc) {
  std::ostringstream out;
  out << "group                     theorem                    status      ms\n";
  out << "-----                     -------                    ------      --\n";
  for (const json& r : doc.at("results")) {
    std::string status;
    const json& p = r.at("passed");
    if (p.is_boolean())
      status = p.get<bool>() ? "pass" : "FAIL";
    else
      status = p.get<std::string>();
    char line[160];
    std::snprintf(line, sizeof(line), "%-25s %-26s %-10s %8.2f\n",
                  r.at("group").get<std::string>().c_str(),
                  r.at("theorem").get<std::string>().c_str(), status.c_str(),
                  r.at("elapsed_ms").get<double>());
    out << line;
  }
  const json& s = doc.at("summary");
  out << "\nchecked " << s.at("checked") << "  passed " << s.at("passed") << "  failed "
      << s.at("failed") << "  vacuous " << s.at("vacuous") << "  not_computed "
      << s.at("not_computed") << "\n";
  for (const json& g : doc.at("groups")) {
    if (!g.contains("error")) continue;
    out << "refused: " << g.at("name").get<std::string>() << " -- "
        << g.at("error").get<std::string>() << "\n";
  }
  return out.str();
}

json scrub_timing(json doc) {
  if (doc.is_object()) {
    for (auto& [k, v] : doc.items()) {
      if (k == "elapsed_ms")
        v = 0.0;
      else
        v = scrub_timing(v);
    }
  } else if (doc.is_array()) {
    for (auto& v : doc) v = scrub_timing(v);
  }
  return doc;
}

namespace {

void collect_member_lists(const json& node, std::vector<std::pair<json, bool>>& out) {
  if (node.is_object()) {
    // {"order": k, "members": [...]} witnesses get an order cross-check
    if (node.contains("members") && node.contains("order") && node["members"].is_array()) {
      out.push_back({node, true});
    }
    for (const auto& [k, v] : node.items()) {
      if (v.is_array() && k.size() > 8 && k.substr(k.size() - 8) == "_members") {
        json wrap;
        wrap["members"] = v;
        out.push_back({wrap, false});
      }
      collect_member_lists(v, out);
    }
  } else if (node.is_array()) {
    for (const auto& v : node) collect_member_lists(v, out);
  }
}

}  // namespace

std::vector<std::string> replay_witnesses(const json& doc, const RunCaps& caps,
                                          const std::filesystem::path& base_dir) {
  std::vector<std::string> problems;
  // group name -> descriptor
  std::map<std::string, std::string> descriptors;
  for (const json& g : doc.at("groups"))
    if (!g.contains("error"))
      descriptors[g.at("name").get<std::string>()] = g.at("descriptor").get<std::string>();

  std::map<std::string, FiniteGroup> rebuilt;
  for (const json& r : doc.at("results")) {
    std::string gname = r.at("group").get<std::string>();
    auto it = descriptors.find(gname);
    if (it == descriptors.end()) continue;
    if (!rebuilt.count(gname)) rebuilt.emplace(gname, parse_group(it->second, caps, base_dir));
    const FiniteGroup& g = rebuilt.at(gname);

    std::vector<std::pair<json, bool>> lists;
    collect_member_lists(r.at("witness"), lists);
    for (const auto& [node, with_order] : lists) {
      DenseBitset bits(g.order());
      bool in_range = true;
      for (const json& m : node.at("members")) {
        std::uint64_t idx = m.get<std::uint64_t>();
        if (idx >= g.order()) {
          in_range = false;
          break;
        }
        bits.set(static_cast<std::uint32_t>(idx));
      }
      if (!in_range) {
        problems.push_back(gname + "/" + r.at("theorem").get<std::string>() +
                           ": witness member out of range");
        continue;
      }
      try {
        Subgroup s = make_subgroup_checked(g, bits);
        if (with_order && s.order != node.at("order").get<std::uint32_t>())
          problems.push_back(gname + "/" + r.at("theorem").get<std::string>() +
                             ": witness order mismatch");
      } catch (const std::exception& e) {
        problems.push_back(gname + "/" + r.at("theorem").get<std::string>() +
                           ": witness set is not a subgroup: " + e.what());
      }
    }
  }
  return problems;
}

}  // namespace kappa
