#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <filesystem>

#include "kappa/errors.hpp"
#include "kappa/runner.hpp"
#include "kappa/theorems.hpp"

using namespace kappa;

namespace {

const std::filesystem::path kSourceDir = KAPPA_SOURCE_DIR;

CorpusSpec small_spec() {
  CorpusSpec spec;
  spec.entries = {
      {"Q8", "catalog(quaternion, 8)", 1},
      {"D16", "catalog(dihedral, 16)", 2},
      {"G72", "catalog(example72)", 3},
      {"A5", "catalog(a5)", 4},
      {"C12", "cyclic(12)", 5},
  };
  return spec;
}

}  // namespace

TEST_CASE("runner produces a complete, consistent document") {
  RunOutput out = run_corpus(small_spec(), {});
  CHECK(out.exit_code == 0);
  const json& doc = out.document;
  CHECK(doc.at("groups").size() == 5);
  CHECK(doc.at("results").size() == 5 * theorem_registry().size());
  CHECK(doc.at("summary").at("failed") == 0);

  // group report sanity
  for (const json& g : doc.at("groups")) {
    if (g.at("name") == "A5") {
      CHECK(g.at("report").at("kappa1") == 3);
      CHECK(g.at("report").at("alpha1") == 21);
    }
    if (g.at("name") == "G72") {
      CHECK(g.at("report").at("kappa1") == 1);
      CHECK(g.at("report").at("alpha1") == 12);
    }
    if (g.at("name") == "D16") CHECK(g.at("report").at("at_level") == 2);
  }

  // vacuity hygiene at the document level
  for (const json& r : doc.at("results"))
    if (r.at("applicable").is_boolean() && !r.at("applicable").get<bool>())
      CHECK(r.at("passed") == "vacuous");
}

TEST_CASE("results arrive in corpus order regardless of job count") {
  RunOutput a = run_corpus(small_spec(), {1, false});
  RunOutput b = run_corpus(small_spec(), {4, false});
  CHECK(scrub_timing(a.document) == scrub_timing(b.document));
  std::string prev;
  std::size_t per_group = theorem_registry().size();
  for (std::size_t i = 0; i < a.document.at("results").size(); i += per_group) {
    std::string name = a.document.at("results")[i].at("group");
    CHECK(name != prev);
    prev = name;
  }
}

TEST_CASE("determinism: identical documents modulo timing") {
  RunOutput a = run_corpus(small_spec(), {2, false});
  RunOutput b = run_corpus(small_spec(), {3, false});
  CHECK(scrub_timing(a.document).dump() == scrub_timing(b.document).dump());
}

TEST_CASE("selected theorem subset") {
  CorpusSpec spec = small_spec();
  spec.theorem_ids = {"kappa1_iff_alpha1", "kappa1_gap"};
  RunOutput out = run_corpus(spec, {});
  CHECK(out.document.at("results").size() == 2 * 5);
  CHECK_THROWS_AS(
      [&] {
        CorpusSpec bad = small_spec();
        bad.theorem_ids = {"nope"};
        run_corpus(bad, {});
      }(),
      InputError);
}

TEST_CASE("construction refusals surface per group and drive strict exit") {
  CorpusSpec spec;
  spec.entries = {{"big", "cyclic(4000)", 1}, {"ok", "cyclic(6)", 2}};
  spec.caps.max_order = 100;
  RunOutput out = run_corpus(spec, {});
  CHECK(out.exit_code == 0);
  CHECK(out.document.at("groups")[0].contains("error"));
  CHECK(out.document.at("summary").at("construction_refusals") == 1);
  RunOutput strict = run_corpus(spec, {0, true});
  CHECK(strict.exit_code == 3);
}

TEST_CASE("witness replay validates every membership list in a real run") {
  CorpusSpec spec;
  spec.entries = {
      {"G72", "catalog(example72)", 1},
      {"F100", "catalog(fermat_family, 5)", 2},
      {"W48", "catalog(mersenne_family, 3, 2)", 3},
      {"D16", "catalog(dihedral, 16)", 4},
      {"S3xC5", "direct(perm(3){(0 1 2),(0 1)}, cyclic(5))", 5},
  };
  RunOutput out = run_corpus(spec, {});
  REQUIRE(out.exit_code == 0);
  std::vector<std::string> problems = replay_witnesses(out.document, spec.caps);
  for (const std::string& p : problems) MESSAGE(p);
  CHECK(problems.empty());

  // and the replayer does catch corruption
  json doc = out.document;
  bool tampered = false;
  for (json& r : doc.at("results")) {
    if (r.at("witness").contains("k")) {
      json& members = r.at("witness").at("k").at("members");
      if (members.size() > 1) {
        members.erase(members.begin() + 1);
        tampered = true;
        break;
      }
    }
  }
  REQUIRE(tampered);
  CHECK(!replay_witnesses(doc, spec.caps).empty());
}

TEST_CASE("text report renders every row") {
  RunOutput out = run_corpus(small_spec(), {});
  std::string text = format_text_report(out.document);
  CHECK(text.find("kappa1_eq_p") != std::string::npos);
  CHECK(text.find("FAIL") == std::string::npos);
  CHECK(text.find("checked") != std::string::npos);
}

TEST_CASE("corpus file from the repository parses and resolves cayley paths") {
  auto entries = load_corpus(kSourceDir / "corpus" / "default.corpus");
  CHECK(entries.size() >= 40);
  // the cayley entry resolves relative to the corpus directory
  for (const auto& e : entries)
    if (e.descriptor.rfind("cayley", 0) == 0) {
      FiniteGroup g = parse_group(e.descriptor, RunCaps{}, kSourceDir / "corpus");
      CHECK(g.order() == 4);
    }
}
