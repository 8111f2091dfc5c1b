#include <doctest.h>

#include <algorithm>

#include "fathom/python_harness.hpp"
#include "support.hpp"

using namespace fathom;
using namespace fathom::py;
using testsupport::read_fixture;

namespace {
const std::chrono::milliseconds kTimeout{5000};
const std::chrono::milliseconds kShort{800};

std::string original_463() {
    // the problem fixture is the mutant; reverse the recorded mutation
    PythonProblem p = testsupport::load_problem_fixture("463");
    std::string src = p.source;
    std::size_t pos = src.find("    ans = 0 + 1\n");
    REQUIRE(pos != std::string::npos);
    src.erase(pos, 16);
    return src;
}
}  // namespace

TEST_CASE("run_python classifies pass, assertion failure, and timeout") {
    CHECK(run_python(original_463(), kTimeout).status == RunOutcome::Status::Pass);

    RunOutcome failed = run_python(testsupport::load_problem_fixture("463").source, kTimeout);
    CHECK(failed.status == RunOutcome::Status::AssertionFailed);
    REQUIRE(failed.line.has_value());
    CHECK(*failed.line == 11);  // the module-level assert

    RunOutcome hung = run_python("while True: pass\n", std::chrono::milliseconds(100));
    CHECK(hung.status == RunOutcome::Status::Timeout);

    RunOutcome crash = run_python("raise ValueError('boom')\n", kTimeout);
    CHECK(crash.status == RunOutcome::Status::RuntimeError);
    CHECK(crash.message.find("boom") != std::string::npos);
}

TEST_CASE("a missing interpreter is an environment error, not a program failure") {
    CHECK_THROWS_AS(run_python("print(1)\n", kTimeout, "definitely-not-a-python"), EnvError);
}

TEST_CASE("WBO site scan on the motivating program") {
    std::string src = original_463();
    auto sites = scan_mutation_sites(src, MutationKind::WBO);
    // the ">" in the loop guard and the "==" in the assert are both sites
    bool gt = false, eq_in_assert = false;
    for (const auto& s : sites) {
        if (s.token == ">" && s.line == 5) gt = true;
        if (s.token == "==" && s.line == 10) eq_in_assert = true;
    }
    CHECK(gt);
    CHECK(eq_in_assert);
}

TEST_CASE("ADC site scan finds simple assignments only") {
    std::string src = original_463();
    auto sites = scan_mutation_sites(src, MutationKind::ADC);
    REQUIRE(sites.size() == 2);
    CHECK(sites[0].line == 2);  // limit = min(limit, n)
    CHECK(sites[0].token == "limit");
    CHECK(sites[1].line == 3);  // ans = 0
    CHECK(sites[1].token == "ans");
}

TEST_CASE("augmented and tuple assignments are not ADC sites") {
    CHECK(scan_mutation_sites("x += 1\n", MutationKind::ADC).empty());
    CHECK(scan_mutation_sites("x, y = (1, 2)\n", MutationKind::ADC).empty());
    CHECK(scan_mutation_sites("a.b = 1\n", MutationKind::ADC).empty());
    CHECK(scan_mutation_sites("x = 1  # note\n", MutationKind::ADC).empty());
    CHECK(scan_mutation_sites("def f(x = 3):\n    pass\n", MutationKind::ADC).empty());
    auto ok = scan_mutation_sites("value = f(a, b) + 1\n", MutationKind::ADC);
    REQUIRE(ok.size() == 1);
    CHECK(ok[0].token == "value");
}

TEST_CASE("comparisons inside strings and comments are not WBO sites") {
    CHECK(scan_mutation_sites("s = 'a == b'\n", MutationKind::WBO).empty());
    CHECK(scan_mutation_sites("# a < b\nx = 1\n", MutationKind::WBO).empty());
    CHECK(scan_mutation_sites("def f(a: int) -> int:\n    return a\n", MutationKind::WBO)
              .empty());
    CHECK(scan_mutation_sites("x = a << 2\n", MutationKind::WBO).empty());
}

TEST_CASE("the WBO replacement table is fixed") {
    CHECK(mutate_wbo("if a == b:\n    pass\n", SiteSelection::at(0)).record.mutated_text ==
          "if a != b:");
    CHECK(mutate_wbo("if a != b:\n    pass\n", SiteSelection::at(0)).record.mutated_text ==
          "if a == b:");
    CHECK(mutate_wbo("if a < b:\n    pass\n", SiteSelection::at(0)).record.mutated_text ==
          "if a >= b:");
    CHECK(mutate_wbo("if a >= b:\n    pass\n", SiteSelection::at(0)).record.mutated_text ==
          "if a < b:");
    CHECK(mutate_wbo("if a > b:\n    pass\n", SiteSelection::at(0)).record.mutated_text ==
          "if a <= b:");
    CHECK(mutate_wbo("if a <= b:\n    pass\n", SiteSelection::at(0)).record.mutated_text ==
          "if a > b:");
}

TEST_CASE("assert lines are never mutated") {
    CHECK_THROWS_AS(mutate_wbo("assert a == b\n", SiteSelection::at(0)), NoSite);
    CHECK_THROWS_AS(mutate_wbo("s = 'x < y'\n", SiteSelection::at(0)), NoSite);
    CHECK_THROWS_AS(mutate_adc("", SiteSelection::at(0)), NoSite);
    // when the only comparison sits on an assert line there is no site left
    CHECK_THROWS_AS(mutate_wbo("x = 1\nassert x == 1\n", SiteSelection::seeded(7)), NoSite);
    // with another comparison available, the assert line is never chosen
    std::string src = "x = 1\ny = x < 2\nassert x == 1\n";
    for (std::uint64_t seed = 0; seed < 8; ++seed) {
        auto m = mutate_wbo(src, SiteSelection::seeded(seed));
        CHECK(m.record.line == 2);
    }
}

TEST_CASE("mutants differ in exactly one line (WBO) or one inserted line (ADC)") {
    std::string src = original_463();
    auto wbo = mutate_wbo(src, SiteSelection::at(0));
    {
        std::istringstream a(src), b(wbo.source);
        std::string la, lb;
        int diffs = 0, lines = 0;
        while (std::getline(a, la) && std::getline(b, lb)) {
            lines++;
            if (la != lb) diffs++;
        }
        CHECK(diffs == 1);
    }
    auto adc = mutate_adc(src, SiteSelection::at(1));
    CHECK(adc.record.line == 4);
    CHECK(adc.record.mutated_text == "    ans = 0 + 1");
    CHECK(std::count(adc.source.begin(), adc.source.end(), '\n') ==
          std::count(src.begin(), src.end(), '\n') + 1);
}

TEST_CASE("re-applying a record reproduces the mutant byte-for-byte") {
    std::string src = original_463();
    for (int site = 0; site < 2; ++site) {
        auto m = mutate_adc(src, SiteSelection::at(site));
        CHECK(apply_record(src, m.record) == m.source);
    }
    auto w = mutate_wbo(src, SiteSelection::at(0));
    CHECK(apply_record(src, w.record) == w.source);
    // the recorded fixture reproduces the shipped mutant exactly
    PythonProblem p = testsupport::load_problem_fixture("463");
    CHECK(apply_record(src, *p.ground_truth) == p.source);
}

TEST_CASE("seeded site selection is deterministic") {
    std::string src = original_463();
    auto a = mutate_adc(src, SiteSelection::seeded(42));
    auto b = mutate_adc(src, SiteSelection::seeded(42));
    CHECK(a.source == b.source);
    CHECK(a.record.site_index == b.record.site_index);
}

TEST_CASE("the paper's printed mutants are reproduced site by site") {
    // #463: duplicate "ans = 0" -> inserted "ans = 0 + 1" on line 4
    {
        auto m = mutate_adc(original_463(), SiteSelection::at(1));
        PythonProblem p = testsupport::load_problem_fixture("463");
        CHECK(m.source == p.source);
        CHECK(m.record.line == p.ground_truth->line);
    }
    // #188: duplicate "left = 0" -> inserted "left = 0 + 1" on line 3
    {
        PythonProblem p = testsupport::load_problem_fixture("188");
        std::string original = p.source;
        std::size_t pos = original.find("    left = 0 + 1\n");
        REQUIRE(pos != std::string::npos);
        original.erase(pos, 17);
        auto m = mutate_adc(original, SiteSelection::at(0));
        CHECK(m.source == p.source);
        CHECK(m.record.mutated_text == "    left = 0 + 1");
        CHECK(m.record.line == 3);
    }
    // #57: "if a >= 5:" -> "if a < 5:" via the replacement table
    {
        PythonProblem p = testsupport::load_problem_fixture("57");
        std::string original = p.source;
        std::size_t pos = original.find("        if a < 5:");
        REQUIRE(pos != std::string::npos);
        original.replace(pos, 17, "        if a >= 5:");
        auto m = mutate_wbo(original, SiteSelection::at(0));
        CHECK(m.source == p.source);
        CHECK(m.record.line == 4);
    }
    // #76: "while x >= y:" -> "while x < y:"
    {
        PythonProblem p = testsupport::load_problem_fixture("76");
        std::string original = p.source;
        std::size_t pos = original.find("    while x < y:");
        REQUIRE(pos != std::string::npos);
        original.replace(pos, 16, "    while x >= y:");
        auto m = mutate_wbo(original, SiteSelection::at(0));
        CHECK(m.source == p.source);
        CHECK(m.record.line == 4);
    }
}

TEST_CASE("validate_mutant: accepted, equivalent, and hang-flagged") {
    PythonProblem original;
    original.id = "463";
    original.source = original_463();

    // the ADC mutant fails the assertion
    Validation v = validate_mutant(original, testsupport::load_problem_fixture("463").source,
                                   kTimeout);
    CHECK(v.accepted);
    CHECK_FALSE(v.timeout_flagged);

    // a mutation in dead code leaves the asserts passing
    std::string dead = "def f(x):\n    if False:\n        x = x + 1\n    return x\n\n"
                       "assert f(1) == 1\n";
    std::string dead_mutant = "def f(x):\n    if False:\n        x = x + 1\n        x = x + 1 + 1\n"
                              "    return x\n\nassert f(1) == 1\n";
    Validation eq = validate_mutant(original, dead_mutant, kTimeout);
    CHECK_FALSE(eq.accepted);
    CHECK(eq.reason == "EquivalentMutant");

    // the diverging distanceTraveled WBO mutant is accepted via the
    // flagged timeout path
    Validation hang =
        validate_mutant(original, testsupport::load_problem_fixture("57").source, kShort);
    CHECK(hang.accepted);
    CHECK(hang.timeout_flagged);
}

TEST_CASE("benchmark ingestion reads the documented layout") {
    PythonProblem p = testsupport::load_problem_fixture("463");
    CHECK(p.id == "463");
    REQUIRE(p.description.has_value());
    CHECK(p.description->find("candies") != std::string::npos);
    REQUIRE(p.ground_truth.has_value());
    CHECK(p.ground_truth->kind == MutationKind::ADC);
    CHECK(p.ground_truth->line == 4);

    auto all = load_benchmark(testsupport::fixture_path("problems"));
    CHECK(all.size() >= 5);
}
