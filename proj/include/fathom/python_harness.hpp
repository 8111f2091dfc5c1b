// python_harness.hpp -- the Python-facing half of the pipeline: run
// programs with assertions through an external interpreter, scan sources
// with a lightweight tokenizer, and inject WBO/ADC mutations with
// ground-truth records.
#pragma once

#include <chrono>
#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace fathom::py {

class PyLexError : public std::runtime_error {
  public:
    PyLexError(int line, const std::string& msg)
        : std::runtime_error("line " + std::to_string(line) + ": " + msg), line_(line) {}
    int line() const { return line_; }

  private:
    int line_;
};

class NoSite : public std::runtime_error {
  public:
    explicit NoSite(const std::string& msg) : std::runtime_error(msg) {}
};

class EnvError : public std::runtime_error {
  public:
    explicit EnvError(const std::string& msg) : std::runtime_error(msg) {}
};

enum class MutationKind { WBO, ADC };

std::string to_string(MutationKind k);
MutationKind mutation_kind_from_string(const std::string& s);

struct MutationSite {
    MutationKind kind = MutationKind::WBO;
    int line = 0;  // 1-based
    int col = 0;   // 1-based
    std::string token;  // WBO: the comparison operator; ADC: the target name
};

// WBO sites are comparison operator tokens outside strings and comments
// (assert lines included here; the mutation operators filter them out).
// ADC sites are single-target simple assignments "NAME = expr".
std::vector<MutationSite> scan_mutation_sites(const std::string& source, MutationKind kind);

struct MutantRecord {
    MutationKind kind = MutationKind::WBO;
    int line = 0;               // WBO: the altered line; ADC: the inserted line
    std::string original_text;  // WBO: the line before; ADC: the duplicated statement
    std::string mutated_text;   // the replacement / inserted line
    std::uint64_t seed = 0;
    int site_index = -1;
};

// Either an explicit site index or a seed for deterministic uniform choice.
struct SiteSelection {
    std::optional<int> index;
    std::uint64_t seed = 0;

    static SiteSelection at(int i) { return SiteSelection{i, 0}; }
    static SiteSelection seeded(std::uint64_t s) { return SiteSelection{std::nullopt, s}; }
};

struct MutationResult {
    std::string source;
    MutantRecord record;
};

// Replaces one comparison operator via the fixed table
// (== <-> !=, < <-> >=, > <-> <=); exactly one line differs.
MutationResult mutate_wbo(const std::string& source, const SiteSelection& sel);

// Duplicates one assignment immediately below itself at identical
// indentation with " + 1" appended; exactly one line is inserted.
MutationResult mutate_adc(const std::string& source, const SiteSelection& sel);

// Re-applies a record to the original source (reproduces the mutant
// byte-for-byte).
std::string apply_record(const std::string& original, const MutantRecord& record);

struct RunOutcome {
    enum class Status { Pass, AssertionFailed, RuntimeError, Timeout };
    Status status = Status::Pass;
    std::optional<int> line;  // AssertionFailed: line from the traceback
    std::string message;      // RuntimeError: last diagnostic line
    std::int64_t duration_ms = 0;

    bool passed() const { return status == Status::Pass; }
};

std::string to_string(RunOutcome::Status s);

// Runs the module in an isolated subprocess of the configured interpreter;
// kills the process at the timeout. Throws EnvError when the interpreter
// itself cannot be executed.
RunOutcome run_python(const std::string& source, std::chrono::milliseconds timeout,
                      const std::string& interpreter = "python3");

struct PythonProblem {
    std::string id;
    std::optional<std::string> description;
    std::string source;  // the program under test, with module-level asserts
    std::optional<MutantRecord> ground_truth;
};

struct Validation {
    bool accepted = false;
    bool timeout_flagged = false;  // accepted through the hang policy
    std::string reason;            // rejection reason
};

// Accepted iff the mutant fails an assertion, or times out under the
// hang-accept policy (flagged). A mutant that still passes is an
// equivalent mutant.
Validation validate_mutant(const PythonProblem& original, const std::string& mutant_source,
                           std::chrono::milliseconds timeout,
                           const std::string& interpreter = "python3");

std::string mutant_record_to_json(const MutantRecord& r);
MutantRecord mutant_record_from_json(const std::string& text);

// Benchmark layout: problems/<id>/{description.txt?, program.py, mutant.json?}
PythonProblem load_problem(const std::string& dir);
std::vector<PythonProblem> load_benchmark(const std::string& dir);

// Module-level assert lines (used to split a problem source into code and
// specification when rendering prompts).
std::vector<std::string> module_assert_lines(const std::string& source);
std::string strip_module_asserts(const std::string& source);

}  // namespace fathom::py
