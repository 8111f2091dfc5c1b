// llm.hpp -- chat-completion client (live HTTP or deterministic replay),
// code-fence extraction, the transpile retry loop, and diagnosis
// back-mapping.
#pragma once

#include <chrono>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "fathom/prompts.hpp"
#include "fathom/python_harness.hpp"

namespace fathom::llm {

class TransportError : public std::runtime_error {
  public:
    explicit TransportError(const std::string& msg) : std::runtime_error(msg) {}
};

class NoFixture : public std::runtime_error {
  public:
    explicit NoFixture(const std::string& msg) : std::runtime_error(msg) {}
};

class NoCodeBlock : public std::runtime_error {
  public:
    explicit NoCodeBlock(const std::string& msg) : std::runtime_error(msg) {}
};

class EmptyMapping : public std::runtime_error {
  public:
    explicit EmptyMapping(const std::string& msg) : std::runtime_error(msg) {}
};

struct LlmConfig {
    std::string endpoint;  // OpenAI-compatible chat-completions URL
    std::string model;
    int max_attempts = 5;  // failed attempts before giving up
    std::chrono::milliseconds time_budget{10 * 60 * 1000};
    bool include_description = true;
    std::string mock_dir;  // replay fixtures; non-empty selects replay mode
    std::string api_key_env = "FATHOM_API_KEY";
    int max_in_flight = 4;
    // temperature is pinned to 0 for reproducibility
    static constexpr double temperature = 0.0;
};

// Replay mode serves stored responses keyed by the sha256 of the prompt
// bytes (one file per hash); live mode posts a single user message.
class LlmClient {
  public:
    explicit LlmClient(LlmConfig config);

    std::string complete(const std::string& prompt);

    bool replay() const { return !config_.mock_dir.empty(); }
    std::int64_t last_latency_ms() const { return last_latency_ms_; }

    static std::string fixture_name(const std::string& prompt);

  private:
    LlmConfig config_;
    std::int64_t last_latency_ms_ = 0;

    std::string complete_replay(const std::string& prompt);
    std::string complete_http(const std::string& prompt);
};

// First fenced block with the given label, else the first unlabelled block.
std::string extract_code_block(const std::string& response, const std::string& lang);
std::string extract_c_code(const std::string& response);

enum class AttemptClass { Accepted, ParseFail, DifferentialFail, Timeout };
std::string to_string(AttemptClass c);

struct Attempt {
    std::string prompt;
    std::string response;
    AttemptClass classification = AttemptClass::ParseFail;
    std::string reason;  // gate feedback for the next attempt
    std::int64_t wall_ms = 0;
};

using AttemptLog = std::vector<Attempt>;

struct CandidateResult {
    enum class Status { Success, GaveUp };
    enum class GiveUpReason { MaxAttempts, TimeBudget };
    Status status = Status::GaveUp;
    GiveUpReason give_up_reason = GiveUpReason::MaxAttempts;
    std::string c_source;  // set on Success
    AttemptLog log;

    bool success() const { return status == Status::Success; }
};

// Candidate-validation callback: accept, or reject with a reason that
// fills the retry prompt's {Reason} slot.
struct GateOutcome {
    bool accepted = false;
    AttemptClass classification = AttemptClass::Accepted;
    std::string reason;
};
using GateFn = std::function<GateOutcome(const std::string& c_source)>;

using Clock = std::function<std::chrono::steady_clock::time_point()>;

// render -> complete -> extract -> gate loop; a retry embeds the full
// transpile prompt. Stops at acceptance, max failed attempts, or the time
// budget.
CandidateResult transpile_with_retry(const py::PythonProblem& problem,
                                     const LlmConfig& config, LlmClient& client,
                                     const GateFn& gate, Clock clock = nullptr);

struct BackmappedStatement {
    std::string text;
    std::optional<int> line;  // anchored line in the problem source
    bool anchored = false;
};

// Queries the model with the localised C statements and anchors each
// returned Python statement by exact trimmed-line match.
std::vector<BackmappedStatement> backmap_statements(
    LlmClient& client, const py::PythonProblem& problem,
    const std::vector<std::string>& c_statements);

}  // namespace fathom::llm
