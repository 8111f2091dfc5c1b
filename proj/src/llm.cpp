#include "fathom/llm.hpp"

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <condition_variable>
#include <mutex>
#include <sstream>

#include <httplib.h>
#include <json.hpp>

#include "fathom/sha256.hpp"

namespace fathom::llm {

namespace {

// bounded in-flight requests across all clients
std::mutex g_inflight_mutex;
std::condition_variable g_inflight_cv;
int g_inflight = 0;

struct InflightSlot {
    int limit;
    explicit InflightSlot(int max_in_flight) : limit(max_in_flight) {
        std::unique_lock<std::mutex> lock(g_inflight_mutex);
        g_inflight_cv.wait(lock, [&] { return g_inflight < limit; });
        g_inflight++;
    }
    ~InflightSlot() {
        {
            std::lock_guard<std::mutex> lock(g_inflight_mutex);
            g_inflight--;
        }
        g_inflight_cv.notify_one();
    }
};

std::string trim(const std::string& s) {
    std::size_t b = s.find_first_not_of(" \t\r\n");
    if (b == std::string::npos) return "";
    std::size_t e = s.find_last_not_of(" \t\r\n");
    return s.substr(b, e - b + 1);
}

}  // namespace

std::string to_string(AttemptClass c) {
    switch (c) {
        case AttemptClass::Accepted: return "accepted";
        case AttemptClass::ParseFail: return "parse-fail";
        case AttemptClass::DifferentialFail: return "differential-fail";
        case AttemptClass::Timeout: return "timeout";
    }
    return "?";
}

LlmClient::LlmClient(LlmConfig config) : config_(std::move(config)) {}

std::string LlmClient::fixture_name(const std::string& prompt) {
    return sha256_hex(prompt) + ".txt";
}

std::string LlmClient::complete(const std::string& prompt) {
    auto start = std::chrono::steady_clock::now();
    std::string out = replay() ? complete_replay(prompt) : complete_http(prompt);
    last_latency_ms_ = std::chrono::duration_cast<std::chrono::milliseconds>(
                           std::chrono::steady_clock::now() - start)
                           .count();
    return out;
}

std::string LlmClient::complete_replay(const std::string& prompt) {
    std::filesystem::path path =
        std::filesystem::path(config_.mock_dir) / fixture_name(prompt);
    std::ifstream in(path, std::ios::binary);
    if (!in)
        throw NoFixture("no replay fixture " + path.string() + " (prompt hash " +
                        sha256_hex(prompt) + ")");
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

std::string LlmClient::complete_http(const std::string& prompt) {
    if (config_.endpoint.empty())
        throw TransportError("no endpoint configured and no replay fixtures given");
    InflightSlot slot(config_.max_in_flight);

    // split scheme://host[:port]/path
    std::string url = config_.endpoint;
    std::string scheme_sep = "://";
    std::size_t scheme_end = url.find(scheme_sep);
    if (scheme_end == std::string::npos)
        throw TransportError("malformed endpoint '" + url + "'");
    std::size_t host_start = scheme_end + scheme_sep.size();
    std::size_t path_start = url.find('/', host_start);
    std::string origin = url.substr(0, path_start);
    std::string path = path_start == std::string::npos ? "/v1/chat/completions"
                                                       : url.substr(path_start);

    nlohmann::json body;
    body["model"] = config_.model;
    body["temperature"] = LlmConfig::temperature;
    body["messages"] = nlohmann::json::array({
        nlohmann::json{{"role", "user"}, {"content", prompt}},
    });

    httplib::Client client(origin);
    client.set_read_timeout(600, 0);
    client.set_connection_timeout(10, 0);
    httplib::Headers headers;
    if (const char* key = std::getenv(config_.api_key_env.c_str()))
        headers.emplace("Authorization", std::string("Bearer ") + key);

    auto res = client.Post(path, headers, body.dump(), "application/json");
    if (!res)
        throw TransportError("request to " + config_.endpoint + " failed: " +
                             httplib::to_string(res.error()));
    if (res->status != 200)
        throw TransportError("endpoint returned HTTP " + std::to_string(res->status) + ": " +
                             res->body.substr(0, 200));
    try {
        nlohmann::json j = nlohmann::json::parse(res->body);
        return j.at("choices").at(0).at("message").at("content").get<std::string>();
    } catch (const nlohmann::json::exception& e) {
        throw TransportError(std::string("malformed completion response: ") + e.what());
    }
}

std::string extract_code_block(const std::string& response, const std::string& lang) {
    struct Block {
        std::string label;
        std::string body;
    };
    std::vector<Block> blocks;
    std::size_t pos = 0;
    while (true) {
        std::size_t open = response.find("```", pos);
        if (open == std::string::npos) break;
        std::size_t label_end = response.find('\n', open + 3);
        if (label_end == std::string::npos) break;
        std::string label = trim(response.substr(open + 3, label_end - open - 3));
        std::size_t close = response.find("```", label_end + 1);
        if (close == std::string::npos) break;
        std::string body = response.substr(label_end + 1, close - label_end - 1);
        blocks.push_back({label, std::move(body)});
        pos = close + 3;
    }
    for (const Block& b : blocks)
        if (b.label == lang) return b.body;
    for (const Block& b : blocks)
        if (b.label.empty()) return b.body;
    throw NoCodeBlock("no fenced " + lang + " block in response");
}

std::string extract_c_code(const std::string& response) {
    return extract_code_block(response, "c");
}

CandidateResult transpile_with_retry(const py::PythonProblem& problem,
                                     const LlmConfig& config, LlmClient& client,
                                     const GateFn& gate, Clock clock) {
    if (!clock) clock = [] { return std::chrono::steady_clock::now(); };
    auto start = clock();

    CandidateResult result;
    std::string prompt = render_transpile_prompt(problem, config.include_description);
    int failures = 0;
    int transport_failures = 0;

    while (true) {
        if (clock() - start > config.time_budget) {
            result.status = CandidateResult::Status::GaveUp;
            result.give_up_reason = CandidateResult::GiveUpReason::TimeBudget;
            return result;
        }
        Attempt attempt;
        attempt.prompt = prompt;
        auto attempt_start = clock();
        std::string response;
        try {
            response = client.complete(prompt);
        } catch (const TransportError&) {
            attempt.classification = AttemptClass::Timeout;
            attempt.reason = "transport error";
            attempt.wall_ms = std::chrono::duration_cast<std::chrono::milliseconds>(
                                  clock() - attempt_start)
                                  .count();
            result.log.push_back(std::move(attempt));
            failures++;
            transport_failures++;
            if (failures >= config.max_attempts) throw;
            continue;  // same prompt again
        }
        attempt.response = response;

        std::string reason;
        std::string c_source;
        bool extracted = false;
        try {
            c_source = extract_c_code(response);
            extracted = true;
        } catch (const NoCodeBlock&) {
            attempt.classification = AttemptClass::ParseFail;
            reason = "C compilation/parse error: response contains no C code block";
        }
        if (extracted) {
            GateOutcome outcome = gate(c_source);
            if (outcome.accepted) {
                attempt.classification = AttemptClass::Accepted;
                attempt.wall_ms = std::chrono::duration_cast<std::chrono::milliseconds>(
                                      clock() - attempt_start)
                                      .count();
                result.log.push_back(std::move(attempt));
                result.status = CandidateResult::Status::Success;
                result.c_source = std::move(c_source);
                return result;
            }
            attempt.classification = outcome.classification;
            reason = outcome.reason;
        }
        attempt.reason = reason;
        attempt.wall_ms =
            std::chrono::duration_cast<std::chrono::milliseconds>(clock() - attempt_start)
                .count();
        result.log.push_back(std::move(attempt));
        failures++;
        if (failures >= config.max_attempts) {
            result.status = CandidateResult::Status::GaveUp;
            result.give_up_reason = CandidateResult::GiveUpReason::MaxAttempts;
            return result;
        }
        prompt = render_retry_prompt(reason, problem, config.include_description);
    }
}

std::vector<BackmappedStatement> backmap_statements(
    LlmClient& client, const py::PythonProblem& problem,
    const std::vector<std::string>& c_statements) {
    std::string prompt = render_backmap_prompt(c_statements);
    std::string response = client.complete(prompt);
    std::string block = extract_code_block(response, "python");

    std::vector<std::string> returned;
    std::istringstream in(block);
    std::string line;
    while (std::getline(in, line)) {
        std::string t = trim(line);
        if (!t.empty()) returned.push_back(t);
    }
    if (returned.empty()) throw EmptyMapping("model returned no Python statements");

    // anchor by exact trimmed-line match against the problem source
    std::vector<std::string> source_lines;
    {
        std::istringstream src(problem.source);
        while (std::getline(src, line)) source_lines.push_back(trim(line));
    }
    std::vector<BackmappedStatement> out;
    for (const std::string& stmt : returned) {
        BackmappedStatement b;
        b.text = stmt;
        for (std::size_t i = 0; i < source_lines.size(); ++i) {
            if (source_lines[i] == stmt) {
                b.line = static_cast<int>(i + 1);
                b.anchored = true;
                break;
            }
        }
        out.push_back(std::move(b));
    }
    return out;
}

}  // namespace fathom::llm
