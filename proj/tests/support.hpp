// support.hpp -- shared helpers for the test suites.
#pragma once

#include <unistd.h>

#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include "fathom/llm.hpp"
#include "fathom/parser.hpp"
#include "fathom/python_harness.hpp"
#include "fathom/typecheck.hpp"

namespace testsupport {

inline std::string fixture_path(const std::string& rel) {
    return std::string(FATHOM_FIXTURES_DIR) + "/" + rel;
}

inline std::string read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw std::runtime_error("missing fixture " + path);
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

inline std::string read_fixture(const std::string& rel) {
    return read_file(fixture_path(rel));
}

struct TempDir {
    std::string path;
    TempDir() {
        char tmpl[] = "/tmp/fathom_test_XXXXXX";
        path = mkdtemp(tmpl);
    }
    ~TempDir() {
        std::error_code ec;
        std::filesystem::remove_all(path, ec);
    }
    TempDir(const TempDir&) = delete;
    TempDir& operator=(const TempDir&) = delete;
};

// Builds a replay fixture directory: one file per prompt hash.
inline void add_replay(const std::string& dir, const std::string& prompt,
                       const std::string& response) {
    std::filesystem::create_directories(dir);
    std::ofstream out(dir + "/" + fathom::llm::LlmClient::fixture_name(prompt),
                      std::ios::binary);
    out << response;
}

inline fathom::py::PythonProblem load_problem_fixture(const std::string& id) {
    return fathom::py::load_problem(fixture_path("problems/" + id));
}

inline fathom::minic::CheckedProgram load_c_fixture(const std::string& name) {
    return fathom::minic::typecheck(fathom::minic::parse(read_fixture("minic/" + name)));
}

}  // namespace testsupport
