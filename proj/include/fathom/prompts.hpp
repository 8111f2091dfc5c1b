// prompts.hpp -- prompt templates for every model interaction, rendered
// byte-deterministically.
#pragma once

#include <stdexcept>
#include <string>
#include <vector>

#include "fathom/python_harness.hpp"

namespace fathom::llm {

class MissingField : public std::runtime_error {
  public:
    explicit MissingField(const std::string& what) : std::runtime_error(what) {}
};

// Transpilation request: instruction block, optional natural-language
// description, the Python code with its assertion, and the opened C fence.
std::string render_transpile_prompt(const py::PythonProblem& problem,
                                    bool include_description);

// Feedback wrapper: the failure reason followed by a complete transpilation
// prompt, sent as a fresh single-turn request.
std::string render_retry_prompt(const std::string& reason, const py::PythonProblem& problem,
                                bool include_description);

// Maps localised faulty C statements back to the original Python program.
std::string render_backmap_prompt(const std::vector<std::string>& c_statements);

}  // namespace fathom::llm
