#include "fathom/prompts.hpp"

namespace fathom::llm {

namespace {

const char* kTranspileHeader =
    "Transpile Python to C Code With Assertion:\n"
    "You are an exceptionally intelligent coding assistant who consistently produces "
    "accurate and reliable <C code> by transpiling the given <Python code> into "
    "semantically equivalent <C code>. <NL_Description> gives a natural language "
    "description of the python code. Do not forget to  also transpile the given "
    "Python assertion  into a C assertion!\n";

std::string join(const std::vector<std::string>& lines) {
    std::string out;
    for (std::size_t i = 0; i < lines.size(); ++i) {
        if (i) out += '\n';
        out += lines[i];
    }
    return out;
}

}  // namespace

std::string render_transpile_prompt(const py::PythonProblem& problem,
                                    bool include_description) {
    std::vector<std::string> asserts = py::module_assert_lines(problem.source);
    if (asserts.empty())
        throw MissingField("problem '" + problem.id + "' has no module-level assertion");
    std::string code = py::strip_module_asserts(problem.source);
    if (code.find_first_not_of(" \t\r\n") == std::string::npos)
        throw MissingField("problem '" + problem.id + "' has no Python code");

    std::string out = kTranspileHeader;
    if (include_description) {
        if (!problem.description)
            throw MissingField("problem '" + problem.id + "' has no description");
        out += "\n<NL_Description>\n";
        out += *problem.description;
        out += "\n";
    }
    out += "\n<Python Code>\n```python\n";
    out += code;  // ends with a newline
    out += join(asserts);
    out += "\n```\n";
    out += "\n<C Code>\n```c\n";
    return out;
}

std::string render_retry_prompt(const std::string& reason, const py::PythonProblem& problem,
                                bool include_description) {
    if (reason.empty()) throw MissingField("retry prompt needs a reason");
    std::string out = "Your previous code translation was INCORRECT!\n";
    out += "Reason: " + reason + "\n";
    out += "Try again.\n";
    out += render_transpile_prompt(problem, include_description);
    return out;
}

std::string render_backmap_prompt(const std::vector<std::string>& c_statements) {
    if (c_statements.empty())
        throw MissingField("back-mapping prompt needs at least one statement");
    std::string out =
        "Map C program statements back to the original python program:\n"
        "We have detected that both the Python and C programs are buggy. We have "
        "localised the following faulty statements in the C program:\n";
    for (const std::string& s : c_statements) {
        out += s;
        out += '\n';
    }
    out +=
        "\nProvide us only with the corresponding Python statements from the original "
        "program that correspond to these buggy statements.\n```python\n";
    return out;
}

}  // namespace fathom::llm
