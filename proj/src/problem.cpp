#include <algorithm>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "fathom/python_harness.hpp"

namespace fathom::py {

namespace fs = std::filesystem;

namespace {

std::string read_file(const fs::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw EnvError("cannot read " + path.string());
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

}  // namespace

PythonProblem load_problem(const std::string& dir) {
    fs::path root(dir);
    PythonProblem p;
    p.id = root.filename().string();
    if (p.id.empty()) p.id = root.parent_path().filename().string();
    p.source = read_file(root / "program.py");
    if (fs::exists(root / "description.txt")) {
        std::string d = read_file(root / "description.txt");
        while (!d.empty() && (d.back() == '\n' || d.back() == '\r')) d.pop_back();
        p.description = d;
    }
    if (fs::exists(root / "mutant.json"))
        p.ground_truth = mutant_record_from_json(read_file(root / "mutant.json"));
    return p;
}

std::vector<PythonProblem> load_benchmark(const std::string& dir) {
    std::vector<fs::path> subdirs;
    for (const auto& entry : fs::directory_iterator(dir))
        if (entry.is_directory() && fs::exists(entry.path() / "program.py"))
            subdirs.push_back(entry.path());
    std::sort(subdirs.begin(), subdirs.end());
    std::vector<PythonProblem> out;
    out.reserve(subdirs.size());
    for (const auto& d : subdirs) out.push_back(load_problem(d.string()));
    return out;
}

}  // namespace fathom::py
