// pipeline_support.hpp -- builds replay fixture directories for full
// pipeline scenarios: the transpile prompt maps to a stored response, and
// when localisation will run, the back-mapping prompt (computed by actually
// localising the candidate) maps to its stored response.
#pragma once

#include "fathom/localize.hpp"
#include "fathom/pipeline.hpp"
#include "support.hpp"

namespace testsupport {

inline void add_scenario(const std::string& replay_dir,
                         const fathom::py::PythonProblem& problem,
                         const fathom::pipeline::PipelineConfig& config,
                         const std::string& transpile_response_rel,
                         const std::string& backmap_response_rel = "") {
    namespace llm = fathom::llm;
    namespace fl = fathom::fl;
    namespace minic = fathom::minic;

    bool with_desc = config.llm.include_description && problem.description.has_value();
    std::string response = read_fixture(transpile_response_rel);
    add_replay(replay_dir, llm::render_transpile_prompt(problem, with_desc), response);

    if (backmap_response_rel.empty()) return;
    std::string c_source = llm::extract_c_code(response);
    minic::CheckedProgram program = minic::typecheck(minic::parse(c_source));
    fl::GuardedFormula g = fl::encode_guarded(program, config.localize_options());
    fl::DiagnosisSet ds = fl::enumerate_diagnoses(g, config.localize_options());
    std::vector<std::string> texts;
    for (const auto& s : fl::map_diagnosis_to_source(ds, program)) texts.push_back(s.text);
    add_replay(replay_dir, llm::render_backmap_prompt(texts),
               read_fixture(backmap_response_rel));
}

}  // namespace testsupport
