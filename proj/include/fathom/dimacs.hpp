// dimacs.hpp -- DIMACS CNF / WCNF serialization and parsing, plus the
// "v <lit> ... 0" model-echo format used to interoperate with external
// solvers.
#pragma once

#include <optional>
#include <string>

#include "fathom/cnf.hpp"

namespace fathom::sat {

class FormatError : public std::runtime_error {
  public:
    FormatError(int line, const std::string& message)
        : std::runtime_error("line " + std::to_string(line) + ": " + message), line_(line) {}
    int line() const { return line_; }

  private:
    int line_;
};

// "p cnf V C" followed by zero-terminated clauses.
std::string serialize_dimacs(const CnfInstance& inst);

// "p wcnf V C TOP" with TOP = 1 + sum of soft weights; hard clauses carry
// weight TOP.
std::string serialize_dimacs(const PartialMaxSatInstance& inst);

CnfInstance parse_dimacs_cnf(const std::string& text);
PartialMaxSatInstance parse_dimacs_wcnf(const std::string& text);

std::string serialize_model(const std::vector<bool>& model);

// Parses "s SATISFIABLE/UNSATISFIABLE" + "v ..." lines as printed by
// standard SAT solvers. Returns nullopt for UNSAT; throws FormatError when
// neither verdict is present.
std::optional<std::vector<bool>> parse_solver_output(const std::string& text, int num_vars);

}  // namespace fathom::sat
