#include "fathom/dimacs.hpp"

#include <cstdlib>
#include <sstream>

namespace fathom::sat {

namespace {

void append_clause(std::string& out, const Clause& c) {
    for (Lit l : c) {
        out += std::to_string(l);
        out += ' ';
    }
    out += "0\n";
}

struct LineReader {
    std::istringstream in;
    int line_no = 0;
    explicit LineReader(const std::string& text) : in(text) {}
    bool next(std::string& line) {
        while (std::getline(in, line)) {
            line_no++;
            if (!line.empty() && line.back() == '\r') line.pop_back();
            if (line.empty() || line[0] == 'c') continue;
            return true;
        }
        return false;
    }
};

std::vector<long long> parse_ints(const std::string& line, int line_no) {
    std::vector<long long> out;
    std::istringstream is(line);
    std::string tok;
    while (is >> tok) {
        char* end = nullptr;
        long long v = std::strtoll(tok.c_str(), &end, 10);
        if (end == tok.c_str() || *end != '\0')
            throw FormatError(line_no, "malformed integer '" + tok + "'");
        out.push_back(v);
    }
    return out;
}

Clause to_clause(const std::vector<long long>& ints, std::size_t from, int num_vars,
                 int line_no) {
    if (ints.empty() || ints.back() != 0)
        throw FormatError(line_no, "clause not zero-terminated");
    Clause c;
    for (std::size_t i = from; i + 1 < ints.size(); ++i) {
        long long l = ints[i];
        if (l == 0) throw FormatError(line_no, "unexpected 0 inside clause");
        if (std::llabs(l) > num_vars)
            throw FormatError(line_no, "literal " + std::to_string(l) + " out of range");
        c.push_back(static_cast<Lit>(l));
    }
    if (c.empty()) throw FormatError(line_no, "empty clause");
    return c;
}

}  // namespace

std::string serialize_dimacs(const CnfInstance& inst) {
    inst.validate();
    std::string out = "p cnf " + std::to_string(inst.num_vars) + " " +
                      std::to_string(inst.clauses.size()) + "\n";
    for (const Clause& c : inst.clauses) append_clause(out, c);
    return out;
}

std::string serialize_dimacs(const PartialMaxSatInstance& inst) {
    inst.validate();
    std::int64_t top = 1 + inst.weight_sum();
    std::string out = "p wcnf " + std::to_string(inst.hard.num_vars) + " " +
                      std::to_string(inst.hard.clauses.size() + inst.soft.size()) + " " +
                      std::to_string(top) + "\n";
    for (const Clause& c : inst.hard.clauses) {
        out += std::to_string(top);
        out += ' ';
        append_clause(out, c);
    }
    for (const SoftClause& s : inst.soft) {
        out += std::to_string(s.weight);
        out += ' ';
        append_clause(out, s.clause);
    }
    return out;
}

CnfInstance parse_dimacs_cnf(const std::string& text) {
    LineReader reader(text);
    std::string line;
    if (!reader.next(line)) throw FormatError(1, "missing 'p cnf' header");
    std::istringstream hdr(line);
    std::string p, fmt;
    long long nv = 0, nc = 0;
    if (!(hdr >> p >> fmt >> nv >> nc) || p != "p" || fmt != "cnf")
        throw FormatError(reader.line_no, "expected 'p cnf V C' header");
    CnfInstance inst;
    inst.num_vars = static_cast<int>(nv);
    while (reader.next(line)) {
        auto ints = parse_ints(line, reader.line_no);
        if (ints.empty()) continue;
        inst.clauses.push_back(to_clause(ints, 0, inst.num_vars, reader.line_no));
    }
    if (static_cast<long long>(inst.clauses.size()) != nc)
        throw FormatError(reader.line_no, "clause count mismatch: header says " +
                                              std::to_string(nc) + ", found " +
                                              std::to_string(inst.clauses.size()));
    return inst;
}

PartialMaxSatInstance parse_dimacs_wcnf(const std::string& text) {
    LineReader reader(text);
    std::string line;
    if (!reader.next(line)) throw FormatError(1, "missing 'p wcnf' header");
    std::istringstream hdr(line);
    std::string p, fmt;
    long long nv = 0, nc = 0, top = 0;
    if (!(hdr >> p >> fmt >> nv >> nc >> top) || p != "p" || fmt != "wcnf")
        throw FormatError(reader.line_no, "expected 'p wcnf V C TOP' header");
    PartialMaxSatInstance inst;
    inst.hard.num_vars = static_cast<int>(nv);
    long long count = 0;
    while (reader.next(line)) {
        auto ints = parse_ints(line, reader.line_no);
        if (ints.empty()) continue;
        if (ints[0] <= 0) throw FormatError(reader.line_no, "clause weight must be positive");
        Clause c = to_clause(ints, 1, inst.hard.num_vars, reader.line_no);
        if (ints[0] >= top) {
            inst.hard.clauses.push_back(std::move(c));
        } else {
            inst.soft.push_back({std::move(c), ints[0]});
        }
        count++;
    }
    if (count != nc)
        throw FormatError(reader.line_no, "clause count mismatch: header says " +
                                              std::to_string(nc) + ", found " +
                                              std::to_string(count));
    return inst;
}

std::string serialize_model(const std::vector<bool>& model) {
    std::string out = "v";
    for (std::size_t i = 0; i < model.size(); ++i) {
        out += ' ';
        out += std::to_string(model[i] ? static_cast<long long>(i + 1)
                                       : -static_cast<long long>(i + 1));
    }
    out += " 0\n";
    return out;
}

std::optional<std::vector<bool>> parse_solver_output(const std::string& text, int num_vars) {
    std::istringstream in(text);
    std::string line;
    bool sat = false, seen_status = false;
    std::vector<bool> model(static_cast<std::size_t>(num_vars), false);
    int line_no = 0;
    while (std::getline(in, line)) {
        line_no++;
        if (line.rfind("s ", 0) == 0) {
            seen_status = true;
            sat = line.find("UNSATISFIABLE") == std::string::npos &&
                  line.find("SATISFIABLE") != std::string::npos;
        } else if (line.rfind("v ", 0) == 0) {
            auto ints = parse_ints(line.substr(2), line_no);
            for (long long l : ints) {
                if (l == 0) continue;
                std::size_t v = static_cast<std::size_t>(std::llabs(l)) - 1;
                if (v < model.size()) model[v] = l > 0;
            }
        }
    }
    if (!seen_status) throw FormatError(line_no, "no 's' status line in solver output");
    if (!sat) return std::nullopt;
    return model;
}

}  // namespace fathom::sat
