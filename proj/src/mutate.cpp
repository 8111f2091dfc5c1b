#include <random>

#include "fathom/python_harness.hpp"

#include <json.hpp>

namespace fathom::py {

namespace {

std::vector<std::string> split_lines(const std::string& text) {
    std::vector<std::string> lines;
    std::size_t start = 0;
    while (start <= text.size()) {
        std::size_t end = text.find('\n', start);
        if (end == std::string::npos) {
            lines.push_back(text.substr(start));
            break;
        }
        lines.push_back(text.substr(start, end - start));
        start = end + 1;
    }
    return lines;
}

std::string join_lines(const std::vector<std::string>& lines) {
    std::string out;
    for (std::size_t i = 0; i < lines.size(); ++i) {
        out += lines[i];
        if (i + 1 < lines.size()) out += '\n';
    }
    return out;
}

bool assert_line(const std::string& line) {
    std::size_t i = line.find_first_not_of(" \t");
    if (i == std::string::npos) return false;
    return line.compare(i, 6, "assert") == 0 &&
           (line.size() == i + 6 || !(std::isalnum(static_cast<unsigned char>(line[i + 6])) ||
                                      line[i + 6] == '_'));
}

// The specification itself (assert lines) is never mutated.
std::vector<MutationSite> eligible_sites(const std::string& source, MutationKind kind) {
    std::vector<MutationSite> sites = scan_mutation_sites(source, kind);
    std::vector<std::string> lines = split_lines(source);
    std::vector<MutationSite> out;
    for (const MutationSite& s : sites) {
        const std::string& line = lines.at(static_cast<std::size_t>(s.line) - 1);
        if (!assert_line(line)) out.push_back(s);
    }
    return out;
}

std::size_t pick(const std::vector<MutationSite>& sites, const SiteSelection& sel,
                 MutationKind kind) {
    if (sites.empty())
        throw NoSite("no eligible " + to_string(kind) + " mutation site");
    if (sel.index) {
        int i = *sel.index;
        if (i < 0 || static_cast<std::size_t>(i) >= sites.size())
            throw NoSite("site index " + std::to_string(i) + " out of range (" +
                         std::to_string(sites.size()) + " sites)");
        return static_cast<std::size_t>(i);
    }
    // modulo draw: portable across platforms for a fixed seed
    std::mt19937_64 rng(sel.seed);
    return static_cast<std::size_t>(rng() % sites.size());
}

std::string wbo_replacement(const std::string& op) {
    if (op == "==") return "!=";
    if (op == "!=") return "==";
    if (op == "<") return ">=";
    if (op == ">=") return "<";
    if (op == ">") return "<=";
    if (op == "<=") return ">";
    throw std::invalid_argument("no WBO replacement for '" + op + "'");
}

std::string rstrip(const std::string& s) {
    std::size_t end = s.find_last_not_of(" \t\r");
    return end == std::string::npos ? "" : s.substr(0, end + 1);
}

}  // namespace

MutationResult mutate_wbo(const std::string& source, const SiteSelection& sel) {
    std::vector<MutationSite> sites = eligible_sites(source, MutationKind::WBO);
    std::size_t idx = pick(sites, sel, MutationKind::WBO);
    const MutationSite& site = sites[idx];

    std::vector<std::string> lines = split_lines(source);
    std::string& line = lines.at(static_cast<std::size_t>(site.line) - 1);
    std::string original = line;
    std::string replacement = wbo_replacement(site.token);
    line = line.substr(0, static_cast<std::size_t>(site.col) - 1) + replacement +
           line.substr(static_cast<std::size_t>(site.col) - 1 + site.token.size());

    MutationResult out;
    out.source = join_lines(lines);
    out.record.kind = MutationKind::WBO;
    out.record.line = site.line;
    out.record.original_text = std::move(original);
    out.record.mutated_text = line;
    out.record.seed = sel.seed;
    out.record.site_index = static_cast<int>(idx);
    return out;
}

MutationResult mutate_adc(const std::string& source, const SiteSelection& sel) {
    std::vector<MutationSite> sites = eligible_sites(source, MutationKind::ADC);
    std::size_t idx = pick(sites, sel, MutationKind::ADC);
    const MutationSite& site = sites[idx];

    std::vector<std::string> lines = split_lines(source);
    const std::string& stmt = lines.at(static_cast<std::size_t>(site.line) - 1);
    std::string inserted = rstrip(stmt) + " + 1";
    lines.insert(lines.begin() + site.line, inserted);

    MutationResult out;
    out.source = join_lines(lines);
    out.record.kind = MutationKind::ADC;
    out.record.line = site.line + 1;  // the inserted line
    out.record.original_text = stmt;
    out.record.mutated_text = inserted;
    out.record.seed = sel.seed;
    out.record.site_index = static_cast<int>(idx);
    return out;
}

std::string apply_record(const std::string& original, const MutantRecord& record) {
    std::vector<std::string> lines = split_lines(original);
    if (record.kind == MutationKind::WBO) {
        lines.at(static_cast<std::size_t>(record.line) - 1) = record.mutated_text;
    } else {
        lines.insert(lines.begin() + (record.line - 1), record.mutated_text);
    }
    return join_lines(lines);
}

std::string mutant_record_to_json(const MutantRecord& r) {
    nlohmann::json j;
    j["kind"] = to_string(r.kind);
    j["line"] = r.line;
    j["original"] = r.original_text;
    j["mutated"] = r.mutated_text;
    j["seed"] = r.seed;
    j["site_index"] = r.site_index;
    return j.dump(2) + "\n";
}

MutantRecord mutant_record_from_json(const std::string& text) {
    nlohmann::json j = nlohmann::json::parse(text);
    MutantRecord r;
    r.kind = mutation_kind_from_string(j.at("kind").get<std::string>());
    r.line = j.at("line").get<int>();
    r.original_text = j.at("original").get<std::string>();
    r.mutated_text = j.at("mutated").get<std::string>();
    r.seed = j.value("seed", 0ull);
    r.site_index = j.value("site_index", -1);
    return r;
}

}  // namespace fathom::py
