#include <cctype>

#include "fathom/python_harness.hpp"

namespace fathom::py {

std::string to_string(MutationKind k) {
    return k == MutationKind::WBO ? "WBO" : "ADC";
}

MutationKind mutation_kind_from_string(const std::string& s) {
    if (s == "WBO" || s == "wbo") return MutationKind::WBO;
    if (s == "ADC" || s == "adc") return MutationKind::ADC;
    throw std::invalid_argument("unknown mutation kind '" + s + "'");
}

namespace {

const char* kPyKeywords[] = {
    "if",     "elif",  "else",   "while", "for",    "def",   "return", "assert",
    "import", "from",  "class",  "with",  "try",    "except", "finally", "raise",
    "pass",   "break", "continue", "in",  "not",    "and",   "or",     "lambda",
    "global", "nonlocal", "del",  "yield", "print",
};

bool is_keyword(const std::string& word) {
    for (const char* k : kPyKeywords)
        if (word == k) return true;
    return false;
}

bool is_name_char(char c) {
    return std::isalnum(static_cast<unsigned char>(c)) || c == '_';
}

// Line-structured scan with enough state to classify tokens: strings
// (single, double, triple), comments, bracket depth.
struct Scan {
    const std::string& src;
    std::size_t pos = 0;
    int line = 1;
    int col = 1;
    int depth = 0;  // () [] {}

    bool done() const { return pos >= src.size(); }
    char peek(std::size_t off = 0) const {
        return pos + off < src.size() ? src[pos + off] : '\0';
    }
    char take() {
        char c = src[pos++];
        if (c == '\n') {
            line++;
            col = 1;
        } else {
            col++;
        }
        return c;
    }

    // returns true when the string spanned a line break
    bool skip_string(int start_line) {
        char q = take();
        bool triple = peek() == q && peek(1) == q;
        bool multiline = false;
        if (triple) {
            take();
            take();
            while (true) {
                if (done()) throw PyLexError(start_line, "unterminated triple-quoted string");
                if (peek() == q && peek(1) == q && peek(2) == q) {
                    take();
                    take();
                    take();
                    return multiline;
                }
                if (peek() == '\\') take();
                if (take() == '\n') multiline = true;
            }
        }
        while (true) {
            if (done() || peek() == '\n')
                throw PyLexError(start_line, "unterminated string literal");
            char c = take();
            if (c == '\\') {
                if (done()) throw PyLexError(start_line, "unterminated string literal");
                take();
                continue;
            }
            if (c == q) return false;
        }
    }
};

struct LineFacts {
    std::string first_word;  // first NAME/keyword on the line, depth 0
    bool starts_at_depth0 = false;
};

}  // namespace

std::vector<std::string> module_assert_lines(const std::string& source) {
    std::vector<std::string> out;
    std::size_t start = 0;
    while (start <= source.size()) {
        std::size_t end = source.find('\n', start);
        std::string line = source.substr(
            start, end == std::string::npos ? std::string::npos : end - start);
        if (line.rfind("assert", 0) == 0 &&
            (line.size() == 6 || !is_name_char(line[6])))
            out.push_back(line);
        if (end == std::string::npos) break;
        start = end + 1;
    }
    return out;
}

std::string strip_module_asserts(const std::string& source) {
    std::string out;
    std::size_t start = 0;
    while (start <= source.size()) {
        std::size_t end = source.find('\n', start);
        std::string line = source.substr(
            start, end == std::string::npos ? std::string::npos : end - start);
        bool is_assert = line.rfind("assert", 0) == 0 &&
                         (line.size() == 6 || !is_name_char(line[6]));
        if (!is_assert) {
            out += line;
            if (end != std::string::npos) out += '\n';
        }
        if (end == std::string::npos) break;
        start = end + 1;
    }
    while (!out.empty() && out.back() == '\n') out.pop_back();
    out += '\n';
    return out;
}

std::vector<MutationSite> scan_mutation_sites(const std::string& source, MutationKind kind) {
    std::vector<MutationSite> sites;
    Scan s{source};

    // per physical line bookkeeping for ADC detection
    int stmt_depth_at_line_start = 0;
    int assign_col = 0;          // column of a candidate single '=' on this line
    std::string assign_target;
    bool line_dirty = false;     // something disqualifies this line as an ADC site
    bool seen_name = false;
    std::string first_name;
    int name_col = 0;
    bool line_has_comment = false;

    auto flush_line = [&](int line_no) {
        if (kind == MutationKind::ADC && assign_col > 0 && !line_dirty &&
            stmt_depth_at_line_start == 0 && s.depth == 0 && !first_name.empty() &&
            !is_keyword(first_name) && assign_target == first_name && !line_has_comment) {
            sites.push_back({MutationKind::ADC, line_no, name_col, first_name});
        }
        stmt_depth_at_line_start = s.depth;
        assign_col = 0;
        assign_target.clear();
        line_dirty = false;
        seen_name = false;
        first_name.clear();
        name_col = 0;
        line_has_comment = false;
    };

    while (!s.done()) {
        char c = s.peek();
        int line = s.line, col = s.col;
        if (c == '\n') {
            s.take();
            flush_line(line);
            continue;
        }
        if (c == '#') {
            line_has_comment = true;
            while (!s.done() && s.peek() != '\n') s.take();
            continue;
        }
        if (c == '\'' || c == '"') {
            if (s.skip_string(line)) line_dirty = true;
            continue;
        }
        if (c == '(' || c == '[' || c == '{') {
            s.depth++;
            s.take();
            continue;
        }
        if (c == ')' || c == ']' || c == '}') {
            s.depth--;
            s.take();
            continue;
        }
        if (is_name_char(c)) {
            std::string word;
            while (!s.done() && is_name_char(s.peek())) word += s.take();
            if (!seen_name && s.depth == 0) {
                seen_name = true;
                first_name = word;
                name_col = col;
            }
            continue;
        }
        if (c == '-' && s.peek(1) == '>') {  // return annotation arrow
            s.take();
            s.take();
            continue;
        }
        if (c == '<' || c == '>' || c == '=' || c == '!') {
            char n = s.peek(1);
            if ((c == '<' && n == '<') || (c == '>' && n == '>')) {  // shifts
                s.take();
                s.take();
                if (s.peek() == '=') s.take();  // <<= >>=
                line_dirty = true;
                continue;
            }
            if (n == '=') {  // == != <= >=
                std::string op{c, n};
                s.take();
                s.take();
                if (kind == MutationKind::WBO)
                    sites.push_back({MutationKind::WBO, line, col, op});
                continue;
            }
            if (c == '<' || c == '>') {
                s.take();
                if (kind == MutationKind::WBO)
                    sites.push_back({MutationKind::WBO, line, col, std::string(1, c)});
                continue;
            }
            if (c == '=') {  // plain assignment
                s.take();
                if (s.depth == 0) {
                    if (assign_col > 0) {
                        line_dirty = true;  // chained assignment
                    } else {
                        assign_col = col;
                        assign_target = first_name;
                        // anything but NAME before '=' disqualifies
                        if (!seen_name) line_dirty = true;
                    }
                }
                continue;
            }
            s.take();  // '!' alone
            continue;
        }
        if (c == ',' || c == '.') {
            if (s.depth == 0 && assign_col == 0) line_dirty = true;  // tuple/attr target
            s.take();
            continue;
        }
        if (c == '+' || c == '-' || c == '*' || c == '/' || c == '%' || c == '&' ||
            c == '|' || c == '^' || c == '~' || c == '@') {
            // augmented assignment disqualifies the line as an ADC site
            if (s.peek(1) == '=' && s.depth == 0 && assign_col == 0) line_dirty = true;
            s.take();
            continue;
        }
        s.take();
    }
    flush_line(s.line);
    return sites;
}

}  // namespace fathom::py
