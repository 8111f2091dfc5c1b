#include "fathom/lexer.hpp"

#include <cctype>
#include <unordered_set>

namespace fathom::minic {

namespace {

const std::unordered_set<std::string> kKeywords = {
    "int",  "void",  "char",  "const",    "if",    "else",  "while",
    "for",  "break", "continue", "return", "struct", "goto", "sizeof",
    "unsigned", "long", "short", "float", "double", "static", "do", "switch",
    "case", "default", "enum", "union", "typedef",
};

// Longest-match punctuation table, longest first.
const char* kPuncts[] = {
    "<<=", ">>=", "...",
    "<<", ">>", "<=", ">=", "==", "!=", "&&", "||", "+=", "-=", "*=", "/=",
    "%=", "&=", "|=", "^=", "++", "--", "->",
    "+", "-", "*", "/", "%", "<", ">", "=", "!", "~", "&", "|", "^", "?", ":",
    ";", ",", "(", ")", "{", "}", "[", "]", ".",
};

struct Cursor {
    const std::string& src;
    std::size_t pos = 0;
    int line = 1;
    int col = 1;

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
    SourceSpan here() const { return SourceSpan{line, col, pos, pos}; }
};

int decode_escape(Cursor& cur, const SourceSpan& start) {
    char c = cur.take();
    switch (c) {
        case 'n': return '\n';
        case 't': return '\t';
        case 'r': return '\r';
        case '0': return '\0';
        case '\\': return '\\';
        case '\'': return '\'';
        case '"': return '"';
        default:
            throw LexError(start, std::string("unknown escape sequence '\\") + c + "'");
    }
}

}  // namespace

std::vector<Token> tokenize(const std::string& source) {
    Cursor cur{source};
    std::vector<Token> out;

    while (!cur.done()) {
        char c = cur.peek();
        if (c == ' ' || c == '\t' || c == '\r' || c == '\n') {
            cur.take();
            continue;
        }
        if (c == '/' && cur.peek(1) == '/') {
            while (!cur.done() && cur.peek() != '\n') cur.take();
            continue;
        }
        if (c == '/' && cur.peek(1) == '*') {
            SourceSpan start = cur.here();
            cur.take();
            cur.take();
            while (!(cur.peek() == '*' && cur.peek(1) == '/')) {
                if (cur.done()) throw LexError(start, "unterminated block comment");
                cur.take();
            }
            cur.take();
            cur.take();
            continue;
        }

        SourceSpan span = cur.here();
        if (c == '#') {
            Token t;
            t.kind = Tok::Preprocessor;
            while (!cur.done() && cur.peek() != '\n') t.text += cur.take();
            span.end = cur.pos;
            t.span = span;
            out.push_back(std::move(t));
            continue;
        }
        if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
            Token t;
            while (std::isalnum(static_cast<unsigned char>(cur.peek())) || cur.peek() == '_')
                t.text += cur.take();
            t.kind = kKeywords.count(t.text) ? Tok::Keyword : Tok::Ident;
            span.end = cur.pos;
            t.span = span;
            out.push_back(std::move(t));
            continue;
        }
        if (std::isdigit(static_cast<unsigned char>(c))) {
            Token t;
            t.kind = Tok::IntLit;
            std::string digits;
            if (c == '0' && (cur.peek(1) == 'x' || cur.peek(1) == 'X')) {
                cur.take();
                cur.take();
                while (std::isxdigit(static_cast<unsigned char>(cur.peek()))) digits += cur.take();
                if (digits.empty()) throw LexError(span, "malformed hex literal");
                t.value = std::stoll(digits, nullptr, 16);
            } else {
                while (std::isdigit(static_cast<unsigned char>(cur.peek()))) digits += cur.take();
                t.value = std::stoll(digits, nullptr, 10);
            }
            span.end = cur.pos;
            t.span = span;
            out.push_back(std::move(t));
            continue;
        }
        if (c == '\'') {
            cur.take();
            if (cur.done() || cur.peek() == '\n')
                throw LexError(span, "unterminated character literal");
            int v;
            if (cur.peek() == '\\') {
                cur.take();
                if (cur.done()) throw LexError(span, "unterminated character literal");
                v = decode_escape(cur, span);
            } else {
                v = static_cast<unsigned char>(cur.take());
            }
            if (cur.peek() != '\'')
                throw LexError(span, "unterminated character literal");
            cur.take();
            Token t;
            t.kind = Tok::IntLit;
            t.value = v;
            span.end = cur.pos;
            t.span = span;
            out.push_back(std::move(t));
            continue;
        }
        if (c == '"') {
            cur.take();
            Token t;
            t.kind = Tok::StrLit;
            while (true) {
                if (cur.done() || cur.peek() == '\n')
                    throw LexError(span, "unterminated string literal");
                char d = cur.take();
                if (d == '"') break;
                if (d == '\\') {
                    if (cur.done()) throw LexError(span, "unterminated string literal");
                    t.text += static_cast<char>(decode_escape(cur, span));
                } else {
                    t.text += d;
                }
            }
            span.end = cur.pos;
            t.span = span;
            out.push_back(std::move(t));
            continue;
        }

        bool matched = false;
        for (const char* p : kPuncts) {
            std::size_t n = std::char_traits<char>::length(p);
            if (source.compare(cur.pos, n, p) == 0) {
                Token t;
                t.kind = Tok::Punct;
                t.text = p;
                for (std::size_t i = 0; i < n; ++i) cur.take();
                span.end = cur.pos;
                t.span = span;
                out.push_back(std::move(t));
                matched = true;
                break;
            }
        }
        if (!matched)
            throw LexError(span, std::string("illegal character '") + c + "'");
    }

    Token end;
    end.kind = Tok::End;
    end.span = cur.here();
    out.push_back(end);
    return out;
}

}  // namespace fathom::minic
