// lexer.hpp -- tokenizer for the MiniC subset.
#pragma once

#include <string>
#include <vector>

#include "fathom/diag.hpp"

namespace fathom::minic {

enum class Tok {
    End,
    Ident,
    Keyword,
    IntLit,      // decimal or character literal, value in Token::value
    StrLit,      // string literal, decoded bytes in Token::text
    Punct,       // operators and punctuation, spelling in Token::text
    Preprocessor // a whole #... line, consumed and otherwise ignored
};

struct Token {
    Tok kind = Tok::End;
    std::string text;       // identifier/keyword spelling, punct spelling, or decoded string bytes
    long long value = 0;    // IntLit only
    SourceSpan span;

    bool is(Tok k) const { return kind == k; }
    bool is_punct(const char* s) const { return kind == Tok::Punct && text == s; }
    bool is_kw(const char* s) const { return kind == Tok::Keyword && text == s; }
};

// Tokenizes MiniC source. Whitespace and comments are skipped; `#include`
// (and any other # line) becomes a single Preprocessor token. Throws
// LexError on unterminated string/char literals and illegal characters.
std::vector<Token> tokenize(const std::string& source);

}  // namespace fathom::minic
