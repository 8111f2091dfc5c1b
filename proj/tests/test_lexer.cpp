#include <doctest.h>

#include "fathom/lexer.hpp"

using namespace fathom;
using namespace fathom::minic;

TEST_CASE("token classes of a simple statement") {
    auto toks = tokenize("ans = 0 + 1;");
    REQUIRE(toks.size() == 7);  // incl. End
    CHECK(toks[0].kind == Tok::Ident);
    CHECK(toks[0].text == "ans");
    CHECK(toks[1].is_punct("="));
    CHECK(toks[2].kind == Tok::IntLit);
    CHECK(toks[2].value == 0);
    CHECK(toks[3].is_punct("+"));
    CHECK(toks[4].value == 1);
    CHECK(toks[5].is_punct(";"));
}

TEST_CASE("include lines become one preprocessor token") {
    auto toks = tokenize("#include <assert.h>\nint x;");
    REQUIRE(toks.size() == 5);
    CHECK(toks[0].kind == Tok::Preprocessor);
    CHECK(toks[1].is_kw("int"));
    CHECK(toks[2].kind == Tok::Ident);
    CHECK(toks[3].is_punct(";"));
    CHECK(toks[1].span.line == 2);
}

TEST_CASE("unterminated char literal") {
    CHECK_THROWS_AS(tokenize("char c = 'L"), LexError);
    try {
        tokenize("char c = 'L");
    } catch (const LexError& e) {
        CHECK(e.span().line == 1);
    }
}

TEST_CASE("unterminated string literal") {
    CHECK_THROWS_AS(tokenize("const char* s = \"abc"), LexError);
}

TEST_CASE("illegal character") {
    CHECK_THROWS_AS(tokenize("int x = $;"), LexError);
}

TEST_CASE("spans are 1-based and cover the token") {
    auto toks = tokenize("int foo;");
    CHECK(toks[0].span.line == 1);
    CHECK(toks[0].span.col == 1);
    CHECK(toks[1].span.col == 5);
    CHECK(toks[1].span.begin == 4);
    CHECK(toks[1].span.end == 7);
}

TEST_CASE("comments are skipped") {
    auto toks = tokenize("int x; // trailing\n/* block\ncomment */ int y;");
    int idents = 0;
    for (auto& t : toks)
        if (t.kind == Tok::Ident) idents++;
    CHECK(idents == 2);
}

TEST_CASE("char literals and escapes") {
    auto toks = tokenize("'L' '\\0' '\\n'");
    CHECK(toks[0].value == 'L');
    CHECK(toks[1].value == 0);
    CHECK(toks[2].value == '\n');
    auto str = tokenize("\"a\\nb\\0c\"");
    CHECK(str[0].kind == Tok::StrLit);
    CHECK(str[0].text == std::string("a\nb\0c", 5));
}

TEST_CASE("whitespace and comments are the only uncovered input") {
    std::string src = "int main() { return 40 + 2; }";
    auto toks = tokenize(src);
    std::vector<bool> covered(src.size(), false);
    for (auto& t : toks)
        for (std::size_t i = t.span.begin; i < t.span.end && i < src.size(); ++i)
            covered[i] = true;
    for (std::size_t i = 0; i < src.size(); ++i) {
        if (src[i] == ' ') continue;
        CHECK(covered[i]);
    }
}
