// diag.hpp -- source locations and diagnostic errors shared by all passes.
#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace fathom {

// Half-open byte range [begin, end) into the source text, plus the 1-based
// line/column of its first byte.
struct SourceSpan {
    int line = 0;
    int col = 0;
    std::size_t begin = 0;
    std::size_t end = 0;

    bool valid() const { return line > 0; }
};

inline std::string format_diag(const std::string& file, const SourceSpan& span,
                               const std::string& message) {
    return file + ":" + std::to_string(span.line) + ":" + std::to_string(span.col) +
           ": " + message;
}

// Base for all front-end errors; carries the offending span.
class Error : public std::runtime_error {
  public:
    Error(SourceSpan span, std::string message)
        : std::runtime_error(std::move(message)), span_(span) {}
    const SourceSpan& span() const { return span_; }

  private:
    SourceSpan span_;
};

class LexError : public Error {
  public:
    using Error::Error;
};

class ParseError : public Error {
  public:
    using Error::Error;
};

class TypeError : public Error {
  public:
    using Error::Error;
};

class UndefinedSymbol : public Error {
  public:
    UndefinedSymbol(SourceSpan span, const std::string& name)
        : Error(span, "undefined symbol '" + name + "'"), name_(name) {}
    const std::string& name() const { return name_; }

  private:
    std::string name_;
};

}  // namespace fathom
