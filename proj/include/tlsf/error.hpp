#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>

namespace tlsf {

/// Line/column into the source text, both 1-based. A zero line means
/// "no position" (synthesized nodes).
struct SourcePos {
  std::uint32_t line = 0;
  std::uint32_t column = 0;

  bool valid() const { return line != 0; }
  friend bool operator==(const SourcePos&, const SourcePos&) = default;
};

enum class ErrorKind { Lex, Parse, Type, Eval, Usage, Internal };

const char* to_string(ErrorKind kind);

/// Every diagnostic raised by the toolkit. `what()` carries the position
/// prefix; `message()` is the bare text.
class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, SourcePos pos, std::string message);

  ErrorKind kind() const { return kind_; }
  SourcePos pos() const { return pos_; }
  const std::string& message() const { return message_; }

 private:
  ErrorKind kind_;
  SourcePos pos_;
  std::string message_;
};

class ParseError : public Error {
 public:
  ParseError(SourcePos pos, std::string expected, std::string found);
  ParseError(SourcePos pos, std::string message);

  const std::string& expected() const { return expected_; }
  const std::string& found() const { return found_; }

 private:
  std::string expected_;
  std::string found_;
};

[[noreturn]] void throw_error(ErrorKind kind, SourcePos pos, std::string message);

}  // namespace tlsf
