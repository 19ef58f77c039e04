#include "tlsf/error.hpp"

namespace tlsf {

namespace {

std::string with_position(SourcePos pos, const std::string& message) {
  if (!pos.valid()) return message;
  return std::to_string(pos.line) + ":" + std::to_string(pos.column) + ": " + message;
}

}  // namespace

const char* to_string(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::Lex: return "lexical error";
    case ErrorKind::Parse: return "parse error";
    case ErrorKind::Type: return "type error";
    case ErrorKind::Eval: return "evaluation error";
    case ErrorKind::Usage: return "usage error";
    case ErrorKind::Internal: return "internal error";
  }
  return "error";
}

Error::Error(ErrorKind kind, SourcePos pos, std::string message)
    : std::runtime_error(with_position(pos, message)),
      kind_(kind),
      pos_(pos),
      message_(std::move(message)) {}

ParseError::ParseError(SourcePos pos, std::string expected, std::string found)
    : Error(ErrorKind::Parse, pos, "expected " + expected + ", found " + found),
      expected_(std::move(expected)),
      found_(std::move(found)) {}

ParseError::ParseError(SourcePos pos, std::string message)
    : Error(ErrorKind::Parse, pos, std::move(message)) {}

void throw_error(ErrorKind kind, SourcePos pos, std::string message) {
  throw Error(kind, pos, std::move(message));
}

}  // namespace tlsf
