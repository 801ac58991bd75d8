#include "cfl/error.hpp"

namespace cfl {

namespace {

const char* kind_name(ParseError::Kind kind) {
  switch (kind) {
    case ParseError::Kind::Lex: return "lex error";
    case ParseError::Kind::Syntax: return "parse error";
    case ParseError::Kind::Arity: return "arity error";
  }
  return "error";
}

}  // namespace

ParseError::ParseError(Kind kind, std::size_t position, const std::string& message)
    : Error(std::string(kind_name(kind)) + " at offset " + std::to_string(position) + ": " +
            message),
      kind_(kind),
      position_(position) {}

}  // namespace cfl
