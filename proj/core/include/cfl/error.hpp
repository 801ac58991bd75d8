#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace cfl {

// Root of every exception thrown by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class ParseError : public Error {
 public:
  enum class Kind { Lex, Syntax, Arity };

  ParseError(Kind kind, std::size_t position, const std::string& message);

  Kind kind() const noexcept { return kind_; }
  // Byte offset into the input where the problem was detected.
  std::size_t position() const noexcept { return position_; }

 private:
  Kind kind_;
  std::size_t position_;
};

// A probability table that violates normalization or non-negativity.
class TableError : public Error {
 public:
  using Error::Error;
};

// Some choice pair has no physically possible world.
class DegenerateModelError : public Error {
 public:
  using Error::Error;
};

// Malformed JSON input, or JSON that does not follow the expected schema.
class SchemaError : public Error {
 public:
  using Error::Error;
};

// Evaluation requests the semantics does not define: counterfactuals on an
// earlier-region or outcome antecedent, nested strict conditionals, or
// evaluation at a world that is not physically possible.
class SemanticError : public Error {
 public:
  using Error::Error;
};

class SearchError : public Error {
 public:
  using Error::Error;
};

}  // namespace cfl
