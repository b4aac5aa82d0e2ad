#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>
#include <vector>

namespace pitchgraph {

// Root of every error the library throws. Each module derives its own
// kinds from this so callers can catch broadly or precisely.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
  [[nodiscard]] virtual const char* kind() const noexcept { return "Error"; }
};

#define PITCHGRAPH_DEFINE_ERROR(Name)                                      \
  class Name : public Error {                                             \
   public:                                                                \
    using Error::Error;                                                   \
    [[nodiscard]] const char* kind() const noexcept override { return #Name; } \
  }

// ingest
class SchemaError : public Error {
 public:
  SchemaError(std::string path, const std::string& what)
      : Error(path + ": " + what), path_(std::move(path)), detail_(what) {}
  [[nodiscard]] const std::string& path() const { return path_; }
  [[nodiscard]] const std::string& detail() const { return detail_; }
  [[nodiscard]] const char* kind() const noexcept override { return "SchemaError"; }

 private:
  std::string path_;
  std::string detail_;
};
PITCHGRAPH_DEFINE_ERROR(ValueError);
PITCHGRAPH_DEFINE_ERROR(IoError);

// store
PITCHGRAPH_DEFINE_ERROR(FrozenGraphError);
PITCHGRAPH_DEFINE_ERROR(UnknownNodeError);
PITCHGRAPH_DEFINE_ERROR(DegenerateGraphError);
PITCHGRAPH_DEFINE_ERROR(VersionError);

class FormatError : public Error {
 public:
  FormatError(std::size_t offset, const std::string& what)
      : Error("offset " + std::to_string(offset) + ": " + what), offset_(offset) {}
  [[nodiscard]] std::size_t offset() const { return offset_; }
  [[nodiscard]] const char* kind() const noexcept override { return "FormatError"; }

 private:
  std::size_t offset_;
};

// query
class LexError : public Error {
 public:
  LexError(std::size_t offset, const std::string& what)
      : Error("lex error at offset " + std::to_string(offset) + ": " + what), offset_(offset) {}
  [[nodiscard]] std::size_t offset() const { return offset_; }
  [[nodiscard]] const char* kind() const noexcept override { return "LexError"; }

 private:
  std::size_t offset_;
};

class ParseError : public Error {
 public:
  ParseError(std::size_t offset, std::vector<std::string> expected, const std::string& what)
      : Error(format(offset, expected, what)), offset_(offset), expected_(std::move(expected)) {}
  [[nodiscard]] std::size_t offset() const { return offset_; }
  [[nodiscard]] const std::vector<std::string>& expected() const { return expected_; }
  [[nodiscard]] const char* kind() const noexcept override { return "ParseError"; }

 private:
  static std::string format(std::size_t offset, const std::vector<std::string>& expected,
                            const std::string& what) {
    std::string msg = "parse error at offset " + std::to_string(offset) + ": " + what;
    if (!expected.empty()) {
      msg += " (expected one of:";
      for (const auto& e : expected) msg += " " + e;
      msg += ")";
    }
    return msg;
  }

  std::size_t offset_;
  std::vector<std::string> expected_;
};

class SemanticError : public Error {
 public:
  SemanticError(const std::string& what, std::string suggestion = {})
      : Error(suggestion.empty() ? what : what + " (did you mean " + suggestion + "?)"),
        suggestion_(std::move(suggestion)) {}
  [[nodiscard]] const std::string& suggestion() const { return suggestion_; }
  [[nodiscard]] const char* kind() const noexcept override { return "SemanticError"; }

 private:
  std::string suggestion_;
};
PITCHGRAPH_DEFINE_ERROR(SizeGuardError);

// nl
class NoTemplateError : public Error {
 public:
  NoTemplateError(const std::string& what, std::string nearest_category)
      : Error(what), nearest_(std::move(nearest_category)) {}
  [[nodiscard]] const std::string& nearest_category() const { return nearest_; }
  [[nodiscard]] const char* kind() const noexcept override { return "NoTemplateError"; }

 private:
  std::string nearest_;
};
PITCHGRAPH_DEFINE_ERROR(TransportError);
PITCHGRAPH_DEFINE_ERROR(BudgetError);
PITCHGRAPH_DEFINE_ERROR(ExtractionError);

// eval
PITCHGRAPH_DEFINE_ERROR(BaselineFormatError);

#undef PITCHGRAPH_DEFINE_ERROR

}  // namespace pitchgraph
