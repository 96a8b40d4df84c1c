#pragma once

#include <stdexcept>
#include <string>

namespace dirlp {

/// Base class for all library errors. `kind()` classifies the failure so
/// callers (notably the CLI) can map errors to exit codes without string
/// matching.
class Error : public std::runtime_error {
 public:
  enum class Kind {
    parse,       // malformed input text
    range,       // node id / index out of range
    domain,      // invalid argument value (u==v, p out of range, ...)
    shape,       // tensor shape mismatch
    contract,    // precondition on spec-level contracts violated
    numeric,     // NaN/Inf or numerical failure
    exhaustion,  // bounded retry loop gave up
    ingest,      // dataset ingestion failure
  };

  Error(Kind kind, const std::string& what) : std::runtime_error(what), kind_(kind) {}
  Kind kind() const noexcept { return kind_; }

 private:
  Kind kind_;
};

struct ParseError : Error {
  explicit ParseError(const std::string& w) : Error(Kind::parse, w) {}
};
struct RangeError : Error {
  explicit RangeError(const std::string& w) : Error(Kind::range, w) {}
};
struct DomainError : Error {
  explicit DomainError(const std::string& w) : Error(Kind::domain, w) {}
};
struct ShapeError : Error {
  explicit ShapeError(const std::string& w) : Error(Kind::shape, w) {}
};
struct ContractError : Error {
  explicit ContractError(const std::string& w) : Error(Kind::contract, w) {}
};
struct NumericError : Error {
  explicit NumericError(const std::string& w) : Error(Kind::numeric, w) {}
};
struct ExhaustionError : Error {
  explicit ExhaustionError(const std::string& w) : Error(Kind::exhaustion, w) {}
};
struct IngestError : Error {
  explicit IngestError(const std::string& w) : Error(Kind::ingest, w) {}
};

}  // namespace dirlp
