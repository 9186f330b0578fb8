#pragma once

#include <stdexcept>
#include <string>

namespace nlsv {

enum class ErrorKind {
  Domain,      // argument outside the mathematical domain
  Divergence,  // integral or norm is infinite
  Config,      // inconsistent configuration / grid
  Solver,      // numerical procedure failed to converge
  Io,          // file system or parse failure
  Validation,  // potential or data failed a hypothesis check
};

class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& what) : std::runtime_error(what), kind_(kind) {}
  ErrorKind kind() const noexcept { return kind_; }

 private:
  ErrorKind kind_;
};

[[noreturn]] inline void fail(ErrorKind kind, const std::string& what) { throw Error(kind, what); }

}  // namespace nlsv
