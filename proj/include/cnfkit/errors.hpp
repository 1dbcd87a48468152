#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace cnf {

/// Root of every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Malformed formula text. Carries the byte offset of the offending token and
/// the set of tokens the parser would have accepted there.
class SyntaxError : public Error {
 public:
  SyntaxError(std::size_t offset, std::vector<std::string> expected, const std::string& found)
      : Error(format(offset, expected, found)), offset_(offset), expected_(std::move(expected)) {}

  std::size_t offset() const noexcept { return offset_; }
  const std::vector<std::string>& expected() const noexcept { return expected_; }

 private:
  static std::string format(std::size_t offset, const std::vector<std::string>& expected,
                            const std::string& found) {
    std::string msg = "syntax error at byte " + std::to_string(offset) + ": expected ";
    for (std::size_t i = 0; i < expected.size(); ++i) {
      if (i > 0) msg += i + 1 == expected.size() ? " or " : ", ";
      msg += expected[i];
    }
    msg += ", found " + found;
    return msg;
  }

  std::size_t offset_;
  std::vector<std::string> expected_;
};

/// The conversion allocated more formula nodes than the configured budget.
class OutputBudgetExceeded : public Error {
 public:
  explicit OutputBudgetExceeded(std::size_t limit)
      : Error("output budget exceeded: more than " + std::to_string(limit) + " formula nodes"),
        limit_(limit) {}

  std::size_t limit() const noexcept { return limit_; }

 private:
  std::size_t limit_;
};

/// The continuation-passing engine nested deeper than its configured bound.
class DepthLimitExceeded : public Error {
 public:
  explicit DepthLimitExceeded(std::size_t limit)
      : Error("continuation depth limit of " + std::to_string(limit) + " exceeded"), limit_(limit) {}

  std::size_t limit() const noexcept { return limit_; }

 private:
  std::size_t limit_;
};

class TooManyAtoms : public Error {
 public:
  TooManyAtoms(std::size_t count, std::size_t limit)
      : Error("equivalence check over " + std::to_string(count) + " atoms exceeds the limit of " +
              std::to_string(limit)),
        count_(count),
        limit_(limit) {}

  std::size_t count() const noexcept { return count_; }
  std::size_t limit() const noexcept { return limit_; }

 private:
  std::size_t count_;
  std::size_t limit_;
};

class NotInCNF : public Error {
 public:
  using Error::Error;
};

/// Base of the runtime contract checks enabled by checked mode.
class ContractViolation : public Error {
 public:
  using Error::Error;
};

class PreconditionViolation : public ContractViolation {
 public:
  using ContractViolation::ContractViolation;
};

class PostconditionViolation : public ContractViolation {
 public:
  using ContractViolation::ContractViolation;
};

class StackInvariantViolation : public ContractViolation {
 public:
  using ContractViolation::ContractViolation;
};

/// A termination measure failed to decrease across a recursive call.
class VariantViolation : public ContractViolation {
 public:
  using ContractViolation::ContractViolation;
};

}  // namespace cnf
