#pragma once

#include <stdexcept>
#include <string>

namespace lg {

/// Base of every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class InvalidPattern : public Error {
 public:
  using Error::Error;
};

class InvalidHostGraph : public Error {
 public:
  using Error::Error;
};

class NotFlowPreserving : public Error {
 public:
  using Error::Error;
};

class ZeroWeight : public Error {
 public:
  using Error::Error;
};

class DegenerateStage : public Error {
 public:
  using Error::Error;
};

class Inconsistent : public Error {
 public:
  using Error::Error;
};

/// A lemma precondition failed; `clause()` names which one.
class HypothesisViolation : public Error {
 public:
  HypothesisViolation(std::string clause, const std::string& what)
      : Error(what), clause_(std::move(clause)) {}
  const std::string& clause() const noexcept { return clause_; }

 private:
  std::string clause_;
};

class InfeasibleParameters : public Error {
 public:
  using Error::Error;
};

class WitnessClash : public Error {
 public:
  using Error::Error;
};

class DegenerateSystem : public Error {
 public:
  using Error::Error;
};

class NoFeasiblePoint : public Error {
 public:
  using Error::Error;
};

}  // namespace lg
