#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>
#include <utility>

namespace wifiplan {

/// Base of every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class InvalidConfig : public Error {
 public:
  using Error::Error;
};

class UncoverableInstance : public Error {
 public:
  using Error::Error;
};

/// Malformed instance or LP text. `where` names the offending field or line.
class ParseError : public Error {
 public:
  ParseError(std::string where, const std::string& what)
      : Error(where + ": " + what), where_(std::move(where)) {}
  const std::string& where() const noexcept { return where_; }

 private:
  std::string where_;
};

class IoError : public Error {
 public:
  using Error::Error;
};

class NotACover : public Error {
 public:
  explicit NotACover(int uncovered_tp)
      : Error("site set is not a cover: test point " + std::to_string(uncovered_tp) +
              " is uncovered"),
        tp_(uncovered_tp) {}
  int uncovered_tp() const noexcept { return tp_; }

 private:
  int tp_;
};

class InvalidAlpha : public Error {
 public:
  using Error::Error;
};

/// A solver ran out of budget. Solvers that have an incumbent throw
/// BudgetExceededWith<Result> so callers can fall back to it.
class BudgetExceeded : public Error {
 public:
  using Error::Error;
};

template <class Result>
class BudgetExceededWith : public BudgetExceeded {
 public:
  BudgetExceededWith(const std::string& what, Result incumbent)
      : BudgetExceeded(what), incumbent_(std::move(incumbent)) {}
  const Result& incumbent() const noexcept { return incumbent_; }

 private:
  Result incumbent_;
};

class ScenarioExplosion : public Error {
 public:
  ScenarioExplosion(int tp, int site, std::uint64_t count_log2)
      : Error("scenario explosion at test point " + std::to_string(tp) + ", site " +
              std::to_string(site) + ": 2^" + std::to_string(count_log2) +
              " scenarios exceed the cap"),
        tp_(tp),
        site_(site),
        log2_(count_log2) {}
  int tp() const noexcept { return tp_; }
  int site() const noexcept { return site_; }
  std::uint64_t count_log2() const noexcept { return log2_; }

 private:
  int tp_;
  int site_;
  std::uint64_t log2_;
};

class TooManyAPs : public Error {
 public:
  using Error::Error;
};

class UnknownVariable : public Error {
 public:
  explicit UnknownVariable(const std::string& name)
      : Error("unknown variable '" + name + "'") {}
};

class InconsistentDesign : public Error {
 public:
  using Error::Error;
};

class TooLarge : public Error {
 public:
  using Error::Error;
};

}  // namespace wifiplan
