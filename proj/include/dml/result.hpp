#pragma once

#include <stdexcept>
#include <string>
#include <utility>
#include <variant>
#include <vector>

namespace dml {

/// A failed structural check: which axiom broke and on which elements.
/// Witness entries are element labels of the structure under validation.
struct Violation {
  std::string axiom;
  std::vector<std::string> witness;
  std::string detail;

  std::string to_string() const;
};

/// Exceeding a configured size bound. Carries the bound's name so callers
/// can report or skip the offending corpus entry.
class ResourceError : public std::runtime_error {
public:
  ResourceError(std::string bound_name, long long limit, long long requested);

  const std::string& bound_name() const { return bound_name_; }
  long long limit() const { return limit_; }
  long long requested() const { return requested_; }

private:
  std::string bound_name_;
  long long limit_;
  long long requested_;
};

/// Value-or-violation result for validating constructors.
template <typename T>
class Result {
public:
  Result(T value) : data_(std::move(value)) {}
  Result(Violation v) : data_(std::move(v)) {}

  bool ok() const { return std::holds_alternative<T>(data_); }
  explicit operator bool() const { return ok(); }

  T& value() & { return std::get<T>(data_); }
  const T& value() const& { return std::get<T>(data_); }
  T&& value() && { return std::get<T>(std::move(data_)); }

  const Violation& error() const { return std::get<Violation>(data_); }

private:
  std::variant<T, Violation> data_;
};

}  // namespace dml
