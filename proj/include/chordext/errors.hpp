#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>
#include <vector>

namespace chordext {

/// Base of every error thrown by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Malformed input or a violated precondition.
class InvalidArgument : public Error {
 public:
  using Error::Error;
};

/// A configured radius, element or clique cap was exceeded.
class CapExceeded : public Error {
 public:
  using Error::Error;
};

/// A numerical step failed (root off the unit circle, internal invariant).
class NumericalError : public Error {
 public:
  using Error::Error;
};

/// A matrix that must be positive semidefinite is not.
class NotPsd : public Error {
 public:
  NotPsd(std::string what, double min_eigenvalue)
      : Error(std::move(what)), min_eigenvalue_(min_eigenvalue) {}
  double min_eigenvalue() const { return min_eigenvalue_; }

 private:
  double min_eigenvalue_;
};

/// The pattern of specified entries is not chordal. Carries a verified chordless
/// cycle (vertex indices) and, when available, element labels for it.
class NotChordal : public Error {
 public:
  NotChordal(std::string what, std::vector<int> cycle,
             std::vector<std::string> labels = {})
      : Error(std::move(what)),
        cycle_(std::move(cycle)),
        labels_(std::move(labels)) {}
  const std::vector<int>& cycle() const { return cycle_; }
  const std::vector<std::string>& labels() const { return labels_; }

 private:
  std::vector<int> cycle_;
  std::vector<std::string> labels_;
};

/// A fully specified clique of a partial matrix fails positivity.
class CliqueNotPsd : public Error {
 public:
  CliqueNotPsd(std::string what, std::size_t clique_index,
               std::vector<int> clique, double min_eigenvalue,
               std::vector<std::string> labels = {})
      : Error(std::move(what)),
        clique_index_(clique_index),
        clique_(std::move(clique)),
        min_eigenvalue_(min_eigenvalue),
        labels_(std::move(labels)) {}
  std::size_t clique_index() const { return clique_index_; }
  const std::vector<int>& clique() const { return clique_; }
  double min_eigenvalue() const { return min_eigenvalue_; }
  const std::vector<std::string>& labels() const { return labels_; }

 private:
  std::size_t clique_index_;
  std::vector<int> clique_;
  double min_eigenvalue_;
  std::vector<std::string> labels_;
};

/// The averaging window does not contain y and yx for some Følner element y.
class WindowTooSmall : public Error {
 public:
  WindowTooSmall(std::string what, std::vector<std::string> violations)
      : Error(std::move(what)), violations_(std::move(violations)) {}
  const std::vector<std::string>& violations() const { return violations_; }

 private:
  std::vector<std::string> violations_;
};

/// A value of φ was requested that is neither stored nor rule-generated.
class MissingValue : public Error {
 public:
  using Error::Error;
};

}  // namespace chordext
