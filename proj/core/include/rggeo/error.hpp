#pragma once

#include <stdexcept>
#include <string>

namespace rggeo {

/// Base class for every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Invalid configuration or violated precondition on user-supplied input.
class ConfigError : public Error {
 public:
  using Error::Error;
};

/// A point was evaluated outside the domain D.
class DomainError : public Error {
 public:
  using Error::Error;
};

/// a and b are not connected in the graph.
class NoPathError : public Error {
 public:
  using Error::Error;
};

/// The hop cap is smaller than the BFS hop distance between a and b.
class InfeasibleError : public Error {
 public:
  InfeasibleError(const std::string& what, int bfs_hops)
      : Error(what), bfs_hops_(bfs_hops) {}
  int bfs_hops() const { return bfs_hops_; }

 private:
  int bfs_hops_;
};

/// Operation not available for this combination of inputs.
class UnsupportedError : public Error {
 public:
  using Error::Error;
};

}  // namespace rggeo
