#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace yamabe {

/// An iterative solver hit its iteration cap.
class ConvergenceError : public std::runtime_error {
 public:
  ConvergenceError(const std::string& what, double last_residual)
      : std::runtime_error(what + " (last residual " + std::to_string(last_residual) + ")"),
        last_residual_(last_residual) {}
  double last_residual() const { return last_residual_; }

 private:
  double last_residual_;
};

/// A ground state changed sign: the discretisation is too coarse or the
/// operator is wrong.
class PositivityError : public std::runtime_error {
 public:
  PositivityError(const std::string& what, std::size_t node)
      : std::runtime_error(what + " (node " + std::to_string(node) + ")"), node_(node) {}
  std::size_t node() const { return node_; }

 private:
  std::size_t node_;
};

}  // namespace yamabe
