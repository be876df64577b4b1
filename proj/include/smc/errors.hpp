#ifndef SMC_ERRORS_HPP
#define SMC_ERRORS_HPP

#include <stdexcept>
#include <string>

namespace smc {

// Malformed or inconsistent input (files, words, cell references).
class input_error : public std::runtime_error {
 public:
  explicit input_error(const std::string& what) : std::runtime_error(what) {}
};

// A query touched a cell whose star may be incomplete in a ball backend.
// Raised instead of ever reporting an undercounted answer.
class frontier_error : public std::runtime_error {
 public:
  explicit frontier_error(const std::string& what) : std::runtime_error(what) {}
};

// A metric hypothesis gate (C'(lambda), 6*lambda*M < 1, ...) is not satisfied
// for an operation that requires it for soundness.
class hypothesis_error : public std::runtime_error {
 public:
  explicit hypothesis_error(const std::string& what) : std::runtime_error(what) {}
};

}  // namespace smc

#endif  // SMC_ERRORS_HPP
