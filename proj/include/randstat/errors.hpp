#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace randstat {

// Base class for every error raised by the library. Anything deriving from
// `error` is a user/data problem; the CLI maps these to exit code 2.
class error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class invalid_dimension : public error {
 public:
  using error::error;
};

class invalid_argument : public error {
 public:
  using error::error;
};

// Score function with zero variance.
class degenerate_score : public error {
 public:
  using error::error;
};

// A phi function was evaluated outside of its domain. `cell` is 0-based.
class phi_domain_error : public error {
 public:
  phi_domain_error(std::size_t cell, double argument, const std::string& what)
      : error(what), cell_(cell), argument_(argument) {}

  std::size_t cell() const noexcept { return cell_; }
  double argument() const noexcept { return argument_; }

 private:
  std::size_t cell_;
  double argument_;
};

// Monte Carlo experiment could not produce a usable estimate.
class experiment_error : public error {
 public:
  using error::error;
};

}  // namespace randstat
