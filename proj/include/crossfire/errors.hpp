#pragma once

#include <stdexcept>
#include <string>

namespace crossfire {

// Argument outside the mathematical domain of an operation.
class DomainError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

// Path loss evaluated at (or within the guard distance of) zero separation.
class SingularityError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

// Configuration or parameter set violating a documented invariant.
class ValidationError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

// Requested reliability exceeds the interference-free success probability.
class InfeasibleDesign : public std::runtime_error {
 public:
  InfeasibleDesign(const std::string& what, double p_noint, double p_target)
      : std::runtime_error(what), p_noint_(p_noint), p_target_(p_target) {}

  double p_noint() const noexcept { return p_noint_; }
  double p_target() const noexcept { return p_target_; }

 private:
  double p_noint_;
  double p_target_;
};

class QuadratureError : public std::runtime_error {
 public:
  QuadratureError(const std::string& what, double achieved)
      : std::runtime_error(what), achieved_(achieved) {}

  double achieved_tolerance() const noexcept { return achieved_; }

 private:
  double achieved_;
};

}  // namespace crossfire
