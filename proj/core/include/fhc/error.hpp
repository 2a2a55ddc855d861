#ifndef FHC_ERROR_HPP
#define FHC_ERROR_HPP

#include <stdexcept>
#include <string>

namespace fhc {

// Malformed or out-of-contract input (empty hull, bad parameters, parse errors).
class InputError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

// A value left the representable double range (exp overflow and friends).
class RangeError : public std::range_error {
 public:
  using std::range_error::range_error;
};

// A numerical procedure did not converge or hit a degenerate configuration
// (boundary zeros after all jiggles, ill-conditioned systems, ...).
class NumericError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// A target function is not a member of the requested Exp(K).
class MembershipError : public InputError {
 public:
  MembershipError(const std::string& what, std::size_t target_index)
      : InputError(what), target_index_(target_index) {}
  std::size_t target_index() const noexcept { return target_index_; }

 private:
  std::size_t target_index_;
};

}  // namespace fhc

#endif  // FHC_ERROR_HPP
