#ifndef RADIAL2D_ERRORS_HPP
#define RADIAL2D_ERRORS_HPP

#include <stdexcept>
#include <string>

namespace radial2d {

class error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Bad catalog kind, parameter out of range, malformed input.
class invalid_potential : public error {
 public:
  using error::error;
};

/// The potential has no finite integral of rF, or no finite truncation reaches the tail tolerance.
class non_integrable : public error {
 public:
  using error::error;
};

class quadrature_failure : public error {
 public:
  using error::error;
};

class step_control_failure : public error {
 public:
  using error::error;
};

class invalid_argument : public error {
 public:
  using error::error;
};

}  // namespace radial2d

#endif  // RADIAL2D_ERRORS_HPP
