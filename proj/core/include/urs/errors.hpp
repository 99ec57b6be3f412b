#ifndef URS_ERRORS_HPP_
#define URS_ERRORS_HPP_

#include <stdexcept>

namespace urs {

class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Inversion of zero, operands from different moduli, square root of a
// non-residue.
class ArithmeticError : public Error {
 public:
  using Error::Error;
};

class CurveError : public Error {
 public:
  using Error::Error;
};

class DecodeError : public Error {
 public:
  using Error::Error;
};

class SchemeError : public Error {
 public:
  using Error::Error;
};

}  // namespace urs

#endif  // URS_ERRORS_HPP_
