#pragma once

#include <gmpxx.h>

#include <stdexcept>
#include <string>

namespace etkk {

enum class ErrorKind {
    DimensionMismatch,
    InvalidPresentation, // algebra presentation invariant violated
    InvalidHom,          // standard-form equations violated
    NotInC,              // diagram pair fails the commuting condition
    NotUnital,           // lambda0 * k is not an integer multiple of k'
    NotRealizableAtC,    // realization needs a larger padding constant
    LTooSmall,           // property (H) witness needs a larger L
    NotNormalizable,     // PL path outside the normalizable sub-language
    MalformedDocument,   // JSON document fails its schema
    MalformedCertificate,
    Internal,
};

class Error : public std::runtime_error {
  public:
    Error(ErrorKind kind, const std::string& what) : std::runtime_error(what), kind_(kind) {}
    ErrorKind kind() const { return kind_; }

  private:
    ErrorKind kind_;
};

// NotRealizableAtC carries the most negative entry seen, so callers can
// bound the padding needed (entries grow at least linearly in c).
class NotRealizableError : public Error {
  public:
    NotRealizableError(const std::string& what, mpz_class worst)
        : Error(ErrorKind::NotRealizableAtC, what), worst_entry_(std::move(worst)) {}
    const mpz_class& worst_entry() const { return worst_entry_; }

  private:
    mpz_class worst_entry_;
};

class LTooSmallError : public Error {
  public:
    LTooSmallError(const std::string& what, mpz_class sufficient)
        : Error(ErrorKind::LTooSmall, what), sufficient_(std::move(sufficient)) {}
    const mpz_class& sufficient_l() const { return sufficient_; }

  private:
    mpz_class sufficient_;
};

} // namespace etkk
