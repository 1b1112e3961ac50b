#pragma once

#include <stdexcept>
#include <string>

namespace dieudonne {

/// Root of every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Invalid input: non-coprime slope pairs, mismatched rings, zero points, ...
class ArgumentError : public Error {
 public:
  using Error::Error;
};

/// A quantity could not be separated from zero inside the precision window.
class PrecisionError : public Error {
 public:
  using Error::Error;
};

/// Requested parameters exceed what the residue representation can hold.
class CapacityError : public Error {
 public:
  using Error::Error;
};

/// No Conway polynomial is known for the requested (p, m).
class ConwayError : public Error {
 public:
  using Error::Error;
};

/// A skeleton needed a larger residue field than the configured cap allows.
class ExtensionError : public Error {
 public:
  ExtensionError(const std::string& what, int required_degree)
      : Error(what), required_degree_(required_degree) {}
  int required_degree() const noexcept { return required_degree_; }

 private:
  int required_degree_;
};

/// Sub-lattice is not contained in the lattice it was measured against.
class ContainmentError : public Error {
 public:
  using Error::Error;
};

/// A basis matrix does not have full rank.
class RankError : public Error {
 public:
  using Error::Error;
};

/// Malformed input document.
class FormatError : public Error {
 public:
  using Error::Error;
};

/// An invariant guaranteed by the theory failed. Always indicates a bug.
class InternalError : public Error {
 public:
  using Error::Error;
};

}  // namespace dieudonne
