#pragma once

#include <stdexcept>
#include <string>

namespace invset {

/// A measurement/angle pairing that has no realisation on the invariant set,
/// e.g. a momentum measurement at a phase whose cosine is irrational.
class InconsistentHistory : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// A correlation requested from the sample space of the opposite z-parity.
class WrongSampleSpace : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// The requested state needs more than 2^N elements (non-integral block
/// sizes, or derived weights that are not dyadic).
class NotRepresentable : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

class SeedExhausted : public std::out_of_range {
 public:
  using std::out_of_range::out_of_range;
};

}  // namespace invset
