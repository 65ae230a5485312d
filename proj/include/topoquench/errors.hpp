#pragma once

#include <stdexcept>
#include <string>

namespace tq {

struct UnsupportedRank : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};
struct DimensionMismatch : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};
struct GaplessPoint : std::domain_error {
  using std::domain_error::domain_error;
};
struct InvalidField : std::domain_error {
  using std::domain_error::domain_error;
};
struct NoSis : std::domain_error {
  using std::domain_error::domain_error;
};
struct StiffnessFailure : std::runtime_error {
  using std::runtime_error::runtime_error;
};
struct BadStart : std::runtime_error {
  using std::runtime_error::runtime_error;
};
struct WindowError : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};
struct EmptySurface : std::runtime_error {
  using std::runtime_error::runtime_error;
};
struct FlatField : std::runtime_error {
  using std::runtime_error::runtime_error;
};
struct NonQuantized : std::runtime_error {
  using std::runtime_error::runtime_error;
};
struct DegenerateSign : std::runtime_error {
  using std::runtime_error::runtime_error;
};
struct InconsistentEvidence : std::runtime_error {
  using std::runtime_error::runtime_error;
};
struct ConfigError : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

}  // namespace tq
