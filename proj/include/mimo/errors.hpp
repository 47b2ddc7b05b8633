// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <stdexcept>

namespace mimo {

// All toolkit errors derive from std::runtime_error so callers can catch
// either the specific condition or the whole family at the CLI boundary.

struct UnsupportedLayout : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct DegeneratePlacement : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct InvalidAntennaCount : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct ZeroSpectralEfficiency : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct OutOfBracket : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct NonFiniteObjective : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct InvalidPilot : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct ConfigError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct IOFailure : std::runtime_error {
    using std::runtime_error::runtime_error;
};

} // namespace mimo
