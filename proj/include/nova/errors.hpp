// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <stdexcept>
#include <string>

namespace nova {

/// Bad or inconsistent configuration (files, profiles, simulator setup).
class ConfigError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// MLP training produced a non-finite loss; retry with a different seed.
class TrainingDivergence : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Schedule and lookup address disagree (e.g. slot index out of range).
class ProtocolError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// More breakpoints than the single on-wire tag bit can disambiguate.
class UnsupportedBreakpointCount : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

/// LUT bank too small for the requested segment count.
class CapacityError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

} // namespace nova
