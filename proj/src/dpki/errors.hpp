// Copyright (c) 2026 The dpki developers
// Distributed under the MIT software license, see the accompanying COPYING file.

#ifndef DPKI_ERRORS_HPP
#define DPKI_ERRORS_HPP

#include <stdexcept>
#include <string>

namespace dpki {

// Base class for every error the engine raises on purpose. Anything else
// escaping a public entry point is a bug.
struct Error : std::runtime_error {
    explicit Error(const std::string& msg) : std::runtime_error(msg) {}
};

struct CryptoError : Error {
    using Error::Error;
};

struct IdentityError : Error {
    using Error::Error;
};

struct NotFoundError : Error {
    using Error::Error;
};

// An operation was attempted against state that forbids it, e.g. resetting
// an identity whose revocation count is still below the limit.
struct PreconditionError : Error {
    using Error::Error;
};

struct InsufficientFundsError : Error {
    using Error::Error;
};

struct ConfigError : Error {
    using Error::Error;
};

struct LedgerError : Error {
    using Error::Error;
};

struct ConsensusError : Error {
    using Error::Error;
};

struct SimulationError : Error {
    using Error::Error;
};

struct IoError : Error {
    using Error::Error;
};

}  // namespace dpki

#endif  // DPKI_ERRORS_HPP
