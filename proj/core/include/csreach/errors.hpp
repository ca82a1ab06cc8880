// csreach: error taxonomy shared by the library and the CLI.
#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace csreach {

// Base class for all csreach errors.
class Error : public std::runtime_error {
public:
    explicit Error(const std::string& what) : std::runtime_error(what) {}
};

// Malformed graph text: carries the 1-based line number of the offending line.
class ParseError : public Error {
public:
    ParseError(std::size_t line, const std::string& reason)
        : Error("line " + std::to_string(line) + ": " + reason), line_(line), reason_(reason) {}

    std::size_t line() const noexcept { return line_; }
    const std::string& reason() const noexcept { return reason_; }

private:
    std::size_t line_;
    std::string reason_;
};

// Structurally invalid graph handed to a constructor (bad ids, duplicate
// edges, non-eps self loop, ...). Distinct from a ValidationReport failure,
// which covers semantic rules on a structurally sound graph.
class StructureError : public Error {
public:
    using Error::Error;
};

// A configurable resource guard tripped (oracle size, transitive-closure
// component limit, dual-labeling non-tree-edge limit, derives length bound).
class GuardError : public Error {
public:
    using Error::Error;
};

// Infeasible generator parameters.
class ParamError : public Error {
public:
    using Error::Error;
};

// Operation requested from a scheme that cannot provide it (e.g. witness
// paths from an index whose capabilities lack them).
class CapabilityError : public Error {
public:
    using Error::Error;
};

// Corrupt or mismatched serialized index (bad magic, version, or the index
// was built from a different graph).
class SerializationError : public Error {
public:
    using Error::Error;
};

} // namespace csreach
