#pragma once

#include <stdexcept>
#include <string>

namespace pwldyn {

struct ParseError : std::runtime_error {
    explicit ParseError(const std::string& what) : std::runtime_error(what) {}
};

struct DomainError : std::runtime_error {
    explicit DomainError(const std::string& what) : std::runtime_error(what) {}
};

// Thrown when a piece-count budget is exhausted; distinct from "no result".
struct ResourceCapError : std::runtime_error {
    explicit ResourceCapError(const std::string& what) : std::runtime_error(what) {}
};

// Internal consistency failure; indicates a bug, not bad input.
struct InvariantError : std::logic_error {
    explicit InvariantError(const std::string& what) : std::logic_error(what) {}
};

struct ChainNotFoundError : std::runtime_error {
    explicit ChainNotFoundError(const std::string& what) : std::runtime_error(what) {}
};

}  // namespace pwldyn
