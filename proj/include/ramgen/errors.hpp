#pragma once

#include <stdexcept>
#include <string>

namespace ramgen {

// Error taxonomy mirrors the CLI exit-code contract:
//   usage_error -> 2, resource_error -> 3, everything else that goes wrong -> 1.
struct domain_error : std::runtime_error {
    explicit domain_error(const std::string& m) : std::runtime_error(m) {}
};

struct usage_error : std::runtime_error {
    explicit usage_error(const std::string& m) : std::runtime_error(m) {}
};

struct resource_error : std::runtime_error {
    explicit resource_error(const std::string& m) : std::runtime_error(m) {}
};

// Signals a broken internal invariant (e.g. an element that must be a Lie
// element fails the membership test). Always a bug, never user input.
struct internal_error : std::logic_error {
    explicit internal_error(const std::string& m) : std::logic_error(m) {}
};

} // namespace ramgen
