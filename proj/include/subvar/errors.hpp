#pragma once
#include <stdexcept>
#include <string>

namespace subvar {

/* Malformed value fed to an operation (odd-rank pfaffian, span mismatch, ...). */
struct structural_error : std::logic_error {
    explicit structural_error(const std::string& what) : std::logic_error(what) {}
};

/* A property the engine guarantees failed to hold; always a bug, never user input. */
struct invariant_error : std::logic_error {
    explicit invariant_error(const std::string& what) : std::logic_error(what) {}
};

/* Bad user-facing input (config file, CLI flag value). */
struct input_error : std::runtime_error {
    explicit input_error(const std::string& what) : std::runtime_error(what) {}
};

}  // namespace subvar
