#pragma once

#include <stdexcept>
#include <string>
#include <vector>

namespace lamcl {

// Position of a subterm: child indices from the root.
using Path = std::vector<int>;

inline std::string path_to_string(const Path& p) {
    std::string s = "[";
    for (size_t i = 0; i < p.size(); ++i) {
        if (i) s += ",";
        s += std::to_string(p[i]);
    }
    return s + "]";
}

// Every error carries a stable machine-readable code, surfaced by the CLI.
struct Error : std::runtime_error {
    std::string code;
    Error(std::string c, const std::string& msg) : std::runtime_error(msg), code(std::move(c)) {}
};

struct ParseError : Error {
    int line, col;
    ParseError(int l, int c, const std::string& msg)
        : Error("parse_error", std::to_string(l) + ":" + std::to_string(c) + ": " + msg),
          line(l), col(c) {}
};

struct TypeError : Error {
    Path path;
    std::string rule;
    TypeError(Path p, std::string r, const std::string& msg)
        : Error("type_error", msg + " (rule " + r + " at " + path_to_string(p) + ")"),
          path(std::move(p)), rule(std::move(r)) {}
};

struct PathError : Error {
    explicit PathError(const std::string& msg) : Error("path_error", msg) {}
};

struct PreconditionError : Error {
    explicit PreconditionError(const std::string& msg) : Error("precondition", msg) {}
};

struct BudgetError : Error {
    explicit BudgetError(const std::string& msg) : Error("budget_exhausted", msg) {}
};

// A violated metatheory assertion; on well-typed input this is a bug, never user error.
struct InvariantError : Error {
    explicit InvariantError(const std::string& msg) : Error("internal_invariant", msg) {}
};

struct IoError : Error {
    explicit IoError(const std::string& msg) : Error("io_error", msg) {}
};

} // namespace lamcl
