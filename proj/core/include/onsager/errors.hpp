#pragma once

#include <stdexcept>
#include <string>

namespace onsager {

/// Classification used by the CLI to map failures onto exit codes.
enum class ErrorKind {
    precondition,      ///< caller violated an operation's precondition
    margin_violation,  ///< mollification stencil would leave the valid data
    hypothesis,        ///< a checked hypothesis of a diagnostic failed
    io,                ///< file format or filesystem problem
    internal
};

class Error : public std::runtime_error {
public:
    Error(ErrorKind kind, const std::string& what) : std::runtime_error(what), kind_(kind) {}
    ErrorKind kind() const noexcept { return kind_; }

private:
    ErrorKind kind_;
};

[[noreturn]] inline void fail(ErrorKind kind, const std::string& what) { throw Error(kind, what); }

inline void require(bool cond, const std::string& what) {
    if (!cond) fail(ErrorKind::precondition, what);
}

} // namespace onsager
