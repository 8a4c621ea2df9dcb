#pragma once

#include <stdexcept>
#include <string>

namespace sfe {

// Thrown on any contract violation: bad inputs, size guards, schema errors.
class Error : public std::runtime_error {
public:
    explicit Error(const std::string& what) : std::runtime_error(what) {}
};

[[noreturn]] inline void fail(const std::string& what) { throw Error(what); }

inline void require(bool cond, const std::string& what) {
    if (!cond) fail(what);
}

} // namespace sfe
