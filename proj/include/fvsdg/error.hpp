#pragma once

#include <stdexcept>
#include <string>

namespace fvsdg {

enum class ErrorKind { Config, Inadmissible, Divergence, Numerical };

class Error : public std::runtime_error {
public:
    Error(ErrorKind kind, const std::string& what) : std::runtime_error(what), kind_(kind) {}
    ErrorKind kind() const { return kind_; }

private:
    ErrorKind kind_;
};

[[noreturn]] inline void fail(ErrorKind kind, const std::string& what) { throw Error(kind, what); }

inline void require(bool cond, const std::string& what) {
    if (!cond) fail(ErrorKind::Config, what);
}

}  // namespace fvsdg
