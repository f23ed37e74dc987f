#pragma once

#include <stdexcept>
#include <string>

namespace cycalc {

enum class ErrorCode {
    internal = 1,
    pipeline_mismatch = 2,
    underdetermined = 3,
    invariant_mismatch = 4,
    not_found = 5,
    invalid_argument = 6,
};

class Error : public std::runtime_error {
public:
    Error(ErrorCode code, const std::string& what) : std::runtime_error(what), code_(code) {}
    ErrorCode code() const noexcept { return code_; }

private:
    ErrorCode code_;
};

[[noreturn]] inline void fail(const std::string& what) { throw Error(ErrorCode::internal, what); }
[[noreturn]] inline void fail(ErrorCode code, const std::string& what) { throw Error(code, what); }

}  // namespace cycalc
