#pragma once

#include <stdexcept>
#include <string>

namespace padic {

// All library failures carry a short machine-readable code plus a human
// message, e.g. code "prime-mismatch".
class Error : public std::runtime_error {
public:
    Error(std::string code, const std::string& message)
        : std::runtime_error(code + ": " + message), code_(std::move(code)) {}

    const std::string& code() const { return code_; }

private:
    std::string code_;
};

[[noreturn]] inline void fail(const std::string& code, const std::string& message) {
    throw Error(code, message);
}

} // namespace padic
