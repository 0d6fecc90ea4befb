#pragma once
#include <stdexcept>
#include <string>

namespace stratum {

// Typed error carrying a stable machine-readable code alongside the message.
// Codes are the contract; tests match on them.
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

} // namespace stratum
