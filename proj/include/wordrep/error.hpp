#pragma once

#include <stdexcept>
#include <string>
#include <utility>

namespace wordrep {

// Domain error carrying a stable machine-readable code alongside the human
// message.  Tests match on the code, never on the message text.
class Error : public std::runtime_error {
public:
    Error(std::string code, const std::string& what)
        : std::runtime_error(what), code_(std::move(code)) {}

    const std::string& code() const noexcept { return code_; }

private:
    std::string code_;
};

[[noreturn]] inline void fail(std::string code, const std::string& message) {
    throw Error(std::move(code), message);
}

} // namespace wordrep
