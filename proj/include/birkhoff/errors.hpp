#pragma once

#include <stdexcept>
#include <string>

namespace birkhoff {

// Domain errors carry a stable machine-readable code next to the human text.
// The CLI maps these to exit code 1 and a JSON error record.
class domain_error : public std::runtime_error {
public:
    domain_error(std::string code, const std::string& what)
        : std::runtime_error(what), code_(std::move(code)) {}

    const std::string& code() const { return code_; }

private:
    std::string code_;
};

[[noreturn]] inline void fail(const std::string& code, const std::string& what) {
    throw domain_error(code, what);
}

} // namespace birkhoff
