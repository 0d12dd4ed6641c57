#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace hedonic {

/// Base class of every error raised by the library.
class error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Malformed partition or formula text. `position` is a byte offset into the input.
class parse_error : public error {
public:
    parse_error(const std::string& what, std::size_t position)
        : error(what + " (at position " + std::to_string(position) + ")"), position_(position) {}

    std::size_t position() const noexcept { return position_; }

private:
    std::size_t position_;
};

/// A player or pair variable outside the ambient player set.
class domain_error : public error {
public:
    using error::error;
};

/// A size guard was exceeded; the message names the alternative route.
class limit_error : public error {
public:
    using error::error;
};

class precondition_error : public error {
public:
    using error::error;
};

/// An assignment that does not describe a partition.
class integrity_error : public error {
public:
    using error::error;
};

/// The requested encoding needs hedonic (player-local) goals.
class unsupported_error : public error {
public:
    using error::error;
};

/// A game document failed validation; one message per problem found.
class validation_error : public error {
public:
    explicit validation_error(std::vector<std::string> problems)
        : error(join(problems)), problems_(std::move(problems)) {}

    const std::vector<std::string>& problems() const noexcept { return problems_; }

private:
    static std::string join(const std::vector<std::string>& problems) {
        std::string out = "invalid game";
        for (const auto& p : problems) {
            out += "\n  ";
            out += p;
        }
        return out;
    }

    std::vector<std::string> problems_;
};

}  // namespace hedonic
