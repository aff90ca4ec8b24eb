#pragma once

#include <stdexcept>
#include <string>

namespace deltarc {

/// Base class of every error raised by the library.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// A delta or config names a delta that the model does not contain.
class UnknownDeltaError : public Error {
public:
    explicit UnknownDeltaError(std::string name)
        : Error("unknown delta '" + name + "'"), name_(std::move(name)) {}

    [[nodiscard]] const std::string& name() const noexcept { return name_; }

private:
    std::string name_;
};

/// A config name that the model does not contain.
class UnknownConfigError : public Error {
public:
    explicit UnknownConfigError(std::string name)
        : Error("unknown configuration '" + name + "'"), name_(std::move(name)) {}

    [[nodiscard]] const std::string& name() const noexcept { return name_; }

private:
    std::string name_;
};

} // namespace deltarc
