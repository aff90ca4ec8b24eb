#pragma once

// Parsing and canonical printing of the four textual languages:
// architectures (.arc), deltas (.delta), configurations (.deltaconfig) and
// annotated 150% architectures (.arc read in annotated mode).

#include "deltarc/annotative.hpp"
#include "deltarc/model.hpp"

#include <filesystem>
#include <string>
#include <vector>

namespace deltarc {

struct SourceFile {
    enum class Kind { architecture, delta, config, annotated };

    std::string path;
    Kind kind = Kind::architecture;
    std::string text;

    /// Kind from the file extension; .arc maps to architecture unless
    /// `annotated` is set.
    [[nodiscard]] static Kind kind_for(const std::filesystem::path& path, bool annotated = false);
    /// Reads a file from disk. Throws Error if it cannot be read.
    [[nodiscard]] static SourceFile load(const std::filesystem::path& path, bool annotated = false);
};

class ParseError : public Error {
public:
    ParseError(std::string path, int line, int column, std::string message,
               std::vector<std::string> expected = {});

    [[nodiscard]] const std::string& path() const noexcept { return path_; }
    [[nodiscard]] int line() const noexcept { return line_; }
    [[nodiscard]] int column() const noexcept { return column_; }
    [[nodiscard]] const std::string& message() const noexcept { return message_; }
    [[nodiscard]] const std::vector<std::string>& expected() const noexcept { return expected_; }

private:
    std::string path_;
    int line_;
    int column_;
    std::string message_;
    std::vector<std::string> expected_;
};

/// An after-clause that names the delta it belongs to.
class SelfReferenceError : public ParseError {
public:
    using ParseError::ParseError;
};

/// A delta listed twice in one configuration.
class DuplicateDeltaError : public ParseError {
public:
    using ParseError::ParseError;
};

/// `<<variant = "">>` or a list with an empty entry.
class EmptyVariantListError : public ParseError {
public:
    using ParseError::ParseError;
};

[[nodiscard]] ComponentType parse_architecture(const SourceFile& src);
[[nodiscard]] Delta parse_delta(const SourceFile& src);
[[nodiscard]] DeltaConfig parse_config(const SourceFile& src);
[[nodiscard]] AnnotatedComponentType parse_annotated(const SourceFile& src);
/// Parses a bare application order constraint, e.g. "A && !(B || C)".
[[nodiscard]] AocExpr parse_aoc(std::string_view text);

// Canonical text: two-space indent, one declaration per statement.
[[nodiscard]] std::string unparse(const ComponentType& component);
[[nodiscard]] std::string unparse(const AnnotatedComponentType& component);
[[nodiscard]] std::string unparse(const Delta& delta);
[[nodiscard]] std::string unparse(const DeltaConfig& config);
[[nodiscard]] std::string unparse(const AocExpr& expr);

} // namespace deltarc
