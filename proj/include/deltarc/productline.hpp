#pragma once

// Product-line directories: manifest, file discovery, loading and writing.
//
// Layout:
//   productline.toml        optional manifest (key = "value" lines)
//   <core>.arc              the core architecture
//   env/*.arc               interfaces of subcomponent types
//   **/*.delta              deltas
//   **/*.deltaconfig        configurations
//   annotative/<file>.arc   optional annotated 150% model

#include "deltarc/annotative.hpp"
#include "deltarc/model.hpp"
#include "deltarc/parser.hpp"

#include <filesystem>
#include <map>
#include <optional>
#include <string>
#include <vector>

namespace deltarc {

struct Manifest {
    std::string core;          // path of the core file, relative to the root
    std::string env = "env";   // interface directory, relative to the root
    std::string label;         // scenario label used in reports
    std::string annotative;    // path of the annotated model, relative to the root
    std::string core_variant;  // variant that the annotated model's common part represents

    static constexpr const char* file_name = "productline.toml";

    /// Parses `key = "value"` lines; `#` starts a comment. Unknown keys and
    /// malformed lines throw ParseError.
    [[nodiscard]] static Manifest parse(std::string_view text, const std::string& path = file_name);
    [[nodiscard]] std::string str() const;
};

struct ProductLine {
    std::filesystem::path root;
    Manifest manifest;
    DeltaModel model;

    SourceFile core_file;
    std::vector<SourceFile> env_files;
    std::vector<SourceFile> delta_files;   // sorted by path
    std::vector<SourceFile> config_files;  // sorted by path
    std::map<std::string, std::filesystem::path, std::less<>> delta_paths;
    std::map<std::string, std::filesystem::path, std::less<>> config_paths;

    /// Label from the manifest, else the directory name.
    [[nodiscard]] std::string label() const;
    /// Core, interfaces, deltas and configurations.
    [[nodiscard]] std::vector<SourceFile> sources() const;
    [[nodiscard]] std::optional<std::filesystem::path> annotative_path() const;
};

/// Reads and parses a product-line directory and checks that configurations
/// and constraints only name existing deltas. Throws ParseError,
/// InvariantError, DanglingReferenceError, or Error for layout problems
/// (no or several core candidates, duplicate delta or config names).
[[nodiscard]] ProductLine load_product_line(const std::filesystem::path& root);

struct AnnotativeModel {
    SourceFile file;
    AnnotatedComponentType model;
    std::string core_variant;
};

/// Loads the manifest's annotated model; nullopt if the manifest names none.
[[nodiscard]] std::optional<AnnotativeModel> load_annotative(const ProductLine& line);

/// The annotated model followed by the interface files of the subcomponent
/// types it uses.
[[nodiscard]] std::vector<SourceFile> annotative_sources(const ProductLine& line, const AnnotativeModel& annotated);

/// Writes `model` as a product line into `target`: the core file, the
/// interface files, one file per delta and configuration, and the manifest.
/// Files of `original` for deltas or configurations absent from `model` are
/// deleted when `target` is the original root. Returns the written paths.
std::vector<std::filesystem::path> write_product_line(const ProductLine& original, const DeltaModel& model,
                                                      const std::filesystem::path& target);

} // namespace deltarc
