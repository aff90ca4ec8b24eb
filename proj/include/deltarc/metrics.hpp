#pragma once

// Size and variability metrics for delta-oriented and annotative
// representations of a product line, and comparison reports over scenarios.

#include "deltarc/annotative.hpp"
#include "deltarc/model.hpp"
#include "deltarc/parser.hpp"

#include <cstddef>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace deltarc {

class UnterminatedCommentError : public Error {
public:
    UnterminatedCommentError(int line, int column);

    [[nodiscard]] int line() const noexcept { return line_; }
    [[nodiscard]] int column() const noexcept { return column_; }

private:
    int line_;
    int column_;
};

struct CharCount {
    std::size_t visible = 0;
    /// Visible characters inside `<< ... >>` annotations, delimiters included.
    std::size_t annotation = 0;
};

/// Counts Unicode scalars that are neither whitespace (space, tab, CR, LF,
/// vertical tab, form feed) nor part of a // or /* */ comment. Comment
/// markers inside "..." strings do not start comments.
[[nodiscard]] CharCount count_chars(std::string_view text);
[[nodiscard]] std::size_t count_visible_chars(std::string_view text);

struct ScenarioMetrics {
    std::size_t components = 0;
    std::size_t ports = 0;
    std::size_t connections = 0;
    std::size_t variants = 0;
    std::size_t chars = 0;
    std::size_t varchars = 0;
    std::size_t files = 0;
    std::size_t maxchars = 0;

    /// varchars / chars; 0 for an empty model.
    [[nodiscard]] double rel_variant_info() const noexcept;
    /// chars / files; 0 without files.
    [[nodiscard]] double avg_chars_per_file() const noexcept;
};

/// Metrics of a delta model. `files` are all its sources (core, interfaces,
/// deltas, configurations); variability characters are those of the delta
/// and configuration files. Ports and connections are counted over the
/// written declarations: core, interfaces of used types, added ports and
/// explicit connects. Autoconnect links are not counted.
[[nodiscard]] ScenarioMetrics measure_delta_model(const std::vector<SourceFile>& files, const DeltaModel& model);

/// Metrics of an annotated model. `files` are the annotated model and the
/// interface files; variability characters are those of its annotations.
/// `core_variant` names a supported variant made of the unannotated elements
/// only; it counts as a variant when no annotation lists it.
[[nodiscard]] ScenarioMetrics measure_annotative_model(const std::vector<SourceFile>& files,
                                                       const AnnotatedComponentType& model, const Environment& env,
                                                       std::string_view core_variant = {});

struct ScenarioComparison {
    std::string label;
    std::optional<ScenarioMetrics> delta;
    std::optional<ScenarioMetrics> annotative;
};

enum class ReportFormat { csv, markdown, json };

/// One row per metric, one column per scenario and approach.
[[nodiscard]] std::string render_report(const std::vector<ScenarioComparison>& scenarios, ReportFormat format);

} // namespace deltarc
