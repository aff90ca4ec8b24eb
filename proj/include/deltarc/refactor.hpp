#pragma once

// Variant-preserving transformations of delta models.

#include "deltarc/engine.hpp"
#include "deltarc/model.hpp"

#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace deltarc {

// ---------------------------------------------------------------------------
// Constraint rewriting

/// Drops `true` operands: true && x -> x, true || x -> true.
[[nodiscard]] AocExpr simplify(const AocExpr& expr);

/// Replaces every literal of `name` (positive or negated) by `true` and
/// simplifies. The result does not mention `name`.
[[nodiscard]] AocExpr remove_aoc_literal(const AocExpr& expr, std::string_view name);

/// Renames every occurrence of `from` to `to`.
[[nodiscard]] AocExpr rename_aoc_literal(const AocExpr& expr, std::string_view from, std::string_view to);

// ---------------------------------------------------------------------------
// Composition

/// Rewrites an op sequence to a fixed point, merging consecutive operations
/// on the same element:
///   add X; remove X            -> (nothing)
///   add X; replace X with Y    -> add Y
///   replace X with Y; replace Y with Z -> replace X with Z
///   remove X; add X'           -> replace X with X'
///   connect c; disconnect c    -> (nothing)
///   disconnect c; connect c    -> (nothing)
/// Operations on other elements keep their relative order.
[[nodiscard]] std::vector<DeltaOp> simplify_ops(std::vector<DeltaOp> ops);

/// Concatenates the ops of `deltas` per target component (in first-seen
/// target order) and simplifies them. Blocks that cancel out are dropped.
[[nodiscard]] std::vector<ModifyBlock> compose_blocks(const std::vector<const Delta*>& deltas);

struct Composition {
    /// Absent when every operation cancelled out.
    std::optional<Delta> delta;
    /// Advisory precondition findings; never fatal.
    std::vector<std::string> warnings;

    [[nodiscard]] bool cancelled() const noexcept { return !delta.has_value(); }
};

/// Composes a sequence of at least two deltas into one delta named
/// `new_name`. Its constraint is the conjunction of the members' constraints
/// with every member literal removed.
[[nodiscard]] Composition compose_deltas(const DeltaModel& model, const std::vector<std::string>& sequence,
                                         std::string new_name);

// ---------------------------------------------------------------------------
// Refactorings

struct PreservationEntry {
    std::string config;
    bool preserved = false;
    std::vector<std::string> diff;
    std::string error;
};

struct RefactoringOutcome {
    DeltaModel new_model;
    std::vector<std::string> removed_deltas;
    std::vector<std::string> added_deltas;
    std::vector<std::string> changed_configs;
    std::vector<PreservationEntry> preservation_report;
    std::vector<std::string> warnings;

    [[nodiscard]] bool preserved() const;
};

/// A refactoring changed a generated variant; the new model is discarded.
class PreservationViolation : public Error {
public:
    explicit PreservationViolation(std::vector<PreservationEntry> report);

    [[nodiscard]] const std::vector<PreservationEntry>& report() const noexcept { return report_; }

private:
    std::vector<PreservationEntry> report_;
};

/// The composed operations cancel out completely.
class EmptyCompositionError : public Error {
public:
    using Error::Error;
};

/// Replaces the sequence by its composition in every config that contains
/// it, drops members no config uses anymore and redirects other deltas'
/// constraints on dropped members to `new_name`. `new_name` may reuse a
/// member's name. Throws PreservationViolation if any variant changes.
[[nodiscard]] RefactoringOutcome apply_compose_refactoring(const DeltaModel& model,
                                                           const std::vector<std::string>& sequence,
                                                           std::string new_name);

class InapplicableDeltaError : public Error {
public:
    using Error::Error;
};

/// "DInverse" + the name without its leading "D" (DFoo -> DInverseFoo).
[[nodiscard]] std::string default_inverse_name(std::string_view delta_name);

/// Builds the delta undoing `delta` when applied to apply_delta(context, delta).
/// Removed declarations are recovered from `context`. The constraint is left
/// `true`. Throws InapplicableDeltaError if `delta` does not apply to `context`.
[[nodiscard]] Delta invert_delta(const Delta& delta, const ComponentType& context,
                                 std::optional<std::string> name = std::nullopt);

struct MergeOptions {
    bool with_inverse = false;
    std::string inverse_name = "DInverse";
    /// Name of the config added for the old core when no existing config
    /// reduces to the inverse delta alone.
    std::string old_core_config = "OldCore";
};

/// Applies `sequence` to the core, removes it from configs and the delta set
/// and drops its literals from remaining constraints. With an inverse, the
/// composed sequence is inverted against the old core, constrained to run
/// before every other delta, and added to each config that used none of the
/// sequence. Throws PreservationViolation if any variant changes.
[[nodiscard]] RefactoringOutcome apply_merge_with_core(const DeltaModel& model,
                                                       const std::vector<std::string>& sequence,
                                                       const MergeOptions& options = {});

// ---------------------------------------------------------------------------
// Evolution edits

/// Removes a configuration. With `prune_redundant`, deltas no remaining
/// config uses are removed too, and their literals dropped from the
/// constraints of the remaining deltas.
[[nodiscard]] DeltaModel remove_config(const DeltaModel& model, std::string_view name, bool prune_redundant = true);

/// Replaces the delta with the same name by a new version.
[[nodiscard]] DeltaModel replace_delta(const DeltaModel& model, Delta delta);

[[nodiscard]] DeltaModel add_delta(const DeltaModel& model, Delta delta);
[[nodiscard]] DeltaModel add_config(const DeltaModel& model, DeltaConfig config);

} // namespace deltarc
