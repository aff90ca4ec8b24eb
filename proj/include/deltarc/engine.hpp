#pragma once

// Delta application semantics and variant generation.

#include "deltarc/model.hpp"

#include <cstddef>
#include <limits>
#include <optional>
#include <set>
#include <string>
#include <string_view>
#include <vector>

namespace deltarc {

using DeltaSet = std::set<std::string, std::less<>>;

/// Evaluates an application order constraint against the deltas applied so
/// far: a name holds iff that delta has already been applied.
[[nodiscard]] bool eval_aoc(const AocExpr& expr, const DeltaSet& applied);

// ---------------------------------------------------------------------------
// Application orders

using ApplicationOrder = std::vector<std::string>;

inline constexpr std::size_t unlimited = std::numeric_limits<std::size_t>::max();

class NoValidOrderError : public Error {
public:
    NoValidOrderError(std::string config, ApplicationOrder longest_prefix);

    [[nodiscard]] const std::string& config() const noexcept { return config_; }
    /// Longest sequence of deltas that could be applied before every
    /// remaining delta's constraint failed.
    [[nodiscard]] const ApplicationOrder& longest_prefix() const noexcept { return prefix_; }

private:
    std::string config_;
    ApplicationOrder prefix_;
};

/// Enumerates up to `limit` permutations of the configuration's deltas in
/// which every delta's constraint holds over its predecessors. Candidates are
/// tried in lexicographic name order, so the result is deterministic and the
/// first order is stable. Throws NoValidOrderError if none exists and
/// UnknownDeltaError for names the model lacks.
[[nodiscard]] std::vector<ApplicationOrder> compute_orders(const DeltaModel& model, const DeltaConfig& config,
                                                           std::size_t limit = unlimited);

// ---------------------------------------------------------------------------
// Applying deltas

class ApplicationError : public Error {
public:
    enum class Kind { target_not_found, element_exists, element_missing, connector_exists, connector_missing };

    ApplicationError(Kind kind, std::string element, std::string detail);

    [[nodiscard]] Kind kind() const noexcept { return kind_; }
    [[nodiscard]] const std::string& element() const noexcept { return element_; }
    /// Name of the failing delta; empty for a bare apply_op.
    [[nodiscard]] const std::string& delta() const noexcept { return delta_; }
    /// Zero-based position of the failing op across all blocks of the delta.
    [[nodiscard]] std::size_t op_index() const noexcept { return op_index_; }
    /// The architecture the delta was applied to, unchanged.
    [[nodiscard]] const std::optional<ComponentType>& input() const noexcept { return input_; }

    /// Copy of this error annotated with its delta position.
    [[nodiscard]] ApplicationError in_delta(std::string delta, std::size_t op_index, ComponentType input) const;

private:
    void refresh_message();

    Kind kind_;
    std::string element_;
    std::string detail_;
    std::string delta_;
    std::size_t op_index_ = 0;
    std::optional<ComponentType> input_;
    std::string message_;
};

[[nodiscard]] std::string_view to_string(ApplicationError::Kind kind) noexcept;

/// Applies one operation to the top-level component named `target`.
/// Removing a port or subcomponent leaves connectors that mention it in place.
[[nodiscard]] ComponentType apply_op(ComponentType arch, std::string_view target, const DeltaOp& op);

/// Applies every block of `delta` in order. On failure the ApplicationError
/// carries the delta name, the op position and the untouched input.
[[nodiscard]] ComponentType apply_delta(const ComponentType& arch, const Delta& delta);

// ---------------------------------------------------------------------------
// Autoconnect and well-formedness

class AmbiguousAutoconnectError : public Error {
public:
    AmbiguousAutoconnectError(std::string target, std::vector<std::string> sources);

    [[nodiscard]] const std::string& target() const noexcept { return target_; }
    [[nodiscard]] const std::vector<std::string>& sources() const noexcept { return sources_; }

private:
    std::string target_;
    std::vector<std::string> sources_;
};

/// Adds autoconnect connectors when the component requests `autoconnect port`.
///
/// A target (outer out-port or inner in-port) without incoming connector is
/// wired to the unique source (outer in-port or inner out-port) with the same
/// name and type that has no declared outgoing connector. Legal flows are
/// outer-in to inner-in, inner-out to outer-out and inner-out to the in-port
/// of another subcomponent. Subcomponent ports come from `env`; instances of
/// unknown types contribute none.
[[nodiscard]] ComponentType resolve_autoconnect(const ComponentType& arch, const Environment& env);

struct WellFormednessViolation {
    enum class Rule {
        unique_names,
        endpoint_exists,
        direction_ok,
        type_compatible,
        no_duplicate_connector,
        unknown_type, // informational
    };

    Rule rule;
    std::string element;
    std::string message;

    [[nodiscard]] bool informational() const noexcept { return rule == Rule::unknown_type; }
};

[[nodiscard]] std::string_view to_string(WellFormednessViolation::Rule rule) noexcept;

struct WellFormednessReport {
    std::vector<WellFormednessViolation> entries;

    [[nodiscard]] std::vector<WellFormednessViolation> violations() const;
    [[nodiscard]] bool ok() const;
};

[[nodiscard]] WellFormednessReport check_wellformed(const ComponentType& arch, const Environment& env);

class WellFormednessError : public Error {
public:
    WellFormednessError(std::string config, WellFormednessReport report, ComponentType variant);

    [[nodiscard]] const std::string& config() const noexcept { return config_; }
    [[nodiscard]] const WellFormednessReport& report() const noexcept { return report_; }
    [[nodiscard]] const ComponentType& variant() const noexcept { return variant_; }

private:
    std::string config_;
    WellFormednessReport report_;
    ComponentType variant_;
};

// ---------------------------------------------------------------------------
// Equality

/// Order-insensitive comparison of name, autoconnect flag, ports,
/// subcomponents and connectors; connector origin is ignored.
[[nodiscard]] bool structural_equal(const ComponentType& a, const ComponentType& b);

/// Lines of the form "- port in T p" / "+ connector a -> b" describing what
/// `b` lacks or adds relative to `a`. Empty iff structural_equal.
[[nodiscard]] std::vector<std::string> structural_diff(const ComponentType& a, const ComponentType& b);

// ---------------------------------------------------------------------------
// Variant generation

struct GenerateOptions {
    bool normalize = true;
    bool check = true;
};

/// Applies the deltas of `order` to the core in sequence. With `normalize`
/// the result has autoconnect resolved; with `check` a well-formedness
/// failure of the normalized result throws WellFormednessError.
[[nodiscard]] ComponentType generate_in_order(const DeltaModel& model, const ApplicationOrder& order,
                                              const GenerateOptions& options = {}, std::string_view config = {});

/// Generates the variant of `config` using the first computed order.
[[nodiscard]] ComponentType generate_variant(const DeltaModel& model, const DeltaConfig& config,
                                             const GenerateOptions& options = {});

struct ConfluenceWitness {
    ApplicationOrder first;
    ApplicationOrder second;
    std::vector<std::string> diff;
};

struct InapplicableOrder {
    ApplicationOrder order;
    std::string reason;
};

struct ConfluenceResult {
    bool confluent = true;
    std::vector<ApplicationOrder> orders;         // every order the constraints admit, up to the limit
    std::vector<InapplicableOrder> inapplicable;  // admitted orders whose application failed
    std::optional<ConfluenceWitness> witness;
};

/// Generates the normalized variant under each admitted order and compares
/// them. Orders whose application fails are pruned and listed; if all fail
/// the first failure is rethrown.
[[nodiscard]] ConfluenceResult check_confluence(const DeltaModel& model, const DeltaConfig& config,
                                                std::size_t limit = unlimited);

// ---------------------------------------------------------------------------
// Whole-family analysis

struct ConfigSummary {
    std::string name;
    std::size_t order_count = 0;
    bool orders_capped = false;
    bool generated = false;
    std::string error;
    WellFormednessReport wellformedness;
    std::optional<bool> confluent;
    /// Strict mode only: pairs "D excludes E" where both are in the config.
    std::vector<std::string> conflicts;

    [[nodiscard]] bool ok() const;
};

struct OrphanLiteral {
    std::string delta;
    std::string literal;
};

struct FamilyReport {
    std::vector<ConfigSummary> configs;          // sorted by name
    std::vector<std::string> redundant_deltas;   // used by no config
    std::vector<OrphanLiteral> orphan_literals;  // AOC names absent from every config

    [[nodiscard]] std::size_t error_count() const;
    [[nodiscard]] std::size_t warning_count() const;
    /// Errors always fail; in strict mode warnings and conflicts fail too.
    [[nodiscard]] bool passes(bool strict) const;
};

struct FamilyOptions {
    std::size_t order_limit = 64;
    bool strict = false;
};

[[nodiscard]] FamilyReport check_family(const DeltaModel& model, const FamilyOptions& options = {});

} // namespace deltarc
