#pragma once

// Domain types for delta-oriented architecture product lines.
//
// All types are plain values: copying a ComponentType or a DeltaModel copies
// the whole structure, and equality is member-wise. AocExpr shares immutable
// nodes, so copies are cheap.

#include "deltarc/errors.hpp"

#include <compare>
#include <map>
#include <memory>
#include <optional>
#include <set>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

namespace deltarc {

enum class Direction { in, out };

[[nodiscard]] std::string_view to_string(Direction d) noexcept;

/// True iff `s` matches [A-Za-z][A-Za-z0-9_]*.
[[nodiscard]] bool is_identifier(std::string_view s) noexcept;

struct PortDecl {
    Direction direction = Direction::in;
    std::string type_name;
    std::string name;

    friend auto operator<=>(const PortDecl&, const PortDecl&) = default;
};

struct SubcomponentDecl {
    std::string type_name;
    std::string instance_name;

    friend auto operator<=>(const SubcomponentDecl&, const SubcomponentDecl&) = default;
};

/// One side of a connector. An absent subcomponent denotes the enclosing
/// component's own interface.
struct ConnectorEnd {
    std::optional<std::string> subcomponent;
    std::string port;

    [[nodiscard]] bool is_outer() const noexcept { return !subcomponent.has_value(); }
    [[nodiscard]] std::string str() const;

    friend auto operator<=>(const ConnectorEnd&, const ConnectorEnd&) = default;
};

enum class ConnectorOrigin { declared, autoconnect };

struct Connector {
    ConnectorEnd source;
    ConnectorEnd target;
    ConnectorOrigin origin = ConnectorOrigin::declared;

    /// Connector identity is the (source, target) pair; origin is bookkeeping.
    [[nodiscard]] bool same_link(const Connector& other) const noexcept {
        return source == other.source && target == other.target;
    }
    [[nodiscard]] std::string str() const;

    friend auto operator<=>(const Connector&, const Connector&) = default;
};

struct ComponentType {
    std::string name;
    bool autoconnect_port = false;
    std::vector<PortDecl> ports;
    std::vector<SubcomponentDecl> subcomponents;
    std::vector<Connector> connectors;

    friend bool operator==(const ComponentType&, const ComponentType&) = default;
};

[[nodiscard]] const PortDecl* find_port(const ComponentType& component, std::string_view name);
[[nodiscard]] const SubcomponentDecl* find_subcomponent(const ComponentType& component,
                                                        std::string_view instance_name);

struct InvariantViolation {
    enum class Rule {
        invalid_identifier,
        duplicate_port_name,
        duplicate_subcomponent_name,
        port_subcomponent_clash,
        self_loop_connector,
    };

    Rule rule;
    std::string element;
    std::string message;

    friend bool operator==(const InvariantViolation&, const InvariantViolation&) = default;
};

[[nodiscard]] std::string_view to_string(InvariantViolation::Rule rule) noexcept;

/// Checks the local well-formedness rules of a single component type: valid
/// identifiers, unique port and instance names, no port/instance clash and no
/// connector from an end to itself.
[[nodiscard]] std::vector<InvariantViolation> check_local_invariants(const ComponentType& component);

class InvariantError : public Error {
public:
    InvariantError(std::string what, std::vector<InvariantViolation> violations)
        : Error(std::move(what)), violations_(std::move(violations)) {}

    [[nodiscard]] const std::vector<InvariantViolation>& violations() const noexcept {
        return violations_;
    }

private:
    std::vector<InvariantViolation> violations_;
};

// ---------------------------------------------------------------------------
// Delta operations

struct AddPort {
    PortDecl port;
    friend bool operator==(const AddPort&, const AddPort&) = default;
};
struct RemovePort {
    std::string name;
    friend bool operator==(const RemovePort&, const RemovePort&) = default;
};
struct AddComponent {
    SubcomponentDecl component;
    friend bool operator==(const AddComponent&, const AddComponent&) = default;
};
struct RemoveComponent {
    std::string instance_name;
    friend bool operator==(const RemoveComponent&, const RemoveComponent&) = default;
};
struct ReplaceComponent {
    std::string old_instance;
    SubcomponentDecl replacement;
    friend bool operator==(const ReplaceComponent&, const ReplaceComponent&) = default;
};
struct Connect {
    Connector connector;
    friend bool operator==(const Connect&, const Connect&) = default;
};
struct Disconnect {
    ConnectorEnd source;
    ConnectorEnd target;
    friend bool operator==(const Disconnect&, const Disconnect&) = default;
};

using DeltaOp =
    std::variant<AddPort, RemovePort, AddComponent, RemoveComponent, ReplaceComponent, Connect, Disconnect>;

/// Short human readable form, e.g. "add port in T p".
[[nodiscard]] std::string describe(const DeltaOp& op);

struct ModifyBlock {
    std::string target_component;
    std::vector<DeltaOp> ops;

    friend bool operator==(const ModifyBlock&, const ModifyBlock&) = default;
};

// ---------------------------------------------------------------------------
// Application order constraints

/// Boolean expression over delta names. Nodes are immutable and shared.
class AocExpr {
public:
    enum class Kind { truth, name, negation, conjunction, disjunction };

    /// The constant `true`; the constraint of a delta without an after-clause.
    AocExpr();

    [[nodiscard]] static AocExpr always() { return {}; }
    [[nodiscard]] static AocExpr name(std::string identifier);
    [[nodiscard]] static AocExpr negation(AocExpr operand);
    [[nodiscard]] static AocExpr conjunction(AocExpr lhs, AocExpr rhs);
    [[nodiscard]] static AocExpr disjunction(AocExpr lhs, AocExpr rhs);

    [[nodiscard]] Kind kind() const noexcept;
    [[nodiscard]] bool is_true() const noexcept { return kind() == Kind::truth; }

    /// Valid for Kind::name only.
    [[nodiscard]] const std::string& identifier() const;
    /// Valid for Kind::negation only.
    [[nodiscard]] const AocExpr& operand() const;
    /// Valid for conjunction and disjunction.
    [[nodiscard]] const AocExpr& lhs() const;
    [[nodiscard]] const AocExpr& rhs() const;

    /// All delta names occurring in the expression.
    [[nodiscard]] std::set<std::string> names() const;

    friend bool operator==(const AocExpr& a, const AocExpr& b);

private:
    struct Node;
    explicit AocExpr(std::shared_ptr<const Node> node) : node_(std::move(node)) {}

    // null for the constant `true`
    std::shared_ptr<const Node> node_;
};

/// Conjunction of all `terms`, folded left; `true` for an empty list.
[[nodiscard]] AocExpr conjunction_of(const std::vector<AocExpr>& terms);

// ---------------------------------------------------------------------------
// Deltas, configurations and the delta model

struct Delta {
    std::string name;
    AocExpr aoc;
    std::vector<ModifyBlock> blocks;

    [[nodiscard]] std::size_t op_count() const noexcept;

    friend bool operator==(const Delta&, const Delta&) = default;
};

struct DeltaConfig {
    std::string name;
    std::vector<std::string> deltas;

    [[nodiscard]] bool contains(std::string_view delta) const;

    friend bool operator==(const DeltaConfig&, const DeltaConfig&) = default;
};

/// Name-indexed interface declarations of subcomponent types.
using Environment = std::map<std::string, ComponentType, std::less<>>;

struct DeltaModel {
    ComponentType core;
    std::map<std::string, Delta, std::less<>> deltas;
    std::map<std::string, DeltaConfig, std::less<>> configs;
    Environment interfaces;

    [[nodiscard]] const Delta& delta(std::string_view name) const;
    [[nodiscard]] const DeltaConfig& config(std::string_view name) const;

    friend bool operator==(const DeltaModel&, const DeltaModel&) = default;
};

/// A config or AOC refers to a delta that is not part of the model.
class DanglingReferenceError : public Error {
public:
    DanglingReferenceError(std::string owner, std::string missing)
        : Error("'" + owner + "' refers to unknown delta '" + missing + "'"),
          owner_(std::move(owner)), missing_(std::move(missing)) {}

    [[nodiscard]] const std::string& owner() const noexcept { return owner_; }
    [[nodiscard]] const std::string& missing() const noexcept { return missing_; }

private:
    std::string owner_;
    std::string missing_;
};

/// Throws DanglingReferenceError for the first config entry or AOC literal
/// that names a delta absent from the model.
void check_references(const DeltaModel& model);

} // namespace deltarc
