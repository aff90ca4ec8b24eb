#include "deltarc/model.hpp"

#include <algorithm>
#include <cassert>
#include <sstream>

namespace deltarc {

std::string_view to_string(Direction d) noexcept { return d == Direction::in ? "in" : "out"; }

bool is_identifier(std::string_view s) noexcept {
    if (s.empty()) {
        return false;
    }
    auto alpha = [](char c) { return (c >= 'a' && c <= 'z') || (c >= 'A' && c <= 'Z'); };
    auto digit = [](char c) { return c >= '0' && c <= '9'; };
    if (!alpha(s.front())) {
        return false;
    }
    return std::all_of(s.begin() + 1, s.end(), [&](char c) { return alpha(c) || digit(c) || c == '_'; });
}

std::string ConnectorEnd::str() const { return subcomponent ? *subcomponent + "." + port : port; }

std::string Connector::str() const { return source.str() + " -> " + target.str(); }

const PortDecl* find_port(const ComponentType& component, std::string_view name) {
    auto it = std::find_if(component.ports.begin(), component.ports.end(),
                           [&](const PortDecl& p) { return p.name == name; });
    return it == component.ports.end() ? nullptr : &*it;
}

const SubcomponentDecl* find_subcomponent(const ComponentType& component, std::string_view instance_name) {
    auto it = std::find_if(component.subcomponents.begin(), component.subcomponents.end(),
                           [&](const SubcomponentDecl& s) { return s.instance_name == instance_name; });
    return it == component.subcomponents.end() ? nullptr : &*it;
}

std::string_view to_string(InvariantViolation::Rule rule) noexcept {
    switch (rule) {
    case InvariantViolation::Rule::invalid_identifier: return "InvalidIdentifier";
    case InvariantViolation::Rule::duplicate_port_name: return "DuplicatePortName";
    case InvariantViolation::Rule::duplicate_subcomponent_name: return "DuplicateSubcomponentName";
    case InvariantViolation::Rule::port_subcomponent_clash: return "PortSubcomponentClash";
    case InvariantViolation::Rule::self_loop_connector: return "SelfLoopConnector";
    }
    return "?";
}

std::vector<InvariantViolation> check_local_invariants(const ComponentType& component) {
    using Rule = InvariantViolation::Rule;
    std::vector<InvariantViolation> out;
    auto ident = [&](const std::string& s, const std::string& what) {
        if (!is_identifier(s)) {
            out.push_back({Rule::invalid_identifier, s, what + " '" + s + "' is not a valid identifier"});
        }
    };

    ident(component.name, "component name");
    std::set<std::string> ports;
    for (const auto& p : component.ports) {
        ident(p.name, "port name");
        ident(p.type_name, "port type");
        if (!ports.insert(p.name).second) {
            out.push_back({Rule::duplicate_port_name, p.name, "port '" + p.name + "' declared twice"});
        }
    }
    std::set<std::string> instances;
    for (const auto& s : component.subcomponents) {
        ident(s.instance_name, "subcomponent name");
        ident(s.type_name, "subcomponent type");
        if (!instances.insert(s.instance_name).second) {
            out.push_back({Rule::duplicate_subcomponent_name, s.instance_name,
                           "subcomponent '" + s.instance_name + "' declared twice"});
        } else if (ports.contains(s.instance_name)) {
            out.push_back({Rule::port_subcomponent_clash, s.instance_name,
                           "'" + s.instance_name + "' names both a port and a subcomponent"});
        }
    }
    for (const auto& c : component.connectors) {
        if (c.source == c.target) {
            out.push_back({Rule::self_loop_connector, c.str(), "connector '" + c.str() + "' connects an end to itself"});
        }
    }
    return out;
}

std::string describe(const DeltaOp& op) {
    struct Visitor {
        std::string operator()(const AddPort& o) const {
            return "add port " + std::string(to_string(o.port.direction)) + " " + o.port.type_name + " " + o.port.name;
        }
        std::string operator()(const RemovePort& o) const { return "remove port " + o.name; }
        std::string operator()(const AddComponent& o) const {
            return "add component " + o.component.type_name + " " + o.component.instance_name;
        }
        std::string operator()(const RemoveComponent& o) const { return "remove component " + o.instance_name; }
        std::string operator()(const ReplaceComponent& o) const {
            return "replace component " + o.old_instance + " with component " + o.replacement.type_name + " " +
                   o.replacement.instance_name;
        }
        std::string operator()(const Connect& o) const { return "connect " + o.connector.str(); }
        std::string operator()(const Disconnect& o) const {
            return "disconnect " + o.source.str() + " -> " + o.target.str();
        }
    };
    return std::visit(Visitor{}, op);
}

// ---------------------------------------------------------------------------

struct AocExpr::Node {
    Kind kind = Kind::truth;
    std::string identifier;
    AocExpr lhs;
    AocExpr rhs;
};

AocExpr::AocExpr() = default;

AocExpr AocExpr::name(std::string identifier) {
    auto n = std::make_shared<Node>();
    n->kind = Kind::name;
    n->identifier = std::move(identifier);
    return AocExpr(std::move(n));
}

AocExpr AocExpr::negation(AocExpr operand) {
    auto n = std::make_shared<Node>();
    n->kind = Kind::negation;
    n->lhs = std::move(operand);
    return AocExpr(std::move(n));
}

AocExpr AocExpr::conjunction(AocExpr lhs, AocExpr rhs) {
    auto n = std::make_shared<Node>();
    n->kind = Kind::conjunction;
    n->lhs = std::move(lhs);
    n->rhs = std::move(rhs);
    return AocExpr(std::move(n));
}

AocExpr AocExpr::disjunction(AocExpr lhs, AocExpr rhs) {
    auto n = std::make_shared<Node>();
    n->kind = Kind::disjunction;
    n->lhs = std::move(lhs);
    n->rhs = std::move(rhs);
    return AocExpr(std::move(n));
}

AocExpr::Kind AocExpr::kind() const noexcept { return node_ ? node_->kind : Kind::truth; }

const std::string& AocExpr::identifier() const {
    assert(kind() == Kind::name);
    return node_->identifier;
}

const AocExpr& AocExpr::operand() const {
    assert(kind() == Kind::negation);
    return node_->lhs;
}

const AocExpr& AocExpr::lhs() const {
    assert(kind() == Kind::conjunction || kind() == Kind::disjunction);
    return node_->lhs;
}

const AocExpr& AocExpr::rhs() const {
    assert(kind() == Kind::conjunction || kind() == Kind::disjunction);
    return node_->rhs;
}

namespace {

void collect_names(const AocExpr& e, std::set<std::string>& out) {
    switch (e.kind()) {
    case AocExpr::Kind::truth: break;
    case AocExpr::Kind::name: out.insert(e.identifier()); break;
    case AocExpr::Kind::negation: collect_names(e.operand(), out); break;
    case AocExpr::Kind::conjunction:
    case AocExpr::Kind::disjunction:
        collect_names(e.lhs(), out);
        collect_names(e.rhs(), out);
        break;
    }
}

} // namespace

std::set<std::string> AocExpr::names() const {
    std::set<std::string> out;
    collect_names(*this, out);
    return out;
}

bool operator==(const AocExpr& a, const AocExpr& b) {
    if (a.node_ == b.node_) {
        return true;
    }
    if (a.kind() != b.kind()) {
        return false;
    }
    switch (a.kind()) {
    case AocExpr::Kind::truth: return true;
    case AocExpr::Kind::name: return a.identifier() == b.identifier();
    case AocExpr::Kind::negation: return a.operand() == b.operand();
    case AocExpr::Kind::conjunction:
    case AocExpr::Kind::disjunction: return a.lhs() == b.lhs() && a.rhs() == b.rhs();
    }
    return false;
}

AocExpr conjunction_of(const std::vector<AocExpr>& terms) {
    if (terms.empty()) {
        return AocExpr::always();
    }
    AocExpr acc = terms.front();
    for (std::size_t i = 1; i < terms.size(); ++i) {
        acc = AocExpr::conjunction(acc, terms[i]);
    }
    return acc;
}

// ---------------------------------------------------------------------------

std::size_t Delta::op_count() const noexcept {
    std::size_t n = 0;
    for (const auto& b : blocks) {
        n += b.ops.size();
    }
    return n;
}

bool DeltaConfig::contains(std::string_view delta) const {
    return std::find(deltas.begin(), deltas.end(), delta) != deltas.end();
}

const Delta& DeltaModel::delta(std::string_view name) const {
    auto it = deltas.find(name);
    if (it == deltas.end()) {
        throw UnknownDeltaError(std::string(name));
    }
    return it->second;
}

const DeltaConfig& DeltaModel::config(std::string_view name) const {
    auto it = configs.find(name);
    if (it == configs.end()) {
        throw UnknownConfigError(std::string(name));
    }
    return it->second;
}

void check_references(const DeltaModel& model) {
    for (const auto& [name, delta] : model.deltas) {
        for (const auto& ref : delta.aoc.names()) {
            if (!model.deltas.contains(ref)) {
                throw DanglingReferenceError("delta " + name, ref);
            }
        }
    }
    for (const auto& [name, config] : model.configs) {
        for (const auto& ref : config.deltas) {
            if (!model.deltas.contains(ref)) {
                throw DanglingReferenceError("deltaconfig " + name, ref);
            }
        }
    }
}

} // namespace deltarc
