#include "deltarc/engine.hpp"

#include <algorithm>
#include <functional>
#include <map>
#include <sstream>
#include <tuple>

namespace deltarc {

bool eval_aoc(const AocExpr& expr, const DeltaSet& applied) {
    switch (expr.kind()) {
    case AocExpr::Kind::truth: return true;
    case AocExpr::Kind::name: return applied.contains(expr.identifier());
    case AocExpr::Kind::negation: return !eval_aoc(expr.operand(), applied);
    case AocExpr::Kind::conjunction: return eval_aoc(expr.lhs(), applied) && eval_aoc(expr.rhs(), applied);
    case AocExpr::Kind::disjunction: return eval_aoc(expr.lhs(), applied) || eval_aoc(expr.rhs(), applied);
    }
    return false;
}

// ---------------------------------------------------------------------------

namespace {

std::string join(const std::vector<std::string>& items, std::string_view sep) {
    std::string out;
    for (std::size_t i = 0; i < items.size(); ++i) {
        if (i) {
            out += sep;
        }
        out += items[i];
    }
    return out;
}

} // namespace

NoValidOrderError::NoValidOrderError(std::string config, ApplicationOrder longest_prefix)
    : Error("configuration '" + config + "' has no valid application order (longest admissible prefix: [" +
            join(longest_prefix, ", ") + "])"),
      config_(std::move(config)), prefix_(std::move(longest_prefix)) {}

std::vector<ApplicationOrder> compute_orders(const DeltaModel& model, const DeltaConfig& config, std::size_t limit) {
    std::vector<std::string> names = config.deltas;
    std::sort(names.begin(), names.end());
    std::vector<const AocExpr*> aocs;
    for (const auto& n : names) {
        aocs.push_back(&model.delta(n).aoc);
    }

    std::vector<ApplicationOrder> out;
    if (limit == 0) {
        return out;
    }
    const std::size_t n = names.size();
    std::vector<bool> used(n, false);
    // completion from a given applied set depends on the set only
    std::set<std::vector<bool>> dead;
    DeltaSet applied;
    ApplicationOrder current;
    ApplicationOrder longest;

    std::function<bool()> search = [&]() -> bool {
        if (current.size() == n) {
            out.push_back(current);
            return true;
        }
        if (dead.contains(used)) {
            return false;
        }
        bool any = false;
        for (std::size_t i = 0; i < n && out.size() < limit; ++i) {
            if (used[i] || !eval_aoc(*aocs[i], applied)) {
                continue;
            }
            used[i] = true;
            applied.insert(names[i]);
            current.push_back(names[i]);
            if (current.size() > longest.size()) {
                longest = current;
            }
            any = search() || any;
            current.pop_back();
            applied.erase(names[i]);
            used[i] = false;
        }
        if (!any) {
            dead.insert(used);
        }
        return any;
    };
    search();
    if (out.empty()) {
        throw NoValidOrderError(config.name, longest);
    }
    return out;
}

// ---------------------------------------------------------------------------

std::string_view to_string(ApplicationError::Kind kind) noexcept {
    switch (kind) {
    case ApplicationError::Kind::target_not_found: return "TargetNotFound";
    case ApplicationError::Kind::element_exists: return "ElementExists";
    case ApplicationError::Kind::element_missing: return "ElementMissing";
    case ApplicationError::Kind::connector_exists: return "ConnectorExists";
    case ApplicationError::Kind::connector_missing: return "ConnectorMissing";
    }
    return "?";
}

ApplicationError::ApplicationError(Kind kind, std::string element, std::string detail)
    : Error(detail), kind_(kind), element_(std::move(element)), detail_(std::move(detail)) {
    refresh_message();
}

void ApplicationError::refresh_message() {
    std::ostringstream os;
    os << to_string(kind_) << ": " << detail_;
    if (!delta_.empty()) {
        os << " (delta " << delta_ << ", op #" << op_index_ + 1 << ")";
    }
    message_ = os.str();
    static_cast<std::runtime_error&>(*this) = std::runtime_error(message_);
}

ApplicationError ApplicationError::in_delta(std::string delta, std::size_t op_index, ComponentType input) const {
    ApplicationError copy = *this;
    copy.delta_ = std::move(delta);
    copy.op_index_ = op_index;
    copy.input_ = std::move(input);
    copy.refresh_message();
    return copy;
}

namespace {

using Kind = ApplicationError::Kind;

bool name_taken(const ComponentType& arch, std::string_view name) {
    return find_port(arch, name) != nullptr || find_subcomponent(arch, name) != nullptr;
}

struct OpApplier {
    ComponentType& arch;

    void operator()(const AddPort& op) const {
        if (name_taken(arch, op.port.name)) {
            throw ApplicationError(Kind::element_exists, op.port.name, "'" + op.port.name + "' already exists");
        }
        arch.ports.push_back(op.port);
    }

    void operator()(const RemovePort& op) const {
        auto it = std::find_if(arch.ports.begin(), arch.ports.end(), [&](const auto& p) { return p.name == op.name; });
        if (it == arch.ports.end()) {
            throw ApplicationError(Kind::element_missing, op.name, "no port '" + op.name + "'");
        }
        arch.ports.erase(it);
    }

    void operator()(const AddComponent& op) const {
        const auto& name = op.component.instance_name;
        if (name_taken(arch, name)) {
            throw ApplicationError(Kind::element_exists, name, "'" + name + "' already exists");
        }
        arch.subcomponents.push_back(op.component);
    }

    void operator()(const RemoveComponent& op) const {
        auto it = std::find_if(arch.subcomponents.begin(), arch.subcomponents.end(),
                               [&](const auto& s) { return s.instance_name == op.instance_name; });
        if (it == arch.subcomponents.end()) {
            throw ApplicationError(Kind::element_missing, op.instance_name,
                                   "no subcomponent '" + op.instance_name + "'");
        }
        arch.subcomponents.erase(it);
    }

    void operator()(const ReplaceComponent& op) const {
        auto it = std::find_if(arch.subcomponents.begin(), arch.subcomponents.end(),
                               [&](const auto& s) { return s.instance_name == op.old_instance; });
        if (it == arch.subcomponents.end()) {
            throw ApplicationError(Kind::element_missing, op.old_instance, "no subcomponent '" + op.old_instance + "'");
        }
        const auto& name = op.replacement.instance_name;
        if (name != op.old_instance && name_taken(arch, name)) {
            throw ApplicationError(Kind::element_exists, name, "'" + name + "' already exists");
        }
        *it = op.replacement;
    }

    void operator()(const Connect& op) const {
        for (const auto& c : arch.connectors) {
            if (c.same_link(op.connector)) {
                throw ApplicationError(Kind::connector_exists, op.connector.str(),
                                       "connector '" + op.connector.str() + "' already exists");
            }
        }
        Connector c = op.connector;
        c.origin = ConnectorOrigin::declared;
        arch.connectors.push_back(std::move(c));
    }

    void operator()(const Disconnect& op) const {
        auto it = std::find_if(arch.connectors.begin(), arch.connectors.end(),
                               [&](const Connector& c) { return c.source == op.source && c.target == op.target; });
        if (it == arch.connectors.end()) {
            const auto text = op.source.str() + " -> " + op.target.str();
            throw ApplicationError(Kind::connector_missing, text, "no connector '" + text + "'");
        }
        arch.connectors.erase(it);
    }
};

} // namespace

ComponentType apply_op(ComponentType arch, std::string_view target, const DeltaOp& op) {
    if (target != arch.name) {
        throw ApplicationError(Kind::target_not_found, std::string(target),
                               "component '" + std::string(target) + "' cannot be modified (top-level is '" +
                                   arch.name + "')");
    }
    std::visit(OpApplier{arch}, op);
    return arch;
}

ComponentType apply_delta(const ComponentType& arch, const Delta& delta) {
    ComponentType result = arch;
    std::size_t index = 0;
    for (const auto& block : delta.blocks) {
        for (const auto& op : block.ops) {
            try {
                result = apply_op(std::move(result), block.target_component, op);
            } catch (const ApplicationError& e) {
                throw e.in_delta(delta.name, index, arch);
            }
            ++index;
        }
    }
    return result;
}

// ---------------------------------------------------------------------------

AmbiguousAutoconnectError::AmbiguousAutoconnectError(std::string target, std::vector<std::string> sources)
    : Error("autoconnect is ambiguous for '" + target + "': candidates " + join(sources, ", ")),
      target_(std::move(target)), sources_(std::move(sources)) {}

namespace {

struct Endpoint {
    ConnectorEnd end;
    const PortDecl* port;

    [[nodiscard]] std::string owner() const { return end.subcomponent.value_or(""); }
};

} // namespace

ComponentType resolve_autoconnect(const ComponentType& arch, const Environment& env) {
    if (!arch.autoconnect_port) {
        return arch;
    }
    std::vector<Endpoint> sources;
    std::vector<Endpoint> targets;
    for (const auto& p : arch.ports) {
        (p.direction == Direction::in ? sources : targets).push_back({ConnectorEnd{std::nullopt, p.name}, &p});
    }
    for (const auto& s : arch.subcomponents) {
        auto it = env.find(s.type_name);
        if (it == env.end()) {
            continue;
        }
        for (const auto& p : it->second.ports) {
            (p.direction == Direction::out ? sources : targets).push_back({ConnectorEnd{s.instance_name, p.name}, &p});
        }
    }
    std::sort(targets.begin(), targets.end(), [](const Endpoint& a, const Endpoint& b) {
        return std::tie(a.end.port, a.end.subcomponent) < std::tie(b.end.port, b.end.subcomponent);
    });

    std::set<ConnectorEnd> connected_targets;
    std::set<ConnectorEnd> declared_sources;
    for (const auto& c : arch.connectors) {
        connected_targets.insert(c.target);
        if (c.origin == ConnectorOrigin::declared) {
            declared_sources.insert(c.source);
        }
    }

    ComponentType out = arch;
    for (const auto& t : targets) {
        if (connected_targets.contains(t.end)) {
            continue;
        }
        std::vector<const Endpoint*> candidates;
        for (const auto& s : sources) {
            if (s.end.port != t.end.port || s.port->type_name != t.port->type_name) {
                continue;
            }
            if (s.end.is_outer() && t.end.is_outer()) {
                continue;
            }
            if (!s.end.is_outer() && !t.end.is_outer() && s.end.subcomponent == t.end.subcomponent) {
                continue;
            }
            if (declared_sources.contains(s.end)) {
                continue;
            }
            candidates.push_back(&s);
        }
        if (candidates.size() > 1) {
            std::vector<std::string> names;
            for (const auto* c : candidates) {
                names.push_back(c->end.str());
            }
            throw AmbiguousAutoconnectError(t.end.str(), std::move(names));
        }
        if (candidates.size() == 1) {
            out.connectors.push_back(Connector{candidates.front()->end, t.end, ConnectorOrigin::autoconnect});
            connected_targets.insert(t.end);
        }
    }
    return out;
}

std::string_view to_string(WellFormednessViolation::Rule rule) noexcept {
    using Rule = WellFormednessViolation::Rule;
    switch (rule) {
    case Rule::unique_names: return "UNIQUE_NAMES";
    case Rule::endpoint_exists: return "ENDPOINT_EXISTS";
    case Rule::direction_ok: return "DIRECTION_OK";
    case Rule::type_compatible: return "TYPE_COMPATIBLE";
    case Rule::no_duplicate_connector: return "NO_DUPLICATE_CONNECTOR";
    case Rule::unknown_type: return "UNKNOWN_TYPE";
    }
    return "?";
}

std::vector<WellFormednessViolation> WellFormednessReport::violations() const {
    std::vector<WellFormednessViolation> out;
    std::copy_if(entries.begin(), entries.end(), std::back_inserter(out),
                 [](const auto& v) { return !v.informational(); });
    return out;
}

bool WellFormednessReport::ok() const {
    return std::all_of(entries.begin(), entries.end(), [](const auto& v) { return v.informational(); });
}

WellFormednessReport check_wellformed(const ComponentType& arch, const Environment& env) {
    using Rule = WellFormednessViolation::Rule;
    WellFormednessReport report;
    auto add = [&](Rule rule, std::string element, std::string message) {
        report.entries.push_back({rule, std::move(element), std::move(message)});
    };

    for (const auto& v : check_local_invariants(arch)) {
        add(Rule::unique_names, v.element, v.message);
    }
    std::set<std::string> unknown_reported;
    for (const auto& s : arch.subcomponents) {
        if (!env.contains(s.type_name) && unknown_reported.insert(s.type_name).second) {
            add(Rule::unknown_type, s.type_name,
                "interface of component type '" + s.type_name + "' is unknown; its ports are not checked");
        }
    }

    // resolves an end; nullopt with `checked` false when the owner's type is unknown
    struct Resolved {
        const PortDecl* port = nullptr;
        bool checked = true;
    };
    auto resolve = [&](const Connector& c, const ConnectorEnd& end) -> Resolved {
        if (end.is_outer()) {
            const auto* p = find_port(arch, end.port);
            if (p == nullptr) {
                add(Rule::endpoint_exists, c.str(), "'" + end.str() + "' is not a port of " + arch.name);
            }
            return {p, true};
        }
        const auto* sub = find_subcomponent(arch, *end.subcomponent);
        if (sub == nullptr) {
            add(Rule::endpoint_exists, c.str(), "no subcomponent '" + *end.subcomponent + "'");
            return {nullptr, true};
        }
        auto it = env.find(sub->type_name);
        if (it == env.end()) {
            return {nullptr, false};
        }
        const auto* p = find_port(it->second, end.port);
        if (p == nullptr) {
            add(Rule::endpoint_exists, c.str(), "'" + end.port + "' is not a port of " + sub->type_name);
        }
        return {p, true};
    };

    std::set<std::pair<ConnectorEnd, ConnectorEnd>> seen;
    for (const auto& c : arch.connectors) {
        if (!seen.insert({c.source, c.target}).second) {
            add(Rule::no_duplicate_connector, c.str(), "connector '" + c.str() + "' appears more than once");
        }
        const Resolved src = resolve(c, c.source);
        const Resolved dst = resolve(c, c.target);
        if (src.port != nullptr) {
            const bool legal = (c.source.is_outer() && src.port->direction == Direction::in) ||
                               (!c.source.is_outer() && src.port->direction == Direction::out);
            if (!legal) {
                add(Rule::direction_ok, c.str(), "'" + c.source.str() + "' cannot emit data");
            }
        }
        if (dst.port != nullptr) {
            const bool legal = (c.target.is_outer() && dst.port->direction == Direction::out) ||
                               (!c.target.is_outer() && dst.port->direction == Direction::in);
            if (!legal) {
                add(Rule::direction_ok, c.str(), "'" + c.target.str() + "' cannot receive data");
            }
        }
        if (src.port != nullptr && dst.port != nullptr && src.port->type_name != dst.port->type_name) {
            add(Rule::type_compatible, c.str(),
                "type " + src.port->type_name + " does not match " + dst.port->type_name);
        }
    }
    return report;
}

WellFormednessError::WellFormednessError(std::string config, WellFormednessReport report, ComponentType variant)
    : Error([&] {
          std::string msg = "variant '" + config + "' is not well-formed:";
          for (const auto& v : report.violations()) {
              msg += " " + std::string(to_string(v.rule)) + "(" + v.element + ")";
          }
          return msg;
      }()),
      config_(std::move(config)), report_(std::move(report)), variant_(std::move(variant)) {}

// ---------------------------------------------------------------------------

namespace {

using Link = std::pair<ConnectorEnd, ConnectorEnd>;

std::vector<Link> links(const ComponentType& c) {
    std::vector<Link> out;
    for (const auto& k : c.connectors) {
        out.emplace_back(k.source, k.target);
    }
    std::sort(out.begin(), out.end());
    return out;
}

template <typename T>
std::vector<T> sorted(std::vector<T> v) {
    std::sort(v.begin(), v.end());
    return v;
}

template <typename T, typename Describe>
void diff_sets(const std::vector<T>& a, const std::vector<T>& b, Describe describe, std::vector<std::string>& out) {
    std::vector<T> only_a;
    std::vector<T> only_b;
    std::set_difference(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(only_a));
    std::set_difference(b.begin(), b.end(), a.begin(), a.end(), std::back_inserter(only_b));
    for (const auto& x : only_a) {
        out.push_back("- " + describe(x));
    }
    for (const auto& x : only_b) {
        out.push_back("+ " + describe(x));
    }
}

} // namespace

bool structural_equal(const ComponentType& a, const ComponentType& b) { return structural_diff(a, b).empty(); }

std::vector<std::string> structural_diff(const ComponentType& a, const ComponentType& b) {
    std::vector<std::string> out;
    if (a.name != b.name) {
        out.push_back("- name " + a.name);
        out.push_back("+ name " + b.name);
    }
    if (a.autoconnect_port != b.autoconnect_port) {
        out.push_back(std::string(b.autoconnect_port ? "+" : "-") + " autoconnect port");
    }
    diff_sets(sorted(a.ports), sorted(b.ports),
              [](const PortDecl& p) { return "port " + std::string(to_string(p.direction)) + " " + p.type_name + " " + p.name; },
              out);
    diff_sets(sorted(a.subcomponents), sorted(b.subcomponents),
              [](const SubcomponentDecl& s) { return "component " + s.type_name + " " + s.instance_name; }, out);
    diff_sets(links(a), links(b), [](const Link& l) { return "connector " + l.first.str() + " -> " + l.second.str(); },
              out);
    return out;
}

// ---------------------------------------------------------------------------

ComponentType generate_in_order(const DeltaModel& model, const ApplicationOrder& order, const GenerateOptions& options,
                                std::string_view config) {
    ComponentType arch = model.core;
    for (const auto& name : order) {
        arch = apply_delta(arch, model.delta(name));
    }
    if (!options.normalize && !options.check) {
        return arch;
    }
    ComponentType normalized = resolve_autoconnect(arch, model.interfaces);
    if (options.check) {
        auto report = check_wellformed(normalized, model.interfaces);
        if (!report.ok()) {
            throw WellFormednessError(std::string(config), std::move(report), normalized);
        }
    }
    return options.normalize ? normalized : arch;
}

ComponentType generate_variant(const DeltaModel& model, const DeltaConfig& config, const GenerateOptions& options) {
    const auto orders = compute_orders(model, config, 1);
    return generate_in_order(model, orders.front(), options, config.name);
}

ConfluenceResult check_confluence(const DeltaModel& model, const DeltaConfig& config, std::size_t limit) {
    ConfluenceResult result;
    result.orders = compute_orders(model, config, limit);

    std::optional<ComponentType> reference;
    const ApplicationOrder* reference_order = nullptr;
    std::exception_ptr first_failure;
    for (const auto& order : result.orders) {
        ComponentType variant;
        try {
            variant = generate_in_order(model, order, GenerateOptions{true, false}, config.name);
        } catch (const ApplicationError& e) {
            result.inapplicable.push_back({order, e.what()});
            if (!first_failure) {
                first_failure = std::current_exception();
            }
            continue;
        } catch (const AmbiguousAutoconnectError& e) {
            result.inapplicable.push_back({order, e.what()});
            if (!first_failure) {
                first_failure = std::current_exception();
            }
            continue;
        }
        if (!reference) {
            reference = std::move(variant);
            reference_order = &order;
            continue;
        }
        if (!result.witness) {
            auto diff = structural_diff(*reference, variant);
            if (!diff.empty()) {
                result.confluent = false;
                result.witness = ConfluenceWitness{*reference_order, order, std::move(diff)};
            }
        }
    }
    if (!reference) {
        std::rethrow_exception(first_failure);
    }
    return result;
}

// ---------------------------------------------------------------------------

bool ConfigSummary::ok() const {
    return generated && error.empty() && wellformedness.ok() && confluent.value_or(false);
}

std::size_t FamilyReport::error_count() const {
    return static_cast<std::size_t>(std::count_if(configs.begin(), configs.end(), [](const auto& c) { return !c.ok(); }));
}

std::size_t FamilyReport::warning_count() const {
    std::size_t n = redundant_deltas.size() + orphan_literals.size();
    for (const auto& c : configs) {
        n += c.conflicts.size();
    }
    return n;
}

bool FamilyReport::passes(bool strict) const { return error_count() == 0 && (!strict || warning_count() == 0); }

namespace {

void negated_names(const AocExpr& e, bool negated, std::set<std::string>& out) {
    switch (e.kind()) {
    case AocExpr::Kind::truth: break;
    case AocExpr::Kind::name:
        if (negated) {
            out.insert(e.identifier());
        }
        break;
    case AocExpr::Kind::negation: negated_names(e.operand(), !negated, out); break;
    case AocExpr::Kind::conjunction:
    case AocExpr::Kind::disjunction:
        negated_names(e.lhs(), negated, out);
        negated_names(e.rhs(), negated, out);
        break;
    }
}

} // namespace

FamilyReport check_family(const DeltaModel& model, const FamilyOptions& options) {
    FamilyReport report;
    std::set<std::string> used;
    for (const auto& [name, config] : model.configs) {
        used.insert(config.deltas.begin(), config.deltas.end());

        ConfigSummary row;
        row.name = name;
        try {
            const auto limit = options.order_limit == unlimited ? unlimited : options.order_limit + 1;
            auto orders = compute_orders(model, config, limit);
            row.orders_capped = options.order_limit != unlimited && orders.size() > options.order_limit;
            row.order_count = std::min(orders.size(), options.order_limit);

            ComponentType variant = generate_in_order(model, orders.front(), GenerateOptions{true, false}, name);
            row.generated = true;
            row.wellformedness = check_wellformed(variant, model.interfaces);
            row.confluent = check_confluence(model, config, options.order_limit).confluent;
        } catch (const Error& e) {
            row.error = e.what();
        }
        if (options.strict) {
            for (const auto& d : config.deltas) {
                std::set<std::string> excluded;
                negated_names(model.delta(d).aoc, false, excluded);
                for (const auto& x : excluded) {
                    if (config.contains(x)) {
                        row.conflicts.push_back(d + " excludes " + x);
                    }
                }
            }
        }
        report.configs.push_back(std::move(row));
    }
    for (const auto& [name, delta] : model.deltas) {
        if (!used.contains(name)) {
            report.redundant_deltas.push_back(name);
        }
        for (const auto& literal : delta.aoc.names()) {
            if (!used.contains(literal)) {
                report.orphan_literals.push_back({name, literal});
            }
        }
    }
    return report;
}

} // namespace deltarc
