#include "deltarc/refactor.hpp"

#include <algorithm>
#include <set>

namespace deltarc {

// ---------------------------------------------------------------------------
// Constraint rewriting

AocExpr simplify(const AocExpr& expr) {
    switch (expr.kind()) {
    case AocExpr::Kind::truth:
    case AocExpr::Kind::name: return expr;
    case AocExpr::Kind::negation: return AocExpr::negation(simplify(expr.operand()));
    case AocExpr::Kind::conjunction: {
        auto l = simplify(expr.lhs());
        auto r = simplify(expr.rhs());
        if (l.is_true()) {
            return r;
        }
        if (r.is_true()) {
            return l;
        }
        return AocExpr::conjunction(std::move(l), std::move(r));
    }
    case AocExpr::Kind::disjunction: {
        auto l = simplify(expr.lhs());
        auto r = simplify(expr.rhs());
        if (l.is_true() || r.is_true()) {
            return AocExpr::always();
        }
        return AocExpr::disjunction(std::move(l), std::move(r));
    }
    }
    return expr;
}

namespace {

AocExpr drop_literal(const AocExpr& e, std::string_view name) {
    switch (e.kind()) {
    case AocExpr::Kind::truth: return e;
    case AocExpr::Kind::name: return e.identifier() == name ? AocExpr::always() : e;
    case AocExpr::Kind::negation:
        if (e.operand().kind() == AocExpr::Kind::name && e.operand().identifier() == name) {
            return AocExpr::always();
        }
        return AocExpr::negation(drop_literal(e.operand(), name));
    case AocExpr::Kind::conjunction: return AocExpr::conjunction(drop_literal(e.lhs(), name), drop_literal(e.rhs(), name));
    case AocExpr::Kind::disjunction: return AocExpr::disjunction(drop_literal(e.lhs(), name), drop_literal(e.rhs(), name));
    }
    return e;
}

void flatten_conjunction(const AocExpr& e, std::vector<AocExpr>& out) {
    if (e.kind() == AocExpr::Kind::conjunction) {
        flatten_conjunction(e.lhs(), out);
        flatten_conjunction(e.rhs(), out);
    } else if (!e.is_true()) {
        if (std::find(out.begin(), out.end(), e) == out.end()) {
            out.push_back(e);
        }
    }
}

} // namespace

AocExpr remove_aoc_literal(const AocExpr& expr, std::string_view name) { return simplify(drop_literal(expr, name)); }

AocExpr rename_aoc_literal(const AocExpr& expr, std::string_view from, std::string_view to) {
    switch (expr.kind()) {
    case AocExpr::Kind::truth: return expr;
    case AocExpr::Kind::name: return expr.identifier() == from ? AocExpr::name(std::string(to)) : expr;
    case AocExpr::Kind::negation: return AocExpr::negation(rename_aoc_literal(expr.operand(), from, to));
    case AocExpr::Kind::conjunction:
        return AocExpr::conjunction(rename_aoc_literal(expr.lhs(), from, to), rename_aoc_literal(expr.rhs(), from, to));
    case AocExpr::Kind::disjunction:
        return AocExpr::disjunction(rename_aoc_literal(expr.lhs(), from, to), rename_aoc_literal(expr.rhs(), from, to));
    }
    return expr;
}

// ---------------------------------------------------------------------------
// Op simplification

namespace {

enum class Space { port, component, connector };

struct ElementKey {
    Space space;
    std::string name;

    friend bool operator==(const ElementKey&, const ElementKey&) = default;
};

std::string link_key(const ConnectorEnd& source, const ConnectorEnd& target) {
    return source.str() + " -> " + target.str();
}

std::vector<ElementKey> touched(const DeltaOp& op) {
    struct Visitor {
        std::vector<ElementKey> operator()(const AddPort& o) const { return {{Space::port, o.port.name}}; }
        std::vector<ElementKey> operator()(const RemovePort& o) const { return {{Space::port, o.name}}; }
        std::vector<ElementKey> operator()(const AddComponent& o) const {
            return {{Space::component, o.component.instance_name}};
        }
        std::vector<ElementKey> operator()(const RemoveComponent& o) const {
            return {{Space::component, o.instance_name}};
        }
        std::vector<ElementKey> operator()(const ReplaceComponent& o) const {
            return {{Space::component, o.old_instance}, {Space::component, o.replacement.instance_name}};
        }
        std::vector<ElementKey> operator()(const Connect& o) const {
            return {{Space::connector, link_key(o.connector.source, o.connector.target)}};
        }
        std::vector<ElementKey> operator()(const Disconnect& o) const {
            return {{Space::connector, link_key(o.source, o.target)}};
        }
    };
    return std::visit(Visitor{}, op);
}

// The element an op leaves behind, which later ops on the same element chain onto.
ElementKey resulting_element(const DeltaOp& op) {
    if (const auto* r = std::get_if<ReplaceComponent>(&op)) {
        return {Space::component, r->replacement.instance_name};
    }
    return touched(op).front();
}

bool touches(const DeltaOp& op, const ElementKey& key) {
    const auto keys = touched(op);
    return std::find(keys.begin(), keys.end(), key) != keys.end();
}

bool untouched_between(const std::vector<DeltaOp>& ops, std::size_t i, std::size_t j, const ElementKey& key) {
    for (std::size_t k = i + 1; k < j; ++k) {
        if (touches(ops[k], key)) {
            return false;
        }
    }
    return true;
}

// Attempts one rewrite on the pair (i, j); j is the next op touching the element produced by i.
bool rewrite_pair(std::vector<DeltaOp>& ops, std::size_t i, std::size_t j) {
    auto erase_both = [&] {
        ops.erase(ops.begin() + static_cast<std::ptrdiff_t>(j));
        ops.erase(ops.begin() + static_cast<std::ptrdiff_t>(i));
        return true;
    };
    auto replace_first = [&](DeltaOp merged) {
        ops[i] = std::move(merged);
        ops.erase(ops.begin() + static_cast<std::ptrdiff_t>(j));
        return true;
    };
    const DeltaOp& a = ops[i];
    const DeltaOp& b = ops[j];

    if (const auto* add = std::get_if<AddPort>(&a)) {
        if (const auto* rem = std::get_if<RemovePort>(&b); rem && rem->name == add->port.name) {
            return erase_both();
        }
        return false;
    }
    if (const auto* add = std::get_if<AddComponent>(&a)) {
        const auto& name = add->component.instance_name;
        if (const auto* rem = std::get_if<RemoveComponent>(&b); rem && rem->instance_name == name) {
            return erase_both();
        }
        if (const auto* rep = std::get_if<ReplaceComponent>(&b); rep && rep->old_instance == name) {
            const ElementKey fresh{Space::component, rep->replacement.instance_name};
            if (rep->replacement.instance_name == name || untouched_between(ops, i, j, fresh)) {
                return replace_first(AddComponent{rep->replacement});
            }
        }
        return false;
    }
    if (const auto* first = std::get_if<ReplaceComponent>(&a)) {
        const auto& name = first->replacement.instance_name;
        if (const auto* second = std::get_if<ReplaceComponent>(&b); second && second->old_instance == name) {
            const ElementKey fresh{Space::component, second->replacement.instance_name};
            if (second->replacement.instance_name == name || untouched_between(ops, i, j, fresh)) {
                return replace_first(ReplaceComponent{first->old_instance, second->replacement});
            }
        }
        return false;
    }
    if (const auto* rem = std::get_if<RemoveComponent>(&a)) {
        if (const auto* add = std::get_if<AddComponent>(&b); add && add->component.instance_name == rem->instance_name) {
            return replace_first(ReplaceComponent{rem->instance_name, add->component});
        }
        return false;
    }
    if (const auto* con = std::get_if<Connect>(&a)) {
        if (const auto* dis = std::get_if<Disconnect>(&b);
            dis && dis->source == con->connector.source && dis->target == con->connector.target) {
            return erase_both();
        }
        return false;
    }
    if (const auto* dis = std::get_if<Disconnect>(&a)) {
        if (const auto* con = std::get_if<Connect>(&b);
            con && dis->source == con->connector.source && dis->target == con->connector.target) {
            return erase_both();
        }
        return false;
    }
    return false;
}

} // namespace

std::vector<DeltaOp> simplify_ops(std::vector<DeltaOp> ops) {
    bool changed = true;
    while (changed) {
        changed = false;
        for (std::size_t i = 0; i < ops.size() && !changed; ++i) {
            const ElementKey key = resulting_element(ops[i]);
            for (std::size_t j = i + 1; j < ops.size(); ++j) {
                if (touches(ops[j], key)) {
                    changed = rewrite_pair(ops, i, j);
                    break;
                }
            }
        }
    }
    return ops;
}

std::vector<ModifyBlock> compose_blocks(const std::vector<const Delta*>& deltas) {
    std::vector<ModifyBlock> blocks;
    for (const Delta* d : deltas) {
        for (const auto& block : d->blocks) {
            auto it = std::find_if(blocks.begin(), blocks.end(),
                                   [&](const ModifyBlock& b) { return b.target_component == block.target_component; });
            if (it == blocks.end()) {
                blocks.push_back({block.target_component, {}});
                it = std::prev(blocks.end());
            }
            it->ops.insert(it->ops.end(), block.ops.begin(), block.ops.end());
        }
    }
    for (auto& b : blocks) {
        b.ops = simplify_ops(std::move(b.ops));
    }
    std::erase_if(blocks, [](const ModifyBlock& b) { return b.ops.empty(); });
    return blocks;
}

namespace {

std::vector<const Delta*> resolve_sequence(const DeltaModel& model, const std::vector<std::string>& sequence) {
    std::vector<const Delta*> out;
    std::set<std::string> seen;
    for (const auto& name : sequence) {
        if (!seen.insert(name).second) {
            throw Error("delta '" + name + "' occurs twice in the sequence");
        }
        out.push_back(&model.delta(name));
    }
    return out;
}

std::optional<ComponentType> try_generate(const DeltaModel& model, const DeltaConfig& config, std::string& error) {
    try {
        return generate_variant(model, config, GenerateOptions{true, false});
    } catch (const Error& e) {
        error = e.what();
        return std::nullopt;
    }
}

std::vector<std::string> composition_warnings(const DeltaModel& model, const std::vector<std::string>& sequence) {
    std::vector<std::string> warnings;
    std::vector<ComponentType> products;
    for (const auto& [name, config] : model.configs) {
        std::string ignored;
        if (auto v = try_generate(model, config, ignored)) {
            products.push_back(std::move(*v));
        }
    }

    for (const auto& [name, config] : model.configs) {
        const auto present = std::count_if(sequence.begin(), sequence.end(),
                                           [&](const std::string& d) { return config.contains(d); });
        if (present == 0) {
            continue;
        }
        if (static_cast<std::size_t>(present) != sequence.size()) {
            warnings.push_back("configuration '" + name + "' contains only part of the sequence");
            continue;
        }
        std::vector<ApplicationOrder> orders;
        try {
            orders = compute_orders(model, config, 1);
        } catch (const Error& e) {
            warnings.push_back("configuration '" + name + "': " + e.what());
            continue;
        }
        const auto& order = orders.front();
        const auto start = std::find(order.begin(), order.end(), sequence.front());
        const auto offset = static_cast<std::size_t>(start - order.begin());
        const bool contiguous = offset + sequence.size() <= order.size() &&
                                std::equal(sequence.begin(), sequence.end(), order.begin() + static_cast<std::ptrdiff_t>(offset));
        if (!contiguous) {
            warnings.push_back("configuration '" + name + "' does not apply the sequence contiguously and in order");
            continue;
        }
        // intermediate products after each proper prefix of the sequence
        try {
            ComponentType arch = model.core;
            for (std::size_t k = 0; k + 1 < offset + sequence.size(); ++k) {
                arch = apply_delta(arch, model.delta(order[k]));
                if (k < offset) {
                    continue;
                }
                const auto normalized = resolve_autoconnect(arch, model.interfaces);
                for (const auto& p : products) {
                    if (structural_equal(p, normalized)) {
                        warnings.push_back("configuration '" + name + "': prefix ending in '" + order[k] +
                                           "' yields a supported variant");
                        break;
                    }
                }
            }
        } catch (const Error& e) {
            warnings.push_back("configuration '" + name + "': " + e.what());
        }
    }
    return warnings;
}

std::vector<PreservationEntry> compare_variants(const DeltaModel& before, const DeltaModel& after,
                                                const std::map<std::string, std::string>& renamed = {}) {
    std::vector<PreservationEntry> report;
    for (const auto& [name, config] : after.configs) {
        PreservationEntry entry;
        entry.config = name;
        auto source_name = renamed.contains(name) ? renamed.at(name) : name;
        std::string error_after;
        auto new_variant = try_generate(after, config, error_after);

        std::optional<ComponentType> old_variant;
        std::string error_before;
        if (source_name.empty()) {
            old_variant = resolve_autoconnect(before.core, before.interfaces);
        } else if (auto it = before.configs.find(source_name); it != before.configs.end()) {
            old_variant = try_generate(before, it->second, error_before);
        } else {
            entry.error = "no configuration '" + source_name + "' before the refactoring";
            report.push_back(std::move(entry));
            continue;
        }

        if (old_variant && new_variant) {
            entry.diff = structural_diff(*old_variant, *new_variant);
            entry.preserved = entry.diff.empty();
        } else if (!old_variant && !new_variant) {
            entry.preserved = true;
            entry.error = "not generatable before or after: " + error_after;
        } else {
            entry.error = old_variant ? "no longer generatable: " + error_after : "newly generatable";
        }
        report.push_back(std::move(entry));
    }
    return report;
}

RefactoringOutcome finish(RefactoringOutcome outcome) {
    if (!outcome.preserved()) {
        throw PreservationViolation(std::move(outcome.preservation_report));
    }
    return outcome;
}

} // namespace

Composition compose_deltas(const DeltaModel& model, const std::vector<std::string>& sequence, std::string new_name) {
    if (sequence.size() < 2) {
        throw Error("composition needs a sequence of at least two deltas");
    }
    const auto members = resolve_sequence(model, sequence);

    std::vector<AocExpr> parts;
    for (const Delta* d : members) {
        parts.push_back(d->aoc);
    }
    AocExpr aoc = conjunction_of(parts);
    for (const auto& name : sequence) {
        aoc = remove_aoc_literal(aoc, name);
    }
    std::vector<AocExpr> conjuncts;
    flatten_conjunction(aoc, conjuncts);

    Composition out;
    out.warnings = composition_warnings(model, sequence);
    auto blocks = compose_blocks(members);
    if (!blocks.empty()) {
        out.delta = Delta{std::move(new_name), conjunction_of(conjuncts), std::move(blocks)};
    }
    return out;
}

bool RefactoringOutcome::preserved() const {
    return std::all_of(preservation_report.begin(), preservation_report.end(),
                       [](const PreservationEntry& e) { return e.preserved; });
}

PreservationViolation::PreservationViolation(std::vector<PreservationEntry> report)
    : Error([&] {
          std::string msg = "refactoring does not preserve variants:";
          for (const auto& e : report) {
              if (!e.preserved) {
                  msg += " " + e.config;
              }
          }
          return msg;
      }()),
      report_(std::move(report)) {}

RefactoringOutcome apply_compose_refactoring(const DeltaModel& model, const std::vector<std::string>& sequence,
                                             std::string new_name) {
    if (!is_identifier(new_name)) {
        throw Error("'" + new_name + "' is not a valid delta name");
    }
    const bool reuses_member = std::find(sequence.begin(), sequence.end(), new_name) != sequence.end();
    if (!reuses_member && model.deltas.contains(new_name)) {
        throw Error("delta '" + new_name + "' already exists");
    }
    Composition composition = compose_deltas(model, sequence, new_name);
    if (composition.cancelled()) {
        throw EmptyCompositionError("the operations of " + std::to_string(sequence.size()) +
                                    " deltas cancel out completely");
    }

    RefactoringOutcome outcome;
    outcome.warnings = std::move(composition.warnings);
    DeltaModel next = model;
    for (auto& [name, config] : next.configs) {
        const bool has_all = std::all_of(sequence.begin(), sequence.end(),
                                         [&](const std::string& d) { return config.contains(d); });
        if (!has_all) {
            continue;
        }
        std::vector<std::string> deltas;
        bool placed = false;
        for (const auto& d : config.deltas) {
            if (std::find(sequence.begin(), sequence.end(), d) == sequence.end()) {
                deltas.push_back(d);
            } else if (!placed) {
                deltas.push_back(new_name);
                placed = true;
            }
        }
        config.deltas = std::move(deltas);
        outcome.changed_configs.push_back(name);
    }

    std::set<std::string> used;
    for (const auto& [name, config] : next.configs) {
        used.insert(config.deltas.begin(), config.deltas.end());
    }
    for (const auto& member : sequence) {
        if (member == new_name) {
            continue;
        }
        if (used.contains(member)) {
            outcome.warnings.push_back("delta '" + member + "' is still used and kept");
            continue;
        }
        next.deltas.erase(member);
        outcome.removed_deltas.push_back(member);
    }
    if (reuses_member && used.contains(new_name)) {
        // a partial config may still rely on the old meaning of the reused name
        for (const auto& [name, config] : next.configs) {
            if (config.contains(new_name) &&
                std::find(outcome.changed_configs.begin(), outcome.changed_configs.end(), name) ==
                    outcome.changed_configs.end()) {
                throw Error("configuration '" + name + "' uses '" + new_name +
                            "' outside the composed sequence; choose a fresh name");
            }
        }
    }
    next.deltas.insert_or_assign(new_name, std::move(*composition.delta));
    outcome.added_deltas.push_back(new_name);

    for (auto& [name, delta] : next.deltas) {
        if (name == new_name) {
            continue;
        }
        for (const auto& removed : outcome.removed_deltas) {
            delta.aoc = rename_aoc_literal(delta.aoc, removed, new_name);
        }
    }
    check_references(next);

    outcome.preservation_report = compare_variants(model, next);
    outcome.new_model = std::move(next);
    return finish(std::move(outcome));
}

// ---------------------------------------------------------------------------
// Inversion

std::string default_inverse_name(std::string_view delta_name) {
    if (delta_name.size() > 1 && delta_name.front() == 'D' && delta_name[1] >= 'A' && delta_name[1] <= 'Z') {
        delta_name.remove_prefix(1);
    }
    return "DInverse" + std::string(delta_name);
}

namespace {

struct InverseBuilder {
    const ComponentType& before;

    DeltaOp operator()(const AddPort& o) const { return RemovePort{o.port.name}; }
    DeltaOp operator()(const RemovePort& o) const { return AddPort{*find_port(before, o.name)}; }
    DeltaOp operator()(const AddComponent& o) const { return RemoveComponent{o.component.instance_name}; }
    DeltaOp operator()(const RemoveComponent& o) const { return AddComponent{*find_subcomponent(before, o.instance_name)}; }
    DeltaOp operator()(const ReplaceComponent& o) const {
        return ReplaceComponent{o.replacement.instance_name, *find_subcomponent(before, o.old_instance)};
    }
    DeltaOp operator()(const Connect& o) const { return Disconnect{o.connector.source, o.connector.target}; }
    DeltaOp operator()(const Disconnect& o) const {
        return Connect{Connector{o.source, o.target, ConnectorOrigin::declared}};
    }
};

} // namespace

Delta invert_delta(const Delta& delta, const ComponentType& context, std::optional<std::string> name) {
    std::vector<std::pair<std::string, DeltaOp>> inverse_ops;
    ComponentType running = context;
    for (const auto& block : delta.blocks) {
        for (const auto& op : block.ops) {
            ComponentType next;
            try {
                next = apply_op(running, block.target_component, op);
            } catch (const ApplicationError& e) {
                throw InapplicableDeltaError("cannot invert '" + delta.name + "' against '" + context.name +
                                             "': " + e.what());
            }
            inverse_ops.emplace_back(block.target_component, std::visit(InverseBuilder{running}, op));
            running = std::move(next);
        }
    }

    Delta out;
    out.name = name ? std::move(*name) : default_inverse_name(delta.name);
    for (auto it = inverse_ops.rbegin(); it != inverse_ops.rend(); ++it) {
        if (out.blocks.empty() || out.blocks.back().target_component != it->first) {
            out.blocks.push_back({it->first, {}});
        }
        out.blocks.back().ops.push_back(std::move(it->second));
    }
    return out;
}

// ---------------------------------------------------------------------------
// Merge with core

RefactoringOutcome apply_merge_with_core(const DeltaModel& model, const std::vector<std::string>& sequence,
                                         const MergeOptions& options) {
    if (sequence.empty()) {
        throw Error("merge-with-core needs a sequence of at least one delta");
    }
    const auto members = resolve_sequence(model, sequence);
    auto in_sequence = [&](const std::string& d) {
        return std::find(sequence.begin(), sequence.end(), d) != sequence.end();
    };

    RefactoringOutcome outcome;
    {
        DeltaSet applied;
        for (const Delta* d : members) {
            if (!eval_aoc(d->aoc, applied)) {
                outcome.warnings.push_back("constraint of '" + d->name + "' does not hold at its sequence position");
            }
            applied.insert(d->name);
        }
    }

    DeltaModel next = model;
    for (const Delta* d : members) {
        next.core = apply_delta(next.core, *d);
        next.deltas.erase(d->name);
        outcome.removed_deltas.push_back(d->name);
    }
    for (auto& [name, delta] : next.deltas) {
        for (const auto& member : sequence) {
            delta.aoc = remove_aoc_literal(delta.aoc, member);
        }
    }

    std::map<std::string, std::string> renamed;
    for (auto& [name, config] : next.configs) {
        const auto present = static_cast<std::size_t>(std::count_if(config.deltas.begin(), config.deltas.end(), in_sequence));
        if (present > 0 && present < sequence.size()) {
            outcome.warnings.push_back("configuration '" + name + "' contains only part of the sequence");
        }
        if (present == 0) {
            if (options.with_inverse) {
                config.deltas.insert(config.deltas.begin(), options.inverse_name);
                outcome.changed_configs.push_back(name);
            } else {
                outcome.warnings.push_back("configuration '" + name +
                                           "' does not use the sequence; the old core is lost without an inverse");
            }
            continue;
        }
        std::erase_if(config.deltas, in_sequence);
        outcome.changed_configs.push_back(name);
    }

    if (options.with_inverse) {
        if (next.deltas.contains(options.inverse_name)) {
            throw Error("delta '" + options.inverse_name + "' already exists");
        }
        auto blocks = compose_blocks(members);
        Delta composed{"composed", AocExpr::always(), std::move(blocks)};
        Delta inverse = invert_delta(composed, model.core, options.inverse_name);
        std::vector<AocExpr> negations;
        for (const auto& [name, delta] : next.deltas) {
            negations.push_back(AocExpr::negation(AocExpr::name(name)));
        }
        inverse.aoc = conjunction_of(negations);
        if (inverse.blocks.empty()) {
            throw EmptyCompositionError("the merged sequence has no net effect; no inverse delta needed");
        }
        next.deltas.emplace(options.inverse_name, std::move(inverse));
        outcome.added_deltas.push_back(options.inverse_name);

        const bool has_old_core = std::any_of(next.configs.begin(), next.configs.end(), [&](const auto& entry) {
            return entry.second.deltas == std::vector<std::string>{options.inverse_name};
        });
        if (!has_old_core) {
            if (next.configs.contains(options.old_core_config)) {
                throw Error("configuration '" + options.old_core_config + "' already exists");
            }
            next.configs.emplace(options.old_core_config,
                                 DeltaConfig{options.old_core_config, {options.inverse_name}});
            outcome.changed_configs.push_back(options.old_core_config);
            renamed.emplace(options.old_core_config, "");
        }
    }
    check_references(next);

    outcome.preservation_report = compare_variants(model, next, renamed);
    outcome.new_model = std::move(next);
    return finish(std::move(outcome));
}

// ---------------------------------------------------------------------------
// Evolution edits

DeltaModel remove_config(const DeltaModel& model, std::string_view name, bool prune_redundant) {
    (void)model.config(name);
    DeltaModel next = model;
    next.configs.erase(next.configs.find(name));
    if (!prune_redundant) {
        return next;
    }
    std::set<std::string> used;
    for (const auto& [n, config] : next.configs) {
        used.insert(config.deltas.begin(), config.deltas.end());
    }
    std::vector<std::string> redundant;
    for (const auto& [n, delta] : next.deltas) {
        if (!used.contains(n)) {
            redundant.push_back(n);
        }
    }
    for (const auto& r : redundant) {
        next.deltas.erase(r);
    }
    for (auto& [n, delta] : next.deltas) {
        for (const auto& r : redundant) {
            delta.aoc = remove_aoc_literal(delta.aoc, r);
        }
    }
    return next;
}

DeltaModel replace_delta(const DeltaModel& model, Delta delta) {
    (void)model.delta(delta.name);
    DeltaModel next = model;
    next.deltas.insert_or_assign(delta.name, std::move(delta));
    check_references(next);
    return next;
}

DeltaModel add_delta(const DeltaModel& model, Delta delta) {
    if (model.deltas.contains(delta.name)) {
        throw Error("delta '" + delta.name + "' already exists");
    }
    DeltaModel next = model;
    next.deltas.emplace(delta.name, std::move(delta));
    check_references(next);
    return next;
}

DeltaModel add_config(const DeltaModel& model, DeltaConfig config) {
    if (model.configs.contains(config.name)) {
        throw Error("configuration '" + config.name + "' already exists");
    }
    DeltaModel next = model;
    next.configs.emplace(config.name, std::move(config));
    check_references(next);
    return next;
}

} // namespace deltarc
