#include "deltarc/cli.hpp"

#include "deltarc/engine.hpp"
#include "deltarc/graph.hpp"
#include "deltarc/metrics.hpp"
#include "deltarc/parser.hpp"
#include "deltarc/productline.hpp"
#include "deltarc/refactor.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <algorithm>
#include <filesystem>
#include <fstream>

namespace fs = std::filesystem;

namespace deltarc::cli {

namespace {

using json = nlohmann::ordered_json;

struct Options {
    bool json = false;
    std::string dir;
    std::vector<std::string> dirs;
    std::string file;
    std::string config;
    std::string output;
    std::string out_dir;
    std::string name;
    std::string delta;
    std::string context;
    std::string variant;
    std::string annotative;
    std::string format = "csv";
    std::vector<std::string> deltas;
    std::size_t limit = 0;
    bool all = false;
    bool strict = false;
    bool no_normalize = false;
    bool in_place = false;
    bool inverse = false;
    std::string inverse_name = "DInverse";
};

std::string join(const std::vector<std::string>& items, const std::string& sep) {
    std::string out;
    for (const auto& i : items) {
        out += (out.empty() ? "" : sep) + i;
    }
    return out;
}

void emit(const std::string& path, const std::string& text, std::ostream& out) {
    if (path.empty() || path == "-") {
        out << text;
        return;
    }
    const fs::path p(path);
    if (p.has_parent_path()) {
        fs::create_directories(p.parent_path());
    }
    std::ofstream file(p, std::ios::binary);
    if (!file) {
        throw Error("cannot write '" + path + "'");
    }
    file << text;
}

void print_json(std::ostream& out, const json& j) { out << j.dump(2) << "\n"; }

// ---------------------------------------------------------------------------
// Diagnostics

json violations_json(const WellFormednessReport& report) {
    json arr = json::array();
    for (const auto& v : report.entries) {
        arr.push_back({{"rule", std::string(to_string(v.rule))},
                       {"element", v.element},
                       {"message", v.message},
                       {"informational", v.informational()}});
    }
    return arr;
}

json preservation_json(const std::vector<PreservationEntry>& report) {
    json arr = json::array();
    for (const auto& e : report) {
        json j{{"config", e.config}, {"preserved", e.preserved}, {"diff", e.diff}};
        if (!e.error.empty()) {
            j["error"] = e.error;
        }
        arr.push_back(std::move(j));
    }
    return arr;
}

int report_error(const Options& opt, std::ostream& err, const std::exception& e) {
    json j{{"status", "error"}, {"message", e.what()}};
    int code = exit_usage;
    std::string kind = "error";
    if (const auto* p = dynamic_cast<const ParseError*>(&e)) {
        kind = "parse";
        j["path"] = p->path();
        j["line"] = p->line();
        j["column"] = p->column();
        j["expected"] = p->expected();
    } else if (const auto* inv = dynamic_cast<const InvariantError*>(&e)) {
        kind = "invariant";
        json arr = json::array();
        for (const auto& v : inv->violations()) {
            arr.push_back({{"rule", std::string(to_string(v.rule))}, {"element", v.element}, {"message", v.message}});
        }
        j["violations"] = std::move(arr);
    } else if (dynamic_cast<const DanglingReferenceError*>(&e) != nullptr) {
        kind = "dangling_reference";
    } else if (dynamic_cast<const UnknownDeltaError*>(&e) != nullptr ||
               dynamic_cast<const UnknownConfigError*>(&e) != nullptr ||
               dynamic_cast<const UnknownVariantError*>(&e) != nullptr) {
        kind = "unknown_name";
    } else if (dynamic_cast<const UnterminatedCommentError*>(&e) != nullptr) {
        kind = "parse";
    } else if (const auto* n = dynamic_cast<const NoValidOrderError*>(&e)) {
        kind = "no_valid_order";
        code = exit_findings;
        j["config"] = n->config();
        j["longest_prefix"] = n->longest_prefix();
    } else if (const auto* a = dynamic_cast<const ApplicationError*>(&e)) {
        kind = "application";
        code = exit_findings;
        j["delta"] = a->delta();
        j["op_index"] = a->op_index();
        j["element"] = a->element();
    } else if (const auto* w = dynamic_cast<const WellFormednessError*>(&e)) {
        kind = "wellformedness";
        code = exit_findings;
        j["config"] = w->config();
        j["violations"] = violations_json(w->report());
    } else if (const auto* amb = dynamic_cast<const AmbiguousAutoconnectError*>(&e)) {
        kind = "ambiguous_autoconnect";
        code = exit_findings;
        j["target"] = amb->target();
        j["sources"] = amb->sources();
    } else if (const auto* pv = dynamic_cast<const PreservationViolation*>(&e)) {
        kind = "preservation";
        code = exit_findings;
        j["report"] = preservation_json(pv->report());
    } else if (dynamic_cast<const EmptyCompositionError*>(&e) != nullptr ||
               dynamic_cast<const InapplicableDeltaError*>(&e) != nullptr) {
        kind = "refactoring";
        code = exit_findings;
    } else if (dynamic_cast<const fs::filesystem_error*>(&e) != nullptr) {
        kind = "io";
    }
    j["kind"] = kind;
    j["exit_code"] = code;
    if (opt.json) {
        print_json(err, j);
    } else {
        err << "error: " << e.what() << "\n";
        if (const auto* pv = dynamic_cast<const PreservationViolation*>(&e)) {
            for (const auto& entry : pv->report()) {
                if (!entry.preserved) {
                    err << "  " << entry.config << (entry.error.empty() ? "" : ": " + entry.error) << "\n";
                    for (const auto& line : entry.diff) {
                        err << "    " << line << "\n";
                    }
                }
            }
        } else if (const auto* w = dynamic_cast<const WellFormednessError*>(&e)) {
            for (const auto& v : w->report().violations()) {
                err << "  " << to_string(v.rule) << " " << v.element << ": " << v.message << "\n";
            }
        }
    }
    return code;
}

// ---------------------------------------------------------------------------
// Subcommands

int cmd_check(const Options& opt, std::ostream& out) {
    const auto line = load_product_line(opt.dir);
    FamilyOptions family;
    family.strict = opt.strict;
    if (opt.limit > 0) {
        family.order_limit = opt.limit;
    }
    const auto report = check_family(line.model, family);
    const bool passed = report.passes(opt.strict);

    if (opt.json) {
        json configs = json::array();
        for (const auto& c : report.configs) {
            json j{{"name", c.name},
                   {"ok", c.ok()},
                   {"orders", c.order_count},
                   {"orders_capped", c.orders_capped},
                   {"generated", c.generated}};
            if (!c.error.empty()) {
                j["error"] = c.error;
            }
            j["wellformedness"] = violations_json(c.wellformedness);
            if (c.confluent) {
                j["confluent"] = *c.confluent;
            }
            j["conflicts"] = c.conflicts;
            configs.push_back(std::move(j));
        }
        json orphans = json::array();
        for (const auto& o : report.orphan_literals) {
            orphans.push_back({{"delta", o.delta}, {"literal", o.literal}});
        }
        print_json(out, {{"status", passed ? "ok" : "findings"},
                         {"configs", std::move(configs)},
                         {"redundant_deltas", report.redundant_deltas},
                         {"orphan_literals", std::move(orphans)},
                         {"errors", report.error_count()},
                         {"warnings", report.warning_count()}});
        return passed ? exit_ok : exit_findings;
    }

    for (const auto& c : report.configs) {
        out << c.name << ": ";
        if (!c.error.empty()) {
            out << "error: " << c.error << "\n";
            continue;
        }
        const bool wellformed = c.wellformedness.ok();
        out << (c.ok() ? "ok" : "failed") << ", " << c.order_count << (c.orders_capped ? "+" : "")
            << (c.order_count == 1 && !c.orders_capped ? " order" : " orders");
        if (!wellformed) {
            out << ", ill-formed";
        }
        if (c.confluent && !*c.confluent) {
            out << ", not confluent";
        }
        out << "\n";
        for (const auto& v : c.wellformedness.entries) {
            out << "  " << (v.informational() ? "note: " : "") << to_string(v.rule) << " " << v.element << ": "
                << v.message << "\n";
        }
        for (const auto& conflict : c.conflicts) {
            out << "  warning: " << conflict << "\n";
        }
    }
    for (const auto& d : report.redundant_deltas) {
        out << "warning: delta '" << d << "' is used by no configuration\n";
    }
    for (const auto& o : report.orphan_literals) {
        out << "warning: the constraint of '" << o.delta << "' mentions '" << o.literal
            << "', which no configuration contains\n";
    }
    out << report.configs.size() << " configurations, " << report.error_count() << " errors, "
        << report.warning_count() << " warnings\n";
    return passed ? exit_ok : exit_findings;
}

int cmd_generate(const Options& opt, std::ostream& out) {
    const auto line = load_product_line(opt.dir);
    const auto& config = line.model.config(opt.config);
    const auto variant = generate_variant(line.model, config, GenerateOptions{!opt.no_normalize, true});
    emit(opt.output, unparse(variant), out);
    return exit_ok;
}

int cmd_order(const Options& opt, std::ostream& out) {
    const auto line = load_product_line(opt.dir);
    const auto& config = line.model.config(opt.config);
    const std::size_t limit = opt.all ? (opt.limit > 0 ? opt.limit : unlimited) : 1;
    const auto orders = compute_orders(line.model, config, limit);
    if (opt.json) {
        print_json(out, {{"status", "ok"}, {"config", opt.config}, {"orders", orders}});
        return exit_ok;
    }
    for (const auto& o : orders) {
        out << join(o, ", ") << "\n";
    }
    return exit_ok;
}

int cmd_confluence(const Options& opt, std::ostream& out) {
    const auto line = load_product_line(opt.dir);
    const auto& config = line.model.config(opt.config);
    const auto result = check_confluence(line.model, config, opt.limit > 0 ? opt.limit : unlimited);
    if (opt.json) {
        json j{{"status", result.confluent ? "ok" : "findings"},
               {"config", opt.config},
               {"confluent", result.confluent},
               {"orders", result.orders}};
        json skipped = json::array();
        for (const auto& i : result.inapplicable) {
            skipped.push_back({{"order", i.order}, {"reason", i.reason}});
        }
        j["inapplicable"] = std::move(skipped);
        if (result.witness) {
            j["witness"] = {{"first", result.witness->first},
                            {"second", result.witness->second},
                            {"diff", result.witness->diff}};
        }
        print_json(out, j);
        return result.confluent ? exit_ok : exit_findings;
    }
    out << opt.config << ": " << (result.confluent ? "confluent" : "not confluent") << " over "
        << result.orders.size() << (result.orders.size() == 1 ? " order" : " orders") << "\n";
    for (const auto& i : result.inapplicable) {
        out << "  skipped " << join(i.order, ", ") << ": " << i.reason << "\n";
    }
    if (result.witness) {
        out << "  first:  " << join(result.witness->first, ", ") << "\n";
        out << "  second: " << join(result.witness->second, ", ") << "\n";
        for (const auto& d : result.witness->diff) {
            out << "    " << d << "\n";
        }
    }
    return result.confluent ? exit_ok : exit_findings;
}

void print_outcome(const Options& opt, const RefactoringOutcome& outcome, const std::vector<fs::path>& written,
                   std::ostream& out) {
    if (opt.json) {
        json files = json::array();
        for (const auto& p : written) {
            files.push_back(p.generic_string());
        }
        print_json(out, {{"status", "ok"},
                         {"removed_deltas", outcome.removed_deltas},
                         {"added_deltas", outcome.added_deltas},
                         {"changed_configs", outcome.changed_configs},
                         {"warnings", outcome.warnings},
                         {"preservation", preservation_json(outcome.preservation_report)},
                         {"written", std::move(files)}});
        return;
    }
    if (written.empty()) {
        for (const auto& name : outcome.added_deltas) {
            out << unparse(outcome.new_model.deltas.at(name)) << "\n";
        }
    }
    for (const auto& w : outcome.warnings) {
        out << "warning: " << w << "\n";
    }
    if (!outcome.removed_deltas.empty()) {
        out << "removed: " << join(outcome.removed_deltas, ", ") << "\n";
    }
    if (!outcome.added_deltas.empty()) {
        out << "added: " << join(outcome.added_deltas, ", ") << "\n";
    }
    out << "preservation:\n";
    for (const auto& e : outcome.preservation_report) {
        out << "  " << e.config << ": " << (e.preserved ? "preserved" : "changed")
            << (e.error.empty() ? "" : " (" + e.error + ")") << "\n";
    }
    for (const auto& p : written) {
        out << "wrote " << p.generic_string() << "\n";
    }
}

std::vector<fs::path> write_result(const Options& opt, const ProductLine& line, const DeltaModel& model) {
    if (opt.in_place) {
        return write_product_line(line, model, line.root);
    }
    if (!opt.out_dir.empty()) {
        return write_product_line(line, model, opt.out_dir);
    }
    return {};
}

int cmd_compose(const Options& opt, std::ostream& out) {
    const auto line = load_product_line(opt.dir);
    const auto outcome = apply_compose_refactoring(line.model, opt.deltas, opt.name);
    print_outcome(opt, outcome, write_result(opt, line, outcome.new_model), out);
    return exit_ok;
}

int cmd_merge_core(const Options& opt, std::ostream& out) {
    const auto line = load_product_line(opt.dir);
    MergeOptions merge;
    merge.with_inverse = opt.inverse;
    merge.inverse_name = opt.inverse_name;
    const auto outcome = apply_merge_with_core(line.model, opt.deltas, merge);
    const auto written = write_result(opt, line, outcome.new_model);
    if (written.empty() && !opt.json) {
        out << unparse(outcome.new_model.core) << "\n";
    }
    print_outcome(opt, outcome, written, out);
    return exit_ok;
}

int cmd_invert(const Options& opt, std::ostream& out) {
    const auto line = load_product_line(opt.dir);
    const auto& delta = line.model.delta(opt.delta);
    ComponentType context = line.model.core;
    if (opt.context != "core") {
        context = generate_variant(line.model, line.model.config(opt.context), GenerateOptions{false, false});
    }
    std::optional<std::string> name;
    if (!opt.name.empty()) {
        name = opt.name;
    }
    emit(opt.output, unparse(invert_delta(delta, context, name)), out);
    return exit_ok;
}

int cmd_project(const Options& opt, std::ostream& out) {
    const auto src = SourceFile::load(opt.file, true);
    const auto model = parse_annotated(src);
    emit(opt.output, unparse(project_variant(model, opt.variant)), out);
    return exit_ok;
}

int cmd_metrics(const Options& opt, std::ostream& out) {
    if (!opt.annotative.empty() && opt.dirs.size() != 1) {
        throw CLI::ValidationError("--annotative", "requires exactly one product-line directory");
    }
    ReportFormat format = ReportFormat::csv;
    if (opt.format == "md" || opt.format == "markdown") {
        format = ReportFormat::markdown;
    } else if (opt.format == "json") {
        format = ReportFormat::json;
    }
    std::vector<ScenarioComparison> scenarios;
    for (const auto& dir : opt.dirs) {
        const auto line = load_product_line(dir);
        ScenarioComparison row;
        row.label = line.label();
        row.delta = measure_delta_model(line.sources(), line.model);

        std::optional<AnnotativeModel> annotated;
        if (!opt.annotative.empty()) {
            AnnotativeModel m;
            m.file = SourceFile::load(opt.annotative, true);
            m.model = parse_annotated(m.file);
            m.core_variant = line.manifest.core_variant;
            annotated = std::move(m);
        } else {
            annotated = load_annotative(line);
        }
        if (annotated) {
            row.annotative = measure_annotative_model(annotative_sources(line, *annotated), annotated->model,
                                                      line.model.interfaces, annotated->core_variant);
        }
        scenarios.push_back(std::move(row));
    }
    emit(opt.output, render_report(scenarios, format), out);
    return exit_ok;
}

int cmd_graph(const Options& opt, std::ostream& out) {
    const auto line = load_product_line(opt.dir);
    emit(opt.output, to_dot(line.model), out);
    return exit_ok;
}

} // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    Options opt;
    CLI::App app{"Analysis, variant generation and refactoring of delta-oriented architecture product lines",
                 "deltarc"};
    app.require_subcommand(1);
    app.fallthrough();
    app.add_flag("--json", opt.json, "Machine-readable results and diagnostics");

    auto dir_arg = [&](CLI::App* cmd) { cmd->add_option("dir", opt.dir, "Product-line directory")->required(); };
    auto output_opt = [&](CLI::App* cmd) { cmd->add_option("-o,--output", opt.output, "Output file (default stdout)"); };

    auto* check = app.add_subcommand("check", "Check every configuration of the family");
    dir_arg(check);
    check->add_flag("--strict", opt.strict, "Fail on warnings and report constraint conflicts");
    check->add_option("--limit", opt.limit, "Maximum orders explored per configuration");

    auto* generate = app.add_subcommand("generate", "Generate the variant of a configuration");
    dir_arg(generate);
    generate->add_option("--config", opt.config, "Configuration name")->required();
    output_opt(generate);
    generate->add_flag("--no-normalize", opt.no_normalize, "Do not materialize autoconnect links");

    auto* order = app.add_subcommand("order", "Print valid application orders");
    dir_arg(order);
    order->add_option("--config", opt.config, "Configuration name")->required();
    order->add_flag("--all", opt.all, "Print every valid order");
    order->add_option("--limit", opt.limit, "Maximum number of orders with --all");

    auto* confluence = app.add_subcommand("confluence", "Compare the variants of all valid orders");
    dir_arg(confluence);
    confluence->add_option("--config", opt.config, "Configuration name")->required();
    confluence->add_option("--limit", opt.limit, "Maximum number of orders compared");

    auto* compose = app.add_subcommand("compose", "Compose a delta sequence into one delta");
    dir_arg(compose);
    compose->add_option("--deltas", opt.deltas, "Deltas in application order")->required()->delimiter(',');
    compose->add_option("--name", opt.name, "Name of the composed delta")->required();
    auto* compose_in_place = compose->add_flag("--in-place", opt.in_place, "Rewrite the product line");
    compose->add_option("--out", opt.out_dir, "Write the refactored product line here")->excludes(compose_in_place);

    auto* merge = app.add_subcommand("merge-core", "Merge a delta sequence into the core");
    dir_arg(merge);
    merge->add_option("--deltas", opt.deltas, "Deltas in application order")->required()->delimiter(',');
    merge->add_flag("--inverse", opt.inverse, "Keep the old core derivable through an inverse delta");
    merge->add_option("--inverse-name", opt.inverse_name, "Name of the inverse delta");
    auto* merge_in_place = merge->add_flag("--in-place", opt.in_place, "Rewrite the product line");
    merge->add_option("--out", opt.out_dir, "Write the refactored product line here")->excludes(merge_in_place);

    auto* invert = app.add_subcommand("invert", "Build the inverse of a delta");
    dir_arg(invert);
    invert->add_option("--delta", opt.delta, "Delta to invert")->required();
    invert->add_option("--context", opt.context, "Configuration whose variant is the context, or 'core'")->required();
    invert->add_option("--name", opt.name, "Name of the inverse delta");
    output_opt(invert);

    auto* project = app.add_subcommand("project", "Project a variant from an annotated model");
    project->add_option("file", opt.file, "Annotated architecture")->required()->check(CLI::ExistingFile);
    project->add_option("--variant", opt.variant, "Variant name, or 'core'")->required();
    output_opt(project);

    auto* metrics = app.add_subcommand("metrics", "Size and variability metrics per product line");
    metrics->add_option("dirs", opt.dirs, "Product-line directories")->required();
    metrics->add_option("--annotative", opt.annotative, "Annotated model (single directory only)");
    metrics->add_option("--format", opt.format, "Report format")->check(CLI::IsMember({"csv", "md", "markdown", "json"}));
    output_opt(metrics);

    auto* graph = app.add_subcommand("graph", "Structure of the product line as DOT");
    dir_arg(graph);
    output_opt(graph);

    try {
        std::vector<std::string> reversed(args.rbegin(), args.rend());
        app.parse(reversed);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e, out, err);
        return code == 0 ? exit_ok : exit_usage;
    }

    try {
        if (check->parsed()) {
            return cmd_check(opt, out);
        }
        if (generate->parsed()) {
            return cmd_generate(opt, out);
        }
        if (order->parsed()) {
            return cmd_order(opt, out);
        }
        if (confluence->parsed()) {
            return cmd_confluence(opt, out);
        }
        if (compose->parsed()) {
            return cmd_compose(opt, out);
        }
        if (merge->parsed()) {
            return cmd_merge_core(opt, out);
        }
        if (invert->parsed()) {
            return cmd_invert(opt, out);
        }
        if (project->parsed()) {
            return cmd_project(opt, out);
        }
        if (metrics->parsed()) {
            return cmd_metrics(opt, out);
        }
        if (graph->parsed()) {
            return cmd_graph(opt, out);
        }
    } catch (const CLI::Error& e) {
        err << "error: " << e.what() << "\n";
        return exit_usage;
    } catch (const std::exception& e) {
        return report_error(opt, err, e);
    }
    return exit_usage;
}

} // namespace deltarc::cli
