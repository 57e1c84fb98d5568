#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>

#include <CLI11.hpp>

#include "datadesc/check.hpp"
#include "datadesc/codemeta.hpp"
#include "datadesc/exchange.hpp"
#include "datadesc/instance.hpp"
#include "datadesc/merge.hpp"
#include "datadesc/publish.hpp"
#include "datadesc/source.hpp"
#include "datadesc/yaml_tree.hpp"

namespace fs = std::filesystem;
using namespace datadesc;

namespace {

constexpr int exit_invalid = 1;
constexpr int exit_usage = 2;

std::string read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw Error("io", "cannot read " + path);
    std::ostringstream buffer;
    buffer << in.rdbuf();
    return buffer.str();
}

void write_output(const std::string& path, const std::string& text) {
    if (path.empty() || path == "-") {
        std::cout << text;
        return;
    }
    if (auto parent = fs::path(path).parent_path(); !parent.empty()) fs::create_directories(parent);
    std::ofstream out(path, std::ios::binary);
    if (!out) throw Error("io", "cannot write " + path);
    out << text;
}

void print(const Diagnostics& diagnostics, std::ostream& out) {
    for (const auto& d : diagnostics) out << format(d) << "\n";
}

/// JSON when the file says so, YAML otherwise (YAML is a JSON superset).
Tree read_tree(const std::string& path) {
    auto text = read_file(path);
    auto loaded = load_yaml(text);
    if (!loaded.tree) throw Error(loaded.error->code, path + ": " + loaded.error->message);
    return *loaded.tree;
}

DataDescDocument load_document(const std::string& path) {
    auto parsed = parse_document(read_file(path));
    if (!parsed.document || has_errors(parsed.diagnostics)) {
        print(parsed.diagnostics, std::cerr);
        throw Error("invalid-document", path + " has errors");
    }
    return std::move(*parsed.document);
}

/// Accepts `info:` wrapped YAML, a bare info map, or a CodeMeta record.
SoftwareInfo load_info(const std::string& path) {
    auto tree = read_tree(path);
    Diagnostics diagnostics;
    SoftwareInfo info;
    if (tree.is_object() && (tree.contains("@context") || (tree.contains("name") && !tree.contains("title")))) {
        auto imported = codemeta_to_info(CodeMetaRecord::from_json(tree));
        diagnostics = std::move(imported.diagnostics);
        info = std::move(imported.info);
    } else {
        const Tree& node = tree.is_object() && tree.contains("info") ? tree["info"] : tree;
        if (!node.is_object()) throw Error("invalid-info", path + " holds no info mapping");
        info = info_from_tree(node, "info", diagnostics);
    }
    print(diagnostics, std::cerr);
    if (has_errors(diagnostics)) throw Error("invalid-info", path + " has errors");
    return info;
}

int run_check(const std::string& path) {
    auto parsed = parse_document(read_file(path));
    print(parsed.diagnostics, std::cout);
    return parsed.document && !has_errors(parsed.diagnostics) ? 0 : exit_invalid;
}

int run_extract(const std::vector<std::string>& sources, const std::string& info_path, const std::string& out) {
    std::vector<source::AnnotatedInterfaceTree> trees;
    bool fatal = false;
    for (const auto& path : sources) {
        auto parsed = source::parse_source({path, read_file(path)});
        print(parsed.diagnostics, std::cerr);
        fatal = fatal || has_errors(parsed.diagnostics);
        trees.push_back(std::move(parsed.tree));
    }
    SoftwareInfo info;
    if (!info_path.empty()) {
        info = load_info(info_path);
    } else {
        info.title = trees.empty() ? "untitled" : trees.front().module;
        info.version = "0.0.0";
    }
    auto result = source::extract_interface(trees, info);
    print(result.diagnostics, std::cerr);
    if (has_errors(result.diagnostics)) return exit_invalid;
    write_output(out, emit_document(result.document));
    return fatal ? exit_invalid : 0;
}

int run_merge(const std::vector<std::string>& paths, const std::string& policy_name, const std::string& out) {
    auto policy = parse_conflict_policy(policy_name);
    if (!policy) throw Error("usage", "--on-conflict must be error, first or last");
    std::vector<DataDescDocument> docs;
    for (const auto& path : paths) docs.push_back(load_document(path));
    auto report = merge(docs, MergePolicy{*policy});
    print(report.conflicts, std::cerr);
    if (!report.merged) return exit_invalid;
    write_output(out, emit_document(*report.merged));
    return 0;
}

int run_validate(const std::string& doc_path, const std::string& target, const std::string& data_path,
                 bool defaults) {
    auto doc = load_document(doc_path);
    auto value = DataValue::from_tree(read_tree(data_path));

    std::vector<std::string> parts;
    std::stringstream stream(target);
    for (std::string part; std::getline(stream, part, '.');) parts.push_back(part);
    if (parts.empty() || parts.size() > 3) throw Error("usage", "--target must be Class[.function][.param]");
    const auto* cls = doc.find_class(parts[0]);
    if (!cls) throw Error("unknown-target", "no class named " + parts[0]);

    ValidationOptions options;
    options.document = &doc;
    options.apply_defaults = defaults;
    ValidationResult result;
    if (parts.size() == 1) {
        result = validate_record(value, *cls, options);
    } else if (const auto* fn = cls->functions.find(parts[1])) {
        if (parts.size() == 2) {
            result = validate_record(value, *fn, options);
        } else if (parts[2] == "return" && fn->return_description) {
            result = validate_value(value, *fn->return_description, options);
        } else if (const auto* param = fn->parameters.find(parts[2])) {
            result = validate_value(value, *param, options);
        } else {
            throw Error("unknown-target", parts[1] + " has no parameter " + parts[2]);
        }
    } else if (const auto* property = cls->properties.find(parts[1]); property && parts.size() == 2) {
        result = validate_value(value, *property, options);
    } else {
        throw Error("unknown-target", parts[0] + " has no function or property " + parts[1]);
    }
    print(result.diagnostics, std::cout);
    return result.valid ? 0 : exit_invalid;
}

int run_export(const std::string& doc_path, const std::string& target_name, const std::string& out_dir) {
    auto target = parse_export_target(target_name);
    if (!target) throw Error("usage", "unknown export target " + target_name);
    auto doc = load_document(doc_path);
    for (const auto& [relative, content] : export_files(doc, *target)) {
        auto path = fs::path(out_dir) / relative;
        write_output(path.string(), content);
        std::cout << path.string() << "\n";
    }
    return 0;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"Interface metadata toolchain: extract, check, merge, validate and publish"};
    app.require_subcommand(1);

    std::string doc_path, out, info_path, policy = "error", target, data_path;
    std::vector<std::string> inputs;
    bool defaults = false;

    auto* check = app.add_subcommand("check", "Parse a document and list its diagnostics");
    check->add_option("document", doc_path)->required()->check(CLI::ExistingFile);

    auto* extract = app.add_subcommand("extract", "Build a document from annotated source files");
    extract->add_option("sources", inputs)->required()->check(CLI::ExistingFile);
    extract->add_option("--info", info_path, "info section (YAML) or CodeMeta JSON")->check(CLI::ExistingFile);
    extract->add_option("--out", out, "output file, stdout when omitted");

    auto* merge_cmd = app.add_subcommand("merge", "Deep-merge documents");
    merge_cmd->add_option("documents", inputs)->required()->check(CLI::ExistingFile);
    merge_cmd->add_option("--on-conflict", policy, "error | first | last")->capture_default_str();
    merge_cmd->add_option("--out", out, "output file, stdout when omitted");

    auto* validate = app.add_subcommand("validate-data", "Check data values against a description");
    validate->add_option("document", doc_path)->required()->check(CLI::ExistingFile);
    validate->add_option("--target", target, "Class[.function][.param]")->required();
    validate->add_option("--data", data_path, "JSON or YAML values")->required()->check(CLI::ExistingFile);
    validate->add_flag("--apply-defaults", defaults, "required members with defaults may be omitted");

    auto* export_cmd = app.add_subcommand("export", "Write publication artifacts");
    export_cmd->add_option("document", doc_path)->required()->check(CLI::ExistingFile);
    export_cmd->add_option("--target", target, "docs-md | docs-html | codemeta | package | registry")->required();
    export_cmd->add_option("--out", out, "output directory")->required();

    CLI11_PARSE(app, argc, argv);

    try {
        if (*check) return run_check(doc_path);
        if (*extract) return run_extract(inputs, info_path, out);
        if (*merge_cmd) return run_merge(inputs, policy, out);
        if (*validate) return run_validate(doc_path, target, data_path, defaults);
        if (*export_cmd) return run_export(doc_path, target, out);
    } catch (const Error& e) {
        std::cerr << "error " << e.code() << " " << e.what() << "\n";
        return e.code() == "invalid-document" || e.code() == "invalid-input" ? exit_invalid : exit_usage;
    } catch (const std::exception& e) {
        std::cerr << "error " << e.what() << "\n";
        return exit_usage;
    }
    return exit_usage;
}
