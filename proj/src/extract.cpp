#include <algorithm>

#include "datadesc/check.hpp"
#include "datadesc/exchange.hpp"
#include "datadesc/source.hpp"

namespace datadesc::source {

namespace {

std::string trim(std::string_view text) {
    auto first = text.find_first_not_of(" \t\r\n");
    if (first == std::string_view::npos) return "";
    auto last = text.find_last_not_of(" \t\r\n");
    return std::string(text.substr(first, last - first + 1));
}

std::string strip_quotes(std::string text) {
    text = trim(text);
    if (text.size() >= 2 && (text.front() == '"' || text.front() == '\'') && text.back() == text.front())
        text = trim(text.substr(1, text.size() - 2));
    return text;
}

/// "Optional[X]" / "Union[X, None]" / "X | None" -> "X".
std::string unwrap_optional(std::string hint) {
    for (std::string_view prefix : {"typing.", "t."})
        if (hint.rfind(prefix, 0) == 0) hint = hint.substr(prefix.size());
    if (hint.rfind("Optional[", 0) == 0 && hint.back() == ']') return unwrap_optional(trim(hint.substr(9, hint.size() - 10)));
    auto drop_none = [](const std::string& body, char sep) -> std::optional<std::string> {
        int depth = 0;
        std::vector<std::string> parts;
        std::string part;
        for (char c : body) {
            if (c == '[' || c == '(') ++depth;
            if (c == ']' || c == ')') --depth;
            if (c == sep && depth == 0) {
                parts.push_back(trim(part));
                part.clear();
            } else {
                part += c;
            }
        }
        parts.push_back(trim(part));
        if (parts.size() != 2) return std::nullopt;
        if (parts[0] == "None") return parts[1];
        if (parts[1] == "None") return parts[0];
        return std::nullopt;
    };
    if (hint.rfind("Union[", 0) == 0 && hint.back() == ']')
        if (auto inner = drop_none(hint.substr(6, hint.size() - 7), ',')) return unwrap_optional(*inner);
    if (hint.find('|') != std::string::npos)
        if (auto inner = drop_none(hint, '|')) return unwrap_optional(*inner);
    return hint;
}

std::string head_of(const std::string& hint) {
    auto bracket = hint.find('[');
    return trim(bracket == std::string::npos ? hint : hint.substr(0, bracket));
}

std::string lower(std::string_view text) {
    std::string out;
    for (char c : text) out += static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
    return out;
}

using attributes::NodeKind;

/// Maps a decorator key (x-name without the prefix, any case) to a canonical key.
std::optional<std::string> decorator_key(NodeKind kind, const std::string& key) {
    if (auto canonical = attributes::canonical_key(kind, "x-" + key)) return std::string(*canonical);
    if (auto canonical = attributes::canonical_key(kind, key)) return std::string(*canonical);
    return std::nullopt;
}

class Extractor {
public:
    Extractor(const std::vector<AnnotatedInterfaceTree>& trees, const SoftwareInfo& info) : trees_(trees) {
        doc_.info = info;
        for (const auto& tree : trees) {
            for (const auto& cls : tree.classes) {
                if (declared_.count(cls.name))
                    throw Error("duplicate-class", "class '" + cls.name + "' is defined more than once");
                declared_.insert(cls.name);
            }
        }
        for (const auto& name : declared_) {
            ClassDescription stub;
            stub.name = name;
            stubs_.classes.emplace(name, stub);
        }
    }

    ExtractResult run() {
        for (const auto& tree : trees_) {
            for (const auto& cls : tree.classes) doc_.classes.emplace(cls.name, build_class(cls));
            if (!tree.functions.empty()) {
                auto name = tree.module;
                if (declared_.count(name) || doc_.classes.count(name)) name += "_functions";
                ClassDescription holder;
                holder.name = name;
                auto path = paths::class_path(name);
                for (const auto& fn : tree.functions) add_function(holder, fn, path);
                if (auto existing = doc_.classes.find(name); existing != doc_.classes.end()) {
                    for (auto& [fn_name, fn] : holder.functions) existing->second.functions.push_back(fn_name, fn);
                } else {
                    doc_.classes.emplace(name, std::move(holder));
                }
            }
        }
        ExtractResult result{std::move(doc_), std::move(diagnostics_)};
        for (auto& d : check_document(result.document)) result.diagnostics.push_back(std::move(d));
        return result;
    }

private:
    void warn(std::string code, std::string path, std::string message) {
        diagnostics_.push_back({Severity::warning, std::move(code), std::move(path), std::move(message)});
    }

    /// Applies node-level decorator keys to `node`, reporting overrides.
    void overlay(Tree& node, const Tree& metadata, NodeKind kind, const std::string& path, std::optional<bool>* required) {
        for (const auto& [key, value] : metadata.items()) {
            auto folded = lower(key);
            if (folded == "required") {
                if (required && value.is_boolean())
                    *required = value.get<bool>();
                else
                    warn("metadata-shape", path, "Required must be True or False here");
                continue;
            }
            if (folded == "datatype" && kind == NodeKind::variable) {
                if (!value.is_string()) {
                    warn("metadata-shape", path, "DataType must be a string");
                    continue;
                }
                auto text = value.get<std::string>();
                bool reference = text.rfind("#/", 0) == 0 || declared_.count(text);
                if (reference && text.rfind("#/", 0) != 0) text = ReferencePath::to_class(text).text();
                const char* target = reference ? "$ref" : "type";
                const char* other = reference ? "type" : "$ref";
                auto previous = node.contains(target) ? node[target] : node.contains(other) ? node[other] : Tree();
                if (!previous.is_null() && previous != Tree(text))
                    warn("decorator-override", path, "DataType " + text + " replaces the hinted " + previous.dump());
                node.erase(other);
                node[target] = text;
                continue;
            }
            auto canonical = decorator_key(kind, key);
            if (!canonical) {
                warn("unknown-attribute", path, "decorator key '" + key + "' is not a known attribute; kept as x-" + key);
                node[key.rfind("x-", 0) == 0 ? key : "x-" + key] = value;
                continue;
            }
            if (node.contains(*canonical) && node[*canonical] != value)
                warn("decorator-override", join_path(path, *canonical),
                     "decorator value " + value.dump() + " replaces " + node[*canonical].dump());
            node[*canonical] = value;
        }
    }

    /// Type and default from source; nullopt hint means "not hinted".
    Tree hinted_tree(const std::string& hint, const std::optional<DefaultNode>& default_value, const std::string& path) {
        Tree node = Tree::object();
        if (!hint.empty()) {
            auto mapping = map_type_hint(hint, declared_);
            if (mapping.warning) {
                auto warning = *mapping.warning;
                warning.path = path;
                diagnostics_.push_back(std::move(warning));
            }
            const auto& type = mapping.type;
            if (type.kind() == TypeKind::class_reference)
                node["$ref"] = type.detail();
            else if (type.kind() != TypeKind::unspecified)
                node["type"] = type.name();
        }
        if (default_value) {
            if (default_value->dynamic()) {
                warn("dynamic-default", path, "default '" + default_value->text + "' is not a literal and is not recorded");
            } else if (default_value->literal->is_structured()) {
                warn("non-scalar-default", path, "default " + default_value->text + " is not a single value and is not recorded");
            } else {
                node["x-DefaultValue"] = *default_value->literal;
            }
        }
        return node;
    }

    /// Reads `node` back as a variable; if the result breaks an invariant,
    /// falls back to less metadata so the document stays valid.
    VariableDescription finish_variable(const std::string& name, std::vector<Tree> attempts, const std::string& path) {
        for (std::size_t i = 0; i < attempts.size(); ++i) {
            Diagnostics reader;
            auto variable = variable_from_tree(attempts[i], name, path, reader);
            auto findings = check_variable(variable, path, &stubs_);
            bool last = i + 1 == attempts.size();
            if (!has_errors(reader) && !has_errors(findings)) {
                for (auto& d : reader) diagnostics_.push_back(std::move(d));
                return variable;
            }
            if (last) {
                VariableDescription bare;
                bare.name = name;
                return bare;
            }
            const auto& all = has_errors(reader) ? reader : findings;
            auto first = std::find_if(all.begin(), all.end(), [](const Diagnostic& d) { return d.severity == Severity::error; });
            warn("extraction-fallback", path, "metadata dropped because " + first->code + ": " + first->message);
        }
        return {};
    }

    VariableDescription member(const std::string& name, const std::string& hint,
                               const std::optional<DefaultNode>& default_value, const Tree& metadata,
                               const std::string& path, std::optional<bool>& required) {
        auto base = hinted_tree(hint, default_value, path);
        auto full = base;
        overlay(full, metadata, NodeKind::variable, path, &required);
        auto without_default = full;
        without_default.erase("x-DefaultValue");
        auto hint_only = base;
        hint_only.erase("x-DefaultValue");
        return finish_variable(name, {full, without_default, hint_only, Tree::object()}, path);
    }

    bool decorated(const std::vector<DecoratorNode>& decorators) const {
        return std::any_of(decorators.begin(), decorators.end(), [](const DecoratorNode& d) { return d.is_datadesc(); });
    }

    std::optional<std::string> first_line(const std::string& docstring) const {
        std::size_t start = 0;
        while (start <= docstring.size()) {
            auto end = docstring.find('\n', start);
            auto line = trim(std::string_view(docstring).substr(start, end == std::string::npos ? std::string::npos : end - start));
            if (!line.empty()) return line;
            if (end == std::string::npos) break;
            start = end + 1;
        }
        return std::nullopt;
    }

    Tree header_tree(const std::string& docstring, bool marked, const Tree& metadata, NodeKind kind,
                     const std::string& path) {
        Tree node = Tree::object();
        if (auto line = first_line(docstring)) node["description"] = *line;
        if (marked) node["x-IsPartOfInterface"] = true;
        overlay(node, metadata, kind, path, nullptr);
        return node;
    }

    ClassDescription build_class(const ClassNode& node) {
        auto path = paths::class_path(node.name);
        Diagnostics reader;
        auto header = header_tree(node.docstring, decorated(node.decorators), node.metadata, NodeKind::class_node, path);
        auto cls = class_from_tree(header, node.name, path, reader);
        demote(reader);
        for (const auto& attribute : node.attributes) {
            auto member_path = paths::property_path(path, attribute.name);
            std::optional<bool> required;
            auto variable = member(attribute.name, attribute.hint, attribute.default_value, attribute.metadata,
                                   member_path, required);
            bool is_required = required.value_or(!attribute.default_value.has_value());
            cls.properties.push_back(attribute.name, std::move(variable));
            if (is_required) cls.required.push_back(attribute.name);
        }
        for (const auto& method : node.methods) add_function(cls, method, path);
        return cls;
    }

    void add_function(ClassDescription& cls, const FunctionNode& node, const std::string& class_path) {
        auto path = paths::function_path(class_path.substr(std::string("components/schemas/").size()), node.name);
        Diagnostics reader;
        auto header = header_tree(node.docstring, decorated(node.decorators), node.metadata, NodeKind::function, path);
        header.erase("properties");
        header.erase("required");
        header.erase("return");
        FunctionDescription fn;
        {
            Tree wrapper = Tree::object();
            wrapper["x-functions"] = Tree{{node.name, header}};
            auto holder = class_from_tree(wrapper, "holder", "", reader);
            fn = holder.functions.begin()->second;
        }
        demote(reader);
        for (const auto& param : node.parameters) {
            auto param_path = paths::parameter_path(path, param.name);
            if (param.kind == ParameterKind::var_positional || param.kind == ParameterKind::var_keyword) {
                diagnostics_.push_back({Severity::info, "unsupported-construct", param_path,
                                        "variadic parameter '" + param.name + "' is not described"});
                continue;
            }
            std::optional<bool> required;
            auto variable = member(param.name, param.hint, param.default_value, param.metadata, param_path, required);
            if (variable.role && *variable.role != VariableRole::input) {
                warn("extraction-fallback", param_path, "parameters always have role input; VariableRole dropped");
                variable.role.reset();
            }
            bool is_required = required.value_or(!param.default_value.has_value());
            fn.parameters.push_back(param.name, std::move(variable));
            if (is_required) fn.required.push_back(param.name);
        }
        auto hint = trim(node.return_hint);
        bool has_return = (!hint.empty() && hint != "None") || !node.return_metadata.empty();
        if (has_return) {
            std::optional<bool> ignored;
            fn.return_description = member("return", hint == "None" ? "" : hint, std::nullopt, node.return_metadata,
                                           paths::return_path(path), ignored);
            if (fn.return_description->role && *fn.return_description->role != VariableRole::output) {
                warn("extraction-fallback", paths::return_path(path), "return values always have role output; VariableRole dropped");
                fn.return_description->role.reset();
            }
        }
        if (cls.functions.contains(node.name)) {
            warn("duplicate-member", path, "function '" + node.name + "' already exists; the first is kept");
            return;
        }
        cls.functions.push_back(node.name, std::move(fn));
    }

    /// Header shape problems come from decorator input; keep them as warnings.
    void demote(Diagnostics& reader) {
        for (auto& d : reader) {
            if (d.severity == Severity::error) d.severity = Severity::warning;
            diagnostics_.push_back(std::move(d));
        }
    }

    const std::vector<AnnotatedInterfaceTree>& trees_;
    std::set<std::string> declared_;
    DataDescDocument doc_;
    DataDescDocument stubs_;
    Diagnostics diagnostics_;
};

} // namespace

TypeMapping map_type_hint(std::string_view raw, const std::set<std::string>& declared_classes) {
    auto hint = unwrap_optional(strip_quotes(std::string(raw)));
    if (hint.empty()) return {DataType(), std::nullopt};
    if (declared_classes.count(hint)) return {DataType::reference(ReferencePath::to_class(hint)), std::nullopt};
    auto head = head_of(hint);
    if (head == hint) {
        if (hint == "int") return {DataType(TypeKind::integer), std::nullopt};
        if (hint == "float") return {DataType(TypeKind::number), std::nullopt};
        if (hint == "str") return {DataType(TypeKind::string), std::nullopt};
        if (hint == "bool") return {DataType(TypeKind::boolean), std::nullopt};
    }
    if (head == "list" || head == "List") return {DataType(TypeKind::array), std::nullopt};
    if (head == "dict" || head == "Dict") return {DataType(TypeKind::object), std::nullopt};
    // a dotted name whose last part is a declared class
    auto dot = hint.rfind('.');
    if (head == hint && dot != std::string::npos && declared_classes.count(hint.substr(dot + 1)))
        return {DataType::reference(ReferencePath::to_class(hint.substr(dot + 1))), std::nullopt};
    return {DataType::opaque(hint), Diagnostic{Severity::warning, "opaque-type", "",
                                               "type hint '" + hint + "' has no schema type; kept as opaque"}};
}

ExtractResult extract_interface(const std::vector<AnnotatedInterfaceTree>& trees, const SoftwareInfo& info) {
    return Extractor(trees, info).run();
}

} // namespace datadesc::source
