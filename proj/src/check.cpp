#include "datadesc/check.hpp"

#include <algorithm>
#include <functional>
#include <map>
#include <set>

#include "datadesc/constraints.hpp"

namespace datadesc {

namespace {

void add(Diagnostics& out, Severity severity, std::string code, std::string path, std::string message) {
    out.push_back({severity, std::move(code), std::move(path), std::move(message)});
}

bool range_applicable(const DataType& type) {
    switch (type.kind()) {
    case TypeKind::integer:
    case TypeKind::number:
    case TypeKind::unspecified:
    case TypeKind::opaque: return true;
    default: return false;
    }
}

bool regex_applicable(const DataType& type) {
    switch (type.kind()) {
    case TypeKind::string:
    case TypeKind::file:
    case TypeKind::unspecified:
    case TypeKind::opaque: return true;
    default: return false;
    }
}

bool grouping_type(const DataType& type) {
    switch (type.kind()) {
    case TypeKind::object:
    case TypeKind::unspecified:
    case TypeKind::opaque: return true;
    default: return false;
    }
}

bool dimensioned_type(const DataType& type) {
    switch (type.kind()) {
    case TypeKind::array:
    case TypeKind::object:
    case TypeKind::unspecified:
    case TypeKind::opaque: return true;
    default: return false;
    }
}

bool is_leap(int year) { return (year % 4 == 0 && year % 100 != 0) || year % 400 == 0; }

bool is_iso_date(std::string_view text) {
    if (text.size() != 10 || text[4] != '-' || text[7] != '-') return false;
    for (std::size_t i : {0, 1, 2, 3, 5, 6, 8, 9})
        if (!std::isdigit(static_cast<unsigned char>(text[i]))) return false;
    int year = std::stoi(std::string(text.substr(0, 4)));
    int month = std::stoi(std::string(text.substr(5, 2)));
    int day = std::stoi(std::string(text.substr(8, 2)));
    if (month < 1 || month > 12 || day < 1) return false;
    static constexpr int days[] = {31, 28, 31, 30, 31, 30, 31, 31, 30, 31, 30, 31};
    int limit = days[month - 1] + (month == 2 && is_leap(year) ? 1 : 0);
    return day <= limit;
}

void check_type_reference(const DataType& type, const std::string& path, const DataDescDocument* doc,
                          Diagnostics& out) {
    if (type.kind() != TypeKind::class_reference) return;
    auto ref = type.reference_path();
    if (!ref) {
        add(out, Severity::error, "malformed-reference", path,
            "reference '" + type.detail() + "' is not of the form #/components/schemas/<Name>");
        return;
    }
    if (doc && !doc->find_class(ref->target()))
        add(out, Severity::error, "unresolved-reference", path,
            "reference '" + ref->text() + "' does not name a class of this document");
}

template <class T>
void check_unique_names(const NamedList<T>& list, const std::string& owner, std::string_view section,
                        Diagnostics& out) {
    std::set<std::string> seen;
    for (const auto& [name, item] : list) {
        auto path = join_path(join_path(owner, section), name);
        if (name.empty()) add(out, Severity::error, "empty-name", path, "names must be non-empty");
        if (!seen.insert(name).second)
            add(out, Severity::error, "duplicate-name", path, "'" + name + "' is declared more than once");
        if (item.name != name)
            add(out, Severity::error, "name-mismatch", path,
                "entry '" + name + "' carries the name '" + item.name + "'");
    }
}

void check_required(const std::vector<std::string>& required, const NamedList<VariableDescription>& members,
                    const std::string& owner, std::string_view unknown_code, Diagnostics& out) {
    std::set<std::string> seen;
    for (const auto& name : required) {
        const auto* member = members.find(name);
        if (!member) {
            add(out, Severity::error, std::string(unknown_code), join_path(owner, "required"),
                "required entry '" + name + "' names no declared member");
            continue;
        }
        if (!seen.insert(name).second)
            add(out, Severity::warning, "required-duplicate", join_path(owner, "required"),
                "'" + name + "' is listed twice");
        if (member->default_value)
            add(out, Severity::warning, "required-with-default", paths::property_path(owner, name),
                "'" + name + "' is required and also declares a default value");
    }
}

void check_unit(const std::optional<UnitSpec>& unit, const std::string& path, Diagnostics& out) {
    if (unit && unit->empty()) add(out, Severity::error, "unit-empty", path, "unit declares no field");
}

void check_value_list(const std::vector<Scalar>& values, const std::string& path, Diagnostics& out) {
    for (std::size_t i = 0; i < values.size(); ++i)
        for (std::size_t j = 0; j < i; ++j)
            if (values[i] == values[j]) {
                add(out, Severity::error, "value-set-duplicate", path,
                    "value " + values[i].to_text() + " appears more than once");
                break;
            }
}

void check_dimension(const DimensionDescription& dim, const std::string& path, const DataDescDocument* doc,
                     Diagnostics& out) {
    check_type_reference(dim.index_type, path, doc, out);
    check_unit(dim.unit, path, out);
    if (dim.item_minimum && dim.item_maximum && dim.item_minimum->is_number() && dim.item_maximum->is_number() &&
        compare_numbers(*dim.item_minimum, *dim.item_maximum) > 0)
        add(out, Severity::error, "dimension-range-inverted", path, "ItemMinimumValue exceeds ItemMaximumValue");
    if (dim.value_increment) {
        if (!dim.value_increment->is_number() || dim.value_increment->as_double() <= 0)
            add(out, Severity::error, "dimension-increment", path, "ValueIncrement must be a positive number");
    }
    if (dim.value_set) check_value_list(*dim.value_set, path, out);
}

void check_variable_impl(const VariableDescription& v, const std::string& path, const DataDescDocument* doc,
                         Diagnostics& out) {
    check_type_reference(v.data_type, path, doc, out);
    check_unit(v.unit, path, out);

    for (const auto* bound : {&v.minimum, &v.maximum}) {
        if (*bound && !(*bound)->is_number())
            add(out, Severity::error, "bound-not-numeric", path, "range bounds must be numbers");
    }
    if ((v.minimum || v.maximum) && !range_applicable(v.data_type))
        add(out, Severity::error, "range-not-applicable", path,
            "numeric range on a variable of type " + v.data_type.name());
    if (v.minimum && v.maximum && v.minimum->is_number() && v.maximum->is_number()) {
        int cmp = compare_numbers(*v.minimum, *v.maximum);
        if (cmp > 0)
            add(out, Severity::error, "range-inverted", path, "minimum exceeds maximum");
        else if (cmp == 0 && (v.exclusive_minimum || v.exclusive_maximum))
            add(out, Severity::error, "range-inverted", path, "equal bounds cannot be exclusive");
    }
    if (v.regular_expression) {
        if (!regex_applicable(v.data_type))
            add(out, Severity::error, "regex-not-applicable", path,
                "regular expression on a variable of type " + v.data_type.name());
        if (auto reason = regex_dialect_error(*v.regular_expression))
            add(out, Severity::error, "regex-invalid", path, *reason);
    }
    if (v.value_set) {
        check_value_list(*v.value_set, path, out);
        VariableDescription without_set = v;
        without_set.value_set.reset();
        without_set.default_value.reset();
        for (const auto& member : *v.value_set) {
            for (const auto& violation : scalar_violations(member, without_set))
                add(out, Severity::error, "value-set-violation", path,
                    "value-set member " + member.to_text() + ": " + violation.message);
        }
    }
    if (v.default_value && !v.default_value->is_null()) {
        for (const auto& violation : scalar_violations(*v.default_value, v))
            add(out, Severity::error, "default-violation", path,
                "default " + v.default_value->to_text() + ": " + violation.message);
    }
    if (!v.properties.empty() && !grouping_type(v.data_type))
        add(out, Severity::error, "properties-not-applicable", path,
            "properties on a variable of type " + (v.data_type.kind() == TypeKind::class_reference
                                                       ? std::string("reference")
                                                       : v.data_type.name()));
    if (!v.dimensions.empty() && !dimensioned_type(v.data_type))
        add(out, Severity::error, "dimensions-not-applicable", path,
            "dimensions on a variable of type " + (v.data_type.kind() == TypeKind::class_reference
                                                       ? std::string("reference")
                                                       : v.data_type.name()));

    check_unique_names(v.properties, path, "properties", out);
    check_required(v.required, v.properties, path, "required-unknown-property", out);
    for (const auto& [name, child] : v.properties)
        check_variable_impl(child, paths::property_path(path, name), doc, out);

    check_unique_names(v.dimensions, path, "x-dimensions", out);
    for (const auto& [name, dim] : v.dimensions) check_dimension(dim, paths::dimension_path(path, name), doc, out);
}

void check_function(const FunctionDescription& fn, const std::string& path, const DataDescDocument* doc,
                    Diagnostics& out) {
    check_unique_names(fn.parameters, path, "properties", out);
    check_required(fn.required, fn.parameters, path, "required-unknown-parameter", out);
    for (const auto& [name, param] : fn.parameters) {
        auto param_path = paths::parameter_path(path, name);
        if (effective_role(param, RoleContext::function_parameter) != VariableRole::input)
            add(out, Severity::error, "parameter-role", param_path,
                "function parameters must have role input, not " +
                    std::string(to_string(*param.role)));
        check_variable_impl(param, param_path, doc, out);
    }
    if (fn.return_description) {
        auto ret_path = paths::return_path(path);
        if (effective_role(*fn.return_description, RoleContext::return_value) != VariableRole::output)
            add(out, Severity::error, "return-role", ret_path,
                "return descriptions must have role output, not " +
                    std::string(to_string(*fn.return_description->role)));
        check_variable_impl(*fn.return_description, ret_path, doc, out);
    }
}

void check_class(const ClassDescription& cls, const std::string& key, const DataDescDocument* doc,
                 Diagnostics& out) {
    auto path = paths::class_path(key);
    if (key.empty()) add(out, Severity::error, "empty-name", path, "class names must be non-empty");
    if (cls.name != key)
        add(out, Severity::error, "name-mismatch", path, "entry '" + key + "' carries the name '" + cls.name + "'");
    check_unique_names(cls.properties, path, "properties", out);
    check_required(cls.required, cls.properties, path, "required-unknown-property", out);
    for (const auto& [name, prop] : cls.properties)
        check_variable_impl(prop, paths::property_path(path, name), doc, out);
    check_unique_names(cls.functions, path, "x-functions", out);
    for (const auto& [name, fn] : cls.functions) check_function(fn, join_path(join_path(path, "x-functions"), name), doc, out);
}

/// Class references reachable through a variable's structure, with the path of
/// the node that holds each reference.
void collect_references(const VariableDescription& v, const std::string& path,
                        std::vector<std::pair<std::string, std::string>>& refs) {
    if (auto ref = v.data_type.reference_path()) refs.emplace_back(std::string(ref->target()), path);
    for (const auto& [name, child] : v.properties) collect_references(child, paths::property_path(path, name), refs);
}

std::vector<std::pair<std::string, std::string>> class_edges(const ClassDescription& cls, const std::string& key) {
    std::vector<std::pair<std::string, std::string>> refs;
    auto path = paths::class_path(key);
    for (const auto& [name, prop] : cls.properties) collect_references(prop, paths::property_path(path, name), refs);
    return refs;
}

} // namespace

Diagnostics check_variable(const VariableDescription& variable, std::string_view path, const DataDescDocument* doc) {
    Diagnostics out;
    check_variable_impl(variable, std::string(path), doc, out);
    sort_by_path(out);
    return out;
}

Diagnostics check_document(const DataDescDocument& doc) {
    Diagnostics out;
    if (doc.info.title.empty()) add(out, Severity::error, "missing-title", "info/title", "info.title is mandatory");
    if (doc.info.version.empty())
        add(out, Severity::error, "missing-version", "info/version", "info.version is mandatory");
    if (doc.info.first_release && !is_iso_date(*doc.info.first_release))
        add(out, Severity::error, "invalid-date", "info/x-first-release",
            "'" + *doc.info.first_release + "' is not an ISO-8601 calendar date");
    for (std::size_t i = 0; i < doc.info.authors.size(); ++i)
        if (doc.info.authors[i].name.empty())
            add(out, Severity::error, "empty-name", "info/contact", "author " + std::to_string(i) + " has no name");

    for (const auto& [key, cls] : doc.classes) check_class(cls, key, &doc, out);

    // reference cycles: one warning per back edge of a DFS in class-name order
    std::map<std::string, int> state; // 0 new, 1 on stack, 2 done
    std::function<void(const std::string&)> visit = [&](const std::string& name) {
        state[name] = 1;
        const auto* cls = doc.find_class(name);
        for (const auto& [target, path] : class_edges(*cls, name)) {
            if (!doc.find_class(target)) continue;
            int s = state[target];
            if (s == 1)
                add(out, Severity::warning, "reference-cycle", path,
                    "reference to '" + target + "' closes a cycle through '" + name + "'");
            else if (s == 0)
                visit(target);
        }
        state[name] = 2;
    };
    for (const auto& [key, cls] : doc.classes)
        if (state[key] == 0) visit(key);

    sort_by_path(out);
    return out;
}

const ClassDescription& resolve(const DataDescDocument& doc, std::string_view reference) {
    auto ref = ReferencePath::parse(reference);
    if (!ref)
        throw Error("malformed-reference",
                    "'" + std::string(reference) + "' is not of the form #/components/schemas/<Name>");
    const auto* cls = doc.find_class(ref->target());
    if (!cls) throw Error("unresolved-reference", "no class named '" + std::string(ref->target()) + "'");
    return *cls;
}

ReferenceWalk expand_references(const DataDescDocument& doc, const ReferencePath& start) {
    ReferenceWalk walk;
    std::set<std::string> on_stack;
    std::set<std::string> done;
    std::function<void(const std::string&, const std::string&)> visit = [&](const std::string& name,
                                                                             const std::string& from) {
        const auto* cls = doc.find_class(name);
        if (!cls) {
            add(walk.diagnostics, Severity::error, "unresolved-reference", from, "no class named '" + name + "'");
            return;
        }
        if (on_stack.count(name)) {
            add(walk.diagnostics, Severity::warning, "reference-cycle", from,
                "class '" + name + "' is reached again while expanding itself");
            return;
        }
        if (done.count(name)) return;
        on_stack.insert(name);
        walk.visited.push_back(name);
        for (const auto& [target, path] : class_edges(*cls, name)) visit(target, path);
        on_stack.erase(name);
        done.insert(name);
    };
    visit(std::string(start.target()), "");
    return walk;
}

} // namespace datadesc
