#include "datadesc/instance.hpp"

#include <algorithm>
#include <cmath>
#include <set>

#include "datadesc/check.hpp"
#include "datadesc/constraints.hpp"

namespace datadesc {

bool Dimensioned::operator==(const Dimensioned& other) const {
    return axes == other.axes && entries == other.entries;
}

bool DataValue::operator==(const DataValue& other) const { return content == other.content; }

const DataValue* DataValue::field(std::string_view name) const {
    if (!is_record()) return nullptr;
    for (const auto& f : record())
        if (f.name == name) return &f.value;
    return nullptr;
}

DataValue DataValue::from_tree(const Tree& tree) {
    if (auto scalar = Scalar::from_tree(tree)) return *scalar;
    if (tree.is_array()) {
        Dimensioned dims;
        for (std::size_t i = 0; i < tree.size(); ++i)
            dims.entries.push_back({{Scalar(static_cast<std::int64_t>(i))}, from_tree(tree[i])});
        return dims;
    }
    if (!tree.is_object()) throw Error("data-shape", "unsupported JSON value");
    if (tree.contains("$axes") || tree.contains("$entries")) {
        Dimensioned dims;
        if (tree.contains("$axes")) {
            if (!tree["$axes"].is_array()) throw Error("data-shape", "$axes must be a list of names");
            for (const auto& axis : tree["$axes"]) {
                if (!axis.is_string()) throw Error("data-shape", "$axes must be a list of names");
                dims.axes.push_back(axis.get<std::string>());
            }
        }
        const Tree empty = Tree::array();
        const Tree& entries = tree.contains("$entries") ? tree["$entries"] : empty;
        if (!entries.is_array()) throw Error("data-shape", "$entries must be a list");
        for (const auto& entry : entries) {
            if (!entry.is_object() || !entry.contains("index") || !entry.contains("value"))
                throw Error("data-shape", "each entry needs index and value");
            DimensionEntry out;
            const auto& index = entry["index"];
            if (index.is_array()) {
                for (const auto& component : index) {
                    auto scalar = Scalar::from_tree(component);
                    if (!scalar) throw Error("data-shape", "index components must be scalars");
                    out.index.push_back(*scalar);
                }
            } else if (auto scalar = Scalar::from_tree(index)) {
                out.index.push_back(*scalar);
            } else {
                throw Error("data-shape", "index components must be scalars");
            }
            out.value = from_tree(entry["value"]);
            dims.entries.push_back(std::move(out));
        }
        return dims;
    }
    Record record;
    for (const auto& [key, value] : tree.items()) record.push_back({key, from_tree(value)});
    return record;
}

Tree DataValue::to_tree() const {
    if (is_scalar()) return scalar().to_tree();
    if (is_record()) {
        Tree out = Tree::object();
        for (const auto& f : record())
            if (!out.contains(f.name)) out[f.name] = f.value.to_tree();
        return out;
    }
    const auto& dims = dimensioned();
    bool positional = dims.axes.empty();
    for (std::size_t i = 0; positional && i < dims.entries.size(); ++i) {
        const auto& index = dims.entries[i].index;
        positional = index.size() == 1 && index[0].is_integer() && index[0].as_integer() == static_cast<std::int64_t>(i);
    }
    if (positional) {
        Tree out = Tree::array();
        for (const auto& entry : dims.entries) out.push_back(entry.value.to_tree());
        return out;
    }
    Tree out = Tree::object();
    out["$axes"] = dims.axes;
    Tree entries = Tree::array();
    for (const auto& entry : dims.entries) {
        Tree index = Tree::array();
        for (const auto& component : entry.index) index.push_back(component.to_tree());
        entries.push_back(Tree{{"index", index}, {"value", entry.value.to_tree()}});
    }
    out["$entries"] = entries;
    return out;
}

namespace {

void add_error(ValidationResult& result, std::string code, std::string path, std::string message) {
    result.valid = false;
    result.diagnostics.push_back({Severity::error, std::move(code), std::move(path), std::move(message)});
}

void absorb(ValidationResult& into, ValidationResult from) {
    into.valid = into.valid && from.valid;
    into.diagnostics.insert(into.diagnostics.end(), std::make_move_iterator(from.diagnostics.begin()),
                            std::make_move_iterator(from.diagnostics.end()));
}

std::string index_text(const std::vector<Scalar>& index) {
    std::string out;
    for (std::size_t i = 0; i < index.size(); ++i) out += (i ? "," : "") + index[i].to_text();
    return out;
}

std::string kind_of(const DataValue& value) {
    if (value.is_record()) return "a record";
    if (value.is_dimensioned()) return "a dimensioned value";
    return "the scalar " + value.scalar().to_text();
}

ValidationResult validate_members(const DataValue& value, const NamedList<VariableDescription>& members,
                                  const std::vector<std::string>& required, const ValidationOptions& options,
                                  const std::string& path) {
    ValidationResult result;
    if (!value.is_record()) {
        add_error(result, "type", path, "expected a record, found " + kind_of(value));
        return result;
    }
    std::set<std::string> seen;
    for (const auto& f : value.record()) {
        auto field_path = join_path(path, f.name);
        if (!seen.insert(f.name).second) {
            add_error(result, "type", field_path, "field '" + f.name + "' appears more than once");
            continue;
        }
        const auto* member = members.find(f.name);
        if (!member) {
            result.diagnostics.push_back({Severity::warning, "unknown-property", field_path,
                                          "'" + f.name + "' is not a declared property"});
            continue;
        }
        absorb(result, validate_value(f.value, *member, options, field_path));
    }
    for (const auto& name : required) {
        if (seen.count(name)) continue;
        const auto* member = members.find(name);
        if (options.apply_defaults && member && member->default_value) continue;
        add_error(result, "missing-required", join_path(path, name), "required property '" + name + "' is missing");
    }
    return result;
}

/// Description of a single cell of a dimensioned variable.
VariableDescription element_of(const VariableDescription& description) {
    VariableDescription element = description;
    element.dimensions = {};
    if (element.data_type.kind() == TypeKind::array) element.data_type = DataType();
    return element;
}

bool on_increment_grid(const Scalar& value, const Scalar& base, const Scalar& increment) {
    if (value.is_integer() && base.is_integer() && increment.is_integer()) {
        auto step = increment.as_integer();
        if (step == 0) return value.as_integer() == base.as_integer();
        return (value.as_integer() - base.as_integer()) % step == 0;
    }
    double step = increment.as_double();
    if (step == 0) return value.as_double() == base.as_double();
    double k = (value.as_double() - base.as_double()) / step;
    return std::fabs(k - std::round(k)) <= 1e-9 * std::max(1.0, std::fabs(k));
}

void check_index_component(const Scalar& component, const DimensionDescription& dim, const std::string& path,
                           ValidationResult& result) {
    auto describe = "index " + component.to_text() + " on axis '" + dim.name + "'";
    if (!matches_type(component, dim.index_type))
        add_error(result, "dimension-index", path, describe + " is not of type " + dim.index_type.name());
    if (component.is_number()) {
        if (dim.item_minimum && dim.item_minimum->is_number() && compare_numbers(component, *dim.item_minimum) < 0)
            add_error(result, "dimension-index", path, describe + " is below " + dim.item_minimum->to_text());
        if (dim.item_maximum && dim.item_maximum->is_number() && compare_numbers(component, *dim.item_maximum) > 0)
            add_error(result, "dimension-index", path, describe + " is above " + dim.item_maximum->to_text());
        if (dim.value_increment && dim.value_increment->is_number()) {
            Scalar base = dim.item_minimum && dim.item_minimum->is_number() ? *dim.item_minimum : Scalar(0);
            if (!on_increment_grid(component, base, *dim.value_increment))
                add_error(result, "dimension-index", path,
                          describe + " is not on the grid " + base.to_text() + " + k*" +
                              dim.value_increment->to_text());
        }
    }
    if (dim.value_set && std::find(dim.value_set->begin(), dim.value_set->end(), component) == dim.value_set->end())
        add_error(result, "dimension-index", path, describe + " is not in the axis value set");
}

} // namespace

ValidationResult validate_dimensions(const DataValue& value, const NamedList<DimensionDescription>& dimensions,
                                     std::string_view path_view) {
    ValidationResult result;
    std::string path(path_view);
    if (!value.is_dimensioned()) {
        add_error(result, "type", path, "expected values indexed by dimensions, found " + kind_of(value));
        return result;
    }
    const auto& dims = value.dimensioned();
    if (!dims.axes.empty()) {
        if (dims.axes.size() != dimensions.size()) {
            add_error(result, "dimension-arity", path,
                      "value has " + std::to_string(dims.axes.size()) + " axes, the description declares " +
                          std::to_string(dimensions.size()));
        } else {
            std::size_t i = 0;
            for (const auto& [name, dim] : dimensions) {
                if (dims.axes[i] != name)
                    add_error(result, "dimension-axis", path,
                              "axis " + std::to_string(i) + " is '" + dims.axes[i] + "', expected '" + name + "'");
                ++i;
            }
        }
    }
    std::set<std::string> seen;
    for (const auto& entry : dims.entries) {
        auto entry_path = join_path(path, index_text(entry.index));
        if (entry.index.size() != dimensions.size()) {
            add_error(result, "dimension-arity", entry_path,
                      "index has " + std::to_string(entry.index.size()) + " components, expected " +
                          std::to_string(dimensions.size()));
            continue;
        }
        std::size_t i = 0;
        for (const auto& [name, dim] : dimensions) check_index_component(entry.index[i++], dim, entry_path, result);
        // tuples are compared textually after numeric normalization
        std::string key;
        for (const auto& component : entry.index)
            key += (component.is_number() ? "n:" + format_real(component.as_double()) : "s:" + component.to_text()) + '\x1f';
        if (!seen.insert(key).second)
            add_error(result, "dimension-index", entry_path, "index tuple appears more than once");
    }
    return result;
}

ValidationResult validate_value(const DataValue& value, const VariableDescription& description,
                                const ValidationOptions& options, std::string_view path_view) {
    std::string path(path_view);
    ValidationResult result;

    if (!description.dimensions.empty()) {
        absorb(result, validate_dimensions(value, description.dimensions, path));
        if (value.is_dimensioned()) {
            auto element = element_of(description);
            for (const auto& entry : value.dimensioned().entries)
                absorb(result, validate_value(entry.value, element, options, join_path(path, index_text(entry.index))));
        }
        return result;
    }

    const auto& type = description.data_type;
    if (type.kind() == TypeKind::class_reference) {
        if (!options.document) return result; // nothing to check against
        const ClassDescription* cls = nullptr;
        try {
            cls = &resolve(*options.document, type.detail());
        } catch (const Error& e) {
            add_error(result, e.code(), path, e.what());
            return result;
        }
        absorb(result, validate_record(value, *cls, options, path));
        return result;
    }

    if (!description.properties.empty()) {
        absorb(result, validate_record(value, description, options, path));
        return result;
    }

    if (value.is_record()) {
        if (type.kind() != TypeKind::object && type.kind() != TypeKind::unspecified && type.kind() != TypeKind::opaque)
            add_error(result, "type", path, "expected " + type.name() + ", found a record");
        return result;
    }
    if (value.is_dimensioned()) {
        if (type.kind() == TypeKind::array || type.kind() == TypeKind::unspecified || type.kind() == TypeKind::opaque) {
            auto element = element_of(description);
            element.data_type = DataType();
            for (const auto& entry : value.dimensioned().entries)
                absorb(result, validate_value(entry.value, element, options, join_path(path, index_text(entry.index))));
        } else {
            add_error(result, "type", path, "expected " + type.name() + ", found a list");
        }
        return result;
    }

    if (type.kind() == TypeKind::array || type.kind() == TypeKind::object) {
        add_error(result, "type", path, "expected " + type.name() + ", found " + kind_of(value));
        return result;
    }
    for (auto& violation : scalar_violations(value.scalar(), description))
        add_error(result, std::move(violation.code), path, std::move(violation.message));
    return result;
}

ValidationResult validate_record(const DataValue& record, const ClassDescription& cls,
                                 const ValidationOptions& options, std::string_view path) {
    return validate_members(record, cls.properties, cls.required, options, std::string(path));
}

ValidationResult validate_record(const DataValue& record, const VariableDescription& grouping,
                                 const ValidationOptions& options, std::string_view path) {
    return validate_members(record, grouping.properties, grouping.required, options, std::string(path));
}

ValidationResult validate_record(const DataValue& record, const FunctionDescription& function,
                                 const ValidationOptions& options, std::string_view path) {
    return validate_members(record, function.parameters, function.required, options, std::string(path));
}

DefaultsResult apply_defaults(const DataValue& record, const ClassDescription& cls, const ValidationOptions& options) {
    DefaultsResult out;
    if (!record.is_record()) {
        out.record = record;
        out.validation = validate_record(record, cls, options);
        return out;
    }
    Record completed = record.record();
    for (const auto& [name, property] : cls.properties) {
        if (!property.default_value || record.field(name)) continue;
        completed.push_back({name, DataValue(*property.default_value)});
    }
    out.record = DataValue(std::move(completed));
    out.validation = validate_record(out.record, cls, options);
    return out;
}

} // namespace datadesc
