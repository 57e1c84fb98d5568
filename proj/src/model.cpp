#include "datadesc/model.hpp"

#include "datadesc/diagnostic.hpp"

namespace datadesc {

std::optional<ReferencePath> ReferencePath::parse(std::string_view text) {
    if (text.size() <= prefix.size() || text.substr(0, prefix.size()) != prefix) return std::nullopt;
    auto name = text.substr(prefix.size());
    if (name.find('/') != std::string_view::npos) return std::nullopt;
    return ReferencePath(std::string(text));
}

ReferencePath ReferencePath::to_class(std::string_view class_name) {
    return ReferencePath(std::string(prefix) + std::string(class_name));
}

DataType DataType::reference(const ReferencePath& path) {
    DataType type(TypeKind::class_reference);
    type.detail_ = path.text();
    return type;
}

DataType DataType::reference(std::string text) {
    DataType type(TypeKind::class_reference);
    type.detail_ = std::move(text);
    return type;
}

DataType DataType::opaque(std::string text) {
    DataType type(TypeKind::opaque);
    type.detail_ = std::move(text);
    return type;
}

DataType DataType::from_name(std::string_view name) {
    if (name == "string") return TypeKind::string;
    if (name == "integer") return TypeKind::integer;
    if (name == "number") return TypeKind::number;
    if (name == "boolean") return TypeKind::boolean;
    if (name == "object") return TypeKind::object;
    if (name == "array") return TypeKind::array;
    if (name == "file") return TypeKind::file;
    return opaque(std::string(name));
}

std::optional<ReferencePath> DataType::reference_path() const {
    if (kind_ != TypeKind::class_reference) return std::nullopt;
    return ReferencePath::parse(detail_);
}

std::string DataType::name() const {
    switch (kind_) {
    case TypeKind::unspecified:
    case TypeKind::class_reference: return {};
    case TypeKind::string: return "string";
    case TypeKind::integer: return "integer";
    case TypeKind::number: return "number";
    case TypeKind::boolean: return "boolean";
    case TypeKind::object: return "object";
    case TypeKind::array: return "array";
    case TypeKind::file: return "file";
    case TypeKind::opaque: return detail_;
    }
    return {};
}

std::string_view to_string(VariableRole role) {
    switch (role) {
    case VariableRole::input: return "input";
    case VariableRole::output: return "output";
    case VariableRole::internal: return "internal";
    }
    return "internal";
}

std::optional<VariableRole> parse_role(std::string_view text) {
    std::string lower;
    for (char c : text) lower += static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
    if (lower == "input") return VariableRole::input;
    if (lower == "output") return VariableRole::output;
    if (lower == "internal") return VariableRole::internal;
    return std::nullopt;
}

VariableRole effective_role(const VariableDescription& variable, RoleContext context) {
    if (variable.role) return *variable.role;
    switch (context) {
    case RoleContext::function_parameter: return VariableRole::input;
    case RoleContext::return_value: return VariableRole::output;
    case RoleContext::class_property: return VariableRole::internal;
    }
    return VariableRole::internal;
}

const ClassDescription* DataDescDocument::find_class(std::string_view name) const {
    auto it = classes.find(std::string(name));
    return it == classes.end() ? nullptr : &it->second;
}

namespace paths {

std::string class_path(std::string_view class_name) {
    return join_path("components/schemas", class_name);
}
std::string property_path(std::string_view owner, std::string_view name) {
    return join_path(join_path(owner, "properties"), name);
}
std::string function_path(std::string_view class_name, std::string_view function_name) {
    return join_path(join_path(class_path(class_name), "x-functions"), function_name);
}
std::string parameter_path(std::string_view function, std::string_view name) {
    return property_path(function, name);
}
std::string return_path(std::string_view function) { return join_path(function, "return"); }
std::string dimension_path(std::string_view variable, std::string_view name) {
    return join_path(join_path(variable, "x-dimensions"), name);
}

} // namespace paths

} // namespace datadesc
