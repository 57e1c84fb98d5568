#pragma once

#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "datadesc/named_list.hpp"
#include "datadesc/scalar.hpp"

namespace datadesc {

/// Unknown keys of one node, kept as raw subtrees and emitted alphabetically.
using Extensions = std::map<std::string, Tree>;

/// "#/components/schemas/<Name>"
class ReferencePath {
public:
    static constexpr std::string_view prefix = "#/components/schemas/";

    /// nullopt when the text does not have the reference shape.
    static std::optional<ReferencePath> parse(std::string_view text);
    static ReferencePath to_class(std::string_view class_name);

    const std::string& text() const { return text_; }
    std::string_view target() const { return std::string_view(text_).substr(prefix.size()); }

    bool operator==(const ReferencePath&) const = default;

private:
    explicit ReferencePath(std::string text) : text_(std::move(text)) {}
    std::string text_;
};

enum class TypeKind {
    unspecified, // no type given; every facet is admissible
    string,
    integer,
    number,
    boolean,
    object,
    array,
    class_reference,
    file,
    opaque,
};

class DataType {
public:
    DataType() = default;
    DataType(TypeKind kind) : kind_(kind) {}

    static DataType reference(const ReferencePath& path);
    /// Keeps the text even when it is not a well-formed reference, so that
    /// check_document can report it.
    static DataType reference(std::string text);
    static DataType opaque(std::string text);
    /// Maps a serialized `type` value; unknown names become opaque.
    static DataType from_name(std::string_view name);

    TypeKind kind() const { return kind_; }
    /// Reference text for class_reference, the original name for opaque.
    const std::string& detail() const { return detail_; }
    std::optional<ReferencePath> reference_path() const;

    /// Serialized `type` text; empty for unspecified and class_reference.
    std::string name() const;

    bool is_numeric() const { return kind_ == TypeKind::integer || kind_ == TypeKind::number; }

    bool operator==(const DataType&) const = default;

private:
    TypeKind kind_ = TypeKind::unspecified;
    std::string detail_;
};

enum class VariableRole { input, output, internal };

std::string_view to_string(VariableRole role);
std::optional<VariableRole> parse_role(std::string_view text);

struct UnitSpec {
    std::optional<std::string> name;
    std::optional<std::string> description;
    std::optional<std::string> uri;
    std::optional<std::string> unit_type;

    bool empty() const { return !name && !description && !uri && !unit_type; }
    bool operator==(const UnitSpec&) const = default;
};

struct DimensionDescription {
    std::string name;
    std::optional<std::string> description;
    std::optional<std::string> uri;
    DataType index_type;
    std::optional<Scalar> item_minimum;
    std::optional<Scalar> item_maximum;
    std::optional<std::vector<Scalar>> value_set;
    std::optional<Scalar> value_increment;
    std::optional<UnitSpec> unit;
    Extensions extensions;

    bool operator==(const DimensionDescription&) const = default;
};

enum class FileLayout { netcdf_folders, excel_sheets };

struct VariableDescription {
    // content
    std::string name;
    std::optional<std::string> description;
    std::optional<std::string> concept_uri;
    std::optional<UnitSpec> unit;

    // format
    DataType data_type;
    std::optional<std::string> file_format;
    std::optional<std::string> character_encoding;
    std::map<FileLayout, Tree> file_structure;

    // value
    std::optional<Scalar> minimum;
    bool exclusive_minimum = false;
    std::optional<Scalar> maximum;
    bool exclusive_maximum = false;
    std::optional<std::string> regular_expression;
    std::optional<std::vector<Scalar>> value_set;
    std::optional<Scalar> default_value;

    // structure
    NamedList<VariableDescription> properties;
    std::vector<std::string> required; ///< names among `properties`
    NamedList<DimensionDescription> dimensions;
    /// Explicit role; absent means the context default (see effective_role).
    std::optional<VariableRole> role;

    Extensions extensions;

    bool operator==(const VariableDescription&) const = default;
};

enum class RoleContext { class_property, function_parameter, return_value };

/// input for parameters, internal for class properties, output for returns.
VariableRole effective_role(const VariableDescription& variable, RoleContext context);

struct FunctionDescription {
    std::string name;
    std::optional<std::string> description;
    bool is_part_of_interface = false;
    NamedList<VariableDescription> parameters;
    std::vector<std::string> required;
    std::optional<VariableDescription> return_description;
    Extensions extensions;

    bool operator==(const FunctionDescription&) const = default;
};

struct ClassDescription {
    std::string name;
    std::optional<std::string> description;
    std::optional<std::string> uri;
    bool is_part_of_interface = false;
    NamedList<VariableDescription> properties;
    std::vector<std::string> required;
    NamedList<FunctionDescription> functions;
    Extensions extensions;

    bool operator==(const ClassDescription&) const = default;
};

struct Person {
    std::string name;
    std::optional<std::string> email;
    std::optional<std::string> url;

    bool operator==(const Person&) const = default;
};

struct SoftwareInfo {
    std::string title;
    std::string version;
    std::optional<std::string> description;
    std::optional<std::string> first_release; ///< ISO-8601 calendar date
    std::optional<std::string> programming_language;
    std::vector<Person> authors;
    std::optional<std::string> license;
    std::optional<std::string> repository;
    std::vector<std::string> keywords;
    std::optional<std::string> reference_publication;
    Extensions extensions;

    bool operator==(const SoftwareInfo&) const = default;
};

struct DataDescDocument {
    std::string openapi_version = "3.0.0";
    SoftwareInfo info;
    std::map<std::string, ClassDescription> classes;
    /// Other `components` sections (responses, parameters, x-*) kept verbatim.
    Extensions component_extensions;
    /// Unknown root keys (paths, servers, x-*) kept verbatim.
    Extensions extensions;

    const ClassDescription* find_class(std::string_view name) const;

    bool operator==(const DataDescDocument&) const = default;
};

/// Path helpers shared by every module that reports diagnostics.
namespace paths {
std::string class_path(std::string_view class_name);
std::string property_path(std::string_view owner, std::string_view name);
std::string function_path(std::string_view class_name, std::string_view function_name);
std::string parameter_path(std::string_view function, std::string_view name);
std::string return_path(std::string_view function);
std::string dimension_path(std::string_view variable, std::string_view name);
} // namespace paths

} // namespace datadesc
