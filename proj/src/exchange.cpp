#include "datadesc/exchange.hpp"

#include <algorithm>
#include <regex>
#include <set>

#include "datadesc/check.hpp"
#include "datadesc/yaml_tree.hpp"

namespace datadesc {

namespace attributes {

namespace {

std::string lower(std::string_view text) {
    std::string out;
    for (char c : text) out += static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
    return out;
}

} // namespace

const std::vector<Entry>& table(NodeKind kind) {
    static const std::vector<Entry> info = {
        {"title", {}},
        {"version", {}},
        {"description", {}},
        {"x-first-release", {"x-firstrelease", "x-first_release"}},
        {"x-programming-lang", {"x-programming-language", "x-programminglanguage"}},
        {"contact", {}},
        {"x-authors", {}},
        {"license", {}},
        {"x-repository", {"x-code-repository"}},
        {"x-keywords", {}},
        {"x-reference-publication", {"x-referencepublication"}},
    };
    static const std::vector<Entry> class_node = {
        {"description", {}},
        {"x-URI", {}},
        {"x-IsPartOfInterface", {}},
        {"properties", {}},
        {"required", {}},
        {"x-functions", {}},
    };
    static const std::vector<Entry> function = {
        {"description", {}},
        {"x-IsPartOfInterface", {}},
        {"properties", {"parameters"}},
        {"required", {}},
        {"return", {"returns"}},
    };
    static const std::vector<Entry> variable = {
        {"description", {}},
        {"x-URI", {}},
        {"type", {}},
        {"$ref", {}},
        {"x-FileFormat", {}},
        {"x-CharacterEncoding", {}},
        {"x-Unit", {}},
        {"x-UnitType", {}},
        {"x-DefaultValue", {"default"}},
        {"x-MinimumValue", {"minimum"}},
        {"x-ExclusiveMinimum", {"exclusiveMinimum"}},
        {"x-MaximumValue", {"maximum"}},
        {"x-ExclusiveMaximum", {"exclusiveMaximum"}},
        {"x-RegularExpression", {"pattern"}},
        {"x-ValueSet", {"enum"}},
        {"x-VariableRole", {}},
        {"properties", {}},
        {"required", {}},
        {"x-dimensions", {}},
        {"x-ExcelSheets", {}},
        {"x-NetCDFFolders", {}},
    };
    static const std::vector<Entry> dimension = {
        {"Description", {"x-Description"}},
        {"URI", {"x-URI"}},
        {"DataType", {"type", "x-DataType"}},
        {"ItemMinimumValue", {"HasMinimumValue", "x-ItemMinimumValue"}},
        {"ItemMaximumValue", {"HasMaximumValue", "x-ItemMaximumValue"}},
        {"ValueIncrement", {"x-ValueIncrement"}},
        {"ValueSet", {"x-ValueSet"}},
        {"Unit", {"x-Unit"}},
        {"UnitType", {"x-UnitType"}},
    };
    static const std::vector<Entry> unit = {
        {"Name", {}},
        {"Description", {}},
        {"URI", {}},
        {"UnitType", {}},
    };
    switch (kind) {
    case NodeKind::info: return info;
    case NodeKind::class_node: return class_node;
    case NodeKind::function: return function;
    case NodeKind::variable: return variable;
    case NodeKind::dimension: return dimension;
    case NodeKind::unit: return unit;
    }
    return variable;
}

std::optional<std::string_view> canonical_key(NodeKind kind, std::string_view key) {
    auto needle = lower(key);
    for (const auto& entry : table(kind)) {
        if (lower(entry.canonical) == needle) return entry.canonical;
        for (auto alias : entry.aliases)
            if (lower(alias) == needle) return entry.canonical;
    }
    return std::nullopt;
}

} // namespace attributes

namespace {

using attributes::NodeKind;

const std::set<std::string>& openapi_component_sections() {
    static const std::set<std::string> sections = {"responses", "parameters", "examples", "requestBodies",
                                                   "headers", "securitySchemes", "links", "callbacks",
                                                   "pathItems"};
    return sections;
}

/// Reads node-level keys through the alias table; reports duplicates and
/// unknown keys land in `extensions`.
class KeyReader {
public:
    KeyReader(NodeKind kind, const Tree& tree, std::string path, Diagnostics& diagnostics, Extensions& extensions)
        : diagnostics_(diagnostics), path_(std::move(path)) {
        if (!tree.is_object()) return;
        for (const auto& [key, value] : tree.items()) {
            auto canonical = attributes::canonical_key(kind, key);
            if (!canonical) {
                extensions.emplace(key, value);
                continue;
            }
            if (!seen_.insert(std::string(*canonical)).second) {
                warn("duplicate-attribute", key, "'" + key + "' repeats " + std::string(*canonical) + "; ignored");
                continue;
            }
            entries_.push_back({std::string(*canonical), key, &value});
        }
    }

    struct Item {
        std::string canonical;
        std::string original;
        const Tree* value;
    };

    const std::vector<Item>& items() const { return entries_; }

    void error(const std::string& code, const std::string& key, const std::string& message) {
        diagnostics_.push_back({Severity::error, code, join_path(path_, key), message});
    }
    void warn(const std::string& code, const std::string& key, const std::string& message) {
        diagnostics_.push_back({Severity::warning, code, join_path(path_, key), message});
    }

private:
    Diagnostics& diagnostics_;
    std::string path_;
    std::set<std::string> seen_;
    std::vector<Item> entries_;
};

/// Scalar text; numbers and booleans are rendered, null means absent.
std::optional<std::string> text_of(const Tree& value) {
    if (value.is_string()) return value.get<std::string>();
    if (value.is_null() || value.is_structured()) return std::nullopt;
    return Scalar::from_tree(value)->to_text();
}

/// Reads a text attribute; containers are reported and preserved as extension.
bool read_text(KeyReader& reader, const KeyReader::Item& item, std::optional<std::string>& out,
               Extensions& extensions) {
    if (item.value->is_structured()) {
        reader.error("unexpected-shape", item.original, item.canonical + " must be a scalar");
        extensions.emplace(item.original, *item.value);
        return false;
    }
    out = text_of(*item.value);
    return true;
}

std::optional<Scalar> read_scalar(KeyReader& reader, const KeyReader::Item& item, Extensions& extensions) {
    auto scalar = Scalar::from_tree(*item.value);
    if (!scalar) {
        reader.error("unexpected-shape", item.original, item.canonical + " must be a scalar");
        extensions.emplace(item.original, *item.value);
    }
    return scalar;
}

std::optional<std::vector<Scalar>> read_scalar_list(KeyReader& reader, const KeyReader::Item& item,
                                                    Extensions& extensions) {
    if (!item.value->is_array()) {
        reader.error("unexpected-shape", item.original, item.canonical + " must be a list");
        extensions.emplace(item.original, *item.value);
        return std::nullopt;
    }
    std::vector<Scalar> out;
    for (const auto& member : *item.value) {
        if (auto scalar = Scalar::from_tree(member))
            out.push_back(*scalar);
        else
            reader.error("unexpected-shape", item.original, item.canonical + " members must be scalars");
    }
    return out;
}

std::optional<bool> read_bool(KeyReader& reader, const KeyReader::Item& item, Extensions& extensions) {
    if (item.value->is_boolean()) return item.value->get<bool>();
    reader.error("unexpected-shape", item.original, item.canonical + " must be true or false");
    extensions.emplace(item.original, *item.value);
    return std::nullopt;
}

std::vector<std::string> read_name_list(KeyReader& reader, const KeyReader::Item& item, Extensions& extensions) {
    std::vector<std::string> out;
    if (!item.value->is_array()) {
        reader.error("unexpected-shape", item.original, "required must be a list of names");
        extensions.emplace(item.original, *item.value);
        return out;
    }
    for (const auto& member : *item.value) {
        if (auto text = text_of(member))
            out.push_back(*text);
        else
            reader.error("unexpected-shape", item.original, "required entries must be names");
    }
    return out;
}

DataType read_type_name(const std::string& text) {
    if (text.rfind("#/", 0) == 0) return DataType::reference(text);
    return DataType::from_name(text);
}

UnitSpec unit_from_tree(const Tree& tree, const std::string& path, Diagnostics& diagnostics) {
    UnitSpec unit;
    Extensions ignored;
    KeyReader reader(NodeKind::unit, tree, path, diagnostics, ignored);
    for (const auto& item : reader.items()) {
        std::optional<std::string>* field = nullptr;
        if (item.canonical == "Name") field = &unit.name;
        if (item.canonical == "Description") field = &unit.description;
        if (item.canonical == "URI") field = &unit.uri;
        if (item.canonical == "UnitType") field = &unit.unit_type;
        read_text(reader, item, *field, ignored);
    }
    for (const auto& [key, value] : ignored)
        diagnostics.push_back({Severity::warning, "unknown-attribute", join_path(path, key),
                               "unit attribute '" + key + "' is not recognized and was dropped"});
    return unit;
}

void read_unit_attribute(KeyReader& reader, const KeyReader::Item& item, std::optional<UnitSpec>& unit,
                         const std::string& path, Diagnostics& diagnostics, Extensions& extensions) {
    if (item.canonical == "x-UnitType" || item.canonical == "UnitType") {
        std::optional<std::string> text;
        if (read_text(reader, item, text, extensions) && text) {
            if (!unit) unit.emplace();
            unit->unit_type = text;
        }
        return;
    }
    if (item.value->is_object()) {
        auto parsed = unit_from_tree(*item.value, join_path(path, item.original), diagnostics);
        if (!unit) unit.emplace();
        if (parsed.name) unit->name = parsed.name;
        if (parsed.description) unit->description = parsed.description;
        if (parsed.uri) unit->uri = parsed.uri;
        if (parsed.unit_type) unit->unit_type = parsed.unit_type;
        return;
    }
    std::optional<std::string> text;
    if (read_text(reader, item, text, extensions) && text) {
        if (!unit) unit.emplace();
        unit->name = text;
    }
}

DimensionDescription dimension_from_tree(const Tree& tree, std::string name, const std::string& path,
                                         Diagnostics& diagnostics) {
    DimensionDescription dim;
    dim.name = std::move(name);
    if (!tree.is_object() && !tree.is_null()) {
        diagnostics.push_back({Severity::error, "unexpected-shape", path, "a dimension must be a mapping"});
        return dim;
    }
    KeyReader reader(NodeKind::dimension, tree, path, diagnostics, dim.extensions);
    for (const auto& item : reader.items()) {
        const auto& key = item.canonical;
        if (key == "Description") {
            read_text(reader, item, dim.description, dim.extensions);
        } else if (key == "URI") {
            read_text(reader, item, dim.uri, dim.extensions);
        } else if (key == "DataType") {
            std::optional<std::string> text;
            if (read_text(reader, item, text, dim.extensions) && text) dim.index_type = read_type_name(*text);
        } else if (key == "ItemMinimumValue") {
            dim.item_minimum = read_scalar(reader, item, dim.extensions);
        } else if (key == "ItemMaximumValue") {
            dim.item_maximum = read_scalar(reader, item, dim.extensions);
        } else if (key == "ValueIncrement") {
            dim.value_increment = read_scalar(reader, item, dim.extensions);
        } else if (key == "ValueSet") {
            dim.value_set = read_scalar_list(reader, item, dim.extensions);
        } else if (key == "Unit" || key == "UnitType") {
            read_unit_attribute(reader, item, dim.unit, path, diagnostics, dim.extensions);
        }
    }
    return dim;
}

template <class T, class Reader>
void read_named_map(KeyReader& reader, const KeyReader::Item& item, const std::string& section_path,
                    NamedList<T>& out, Extensions& extensions, Reader&& read_one) {
    if (item.value->is_null()) return;
    if (!item.value->is_object()) {
        reader.error("unexpected-shape", item.original, item.canonical + " must be a mapping");
        extensions.emplace(item.original, *item.value);
        return;
    }
    for (const auto& [name, child] : item.value->items())
        out.push_back(name, read_one(child, name, join_path(section_path, name)));
}

FunctionDescription function_from_tree(const Tree& tree, std::string name, const std::string& path,
                                       Diagnostics& diagnostics) {
    FunctionDescription fn;
    fn.name = std::move(name);
    if (!tree.is_object() && !tree.is_null()) {
        diagnostics.push_back({Severity::error, "unexpected-shape", path, "a function must be a mapping"});
        return fn;
    }
    KeyReader reader(NodeKind::function, tree, path, diagnostics, fn.extensions);
    for (const auto& item : reader.items()) {
        const auto& key = item.canonical;
        if (key == "description") {
            read_text(reader, item, fn.description, fn.extensions);
        } else if (key == "x-IsPartOfInterface") {
            if (auto flag = read_bool(reader, item, fn.extensions)) fn.is_part_of_interface = *flag;
        } else if (key == "properties") {
            read_named_map(reader, item, join_path(path, "properties"), fn.parameters, fn.extensions,
                           [&](const Tree& child, const std::string& child_name, const std::string& child_path) {
                               return variable_from_tree(child, child_name, child_path, diagnostics);
                           });
        } else if (key == "required") {
            fn.required = read_name_list(reader, item, fn.extensions);
        } else if (key == "return") {
            fn.return_description = variable_from_tree(*item.value, "return", join_path(path, "return"), diagnostics);
        }
    }
    return fn;
}

void put_text(Tree& tree, const char* key, const std::optional<std::string>& value) {
    if (value) tree[key] = *value;
}

void put_extensions(Tree& tree, const Extensions& extensions) {
    for (const auto& [key, value] : extensions)
        if (!tree.contains(key)) tree[key] = value;
}

Tree scalar_list(const std::vector<Scalar>& values) {
    Tree list = Tree::array();
    for (const auto& value : values) list.push_back(value.to_tree());
    return list;
}

std::string type_text(const DataType& type) {
    return type.kind() == TypeKind::class_reference ? type.detail() : type.name();
}

void write_unit(const UnitSpec& unit, Tree& owner, const char* unit_key, const char* type_key) {
    if (unit.description || unit.uri) {
        Tree spec = Tree::object();
        put_text(spec, "Name", unit.name);
        put_text(spec, "Description", unit.description);
        put_text(spec, "URI", unit.uri);
        owner[unit_key] = spec;
    } else if (unit.name) {
        owner[unit_key] = *unit.name;
    }
    if (unit.unit_type) owner[type_key] = *unit.unit_type;
}

Tree dimension_to_tree(const DimensionDescription& dim) {
    Tree tree = Tree::object();
    put_text(tree, "Description", dim.description);
    put_text(tree, "URI", dim.uri);
    if (dim.index_type.kind() != TypeKind::unspecified) tree["DataType"] = type_text(dim.index_type);
    if (dim.item_minimum) tree["ItemMinimumValue"] = dim.item_minimum->to_tree();
    if (dim.item_maximum) tree["ItemMaximumValue"] = dim.item_maximum->to_tree();
    if (dim.value_increment) tree["ValueIncrement"] = dim.value_increment->to_tree();
    if (dim.value_set) tree["ValueSet"] = scalar_list(*dim.value_set);
    if (dim.unit) write_unit(*dim.unit, tree, "Unit", "UnitType");
    put_extensions(tree, dim.extensions);
    return tree;
}

Tree names(const std::vector<std::string>& list) {
    Tree out = Tree::array();
    for (const auto& name : list) out.push_back(name);
    return out;
}

Tree function_to_tree(const FunctionDescription& fn) {
    Tree tree = Tree::object();
    put_text(tree, "description", fn.description);
    if (fn.is_part_of_interface) tree["x-IsPartOfInterface"] = true;
    if (!fn.parameters.empty()) {
        Tree params = Tree::object();
        for (const auto& [name, param] : fn.parameters) params[name] = variable_to_tree(param);
        tree["properties"] = params;
    }
    if (!fn.required.empty()) tree["required"] = names(fn.required);
    if (fn.return_description) tree["return"] = variable_to_tree(*fn.return_description);
    put_extensions(tree, fn.extensions);
    return tree;
}

Tree person_to_tree(const Person& person) {
    Tree tree = Tree::object();
    tree["name"] = person.name;
    put_text(tree, "email", person.email);
    put_text(tree, "url", person.url);
    return tree;
}

std::optional<Person> person_from_tree(const Tree& tree, const std::string& path, Diagnostics& diagnostics) {
    if (auto text = text_of(tree)) return Person{*text, std::nullopt, std::nullopt};
    if (!tree.is_object()) {
        diagnostics.push_back({Severity::error, "unexpected-shape", path, "a person must be a name or a mapping"});
        return std::nullopt;
    }
    Person person;
    for (const auto& [key, value] : tree.items()) {
        auto text = text_of(value);
        if (key == "name" && text)
            person.name = *text;
        else if (key == "email" && text)
            person.email = text;
        else if (key == "url" && text)
            person.url = text;
        else
            diagnostics.push_back({Severity::info, "field-dropped", join_path(path, key),
                                   "person attribute '" + key + "' is not kept"});
    }
    return person;
}

bool supported_openapi(const std::string& version) {
    static const std::regex pattern(R"(^3\.[01](\.[0-9]+)?$)");
    return std::regex_match(version, pattern);
}

} // namespace

VariableDescription variable_from_tree(const Tree& tree, std::string name, std::string_view path_view,
                                       Diagnostics& diagnostics) {
    VariableDescription v;
    v.name = std::move(name);
    std::string path(path_view);
    if (!tree.is_object() && !tree.is_null()) {
        diagnostics.push_back({Severity::error, "unexpected-shape", path, "a variable must be a mapping"});
        return v;
    }
    KeyReader reader(NodeKind::variable, tree, path, diagnostics, v.extensions);
    bool have_ref = false;
    for (const auto& item : reader.items()) {
        const auto& key = item.canonical;
        if (key == "description") {
            read_text(reader, item, v.description, v.extensions);
        } else if (key == "x-URI") {
            read_text(reader, item, v.concept_uri, v.extensions);
        } else if (key == "type") {
            std::optional<std::string> text;
            if (read_text(reader, item, text, v.extensions) && text) {
                if (have_ref)
                    reader.warn("type-with-reference", item.original, "type is ignored next to $ref");
                else
                    v.data_type = DataType::from_name(*text);
            }
        } else if (key == "$ref") {
            std::optional<std::string> text;
            if (read_text(reader, item, text, v.extensions) && text) {
                if (v.data_type.kind() != TypeKind::unspecified)
                    reader.warn("type-with-reference", item.original, "type is ignored next to $ref");
                v.data_type = DataType::reference(*text);
                have_ref = true;
            }
        } else if (key == "x-FileFormat") {
            read_text(reader, item, v.file_format, v.extensions);
        } else if (key == "x-CharacterEncoding") {
            read_text(reader, item, v.character_encoding, v.extensions);
        } else if (key == "x-Unit" || key == "x-UnitType") {
            read_unit_attribute(reader, item, v.unit, path, diagnostics, v.extensions);
        } else if (key == "x-DefaultValue") {
            v.default_value = read_scalar(reader, item, v.extensions);
        } else if (key == "x-MinimumValue") {
            if (auto bound = read_scalar(reader, item, v.extensions)) v.minimum = bound;
        } else if (key == "x-MaximumValue") {
            if (auto bound = read_scalar(reader, item, v.extensions)) v.maximum = bound;
        } else if (key == "x-ExclusiveMinimum" || key == "x-ExclusiveMaximum") {
            bool is_min = key == "x-ExclusiveMinimum";
            auto& bound = is_min ? v.minimum : v.maximum;
            auto& flag = is_min ? v.exclusive_minimum : v.exclusive_maximum;
            if (item.value->is_number()) {
                // OpenAPI 3.1 form: the exclusive bound itself
                auto value = *Scalar::from_tree(*item.value);
                if (bound && !(*bound == value))
                    reader.warn("bound-conflict", item.original, "numeric exclusive bound replaces the declared bound");
                bound = value;
                flag = true;
            } else if (auto parsed = read_bool(reader, item, v.extensions)) {
                flag = *parsed;
            }
        } else if (key == "x-RegularExpression") {
            read_text(reader, item, v.regular_expression, v.extensions);
        } else if (key == "x-ValueSet") {
            v.value_set = read_scalar_list(reader, item, v.extensions);
        } else if (key == "x-VariableRole") {
            std::optional<std::string> text;
            if (read_text(reader, item, text, v.extensions) && text) {
                if (auto role = parse_role(*text))
                    v.role = role;
                else {
                    reader.error("unexpected-shape", item.original, "role must be input, output or internal");
                    v.extensions.emplace(item.original, *item.value);
                }
            }
        } else if (key == "properties") {
            read_named_map(reader, item, join_path(path, "properties"), v.properties, v.extensions,
                           [&](const Tree& child, const std::string& child_name, const std::string& child_path) {
                               return variable_from_tree(child, child_name, child_path, diagnostics);
                           });
        } else if (key == "required") {
            v.required = read_name_list(reader, item, v.extensions);
        } else if (key == "x-dimensions") {
            read_named_map(reader, item, join_path(path, "x-dimensions"), v.dimensions, v.extensions,
                           [&](const Tree& child, const std::string& child_name, const std::string& child_path) {
                               return dimension_from_tree(child, child_name, child_path, diagnostics);
                           });
        } else if (key == "x-NetCDFFolders") {
            v.file_structure[FileLayout::netcdf_folders] = *item.value;
        } else if (key == "x-ExcelSheets") {
            v.file_structure[FileLayout::excel_sheets] = *item.value;
        }
    }
    return v;
}

ClassDescription class_from_tree(const Tree& tree, std::string name, std::string_view path_view,
                                 Diagnostics& diagnostics) {
    ClassDescription cls;
    cls.name = std::move(name);
    std::string path(path_view);
    if (!tree.is_object() && !tree.is_null()) {
        diagnostics.push_back({Severity::error, "unexpected-shape", path, "a class must be a mapping"});
        return cls;
    }
    KeyReader reader(NodeKind::class_node, tree, path, diagnostics, cls.extensions);
    for (const auto& item : reader.items()) {
        const auto& key = item.canonical;
        if (key == "description") {
            read_text(reader, item, cls.description, cls.extensions);
        } else if (key == "x-URI") {
            read_text(reader, item, cls.uri, cls.extensions);
        } else if (key == "x-IsPartOfInterface") {
            if (auto flag = read_bool(reader, item, cls.extensions)) cls.is_part_of_interface = *flag;
        } else if (key == "properties") {
            read_named_map(reader, item, join_path(path, "properties"), cls.properties, cls.extensions,
                           [&](const Tree& child, const std::string& child_name, const std::string& child_path) {
                               return variable_from_tree(child, child_name, child_path, diagnostics);
                           });
        } else if (key == "required") {
            cls.required = read_name_list(reader, item, cls.extensions);
        } else if (key == "x-functions") {
            read_named_map(reader, item, join_path(path, "x-functions"), cls.functions, cls.extensions,
                           [&](const Tree& child, const std::string& child_name, const std::string& child_path) {
                               return function_from_tree(child, child_name, child_path, diagnostics);
                           });
        }
    }
    return cls;
}

SoftwareInfo info_from_tree(const Tree& tree, std::string_view path_view, Diagnostics& diagnostics) {
    SoftwareInfo info;
    std::string path(path_view);
    KeyReader reader(NodeKind::info, tree, path, diagnostics, info.extensions);
    std::optional<Person> contact;
    bool have_authors = false;
    for (const auto& item : reader.items()) {
        const auto& key = item.canonical;
        std::optional<std::string> text;
        if (key == "title") {
            if (read_text(reader, item, text, info.extensions) && text) info.title = *text;
        } else if (key == "version") {
            if (read_text(reader, item, text, info.extensions) && text) info.version = *text;
        } else if (key == "description") {
            read_text(reader, item, info.description, info.extensions);
        } else if (key == "x-first-release") {
            read_text(reader, item, info.first_release, info.extensions);
        } else if (key == "x-programming-lang") {
            read_text(reader, item, info.programming_language, info.extensions);
        } else if (key == "contact") {
            contact = person_from_tree(*item.value, join_path(path, item.original), diagnostics);
        } else if (key == "x-authors") {
            if (!item.value->is_array()) {
                reader.error("unexpected-shape", item.original, "x-authors must be a list");
                info.extensions.emplace(item.original, *item.value);
                continue;
            }
            have_authors = true;
            for (std::size_t i = 0; i < item.value->size(); ++i)
                if (auto person = person_from_tree((*item.value)[i],
                                                   join_path(join_path(path, item.original), std::to_string(i)),
                                                   diagnostics))
                    info.authors.push_back(*person);
        } else if (key == "license") {
            if (item.value->is_object()) {
                for (const auto& [lkey, lvalue] : item.value->items()) {
                    if (lkey == "name" || (lkey == "url" && !item.value->contains("name")))
                        info.license = text_of(lvalue);
                    else
                        diagnostics.push_back({Severity::info, "field-dropped",
                                               join_path(join_path(path, "license"), lkey),
                                               "license attribute '" + lkey + "' is not kept"});
                }
            } else {
                read_text(reader, item, info.license, info.extensions);
            }
        } else if (key == "x-repository") {
            read_text(reader, item, info.repository, info.extensions);
        } else if (key == "x-keywords") {
            if (item.value->is_array()) {
                for (const auto& word : *item.value)
                    if (auto w = text_of(word)) info.keywords.push_back(*w);
            } else if (auto w = text_of(*item.value)) {
                info.keywords.push_back(*w);
            }
        } else if (key == "x-reference-publication") {
            read_text(reader, item, info.reference_publication, info.extensions);
        }
    }
    if (!have_authors && contact) info.authors.push_back(*contact);
    return info;
}

ParseResult document_from_tree(const Tree& tree) {
    ParseResult result;
    if (!tree.is_object() || !tree.contains("info") || !tree["info"].is_object()) {
        result.diagnostics.push_back({Severity::error, "missing-info-section", "info",
                                      "the document has no info mapping"});
        return result;
    }
    std::optional<std::string> version;
    if (tree.contains("openapi")) version = text_of(tree["openapi"]);
    if (!version || !supported_openapi(*version)) {
        result.diagnostics.push_back({Severity::error, "unsupported-openapi-version", "openapi",
                                      "openapi must be 3.0.x or 3.1.x, found '" + version.value_or("") + "'"});
        return result;
    }

    DataDescDocument doc;
    doc.openapi_version = *version;
    Diagnostics& diagnostics = result.diagnostics;
    doc.info = info_from_tree(tree["info"], "info", diagnostics);

    auto add_class = [&](const std::string& name, const Tree& body) {
        auto path = paths::class_path(name);
        if (doc.classes.count(name)) {
            diagnostics.push_back({Severity::error, "duplicate-name", path,
                                   "class '" + name + "' is declared more than once"});
            return;
        }
        doc.classes.emplace(name, class_from_tree(body, name, path, diagnostics));
    };

    for (const auto& [key, value] : tree.items()) {
        if (key == "openapi" || key == "info") continue;
        if (key != "components") {
            doc.extensions.emplace(key, value);
            continue;
        }
        if (value.is_null()) continue;
        if (!value.is_object()) {
            diagnostics.push_back({Severity::error, "unexpected-shape", "components", "components must be a mapping"});
            doc.extensions.emplace(key, value);
            continue;
        }
        for (const auto& [section, body] : value.items()) {
            if (section == "schemas") {
                if (body.is_object()) {
                    for (const auto& [name, cls] : body.items()) add_class(name, cls);
                } else if (!body.is_null()) {
                    diagnostics.push_back({Severity::error, "unexpected-shape", "components/schemas",
                                           "schemas must be a mapping"});
                    doc.component_extensions.emplace(section, body);
                }
            } else if (section.rfind("x-", 0) == 0 || openapi_component_sections().count(section)) {
                doc.component_extensions.emplace(section, body);
            } else {
                add_class(section, body); // classes written directly under components
            }
        }
    }

    auto findings = check_document(doc);
    diagnostics.insert(diagnostics.end(), findings.begin(), findings.end());
    sort_by_path(diagnostics);
    result.document = std::move(doc);
    return result;
}

ParseResult parse_document(std::string_view text) {
    auto loaded = load_yaml(text);
    if (!loaded.tree) {
        ParseResult result;
        result.diagnostics.push_back(*loaded.error);
        return result;
    }
    return document_from_tree(*loaded.tree);
}

Tree variable_to_tree(const VariableDescription& v) {
    Tree tree = Tree::object();
    put_text(tree, "description", v.description);
    put_text(tree, "x-URI", v.concept_uri);
    if (v.data_type.kind() == TypeKind::class_reference)
        tree["$ref"] = v.data_type.detail();
    else if (v.data_type.kind() != TypeKind::unspecified)
        tree["type"] = v.data_type.name();
    put_text(tree, "x-FileFormat", v.file_format);
    put_text(tree, "x-CharacterEncoding", v.character_encoding);
    if (v.unit) write_unit(*v.unit, tree, "x-Unit", "x-UnitType");
    if (v.default_value) tree["x-DefaultValue"] = v.default_value->to_tree();
    if (v.minimum) tree["x-MinimumValue"] = v.minimum->to_tree();
    if (v.exclusive_minimum) tree["x-ExclusiveMinimum"] = true;
    if (v.maximum) tree["x-MaximumValue"] = v.maximum->to_tree();
    if (v.exclusive_maximum) tree["x-ExclusiveMaximum"] = true;
    put_text(tree, "x-RegularExpression", v.regular_expression);
    if (v.value_set) tree["x-ValueSet"] = scalar_list(*v.value_set);
    if (v.role) tree["x-VariableRole"] = std::string(to_string(*v.role));
    if (!v.properties.empty()) {
        Tree props = Tree::object();
        for (const auto& [name, child] : v.properties) props[name] = variable_to_tree(child);
        tree["properties"] = props;
    }
    if (!v.required.empty()) tree["required"] = names(v.required);
    if (!v.dimensions.empty()) {
        Tree dims = Tree::object();
        for (const auto& [name, dim] : v.dimensions) dims[name] = dimension_to_tree(dim);
        tree["x-dimensions"] = dims;
    }
    if (auto it = v.file_structure.find(FileLayout::excel_sheets); it != v.file_structure.end())
        tree["x-ExcelSheets"] = it->second;
    if (auto it = v.file_structure.find(FileLayout::netcdf_folders); it != v.file_structure.end())
        tree["x-NetCDFFolders"] = it->second;
    put_extensions(tree, v.extensions);
    return tree;
}

Tree class_to_tree(const ClassDescription& cls) {
    Tree tree = Tree::object();
    put_text(tree, "description", cls.description);
    put_text(tree, "x-URI", cls.uri);
    if (cls.is_part_of_interface) tree["x-IsPartOfInterface"] = true;
    if (!cls.properties.empty()) {
        Tree props = Tree::object();
        for (const auto& [name, prop] : cls.properties) props[name] = variable_to_tree(prop);
        tree["properties"] = props;
    }
    if (!cls.required.empty()) tree["required"] = names(cls.required);
    if (!cls.functions.empty()) {
        Tree fns = Tree::object();
        for (const auto& [name, fn] : cls.functions) fns[name] = function_to_tree(fn);
        tree["x-functions"] = fns;
    }
    put_extensions(tree, cls.extensions);
    return tree;
}

Tree info_to_tree(const SoftwareInfo& info) {
    Tree tree = Tree::object();
    tree["title"] = info.title;
    tree["version"] = info.version;
    put_text(tree, "description", info.description);
    put_text(tree, "x-first-release", info.first_release);
    put_text(tree, "x-programming-lang", info.programming_language);
    if (!info.authors.empty()) tree["contact"] = person_to_tree(info.authors.front());
    if (info.authors.size() > 1) {
        Tree list = Tree::array();
        for (const auto& person : info.authors) list.push_back(person_to_tree(person));
        tree["x-authors"] = list;
    }
    if (info.license) tree["license"] = Tree{{"name", *info.license}};
    put_text(tree, "x-repository", info.repository);
    if (!info.keywords.empty()) tree["x-keywords"] = names(info.keywords);
    put_text(tree, "x-reference-publication", info.reference_publication);
    put_extensions(tree, info.extensions);
    return tree;
}

Tree document_to_tree(const DataDescDocument& doc) {
    Tree tree = Tree::object();
    tree["openapi"] = doc.openapi_version;
    tree["info"] = info_to_tree(doc.info);
    Tree components = Tree::object();
    if (!doc.classes.empty()) {
        Tree schemas = Tree::object();
        for (const auto& [name, cls] : doc.classes) schemas[name] = class_to_tree(cls);
        components["schemas"] = schemas;
    }
    put_extensions(components, doc.component_extensions);
    tree["components"] = components;
    put_extensions(tree, doc.extensions);
    return tree;
}

std::string emit_document(const DataDescDocument& doc) {
    auto findings = check_document(doc);
    if (has_errors(findings)) {
        std::string first;
        for (const auto& d : findings)
            if (d.severity == Severity::error) {
                first = format(d);
                break;
            }
        throw Error("invalid-document", "cannot emit a document with errors: " + first);
    }
    return emit_yaml(document_to_tree(doc));
}

} // namespace datadesc
