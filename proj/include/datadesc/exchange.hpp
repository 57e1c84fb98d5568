#pragma once

#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "datadesc/diagnostic.hpp"
#include "datadesc/model.hpp"

namespace datadesc {

/// Serialized key spellings. Input keys match case-insensitively and through
/// aliases (OpenAPI-native spellings); output always uses the canonical form.
namespace attributes {

enum class NodeKind { info, class_node, function, variable, dimension, unit };

struct Entry {
    std::string_view canonical;
    std::vector<std::string_view> aliases;
};

const std::vector<Entry>& table(NodeKind kind);

/// Canonical spelling for an input key, or nullopt for unknown keys.
std::optional<std::string_view> canonical_key(NodeKind kind, std::string_view key);

} // namespace attributes

struct ParseResult {
    std::optional<DataDescDocument> document; ///< absent after a fatal error
    Diagnostics diagnostics;

    bool ok() const { return document.has_value() && !has_errors(diagnostics); }
};

/// YAML (or JSON) exchange text to model. Fatal codes: yaml-syntax,
/// missing-info-section, unsupported-openapi-version. Reading problems and all
/// check_document findings are appended to the diagnostics.
ParseResult parse_document(std::string_view text);

/// Same as parse_document, from an already loaded tree.
ParseResult document_from_tree(const Tree& tree);

/// Canonical YAML. Throws Error("invalid-document") if check_document reports
/// errors.
std::string emit_document(const DataDescDocument& doc);

/// Canonical tree form used by emission and merging.
Tree document_to_tree(const DataDescDocument& doc);
Tree info_to_tree(const SoftwareInfo& info);
Tree class_to_tree(const ClassDescription& cls);
Tree variable_to_tree(const VariableDescription& variable);

SoftwareInfo info_from_tree(const Tree& tree, std::string_view path, Diagnostics& diagnostics);
VariableDescription variable_from_tree(const Tree& tree, std::string name, std::string_view path,
                                       Diagnostics& diagnostics);
ClassDescription class_from_tree(const Tree& tree, std::string name, std::string_view path,
                                 Diagnostics& diagnostics);

} // namespace datadesc
