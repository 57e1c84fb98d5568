#pragma once

#include <string>
#include <string_view>
#include <vector>

#include "datadesc/diagnostic.hpp"
#include "datadesc/model.hpp"

namespace datadesc {

/// All invariant violations of the document, sorted by path. Empty errors iff
/// every structural rule holds; warnings flag questionable but legal input
/// (required-with-default, reference-cycle).
Diagnostics check_document(const DataDescDocument& doc);

/// Invariants of a single variable subtree. With a document, class references
/// are also resolved.
Diagnostics check_variable(const VariableDescription& variable, std::string_view path,
                           const DataDescDocument* doc = nullptr);

/// Target class of a reference. Throws Error with code malformed-reference or
/// unresolved-reference.
const ClassDescription& resolve(const DataDescDocument& doc, std::string_view reference);

struct ReferenceWalk {
    std::vector<std::string> visited; ///< class names in first-visit order
    Diagnostics diagnostics;          ///< reference-cycle / unresolved-reference
};

/// Follows class references through properties depth-first. Revisiting a class
/// that is still on the walk stack reports a cycle instead of recursing.
ReferenceWalk expand_references(const DataDescDocument& doc, const ReferencePath& start);

} // namespace datadesc
