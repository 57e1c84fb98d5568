#pragma once

#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "datadesc/model.hpp"

namespace datadesc {

/// One failed value constraint; `code` is one of type, range, exclusive-bound,
/// regex, value-set, file-format.
struct ConstraintViolation {
    std::string code;
    std::string message;
};

bool matches_type(const Scalar& value, const DataType& type);

/// Every applicable value-facet check of `variable` against a scalar. Checks do
/// not short-circuit: k independent violations give k entries. Checks whose
/// operand kind does not apply (a range on a string value) are skipped.
std::vector<ConstraintViolation> scalar_violations(const Scalar& value,
                                                   const VariableDescription& variable);

/// Regular expressions are restricted to the portable subset: classes,
/// anchors, quantifiers, alternation and grouping. Returns a reason when the
/// pattern falls outside it or does not compile.
std::optional<std::string> regex_dialect_error(std::string_view pattern);

/// Anchored match of the whole text, with or without explicit ^...$.
bool regex_full_match(std::string_view pattern, std::string_view text);

/// Known file-format tags (NetCDF, XLSX, XML, JSON, CSV, TXT, PDF, JPG, HTML).
bool is_known_file_format(std::string_view tag);
/// nullopt for unknown tags, else whether the path extension fits the tag.
std::optional<bool> file_format_matches_extension(std::string_view tag, std::string_view path);
/// nullopt for unknown tags, else whether the leading bytes fit the tag.
std::optional<bool> file_format_matches_content(std::string_view tag, std::string_view bytes);

} // namespace datadesc
