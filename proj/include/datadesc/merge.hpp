#pragma once

#include <optional>
#include <string_view>
#include <vector>

#include "datadesc/diagnostic.hpp"
#include "datadesc/model.hpp"

namespace datadesc {

enum class ConflictPolicy { error, prefer_first, prefer_last };

std::optional<ConflictPolicy> parse_conflict_policy(std::string_view text);

struct MergePolicy {
    ConflictPolicy on_scalar_conflict = ConflictPolicy::error;
};

struct MergeReport {
    std::optional<DataDescDocument> merged; ///< absent when conflicts are unresolved
    Diagnostics conflicts;
};

/// Deep union of the serialized trees: maps union by key, equal leaves
/// collapse, unequal scalar leaves are merge-conflict diagnostics resolved per
/// policy, sequences union in first-occurrence order. Throws
/// Error("invalid-input") if an input has check errors or the list is empty.
MergeReport merge(const std::vector<DataDescDocument>& docs, MergePolicy policy = {});

} // namespace datadesc
