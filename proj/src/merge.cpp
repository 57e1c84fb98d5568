#include "datadesc/merge.hpp"

#include <algorithm>

#include "datadesc/check.hpp"
#include "datadesc/exchange.hpp"

namespace datadesc {

std::optional<ConflictPolicy> parse_conflict_policy(std::string_view text) {
    if (text == "error") return ConflictPolicy::error;
    if (text == "first" || text == "prefer-first" || text == "prefer_first") return ConflictPolicy::prefer_first;
    if (text == "last" || text == "prefer-last" || text == "prefer_last") return ConflictPolicy::prefer_last;
    return std::nullopt;
}

namespace {

std::string leaf_text(const Tree& value) {
    if (auto scalar = Scalar::from_tree(value)) return scalar->is_string() ? "'" + scalar->as_string() + "'" : scalar->to_text();
    return value.dump();
}

bool same_leaf(const Tree& a, const Tree& b) {
    auto sa = Scalar::from_tree(a);
    auto sb = Scalar::from_tree(b);
    if (sa && sb) return *sa == *sb;
    return a == b;
}

class TreeMerger {
public:
    TreeMerger(ConflictPolicy policy, Diagnostics& conflicts) : policy_(policy), conflicts_(conflicts) {}

    Tree merge(const Tree& first, const Tree& second, const std::string& path) {
        if (first.is_object() && second.is_object()) {
            Tree out = first;
            for (const auto& [key, value] : second.items()) {
                if (out.contains(key))
                    out[key] = merge(first[key], value, join_path(path, key));
                else
                    out[key] = value;
            }
            return out;
        }
        if (first.is_array() && second.is_array()) {
            Tree out = first;
            for (const auto& item : second)
                if (std::none_of(out.begin(), out.end(), [&](const Tree& existing) { return same_leaf(existing, item); }))
                    out.push_back(item);
            return out;
        }
        if (same_leaf(first, second)) return first;

        auto severity = policy_ == ConflictPolicy::error ? Severity::error : Severity::warning;
        std::string message = leaf_text(first) + " vs " + leaf_text(second);
        if (policy_ == ConflictPolicy::prefer_first) message += "; kept the first";
        if (policy_ == ConflictPolicy::prefer_last) message += "; kept the last";
        conflicts_.push_back({severity, "merge-conflict", path, message});
        return policy_ == ConflictPolicy::prefer_last ? second : first;
    }

private:
    ConflictPolicy policy_;
    Diagnostics& conflicts_;
};

} // namespace

MergeReport merge(const std::vector<DataDescDocument>& docs, MergePolicy policy) {
    if (docs.empty()) throw Error("invalid-input", "merge needs at least one document");
    for (std::size_t i = 0; i < docs.size(); ++i) {
        auto findings = check_document(docs[i]);
        if (has_errors(findings))
            throw Error("invalid-input", "document " + std::to_string(i + 1) + " has check errors");
    }

    MergeReport report;
    TreeMerger merger(policy.on_scalar_conflict, report.conflicts);
    Tree merged = document_to_tree(docs.front());
    for (std::size_t i = 1; i < docs.size(); ++i) merged = merger.merge(merged, document_to_tree(docs[i]), "");

    if (has_errors(report.conflicts)) return report;

    auto parsed = document_from_tree(merged);
    if (!parsed.document || has_errors(parsed.diagnostics)) {
        // a union of two valid documents can still break an invariant
        for (auto& d : parsed.diagnostics)
            if (d.severity == Severity::error)
                report.conflicts.push_back({Severity::error, "merge-invalid", d.path, d.code + ": " + d.message});
        return report;
    }
    report.merged = std::move(parsed.document);
    return report;
}

} // namespace datadesc
