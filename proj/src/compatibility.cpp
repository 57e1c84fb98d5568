#include "datadesc/compatibility.hpp"

#include <algorithm>
#include <cmath>

#include "datadesc/constraints.hpp"

namespace datadesc {

namespace {

struct Bound {
    double value;
    bool exclusive;
};

struct Interval {
    std::optional<Bound> lower;
    std::optional<Bound> upper;
};

std::optional<Bound> to_bound(const std::optional<Scalar>& scalar, bool exclusive) {
    if (!scalar || !scalar->is_number()) return std::nullopt;
    return Bound{scalar->as_double(), exclusive};
}

/// Integer sets are normalized to closed integral bounds.
Interval integral(Interval in) {
    if (in.lower) in.lower = Bound{in.lower->exclusive ? std::floor(in.lower->value) + 1 : std::ceil(in.lower->value), false};
    if (in.upper) in.upper = Bound{in.upper->exclusive ? std::ceil(in.upper->value) - 1 : std::floor(in.upper->value), false};
    return in;
}

bool empty(const Interval& in) {
    if (!in.lower || !in.upper) return false;
    if (in.lower->value > in.upper->value) return true;
    return in.lower->value == in.upper->value && (in.lower->exclusive || in.upper->exclusive);
}

bool contained(const Interval& inner, const Interval& outer) {
    if (empty(inner)) return true;
    bool lower_ok = !outer.lower ||
                    (inner.lower && (inner.lower->value > outer.lower->value ||
                                     (inner.lower->value == outer.lower->value &&
                                      (!outer.lower->exclusive || inner.lower->exclusive))));
    bool upper_ok = !outer.upper ||
                    (inner.upper && (inner.upper->value < outer.upper->value ||
                                     (inner.upper->value == outer.upper->value &&
                                      (!outer.upper->exclusive || inner.upper->exclusive))));
    return lower_ok && upper_ok;
}

bool iequal(const std::string& a, const std::string& b) {
    return a.size() == b.size() && std::equal(a.begin(), a.end(), b.begin(), [](char x, char y) {
               return std::tolower(static_cast<unsigned char>(x)) == std::tolower(static_cast<unsigned char>(y));
           });
}

bool subset(const std::vector<Scalar>& inner, const std::vector<Scalar>& outer) {
    return std::all_of(inner.begin(), inner.end(), [&](const Scalar& value) {
        return std::find(outer.begin(), outer.end(), value) != outer.end();
    });
}

struct Context {
    const DataDescDocument* producer_doc = nullptr;
    const DataDescDocument* consumer_doc = nullptr;
};

bool types_compatible(const DataType& producer, const DataType& consumer, const Context& context) {
    if (producer == consumer) return true;
    if (producer.kind() != TypeKind::class_reference || consumer.kind() != TypeKind::class_reference) return false;
    if (!context.producer_doc || !context.consumer_doc) return false;
    auto p_ref = producer.reference_path();
    auto c_ref = consumer.reference_path();
    if (!p_ref || !c_ref) return false;
    const auto* p_cls = context.producer_doc->find_class(p_ref->target());
    const auto* c_cls = context.consumer_doc->find_class(c_ref->target());
    return p_cls && c_cls && p_cls->properties == c_cls->properties;
}

bool units_compatible(const UnitSpec& p, const UnitSpec& c) {
    if (p == c) return true;
    if (c.unit_type && !c.name && !c.uri) return p.unit_type && iequal(*p.unit_type, *c.unit_type);
    if (p.uri && c.uri) return *p.uri == *c.uri;
    if (p.name && c.name) return iequal(*p.name, *c.name);
    if (p.unit_type && c.unit_type) return iequal(*p.unit_type, *c.unit_type);
    return false;
}

void fail(CompatibilityReport& report, std::string code, std::string path, std::string message) {
    report.compatible = false;
    report.reasons.push_back({Severity::error, std::move(code), std::move(path), std::move(message)});
}

void compare_ranges(const DataType& p_type, const Interval& p_range, const std::optional<std::vector<Scalar>>& p_set,
                    const DataType& c_type, const Interval& c_range, const std::string& path,
                    CompatibilityReport& report) {
    if (!c_range.lower && !c_range.upper) return;
    if (p_set) {
        VariableDescription consumer_range;
        if (c_range.lower) {
            consumer_range.minimum = Scalar(c_range.lower->value);
            consumer_range.exclusive_minimum = c_range.lower->exclusive;
        }
        if (c_range.upper) {
            consumer_range.maximum = Scalar(c_range.upper->value);
            consumer_range.exclusive_maximum = c_range.upper->exclusive;
        }
        for (const auto& member : *p_set) {
            if (!member.is_number()) continue;
            if (!scalar_violations(member, consumer_range).empty())
                fail(report, "range-not-contained", path,
                     "producer value-set member " + member.to_text() + " lies outside the consumer range");
        }
        return;
    }
    bool integers = p_type.kind() == TypeKind::integer && c_type.kind() == TypeKind::integer;
    bool ok = integers ? contained(integral(p_range), integral(c_range)) : contained(p_range, c_range);
    if (!ok) fail(report, "range-not-contained", path, "producer range is not contained in the consumer range");
}

void compare_sets(const std::optional<std::vector<Scalar>>& p_set, const std::optional<std::vector<Scalar>>& c_set,
                  const std::string& path, CompatibilityReport& report) {
    if (!c_set) return;
    if (!p_set)
        fail(report, "value-set-not-contained", path, "producer is not restricted to the consumer value set");
    else if (!subset(*p_set, *c_set))
        fail(report, "value-set-not-contained", path, "producer value set is not a subset of the consumer value set");
}

CompatibilityReport compare(const VariableDescription& p, const VariableDescription& c, const Context& context) {
    CompatibilityReport report;
    if (!types_compatible(p.data_type, c.data_type, context))
        fail(report, "type-mismatch", "type", "producer type differs from consumer type");

    Interval p_range{to_bound(p.minimum, p.exclusive_minimum), to_bound(p.maximum, p.exclusive_maximum)};
    Interval c_range{to_bound(c.minimum, c.exclusive_minimum), to_bound(c.maximum, c.exclusive_maximum)};
    compare_ranges(p.data_type, p_range, p.value_set, c.data_type, c_range, "range", report);
    compare_sets(p.value_set, c.value_set, "x-ValueSet", report);

    if (p.unit && c.unit && !units_compatible(*p.unit, *c.unit))
        fail(report, "unit-mismatch", "x-Unit", "units differ");

    if (p.dimensions.size() != c.dimensions.size()) {
        fail(report, "dimension-count", "x-dimensions",
             "producer has " + std::to_string(p.dimensions.size()) + " dimensions, consumer " +
                 std::to_string(c.dimensions.size()));
    } else {
        auto p_it = p.dimensions.begin();
        for (auto c_it = c.dimensions.begin(); c_it != c.dimensions.end(); ++c_it, ++p_it) {
            const auto& pd = p_it->second;
            const auto& cd = c_it->second;
            auto path = join_path("x-dimensions", c_it->first);
            if (!types_compatible(pd.index_type, cd.index_type, context))
                fail(report, "dimension-mismatch", path, "index types differ");
            Interval pi{to_bound(pd.item_minimum, false), to_bound(pd.item_maximum, false)};
            Interval ci{to_bound(cd.item_minimum, false), to_bound(cd.item_maximum, false)};
            CompatibilityReport sub;
            compare_ranges(pd.index_type, pi, pd.value_set, cd.index_type, ci, path, sub);
            compare_sets(pd.value_set, cd.value_set, path, sub);
            for (auto& reason : sub.reasons) {
                reason.code = "dimension-mismatch";
                report.reasons.push_back(std::move(reason));
                report.compatible = false;
            }
        }
    }
    return report;
}

} // namespace

CompatibilityReport check_compatibility(const VariableDescription& producer, const VariableDescription& consumer) {
    return compare(producer, consumer, {});
}

CompatibilityReport check_compatibility(const VariableDescription& producer, const DataDescDocument& producer_doc,
                                        const VariableDescription& consumer, const DataDescDocument& consumer_doc) {
    return compare(producer, consumer, {&producer_doc, &consumer_doc});
}

} // namespace datadesc
