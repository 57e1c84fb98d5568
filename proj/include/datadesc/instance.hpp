#pragma once

#include <string>
#include <variant>
#include <vector>

#include "datadesc/diagnostic.hpp"
#include "datadesc/model.hpp"

namespace datadesc {

struct RecordField;
struct DimensionEntry;

using Record = std::vector<RecordField>;

/// Values keyed by index tuples along named axes.
struct Dimensioned {
    std::vector<std::string> axes; ///< may be empty for positional lists
    std::vector<DimensionEntry> entries;

    bool operator==(const Dimensioned&) const;
};

struct DataValue {
    std::variant<Scalar, Record, Dimensioned> content;

    DataValue() = default;
    DataValue(Scalar scalar) : content(std::move(scalar)) {}
    DataValue(Record record) : content(std::move(record)) {}
    DataValue(Dimensioned dims) : content(std::move(dims)) {}

    bool is_scalar() const { return std::holds_alternative<Scalar>(content); }
    bool is_record() const { return std::holds_alternative<Record>(content); }
    bool is_dimensioned() const { return std::holds_alternative<Dimensioned>(content); }
    const Scalar& scalar() const { return std::get<Scalar>(content); }
    const Record& record() const { return std::get<Record>(content); }
    const Dimensioned& dimensioned() const { return std::get<Dimensioned>(content); }

    const DataValue* field(std::string_view name) const;

    /// scalar -> scalar; object -> record; {"$axes": [...], "$entries":
    /// [{"index": [...], "value": v}]} -> dimensioned; array -> dimensioned
    /// over positions. Throws Error("data-shape") for unusable input.
    static DataValue from_tree(const Tree& tree);
    Tree to_tree() const;

    bool operator==(const DataValue&) const;
};

struct RecordField {
    std::string name;
    DataValue value;
    bool operator==(const RecordField&) const = default;
};

struct DimensionEntry {
    std::vector<Scalar> index;
    DataValue value;
    bool operator==(const DimensionEntry&) const = default;
};

struct ValidationResult {
    bool valid = true; ///< no error-severity diagnostics
    Diagnostics diagnostics;
};

struct ValidationOptions {
    /// Required members with a default count as present.
    bool apply_defaults = false;
    /// Resolves class references when set.
    const DataDescDocument* document = nullptr;
};

/// Type, range with exclusivity, anchored regex, value-set membership and
/// file-format tag; records and dimensioned values are dispatched to
/// validate_record / validate_dimensions. All checks run.
ValidationResult validate_value(const DataValue& value, const VariableDescription& description,
                                const ValidationOptions& options = {}, std::string_view path = "");

ValidationResult validate_record(const DataValue& record, const ClassDescription& cls,
                                 const ValidationOptions& options = {}, std::string_view path = "");
ValidationResult validate_record(const DataValue& record, const VariableDescription& grouping,
                                 const ValidationOptions& options = {}, std::string_view path = "");
/// Parameter set of a function call, checked like a record.
ValidationResult validate_record(const DataValue& record, const FunctionDescription& function,
                                 const ValidationOptions& options = {}, std::string_view path = "");

/// Arity, axis order, index type / range / value set / increment per axis.
ValidationResult validate_dimensions(const DataValue& value,
                                     const NamedList<DimensionDescription>& dimensions,
                                     std::string_view path = "");

struct DefaultsResult {
    DataValue record;
    ValidationResult validation; ///< of the completed record
};

/// Inserts defaults for absent properties; present values are never replaced.
DefaultsResult apply_defaults(const DataValue& record, const ClassDescription& cls,
                              const ValidationOptions& options = {});

} // namespace datadesc
