#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <variant>

#include <nlohmann/json.hpp>

namespace datadesc {

/// Generic raw subtree (extensions, file layouts, literal arguments). Object
/// keys keep their input order.
using Tree = nlohmann::ordered_json;

/// A single literal value. Numbers compare by mathematical value, so the
/// integer 0 equals the real 0.0.
class Scalar {
public:
    using Storage = std::variant<std::monostate, bool, std::int64_t, double, std::string>;

    Scalar() = default;
    Scalar(bool value) : value_(value) {}
    Scalar(int value) : value_(static_cast<std::int64_t>(value)) {}
    Scalar(std::int64_t value) : value_(value) {}
    Scalar(double value) : value_(value) {}
    Scalar(std::string value) : value_(std::move(value)) {}
    Scalar(const char* value) : value_(std::string(value)) {}

    bool is_null() const { return std::holds_alternative<std::monostate>(value_); }
    bool is_bool() const { return std::holds_alternative<bool>(value_); }
    bool is_integer() const { return std::holds_alternative<std::int64_t>(value_); }
    bool is_real() const { return std::holds_alternative<double>(value_); }
    bool is_number() const { return is_integer() || is_real(); }
    bool is_string() const { return std::holds_alternative<std::string>(value_); }
    /// Integer, or a real with an integral value.
    bool is_integral() const;

    bool as_bool() const { return std::get<bool>(value_); }
    std::int64_t as_integer() const { return std::get<std::int64_t>(value_); }
    double as_double() const;
    const std::string& as_string() const { return std::get<std::string>(value_); }

    const Storage& storage() const { return value_; }

    /// Human-readable rendering; numbers use the shortest round-trip form.
    std::string to_text() const;

    Tree to_tree() const;
    static std::optional<Scalar> from_tree(const Tree& tree);

    friend bool operator==(const Scalar& lhs, const Scalar& rhs);

private:
    Storage value_;
};

/// Three-way numeric comparison; both operands must be numbers.
int compare_numbers(const Scalar& lhs, const Scalar& rhs);

/// Shortest decimal text that reads back as the same double. Integral values
/// keep a trailing ".0" so they stay reals.
std::string format_real(double value);

} // namespace datadesc
