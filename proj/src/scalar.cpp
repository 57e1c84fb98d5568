#include "datadesc/scalar.hpp"

#include <charconv>
#include <cmath>
#include <limits>

namespace datadesc {

std::string format_real(double value) {
    if (std::isnan(value)) return ".nan";
    if (std::isinf(value)) return value > 0 ? ".inf" : "-.inf";
    char buffer[64];
    auto [end, ec] = std::to_chars(buffer, buffer + sizeof(buffer), value);
    std::string text(buffer, end);
    if (text.find_first_of(".e") == std::string::npos) text += ".0";
    return text;
}

bool Scalar::is_integral() const {
    if (is_integer()) return true;
    if (!is_real()) return false;
    double v = std::get<double>(value_);
    return std::isfinite(v) && std::floor(v) == v;
}

double Scalar::as_double() const {
    if (is_integer()) return static_cast<double>(std::get<std::int64_t>(value_));
    return std::get<double>(value_);
}

std::string Scalar::to_text() const {
    struct Visitor {
        std::string operator()(std::monostate) const { return "null"; }
        std::string operator()(bool v) const { return v ? "true" : "false"; }
        std::string operator()(std::int64_t v) const { return std::to_string(v); }
        std::string operator()(double v) const { return format_real(v); }
        std::string operator()(const std::string& v) const { return v; }
    };
    return std::visit(Visitor{}, value_);
}

Tree Scalar::to_tree() const {
    struct Visitor {
        Tree operator()(std::monostate) const { return nullptr; }
        Tree operator()(bool v) const { return v; }
        Tree operator()(std::int64_t v) const { return v; }
        Tree operator()(double v) const { return v; }
        Tree operator()(const std::string& v) const { return v; }
    };
    return std::visit(Visitor{}, value_);
}

std::optional<Scalar> Scalar::from_tree(const Tree& tree) {
    switch (tree.type()) {
    case Tree::value_t::null: return Scalar{};
    case Tree::value_t::boolean: return Scalar{tree.get<bool>()};
    case Tree::value_t::number_integer: return Scalar{tree.get<std::int64_t>()};
    case Tree::value_t::number_unsigned: {
        auto u = tree.get<std::uint64_t>();
        if (u <= static_cast<std::uint64_t>(std::numeric_limits<std::int64_t>::max()))
            return Scalar{static_cast<std::int64_t>(u)};
        return Scalar{static_cast<double>(u)};
    }
    case Tree::value_t::number_float: return Scalar{tree.get<double>()};
    case Tree::value_t::string: return Scalar{tree.get<std::string>()};
    default: return std::nullopt;
    }
}

int compare_numbers(const Scalar& lhs, const Scalar& rhs) {
    if (lhs.is_integer() && rhs.is_integer()) {
        auto a = lhs.as_integer(), b = rhs.as_integer();
        return a < b ? -1 : (a > b ? 1 : 0);
    }
    double a = lhs.as_double(), b = rhs.as_double();
    return a < b ? -1 : (a > b ? 1 : 0);
}

bool operator==(const Scalar& lhs, const Scalar& rhs) {
    if (lhs.is_number() && rhs.is_number()) return compare_numbers(lhs, rhs) == 0;
    return lhs.value_ == rhs.value_;
}

} // namespace datadesc
