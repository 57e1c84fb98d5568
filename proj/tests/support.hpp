#pragma once

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <random>
#include <sstream>
#include <string>

#include "datadesc/model.hpp"

namespace datadesc::testkit {

inline std::string fixture_path(const std::string& name) { return std::string(DATADESC_FIXTURES) + "/" + name; }

inline std::string read_fixture(const std::string& name) {
    std::ifstream in(fixture_path(name), std::ios::binary);
    std::ostringstream buffer;
    buffer << in.rdbuf();
    return buffer.str();
}

/// Hand-rolled generators; every helper takes the engine so runs replay from a seed.
class Gen {
public:
    explicit Gen(std::uint32_t seed) : rng_(seed) {}

    int range(int lo, int hi) { return std::uniform_int_distribution<int>(lo, hi)(rng_); }
    bool coin(double p = 0.5) { return std::bernoulli_distribution(p)(rng_); }
    std::mt19937& engine() { return rng_; }

    std::string identifier(const char* prefix = "n") {
        static const char alphabet[] = "abcdefghijklmnopqrstuvwxyzABCDEFGHIJKLMNOPQRSTUVWXYZ_0123456789";
        std::string out = prefix;
        int length = range(1, 8);
        for (int i = 0; i < length; ++i) out += alphabet[range(0, 62)];
        return out;
    }

    /// Text that stresses YAML quoting: indicators, look-alike numbers, dates, spaces.
    std::string text() {
        static const std::vector<std::string> tricky = {
            "yes", "No", "true", "null", "~", "1.5", "0x1F", "1e3", "2018-11-12", "- item", ": x", "a: b",
            "a #b", "#c", "'q'", "\"dq\"", "[x]", "{y}", "*ref", "&anc", "!tag", "%d", "@at", "`tick",
            " lead", "trail ", "", "...", "---", "multi\nline", "tab\there", "ünïcode", "k_means", ">", "|",
            ".inf", "-.NaN", "0o17", "+12", "1_000", "on", "OFF", "y", "N", "=", "?q", ",c"};
        if (coin(0.4)) return tricky[static_cast<std::size_t>(range(0, static_cast<int>(tricky.size()) - 1))];
        std::string out;
        int length = range(0, 12);
        static const char chars[] = "abcdefghijklmnopqrstuvwxyz ABC-_.:#0123456789/'\"";
        for (int i = 0; i < length; ++i) out += chars[range(0, static_cast<int>(sizeof chars) - 2)];
        return out;
    }

    Scalar number(bool integral) {
        if (integral) return Scalar(static_cast<std::int64_t>(range(-1000, 1000)));
        double value = std::uniform_real_distribution<double>(-1e4, 1e4)(rng_);
        if (coin(0.2)) value = std::round(value);
        return Scalar(value);
    }

    std::string date() {
        char buffer[16];
        std::snprintf(buffer, sizeof buffer, "%04d-%02d-%02d", range(1970, 2030), range(1, 12), range(1, 28));
        return buffer;
    }

    Person person() {
        Person p{identifier("Author ") + " " + identifier(""), std::nullopt, std::nullopt};
        if (coin()) p.email = identifier("m") + "@example.org";
        if (coin(0.3)) p.url = "https://example.org/" + identifier("p");
        return p;
    }

    SoftwareInfo info() {
        SoftwareInfo info;
        info.title = identifier("Tool ") + (coin() ? " " + text() : "");
        while (info.title.find('\n') != std::string::npos) info.title.erase(info.title.find('\n'), 1);
        info.version = std::to_string(range(0, 9)) + "." + std::to_string(range(0, 20)) + (coin() ? ".1" : "");
        if (coin()) info.description = text();
        if (coin()) info.first_release = date();
        if (coin()) info.programming_language = coin() ? "Python" : "C++";
        int authors = range(0, 3);
        for (int i = 0; i < authors; ++i) info.authors.push_back(person());
        if (coin()) info.license = coin() ? "MIT" : "https://spdx.org/licenses/Apache-2.0";
        if (coin()) info.repository = "https://example.org/" + identifier("repo");
        int keywords = range(0, 3);
        for (int i = 0; i < keywords; ++i) info.keywords.push_back(identifier("kw"));
        if (coin(0.3)) info.reference_publication = "https://doi.org/10.0000/" + identifier("x");
        return info;
    }

    /// Arbitrary JSON-compatible subtree for extension values.
    Tree tree(int depth = 0) {
        int pick = range(0, depth > 2 ? 3 : 5);
        switch (pick) {
        case 0: return Tree(text());
        case 1: return number(coin()).to_tree();
        case 2: return Tree(coin());
        case 3: return Tree(nullptr);
        case 4: {
            Tree list = Tree::array();
            int n = range(0, 3);
            for (int i = 0; i < n; ++i) list.push_back(tree(depth + 1));
            return list;
        }
        default: {
            Tree map = Tree::object();
            int n = range(0, 3);
            for (int i = 0; i < n; ++i) map[identifier("k")] = tree(depth + 1);
            return map;
        }
        }
    }

    Extensions extensions(double p = 0.3) {
        Extensions out;
        while (coin(p)) out["x-ext-" + identifier("")] = tree();
        return out;
    }

    /// A variable that satisfies every invariant; `classes` are valid $ref targets.
    VariableDescription variable(const std::string& name, const std::vector<std::string>& classes, int depth = 0) {
        VariableDescription v;
        v.name = name;
        if (coin()) v.description = text();
        if (coin(0.2)) v.concept_uri = "https://example.org/" + identifier("c");
        int kind = range(0, depth < 2 ? 7 : 5);
        switch (kind) {
        case 0:
        case 1: {
            bool integral = kind == 0;
            v.data_type = DataType(integral ? TypeKind::integer : TypeKind::number);
            auto lo = number(integral);
            auto hi = number(integral);
            if (compare_numbers(lo, hi) > 0) std::swap(lo, hi);
            if (coin()) v.minimum = lo;
            if (coin()) v.maximum = hi;
            if (v.minimum && coin(0.3) && compare_numbers(lo, hi) < 0) v.exclusive_minimum = true;
            if (v.maximum && coin(0.3) && compare_numbers(lo, hi) < 0) v.exclusive_maximum = true;
            if (coin(0.4) && !v.exclusive_minimum && !v.exclusive_maximum) {
                std::vector<Scalar> set;
                for (const auto& candidate : {lo, hi})
                    if (std::find(set.begin(), set.end(), candidate) == set.end()) set.push_back(candidate);
                v.value_set = set;
                if (coin()) v.default_value = set.front();
            }
            if (coin(0.3)) v.unit = UnitSpec{coin() ? std::optional<std::string>("meter") : std::nullopt,
                                             coin() ? std::optional<std::string>("a unit") : std::nullopt,
                                             coin() ? std::optional<std::string>("http://qudt.org/vocab/unit/M") : std::nullopt,
                                             std::string("length")};
            break;
        }
        case 2: {
            v.data_type = DataType(TypeKind::string);
            if (coin(0.3)) {
                v.regular_expression = "^[A-Za-z0-9_]+$";
                if (coin()) v.default_value = Scalar(identifier("d"));
            } else if (coin(0.4)) {
                std::vector<Scalar> set;
                int n = range(1, 4);
                for (int i = 0; i < n; ++i) {
                    Scalar s(text());
                    if (std::find(set.begin(), set.end(), s) == set.end()) set.push_back(s);
                }
                v.value_set = set;
                if (coin()) v.default_value = set.back();
            } else if (coin()) {
                v.default_value = Scalar(text());
            }
            if (!v.value_set && !v.default_value && coin(0.2)) v.file_format = coin() ? "NetCDF" : "CSV";
            if (coin(0.2)) v.character_encoding = "UTF-8";
            break;
        }
        case 3:
            v.data_type = DataType(TypeKind::boolean);
            if (coin()) v.default_value = Scalar(coin());
            break;
        case 4:
            if (!classes.empty())
                v.data_type = DataType::reference(ReferencePath::to_class(classes[static_cast<std::size_t>(range(0, static_cast<int>(classes.size()) - 1))]));
            break;
        case 5:
            v.data_type = DataType(TypeKind::array);
            {
                int n = range(1, 3);
                for (int i = 0; i < n; ++i) {
                    DimensionDescription dim;
                    dim.name = identifier("axis");
                    if (v.dimensions.contains(dim.name)) continue;
                    if (coin()) dim.index_type = DataType(TypeKind::integer);
                    if (coin()) dim.item_minimum = Scalar(0);
                    if (coin(0.3)) dim.item_maximum = Scalar(static_cast<std::int64_t>(range(0, 100)));
                    if (coin(0.3)) dim.value_increment = Scalar(static_cast<std::int64_t>(range(1, 5)));
                    if (coin(0.3)) dim.unit = UnitSpec{std::nullopt, std::nullopt, std::nullopt, std::string("temporal identifier")};
                    if (coin(0.2)) dim.description = text();
                    dim.extensions = extensions(0.1);
                    v.dimensions.push_back(dim.name, dim);
                }
            }
            break;
        default: {
            v.data_type = coin() ? DataType(TypeKind::object) : DataType();
            int n = range(1, 3);
            for (int i = 0; i < n; ++i) {
                auto child = identifier("p");
                if (v.properties.contains(child)) continue;
                v.properties.push_back(child, variable(child, classes, depth + 1));
                if (coin(0.3)) v.required.push_back(child);
            }
            if (coin(0.2)) v.file_structure[FileLayout::excel_sheets] = tree();
        }
        }
        if (coin(0.2)) v.role = static_cast<VariableRole>(range(0, 2));
        v.extensions = extensions(0.15);
        return v;
    }

    DataDescDocument document() {
        DataDescDocument doc;
        doc.info = info();
        if (coin(0.2)) doc.info.extensions["x-info-" + identifier("")] = tree();
        std::vector<std::string> names;
        int classes = range(0, 4);
        for (int i = 0; i < classes; ++i) names.push_back(identifier("C"));
        std::sort(names.begin(), names.end());
        names.erase(std::unique(names.begin(), names.end()), names.end());
        for (const auto& name : names) {
            ClassDescription cls;
            cls.name = name;
            if (coin()) cls.description = text();
            if (coin(0.3)) cls.uri = "https://example.org/" + identifier("k");
            cls.is_part_of_interface = coin(0.3);
            int properties = range(0, 3);
            for (int i = 0; i < properties; ++i) {
                auto prop = identifier("p");
                if (cls.properties.contains(prop)) continue;
                cls.properties.push_back(prop, variable(prop, names));
                if (coin(0.4)) cls.required.push_back(prop);
            }
            int functions = range(0, 2);
            for (int i = 0; i < functions; ++i) {
                FunctionDescription fn;
                fn.name = identifier("f");
                if (cls.functions.contains(fn.name)) continue;
                if (coin()) fn.description = text();
                fn.is_part_of_interface = coin(0.3);
                int params = range(0, 3);
                for (int k = 0; k < params; ++k) {
                    auto param = identifier("a");
                    if (fn.parameters.contains(param)) continue;
                    auto v = variable(param, names);
                    if (v.role == VariableRole::output || v.role == VariableRole::internal) v.role.reset();
                    fn.parameters.push_back(param, v);
                    if (coin(0.5)) fn.required.push_back(param);
                }
                if (coin(0.4)) {
                    auto ret = variable("return", names);
                    if (ret.role == VariableRole::input || ret.role == VariableRole::internal) ret.role.reset();
                    fn.return_description = ret;
                }
                fn.extensions = extensions(0.1);
                cls.functions.push_back(fn.name, fn);
            }
            cls.extensions = extensions(0.2);
            doc.classes.emplace(name, cls);
        }
        if (coin(0.2)) doc.component_extensions["x-comp-" + identifier("")] = tree();
        if (coin(0.2)) doc.extensions["x-root-" + identifier("")] = tree();
        return doc;
    }

private:
    std::mt19937 rng_;
};

} // namespace datadesc::testkit
