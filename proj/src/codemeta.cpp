#include "datadesc/codemeta.hpp"

#include <optional>

namespace datadesc {

namespace {

constexpr std::string_view passthrough_prefix = "x-codemeta-";

std::optional<std::string> text_of(const Tree& value) {
    if (value.is_string()) return value.get<std::string>();
    if (value.is_number() || value.is_boolean()) return Scalar::from_tree(value)->to_text();
    return std::nullopt;
}

Tree person_to_json(const Person& person) {
    Tree node = Tree::object();
    node["@type"] = "Person";
    node["name"] = person.name;
    if (person.email) node["email"] = *person.email;
    if (person.url) node["url"] = *person.url;
    return node;
}

std::optional<Person> person_from_json(const Tree& node, const std::string& path, Diagnostics& diagnostics) {
    if (auto text = text_of(node)) return Person{*text, std::nullopt, std::nullopt};
    if (!node.is_object()) {
        diagnostics.push_back({Severity::warning, "codemeta-shape", path, "author entry is not a person"});
        return std::nullopt;
    }
    Person person;
    if (node.contains("name")) {
        person.name = text_of(node["name"]).value_or("");
    } else {
        auto given = node.contains("givenName") ? text_of(node["givenName"]).value_or("") : "";
        auto family = node.contains("familyName") ? text_of(node["familyName"]).value_or("") : "";
        person.name = given.empty() ? family : family.empty() ? given : given + " " + family;
    }
    if (node.contains("email")) person.email = text_of(node["email"]);
    if (node.contains("url")) person.url = text_of(node["url"]);
    else if (node.contains("@id")) person.url = text_of(node["@id"]);
    if (person.name.empty()) {
        diagnostics.push_back({Severity::warning, "codemeta-shape", path, "author entry has no name"});
        return std::nullopt;
    }
    return person;
}

/// Text of a term that may also be written as {"name": ...} or {"@id": ...}.
std::optional<std::string> named_text(const Tree& value) {
    if (auto text = text_of(value)) return text;
    if (value.is_object()) {
        for (const char* key : {"name", "url", "@id"})
            if (value.contains(key))
                if (auto text = text_of(value[key])) return text;
    }
    if (value.is_array() && value.size() == 1) return named_text(value[0]);
    return std::nullopt;
}

} // namespace

nlohmann::json CodeMetaRecord::to_json_ld() const {
    nlohmann::json out = nlohmann::json::object();
    out["@context"] = std::string(codemeta_context);
    out["@type"] = "SoftwareSourceCode";
    for (const auto& [term, value] : terms) out[term] = nlohmann::json::parse(value.dump());
    return out;
}

CodeMetaRecord CodeMetaRecord::from_json(const Tree& json) {
    if (!json.is_object()) throw Error("codemeta-shape", "a CodeMeta record must be a JSON object");
    CodeMetaRecord record;
    for (const auto& [key, value] : json.items()) {
        if (key == "@context" || key == "@type" || key == "@id") continue;
        record.terms.emplace(key, value);
    }
    return record;
}

CodeMetaExport info_to_codemeta(const SoftwareInfo& info) {
    CodeMetaExport out;
    auto& terms = out.record.terms;
    terms["name"] = info.title;
    terms["version"] = info.version;
    if (info.description) terms["description"] = *info.description;
    if (info.first_release) terms["dateCreated"] = *info.first_release;
    if (info.programming_language) terms["programmingLanguage"] = *info.programming_language;
    if (!info.authors.empty()) {
        Tree authors = Tree::array();
        for (const auto& person : info.authors) authors.push_back(person_to_json(person));
        terms["author"] = authors;
    }
    if (info.license) terms["license"] = *info.license;
    if (info.repository) terms["codeRepository"] = *info.repository;
    if (!info.keywords.empty()) terms["keywords"] = info.keywords;
    if (info.reference_publication) terms["referencePublication"] = *info.reference_publication;

    for (const auto& [key, value] : info.extensions) {
        if (key.rfind(passthrough_prefix, 0) == 0 && key.size() > passthrough_prefix.size()) {
            auto term = key.substr(passthrough_prefix.size());
            if (!terms.count(term)) {
                terms[term] = value;
                continue;
            }
        }
        out.diagnostics.push_back({Severity::info, "codemeta-unmapped", join_path("info", key),
                                   "'" + key + "' has no CodeMeta equivalent"});
    }
    return out;
}

InfoImport codemeta_to_info(const CodeMetaRecord& record) {
    InfoImport out;
    auto& info = out.info;
    const auto& terms = record.terms;

    auto name = terms.find("name");
    std::optional<std::string> title = name == terms.end() ? std::nullopt : text_of(name->second);
    if (!title || title->empty()) throw Error("missing-name", "the CodeMeta record has no name");
    info.title = *title;

    for (const auto& [term, value] : terms) {
        auto path = join_path("codemeta", term);
        if (term == "name") continue;
        if (term == "version" || term == "softwareVersion") {
            if (term == "softwareVersion" && terms.count("version")) {
                info.extensions.emplace(std::string(passthrough_prefix) + term, value);
                continue;
            }
            if (auto text = text_of(value)) info.version = *text;
        } else if (term == "description") {
            info.description = text_of(value);
        } else if (term == "dateCreated") {
            info.first_release = text_of(value);
        } else if (term == "programmingLanguage") {
            info.programming_language = named_text(value);
        } else if (term == "author") {
            if (value.is_array()) {
                for (std::size_t i = 0; i < value.size(); ++i)
                    if (auto person = person_from_json(value[i], join_path(path, std::to_string(i)), out.diagnostics))
                        info.authors.push_back(*person);
            } else if (auto person = person_from_json(value, path, out.diagnostics)) {
                info.authors.push_back(*person);
            }
        } else if (term == "license") {
            info.license = named_text(value);
        } else if (term == "codeRepository") {
            info.repository = named_text(value);
        } else if (term == "keywords") {
            if (value.is_array()) {
                for (const auto& word : value)
                    if (auto text = text_of(word)) info.keywords.push_back(*text);
            } else if (auto text = text_of(value)) {
                // schema.org allows a comma-separated list
                std::string item;
                for (char c : *text + ",") {
                    if (c == ',') {
                        auto first = item.find_first_not_of(' ');
                        auto last = item.find_last_not_of(' ');
                        if (first != std::string::npos) info.keywords.push_back(item.substr(first, last - first + 1));
                        item.clear();
                    } else {
                        item += c;
                    }
                }
            }
        } else if (term == "referencePublication") {
            info.reference_publication = named_text(value);
        } else {
            info.extensions.emplace(std::string(passthrough_prefix) + term, value);
        }
    }

    if (info.version.empty()) {
        info.version = "0.0.0";
        out.diagnostics.push_back({Severity::warning, "missing-version", "codemeta/version",
                                   "the record has no version; 0.0.0 was substituted"});
    }
    return out;
}

} // namespace datadesc
