#include "datadesc/publish.hpp"

#include <algorithm>
#include <cctype>
#include <cstdio>
#include <memory>
#include <set>
#include <sstream>

#include "datadesc/check.hpp"
#include "datadesc/codemeta.hpp"

namespace datadesc {

std::optional<ExportTarget> parse_export_target(std::string_view name) {
    if (name == "docs-md" || name == "docs-markdown" || name == "markdown") return ExportTarget::docs_markdown;
    if (name == "docs-html" || name == "html") return ExportTarget::docs_html;
    if (name == "codemeta") return ExportTarget::codemeta_json;
    if (name == "package" || name == "pyproject") return ExportTarget::package_metadata;
    if (name == "registry" || name == "orkg") return ExportTarget::registry_record;
    return std::nullopt;
}

namespace {

void require_valid(const DataDescDocument& doc) {
    for (const auto& d : check_document(doc))
        if (d.severity == Severity::error)
            throw Error("invalid-document", "cannot export a document with errors: " + format(d));
}

/// A link target; `href` is relative to the page being written.
struct Link {
    std::string text;
    std::string href;
};

/// Format-neutral page builder; the markdown and html writers produce the
/// same structure so both outputs cover the same content.
class PageWriter {
public:
    virtual ~PageWriter() = default;
    virtual void heading(int level, const std::string& text) = 0;
    virtual void paragraph(const std::string& text) = 0;
    virtual void link_line(const Link& link) = 0;
    virtual void link_list(const std::vector<Link>& links) = 0;
    /// Rows of (label, literal value); values render as code.
    virtual void table(const std::string& first, const std::string& second,
                       const std::vector<std::pair<std::string, std::string>>& rows) = 0;
    virtual void grid(const std::vector<std::string>& header, const std::vector<std::vector<std::string>>& rows) = 0;
    virtual std::string finish(const std::string& title) = 0;
};

std::string one_line(const std::string& text) {
    std::string out;
    for (char c : text) out += (c == '\n' || c == '\r') ? ' ' : c;
    return out;
}

std::string md_cell(const std::string& text) {
    std::string out;
    for (char c : one_line(text)) {
        if (c == '|') out += '\\';
        out += c;
    }
    return out;
}

std::string md_code(const std::string& text) {
    if (text.empty()) return "";
    auto cell = md_cell(text);
    if (cell.find('`') == std::string::npos) return "`" + cell + "`";
    return "`` " + cell + " ``";
}

class MarkdownWriter : public PageWriter {
public:
    void heading(int level, const std::string& text) override {
        out_ << std::string(std::min(level, 6), '#') << ' ' << one_line(text) << "\n\n";
    }
    void paragraph(const std::string& text) override { out_ << text << "\n\n"; }
    void link_line(const Link& link) override { out_ << "[" << one_line(link.text) << "](" << link.href << ")\n\n"; }
    void link_list(const std::vector<Link>& links) override {
        for (const auto& link : links) out_ << "- [" << one_line(link.text) << "](" << link.href << ")\n";
        out_ << "\n";
    }
    void table(const std::string& first, const std::string& second,
               const std::vector<std::pair<std::string, std::string>>& rows) override {
        out_ << "| " << first << " | " << second << " |\n| --- | --- |\n";
        for (const auto& [label, value] : rows) out_ << "| " << md_cell(label) << " | " << md_code(value) << " |\n";
        out_ << "\n";
    }
    void grid(const std::vector<std::string>& header, const std::vector<std::vector<std::string>>& rows) override {
        out_ << "|";
        for (const auto& h : header) out_ << ' ' << h << " |";
        out_ << "\n|";
        for (std::size_t i = 0; i < header.size(); ++i) out_ << " --- |";
        out_ << "\n";
        for (const auto& row : rows) {
            out_ << "|";
            for (std::size_t i = 0; i < row.size(); ++i) out_ << ' ' << (i == 0 ? md_cell(row[i]) : md_code(row[i])) << " |";
            out_ << "\n";
        }
        out_ << "\n";
    }
    std::string finish(const std::string&) override { return out_.str(); }

private:
    std::ostringstream out_;
};

std::string html_escape(const std::string& text) {
    std::string out;
    for (char c : text) {
        switch (c) {
        case '&': out += "&amp;"; break;
        case '<': out += "&lt;"; break;
        case '>': out += "&gt;"; break;
        case '"': out += "&quot;"; break;
        case '\'': out += "&#39;"; break;
        default: out += c;
        }
    }
    return out;
}

class HtmlWriter : public PageWriter {
public:
    void heading(int level, const std::string& text) override {
        int l = std::min(level, 6);
        out_ << "<h" << l << ">" << html_escape(text) << "</h" << l << ">\n";
    }
    void paragraph(const std::string& text) override { out_ << "<p>" << html_escape(text) << "</p>\n"; }
    void link_line(const Link& link) override {
        out_ << "<p><a href=\"" << html_escape(link.href) << "\">" << html_escape(link.text) << "</a></p>\n";
    }
    void link_list(const std::vector<Link>& links) override {
        out_ << "<ul>\n";
        for (const auto& link : links)
            out_ << "<li><a href=\"" << html_escape(link.href) << "\">" << html_escape(link.text) << "</a></li>\n";
        out_ << "</ul>\n";
    }
    void table(const std::string& first, const std::string& second,
               const std::vector<std::pair<std::string, std::string>>& rows) override {
        out_ << "<table>\n<tr><th>" << first << "</th><th>" << second << "</th></tr>\n";
        for (const auto& [label, value] : rows)
            out_ << "<tr><td>" << html_escape(label) << "</td><td><code>" << html_escape(value) << "</code></td></tr>\n";
        out_ << "</table>\n";
    }
    void grid(const std::vector<std::string>& header, const std::vector<std::vector<std::string>>& rows) override {
        out_ << "<table>\n<tr>";
        for (const auto& h : header) out_ << "<th>" << h << "</th>";
        out_ << "</tr>\n";
        for (const auto& row : rows) {
            out_ << "<tr>";
            for (std::size_t i = 0; i < row.size(); ++i) {
                if (i == 0 || row[i].empty())
                    out_ << "<td>" << html_escape(row[i]) << "</td>";
                else
                    out_ << "<td><code>" << html_escape(row[i]) << "</code></td>";
            }
            out_ << "</tr>\n";
        }
        out_ << "</table>\n";
    }
    std::string finish(const std::string& title) override {
        std::ostringstream page;
        page << "<!DOCTYPE html>\n<html lang=\"en\">\n<head>\n<meta charset=\"utf-8\">\n<title>" << html_escape(title)
             << "</title>\n<style>\nbody { font-family: sans-serif; max-width: 60em; margin: 2em auto; }\n"
                "table { border-collapse: collapse; margin-bottom: 1em; }\n"
                "td, th { border: 1px solid #999; padding: 0.2em 0.5em; text-align: left; }\n</style>\n"
                "</head>\n<body>\n"
             << out_.str() << "</body>\n</html>\n";
        return page.str();
    }

private:
    std::ostringstream out_;
};

std::string tree_text(const Tree& value) {
    if (auto scalar = Scalar::from_tree(value)) return scalar->to_text();
    return value.dump();
}

std::string list_text(const std::vector<Scalar>& values) {
    std::string out;
    for (std::size_t i = 0; i < values.size(); ++i) out += (i ? ", " : "") + values[i].to_text();
    return out;
}

std::string unit_text(const UnitSpec& unit) {
    std::string out = unit.name.value_or("");
    if (unit.uri) out += (out.empty() ? "" : " ") + ("<" + *unit.uri + ">");
    return out;
}

class DocsRenderer {
public:
    DocsRenderer(const DataDescDocument& doc, ExportTarget format) : doc_(doc), html_(format == ExportTarget::docs_html) {
        ext_ = html_ ? ".html" : ".md";
        std::set<std::string> used;
        for (const auto& [name, cls] : doc.classes) {
            std::string stem;
            for (char c : name) stem += (std::isalnum(static_cast<unsigned char>(c)) || c == '_' || c == '-') ? c : '_';
            if (stem.empty()) stem = "class";
            std::string candidate = stem;
            for (int n = 2; used.count(candidate); ++n) candidate = stem + "_" + std::to_string(n);
            used.insert(candidate);
            files_[name] = candidate + ext_;
        }
    }

    FileSet render() {
        FileSet out;
        out["index" + ext_] = index_page();
        for (const auto& [name, cls] : doc_.classes) out["classes/" + files_.at(name)] = class_page(cls);
        return out;
    }

private:
    std::unique_ptr<PageWriter> writer() const {
        if (html_) return std::make_unique<HtmlWriter>();
        return std::make_unique<MarkdownWriter>();
    }

    std::string index_page() {
        auto w = writer();
        const auto& info = doc_.info;
        w->heading(1, info.title);
        if (info.description) w->paragraph(*info.description);
        std::vector<std::pair<std::string, std::string>> rows = {{"version", info.version}};
        if (info.first_release) rows.push_back({"first release", *info.first_release});
        if (info.programming_language) rows.push_back({"programming language", *info.programming_language});
        for (const auto& person : info.authors)
            rows.push_back({"author", person.name + (person.email ? " <" + *person.email + ">" : "")});
        if (info.license) rows.push_back({"license", *info.license});
        if (info.repository) rows.push_back({"repository", *info.repository});
        if (!info.keywords.empty()) {
            std::string words;
            for (std::size_t i = 0; i < info.keywords.size(); ++i) words += (i ? ", " : "") + info.keywords[i];
            rows.push_back({"keywords", words});
        }
        if (info.reference_publication) rows.push_back({"reference publication", *info.reference_publication});
        for (const auto& [key, value] : info.extensions) rows.push_back({key, tree_text(value)});
        w->table("Field", "Value", rows);
        if (!doc_.classes.empty()) {
            w->heading(2, "Classes");
            std::vector<Link> links;
            for (const auto& [name, cls] : doc_.classes) links.push_back({name, "classes/" + files_.at(name)});
            w->link_list(links);
        }
        return w->finish(info.title);
    }

    std::string class_page(const ClassDescription& cls) {
        auto w = writer();
        w->heading(1, cls.name);
        w->link_line({"Back to " + doc_.info.title, "../index" + ext_});
        if (cls.description) w->paragraph(*cls.description);
        std::vector<std::pair<std::string, std::string>> rows;
        if (cls.uri) rows.push_back({"URI", *cls.uri});
        if (cls.is_part_of_interface) rows.push_back({"IsPartOfInterface", "true"});
        for (const auto& [key, value] : cls.extensions) rows.push_back({key, tree_text(value)});
        if (!rows.empty()) w->table("Attribute", "Value", rows);

        if (!cls.properties.empty()) {
            w->heading(2, "Properties");
            for (const auto& [name, property] : cls.properties)
                variable(*w, 3, name, property, contains(cls.required, name));
        }
        if (!cls.functions.empty()) {
            w->heading(2, "Functions");
            for (const auto& [name, fn] : cls.functions) function(*w, name, fn);
        }
        return w->finish(cls.name);
    }

    static bool contains(const std::vector<std::string>& list, const std::string& name) {
        return std::find(list.begin(), list.end(), name) != list.end();
    }

    void function(PageWriter& w, const std::string& name, const FunctionDescription& fn) {
        w.heading(3, name + "()");
        if (fn.description) w.paragraph(*fn.description);
        std::vector<std::pair<std::string, std::string>> rows;
        if (fn.is_part_of_interface) rows.push_back({"IsPartOfInterface", "true"});
        for (const auto& [key, value] : fn.extensions) rows.push_back({key, tree_text(value)});
        if (!rows.empty()) w.table("Attribute", "Value", rows);
        for (const auto& [param, description] : fn.parameters)
            variable(w, 4, "Parameter " + param, description, contains(fn.required, param));
        if (fn.return_description) variable(w, 4, "Return value", *fn.return_description, false);
    }

    void variable(PageWriter& w, int level, const std::string& title, const VariableDescription& v, bool required) {
        w.heading(level, title);
        if (v.description) w.paragraph(*v.description);
        std::vector<std::pair<std::string, std::string>> rows;
        std::optional<Link> reference;
        if (v.data_type.kind() == TypeKind::class_reference) {
            auto target = v.data_type.reference_path();
            rows.push_back({"DataType", v.data_type.detail()});
            if (target && files_.count(std::string(target->target())))
                reference = Link{std::string(target->target()), files_.at(std::string(target->target()))};
        } else if (v.data_type.kind() != TypeKind::unspecified) {
            rows.push_back({"DataType", v.data_type.name()});
        }
        if (required) rows.push_back({"Required", "true"});
        if (v.concept_uri) rows.push_back({"URI", *v.concept_uri});
        if (v.unit) {
            if (auto text = unit_text(*v.unit); !text.empty()) rows.push_back({"Unit", text});
            if (v.unit->unit_type) rows.push_back({"UnitType", *v.unit->unit_type});
        }
        if (v.default_value) rows.push_back({"DefaultValue", v.default_value->to_text()});
        if (v.minimum) rows.push_back({"MinimumValue", v.minimum->to_text()});
        if (v.exclusive_minimum) rows.push_back({"ExclusiveMinimum", "true"});
        if (v.maximum) rows.push_back({"MaximumValue", v.maximum->to_text()});
        if (v.exclusive_maximum) rows.push_back({"ExclusiveMaximum", "true"});
        if (v.regular_expression) rows.push_back({"RegularExpression", *v.regular_expression});
        if (v.value_set) rows.push_back({"ValueSet", list_text(*v.value_set)});
        if (v.file_format) rows.push_back({"FileFormat", *v.file_format});
        if (v.character_encoding) rows.push_back({"CharacterEncoding", *v.character_encoding});
        if (v.role) rows.push_back({"VariableRole", std::string(to_string(*v.role))});
        for (const auto& [layout, tree] : v.file_structure)
            rows.push_back({layout == FileLayout::netcdf_folders ? "NetCDFFolders" : "ExcelSheets", tree.dump()});
        for (const auto& [key, value] : v.extensions) rows.push_back({key, tree_text(value)});
        if (!rows.empty()) w.table("Attribute", "Value", rows);
        if (reference) w.link_line({"See " + reference->text, reference->href});

        if (!v.dimensions.empty()) {
            std::vector<std::vector<std::string>> grid;
            for (const auto& [name, dim] : v.dimensions) {
                std::string type = dim.index_type.kind() == TypeKind::class_reference ? dim.index_type.detail()
                                                                                       : dim.index_type.name();
                grid.push_back({name, type, dim.item_minimum ? dim.item_minimum->to_text() : "",
                                dim.item_maximum ? dim.item_maximum->to_text() : "",
                                dim.value_increment ? dim.value_increment->to_text() : "",
                                dim.value_set ? list_text(*dim.value_set) : "",
                                dim.unit ? unit_text(*dim.unit) : "",
                                dim.unit && dim.unit->unit_type ? *dim.unit->unit_type : "",
                                dim.description.value_or("")});
            }
            w.grid({"Dimension", "DataType", "ItemMinimumValue", "ItemMaximumValue", "ValueIncrement", "ValueSet",
                    "Unit", "UnitType", "Description"},
                   grid);
        }
        for (const auto& [name, child] : v.properties)
            variable(w, level + 1, title + "." + name, child, contains(v.required, name));
    }

    const DataDescDocument& doc_;
    bool html_;
    std::string ext_;
    std::map<std::string, std::string> files_;
};

std::string toml_string(const std::string& text) {
    std::string out = "\"";
    for (unsigned char c : text) {
        switch (c) {
        case '"': out += "\\\""; break;
        case '\\': out += "\\\\"; break;
        case '\n': out += "\\n"; break;
        case '\t': out += "\\t"; break;
        case '\r': out += "\\r"; break;
        default:
            if (c < 0x20 || c == 0x7f) {
                char buf[8];
                std::snprintf(buf, sizeof buf, "\\u%04X", c);
                out += buf;
            } else {
                out += static_cast<char>(c);
            }
        }
    }
    return out + "\"";
}

std::string package_stub(const SoftwareInfo& info) {
    std::ostringstream out;
    out << "[project]\n";
    out << "name = " << toml_string(info.title) << "\n";
    out << "version = " << toml_string(info.version) << "\n";
    if (info.description) out << "description = " << toml_string(*info.description) << "\n";
    if (!info.authors.empty()) {
        out << "authors = [\n";
        for (const auto& person : info.authors) {
            out << "  { name = " << toml_string(person.name);
            if (person.email) out << ", email = " << toml_string(*person.email);
            out << " },\n";
        }
        out << "]\n";
    }
    if (info.license) out << "license = { text = " << toml_string(*info.license) << " }\n";
    if (!info.keywords.empty()) {
        out << "keywords = [";
        for (std::size_t i = 0; i < info.keywords.size(); ++i) out << (i ? ", " : "") << toml_string(info.keywords[i]);
        out << "]\n";
    }
    if (info.repository) out << "\n[project.urls]\nRepository = " << toml_string(*info.repository) << "\n";
    return out.str();
}

std::string registry_record(const DataDescDocument& doc) {
    const auto& info = doc.info;
    nlohmann::json record = nlohmann::json::object();
    record["softwareName"] = info.title;
    record["version"] = info.version;
    record["programmingLanguage"] = info.programming_language ? nlohmann::json(*info.programming_language) : nlohmann::json();
    auto functions = nlohmann::json::array();
    auto parameters = nlohmann::json::array();
    auto triples = nlohmann::json::array();
    auto triple = [&](const std::string& s, const char* p, const std::string& o) {
        triples.push_back({{"subject", s}, {"property", p}, {"value", o}});
    };
    triple(info.title, "version", info.version);
    if (info.programming_language) triple(info.title, "programmingLanguage", *info.programming_language);
    for (const auto& [class_name, cls] : doc.classes) {
        triple(info.title, "hasClass", class_name);
        for (const auto& [fn_name, fn] : cls.functions) {
            auto fn_id = class_name + "." + fn_name;
            functions.push_back(fn_name);
            triple(class_name, "hasFunction", fn_id);
            for (const auto& [param, description] : fn.parameters) {
                parameters.push_back(param);
                triple(fn_id, "hasParameter", fn_id + "." + param);
            }
        }
    }
    record["functions"] = functions;
    record["parameters"] = parameters;
    record["triples"] = triples;
    return record.dump(2) + "\n";
}

} // namespace

FileSet render_docs(const DataDescDocument& doc, ExportTarget format) {
    if (format != ExportTarget::docs_markdown && format != ExportTarget::docs_html)
        throw Error("invalid-target", "render_docs needs a documentation target");
    require_valid(doc);
    return DocsRenderer(doc, format).render();
}

FileSet export_codemeta(const DataDescDocument& doc) {
    require_valid(doc);
    auto exported = info_to_codemeta(doc.info);
    return {{"codemeta.json", exported.record.to_json_ld().dump(2) + "\n"}};
}

FileSet build_registry_payload(const DataDescDocument& doc, ExportTarget target) {
    require_valid(doc);
    if (target == ExportTarget::package_metadata) return {{"pyproject.toml", package_stub(doc.info)}};
    if (target == ExportTarget::registry_record) return {{"registry_record.json", registry_record(doc)}};
    throw Error("invalid-target", "build_registry_payload needs package_metadata or registry_record");
}

FileSet export_files(const DataDescDocument& doc, ExportTarget target) {
    switch (target) {
    case ExportTarget::docs_markdown:
    case ExportTarget::docs_html: return render_docs(doc, target);
    case ExportTarget::codemeta_json: return export_codemeta(doc);
    case ExportTarget::package_metadata:
    case ExportTarget::registry_record: return build_registry_payload(doc, target);
    }
    throw Error("invalid-target", "unknown export target");
}

} // namespace datadesc
