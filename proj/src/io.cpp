#include "bnls/io.hpp"

#include <cstdint>
#include <cstdio>
#include <stdexcept>

namespace bnls {

std::string format_g17(double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

std::string json_escape(const std::string& s) {
    std::string out;
    for (char c : s) {
        switch (c) {
            case '"': out += "\\\""; break;
            case '\\': out += "\\\\"; break;
            case '\n': out += "\\n"; break;
            case '\t': out += "\\t"; break;
            default: out += c;
        }
    }
    return out;
}

JsonWriter& JsonWriter::put(const std::string& key, double v) {
    items_.emplace_back(key, format_g17(v));
    return *this;
}
JsonWriter& JsonWriter::put(const std::string& key, int v) {
    items_.emplace_back(key, std::to_string(v));
    return *this;
}
JsonWriter& JsonWriter::put(const std::string& key, std::uint64_t v) {
    items_.emplace_back(key, std::to_string(v));
    return *this;
}
JsonWriter& JsonWriter::put(const std::string& key, bool v) {
    items_.emplace_back(key, v ? "true" : "false");
    return *this;
}
JsonWriter& JsonWriter::put(const std::string& key, const std::string& v) {
    items_.emplace_back(key, "\"" + json_escape(v) + "\"");
    return *this;
}
JsonWriter& JsonWriter::put(const std::string& key, const char* v) {
    return put(key, std::string(v));
}
JsonWriter& JsonWriter::put_array(const std::string& key, const std::vector<double>& v) {
    std::string s = "[";
    for (size_t i = 0; i < v.size(); ++i) s += (i ? "," : "") + format_g17(v[i]);
    s += "]";
    items_.emplace_back(key, s);
    return *this;
}
JsonWriter& JsonWriter::put_array(const std::string& key, const std::vector<std::string>& v) {
    std::string s = "[";
    for (size_t i = 0; i < v.size(); ++i)
        s += std::string(i ? "," : "") + "\"" + json_escape(v[i]) + "\"";
    s += "]";
    items_.emplace_back(key, s);
    return *this;
}
JsonWriter& JsonWriter::put_object(const std::string& key, const JsonWriter& obj) {
    items_.emplace_back(key, obj.str());
    return *this;
}

std::string JsonWriter::str() const {
    std::string s = "{\n";
    for (size_t i = 0; i < items_.size(); ++i) {
        s += "  \"" + json_escape(items_[i].first) + "\": " + items_[i].second;
        if (i + 1 < items_.size()) s += ",";
        s += "\n";
    }
    s += "}";
    return s;
}

void write_text_file(const std::string& path, const std::string& content) {
    std::FILE* f = std::fopen(path.c_str(), "w");
    if (!f) throw std::runtime_error("cannot open for writing: " + path);
    std::fwrite(content.data(), 1, content.size(), f);
    std::fclose(f);
}

void write_csv(const std::string& path, const std::vector<std::string>& columns,
               const std::vector<std::vector<double>>& rows,
               const std::vector<std::string>& provenance_lines) {
    std::string s;
    for (const auto& line : provenance_lines) s += "# " + line + "\n";
    for (size_t i = 0; i < columns.size(); ++i) s += (i ? "," : "") + columns[i];
    s += "\n";
    for (const auto& row : rows) {
        for (size_t i = 0; i < row.size(); ++i) s += (i ? "," : "") + format_g17(row[i]);
        s += "\n";
    }
    write_text_file(path, s);
}

}  // namespace bnls
