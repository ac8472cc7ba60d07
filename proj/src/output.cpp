#include "randassign/output.hpp"

#include <cstdio>

namespace randassign {

std::string format_real(double value) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.12g", value);
    return buf;
}

void OutputRecord::add_int(std::string key, long long value) {
    fields_.push_back({std::move(key), std::to_string(value), false, false});
}

void OutputRecord::add_uint(std::string key, std::uint64_t value) {
    fields_.push_back({std::move(key), std::to_string(value), false, false});
}

void OutputRecord::add_real(std::string key, double value) {
    fields_.push_back({std::move(key), format_real(value), false, false});
}

void OutputRecord::add_optional_real(std::string key, const std::optional<double>& value) {
    if (value.has_value()) {
        add_real(std::move(key), *value);
    } else {
        fields_.push_back({std::move(key), "", false, true});
    }
}

void OutputRecord::add_text(std::string key, std::string value) {
    fields_.push_back({std::move(key), std::move(value), true, false});
}

namespace {

// The emitted keys and values are plain ASCII without separators; quote
// defensively anyway when CSV metacharacters show up in text fields.
std::string csv_cell(const OutputRecord::Field& field) {
    if (field.null) return "";
    if (!field.quoted) return field.text;
    if (field.text.find_first_of(",\"\n") == std::string::npos) return field.text;
    std::string quoted = "\"";
    for (char c : field.text) {
        if (c == '"') quoted += '"';
        quoted += c;
    }
    quoted += '"';
    return quoted;
}

std::string json_escape(const std::string& text) {
    std::string out;
    out.reserve(text.size() + 2);
    for (char c : text) {
        switch (c) {
            case '"': out += "\\\""; break;
            case '\\': out += "\\\\"; break;
            case '\n': out += "\\n"; break;
            case '\t': out += "\\t"; break;
            case '\r': out += "\\r"; break;
            default:
                if (static_cast<unsigned char>(c) < 0x20) {
                    char buf[8];
                    std::snprintf(buf, sizeof(buf), "\\u%04x", c);
                    out += buf;
                } else {
                    out += c;
                }
        }
    }
    return out;
}

}  // namespace

std::string csv_header(const OutputRecord& record) {
    std::string line;
    for (std::size_t i = 0; i < record.fields().size(); ++i) {
        if (i) line += ',';
        line += record.fields()[i].key;
    }
    return line;
}

std::string csv_row(const OutputRecord& record) {
    std::string line;
    for (std::size_t i = 0; i < record.fields().size(); ++i) {
        if (i) line += ',';
        line += csv_cell(record.fields()[i]);
    }
    return line;
}

std::string json_line(const OutputRecord& record) {
    std::string line = "{";
    for (std::size_t i = 0; i < record.fields().size(); ++i) {
        const auto& field = record.fields()[i];
        if (i) line += ',';
        line += '"';
        line += json_escape(field.key);
        line += "\":";
        if (field.null) {
            line += "null";
        } else if (field.quoted) {
            line += '"';
            line += json_escape(field.text);
            line += '"';
        } else {
            line += field.text;
        }
    }
    line += '}';
    return line;
}

void write_records(std::ostream& out, const std::vector<OutputRecord>& records,
                   OutputFormat format) {
    if (records.empty()) return;
    if (format == OutputFormat::Csv) {
        out << csv_header(records.front()) << '\n';
        for (const auto& record : records) out << csv_row(record) << '\n';
    } else {
        for (const auto& record : records) out << json_line(record) << '\n';
    }
}

}  // namespace randassign
