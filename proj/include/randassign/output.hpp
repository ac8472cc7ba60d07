#pragma once

#include <cstdint>
#include <optional>
#include <ostream>
#include <string>
#include <vector>

namespace randassign {

enum class OutputFormat { Csv, Jsonl };

/// Formats a real with 12 significant digits — enough to round-trip the
/// ratio work without printing noise digits.
std::string format_real(double value);

/// One flat key -> value row. Numbers are formatted once at insertion, so
/// the CSV and JSON renderings of a row carry identical value text.
class OutputRecord {
public:
    void add_int(std::string key, long long value);
    void add_uint(std::string key, std::uint64_t value);
    void add_real(std::string key, double value);
    void add_optional_real(std::string key, const std::optional<double>& value);
    void add_text(std::string key, std::string value);

    struct Field {
        std::string key;
        std::string text;
        bool quoted = false;  // JSON string vs bare number
        bool null = false;    // empty CSV cell / JSON null
    };

    const std::vector<Field>& fields() const { return fields_; }

private:
    std::vector<Field> fields_;
};

std::string csv_header(const OutputRecord& record);
std::string csv_row(const OutputRecord& record);
std::string json_line(const OutputRecord& record);

/// Writes the records in the chosen format; CSV gets one mandatory header
/// row taken from the first record. LF line endings.
void write_records(std::ostream& out, const std::vector<OutputRecord>& records,
                   OutputFormat format);

}  // namespace randassign
