#include "growthmech/csv.hpp"

#include "growthmech/types.hpp"

#include <cstdio>
#include <fstream>

namespace growthmech::csv {

std::string format_double(double v) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    return buf;
}

void Writer::meta(const std::string& key, const std::string& value) {
    lines_.push_back("# " + key + " = " + value);
}

void Writer::meta(const std::string& key, double value) { meta(key, format_double(value)); }

void Writer::header(const std::vector<std::string>& columns) {
    std::string line;
    for (std::size_t i = 0; i < columns.size(); ++i) {
        if (i) line += ',';
        line += columns[i];
    }
    lines_.push_back(std::move(line));
}

void Writer::row(const std::vector<double>& values) {
    std::string line;
    for (std::size_t i = 0; i < values.size(); ++i) {
        if (i) line += ',';
        line += format_double(values[i]);
    }
    lines_.push_back(std::move(line));
}

void Writer::flush() {
    if (flushed_) return;
    std::ofstream out(path_);
    if (!out) throw numeric_error("cannot open output file: " + path_);
    for (const auto& line : lines_) out << line << '\n';
    flushed_ = true;
}

Writer::~Writer() {
    try {
        flush();
    } catch (...) {
    }
}

}  // namespace growthmech::csv
