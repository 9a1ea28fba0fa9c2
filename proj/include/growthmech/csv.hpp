#pragma once

#include <string>
#include <vector>

namespace growthmech::csv {

/// Deterministic CSV writer: '.' decimal, ',' separator, 17 significant
/// digits, '#'-prefixed metadata lines. No timestamps.
class Writer {
  public:
    explicit Writer(std::string path) : path_(std::move(path)) {}

    void meta(const std::string& key, const std::string& value);
    void meta(const std::string& key, double value);
    void header(const std::vector<std::string>& columns);
    void row(const std::vector<double>& values);
    void flush();  // writes the file; also called by the destructor

    ~Writer();

  private:
    std::string path_;
    std::vector<std::string> lines_;
    bool flushed_ = false;
};

std::string format_double(double v);  // %.17g

}  // namespace growthmech::csv
