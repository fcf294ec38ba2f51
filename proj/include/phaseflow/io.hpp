#pragma once

#include <filesystem>
#include <fstream>
#include <string>
#include <vector>

namespace phaseflow {

// CSV with a header row, a '#'-prefixed units line and 17 significant digits.
class CsvWriter {
public:
    CsvWriter(const std::filesystem::path& path, const std::vector<std::string>& columns,
              const std::vector<std::string>& units);
    void row(const std::vector<double>& values);
    void close();

private:
    std::ofstream out_;
    std::size_t width_;
    std::filesystem::path path_;
};

std::string format_number(double v);

// lowercase hex SHA-256 of a file's bytes
std::string sha256_file(const std::filesystem::path& path);

} // namespace phaseflow
