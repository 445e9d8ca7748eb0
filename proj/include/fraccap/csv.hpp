#pragma once

#include <filesystem>
#include <string>
#include <variant>
#include <vector>

namespace fraccap {

/// Row-oriented CSV writer. Numeric fields are serialized with 17
/// significant digits so artifacts round-trip bit-exactly; files are written
/// to a temporary name and renamed into place.
class CsvWriter {
  public:
    using Cell = std::variant<std::string, double, long long>;

    explicit CsvWriter(std::vector<std::string> header);

    void add_row(std::vector<Cell> cells);
    void write(const std::filesystem::path& path) const;

    static std::string format(const Cell& cell);

  private:
    std::vector<std::string> header_;
    std::vector<std::vector<Cell>> rows_;
};

struct CsvTable {
    std::vector<std::string> header;
    std::vector<std::vector<std::string>> rows;
};

CsvTable read_csv(const std::filesystem::path& path);

}  // namespace fraccap
