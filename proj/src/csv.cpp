#include "fraccap/csv.hpp"

#include <cstdio>
#include <fstream>
#include <sstream>
#include <stdexcept>

namespace fraccap {

CsvWriter::CsvWriter(std::vector<std::string> header) : header_(std::move(header)) {
    if (header_.empty()) throw std::invalid_argument("CsvWriter: empty header");
}

void CsvWriter::add_row(std::vector<Cell> cells) {
    if (cells.size() != header_.size())
        throw std::invalid_argument("CsvWriter: row width does not match header");
    rows_.push_back(std::move(cells));
}

std::string CsvWriter::format(const Cell& cell) {
    if (const auto* s = std::get_if<std::string>(&cell)) return *s;
    if (const auto* i = std::get_if<long long>(&cell)) return std::to_string(*i);
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.17g", std::get<double>(cell));
    return buf;
}

void CsvWriter::write(const std::filesystem::path& path) const {
    const auto tmp = path.parent_path() / (path.filename().string() + ".tmp");
    if (!path.parent_path().empty()) std::filesystem::create_directories(path.parent_path());
    {
        std::ofstream out(tmp);
        if (!out) throw std::runtime_error("CsvWriter: cannot open " + tmp.string());
        for (size_t i = 0; i < header_.size(); ++i) out << (i ? "," : "") << header_[i];
        out << "\n";
        for (const auto& row : rows_) {
            for (size_t i = 0; i < row.size(); ++i) out << (i ? "," : "") << format(row[i]);
            out << "\n";
        }
        if (!out) throw std::runtime_error("CsvWriter: write failed for " + tmp.string());
    }
    std::filesystem::rename(tmp, path);
}

CsvTable read_csv(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("read_csv: cannot open " + path.string());
    CsvTable table;
    std::string line;
    bool first = true;
    while (std::getline(in, line)) {
        if (line.empty()) continue;
        std::vector<std::string> cells;
        std::stringstream ss(line);
        std::string cell;
        while (std::getline(ss, cell, ',')) cells.push_back(cell);
        if (!line.empty() && line.back() == ',') cells.emplace_back();
        if (first) {
            table.header = std::move(cells);
            first = false;
        } else {
            table.rows.push_back(std::move(cells));
        }
    }
    return table;
}

}  // namespace fraccap
