#pragma once

// Minimal CSV helpers for the dialect used by every emitted file:
// comma-separated, '.' decimal, one header row, LF line endings.
// Numbers are printed with %.12g so identical doubles always serialize
// to identical bytes.

#include "patspec/errors.hpp"

#include <cstdio>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

namespace patspec {

inline std::string format_double(double v) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.12g", v);
    return buf;
}

class CsvWriter {
  public:
    explicit CsvWriter(std::vector<std::string> header) {
        for (size_t i = 0; i < header.size(); ++i) {
            if (i) out_ += ',';
            out_ += header[i];
        }
        out_ += '\n';
        columns_ = header.size();
    }

    void row(const std::vector<std::string>& cells) {
        if (cells.size() != columns_)
            throw ValidationError("csv: row width does not match header");
        for (size_t i = 0; i < cells.size(); ++i) {
            if (i) out_ += ',';
            out_ += cells[i];
        }
        out_ += '\n';
    }

    void numeric_row(const std::vector<double>& cells) {
        std::vector<std::string> s;
        s.reserve(cells.size());
        for (double v : cells) s.push_back(format_double(v));
        row(s);
    }

    const std::string& str() const { return out_; }

  private:
    std::string out_;
    size_t columns_ = 0;
};

struct CsvTable {
    std::vector<std::string> header;
    std::vector<std::vector<std::string>> rows;

    int column(const std::string& name) const {
        for (size_t i = 0; i < header.size(); ++i)
            if (header[i] == name) return static_cast<int>(i);
        return -1;
    }

    int require_column(const std::string& name) const {
        const int c = column(name);
        if (c < 0) throw ValidationError("csv: missing required column '" + name + "'");
        return c;
    }

    double number(size_t row, int col) const {
        const std::string& cell = rows[row][col];
        size_t pos = 0;
        double v = 0.0;
        try {
            v = std::stod(cell, &pos);
        } catch (const std::exception&) {
            throw ValidationError("csv: cell '" + cell + "' is not a number");
        }
        if (pos != cell.size())
            throw ValidationError("csv: cell '" + cell + "' is not a number");
        return v;
    }
};

inline CsvTable parse_csv(const std::string& text) {
    CsvTable table;
    std::istringstream in(text);
    std::string line;
    bool first = true;
    while (std::getline(in, line)) {
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (line.empty()) continue;
        std::vector<std::string> cells;
        std::string cell;
        std::istringstream ls(line);
        while (std::getline(ls, cell, ',')) cells.push_back(cell);
        if (!line.empty() && line.back() == ',') cells.push_back("");
        if (first) {
            table.header = cells;
            first = false;
        } else {
            if (cells.size() != table.header.size())
                throw ValidationError("csv: ragged row (expected " +
                                      std::to_string(table.header.size()) + " cells)");
            table.rows.push_back(cells);
        }
    }
    if (first) throw ValidationError("csv: empty input");
    return table;
}

inline std::string read_text_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw ValidationError("cannot open file: " + path);
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

inline void write_text_file(const std::string& path, const std::string& content) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw ValidationError("cannot write file: " + path);
    out << content;
}

}  // namespace patspec
