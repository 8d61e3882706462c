#include "btm/csvio.hpp"

#include <cstdio>
#include <fstream>

#include "btm/errors.hpp"

namespace btm {

std::string fmt17(double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

CsvWriter::CsvWriter(std::string path, std::string schema, std::vector<std::string> columns)
    : path_(std::move(path)), columns_(columns.size()) {
    if (columns.empty()) throw invalid_parameter("CsvWriter: no columns");
    buffer_ = "# schema=" + schema + "\n";
    for (std::size_t i = 0; i < columns.size(); ++i) {
        if (i) buffer_ += ',';
        buffer_ += columns[i];
    }
    buffer_ += '\n';
}

void CsvWriter::row(const std::vector<std::string>& cells) {
    if (!open_) throw precondition_violation("CsvWriter: row after close");
    if (cells.size() != columns_)
        throw invalid_parameter("CsvWriter: row width does not match header");
    for (std::size_t i = 0; i < cells.size(); ++i) {
        if (i) buffer_ += ',';
        buffer_ += cells[i];
    }
    buffer_ += '\n';
}

void CsvWriter::close() {
    if (!open_) return;
    open_ = false;
    const std::string tmp = path_ + ".tmp";
    {
        std::ofstream f(tmp, std::ios::trunc | std::ios::binary);
        if (!f) throw resource_limit("CsvWriter: cannot open " + tmp);
        f << buffer_;
        if (!f.flush()) throw resource_limit("CsvWriter: write failed for " + tmp);
    }
    if (std::rename(tmp.c_str(), path_.c_str()) != 0)
        throw resource_limit("CsvWriter: rename failed for " + path_);
}

CsvWriter::~CsvWriter() {
    try {
        close();
    } catch (...) {
        // destructor must not throw; an incomplete .tmp file is the signal
    }
}

} // namespace btm
