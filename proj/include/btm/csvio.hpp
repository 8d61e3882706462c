#pragma once

#include <string>
#include <vector>

namespace btm {

// Decimal rendering at 17 significant digits: lossless for binary64, so
// equal doubles produce byte-identical text on every run.
std::string fmt17(double v);

// CSV emitter with a schema comment line, e.g.
//   # schema=btmlab.events.v1
//   seed,n,event,holds,M,S,margin
// Rows are buffered and written through a temp file renamed into place, so
// interrupted runs never leave a truncated table behind.
class CsvWriter {
public:
    CsvWriter(std::string path, std::string schema, std::vector<std::string> columns);

    void row(const std::vector<std::string>& cells);
    void close(); // flush + rename; also run by the destructor
    ~CsvWriter();

    CsvWriter(const CsvWriter&) = delete;
    CsvWriter& operator=(const CsvWriter&) = delete;

private:
    std::string path_;
    std::string buffer_;
    std::size_t columns_ = 0;
    bool open_ = true;
};

} // namespace btm
