#pragma once

#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>

#include "ldpc/protograph.hpp"

namespace ldpc {

// Input-file error carrying a 1-based line/column position.
class ParseError : public std::runtime_error {
public:
    ParseError(std::string file, int line, int col, const std::string& what);
    const std::string& file() const { return file_; }
    int line() const { return line_; }
    int column() const { return col_; }

private:
    std::string file_;
    int line_, col_;
};

// Base-matrix text format:
//   ROWS COLS
//   INFO k            (optional; defaults to COLS - ROWS)
//   <ROWS rows of space-separated 0/1>
//   PI m_0 ... m_{n-1} (optional block mapping)
// '#' starts a comment, blank lines are ignored.
struct BaseMatrixFile {
    Protograph proto;
    std::optional<BlockMapping> mapping;
};

BaseMatrixFile parse_base_matrix(std::string_view text, const std::string& name);
std::string format_base_matrix(const Protograph& p,
                               const std::optional<BlockMapping>& pi);

BaseMatrixFile load_base_matrix(const std::string& path);
void save_base_matrix(const Protograph& p, const std::optional<BlockMapping>& pi,
                      const std::string& path);

// Scans a file for its PI line; block_count is max entry + 1.
BlockMapping load_block_mapping(const std::string& path);

std::string read_text_file(const std::string& path);
void write_text_file(const std::string& path, std::string_view content);

}  // namespace ldpc
