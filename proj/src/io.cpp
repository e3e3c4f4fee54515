#include "ldpc/io.hpp"

#include <algorithm>
#include <cctype>
#include <fstream>
#include <sstream>
#include <vector>

namespace ldpc {

namespace {

struct Token {
    std::string text;
    int col = 0;   // 1-based character position
};

// Strips '#' comments and splits into whitespace-separated tokens.
std::vector<Token> tokenize(std::string_view line) {
    std::vector<Token> out;
    size_t n = line.find('#');
    std::string_view body = line.substr(0, n);
    size_t i = 0;
    while (i < body.size()) {
        while (i < body.size() && std::isspace(static_cast<unsigned char>(body[i]))) ++i;
        size_t b = i;
        while (i < body.size() && !std::isspace(static_cast<unsigned char>(body[i]))) ++i;
        if (i > b) out.push_back({std::string(body.substr(b, i - b)), static_cast<int>(b) + 1});
    }
    return out;
}

struct LineReader {
    std::vector<std::string> lines;
    std::string name;
    size_t next = 0;
    int line_no = 0;   // of the last returned line

    explicit LineReader(std::string_view text, std::string n) : name(std::move(n)) {
        std::string cur;
        for (char c : text) {
            if (c == '\n') { lines.push_back(cur); cur.clear(); }
            else cur.push_back(c);
        }
        if (!cur.empty()) lines.push_back(cur);
    }

    // Next non-empty token line, or empty vector at end of input.
    std::vector<Token> next_tokens() {
        while (next < lines.size()) {
            line_no = static_cast<int>(next) + 1;
            auto toks = tokenize(lines[next++]);
            if (!toks.empty()) return toks;
        }
        line_no = static_cast<int>(lines.size());
        return {};
    }
};

int parse_int(const LineReader& r, const Token& t, const char* what) {
    try {
        size_t pos = 0;
        int v = std::stoi(t.text, &pos);
        if (pos != t.text.size()) throw std::invalid_argument("");
        return v;
    } catch (...) {
        throw ParseError(r.name, r.line_no, t.col,
                         std::string("expected ") + what + ", got '" + t.text + "'");
    }
}

}  // namespace

ParseError::ParseError(std::string file, int line, int col, const std::string& what)
    : std::runtime_error(file + ":" + std::to_string(line) + ":" + std::to_string(col) +
                         ": " + what),
      file_(std::move(file)), line_(line), col_(col) {}

BaseMatrixFile parse_base_matrix(std::string_view text, const std::string& name) {
    LineReader r(text, name);

    auto header = r.next_tokens();
    if (header.size() != 2)
        throw ParseError(name, r.line_no, header.empty() ? 1 : header[0].col,
                         "expected header 'ROWS COLS'");
    int rows = parse_int(r, header[0], "row count");
    int cols = parse_int(r, header[1], "column count");
    if (rows < 1 || cols < 1)
        throw ParseError(name, r.line_no, header[0].col, "dimensions must be positive");

    auto toks = r.next_tokens();
    int info = cols - rows;
    if (!toks.empty() && toks[0].text == "INFO") {
        if (toks.size() != 2)
            throw ParseError(name, r.line_no, toks[0].col, "expected 'INFO k'");
        info = parse_int(r, toks[1], "info count");
        toks = r.next_tokens();
    }
    if (info < 1 || info >= cols)
        throw ParseError(name, r.line_no, 1,
                         "info count " + std::to_string(info) +
                             " not in (0, cols); add an INFO line");

    std::vector<uint8_t> entries;
    entries.reserve(static_cast<size_t>(rows) * cols);
    for (int j = 0; j < rows; ++j) {
        if (toks.empty())
            throw ParseError(name, r.line_no, 1,
                             "expected " + std::to_string(rows) + " matrix rows, got " +
                                 std::to_string(j));
        if (static_cast<int>(toks.size()) != cols)
            throw ParseError(name, r.line_no, toks[0].col,
                             "row has " + std::to_string(toks.size()) + " entries, expected " +
                                 std::to_string(cols));
        for (const Token& t : toks) {
            if (t.text == "0") entries.push_back(0);
            else if (t.text == "1") entries.push_back(1);
            else
                throw ParseError(name, r.line_no, t.col,
                                 "matrix entry must be 0 or 1, got '" + t.text + "'");
        }
        toks = r.next_tokens();
    }

    std::optional<BlockMapping> mapping;
    if (!toks.empty() && toks[0].text == "PI") {
        if (static_cast<int>(toks.size()) != cols + 1)
            throw ParseError(name, r.line_no, toks[0].col,
                             "PI line must list one block per column");
        std::vector<int> assign;
        int max_block = 0;
        for (int i = 1; i <= cols; ++i) {
            int m = parse_int(r, toks[static_cast<size_t>(i)], "block index");
            if (m < 0)
                throw ParseError(name, r.line_no, toks[static_cast<size_t>(i)].col,
                                 "block index must be non-negative");
            max_block = std::max(max_block, m);
            assign.push_back(m);
        }
        mapping = BlockMapping(std::move(assign), max_block + 1);
        toks = r.next_tokens();
    }
    if (!toks.empty())
        throw ParseError(name, r.line_no, toks[0].col,
                         "unexpected trailing content '" + toks[0].text + "'");

    return {Protograph(rows, cols, info, std::move(entries)), std::move(mapping)};
}

std::string format_base_matrix(const Protograph& p,
                               const std::optional<BlockMapping>& pi) {
    std::ostringstream os;
    os << p.rows() << ' ' << p.cols() << '\n';
    os << "INFO " << p.info_count() << '\n';
    for (int j = 0; j < p.rows(); ++j) {
        for (int i = 0; i < p.cols(); ++i) {
            if (i) os << ' ';
            os << static_cast<int>(p.at(j, i));
        }
        os << '\n';
    }
    if (pi) {
        if (pi->size() != p.cols())
            throw std::invalid_argument("format_base_matrix: mapping length mismatch");
        os << "PI";
        for (int m : pi->assignment) os << ' ' << m;
        os << '\n';
    }
    return os.str();
}

std::string read_text_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw std::runtime_error("cannot open '" + path + "' for reading");
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

void write_text_file(const std::string& path, std::string_view content) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw std::runtime_error("cannot open '" + path + "' for writing");
    out.write(content.data(), static_cast<std::streamsize>(content.size()));
    if (!out) throw std::runtime_error("failed writing '" + path + "'");
}

BaseMatrixFile load_base_matrix(const std::string& path) {
    return parse_base_matrix(read_text_file(path), path);
}

void save_base_matrix(const Protograph& p, const std::optional<BlockMapping>& pi,
                      const std::string& path) {
    write_text_file(path, format_base_matrix(p, pi));
}

BlockMapping load_block_mapping(const std::string& path) {
    LineReader r(read_text_file(path), path);
    for (auto toks = r.next_tokens(); !toks.empty(); toks = r.next_tokens()) {
        if (toks[0].text != "PI") continue;
        std::vector<int> assign;
        int max_block = 0;
        for (size_t i = 1; i < toks.size(); ++i) {
            int m = parse_int(r, toks[i], "block index");
            if (m < 0)
                throw ParseError(path, r.line_no, toks[i].col,
                                 "block index must be non-negative");
            max_block = std::max(max_block, m);
            assign.push_back(m);
        }
        if (assign.empty())
            throw ParseError(path, r.line_no, toks[0].col, "PI line is empty");
        return BlockMapping(std::move(assign), max_block + 1);
    }
    throw ParseError(path, r.line_no, 1, "no PI line found");
}

}  // namespace ldpc
