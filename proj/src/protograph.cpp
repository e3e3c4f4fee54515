#include "ldpc/protograph.hpp"

#include <stdexcept>
#include <string>

namespace ldpc {

BlockMapping::BlockMapping(std::vector<int> a, int blocks)
    : assignment(std::move(a)), block_count(blocks) {
    if (blocks < 1)
        throw std::invalid_argument("BlockMapping: block_count must be >= 1");
    for (int m : assignment)
        if (m < 0 || m >= blocks)
            throw std::invalid_argument("BlockMapping: block index out of range");
}

Protograph::Protograph(int rows, int cols, int info_count, std::vector<uint8_t> entries)
    : rows_(rows), cols_(cols), info_count_(info_count), entries_(std::move(entries)) {
    if (rows < 1 || cols < 1)
        throw std::invalid_argument("Protograph: dimensions must be positive");
    if (info_count < 1 || info_count >= cols)
        throw std::invalid_argument("Protograph: info_count must be in (0, cols)");
    if (entries_.size() != static_cast<size_t>(rows) * cols)
        throw std::invalid_argument("Protograph: entry count does not match dimensions");
    for (uint8_t e : entries_)
        if (e > 1)
            throw std::invalid_argument("Protograph: entries must be 0 or 1");
}

std::vector<int> Protograph::vn_degrees() const {
    std::vector<int> deg(static_cast<size_t>(cols_), 0);
    for (int j = 0; j < rows_; ++j)
        for (int i = 0; i < cols_; ++i)
            deg[static_cast<size_t>(i)] += at(j, i);
    return deg;
}

std::vector<int> Protograph::cn_degrees() const {
    std::vector<int> deg(static_cast<size_t>(rows_), 0);
    for (int j = 0; j < rows_; ++j)
        for (int i = 0; i < cols_; ++i)
            deg[static_cast<size_t>(j)] += at(j, i);
    return deg;
}

std::vector<int> Protograph::neighbors_of_cn(int j) const {
    if (j < 0 || j >= rows_)
        throw std::out_of_range("neighbors_of_cn: check index " + std::to_string(j) +
                                " out of range");
    std::vector<int> out;
    for (int i = 0; i < cols_; ++i)
        if (at(j, i)) out.push_back(i);
    return out;
}

std::vector<int> Protograph::neighbors_of_vn(int i) const {
    if (i < 0 || i >= cols_)
        throw std::out_of_range("neighbors_of_vn: variable index " + std::to_string(i) +
                                " out of range");
    std::vector<int> out;
    for (int j = 0; j < rows_; ++j)
        if (at(j, i)) out.push_back(j);
    return out;
}

int Protograph::edge_count() const {
    int n = 0;
    for (uint8_t e : entries_) n += e;
    return n;
}

Gf2Matrix Protograph::to_gf2() const {
    Gf2Matrix m(rows_, cols_);
    for (int j = 0; j < rows_; ++j)
        for (int i = 0; i < cols_; ++i)
            if (at(j, i)) m.set(j, i, true);
    return m;
}

int rank(const Protograph& p) { return rank_gf2(p.to_gf2()); }

double code_rate(const Protograph& p) {
    return 1.0 - static_cast<double>(rank(p)) / p.cols();
}

TannerGraph TannerGraph::from_row_adjacency(int num_vn,
                                            const std::vector<std::vector<int>>& row_cols) {
    TannerGraph g;
    g.num_cn = static_cast<int>(row_cols.size());
    g.num_vn = num_vn;
    g.cn_edges.resize(row_cols.size());
    g.vn_edges.resize(static_cast<size_t>(num_vn));
    for (int j = 0; j < g.num_cn; ++j) {
        for (int i : row_cols[static_cast<size_t>(j)]) {
            if (i < 0 || i >= num_vn)
                throw std::out_of_range("TannerGraph: column index out of range");
            int e = static_cast<int>(g.edges.size());
            g.edges.push_back({j, i});
            g.cn_edges[static_cast<size_t>(j)].push_back(e);
            g.vn_edges[static_cast<size_t>(i)].push_back(e);
        }
    }
    return g;
}

TannerGraph TannerGraph::from_protograph(const Protograph& p) {
    std::vector<std::vector<int>> rows(static_cast<size_t>(p.rows()));
    for (int j = 0; j < p.rows(); ++j)
        rows[static_cast<size_t>(j)] = p.neighbors_of_cn(j);
    return from_row_adjacency(p.cols(), rows);
}

int TannerGraph::find_edge(int cn, int vn) const {
    for (int e : cn_edges[static_cast<size_t>(cn)])
        if (edges[static_cast<size_t>(e)].vn == vn) return e;
    return -1;
}

}  // namespace ldpc
