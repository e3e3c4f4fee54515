#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "ldpc/gf2.hpp"

namespace ldpc {

// Assignment of variable nodes to fading blocks.
struct BlockMapping {
    std::vector<int> assignment;
    int block_count = 0;

    BlockMapping() = default;
    BlockMapping(std::vector<int> a, int blocks);

    int operator()(int vn) const { return assignment[static_cast<size_t>(vn)]; }
    int size() const { return static_cast<int>(assignment.size()); }
    bool operator==(const BlockMapping&) const = default;
};

// Binary base matrix of a protograph code.  Row j is check node c_j, column i
// is variable node v_i; the first info_count columns carry information bits.
class Protograph {
public:
    Protograph(int rows, int cols, int info_count, std::vector<uint8_t> entries);

    int rows() const { return rows_; }
    int cols() const { return cols_; }
    int info_count() const { return info_count_; }

    uint8_t at(int j, int i) const {
        return entries_[static_cast<size_t>(j) * cols_ + i];
    }
    const std::vector<uint8_t>& entries() const { return entries_; }

    std::vector<int> vn_degrees() const;
    std::vector<int> cn_degrees() const;
    std::vector<int> neighbors_of_cn(int j) const;   // throws std::out_of_range
    std::vector<int> neighbors_of_vn(int i) const;
    int edge_count() const;

    Gf2Matrix to_gf2() const;

    bool operator==(const Protograph&) const = default;

private:
    int rows_, cols_, info_count_;
    std::vector<uint8_t> entries_;   // row-major {0,1}
};

int rank(const Protograph& p);

// 1 - rank/cols; equals the design rate when the matrix has full row rank.
double code_rate(const Protograph& p);

// Shared bipartite-graph view used by message-passing code (boolean diversity
// evolution, density evolution, min-sum decoding, girth search).
struct TannerGraph {
    struct Edge { int cn, vn; };

    int num_cn = 0, num_vn = 0;
    std::vector<Edge> edges;
    std::vector<std::vector<int>> cn_edges;   // edge ids per check node
    std::vector<std::vector<int>> vn_edges;   // edge ids per variable node

    static TannerGraph from_row_adjacency(int num_vn,
                                          const std::vector<std::vector<int>>& row_cols);
    static TannerGraph from_protograph(const Protograph& p);

    // Edge id for (cn, vn), -1 if absent.
    int find_edge(int cn, int vn) const;
};

}  // namespace ldpc
