#include "ldpc/lift.hpp"

#include <algorithm>
#include <cstdint>
#include <sstream>
#include <stdexcept>

#include "ldpc/io.hpp"

namespace ldpc {

namespace {

constexpr int kPegBfsDepth = 23;  // discriminates cycle lengths up to 24

// Shortest cycle through edge e0: one plus the shortest check-to-variable
// path that avoids e0.  Returns 0 when no such path exists within the cap;
// *truncated is set when the search hit the depth limit before exhausting
// the component, i.e. a longer cycle may exist.
int cycle_through_edge(const TannerGraph& g, int e0, int cap, bool* truncated,
                       std::vector<int>& dist, std::vector<int>& queue) {
    dist.assign(static_cast<size_t>(g.num_cn + g.num_vn), -1);
    const int src = g.edges[static_cast<size_t>(e0)].cn;
    const int dst = g.num_cn + g.edges[static_cast<size_t>(e0)].vn;
    const int limit = cap - 1;  // longest path worth finding
    queue.clear();
    queue.push_back(src);
    dist[static_cast<size_t>(src)] = 0;
    size_t head = 0;
    while (head < queue.size()) {
        const int u = queue[head++];
        const int du = dist[static_cast<size_t>(u)];
        if (du >= limit) {
            *truncated = true;
            continue;
        }
        const std::vector<int>& inc =
            u < g.num_cn ? g.cn_edges[static_cast<size_t>(u)]
                         : g.vn_edges[static_cast<size_t>(u - g.num_cn)];
        for (int e : inc) {
            if (e == e0) continue;
            const TannerGraph::Edge& te = g.edges[static_cast<size_t>(e)];
            const int v = u < g.num_cn ? g.num_cn + te.vn : te.cn;
            if (dist[static_cast<size_t>(v)] >= 0) continue;
            if (v == dst) return du + 2;
            dist[static_cast<size_t>(v)] = du + 1;
            queue.push_back(v);
        }
    }
    return 0;
}

int girth_of_graph(const TannerGraph& g, int cap) {
    int best = std::numeric_limits<int>::max();
    bool truncated = false;
    std::vector<int> dist;
    std::vector<int> queue;
    for (int e = 0; e < static_cast<int>(g.edges.size()); ++e) {
        int cyc = cycle_through_edge(g, e, cap, &truncated, dist, queue);
        if (cyc > 0) best = std::min(best, cyc);
        if (best == 4) return 4;  // nothing shorter exists without parallel edges
    }
    if (best <= cap) return best;
    return truncated ? cap + 2 : kGirthInfinity;
}

}  // namespace

QcCode assign_shifts_peg(const Protograph& base, int z) {
    if (z < 1) throw std::invalid_argument("lifting factor must be positive");
    QcCode qc{base, z,
              std::vector<int>(static_cast<size_t>(base.rows()) * base.cols(), -1)};
    if (z == 1) {
        for (int j = 0; j < base.rows(); ++j)
            for (int i = 0; i < base.cols(); ++i)
                if (base.at(j, i))
                    qc.shifts[static_cast<size_t>(j) * base.cols() + i] = 0;
        return qc;
    }

    const int num_cn = base.rows() * z;
    const int num_vn = base.cols() * z;
    // node ids: [0, num_cn) lifted checks, then lifted variables
    std::vector<std::vector<int>> adj(static_cast<size_t>(num_cn + num_vn));
    std::vector<int> dist(adj.size());
    std::vector<int> queue;
    queue.reserve(adj.size());
    constexpr long long kUnreachable = std::numeric_limits<long long>::max();
    std::vector<long long> score(static_cast<size_t>(z));

    // progressive edge growth, one circulant at a time in column-major order
    for (int i = 0; i < base.cols(); ++i) {
        for (int j = 0; j < base.rows(); ++j) {
            if (!base.at(j, i)) continue;
            // by circulant symmetry the shortest cycle closed by shift s is
            // dist(check (j,0) -> variable (i,s)) + 1, so one breadth-first
            // search from (j,0) scores every candidate shift
            std::fill(dist.begin(), dist.end(), -1);
            queue.clear();
            queue.push_back(j * z);
            dist[static_cast<size_t>(j * z)] = 0;
            size_t head = 0;
            while (head < queue.size()) {
                const int u = queue[head++];
                const int du = dist[static_cast<size_t>(u)];
                if (du >= kPegBfsDepth) continue;
                for (int v : adj[static_cast<size_t>(u)]) {
                    if (dist[static_cast<size_t>(v)] >= 0) continue;
                    dist[static_cast<size_t>(v)] = du + 1;
                    queue.push_back(v);
                }
            }
            int chosen = 0;
            for (int s = 0; s < z; ++s) {
                const int d = dist[static_cast<size_t>(num_cn + i * z + s)];
                score[static_cast<size_t>(s)] =
                    d < 0 ? kUnreachable : static_cast<long long>(d) + 1;
                if (score[static_cast<size_t>(s)] > score[static_cast<size_t>(chosen)])
                    chosen = s;
            }
            qc.shifts[static_cast<size_t>(j) * base.cols() + i] = chosen;
            for (int r = 0; r < z; ++r) {
                const int cn = j * z + r;
                const int vn = num_cn + i * z + (r + chosen) % z;
                adj[static_cast<size_t>(cn)].push_back(vn);
                adj[static_cast<size_t>(vn)].push_back(cn);
            }
        }
    }
    return qc;
}

SparseParityMatrix expand(const QcCode& qc) {
    SparseParityMatrix h;
    h.rows = qc.lifted_rows();
    h.cols = qc.lifted_cols();
    h.row_cols.assign(static_cast<size_t>(h.rows), {});
    for (int j = 0; j < qc.base.rows(); ++j)
        for (int i = 0; i < qc.base.cols(); ++i) {
            const int s = qc.shift_at(j, i);
            if (s < 0) continue;
            for (int r = 0; r < qc.z; ++r)
                h.row_cols[static_cast<size_t>(j * qc.z + r)].push_back(
                    i * qc.z + (r + s) % qc.z);
        }
    for (auto& row : h.row_cols) std::sort(row.begin(), row.end());
    return h;
}

int girth(const SparseParityMatrix& h, int cap) {
    return girth_of_graph(TannerGraph::from_row_adjacency(h.cols, h.row_cols), cap);
}

int girth(const Protograph& p, int cap) {
    return girth_of_graph(TannerGraph::from_protograph(p), cap);
}

int girth_qc(const QcCode& qc, int cap) {
    const SparseParityMatrix h = expand(qc);
    const TannerGraph g = TannerGraph::from_row_adjacency(h.cols, h.row_cols);
    // cycles through any lifted copy of a base edge are circular shifts of
    // cycles through the copy in check row 0, so one representative per
    // circulant covers the whole graph
    int best = std::numeric_limits<int>::max();
    bool truncated = false;
    std::vector<int> dist;
    std::vector<int> queue;
    for (int j = 0; j < qc.base.rows(); ++j)
        for (int i = 0; i < qc.base.cols(); ++i) {
            const int s = qc.shift_at(j, i);
            if (s < 0) continue;
            const int e = g.find_edge(j * qc.z, i * qc.z + s);
            if (e < 0) throw std::logic_error("expanded graph lost an edge");
            int cyc = cycle_through_edge(g, e, cap, &truncated, dist, queue);
            if (cyc > 0) best = std::min(best, cyc);
            if (best == 4) return 4;
        }
    if (best <= cap) return best;
    return truncated ? cap + 2 : kGirthInfinity;
}

BlockMapping expand_block_mapping(const BlockMapping& pi, int z) {
    std::vector<int> assign;
    assign.reserve(pi.assignment.size() * static_cast<size_t>(z));
    for (int m : pi.assignment)
        assign.insert(assign.end(), static_cast<size_t>(z), m);
    return BlockMapping(std::move(assign), pi.block_count);
}

std::string format_qc(const QcCode& qc) {
    std::ostringstream os;
    os << qc.base.rows() << ' ' << qc.base.cols() << ' ' << qc.z << '\n';
    for (int j = 0; j < qc.base.rows(); ++j) {
        for (int i = 0; i < qc.base.cols(); ++i) {
            if (i) os << ' ';
            os << qc.shift_at(j, i);
        }
        os << '\n';
    }
    return os.str();
}

QcCode parse_qc(std::string_view text, const std::string& name) {
    // same line discipline as the base-matrix format: '#' comments, blank
    // lines ignored
    std::vector<std::pair<int, std::string>> lines;
    {
        std::string cur;
        int no = 1;
        auto flush = [&] {
            size_t cut = cur.find('#');
            if (cut != std::string::npos) cur.resize(cut);
            std::istringstream probe(cur);
            std::string tok;
            if (probe >> tok) lines.emplace_back(no, cur);
            cur.clear();
            ++no;
        };
        for (char c : text) {
            if (c == '\n') flush();
            else cur.push_back(c);
        }
        flush();
    }
    size_t next = 0;
    auto take = [&]() -> std::pair<int, std::string> {
        if (next >= lines.size())
            throw ParseError(name, static_cast<int>(lines.size()), 1,
                             "unexpected end of file");
        return lines[next++];
    };
    auto ints_of = [&](const std::pair<int, std::string>& ln) {
        std::istringstream is(ln.second);
        std::vector<int> vals;
        std::string tok;
        while (is >> tok) {
            try {
                size_t pos = 0;
                vals.push_back(std::stoi(tok, &pos));
                if (pos != tok.size()) throw std::invalid_argument("");
            } catch (...) {
                throw ParseError(name, ln.first, 1,
                                 "expected integer, got '" + tok + "'");
            }
        }
        return vals;
    };

    auto header = take();
    std::vector<int> dims = ints_of(header);
    if (dims.size() != 3)
        throw ParseError(name, header.first, 1, "expected header 'ROWS COLS Z'");
    const int rows = dims[0], cols = dims[1], z = dims[2];
    if (rows < 1 || cols < 1 || z < 1)
        throw ParseError(name, header.first, 1, "ROWS, COLS and Z must be positive");
    if (cols <= rows)
        throw ParseError(name, header.first, 1,
                         "shift matrix needs more columns than rows");

    std::vector<int> shifts;
    std::vector<uint8_t> entries;
    shifts.reserve(static_cast<size_t>(rows) * cols);
    entries.reserve(shifts.capacity());
    for (int j = 0; j < rows; ++j) {
        auto ln = take();
        std::vector<int> vals = ints_of(ln);
        if (static_cast<int>(vals.size()) != cols)
            throw ParseError(name, ln.first, 1,
                             "row has " + std::to_string(vals.size()) +
                                 " entries, expected " + std::to_string(cols));
        for (int v : vals) {
            if (v < -1 || v >= z)
                throw ParseError(name, ln.first, 1,
                                 "shift must be -1 or in [0, Z), got " +
                                     std::to_string(v));
            shifts.push_back(v);
            entries.push_back(v >= 0 ? 1 : 0);
        }
    }
    if (next < lines.size())
        throw ParseError(name, lines[next].first, 1, "unexpected trailing content");

    return QcCode{Protograph(rows, cols, cols - rows, std::move(entries)), z,
                  std::move(shifts)};
}

QcCode load_qc(const std::string& path) {
    return parse_qc(read_text_file(path), path);
}

void save_qc(const QcCode& qc, const std::string& path) {
    write_text_file(path, format_qc(qc));
}

}  // namespace ldpc
