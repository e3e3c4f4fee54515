#include <algorithm>
#include <cstdio>
#include <numeric>
#include <set>
#include <stdexcept>
#include <vector>

#include "doctest.h"
#include "ldpc/gf2.hpp"
#include "ldpc/io.hpp"
#include "ldpc/protograph.hpp"
#include "ldpc/rng.hpp"

using namespace ldpc;

namespace {

Protograph make(int rows, int cols, int info, std::vector<uint8_t> e) {
    return Protograph(rows, cols, info, std::move(e));
}

// Independent rank oracle: the row space of an r-row matrix has 2^rank
// distinct elements; enumerate all 2^r row subsets and count XOR sums.
int rank_by_span(const Gf2Matrix& m) {
    std::set<std::vector<uint8_t>> span;
    const int r = m.rows(), c = m.cols();
    for (int mask = 0; mask < (1 << r); ++mask) {
        std::vector<uint8_t> acc(static_cast<size_t>(c), 0);
        for (int i = 0; i < r; ++i)
            if (mask & (1 << i))
                for (int j = 0; j < c; ++j)
                    acc[static_cast<size_t>(j)] ^= m.get(i, j);
        span.insert(acc);
    }
    int rank = 0;
    while ((1 << rank) < static_cast<int>(span.size())) ++rank;
    return rank;
}

}  // namespace

TEST_SUITE("core") {

TEST_CASE("rng sequences replay exactly per seed") {
    Rng a(42), b(42), c(43);
    bool all_equal = true, any_diff = false;
    for (int i = 0; i < 100; ++i) {
        const uint64_t x = a.next_u64();
        all_equal = all_equal && x == b.next_u64();
        any_diff = any_diff || x != c.next_u64();
    }
    CHECK(all_equal);
    CHECK(any_diff);
}

TEST_CASE("derived seeds separate by label and index") {
    const uint64_t s = 7;
    CHECK(derive_seed(s, "trial", 0) != derive_seed(s, "trial", 1));
    CHECK(derive_seed(s, "trial", 0) != derive_seed(s, "init", 0));
    CHECK(derive_seed(s, "trial", 3) == derive_seed(s, "trial", 3));
}

TEST_CASE("uniform stays in [0,1) and normal has sane moments") {
    Rng r(1);
    double sum = 0, sq = 0;
    const int n = 20000;
    for (int i = 0; i < n; ++i) {
        const double u = r.uniform();
        CHECK(u >= 0.0);
        CHECK(u < 1.0);
    }
    for (int i = 0; i < n; ++i) {
        const double x = r.normal();
        sum += x;
        sq += x * x;
    }
    CHECK(std::abs(sum / n) < 0.03);
    CHECK(std::abs(sq / n - 1.0) < 0.05);
}

TEST_CASE("gf2 rank on pinned matrices") {
    Gf2Matrix id(4, 4);
    for (int i = 0; i < 4; ++i) id.set(i, i, true);
    CHECK(rank_gf2(id) == 4);

    Gf2Matrix zero(3, 5);
    CHECK(rank_gf2(zero) == 0);

    Gf2Matrix ones(2, 2);
    for (int i = 0; i < 2; ++i)
        for (int j = 0; j < 2; ++j) ones.set(i, j, true);
    CHECK(rank_gf2(ones) == 1);
}

TEST_CASE("gf2 rank matches the span-enumeration oracle") {
    Rng rng(99);
    for (int rep = 0; rep < 200; ++rep) {
        const int r = 1 + static_cast<int>(rng.below(6));
        const int c = 1 + static_cast<int>(rng.below(6));
        Gf2Matrix m(r, c);
        for (int i = 0; i < r; ++i)
            for (int j = 0; j < c; ++j) m.set(i, j, rng.bernoulli(0.4));
        CHECK(rank_gf2(m) == rank_by_span(m));
    }
}

TEST_CASE("gf2 row operations preserve rank") {
    Rng rng(5);
    Gf2Matrix m(5, 9);
    for (int i = 0; i < 5; ++i)
        for (int j = 0; j < 9; ++j) m.set(i, j, rng.bernoulli(0.5));
    const int before = rank_gf2(m);
    m.xor_row(2, 4);
    m.swap_rows(0, 3);
    CHECK(rank_gf2(m) == before);
}

TEST_CASE("protograph constructor validates shape and entries") {
    CHECK_NOTHROW(make(2, 4, 2, {1, 0, 1, 0, 0, 1, 0, 1}));
    CHECK_THROWS_AS(make(2, 4, 2, {1, 0, 1}), std::invalid_argument);
    CHECK_THROWS_AS(make(2, 4, 0, {1, 0, 1, 0, 0, 1, 0, 1}), std::invalid_argument);
    CHECK_THROWS_AS(make(2, 4, 4, {1, 0, 1, 0, 0, 1, 0, 1}), std::invalid_argument);
    CHECK_THROWS_AS(make(1, 2, 1, {2, 0}), std::invalid_argument);
}

TEST_CASE("code rate from rank") {
    // full-rank 16x32 gives the design rate 1/2
    std::vector<uint8_t> e(16 * 32, 0);
    Rng rng(11);
    for (int j = 0; j < 16; ++j) {
        e[static_cast<size_t>(j) * 32 + 16 + j] = 1;   // identity block
        for (int i = 0; i < 16; ++i)
            e[static_cast<size_t>(j) * 32 + i] = rng.bernoulli(0.3);
    }
    const Protograph half(16, 32, 16, e);
    CHECK(rank(half) == 16);
    CHECK(code_rate(half) == doctest::Approx(0.5));

    const Protograph dup(2, 4, 2, {1, 0, 1, 1, 1, 0, 1, 1});  // equal rows
    CHECK(rank(dup) == 1);
    CHECK(code_rate(dup) == doctest::Approx(0.75));

    const Protograph empty(1, 2, 1, {0, 0});
    CHECK(code_rate(empty) == doctest::Approx(1.0));
}

TEST_CASE("degrees and neighbor sets") {
    const Protograph reg(3, 6, 3, std::vector<uint8_t>(18, 1));
    for (int d : reg.vn_degrees()) CHECK(d == 3);
    for (int d : reg.cn_degrees()) CHECK(d == 6);

    std::vector<uint8_t> eye(16, 0);
    for (int i = 0; i < 4; ++i) eye[static_cast<size_t>(i) * 4 + i] = 1;
    const Protograph id(4, 4, 2, eye);
    for (int d : id.vn_degrees()) CHECK(d == 1);
    for (int d : id.cn_degrees()) CHECK(d == 1);

    const Protograph fix(1, 3, 2, {1, 1, 1});
    CHECK(fix.neighbors_of_cn(0) == std::vector<int>{0, 1, 2});
    CHECK(fix.neighbors_of_vn(1) == std::vector<int>{0});
    CHECK_THROWS_AS(fix.neighbors_of_cn(1), std::out_of_range);
    CHECK_THROWS_AS(fix.neighbors_of_vn(3), std::out_of_range);
}

TEST_CASE("degree sums equal the edge count") {
    Rng rng(17);
    for (int rep = 0; rep < 50; ++rep) {
        const int r = 1 + static_cast<int>(rng.below(5));
        const int c = 2 + static_cast<int>(rng.below(7));
        std::vector<uint8_t> e(static_cast<size_t>(r) * c);
        int ones = 0;
        for (auto& x : e) {
            x = rng.bernoulli(0.5);
            ones += x;
        }
        const Protograph p(r, c, std::max(1, c - r), e);
        const auto vd = p.vn_degrees();
        const auto cd = p.cn_degrees();
        const int vsum = std::accumulate(vd.begin(), vd.end(), 0);
        const int csum = std::accumulate(cd.begin(), cd.end(), 0);
        CHECK(vsum == ones);
        CHECK(csum == ones);
        CHECK(p.edge_count() == ones);
    }
}

TEST_CASE("block mapping validates its entries") {
    CHECK_NOTHROW(BlockMapping({0, 1, 1, 0}, 2));
    CHECK_THROWS_AS(BlockMapping({0, 2}, 2), std::invalid_argument);
    const BlockMapping pi({0, 1, 1, 0}, 2);
    CHECK(pi(0) == 0);
    CHECK(pi(2) == 1);
    CHECK(pi.size() == 4);
}

TEST_CASE("tanner graph mirrors the matrix") {
    const Protograph p(2, 4, 2, {1, 0, 1, 0, 0, 1, 0, 1});
    const TannerGraph g = TannerGraph::from_protograph(p);
    CHECK(g.num_cn == 2);
    CHECK(g.num_vn == 4);
    CHECK(g.edges.size() == 4);
    CHECK(g.find_edge(0, 0) >= 0);
    CHECK(g.find_edge(0, 2) >= 0);
    CHECK(g.find_edge(0, 1) == -1);
    for (int e : g.cn_edges[1]) {
        CHECK(g.edges[static_cast<size_t>(e)].cn == 1);
    }
}

TEST_CASE("base matrix parse accepts the canonical example") {
    const BaseMatrixFile f = parse_base_matrix("2 4\n1 0 1 0\n0 1 0 1\n", "mem");
    CHECK(f.proto.rows() == 2);
    CHECK(f.proto.cols() == 4);
    CHECK(f.proto.info_count() == 2);   // defaults to cols - rows
    CHECK(f.proto.at(0, 0) == 1);
    CHECK(f.proto.at(1, 3) == 1);
    CHECK(!f.mapping.has_value());
}

TEST_CASE("base matrix format is a fixed point of parse") {
    const BaseMatrixFile f = parse_base_matrix(
        "# comment\n2 4\nINFO 2\n1 1 1 0\n0 1 1 1\nPI 0 1 1 0\n", "mem");
    REQUIRE(f.mapping.has_value());
    const std::string canon = format_base_matrix(f.proto, f.mapping);
    const BaseMatrixFile g = parse_base_matrix(canon, "mem");
    CHECK(g.proto == f.proto);
    CHECK(*g.mapping == *f.mapping);
    CHECK(format_base_matrix(g.proto, g.mapping) == canon);
}

TEST_CASE("parse errors carry position and reason") {
    CHECK_THROWS_AS(parse_base_matrix("2 4\n1 0 2 0\n0 1 0 1\n", "m"), ParseError);
    try {
        parse_base_matrix("2 4\n1 0 2 0\n0 1 0 1\n", "m");
    } catch (const ParseError& e) {
        CHECK(e.line() == 2);
        CHECK(e.column() == 5);
        CHECK(std::string(e.what()).find("m:2:5") != std::string::npos);
    }
    CHECK_THROWS_AS(parse_base_matrix("2 4\n1 0 1\n0 1 0 1\n", "m"), ParseError);
    CHECK_THROWS_AS(parse_base_matrix("x 4\n", "m"), ParseError);
    CHECK_THROWS_AS(parse_base_matrix("2 4\n1 0 1 0\n", "m"), ParseError);
    CHECK_THROWS_AS(parse_base_matrix("4 4\n1 0 1 0\n0 1 0 1\n1 1 1 1\n1 0 0 1\n", "m"),
                    ParseError);   // needs an INFO line when cols <= rows
    CHECK_THROWS_AS(parse_base_matrix("2 4\n1 0 1 0\n0 1 0 1\nstray\n", "m"),
                    ParseError);
}

TEST_CASE("round trip through files") {
    const Protograph p(2, 4, 2, {1, 1, 1, 0, 0, 1, 1, 1});
    const BlockMapping pi({0, 1, 1, 0}, 2);
    const std::string path = "core_roundtrip.txt";
    save_base_matrix(p, pi, path);
    const BaseMatrixFile f = load_base_matrix(path);
    CHECK(f.proto == p);
    REQUIRE(f.mapping.has_value());
    CHECK(*f.mapping == pi);
    const BlockMapping only_pi = load_block_mapping(path);
    CHECK(only_pi == pi);
    std::remove(path.c_str());
}

}  // TEST_SUITE
