#include <cmath>
#include <stdexcept>
#include <vector>

#include "doctest.h"
#include "ldpc/codec.hpp"
#include "ldpc/lift.hpp"
#include "ldpc/proto_template.hpp"
#include "ldpc/rng.hpp"

using namespace ldpc;

namespace {

// small lifted code shared by the round-trip and symmetry cases; keeps
// sampling until the parity part of the lift is invertible
struct Fixture {
    QcCode qc;
    SparseParityMatrix h;
    Encoder enc;
    TannerGraph graph;

    static Fixture make() {
        const ProtoTemplate t = canonical_template(8);
        Rng rng(19);
        for (int attempt = 0; attempt < 64; ++attempt) {
            Candidate c = sample_family(t, 0.5, rng);
            QcCode qc = assign_shifts_peg(instantiate(c), 8);
            SparseParityMatrix h = expand(qc);
            try {
                Encoder enc(h, qc.base.info_count() * qc.z);
                TannerGraph g = TannerGraph::from_row_adjacency(h.cols, h.row_cols);
                return Fixture{std::move(qc), std::move(h), std::move(enc),
                               std::move(g)};
            } catch (const std::runtime_error&) {
                continue;   // singular draw; try the next family member
            }
        }
        throw std::runtime_error("no encodable fixture found");
    }
};

std::vector<uint8_t> random_info(Rng& rng, int k) {
    std::vector<uint8_t> v(static_cast<size_t>(k));
    for (auto& b : v) b = rng.bernoulli(0.5);
    return v;
}

std::vector<double> modulate(const std::vector<uint8_t>& cw, double mag) {
    std::vector<double> llr(cw.size());
    for (size_t i = 0; i < cw.size(); ++i) llr[i] = cw[i] ? -mag : mag;
    return llr;
}

}  // namespace

TEST_SUITE("codec") {

TEST_CASE("syndrome evaluation") {
    const Protograph p(2, 4, 2, {1, 1, 1, 0, 0, 1, 1, 1});
    const TannerGraph g = TannerGraph::from_protograph(p);
    CHECK(syndrome_zero(g, std::vector<uint8_t>{0, 0, 0, 0}));
    CHECK(!syndrome_zero(g, std::vector<uint8_t>{1, 0, 0, 0}));
    CHECK(syndrome_zero(g, std::vector<uint8_t>{1, 1, 0, 1}));   // row sums even
    CHECK_THROWS_AS(syndrome_zero(g, std::vector<uint8_t>{0, 0}),
                    std::invalid_argument);
}

TEST_CASE("systematic encoding against a hand-solved matrix") {
    // H = [A | I]: parity equals A times the info bits
    SparseParityMatrix h;
    h.rows = 2;
    h.cols = 4;
    h.row_cols = {{0, 1, 2}, {1, 3}};
    const Encoder enc(h, 2);
    CHECK(enc.n() == 4);
    CHECK(enc.k() == 2);
    CHECK(enc.encode(std::vector<uint8_t>{0, 0}) ==
          std::vector<uint8_t>{0, 0, 0, 0});
    CHECK(enc.encode(std::vector<uint8_t>{1, 0}) ==
          std::vector<uint8_t>{1, 0, 1, 0});
    CHECK(enc.encode(std::vector<uint8_t>{1, 1}) ==
          std::vector<uint8_t>{1, 1, 0, 1});
}

TEST_CASE("encoder rejects impossible shapes and singular parity parts") {
    SparseParityMatrix h;
    h.rows = 2;
    h.cols = 4;
    h.row_cols = {{0, 2, 3}, {1, 2, 3}};   // identical parity columns
    CHECK_THROWS_AS(Encoder(h, 2), std::runtime_error);
    CHECK_THROWS_AS(Encoder(h, 0), std::invalid_argument);
    CHECK_THROWS_AS(Encoder(h, 3), std::invalid_argument);   // r != n - k
}

TEST_CASE("encoded words satisfy every check and add linearly") {
    const Fixture f = Fixture::make();
    Rng rng(55);
    const int k = f.enc.k();
    CHECK(f.enc.encode(std::vector<uint8_t>(static_cast<size_t>(k), 0)) ==
          std::vector<uint8_t>(static_cast<size_t>(f.enc.n()), 0));
    for (int rep = 0; rep < 25; ++rep) {
        const std::vector<uint8_t> u = random_info(rng, k);
        const std::vector<uint8_t> v = random_info(rng, k);
        const std::vector<uint8_t> cu = f.enc.encode(u);
        const std::vector<uint8_t> cv = f.enc.encode(v);
        CHECK(syndrome_zero(f.graph, cu));
        // systematic prefix
        for (int i = 0; i < k; ++i) CHECK(cu[static_cast<size_t>(i)] == u[static_cast<size_t>(i)]);
        std::vector<uint8_t> w(u.size()), cw(cu.size());
        for (size_t i = 0; i < u.size(); ++i) w[i] = u[i] ^ v[i];
        for (size_t i = 0; i < cu.size(); ++i) cw[i] = cu[i] ^ cv[i];
        CHECK(f.enc.encode(w) == cw);
    }
}

TEST_CASE("noiseless transmission decodes in one pass") {
    const Fixture f = Fixture::make();
    Rng rng(56);
    for (int rep = 0; rep < 10; ++rep) {
        const std::vector<uint8_t> cw = f.enc.encode(random_info(rng, f.enc.k()));
        MinSumDecoder dec(f.graph, DecoderConfig{});
        const DecodeResult res = dec.decode(modulate(cw, 8.0));
        CHECK(res.word == cw);
        CHECK(res.iterations == 1);
        CHECK(res.syndrome_zero);
    }
}

TEST_CASE("check update: signs multiply, magnitudes take the scaled minimum") {
    const TannerGraph g = TannerGraph::from_protograph(Protograph(1, 3, 2, {1, 1, 1}));
    MinSumDecoder plain(g, DecoderConfig{1, 1.0, false});
    plain.decode(std::vector<double>{2.0, -1.0, 3.5});
    const std::vector<double>& p1 = plain.posteriors();
    CHECK(p1[0] == doctest::Approx(2.0 - 1.0));    // extrinsic -1.0
    CHECK(p1[1] == doctest::Approx(-1.0 + 2.0));
    CHECK(p1[2] == doctest::Approx(3.5 - 1.0));

    MinSumDecoder scaled(g, DecoderConfig{1, 0.75, false});
    scaled.decode(std::vector<double>{2.0, -1.0, 3.5});
    const std::vector<double>& p2 = scaled.posteriors();
    CHECK(p2[0] == doctest::Approx(2.0 - 0.75));
    CHECK(p2[1] == doctest::Approx(-1.0 + 1.5));
    CHECK(p2[2] == doctest::Approx(3.5 - 0.75));
}

TEST_CASE("all-zero llr decides the all-zero word") {
    const Fixture f = Fixture::make();
    const std::vector<double> llr(static_cast<size_t>(f.enc.n()), 0.0);

    MinSumDecoder eager(f.graph, DecoderConfig{50, 0.75, true});
    const DecodeResult a = eager.decode(llr);
    CHECK(a.word == std::vector<uint8_t>(llr.size(), 0));   // ties go to zero
    CHECK(a.syndrome_zero);
    CHECK(a.iterations == 1);

    MinSumDecoder patient(f.graph, DecoderConfig{7, 0.75, false});
    const DecodeResult b = patient.decode(llr);
    CHECK(b.word == std::vector<uint8_t>(llr.size(), 0));
    CHECK(b.iterations == 7);   // without early exit the budget is spent
}

TEST_CASE("decoding commutes with codeword sign flips") {
    const Fixture f = Fixture::make();
    Rng rng(57);
    const std::vector<uint8_t> c = f.enc.encode(random_info(rng, f.enc.k()));
    for (int rep = 0; rep < 5; ++rep) {
        std::vector<double> llr(static_cast<size_t>(f.enc.n()));
        for (auto& x : llr) x = 2.0 * rng.normal();
        std::vector<double> flipped = llr;
        for (size_t i = 0; i < llr.size(); ++i)
            if (c[i]) flipped[i] = -flipped[i];

        MinSumDecoder d1(f.graph, DecoderConfig{5, 0.75, false});
        MinSumDecoder d2(f.graph, DecoderConfig{5, 0.75, false});
        const DecodeResult r1 = d1.decode(llr);
        const DecodeResult r2 = d2.decode(flipped);
        for (size_t i = 0; i < llr.size(); ++i)
            CHECK(static_cast<int>(r2.word[i]) == (r1.word[i] ^ c[i]));
    }
}

TEST_CASE("hard decisions are invariant under positive scaling") {
    const Fixture f = Fixture::make();
    Rng rng(58);
    std::vector<double> llr(static_cast<size_t>(f.enc.n()));
    for (auto& x : llr) x = rng.normal();
    std::vector<double> big = llr;
    for (auto& x : big) x *= 2.0;   // power of two: bitwise-identical dynamics

    MinSumDecoder d1(f.graph, DecoderConfig{10, 0.75, false});
    MinSumDecoder d2(f.graph, DecoderConfig{10, 0.75, false});
    const DecodeResult r1 = d1.decode(llr);
    const DecodeResult r2 = d2.decode(big);
    CHECK(r1.word == r2.word);
    CHECK(r1.iterations == r2.iterations);
}

TEST_CASE("decoder configuration is validated") {
    const TannerGraph g = TannerGraph::from_protograph(Protograph(1, 2, 1, {1, 1}));
    CHECK_THROWS_AS(MinSumDecoder(g, DecoderConfig{0, 0.75, true}),
                    std::invalid_argument);
    CHECK_THROWS_AS(MinSumDecoder(g, DecoderConfig{10, 0.0, true}),
                    std::invalid_argument);
    CHECK_THROWS_AS(MinSumDecoder(g, DecoderConfig{10, 1.5, true}),
                    std::invalid_argument);
    MinSumDecoder dec(g, DecoderConfig{});
    CHECK_THROWS_AS(dec.decode(std::vector<double>{1.0}), std::invalid_argument);
}

TEST_CASE("a correctable error pattern is repaired") {
    const Fixture f = Fixture::make();
    Rng rng(59);
    const std::vector<uint8_t> cw = f.enc.encode(random_info(rng, f.enc.k()));
    std::vector<double> llr = modulate(cw, 6.0);
    size_t flip = 0;   // a bit with at least two checks is always repaired
    while (f.graph.vn_edges[flip].size() < 2) ++flip;
    llr[flip] = -llr[flip];
    MinSumDecoder dec(f.graph, DecoderConfig{});
    const DecodeResult res = dec.decode(llr);
    CHECK(res.syndrome_zero);
    CHECK(res.word == cw);
}

}  // TEST_SUITE
