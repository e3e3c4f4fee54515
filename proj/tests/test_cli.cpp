#include <cstdlib>
#include <filesystem>
#include <string>
#include <sys/wait.h>
#include <vector>

#include "doctest.h"
#include "ldpc/codec.hpp"
#include "ldpc/io.hpp"
#include "ldpc/lift.hpp"
#include "ldpc/proto_template.hpp"
#include "ldpc/rng.hpp"
#include "ldpc/sim.hpp"

namespace fs = std::filesystem;
using namespace ldpc;

namespace {

const char* kWork = "cli_work";

std::string bin() { return std::string("\"") + LDPCTK_BIN + "\""; }

fs::path work(const std::string& name) {
    fs::create_directories(kWork);
    return fs::path(kWork) / name;
}

int run(const std::string& args, std::string* output = nullptr) {
    const fs::path cap = work("last_output.txt");
    const std::string cmd = bin() + " " + args + " >" + cap.string() + " 2>&1";
    const int status = std::system(cmd.c_str());
    if (output) *output = read_text_file(cap.string());
    REQUIRE(WIFEXITED(status));
    return WEXITSTATUS(status);
}

bool contains(const std::string& hay, const std::string& needle) {
    return hay.find(needle) != std::string::npos;
}

// QC code over the smallest template whose lifted parity part is invertible
std::string make_sim_code() {
    const ProtoTemplate t = canonical_template(8);
    Rng rng(19);
    for (int attempt = 0; attempt < 64; ++attempt) {
        Candidate c = sample_family(t, 0.5, rng);
        QcCode qc = assign_shifts_peg(instantiate(c), 8);
        SparseParityMatrix h = expand(qc);
        try {
            Encoder enc(h, qc.base.info_count() * qc.z);
        } catch (const std::runtime_error&) {
            continue;
        }
        const std::string path = work("sim_code.txt").string();
        save_qc(qc, path);
        return path;
    }
    throw std::runtime_error("no encodable code found");
}

}  // namespace

TEST_SUITE("cli") {

TEST_CASE("usage surface") {
    std::string out;
    CHECK(run("--version", &out) == 0);
    CHECK(contains(out, "ldpctk"));
    CHECK(run("", &out) == 2);                     // a subcommand is required
    CHECK(run("frobnicate", &out) == 2);
    CHECK(run("analyze", &out) == 2);              // --matrix is required
    CHECK(run("analyze --matrix x --bogus", &out) == 2);
    CHECK(run("--help", &out) == 0);
    CHECK(contains(out, "pipeline"));
}

TEST_CASE("analyze reports certification and exit status") {
    const std::string good = work("good.txt").string();
    write_text_file(good, "2 4\nINFO 2\n1 0 1 0\n0 1 0 1\nPI 0 1 1 0\n");
    std::string out;
    CHECK(run("analyze --matrix " + good, &out) == 0);
    CHECK(contains(out, "certified: yes"));

    const std::string csv = work("dive.csv").string();
    CHECK(run("analyze --matrix " + good + " --out " + csv, &out) == 0);
    CHECK(read_text_file(csv).rfind("vn,block,order,first_full\n", 0) == 0);

    const std::string weak = work("weak.txt").string();
    write_text_file(weak, "1 3\nINFO 2\n1 1 1\nPI 0 1 1\n");
    CHECK(run("analyze --matrix " + weak, &out) == 1);
    CHECK(contains(out, "certified: no"));

    const std::string nopi = work("nopi.txt").string();
    write_text_file(nopi, "1 3\nINFO 2\n1 1 1\n");
    CHECK(run("analyze --matrix " + nopi, &out) == 2);
    CHECK(contains(out, "PI"));

    CHECK(run("analyze --matrix " + work("missing.txt").string(), &out) == 3);
}

TEST_CASE("template emission") {
    const std::string path = work("template16.txt").string();
    std::string out;
    CHECK(run("template --n 16 --out " + path, &out) == 0);
    CHECK(contains(out, "template: 8x16"));
    const ProtoTemplate t = load_template(path);
    CHECK(t == canonical_template(16));
    CHECK(run("template --n 10", &out) == 2);   // not a multiple of four
}

TEST_CASE("threshold on a regular ensemble and a hopeless one") {
    const std::string reg = work("regular.txt").string();
    write_text_file(reg,
                    "3 6\nINFO 3\n1 1 1 1 1 1\n1 1 1 1 1 1\n1 1 1 1 1 1\n");
    std::string out;
    CHECK(run("threshold --matrix " + reg + " --precision 0.01", &out) == 0);
    CHECK(contains(out, "gamma_th"));
    CHECK(contains(out, "delta_cap"));

    const std::string lonely = work("lonely.txt").string();
    write_text_file(lonely, "1 3\nINFO 2\n1 0 1\n");
    CHECK(run("threshold --matrix " + lonely, &out) == 1);
    CHECK(contains(out, "not reached"));
}

TEST_CASE("lift writes a loadable deterministic qc code") {
    const std::string base = work("base.txt").string();
    write_text_file(base, "2 4\nINFO 2\n1 1 1 0\n0 1 1 1\nPI 0 1 1 0\n");
    const std::string qcpath = work("lifted.txt").string();
    std::string out;
    CHECK(run("lift --matrix " + base + " --z 4 --out " + qcpath, &out) == 0);
    CHECK(contains(out, "lifted          8x16"));
    CHECK(contains(out, "base_girth"));

    const QcCode qc = load_qc(qcpath);
    CHECK(qc.z == 4);
    const BaseMatrixFile bm = load_base_matrix(base);
    const QcCode again = assign_shifts_peg(bm.proto, 4);
    CHECK(qc.shifts == again.shifts);
}

TEST_CASE("decode single llr vectors") {
    const std::string qcpath = work("tiny_qc.txt").string();
    {
        const Protograph p(1, 2, 1, {1, 1});
        QcCode qc{p, 1, {0, 0}};
        save_qc(qc, qcpath);
    }
    const std::string agree = work("llr_agree.txt").string();
    write_text_file(agree, "5.0 5.0\n");
    std::string out;
    CHECK(run("decode --qc " + qcpath + " --llr " + agree, &out) == 0);
    CHECK(contains(out, "syndrome_zero   yes"));

    const std::string clash = work("llr_clash.txt").string();
    write_text_file(clash, "1000 -1000\n");
    CHECK(run("decode --qc " + qcpath + " --llr " + clash, &out) == 1);
    CHECK(contains(out, "syndrome_zero   no"));

    const std::string shortf = work("llr_short.txt").string();
    write_text_file(shortf, "1.5\n");
    CHECK(run("decode --qc " + qcpath + " --llr " + shortf, &out) == 2);
}

TEST_CASE("simulate sweeps are reproducible at any worker count") {
    const std::string qcpath = make_sim_code();
    const std::string pipath = work("pi8.txt").string();
    write_text_file(pipath, "PI 0 0 1 1 1 1 0 0\n");

    const std::string csv1 = work("sweep1.csv").string();
    const std::string csv2 = work("sweep2.csv").string();
    const std::string common = " --snrs 2,5 --min-block-errors 3 --max-trials 200"
                               " --seed 4 --channel bfc --pi " + pipath;
    std::string out;
    CHECK(run("simulate --qc " + qcpath + common + " --jobs 1 --out " + csv1,
              &out) == 0);
    CHECK(contains(out, "snr 2 dB"));
    CHECK(run("simulate --qc " + qcpath + common + " --jobs 3 --out " + csv2,
              &out) == 0);
    CHECK(read_text_file(csv1) == read_text_file(csv2));
    CHECK(read_records_csv(csv1).size() == 2);

    // bfc without a mapping is a usage error
    CHECK(run("simulate --qc " + qcpath +
                  " --snrs 2 --channel bfc --min-block-errors 1 --max-trials 10",
              &out) == 2);
}

TEST_CASE("slope from a results csv") {
    std::vector<SimRecord> recs(2);
    recs[0].snr_db = 6;
    recs[0].trials = 10000;
    recs[0].block_errors = 100;
    recs[1].snr_db = 16;
    recs[1].trials = 1000000;
    recs[1].block_errors = 100;
    const std::string csv = work("slope.csv").string();
    write_records_csv(csv, recs);

    std::string out;
    CHECK(run("slope --csv " + csv + " --window 0:20", &out) == 0);
    CHECK(contains(out, "slope           2"));
    CHECK(run("slope --csv " + csv + " --window 20:0", &out) == 2);
    CHECK(run("slope --csv " + work("nocsv.csv").string(), &out) == 3);
}

TEST_CASE("pipeline produces a complete reproducible run directory") {
    const std::string dir_a = work("run_a").string();
    const std::string dir_b = work("run_b").string();
    // n=12 is the smallest size where the search reliably surfaces designs
    // that both admit a systematic lift and converge under density evolution
    const std::string common =
        " --n 12 --generations 2 --z 4 --population 85 --snrs 4,8"
        " --awgn-snrs 4,6 --min-block-errors 5 --max-trials 300 --seed 1";
    std::string out;
    REQUIRE(run("pipeline" + common + " --jobs 2 --out " + dir_a, &out) == 0);
    CHECK(contains(out, "pipeline complete"));
    for (const char* name :
         {"template.txt", "ga_trace.csv", "best_protograph.txt",
          "dive_report.csv", "threshold.json", "qc_code.txt", "sim_bfc.csv",
          "sim_awgn.csv", "manifest.json"})
        CHECK(fs::exists(fs::path(dir_a) / name));

    REQUIRE(run("pipeline" + common + " --jobs 1 --out " + dir_b, &out) == 0);
    for (const char* name : {"ga_trace.csv", "best_protograph.txt",
                             "qc_code.txt", "sim_bfc.csv", "sim_awgn.csv"})
        CHECK(read_text_file((fs::path(dir_a) / name).string()) ==
              read_text_file((fs::path(dir_b) / name).string()));

    CHECK(run("report " + dir_a, &out) == 0);
    CHECK(contains(out, "gamma_th"));
    CHECK(contains(out, "slope_bfc"));

    const std::string empty = work("empty_run").string();
    fs::create_directories(empty);
    CHECK(run("report " + empty, &out) == 3);
    CHECK(contains(out, "incomplete run"));
}

}  // TEST_SUITE
