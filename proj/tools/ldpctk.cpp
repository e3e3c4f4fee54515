// ldpctk: protograph design and evaluation toolkit for block-fading LDPC codes.
//
// Exit codes: 0 success (or analysis positive), 1 analysis negative,
// 2 usage or input-format error, 3 runtime failure.

#include <chrono>
#include <cmath>
#include <cstdint>
#include <ctime>
#include <filesystem>
#include <iostream>
#include <map>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"

#include "ldpc/codec.hpp"
#include "ldpc/dive.hpp"
#include "ldpc/ga.hpp"
#include "ldpc/io.hpp"
#include "ldpc/lift.hpp"
#include "ldpc/parallel.hpp"
#include "ldpc/proto_template.hpp"
#include "ldpc/protograph.hpp"
#include "ldpc/rcade.hpp"
#include "ldpc/rng.hpp"
#include "ldpc/sim.hpp"
#include "ldpc/version.hpp"

namespace fs = std::filesystem;
using nlohmann::json;
using namespace ldpc;

namespace {

// ---------------------------------------------------------------- utilities

std::string fnv_digest_hex(std::string_view data) {
    uint64_t h = 1469598103934665603ULL;
    for (unsigned char c : data) {
        h ^= c;
        h *= 1099511628211ULL;
    }
    char buf[17];
    std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
    return buf;
}

std::string file_digest(const std::string& path) {
    return fnv_digest_hex(read_text_file(path));
}

std::string now_iso8601() {
    const std::time_t t = std::chrono::system_clock::to_time_t(
        std::chrono::system_clock::now());
    std::tm tm{};
    gmtime_r(&t, &tm);
    char buf[32];
    std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", &tm);
    return buf;
}

// "a:b:step" inclusive sweep or "x,y,z" explicit list
std::vector<double> parse_snr_list(const std::string& text) {
    std::vector<double> out;
    if (text.find(':') != std::string::npos) {
        double a = 0, b = 0, step = 0;
        char c1 = 0, c2 = 0;
        std::istringstream is(text);
        if (!(is >> a >> c1 >> b >> c2 >> step) || c1 != ':' || c2 != ':' ||
            step <= 0 || !(is >> std::ws).eof())
            throw std::invalid_argument("expected SNR range a:b:step, got '" +
                                        text + "'");
        for (double v = a; v <= b + 1e-9; v += step) out.push_back(v);
    } else {
        std::string item;
        std::istringstream is(text);
        while (std::getline(is, item, ',')) {
            try {
                size_t pos = 0;
                out.push_back(std::stod(item, &pos));
                if (pos != item.size()) throw std::invalid_argument("");
            } catch (...) {
                throw std::invalid_argument("bad SNR value '" + item + "'");
            }
        }
    }
    if (out.empty()) throw std::invalid_argument("empty SNR list");
    return out;
}

std::pair<double, double> parse_window(const std::string& text) {
    double lo = 0, hi = 0;
    char c = 0;
    std::istringstream is(text);
    if (!(is >> lo >> c >> hi) || c != ':' || !(is >> std::ws).eof() || hi < lo)
        throw std::invalid_argument("expected window lo:hi, got '" + text + "'");
    return {lo, hi};
}

struct ManifestInfo {
    std::string command;
    std::vector<std::string> argv;
    uint64_t seed = 0;
    std::map<std::string, std::string> inputs;    // path -> digest
    std::map<std::string, std::string> outputs;   // name -> digest
    std::string started;
};

void write_manifest(const fs::path& dir, const ManifestInfo& m) {
    json j;
    j["tool"] = kToolName;
    j["version"] = kToolVersion;
    j["command"] = m.command;
    j["argv"] = m.argv;
    j["seed"] = m.seed;
    j["inputs"] = m.inputs;
    j["outputs"] = m.outputs;
    j["started_at"] = m.started;
    j["finished_at"] = now_iso8601();
    write_text_file((dir / "manifest.json").string(), j.dump(2) + "\n");
}

std::string dive_table_csv(const Protograph& p, const BlockMapping& pi,
                           const DiveReport& rep) {
    std::ostringstream os;
    os << "vn,block,order,first_full\n";
    for (int i = 0; i < p.cols(); ++i)
        os << i << ',' << pi(i) << ',' << rep.order[static_cast<size_t>(i)] << ','
           << rep.first_full[static_cast<size_t>(i)] << '\n';
    return os.str();
}

int certified_iterations(const Protograph& p, const DiveReport& rep,
                         std::vector<int>* failing = nullptr) {
    int iters = 0;
    bool ok = true;
    for (int i = 0; i < p.info_count(); ++i) {
        const int ff = rep.first_full[static_cast<size_t>(i)];
        if (ff < 0) {
            ok = false;
            if (failing) failing->push_back(i);
        } else {
            iters = std::max(iters, ff);
        }
    }
    return ok ? iters : -1;
}

std::vector<double> read_llr_file(const std::string& path) {
    std::istringstream is(read_text_file(path));
    std::vector<double> llr;
    double v = 0;
    while (is >> v) llr.push_back(v);
    if (!is.eof()) throw ParseError(path, 1, 1, "non-numeric LLR entry");
    return llr;
}

SimRecord sweep_point(const Encoder& enc, const DecoderConfig& dec,
                      const ChannelConfig& ch, const StopRule& stop,
                      uint64_t seed, int jobs) {
    SimSetup setup;
    setup.encoder = &enc;
    setup.decoder = dec;
    setup.channel = ch;
    return run_montecarlo(setup, stop, seed, jobs);
}

// ------------------------------------------------------------- subcommands

struct AnalyzeArgs {
    std::string matrix;
    int l_max = 0;
    std::string out;
};

int cmd_analyze(const AnalyzeArgs& a) {
    const BaseMatrixFile in = load_base_matrix(a.matrix);
    if (!in.mapping)
        throw ParseError(a.matrix, 1, 1, "analysis needs a PI block-mapping line");
    const Protograph& p = in.proto;
    const BlockMapping& pi = *in.mapping;
    const int l_max = a.l_max > 0 ? a.l_max : dive_iteration_cap(p.cols());
    const DiveReport rep = dive_run(p, pi, l_max);

    std::cout << "vn  block  order  first_full\n";
    for (int i = 0; i < p.cols(); ++i)
        std::cout << i << (i < 10 ? "   " : "  ") << pi(i) << "      "
                  << rep.order[static_cast<size_t>(i)] << "      "
                  << rep.first_full[static_cast<size_t>(i)] << "\n";
    if (!a.out.empty()) write_text_file(a.out, dive_table_csv(p, pi, rep));

    std::vector<int> failing;
    const int iters = certified_iterations(p, rep, &failing);
    if (iters >= 0) {
        std::cout << "certified: yes (full diversity, " << iters
                  << " iterations)\n";
        return 0;
    }
    std::cout << "certified: no (info variable nodes without full diversity:";
    for (int i : failing) std::cout << ' ' << i;
    std::cout << ")\n";
    return 1;
}

struct TemplateArgs {
    int n = 16;
    std::string out;
};

int cmd_template(const TemplateArgs& a) {
    const ProtoTemplate t = canonical_template(a.n);
    const TemplateCheck check = validate_structure(t);
    if (!check.ok()) {
        for (const std::string& v : check.violations)
            std::cerr << "template violation: " << v << "\n";
        return 3;
    }
    const std::string text = format_template(t);
    if (a.out.empty())
        std::cout << text;
    else
        write_text_file(a.out, text);
    std::cout << "template: " << t.rows << "x" << t.cols << ", "
              << t.designable.size() << " designable entries\n";
    return 0;
}

struct ThresholdArgs {
    std::string matrix;
    std::string punctured;
    double precision = kDefaultPrecisionDb;
};

int cmd_threshold(const ThresholdArgs& a) {
    const BaseMatrixFile in = load_base_matrix(a.matrix);
    const Protograph& p = in.proto;
    std::vector<uint8_t> punct;
    if (!a.punctured.empty()) {
        punct.assign(static_cast<size_t>(p.cols()), 0);
        std::istringstream is(a.punctured);
        std::string item;
        while (std::getline(is, item, ',')) {
            const int i = std::stoi(item);
            if (i < 0 || i >= p.cols())
                throw std::invalid_argument("punctured index out of range");
            punct[static_cast<size_t>(i)] = 1;
        }
    }
    const double rate = code_rate(p);
    const ThresholdResult th = threshold(p, rate, punct, a.precision);
    std::cout << "rate            " << rate << "\n";
    std::cout << "shannon_limit   " << shannon_limit_db(rate) << " dB\n";
    if (!th.converged) {
        std::cout << "gamma_th        not reached by " << kThresholdHiDb
                  << " dB (density evolution never converges)\n";
        return 1;
    }
    std::cout << "gamma_th        " << th.gamma_th_db << " dB\n";
    std::cout << "delta_cap       " << th.gap_db << " dB\n";
    std::cout << "iterations      " << th.iterations_at_threshold << "\n";
    return 0;
}

struct DesignArgs {
    std::string template_path;
    int generations = 50;
    uint64_t seed = 1;
    std::string out;
    int population = 100;
    int elites = 5;
    double mutation = 0.3;
    int stagnation = 30;
    double precision = kDefaultPrecisionDb;
    double density = 0.25;
    int jobs = 0;
};

int cmd_design(const DesignArgs& a, const std::vector<std::string>& argv) {
    ManifestInfo mi;
    mi.command = "design";
    mi.argv = argv;
    mi.seed = a.seed;
    mi.started = now_iso8601();
    mi.inputs[a.template_path] = file_digest(a.template_path);

    const ProtoTemplate t = load_template(a.template_path);
    GaConfig cfg;
    cfg.population_size = a.population;
    cfg.elite_count = a.elites;
    cfg.mutation_probability = a.mutation;
    cfg.max_generations = a.generations;
    cfg.stagnation_limit = a.stagnation;
    cfg.seed = a.seed;
    cfg.de_precision_db = a.precision;
    cfg.init_density = a.density;
    cfg.jobs = a.jobs > 0 ? a.jobs : default_jobs();

    const GaResult res = run_ga(t, cfg);
    const Protograph best = instantiate(res.best.candidate);

    fs::create_directories(a.out);
    const fs::path dir(a.out);
    write_text_file((dir / "ga_trace.csv").string(),
                    format_ga_trace_csv(res.trace));
    save_base_matrix(best, t.mapping, (dir / "best_protograph.txt").string());
    mi.outputs["ga_trace.csv"] = file_digest((dir / "ga_trace.csv").string());
    mi.outputs["best_protograph.txt"] =
        file_digest((dir / "best_protograph.txt").string());
    write_manifest(dir, mi);

    std::cout << "generations     " << res.generations_run
              << (res.stagnated ? " (stagnated)" : "") << "\n";
    std::cout << "best_threshold  " << res.best.fitness << " dB\n";
    std::cout << "certified_iters " << res.best.certified_iterations << "\n";
    std::cout << "wrote " << (dir / "ga_trace.csv").string() << ", "
              << (dir / "best_protograph.txt").string() << "\n";
    return 0;
}

struct LiftArgs {
    std::string matrix;
    int z = 32;
    uint64_t seed = 0;   // accepted for interface stability; expansion is
                         // deterministic, so the value is unused
    std::string out;
};

int cmd_lift(const LiftArgs& a) {
    const BaseMatrixFile in = load_base_matrix(a.matrix);
    const QcCode qc = assign_shifts_peg(in.proto, a.z);
    if (!a.out.empty()) save_qc(qc, a.out);
    const int g_base = girth(in.proto);
    const int g_lift = girth_qc(qc);
    auto show = [](int g) {
        if (g == kGirthInfinity) return std::string("none (acyclic)");
        if (g > kGirthSearchCap) return ">=" + std::to_string(g);
        return std::to_string(g);
    };
    std::cout << "lifted          " << qc.lifted_rows() << "x" << qc.lifted_cols()
              << " (Z=" << a.z << ")\n";
    std::cout << "base_girth      " << show(g_base) << "\n";
    std::cout << "lifted_girth    " << show(g_lift) << "\n";
    return 0;
}

struct SimulateArgs {
    std::string qc;
    std::string channel = "awgn";
    std::string pi;
    std::string snrs;
    uint64_t min_block_errors = 100;
    uint64_t max_trials = 1000000;
    uint64_t seed = 1;
    std::string out;
    int jobs = 0;
    int iterations = 50;
    double alpha = 0.75;
};

int cmd_simulate(const SimulateArgs& a) {
    const QcCode qc = load_qc(a.qc);
    const SparseParityMatrix h = expand(qc);
    const Encoder enc(h, h.cols - h.rows);
    const std::vector<double> snrs = parse_snr_list(a.snrs);

    ChannelConfig ch;
    ch.rate = static_cast<double>(enc.k()) / enc.n();
    if (a.channel == "bfc") {
        ch.kind = ChannelKind::bfc;
        if (a.pi.empty())
            throw std::invalid_argument("bfc channel needs --pi MAPPING_FILE");
        BlockMapping pi = load_block_mapping(a.pi);
        if (pi.size() == qc.base.cols())
            pi = expand_block_mapping(pi, qc.z);
        if (pi.size() != enc.n())
            throw std::invalid_argument(
                "mapping covers neither the base nor the lifted code");
        ch.mapping = std::move(pi);
        ch.blocks = ch.mapping.block_count;
    } else if (a.channel != "awgn") {
        throw std::invalid_argument("channel must be bfc or awgn");
    }

    DecoderConfig dec;
    dec.max_iterations = a.iterations;
    dec.alpha = a.alpha;
    const StopRule stop{a.min_block_errors, a.max_trials};
    const int jobs = a.jobs > 0 ? a.jobs : default_jobs();

    std::vector<SimRecord> records;
    for (size_t i = 0; i < snrs.size(); ++i) {
        ch.snr_db = snrs[i];
        const SimRecord rec = sweep_point(enc, dec, ch, stop,
                                          derive_seed(a.seed, "point", i), jobs);
        std::cout << "snr " << rec.snr_db << " dB: trials " << rec.trials
                  << ", bler " << rec.bler() << ", ber " << rec.ber() << "\n";
        records.push_back(rec);
    }
    if (!a.out.empty()) write_records_csv(a.out, records);
    return 0;
}

struct SlopeArgs {
    std::string csv;
    std::string window;
};

int cmd_slope(const SlopeArgs& a) {
    const std::vector<SimRecord> records = read_records_csv(a.csv);
    double lo = -1e300, hi = 1e300;
    if (!a.window.empty()) std::tie(lo, hi) = parse_window(a.window);
    const SlopeEstimate est = estimate_slope(records, lo, hi);
    std::cout << "slope           " << est.d << "\n";
    std::cout << "window          " << est.window_lo << " .. " << est.window_hi
              << " dB (" << est.points << " points)\n";
    std::cout << "fit_residual    " << est.residual << "\n";
    return 0;
}

struct DecodeArgs {
    std::string qc;
    std::string llr;
    int iterations = 50;
    double alpha = 0.75;
};

int cmd_decode(const DecodeArgs& a) {
    const QcCode qc = load_qc(a.qc);
    const SparseParityMatrix h = expand(qc);
    const std::vector<double> llr = read_llr_file(a.llr);
    if (static_cast<int>(llr.size()) != h.cols)
        throw std::invalid_argument("LLR count " + std::to_string(llr.size()) +
                                    " does not match code length " +
                                    std::to_string(h.cols));
    DecoderConfig cfg;
    cfg.max_iterations = a.iterations;
    cfg.alpha = a.alpha;
    MinSumDecoder dec(TannerGraph::from_row_adjacency(h.cols, h.row_cols), cfg);
    const DecodeResult res = dec.decode(llr);
    for (uint8_t b : res.word) std::cout << static_cast<int>(b);
    std::cout << "\niterations      " << res.iterations << "\n";
    std::cout << "syndrome_zero   " << (res.syndrome_zero ? "yes" : "no") << "\n";
    return res.syndrome_zero ? 0 : 1;
}

struct PipelineArgs {
    int n = 16;
    int generations = 10;
    int z = 32;
    std::string snrs = "6:16:2";
    std::string awgn_snrs;
    uint64_t seed = 1;
    std::string out;
    uint64_t min_block_errors = 100;
    uint64_t max_trials = 200000;
    int population = 100;
    int jobs = 0;
};

int cmd_pipeline(const PipelineArgs& a, const std::vector<std::string>& argv) {
    ManifestInfo mi;
    mi.command = "pipeline";
    mi.argv = argv;
    mi.seed = a.seed;
    mi.started = now_iso8601();
    fs::create_directories(a.out);
    const fs::path dir(a.out);
    const int jobs = a.jobs > 0 ? a.jobs : default_jobs();

    auto stage = [](const char* name, auto&& fn) {
        try {
            return fn();
        } catch (const std::exception& e) {
            throw std::runtime_error(std::string("stage ") + name + ": " +
                                     e.what());
        }
    };
    auto emit = [&](const char* name, const std::string& content) {
        write_text_file((dir / name).string(), content);
        mi.outputs[name] = fnv_digest_hex(content);
        std::cout << "wrote " << (dir / name).string() << "\n";
    };

    // 1. template
    const ProtoTemplate t = stage("template", [&] {
        ProtoTemplate tt = canonical_template(a.n);
        const TemplateCheck check = validate_structure(tt);
        if (!check.ok())
            throw std::runtime_error("template fails its structural audit");
        return tt;
    });
    emit("template.txt", format_template(t));

    // 2. genetic search
    const GaResult ga = stage("design", [&] {
        GaConfig cfg;
        cfg.population_size = a.population;
        cfg.max_generations = a.generations;
        cfg.seed = derive_seed(a.seed, "design", 0);
        cfg.jobs = jobs;
        return run_ga(t, cfg);
    });
    emit("ga_trace.csv", format_ga_trace_csv(ga.trace));

    // 3. lifting.  Full base rank does not guarantee that the lifted parity
    //    submatrix stays invertible, so walk the ranked population and keep
    //    the best design whose lift admits a systematic encoder.  Every
    //    artifact below then describes the same working code.
    std::optional<Protograph> chosen;
    std::optional<QcCode> qc;
    std::optional<Encoder> enc;
    size_t rank = 0;
    stage("lift", [&] {
        for (size_t i = 0; i < ga.final_population.size(); ++i) {
            const ScoredCandidate& sc = ga.final_population[i];
            if (!sc.valid || !std::isfinite(sc.fitness)) continue;
            Protograph p = instantiate(sc.candidate);
            QcCode q = assign_shifts_peg(p, a.z);
            const SparseParityMatrix hh = expand(q);
            try {
                enc.emplace(hh, hh.cols - hh.rows);
            } catch (const std::runtime_error&) {
                continue;
            }
            chosen = std::move(p);
            qc = std::move(q);
            rank = i;
            return;
        }
        throw std::runtime_error(
            "no design in the final population lifts to a systematically "
            "encodable code at Z=" + std::to_string(a.z));
    });
    if (rank > 0)
        std::cout << "note: the top " << rank << " design(s) have no "
                  << "systematic lift at Z=" << a.z << "; using rank " << rank
                  << " (threshold " << ga.final_population[rank].fitness
                  << " dB)\n";
    const Protograph& best = *chosen;
    emit("best_protograph.txt", format_base_matrix(best, t.mapping));

    // 4. diversity certificate
    const DiveReport dive = stage("certify", [&] {
        DiveReport rep = dive_run(best, t.mapping, dive_iteration_cap(best.cols()));
        if (certified_iterations(best, rep) < 0)
            throw std::runtime_error("best design lost full-diversity certification");
        return rep;
    });
    emit("dive_report.csv", dive_table_csv(best, t.mapping, dive));

    // 5. decoding threshold
    const double rate = code_rate(best);
    const ThresholdResult th = stage("threshold", [&] {
        ThresholdResult r = threshold(best, rate);
        if (!r.converged)
            throw std::runtime_error("density evolution never converges");
        return r;
    });
    {
        json j;
        j["rate"] = rate;
        j["gamma_th_db"] = th.gamma_th_db;
        j["delta_cap_db"] = th.gap_db;
        j["shannon_limit_db"] = shannon_limit_db(rate);
        j["iterations"] = th.iterations_at_threshold;
        j["certified_iterations"] = certified_iterations(best, dive);
        emit("threshold.json", j.dump(2) + "\n");
    }
    emit("qc_code.txt", format_qc(*qc));
    const DecoderConfig dec;
    const StopRule stop{a.min_block_errors, a.max_trials};

    const std::vector<SimRecord> bfc = stage("simulate-bfc", [&] {
        ChannelConfig ch;
        ch.kind = ChannelKind::bfc;
        ch.rate = static_cast<double>(enc->k()) / enc->n();
        ch.mapping = expand_block_mapping(t.mapping, a.z);
        ch.blocks = ch.mapping.block_count;
        std::vector<SimRecord> recs;
        const std::vector<double> snrs = parse_snr_list(a.snrs);
        for (size_t i = 0; i < snrs.size(); ++i) {
            ch.snr_db = snrs[i];
            recs.push_back(sweep_point(*enc, dec, ch, stop,
                                       derive_seed(a.seed, "sim-bfc", i), jobs));
            std::cout << "bfc snr " << snrs[i] << " dB: bler "
                      << recs.back().bler() << "\n";
        }
        return recs;
    });
    emit("sim_bfc.csv", format_records_csv(bfc));

    const std::vector<SimRecord> awgn = stage("simulate-awgn", [&] {
        ChannelConfig ch;
        ch.rate = static_cast<double>(enc->k()) / enc->n();
        std::vector<double> snrs;
        if (!a.awgn_snrs.empty()) {
            snrs = parse_snr_list(a.awgn_snrs);
        } else {
            snrs = {th.gamma_th_db + 1.0, th.gamma_th_db + 1.5,
                    th.gamma_th_db + 2.0};
        }
        std::vector<SimRecord> recs;
        for (size_t i = 0; i < snrs.size(); ++i) {
            ch.snr_db = snrs[i];
            recs.push_back(sweep_point(*enc, dec, ch, stop,
                                       derive_seed(a.seed, "sim-awgn", i), jobs));
            std::cout << "awgn snr " << snrs[i] << " dB: bler "
                      << recs.back().bler() << "\n";
        }
        return recs;
    });
    emit("sim_awgn.csv", format_records_csv(awgn));

    write_manifest(dir, mi);
    std::cout << "pipeline complete: " << dir.string() << "\n";
    return 0;
}

struct ReportArgs {
    std::string dir;
};

int cmd_report(const ReportArgs& a) {
    const fs::path dir(a.dir);
    auto need = [&](const char* name, const char* producing_stage) {
        const fs::path p = dir / name;
        if (!fs::exists(p))
            throw std::runtime_error(std::string("incomplete run: stage ") +
                                     producing_stage + " artifact " + name +
                                     " is missing");
        return p.string();
    };

    const json th = json::parse(read_text_file(need("threshold.json", "threshold")));
    const BaseMatrixFile best =
        load_base_matrix(need("best_protograph.txt", "design"));
    const QcCode qc = load_qc(need("qc_code.txt", "lift"));
    const std::vector<SimRecord> bfc =
        read_records_csv(need("sim_bfc.csv", "simulate-bfc"));
    const std::vector<SimRecord> awgn =
        read_records_csv(need("sim_awgn.csv", "simulate-awgn"));
    need("dive_report.csv", "certify");
    need("manifest.json", "manifest");

    const int g = girth_qc(qc);
    auto slope_of = [](const std::vector<SimRecord>& recs) -> std::string {
        try {
            const SlopeEstimate est = estimate_slope(recs, -1e300, 1e300);
            std::ostringstream os;
            os << est.d << " (" << est.points << " points, " << est.window_lo
               << ".." << est.window_hi << " dB)";
            return os.str();
        } catch (const std::exception&) {
            return "n/a (not enough points with errors)";
        }
    };

    std::cout << "code            " << best.proto.rows() << "x"
              << best.proto.cols() << " lifted Z=" << qc.z << " (N="
              << qc.lifted_cols() << ")\n";
    std::cout << "gamma_th        " << th.at("gamma_th_db").get<double>()
              << " dB\n";
    std::cout << "delta_cap       " << th.at("delta_cap_db").get<double>()
              << " dB\n";
    std::cout << "certified_iters " << th.at("certified_iterations").get<int>()
              << "\n";
    std::cout << "girth           "
              << (g == kGirthInfinity
                      ? std::string("none (acyclic)")
                      : g > kGirthSearchCap ? ">=" + std::to_string(g)
                                            : std::to_string(g))
              << "\n";
    std::cout << "slope_bfc       " << slope_of(bfc) << "\n";
    std::cout << "slope_awgn      " << slope_of(awgn) << "\n";
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"protograph LDPC design and evaluation toolkit"};
    app.set_version_flag("--version", std::string(kToolName) + " " + kToolVersion);
    app.require_subcommand(1);

    std::vector<std::string> argv_vec(argv, argv + argc);

    AnalyzeArgs an;
    CLI::App* c_an = app.add_subcommand(
        "analyze", "diversity evolution report for a mapped base matrix");
    c_an->add_option("--matrix", an.matrix, "base matrix file with a PI line")
        ->required();
    c_an->add_option("--l-max", an.l_max, "iteration budget (default 4*cols)");
    c_an->add_option("--out", an.out, "write the per-VN table as CSV");

    TemplateArgs te;
    CLI::App* c_te = app.add_subcommand(
        "template", "emit the canonical rate-1/2 two-block template");
    c_te->add_option("--n", te.n, "column count, divisible by 4")->required();
    c_te->add_option("--out", te.out, "output file (default stdout)");

    ThresholdArgs th;
    CLI::App* c_th =
        app.add_subcommand("threshold", "decoding threshold by density evolution");
    c_th->add_option("--matrix", th.matrix, "base matrix file")->required();
    c_th->add_option("--punctured", th.punctured, "comma-separated VN indices");
    c_th->add_option("--precision", th.precision, "bisection precision in dB");

    DesignArgs de;
    CLI::App* c_de =
        app.add_subcommand("design", "genetic search over a template family");
    c_de->add_option("--template", de.template_path, "template file")->required();
    c_de->add_option("--generations", de.generations, "generation budget");
    c_de->add_option("--seed", de.seed, "master seed");
    c_de->add_option("--out", de.out, "output directory")->required();
    c_de->add_option("--population", de.population, "population size");
    c_de->add_option("--elites", de.elites, "elite count");
    c_de->add_option("--mutation", de.mutation, "mutation probability");
    c_de->add_option("--stagnation", de.stagnation, "stagnation limit");
    c_de->add_option("--precision", de.precision, "threshold precision in dB");
    c_de->add_option("--density", de.density, "initial sampling density");
    c_de->add_option("--jobs", de.jobs, "worker threads (0 = auto)");

    LiftArgs li;
    CLI::App* c_li = app.add_subcommand("lift", "quasi-cyclic lift of a base matrix");
    c_li->add_option("--matrix", li.matrix, "base matrix file")->required();
    c_li->add_option("--z", li.z, "lifting factor")->required();
    c_li->add_option("--seed", li.seed,
                     "accepted for compatibility; lifting is deterministic");
    c_li->add_option("--out", li.out, "QC code output file");

    SimulateArgs si;
    CLI::App* c_si = app.add_subcommand("simulate", "Monte-Carlo link simulation");
    c_si->add_option("--qc", si.qc, "QC code file")->required();
    c_si->add_option("--channel", si.channel, "bfc or awgn");
    c_si->add_option("--pi", si.pi, "block-mapping file (bfc)");
    c_si->add_option("--snrs", si.snrs, "a:b:step range or comma list")->required();
    c_si->add_option("--min-block-errors", si.min_block_errors, "stop rule");
    c_si->add_option("--max-trials", si.max_trials, "trial cap per point");
    c_si->add_option("--seed", si.seed, "master seed");
    c_si->add_option("--out", si.out, "results CSV");
    c_si->add_option("--jobs", si.jobs, "worker threads (0 = auto)");
    c_si->add_option("--iterations", si.iterations, "decoder iterations");
    c_si->add_option("--alpha", si.alpha, "min-sum normalization");

    SlopeArgs sl;
    CLI::App* c_sl =
        app.add_subcommand("slope", "diversity slope from a results CSV");
    c_sl->add_option("--csv", sl.csv, "results CSV")->required();
    c_sl->add_option("--window", sl.window, "lo:hi SNR window in dB");

    DecodeArgs dc;
    CLI::App* c_dc = app.add_subcommand("decode", "decode one LLR vector");
    c_dc->add_option("--qc", dc.qc, "QC code file")->required();
    c_dc->add_option("--llr", dc.llr, "whitespace-separated channel LLRs")
        ->required();
    c_dc->add_option("--iterations", dc.iterations, "decoder iterations");
    c_dc->add_option("--alpha", dc.alpha, "min-sum normalization");

    PipelineArgs pi;
    CLI::App* c_pi = app.add_subcommand(
        "pipeline", "template -> design -> certify -> threshold -> lift -> simulate");
    c_pi->add_option("--n", pi.n, "template columns, divisible by 4");
    c_pi->add_option("--generations", pi.generations, "GA generations");
    c_pi->add_option("--z", pi.z, "lifting factor");
    c_pi->add_option("--snrs", pi.snrs, "BFC sweep, a:b:step or comma list");
    c_pi->add_option("--awgn-snrs", pi.awgn_snrs,
                     "AWGN sweep (default: threshold + 1.0/1.5/2.0 dB)");
    c_pi->add_option("--seed", pi.seed, "master seed");
    c_pi->add_option("--out", pi.out, "run directory")->required();
    c_pi->add_option("--min-block-errors", pi.min_block_errors, "stop rule");
    c_pi->add_option("--max-trials", pi.max_trials, "trial cap per point");
    c_pi->add_option("--population", pi.population, "GA population size");
    c_pi->add_option("--jobs", pi.jobs, "worker threads (0 = auto)");

    ReportArgs re;
    CLI::App* c_re = app.add_subcommand("report", "summarize a pipeline run directory");
    c_re->add_option("dir", re.dir, "run directory")->required();

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::CallForVersion& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return 2;
    }

    try {
        if (c_an->parsed()) return cmd_analyze(an);
        if (c_te->parsed()) return cmd_template(te);
        if (c_th->parsed()) return cmd_threshold(th);
        if (c_de->parsed()) return cmd_design(de, argv_vec);
        if (c_li->parsed()) return cmd_lift(li);
        if (c_si->parsed()) return cmd_simulate(si);
        if (c_sl->parsed()) return cmd_slope(sl);
        if (c_dc->parsed()) return cmd_decode(dc);
        if (c_pi->parsed()) return cmd_pipeline(pi, argv_vec);
        if (c_re->parsed()) return cmd_report(re);
    } catch (const ParseError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const std::invalid_argument& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 3;
    }
    return 2;
}
