#include <algorithm>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"

#include "grandmp/channel.hpp"
#include "grandmp/decoder.hpp"
#include "grandmp/pmult.hpp"
#include "grandmp/polar.hpp"
#include "grandmp/qam.hpp"
#include "grandmp/reference_costs.hpp"
#include "grandmp/rng.hpp"
#include "grandmp/sim.hpp"

namespace {

using namespace grandmp;

/// Bad input that CLI11's validators could not catch; maps to exit code 2.
struct UsageError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

std::string fmt_double(double v) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.6g", v);
    return buf;
}

std::string resolve_sequence_path(const std::string& flag_value) {
    std::vector<std::string> tried;
    auto usable = [&tried](const std::string& path) {
        if (path.empty()) return false;
        tried.push_back(path);
        return std::filesystem::exists(path);
    };

    if (!flag_value.empty()) {
        if (std::filesystem::exists(flag_value)) return flag_value;
        throw std::runtime_error("sequence file not found: " + flag_value);
    }
    if (const char* env = std::getenv("GRANDMP_SEQUENCE_FILE"); env != nullptr && *env != '\0') {
        if (std::filesystem::exists(env)) return env;
        throw std::runtime_error("sequence file from GRANDMP_SEQUENCE_FILE not found: " +
                                 std::string(env));
    }
#ifdef GRANDMP_INSTALL_SEQUENCE_PATH
    if (usable(GRANDMP_INSTALL_SEQUENCE_PATH)) return GRANDMP_INSTALL_SEQUENCE_PATH;
#endif
    std::error_code ec;
    const auto exe = std::filesystem::read_symlink("/proc/self/exe", ec);
    if (!ec) {
        const auto beside = exe.parent_path().parent_path() / "share" / "grandmp" /
                            "nr_polar_reliability_sequence.txt";
        if (usable(beside.string())) return beside.string();
    }
#ifdef GRANDMP_SOURCE_SEQUENCE_PATH
    if (usable(GRANDMP_SOURCE_SEQUENCE_PATH)) return GRANDMP_SOURCE_SEQUENCE_PATH;
#endif
    std::string msg = "reliability sequence file not found; pass --sequence-file or set "
                      "GRANDMP_SEQUENCE_FILE. Tried:";
    for (const auto& p : tried) msg += "\n  " + p;
    throw std::runtime_error(msg);
}

std::vector<double> parse_grid(const std::string& text) {
    std::vector<double> grid;
    if (text.find(':') != std::string::npos) {
        double start = 0, step = 0, stop = 0;
        char tail = 0;
        if (std::sscanf(text.c_str(), "%lf:%lf:%lf%c", &start, &step, &stop, &tail) != 3) {
            throw UsageError("--ebn0 range must be start:step:stop, got '" + text + "'");
        }
        if (step <= 0.0) {
            throw UsageError("--ebn0 range step must be positive");
        }
        // Inclusive upper bound with slack for accumulated rounding.
        for (double v = start; v <= stop + 1e-9 * std::max(1.0, step); v += step) {
            grid.push_back(v);
        }
    } else {
        std::stringstream ss(text);
        std::string item;
        while (std::getline(ss, item, ',')) {
            try {
                std::size_t used = 0;
                const double v = std::stod(item, &used);
                if (used != item.size()) throw std::invalid_argument(item);
                grid.push_back(v);
            } catch (const std::exception&) {
                throw UsageError("--ebn0 entry is not a number: '" + item + "'");
            }
        }
    }
    if (grid.empty()) {
        throw UsageError("--ebn0 produced an empty grid");
    }
    return grid;
}

BitVector parse_hex_codeword(const std::string& hex, std::size_t n_bits) {
    std::string digits = hex;
    if (digits.rfind("0x", 0) == 0 || digits.rfind("0X", 0) == 0) digits.erase(0, 2);
    if (digits.size() * 4 != n_bits) {
        throw UsageError("--codeword must be " + std::to_string(n_bits / 4) +
                         " hex digits for N=" + std::to_string(n_bits) + ", got " +
                         std::to_string(digits.size()));
    }
    BitVector bits(n_bits);
    for (std::size_t i = 0; i < digits.size(); ++i) {
        const char c = digits[i];
        int v = 0;
        if (c >= '0' && c <= '9') v = c - '0';
        else if (c >= 'a' && c <= 'f') v = c - 'a' + 10;
        else if (c >= 'A' && c <= 'F') v = c - 'A' + 10;
        else throw UsageError(std::string("--codeword has a non-hex digit '") + c + "'");
        for (int b = 0; b < 4; ++b) {
            bits.set(i * 4 + b, ((v >> (3 - b)) & 1) != 0);
        }
    }
    return bits;
}

std::size_t symbols_for(int n, unsigned mqam) {
    const std::size_t block = std::size_t{1} << n;
    const std::size_t group = 2 * qam_bits_per_axis(mqam);
    return (block + group - 1) / group;
}

unsigned effective_cutoff(int n, unsigned mqam, unsigned s, bool warn) {
    const std::size_t symbols = symbols_for(n, mqam);
    if (s > symbols) {
        if (warn) {
            std::cerr << "warning: cutoff S=" << s << " exceeds the L=" << symbols
                      << " received symbols; clamping S to " << symbols << "\n";
        }
        return static_cast<unsigned>(symbols);
    }
    return s;
}

// ---------------------------------------------------------------------------

struct GatesOptions {
    int n = 0;
    bool all = false;
    std::string format = "text";
    std::string out_path;
    std::string sequence_path;
};

void run_gates(const GatesOptions& opt) {
    const auto seq = ReliabilitySequence::load_file(resolve_sequence_path(opt.sequence_path));
    std::vector<int> exponents;
    if (opt.all) {
        for (int n = 5; n <= 10; ++n) exponents.push_back(n);
    } else {
        exponents.push_back(opt.n);
    }

    std::ostringstream body;
    nlohmann::json rows = nlohmann::json::array();
    if (opt.format == "text") {
        body << "  n     N |    AND    ref  delta |   XOR   ref delta | maxW  ref delta |"
                " steps ref delta | sparsity%    ref  delta\n";
    }
    for (int n : exponents) {
        const PolarCode code = build_code(seq, n);
        const RowIndexSets rows_idx = index_rows(code.parity_check);
        const GateCostReport report =
            cost_report(rows_idx, code.parity_check.rows(), code.parity_check.cols());

        const ReferenceCost& ref = kReferenceCosts.at(static_cast<std::size_t>(n - 5));
        const double sparsity_pct = 100.0 * report.sparsity;
        // Compare at the reference table's two-decimal resolution.
        const double sparsity_2dp = std::round(sparsity_pct * 100.0) / 100.0;

        if (opt.format == "text") {
            char line[256];
            std::snprintf(line, sizeof line,
                          "%3d %5zu | %6zu %6zu %6td | %5zu %5zu %5td | %4zu %4zu %5td |"
                          " %5zu %3zu %5td | %9.2f %6.2f %6.2f\n",
                          n, code.block_length, report.and_gates, ref.and_gates,
                          static_cast<std::ptrdiff_t>(report.and_gates) -
                              static_cast<std::ptrdiff_t>(ref.and_gates),
                          report.xor_gates, ref.xor_gates,
                          static_cast<std::ptrdiff_t>(report.xor_gates) -
                              static_cast<std::ptrdiff_t>(ref.xor_gates),
                          report.max_row_weight, ref.max_row_weight,
                          static_cast<std::ptrdiff_t>(report.max_row_weight) -
                              static_cast<std::ptrdiff_t>(ref.max_row_weight),
                          report.parallel_steps, ref.steps,
                          static_cast<std::ptrdiff_t>(report.parallel_steps) -
                              static_cast<std::ptrdiff_t>(ref.steps),
                          sparsity_2dp, ref.sparsity_percent,
                          sparsity_2dp - ref.sparsity_percent);
            body << line;
        } else {
            rows.push_back({{"n", n},
                            {"N", code.block_length},
                            {"and_gates", report.and_gates},
                            {"xor_gates", report.xor_gates},
                            {"sparsity", report.sparsity},
                            {"max_row_weight", report.max_row_weight},
                            {"steps", report.parallel_steps},
                            {"reference",
                             {{"and_gates", ref.and_gates},
                              {"xor_gates", ref.xor_gates},
                              {"max_row_weight", ref.max_row_weight},
                              {"sparsity_percent", ref.sparsity_percent},
                              {"steps", ref.steps}}},
                            {"delta",
                             {{"and_gates", static_cast<std::ptrdiff_t>(report.and_gates) -
                                                static_cast<std::ptrdiff_t>(ref.and_gates)},
                              {"xor_gates", static_cast<std::ptrdiff_t>(report.xor_gates) -
                                                static_cast<std::ptrdiff_t>(ref.xor_gates)},
                              {"max_row_weight",
                               static_cast<std::ptrdiff_t>(report.max_row_weight) -
                                   static_cast<std::ptrdiff_t>(ref.max_row_weight)},
                              {"sparsity_percent", sparsity_2dp - ref.sparsity_percent},
                              {"steps", static_cast<std::ptrdiff_t>(report.parallel_steps) -
                                            static_cast<std::ptrdiff_t>(ref.steps)}}}});
        }
    }

    const std::string text = opt.format == "text" ? body.str() : rows.dump(2) + "\n";
    if (opt.out_path.empty()) {
        std::cout << text;
    } else {
        std::ofstream out(opt.out_path);
        if (!out) throw std::runtime_error("cannot open output file: " + opt.out_path);
        out << text;
        if (!out) throw std::runtime_error("write failed: " + opt.out_path);
        std::cout << "wrote " << opt.out_path << "\n";
    }
}

// ---------------------------------------------------------------------------

struct SimulateOptions {
    int n = 5;
    unsigned mqam = 4;
    unsigned cutoff = 8;
    std::string grid_text;
    std::size_t trials = 10000;
    std::uint64_t seed = 0;
    unsigned workers = 1;
    std::string out_path;
    std::string format = "csv";
    std::string sequence_path;
};

void run_simulate(const SimulateOptions& opt) {
    SimConfig config;
    config.n = opt.n;
    config.mqam = opt.mqam;
    config.cutoff = opt.cutoff;
    config.ebn0_grid = parse_grid(opt.grid_text);
    config.trials_per_point = opt.trials;
    config.master_seed = opt.seed;
    config.workers = opt.workers;

    const unsigned s_eff = effective_cutoff(opt.n, opt.mqam, opt.cutoff, /*warn=*/true);

    const auto seq = ReliabilitySequence::load_file(resolve_sequence_path(opt.sequence_path));
    const PolarCode code = build_code(seq, config.n);
    const std::vector<BlerPoint> points = run_bler(code, config);

    const std::string path =
        opt.out_path.empty() ? default_output_name(config, opt.format) : opt.out_path;
    std::ofstream out(path);
    if (!out) throw std::runtime_error("cannot open output file: " + path);
    if (opt.format == "csv") {
        write_csv(points, out);
    } else {
        write_json(config, points, out);
    }
    out.flush();
    if (!out) throw std::runtime_error("write failed: " + path);

    std::printf("N=%zu (n=%d)  M=%u  S=%u  trials/point=%zu  seed=%llu\n",
                std::size_t{1} << config.n, config.n, config.mqam, s_eff,
                config.trials_per_point,
                static_cast<unsigned long long>(config.master_seed));
    std::printf("%10s %10s %12s %10s %12s %12s\n", "Eb/N0[dB]", "trials", "block_errors",
                "BLER", "mean_query", "uncoded_err");
    for (const BlerPoint& p : points) {
        std::printf("%10s %10zu %12zu %10s %12s %12zu\n", fmt_double(p.ebn0_db).c_str(),
                    p.trials, p.block_errors, fmt_double(p.bler).c_str(),
                    fmt_double(p.mean_queries).c_str(), p.uncoded_block_errors);
    }
    std::printf("wrote %s\n", path.c_str());
}

// ---------------------------------------------------------------------------

struct DecodeOneOptions {
    int n = 5;
    unsigned mqam = 4;
    unsigned cutoff = 8;
    std::string codeword_hex;
    double ebn0_db = 10.0;
    std::uint64_t seed = 0;
    std::string sequence_path;
};

void run_decode_one(const DecodeOneOptions& opt) {
    const auto seq = ReliabilitySequence::load_file(resolve_sequence_path(opt.sequence_path));
    const PolarCode code = build_code(seq, opt.n);
    const Constellation cst(opt.mqam);
    const BitVector sent = parse_hex_codeword(opt.codeword_hex, code.block_length);
    const unsigned s_eff = effective_cutoff(opt.n, opt.mqam, opt.cutoff, /*warn=*/true);

    const RowIndexSets rows = index_rows(code.parity_check);
    if (!pmult(rows, sent).syndrome.is_zero()) {
        std::cerr << "warning: the given word is not a codeword of this code\n";
    }

    const ChannelParams params = make_channel(opt.mqam, opt.ebn0_db);
    SplitMix64 rng(derive_stream(opt.seed, 0, 0));
    const std::vector<Point> sent_points = bits_to_symbols(sent, cst);
    const std::vector<ReceivedSymbol> received = transmit(sent_points, params, rng);

    const Decoder decoder(code, cst, s_eff);
    const RankedSymbols ranked = rank_and_cutoff(received, cst, s_eff);

    std::printf("N=%zu  M=%u  S=%u  Eb/N0=%s dB  sigma=%s  L=%zu symbols\n",
                code.block_length, opt.mqam, s_eff, fmt_double(opt.ebn0_db).c_str(),
                fmt_double(params.sigma).c_str(), received.size());
    std::printf("%4s %12s %12s %10s %10s %6s %4s\n", "sym", "rx_I", "rx_Q", "hard",
                "likelihood", "#cand", "cut");
    std::vector<bool> selected(received.size(), false);
    for (std::size_t pos : ranked.selected) selected[pos] = true;
    for (std::size_t i = 0; i < received.size(); ++i) {
        const SymbolReliability& sr = ranked.symbols[i];
        char hard[32];
        std::snprintf(hard, sizeof hard, "(%d,%d)", sr.hard.in_phase, sr.hard.quadrature);
        std::printf("%4zu %12s %12s %10s %10s %6zu %4s\n", i,
                    fmt_double(received[i].in_phase).c_str(),
                    fmt_double(received[i].quadrature).c_str(), hard,
                    fmt_double(sr.likelihood).c_str(), sr.candidates.size(),
                    selected[i] ? "*" : "");
    }
    std::printf("cut-off set (least reliable first):");
    for (std::size_t pos : ranked.selected) std::printf(" %zu", pos);
    std::printf("\n");

    const DecodeResult result = decoder.decode(received);
    std::printf("test error patterns checked: %zu (bound %.0f)\n", result.queries_checked,
                std::pow(4.0, static_cast<double>(s_eff)));
    std::printf("patterns passing the syndrome check: %zu\n", result.patterns_valid);
    if (!result.output.has_value()) {
        std::printf("outcome: abandoned (no pattern produced a codeword)\n");
    } else {
        const BitVector& decoded = result.output->codeword;
        std::printf("outcome: decoded, distance^2=%s, %s\n",
                    fmt_double(*result.selected_distance).c_str(),
                    decoded == sent ? "matches the transmitted codeword"
                                    : "DIFFERS from the transmitted codeword");
        // Reconstruct the winning pattern from the decoded bits.
        const std::vector<Point> decoded_points = bits_to_symbols(decoded, cst);
        std::size_t substitutions = 0;
        for (std::size_t pos : ranked.selected) {
            const Point hard = ranked.symbols[pos].hard;
            const Point got = decoded_points[pos];
            if (!(got == hard)) {
                ++substitutions;
                std::printf("  substitution at symbol %zu: (%d,%d) -> (%d,%d)\n", pos,
                            hard.in_phase, hard.quadrature, got.in_phase, got.quadrature);
            }
        }
        if (substitutions == 0) {
            std::printf("  winning pattern: all-hard (no substitutions)\n");
        }
        std::printf("syndrome verdict: winner=zero, hard-decision=%s\n",
                    result.patterns_valid > 0 && substitutions == 0 ? "zero" : "nonzero");
    }
    std::printf("modeled latency: %u clock cycles (2n + 2S + 4)\n",
                result.modeled_latency_cycles);
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Massive-parallel guess-and-check decoding toolbox for rate-1/2 NR polar "
                 "codes over M-QAM/AWGN"};
    app.require_subcommand(1);

    GatesOptions gates;
    CLI::App* gates_cmd = app.add_subcommand(
        "gates", "Report gate counts and circuit depth of the parity-check multiplier");
    auto* gates_n =
        gates_cmd->add_option("--n", gates.n, "Block exponent (N = 2^n)")->check(CLI::Range(5, 10));
    auto* gates_all = gates_cmd->add_flag("--all", gates.all, "Report every n in 5..10");
    gates_cmd->add_option("--format", gates.format, "Output format")
        ->check(CLI::IsMember({"text", "json"}))
        ->capture_default_str();
    gates_cmd->add_option("--out", gates.out_path, "Write the report to a file");
    gates_cmd->add_option("--sequence-file", gates.sequence_path,
                          "Path to the 1024-entry reliability sequence");
    gates_n->excludes(gates_all);

    SimulateOptions sim;
    CLI::App* sim_cmd =
        app.add_subcommand("simulate", "Run a Monte Carlo BLER sweep over an Eb/N0 grid");
    sim_cmd->add_option("--n", sim.n, "Block exponent (N = 2^n)")
        ->required()
        ->check(CLI::Range(5, 10));
    sim_cmd->add_option("--mqam", sim.mqam, "QAM order M")
        ->check(CLI::IsMember({4u, 16u, 64u, 256u, 1024u, 4096u}))
        ->capture_default_str();
    sim_cmd->add_option("--s", sim.cutoff, "Cutoff: least-reliable symbols to explore")
        ->check(CLI::Range(0, 10))
        ->capture_default_str();
    sim_cmd->add_option("--ebn0", sim.grid_text, "Eb/N0 grid: start:step:stop or v1,v2,...")
        ->required();
    sim_cmd->add_option("--trials", sim.trials, "Trials per grid point")
        ->check(CLI::Range(std::size_t{1}, std::size_t{100000000}))
        ->capture_default_str();
    sim_cmd->add_option("--seed", sim.seed, "Master seed")->capture_default_str();
    sim_cmd->add_option("--workers", sim.workers, "Worker threads (never changes results)")
        ->check(CLI::Range(1, 256))
        ->capture_default_str();
    sim_cmd->add_option("--out", sim.out_path, "Output path (default bler_N{N}_M{M}_S{S}.*)");
    sim_cmd->add_option("--format", sim.format, "Output format")
        ->check(CLI::IsMember({"csv", "json"}))
        ->capture_default_str();
    sim_cmd->add_option("--sequence-file", sim.sequence_path,
                        "Path to the 1024-entry reliability sequence");

    DecodeOneOptions one;
    CLI::App* one_cmd =
        app.add_subcommand("decode-one", "Trace a single transmit-and-decode round");
    one_cmd->add_option("--n", one.n, "Block exponent (N = 2^n)")
        ->required()
        ->check(CLI::Range(5, 10));
    one_cmd->add_option("--mqam", one.mqam, "QAM order M")
        ->check(CLI::IsMember({4u, 16u, 64u, 256u, 1024u, 4096u}))
        ->capture_default_str();
    one_cmd->add_option("--s", one.cutoff, "Cutoff: least-reliable symbols to explore")
        ->check(CLI::Range(0, 10))
        ->capture_default_str();
    one_cmd->add_option("--codeword", one.codeword_hex, "Codeword to transmit, N/4 hex digits")
        ->required();
    one_cmd->add_option("--ebn0", one.ebn0_db, "Eb/N0 in dB")->capture_default_str();
    one_cmd->add_option("--seed", one.seed, "Noise seed")->capture_default_str();
    one_cmd->add_option("--sequence-file", one.sequence_path,
                        "Path to the 1024-entry reliability sequence");

    try {
        app.parse(argc, argv);
        if (gates_cmd->parsed()) {
            if (!gates.all && gates_n->count() == 0) {
                throw UsageError("gates: pass --n <5..10> or --all");
            }
            run_gates(gates);
        } else if (sim_cmd->parsed()) {
            run_simulate(sim);
        } else if (one_cmd->parsed()) {
            run_decode_one(one);
        }
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : 2;
    } catch (const UsageError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    return 0;
}
