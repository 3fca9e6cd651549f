// Command-line front door for the K-repetition pseudorandom-PSK toolkit:
// modulate / channel / receive / verify / bench. All randomness is seeded
// through flags, so every command is deterministic given its arguments.
//
// Exit codes: 0 ok, 2 validation error, 3 no synchronization lock,
// 4 verification failure.

#include <cstdint>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <nlohmann/json.hpp>

#include "prpsk/bench.hpp"
#include "prpsk/buffers.hpp"
#include "prpsk/channel.hpp"
#include "prpsk/error.hpp"
#include "prpsk/frontend_if.hpp"
#include "prpsk/modulator.hpp"
#include "prpsk/phase_sequence.hpp"
#include "prpsk/receiver.hpp"
#include "prpsk/verify.hpp"

namespace {

constexpr int kExitOk = 0;
constexpr int kExitValidation = 2;
constexpr int kExitNoLock = 3;
constexpr int kExitVerifyFailed = 4;

std::vector<std::uint8_t> bits_from_hex(const std::string& hex) {
    std::vector<std::uint8_t> bits;
    bits.reserve(hex.size() * 4);
    for (char c : hex) {
        int v;
        if (c >= '0' && c <= '9') v = c - '0';
        else if (c >= 'a' && c <= 'f') v = c - 'a' + 10;
        else if (c >= 'A' && c <= 'F') v = c - 'A' + 10;
        else throw prpsk::Error(prpsk::Errc::bad_file, std::string("bad hex digit '") + c + "'");
        for (int b = 3; b >= 0; --b) bits.push_back(static_cast<std::uint8_t>((v >> b) & 1));
    }
    return bits;
}

std::string hex_from_bits(const std::vector<std::uint8_t>& bits) {
    std::string hex;
    std::size_t i = 0;
    for (; i + 4 <= bits.size(); i += 4) {
        const int v = (bits[i] << 3) | (bits[i + 1] << 2) | (bits[i + 2] << 1) | bits[i + 3];
        hex += "0123456789abcdef"[v];
    }
    if (i != bits.size()) {
        // Trailing bits that do not fill a nibble are reported bit by bit.
        hex += '|';
        for (; i < bits.size(); ++i) hex += static_cast<char>('0' + bits[i]);
    }
    return hex;
}

std::string read_text_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw prpsk::Error(prpsk::Errc::bad_file, "cannot open " + path);
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

void write_text_file(const std::string& path, const std::string& text) {
    std::ofstream out(path, std::ios::trunc);
    if (!out) throw prpsk::Error(prpsk::Errc::bad_file, "cannot open " + path + " for writing");
    out << text;
}

struct ModulateArgs {
    int samples_per_period = 8;
    int periods = 4;
    int repetitions = 8;
    int if_samples = 0;  // 0: default to periods
    int psk_order = 4;
    std::uint64_t seed = 1;
    std::string bits_hex;
    std::string out;
    std::string sequence_out;
};

int cmd_modulate(const ModulateArgs& args) {
    const int if_samples = args.if_samples > 0 ? args.if_samples : args.periods;
    const prpsk::WaveformParams params = prpsk::validate_params(
        args.samples_per_period, args.periods, args.repetitions, if_samples, args.psk_order);
    const prpsk::PhaseSequence seq = prpsk::generate_phase_sequence(args.seed, params);

    // Frame protocol: one pilot symbol (theta = 0) ahead of the data symbols.
    std::vector<double> phases{0.0};
    const auto data_phases =
        prpsk::map_bits_to_phases(bits_from_hex(args.bits_hex), params.psk_order());
    phases.insert(phases.end(), data_phases.begin(), data_phases.end());
    const prpsk::Frame frame = prpsk::modulate_phases(phases, params, seq);

    prpsk::write_passband(args.out, frame.passband);
    const std::string seq_path =
        args.sequence_out.empty() ? args.out + ".sequence.json" : args.sequence_out;
    write_text_file(seq_path, seq.to_json());

    nlohmann::json j;
    j["schema_version"] = 1;
    j["out"] = args.out;
    j["sequence_out"] = seq_path;
    j["symbols"] = phases.size();
    j["samples"] = frame.passband.size();
    std::cout << j.dump(2) << "\n";
    return kExitOk;
}

struct ChannelArgs {
    std::string spec_path;
    std::vector<std::string> inputs;
    std::string out;
};

int cmd_channel(const ChannelArgs& args) {
    const prpsk::ChannelSpec spec = prpsk::ChannelSpec::from_json(read_text_file(args.spec_path));
    std::vector<prpsk::PassbandBuffer> streams;
    streams.reserve(args.inputs.size());
    for (const auto& path : args.inputs) streams.push_back(prpsk::read_passband(path));
    const prpsk::PassbandBuffer out = prpsk::apply_channel(streams, spec);
    prpsk::write_passband(args.out, out);

    nlohmann::json j;
    j["schema_version"] = 1;
    j["out"] = args.out;
    j["samples"] = out.size();
    std::cout << j.dump(2) << "\n";
    return kExitOk;
}

struct DownconvertArgs {
    std::string in;
    std::string out;
    int samples_per_period = 8;
    int periods = 4;
    int repetitions = 8;
    int if_samples = 0;
};

int cmd_downconvert(const DownconvertArgs& args) {
    const int if_samples = args.if_samples > 0 ? args.if_samples : args.periods;
    const prpsk::WaveformParams params = prpsk::validate_params(
        args.samples_per_period, args.periods, args.repetitions, if_samples, 2);
    const prpsk::IfBuffer yc = prpsk::downconvert(prpsk::read_passband(args.in), params);
    prpsk::write_if(args.out, yc);

    nlohmann::json j;
    j["schema_version"] = 1;
    j["out"] = args.out;
    j["if_samples"] = yc.size();
    std::cout << j.dump(2) << "\n";
    return kExitOk;
}

struct ReceiveArgs {
    std::string in;
    std::string format = "passband";
    std::string sequence_path;
    int periods = 4;
    int if_samples = 0;
    int psk_order = 4;
    std::string engine = "ma2";
    double threshold = 0.5;
    int symbols = 0;  // 0: infer from stream length
    std::string expect_bits_hex;
    std::string trace_out;
    std::string json_out;
};

int cmd_receive(const ReceiveArgs& args) {
    const prpsk::PhaseSequence seq =
        prpsk::PhaseSequence::from_json(read_text_file(args.sequence_path));
    const int if_samples = args.if_samples > 0 ? args.if_samples : args.periods;
    const prpsk::WaveformParams params =
        prpsk::validate_params(seq.samples_per_period(), args.periods, seq.repetitions(),
                               if_samples, args.psk_order);
    const prpsk::Engine engine = prpsk::engine_from_string(args.engine);

    std::vector<prpsk::cplx> trace;
    int symbol_span = 0;
    if (args.format == "passband") {
        const prpsk::PassbandBuffer y = prpsk::read_passband(args.in);
        trace = prpsk::correlate_stream(y, params, seq, engine);
        symbol_span = engine == prpsk::Engine::ma2 ? params.frame_symbol_span()
                                                   : params.if_symbol_span();
    } else if (args.format == "if") {
        if (engine != prpsk::Engine::ma5) {
            throw prpsk::Error(prpsk::Errc::bad_file, "IF input requires --engine ma5");
        }
        const prpsk::IfBuffer yc = prpsk::read_if(args.in);
        trace = prpsk::correlate_stream(yc, params, seq);
        symbol_span = params.if_symbol_span();
    } else {
        throw prpsk::Error(prpsk::Errc::bad_file, "unknown format '" + args.format + "'");
    }

    if (!args.trace_out.empty()) prpsk::write_trace_csv(args.trace_out, trace);

    const double ideal_peak = 0.5 * params.frame_symbol_span();
    const prpsk::SyncResult sync =
        prpsk::synchronize_trace(trace, ideal_peak, args.threshold, symbol_span);

    nlohmann::json j;
    j["schema_version"] = 1;
    j["engine"] = args.engine;
    j["lock"] = sync.lock;
    j["tau_star"] = sync.tau_star;
    j["peak"] = {{"re", sync.peak_value.real()},
                 {"im", sync.peak_value.imag()},
                 {"magnitude", std::abs(sync.peak_value)},
                 {"phase", std::arg(sync.peak_value)}};

    int exit_code = kExitOk;
    if (sync.lock) {
        int n_symbols = args.symbols;
        if (n_symbols <= 0) {
            n_symbols = static_cast<int>(
                (static_cast<std::int64_t>(trace.size()) - sync.tau_star - 1) / symbol_span + 1);
        }
        const auto bits =
            prpsk::demodulate_trace(trace, sync, n_symbols, symbol_span, params.psk_order());
        j["symbols"] = n_symbols;
        j["bits_hex"] = hex_from_bits(bits);
        if (!args.expect_bits_hex.empty()) {
            j["ber"] = prpsk::bit_error_rate(bits_from_hex(args.expect_bits_hex), bits);
        }
    } else {
        exit_code = kExitNoLock;
    }

    const std::string text = j.dump(2);
    if (args.json_out.empty()) {
        std::cout << text << "\n";
    } else {
        write_text_file(args.json_out, text);
    }
    return exit_code;
}

struct VerifyArgs {
    std::uint64_t seed = 1;
    int streams = 10;
    int stream_len = 4000;
    int trials = 100;
    std::string json_out;
};

int cmd_verify(const VerifyArgs& args) {
    prpsk::VerifyOptions options;
    options.streams = args.streams;
    options.stream_len = args.stream_len;
    options.ma3_trials = args.trials;
    const auto results = prpsk::run_verification(args.seed, options);
    const std::string report = prpsk::verification_report_json(args.seed, results);
    if (args.json_out.empty()) {
        std::cout << report << "\n";
    } else {
        write_text_file(args.json_out, report);
    }
    for (const auto& r : results) {
        std::cerr << (r.pass ? "PASS " : "FAIL ") << r.name << "  measured=" << r.measured
                  << " bound=" << r.bound << "\n";
    }
    return prpsk::all_pass(results) ? kExitOk : kExitVerifyFailed;
}

struct BenchArgs {
    std::string out;
    int samples = 200000;
    int repeats = 5;
    std::uint64_t seed = 1;
};

int cmd_bench(const BenchArgs& args) {
    prpsk::BenchOptions options;
    options.samples = args.samples;
    options.repeats = args.repeats;
    options.seed = args.seed;
    const std::string csv = prpsk::bench_csv(prpsk::run_bench(options));
    if (args.out.empty()) {
        std::cout << csv;
    } else {
        write_text_file(args.out, csv);
    }
    return kExitOk;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"K-repetition pseudorandom-PSK modulation, channel and receiver toolkit"};
    app.require_subcommand(1);

    ModulateArgs mod;
    auto* modulate = app.add_subcommand("modulate", "Synthesize a passband frame");
    modulate->add_option("--samples-per-period,-S", mod.samples_per_period,
                         "Carrier samples per period (S)");
    modulate->add_option("--periods,-p", mod.periods, "Carrier periods per symbol (p)");
    modulate->add_option("--repetitions,-K", mod.repetitions, "Repetitions per symbol (K)");
    modulate->add_option("--if-samples,-G", mod.if_samples,
                         "IF samples per symbol (default: periods)");
    modulate->add_option("--psk-order,-M", mod.psk_order, "PSK constellation size");
    modulate->add_option("--seed", mod.seed, "Phase-sequence seed");
    modulate->add_option("--bits-hex", mod.bits_hex, "Payload bits as hex digits");
    modulate->add_option("--out", mod.out, "Output passband file")->required();
    modulate->add_option("--sequence-out", mod.sequence_out,
                         "Phase-sequence JSON path (default: <out>.sequence.json)");

    ChannelArgs chan;
    auto* channel = app.add_subcommand("channel", "Superpose streams and add noise");
    channel->add_option("--spec", chan.spec_path, "Channel spec JSON")->required();
    channel->add_option("--in", chan.inputs, "Input passband files (entry order)")->required();
    channel->add_option("--out", chan.out, "Output passband file")->required();

    DownconvertArgs dc;
    auto* downconvert = app.add_subcommand("downconvert",
                                           "Model the front end: passband to IF samples");
    downconvert->add_option("--in", dc.in, "Input passband file")->required();
    downconvert->add_option("--out", dc.out, "Output IF file")->required();
    downconvert->add_option("--samples-per-period,-S", dc.samples_per_period,
                            "Carrier samples per period (S)");
    downconvert->add_option("--periods,-p", dc.periods, "Carrier periods per symbol (p)");
    downconvert->add_option("--repetitions,-K", dc.repetitions, "Repetitions per symbol (K)");
    downconvert->add_option("--if-samples,-G", dc.if_samples,
                            "IF samples per symbol (default: periods)");

    ReceiveArgs rx;
    auto* receive = app.add_subcommand("receive", "Synchronize and demodulate a stream");
    receive->add_option("--in", rx.in, "Input sample file")->required();
    receive->add_option("--format", rx.format, "Input format: passband | if");
    receive->add_option("--sequence", rx.sequence_path, "Phase-sequence JSON")->required();
    receive->add_option("--periods,-p", rx.periods, "Carrier periods per symbol (p)");
    receive->add_option("--if-samples,-G", rx.if_samples,
                        "IF samples per symbol (default: periods)");
    receive->add_option("--psk-order,-M", rx.psk_order, "PSK constellation size");
    receive->add_option("--engine", rx.engine, "Correlator engine: ma2 | ma5");
    receive->add_option("--threshold", rx.threshold, "Lock threshold, fraction of ideal peak");
    receive->add_option("--symbols", rx.symbols, "Symbols to demodulate incl. pilot (0: infer)");
    receive->add_option("--expect-bits-hex", rx.expect_bits_hex,
                        "Reference bits; adds a BER field");
    receive->add_option("--trace-out", rx.trace_out, "Write the correlation trace CSV here");
    receive->add_option("--json-out", rx.json_out, "Write the report here instead of stdout");

    VerifyArgs ver;
    auto* verify = app.add_subcommand("verify", "Run the equivalence and bound checks");
    verify->add_option("--seed", ver.seed, "Randomization seed");
    verify->add_option("--streams", ver.streams, "Random streams per equivalence check");
    verify->add_option("--stream-len", ver.stream_len, "Samples per random stream");
    verify->add_option("--trials", ver.trials, "Adversarial trials per p");
    verify->add_option("--json-out", ver.json_out, "Write the report here instead of stdout");

    BenchArgs bench;
    auto* bench_cmd = app.add_subcommand("bench", "Measure op counts and per-sample time");
    bench_cmd->add_option("--out", bench.out, "Output CSV (default: stdout)");
    bench_cmd->add_option("--samples", bench.samples, "Timed samples per run");
    bench_cmd->add_option("--repeats", bench.repeats, "Timed runs per row (best-of)");
    bench_cmd->add_option("--seed", bench.seed, "Input-stream seed");

    CLI11_PARSE(app, argc, argv);

    try {
        if (modulate->parsed()) return cmd_modulate(mod);
        if (channel->parsed()) return cmd_channel(chan);
        if (downconvert->parsed()) return cmd_downconvert(dc);
        if (receive->parsed()) return cmd_receive(rx);
        if (verify->parsed()) return cmd_verify(ver);
        if (bench_cmd->parsed()) return cmd_bench(bench);
    } catch (const prpsk::Error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return e.code() == prpsk::Errc::not_locked ? kExitNoLock : kExitValidation;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitValidation;
    }
    return kExitOk;
}
