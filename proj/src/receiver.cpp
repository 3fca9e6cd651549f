#include "prpsk/receiver.hpp"

#include <cmath>
#include <numbers>

#include <nlohmann/json.hpp>

#include "prpsk/correlator_carrier.hpp"
#include "prpsk/error.hpp"
#include "prpsk/frontend_if.hpp"
#include "prpsk/modulator.hpp"

namespace prpsk {

Engine engine_from_string(const std::string& name) {
    if (name == "ma2") return Engine::ma2;
    if (name == "ma5") return Engine::ma5;
    throw Error(Errc::bad_file, "unknown engine '" + name + "' (expected ma2 or ma5)");
}

std::string to_string(Engine engine) { return engine == Engine::ma2 ? "ma2" : "ma5"; }

std::vector<cplx> correlate_stream(const PassbandBuffer& y, const WaveformParams& params,
                                   const PhaseSequence& sequence, Engine engine) {
    if (engine == Engine::ma5) {
        return correlate_stream(downconvert(y, params), params, sequence);
    }
    Ma2Correlator corr(params, sequence);
    std::vector<cplx> trace(static_cast<std::size_t>(y.size()));
    for (std::int64_t tau = 0; tau < y.size(); ++tau) {
        trace[static_cast<std::size_t>(tau)] = corr.step(y.at(tau), tau);
    }
    return trace;
}

std::vector<cplx> correlate_stream(const IfBuffer& yc, const WaveformParams& params,
                                   const PhaseSequence& sequence) {
    Ma5Correlator corr(params, sequence);
    std::vector<cplx> trace(static_cast<std::size_t>(yc.size()));
    for (std::int64_t tau = 0; tau < yc.size(); ++tau) {
        trace[static_cast<std::size_t>(tau)] = corr.step(yc.at(tau), tau);
    }
    return trace;
}

std::string SyncResult::to_json() const {
    nlohmann::json j;
    j["tau_star"] = tau_star;
    j["peak"] = {{"re", peak_value.real()},
                 {"im", peak_value.imag()},
                 {"magnitude", std::abs(peak_value)},
                 {"phase", std::arg(peak_value)}};
    j["lock"] = lock;
    return j.dump(2);
}

SyncResult synchronize_trace(std::span<const cplx> trace, double ideal_peak, double threshold,
                             int symbol_span) {
    SyncResult result;
    const std::int64_t n = static_cast<std::int64_t>(trace.size());
    if (n == 0) return result;

    // First index with a fully populated window; everything earlier is warm-up.
    const std::int64_t start = std::min<std::int64_t>(symbol_span - 1, n - 1);

    // Symbol-clock recovery: fold magnitudes modulo the span. All true symbol
    // boundaries share one residue and each contributes a full-coherence
    // peak, so their class dominates the fold.
    std::vector<double> folded(static_cast<std::size_t>(symbol_span), 0.0);
    for (std::int64_t i = start; i < n; ++i) {
        folded[static_cast<std::size_t>(i % symbol_span)] += std::abs(trace[static_cast<std::size_t>(i)]);
    }
    std::size_t clock = 0;
    for (std::size_t r = 1; r < folded.size(); ++r) {
        if (folded[r] > folded[clock]) clock = r;
    }

    // Earliest on-clock index that crosses the detection threshold; if none
    // does, fall back to the strongest on-clock candidate with lock = false.
    const double cut = threshold * ideal_peak;
    std::int64_t fallback = -1;
    double fallback_mag = -1.0;
    for (std::int64_t i = start; i < n; ++i) {
        if (i % symbol_span != static_cast<std::int64_t>(clock)) continue;
        const double mag = std::abs(trace[static_cast<std::size_t>(i)]);
        if (mag >= cut) {
            result.tau_star = i;
            result.peak_value = trace[static_cast<std::size_t>(i)];
            result.lock = true;
            return result;
        }
        if (mag > fallback_mag) {
            fallback_mag = mag;
            fallback = i;
        }
    }
    result.tau_star = fallback;
    if (fallback >= 0) result.peak_value = trace[static_cast<std::size_t>(fallback)];
    result.lock = false;
    return result;
}

SyncResult synchronize(const PassbandBuffer& y, const WaveformParams& params,
                       const PhaseSequence& sequence, Engine engine, double threshold) {
    const auto trace = correlate_stream(y, params, sequence, engine);
    const double ideal = 0.5 * params.frame_symbol_span();
    const int span =
        engine == Engine::ma2 ? params.frame_symbol_span() : params.if_symbol_span();
    return synchronize_trace(trace, ideal, threshold, span);
}

SyncResult synchronize(const IfBuffer& yc, const WaveformParams& params,
                       const PhaseSequence& sequence, double threshold) {
    const auto trace = correlate_stream(yc, params, sequence);
    const double ideal = 0.5 * params.frame_symbol_span();
    return synchronize_trace(trace, ideal, threshold, params.if_symbol_span());
}

std::vector<std::uint8_t> demodulate_trace(std::span<const cplx> trace, const SyncResult& sync,
                                           int n_symbols, int symbol_span, int psk_order) {
    if (!sync.lock) {
        throw Error(Errc::not_locked, "cannot demodulate without a synchronization lock");
    }
    const std::int64_t last =
        sync.tau_star + static_cast<std::int64_t>(n_symbols - 1) * symbol_span;
    if (n_symbols < 1 || last >= static_cast<std::int64_t>(trace.size())) {
        throw Error(Errc::length_mismatch, "stream too short for requested symbol count");
    }
    const double pilot_phase = std::arg(trace[static_cast<std::size_t>(sync.tau_star)]);
    std::vector<double> data_phases;
    data_phases.reserve(static_cast<std::size_t>(n_symbols - 1));
    for (int i = 1; i < n_symbols; ++i) {
        const cplx v = trace[static_cast<std::size_t>(sync.tau_star + i * symbol_span)];
        data_phases.push_back(std::arg(v) - pilot_phase);
    }
    return map_phases_to_bits(data_phases, psk_order);
}

std::vector<std::uint8_t> demodulate(const PassbandBuffer& y, const SyncResult& sync,
                                     int n_symbols, const WaveformParams& params,
                                     const PhaseSequence& sequence, Engine engine) {
    const auto trace = correlate_stream(y, params, sequence, engine);
    const int span =
        engine == Engine::ma2 ? params.frame_symbol_span() : params.if_symbol_span();
    return demodulate_trace(trace, sync, n_symbols, span, params.psk_order());
}

std::vector<std::uint8_t> demodulate(const IfBuffer& yc, const SyncResult& sync, int n_symbols,
                                     const WaveformParams& params, const PhaseSequence& sequence) {
    const auto trace = correlate_stream(yc, params, sequence);
    return demodulate_trace(trace, sync, n_symbols, params.if_symbol_span(), params.psk_order());
}

double bit_error_rate(const std::vector<std::uint8_t>& sent,
                      const std::vector<std::uint8_t>& received) {
    if (sent.size() != received.size()) {
        throw Error(Errc::length_mismatch, "bit strings differ in length");
    }
    if (sent.empty()) return 0.0;
    std::size_t flips = 0;
    for (std::size_t i = 0; i < sent.size(); ++i) {
        flips += (sent[i] ^ received[i]) & 1;
    }
    return static_cast<double>(flips) / static_cast<double>(sent.size());
}

} // namespace prpsk
