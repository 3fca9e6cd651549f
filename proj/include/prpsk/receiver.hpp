#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "prpsk/buffers.hpp"
#include "prpsk/params.hpp"
#include "prpsk/phase_sequence.hpp"

namespace prpsk {

/// Which streaming correlator drives synchronization and demodulation:
/// ma2 runs at the carrier rate, ma5 on the downconverted IF stream.
enum class Engine { ma2, ma5 };

Engine engine_from_string(const std::string& name);
std::string to_string(Engine engine);

/// One correlator output per input sample (carrier rate for ma2, IF rate for
/// ma5; the passband overload downconverts internally for ma5).
std::vector<cplx> correlate_stream(const PassbandBuffer& y, const WaveformParams& params,
                                   const PhaseSequence& sequence, Engine engine);
std::vector<cplx> correlate_stream(const IfBuffer& yc, const WaveformParams& params,
                                   const PhaseSequence& sequence);

struct SyncResult {
    std::int64_t tau_star = -1;  // index of maximum |correlation|
    cplx peak_value{};
    bool lock = false;           // |peak| >= threshold * (K*T/2)
    std::string to_json() const;
};

/// Runs the chosen correlator over every sample and locates the correlation
/// maximum. A frame starting at sample s peaks at s + K*T - 1 (carrier rate)
/// or at IF index (s/D) + K*G - 1.
///
/// Every symbol boundary of a frame peaks at the same expected magnitude, so
/// the raw per-sample argmax is a floating-point coin toss between boundaries
/// (and partial-period ripple can nudge it a sample or two off). Ties are
/// therefore resolved structurally: magnitudes are folded modulo the symbol
/// span to find the strongest symbol-clock residue, and within that clock
/// tau_star is the earliest index reaching threshold * (K*T/2) - the first
/// detectable peak, which for a pilot-led frame is the pilot. lock is set
/// when that peak reaches the threshold; otherwise tau_star reports the
/// strongest candidate with lock = false.
SyncResult synchronize(const PassbandBuffer& y, const WaveformParams& params,
                       const PhaseSequence& sequence, Engine engine, double threshold);
SyncResult synchronize(const IfBuffer& yc, const WaveformParams& params,
                       const PhaseSequence& sequence, double threshold);

/// Clock-fold + threshold logic on a precomputed trace (shared by both
/// engines); symbol_span is K*T at the carrier rate, K*G at the IF rate.
SyncResult synchronize_trace(std::span<const cplx> trace, double ideal_peak, double threshold,
                             int symbol_span);

/// Demodulates n_symbols correlation peaks spaced one symbol span apart,
/// starting at sync.tau_star. The first symbol is the frame pilot
/// (transmitted with theta = 0) and serves as the phase reference; the
/// remaining n_symbols - 1 symbols are sliced against it on the Gray-coded
/// constellation and returned as bits. Throws Errc::not_locked if sync.lock
/// is false and Errc::length_mismatch if the stream is too short.
std::vector<std::uint8_t> demodulate(const PassbandBuffer& y, const SyncResult& sync,
                                     int n_symbols, const WaveformParams& params,
                                     const PhaseSequence& sequence, Engine engine);
std::vector<std::uint8_t> demodulate(const IfBuffer& yc, const SyncResult& sync, int n_symbols,
                                     const WaveformParams& params, const PhaseSequence& sequence);

/// Slice a correlation trace directly (symbol 0 = pilot at sync.tau_star).
std::vector<std::uint8_t> demodulate_trace(std::span<const cplx> trace, const SyncResult& sync,
                                           int n_symbols, int symbol_span, int psk_order);

/// Hamming distance / length. Throws Errc::length_mismatch.
double bit_error_rate(const std::vector<std::uint8_t>& sent,
                      const std::vector<std::uint8_t>& received);

} // namespace prpsk
