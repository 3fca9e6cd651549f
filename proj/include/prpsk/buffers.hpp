#pragma once

#include <complex>
#include <cstdint>
#include <filesystem>
#include <span>
#include <vector>

namespace prpsk {

using cplx = std::complex<double>;

/// Real passband samples at the carrier-rate clock. Index origin is 0 and
/// reads outside the stored range return 0.0, matching the convention
/// y(tau) = 0 for tau < 0.
class PassbandBuffer {
public:
    PassbandBuffer() = default;
    explicit PassbandBuffer(std::vector<double> samples) : samples_(std::move(samples)) {}
    explicit PassbandBuffer(std::size_t n) : samples_(n, 0.0) {}

    double at(std::int64_t i) const {
        return (i >= 0 && i < static_cast<std::int64_t>(samples_.size()))
                   ? samples_[static_cast<std::size_t>(i)]
                   : 0.0;
    }
    double& operator[](std::size_t i) { return samples_[i]; }
    double operator[](std::size_t i) const { return samples_[i]; }

    std::int64_t size() const { return static_cast<std::int64_t>(samples_.size()); }
    const std::vector<double>& samples() const { return samples_; }
    std::vector<double>& samples() { return samples_; }

private:
    std::vector<double> samples_;
};

/// Complex IF samples at G per symbol, same zero-padded indexing convention.
class IfBuffer {
public:
    IfBuffer() = default;
    explicit IfBuffer(std::vector<cplx> samples) : samples_(std::move(samples)) {}
    explicit IfBuffer(std::size_t n) : samples_(n, cplx{}) {}

    cplx at(std::int64_t i) const {
        return (i >= 0 && i < static_cast<std::int64_t>(samples_.size()))
                   ? samples_[static_cast<std::size_t>(i)]
                   : cplx{};
    }
    cplx& operator[](std::size_t i) { return samples_[i]; }
    cplx operator[](std::size_t i) const { return samples_[i]; }

    std::int64_t size() const { return static_cast<std::int64_t>(samples_.size()); }
    const std::vector<cplx>& samples() const { return samples_; }
    std::vector<cplx>& samples() { return samples_; }

private:
    std::vector<cplx> samples_;
};

// File formats: passband files are raw little-endian IEEE-754 binary64, one
// real sample per record; IF files are interleaved (re, im) binary64 pairs.
PassbandBuffer read_passband(const std::filesystem::path& path);
void write_passband(const std::filesystem::path& path, const PassbandBuffer& buf);
IfBuffer read_if(const std::filesystem::path& path);
void write_if(const std::filesystem::path& path, const IfBuffer& buf);

/// Correlation trace CSV: header "tau,re,im,magnitude,phase", one row per
/// sample. tau_offset shifts the emitted tau column (for delayed emitters).
void write_trace_csv(const std::filesystem::path& path, std::span<const cplx> trace,
                     std::int64_t tau_offset = 0);

} // namespace prpsk
