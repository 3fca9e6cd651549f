#include "prpsk/buffers.hpp"

#include <bit>
#include <cmath>
#include <cstdio>
#include <fstream>

#include "prpsk/error.hpp"

namespace prpsk {

static_assert(std::endian::native == std::endian::little,
              "sample file I/O assumes a little-endian host");

namespace {

std::vector<double> read_doubles(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw Error(Errc::bad_file, "cannot open " + path.string());
    in.seekg(0, std::ios::end);
    const auto bytes = static_cast<std::size_t>(in.tellg());
    in.seekg(0);
    if (bytes % sizeof(double) != 0) {
        throw Error(Errc::bad_file, path.string() + ": size is not a multiple of 8 bytes");
    }
    std::vector<double> out(bytes / sizeof(double));
    in.read(reinterpret_cast<char*>(out.data()), static_cast<std::streamsize>(bytes));
    if (!in) throw Error(Errc::bad_file, "short read from " + path.string());
    return out;
}

void write_doubles(const std::filesystem::path& path, const double* data, std::size_t n) {
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out) throw Error(Errc::bad_file, "cannot open " + path.string() + " for writing");
    out.write(reinterpret_cast<const char*>(data), static_cast<std::streamsize>(n * sizeof(double)));
    if (!out) throw Error(Errc::bad_file, "short write to " + path.string());
}

} // namespace

PassbandBuffer read_passband(const std::filesystem::path& path) {
    return PassbandBuffer(read_doubles(path));
}

void write_passband(const std::filesystem::path& path, const PassbandBuffer& buf) {
    write_doubles(path, buf.samples().data(), buf.samples().size());
}

IfBuffer read_if(const std::filesystem::path& path) {
    auto raw = read_doubles(path);
    if (raw.size() % 2 != 0) {
        throw Error(Errc::bad_file, path.string() + ": IF file needs (re, im) pairs");
    }
    std::vector<cplx> samples(raw.size() / 2);
    for (std::size_t i = 0; i < samples.size(); ++i) {
        samples[i] = {raw[2 * i], raw[2 * i + 1]};
    }
    return IfBuffer(std::move(samples));
}

void write_if(const std::filesystem::path& path, const IfBuffer& buf) {
    // std::complex<double> is layout-compatible with double[2] (re, im).
    write_doubles(path, reinterpret_cast<const double*>(buf.samples().data()),
                  buf.samples().size() * 2);
}

void write_trace_csv(const std::filesystem::path& path, std::span<const cplx> trace,
                     std::int64_t tau_offset) {
    std::ofstream out(path, std::ios::trunc);
    if (!out) throw Error(Errc::bad_file, "cannot open " + path.string() + " for writing");
    out << "tau,re,im,magnitude,phase\n";
    char line[160];
    for (std::size_t i = 0; i < trace.size(); ++i) {
        const cplx v = trace[i];
        std::snprintf(line, sizeof(line), "%lld,%.17g,%.17g,%.17g,%.17g\n",
                      static_cast<long long>(static_cast<std::int64_t>(i) + tau_offset), v.real(),
                      v.imag(), std::abs(v), std::arg(v));
        out << line;
    }
    if (!out) throw Error(Errc::bad_file, "short write to " + path.string());
}

} // namespace prpsk
