#pragma once

#include <complex>
#include <vector>

#include "emsens/fdtd.hpp"

namespace emsens {

using Complex = std::complex<double>;

/// Complex samples over a shared ascending frequency list. `valid` is a
/// per-frequency usability mask (empty means all valid); operations
/// intersect masks so ill-conditioned frequencies stay excluded.
struct Spectrum {
    std::vector<double> frequencies;  // Hz
    std::vector<Complex> values;
    std::vector<std::uint8_t> valid;

    [[nodiscard]] std::size_t size() const { return frequencies.size(); }
    [[nodiscard]] bool is_valid(std::size_t i) const { return valid.empty() || valid[i] != 0; }
};

[[nodiscard]] std::vector<double> uniform_band(double f_lo, double f_hi, int count);

/// Riemann-sum DFT at arbitrary frequencies: X(f) = sum x[n] e^{-i 2 pi f t_n} dt
/// with t_n = n dt for integer-phase records and (n + 1/2) dt for half-phase.
[[nodiscard]] Spectrum dft(const std::vector<double>& samples, double dt,
                           const std::vector<double>& frequencies,
                           SamplePhase phase = SamplePhase::Integer);

[[nodiscard]] inline Spectrum dft(const ProbeRecord& rec, double dt,
                                  const std::vector<double>& frequencies) {
    return dft(rec.samples, dt, frequencies, rec.phase);
}

/// Frequency-domain ratio of a response record to the excitation record.
/// Frequencies where |excitation| < threshold * max|excitation| are marked
/// invalid rather than divided.
struct TransferFunction {
    long from_cell = 0, to_cell = 0;
    Spectrum spectrum;

    [[nodiscard]] std::pair<double, double> valid_band() const;
};

inline constexpr double kValidBandThreshold = 1.0e-3;

[[nodiscard]] TransferFunction transfer_function(const ProbeRecord& response,
                                                 const ProbeRecord& excitation, double dt,
                                                 const std::vector<double>& frequencies,
                                                 double threshold = kValidBandThreshold);

/// Same ratio with total/incident naming; the incident record is the
/// injected soft-source waveform at the cell.
[[nodiscard]] TransferFunction self_transfer_function(const ProbeRecord& total,
                                                      const ProbeRecord& incident, double dt,
                                                      const std::vector<double>& frequencies,
                                                      double threshold = kValidBandThreshold);

/// Pointwise sum of transfer-function-weighted source spectra.
[[nodiscard]] Spectrum propagate(const std::vector<TransferFunction>& tf_set,
                                 const std::vector<Spectrum>& source_spectra);

// elementwise spectrum helpers (masks intersect)
[[nodiscard]] Spectrum add(const Spectrum& a, const Spectrum& b);
[[nodiscard]] Spectrum sub(const Spectrum& a, const Spectrum& b);
[[nodiscard]] Spectrum mul(const Spectrum& a, const Spectrum& b);
[[nodiscard]] Spectrum div(const Spectrum& a, const Spectrum& b, double threshold = 0.0);
[[nodiscard]] Spectrum scale(const Spectrum& a, Complex s);

/// sqrt(sum |a-b|^2 / sum |b|^2) over frequencies valid in both.
[[nodiscard]] double relative_l2(const Spectrum& a, const Spectrum& b);

/// True when the trailing `tail` samples stay below frac * max|samples|.
[[nodiscard]] bool tail_decayed(const std::vector<double>& samples, double frac = 1.0e-6,
                                int tail = 32);

}  // namespace emsens
