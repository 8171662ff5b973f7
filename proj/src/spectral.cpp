#include "emsens/spectral.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

namespace emsens {

std::vector<double> uniform_band(double f_lo, double f_hi, int count) {
    if (count < 2 || f_lo <= 0 || f_hi <= f_lo)
        throw std::invalid_argument("uniform_band: need f_hi > f_lo > 0 and count >= 2");
    std::vector<double> f(count);
    for (int i = 0; i < count; ++i)
        f[i] = f_lo + (f_hi - f_lo) * static_cast<double>(i) / (count - 1);
    return f;
}

Spectrum dft(const std::vector<double>& samples, double dt,
             const std::vector<double>& frequencies, SamplePhase phase) {
    if (samples.empty()) throw std::invalid_argument("dft: empty series");
    if (dt <= 0) throw std::invalid_argument("dft: dt must be positive");
    const double nyquist = 0.5 / dt;
    for (double f : frequencies) {
        if (f <= 0 || f >= nyquist)
            throw std::invalid_argument("dft: frequency outside (0, Nyquist)");
    }
    const double off = phase == SamplePhase::Half ? 0.5 : 0.0;
    Spectrum out;
    out.frequencies = frequencies;
    out.values.resize(frequencies.size());
    for (std::size_t fi = 0; fi < frequencies.size(); ++fi) {
        const double w = 2.0 * kPi * frequencies[fi] * dt;
        // incremental rotation, one trig pair per frequency
        const Complex rot = std::polar(1.0, -w);
        Complex ph = std::polar(1.0, -w * off);
        Complex acc{0.0, 0.0};
        for (double x : samples) {
            acc += x * ph;
            ph *= rot;
        }
        out.values[fi] = acc * dt;
    }
    return out;
}

std::pair<double, double> TransferFunction::valid_band() const {
    double lo = 0.0, hi = 0.0;
    bool found = false;
    for (std::size_t i = 0; i < spectrum.size(); ++i) {
        if (!spectrum.is_valid(i)) continue;
        if (!found) lo = spectrum.frequencies[i];
        hi = spectrum.frequencies[i];
        found = true;
    }
    return {lo, hi};
}

TransferFunction transfer_function(const ProbeRecord& response, const ProbeRecord& excitation,
                                   double dt, const std::vector<double>& frequencies,
                                   double threshold) {
    Spectrum num = dft(response.samples, dt, frequencies, response.phase);
    Spectrum den = dft(excitation.samples, dt, frequencies, excitation.phase);
    double peak = 0.0;
    for (const Complex& v : den.values) peak = std::max(peak, std::abs(v));
    TransferFunction tf;
    tf.from_cell = excitation.cell;
    tf.to_cell = response.cell;
    tf.spectrum.frequencies = frequencies;
    tf.spectrum.values.resize(frequencies.size());
    tf.spectrum.valid.assign(frequencies.size(), 0);
    const double floor = threshold * peak;
    for (std::size_t i = 0; i < frequencies.size(); ++i) {
        if (std::abs(den.values[i]) >= floor && peak > 0.0) {
            tf.spectrum.values[i] = num.values[i] / den.values[i];
            tf.spectrum.valid[i] = 1;
        } else {
            tf.spectrum.values[i] = Complex{0.0, 0.0};
        }
    }
    return tf;
}

TransferFunction self_transfer_function(const ProbeRecord& total, const ProbeRecord& incident,
                                        double dt, const std::vector<double>& frequencies,
                                        double threshold) {
    TransferFunction tf = transfer_function(total, incident, dt, frequencies, threshold);
    tf.from_cell = total.cell;
    tf.to_cell = total.cell;
    bool any = false;
    for (std::size_t i = 0; i < tf.spectrum.size(); ++i) any = any || tf.spectrum.is_valid(i);
    if (!any) throw std::invalid_argument("self_transfer_function: empty valid band");
    return tf;
}

namespace {
void require_same_grid(const Spectrum& a, const Spectrum& b) {
    if (a.frequencies.size() != b.frequencies.size())
        throw std::invalid_argument("spectra on different frequency grids");
}

Spectrum combine(const Spectrum& a, const Spectrum& b, Complex (*op)(Complex, Complex)) {
    require_same_grid(a, b);
    Spectrum out;
    out.frequencies = a.frequencies;
    out.values.resize(a.size());
    if (!a.valid.empty() || !b.valid.empty()) out.valid.assign(a.size(), 1);
    for (std::size_t i = 0; i < a.size(); ++i) {
        out.values[i] = op(a.values[i], b.values[i]);
        if (!out.valid.empty()) out.valid[i] = (a.is_valid(i) && b.is_valid(i)) ? 1 : 0;
    }
    return out;
}
}  // namespace

Spectrum add(const Spectrum& a, const Spectrum& b) {
    return combine(a, b, [](Complex x, Complex y) { return x + y; });
}
Spectrum sub(const Spectrum& a, const Spectrum& b) {
    return combine(a, b, [](Complex x, Complex y) { return x - y; });
}
Spectrum mul(const Spectrum& a, const Spectrum& b) {
    return combine(a, b, [](Complex x, Complex y) { return x * y; });
}

Spectrum div(const Spectrum& a, const Spectrum& b, double threshold) {
    require_same_grid(a, b);
    double peak = 0.0;
    for (const Complex& v : b.values) peak = std::max(peak, std::abs(v));
    Spectrum out;
    out.frequencies = a.frequencies;
    out.values.resize(a.size());
    out.valid.assign(a.size(), 0);
    const double floor = threshold * peak;
    for (std::size_t i = 0; i < a.size(); ++i) {
        const double mag = std::abs(b.values[i]);
        if (a.is_valid(i) && b.is_valid(i) && mag > floor && mag > 0.0) {
            out.values[i] = a.values[i] / b.values[i];
            out.valid[i] = 1;
        }
    }
    return out;
}

Spectrum scale(const Spectrum& a, Complex s) {
    Spectrum out = a;
    for (auto& v : out.values) v *= s;
    return out;
}

Spectrum propagate(const std::vector<TransferFunction>& tf_set,
                   const std::vector<Spectrum>& source_spectra) {
    if (tf_set.size() != source_spectra.size())
        throw std::invalid_argument("propagate: every source cell needs a transfer function");
    if (tf_set.empty()) throw std::invalid_argument("propagate: empty source set");
    Spectrum acc = mul(tf_set[0].spectrum, source_spectra[0]);
    for (std::size_t i = 1; i < tf_set.size(); ++i)
        acc = add(acc, mul(tf_set[i].spectrum, source_spectra[i]));
    return acc;
}

double relative_l2(const Spectrum& a, const Spectrum& b) {
    require_same_grid(a, b);
    double num = 0.0, den = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) {
        if (!a.is_valid(i) || !b.is_valid(i)) continue;
        num += std::norm(a.values[i] - b.values[i]);
        den += std::norm(b.values[i]);
    }
    if (den == 0.0) return num == 0.0 ? 0.0 : std::numeric_limits<double>::infinity();
    return std::sqrt(num / den);
}

bool tail_decayed(const std::vector<double>& samples, double frac, int tail) {
    if (samples.empty()) return true;
    double peak = 0.0;
    for (double x : samples) peak = std::max(peak, std::abs(x));
    if (peak == 0.0) return true;
    double tail_max = 0.0;
    const std::size_t start = samples.size() > static_cast<std::size_t>(tail)
                                  ? samples.size() - static_cast<std::size_t>(tail)
                                  : 0;
    for (std::size_t i = start; i < samples.size(); ++i)
        tail_max = std::max(tail_max, std::abs(samples[i]));
    return tail_max <= frac * peak;
}

}  // namespace emsens
