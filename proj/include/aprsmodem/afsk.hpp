// Copyright (c) 2026 the aprsmodem authors
//
// SPDX-License-Identifier: MIT
//
// Bell 202 AFSK: continuous-phase synthesis of line levels into audio and
// a quadrature-correlator demodulator with symbol-clock recovery.

#ifndef APRSMODEM_AFSK_HPP
#define APRSMODEM_AFSK_HPP

#include "errors.hpp"
#include "fft.hpp"
#include "hdlc.hpp"

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <numbers>
#include <utility>
#include <vector>

namespace aprsmodem {

struct modem_config
{
    double baud = 1200.0;
    double mark_hz = 1200.0;   // logic 1
    double space_hz = 2200.0;  // logic 0
    int sample_rate = 48000;
    double amplitude = 0.8;    // leaves clipping headroom in 16-bit output

    void validate() const
    {
        if (baud <= 0.0)
        {
            throw config_error("baud rate must be positive");
        }
        if (mark_hz <= 0.0 || space_hz <= 0.0 || mark_hz == space_hz)
        {
            throw config_error("mark and space frequencies must be positive and distinct");
        }
        // Nyquist with a little margin; 8 kHz still carries a 2200 Hz space tone.
        if (static_cast<double>(sample_rate) <= 2.0 * std::max(mark_hz, space_hz))
        {
            throw config_error("sample rate too low for the configured tones");
        }
        if (amplitude <= 0.0 || amplitude > 1.0)
        {
            throw config_error("amplitude must be in (0, 1]");
        }
        if (static_cast<double>(sample_rate) < 2.0 * baud)
        {
            throw config_error("sample rate too low for the configured baud rate");
        }
    }
};

// Mono PCM samples normalized to [-1, 1].
struct audio_buffer
{
    std::vector<float> samples;
    int sample_rate = 48000;

    double duration_seconds() const
    {
        return sample_rate > 0 ? static_cast<double>(samples.size()) / sample_rate : 0.0;
    }
};

// One sinusoid per line level, mark for 1 and space for 0, with the phase
// carried across level boundaries. Symbol boundaries come from the
// accumulated fractional sample count, so timing is exact in the long run
// even when samples-per-symbol is not an integer (36.75 at 44.1 kHz).
inline audio_buffer modulate(const nrzi_bits& levels, const modem_config& config = {})
{
    config.validate();

    audio_buffer out;
    out.sample_rate = config.sample_rate;

    const double samples_per_symbol = config.sample_rate / config.baud;
    out.samples.reserve(static_cast<std::size_t>(levels.size() * samples_per_symbol) + 1);

    const double two_pi = 2.0 * std::numbers::pi;
    double phase = 0.0;
    long long emitted = 0;
    for (std::size_t k = 0; k < levels.bits.size(); k++)
    {
        const double tone = levels.bits[k] ? config.mark_hz : config.space_hz;
        const double phase_step = two_pi * tone / config.sample_rate;
        const long long symbol_end = std::llround((k + 1) * samples_per_symbol);
        for (; emitted < symbol_end; emitted++)
        {
            out.samples.push_back(static_cast<float>(config.amplitude * std::sin(phase)));
            phase += phase_step;
            if (phase >= two_pi)
            {
                phase -= two_pi;
            }
        }
    }
    return out;
}

namespace detail {

// Sliding one-symbol quadrature correlator for a single tone. Keeps the
// window sums incrementally; the kernel uses absolute sample time, which
// leaves the magnitude unchanged and makes updates O(1).
struct tone_correlator
{
    double omega = 0.0;  // radians per sample
    std::size_t window = 0;
    double sum_i = 0.0;
    double sum_q = 0.0;

    tone_correlator(double tone_hz, int sample_rate, std::size_t window_samples)
        : omega(2.0 * std::numbers::pi * tone_hz / sample_rate), window(window_samples)
    {
    }

    void push(const std::vector<float>& x, long long t)
    {
        const double wt = omega * static_cast<double>(t);
        sum_i += x[static_cast<std::size_t>(t)] * std::cos(wt);
        sum_q += x[static_cast<std::size_t>(t)] * std::sin(wt);
        const long long leaving = t - static_cast<long long>(window);
        if (leaving >= 0)
        {
            const double wl = omega * static_cast<double>(leaving);
            sum_i -= x[static_cast<std::size_t>(leaving)] * std::cos(wl);
            sum_q -= x[static_cast<std::size_t>(leaving)] * std::sin(wl);
        }
    }

    double energy() const { return sum_i * sum_i + sum_q * sum_q; }
};

} // namespace detail

// Tone decisions per sample plus an early/late-gate symbol clock: the
// sampling phase is nudged by 1/16 of a symbol toward each observed
// transition. Ties between tone energies keep the previous decision, so
// silence extends the current run instead of injecting noise.
inline nrzi_bits demodulate(const audio_buffer& audio, const modem_config& config = {})
{
    config.validate();
    if (audio.sample_rate != config.sample_rate)
    {
        throw config_error("audio sample rate does not match the modem configuration");
    }

    nrzi_bits out;
    const long long n = static_cast<long long>(audio.samples.size());
    const double samples_per_symbol = config.sample_rate / config.baud;
    const std::size_t window =
        std::max<std::size_t>(2, static_cast<std::size_t>(std::llround(samples_per_symbol)));
    if (n < static_cast<long long>(window))
    {
        return out;
    }

    detail::tone_correlator mark(config.mark_hz, config.sample_rate, window);
    detail::tone_correlator space(config.space_hz, config.sample_rate, window);

    const double nudge = samples_per_symbol / 16.0;
    double next_decision = samples_per_symbol - 1.0;
    std::uint8_t decision = 1;       // idle mark
    std::uint8_t previous_sample_decision = 1;

    for (long long t = 0; t < n; t++)
    {
        mark.push(audio.samples, t);
        space.push(audio.samples, t);

        const double mark_energy = mark.energy();
        const double space_energy = space.energy();
        if (mark_energy > space_energy)
        {
            decision = 1;
        }
        else if (space_energy > mark_energy)
        {
            decision = 0;
        }

        if (t > 0 && decision != previous_sample_decision)
        {
            // a transition ideally sits half a symbol before the next
            // sampling instant
            double err = std::fmod(next_decision - (static_cast<double>(t) + samples_per_symbol / 2.0),
                                   samples_per_symbol);
            if (err < -samples_per_symbol / 2.0)
            {
                err += samples_per_symbol;
            }
            else if (err >= samples_per_symbol / 2.0)
            {
                err -= samples_per_symbol;
            }
            if (err > 1e-9)
            {
                next_decision -= nudge;
            }
            else if (err < -1e-9)
            {
                next_decision += nudge;
            }
        }
        previous_sample_decision = decision;

        if (t >= std::llround(next_decision))
        {
            out.bits.push_back(decision);
            next_decision += samples_per_symbol;
        }
    }

    // stream ended just short of a final decision instant
    if (!out.bits.empty() && std::llround(next_decision) >= n &&
        next_decision - static_cast<double>(n - 1) < samples_per_symbol / 2.0)
    {
        out.bits.push_back(decision);
    }

    return out;
}

// The two dominant spectral peaks in the 800-2800 Hz band, lower first.
// Hann-windowed FFT, local maxima at least 300 Hz apart; anything without
// two clear peaks above the band's floor is rejected.
inline std::pair<double, double> measure_tone_frequencies(const audio_buffer& audio)
{
    const std::size_t max_samples = 1u << 17;
    const std::size_t m = std::min(audio.samples.size(), max_samples);
    if (m < 64 || audio.sample_rate <= 0)
    {
        throw insufficient_signal("not enough audio to measure tone frequencies");
    }

    std::vector<std::complex<double>> spectrum(next_power_of_two(m));
    for (std::size_t i = 0; i < m; i++)
    {
        const double hann =
            0.5 - 0.5 * std::cos(2.0 * std::numbers::pi * static_cast<double>(i) / (m - 1));
        spectrum[i] = audio.samples[i] * hann;
    }
    fft_in_place(spectrum);

    const double bin_hz = static_cast<double>(audio.sample_rate) / spectrum.size();
    const std::size_t lo = static_cast<std::size_t>(800.0 / bin_hz);
    const std::size_t hi =
        std::min(spectrum.size() / 2, static_cast<std::size_t>(2800.0 / bin_hz) + 1);
    if (hi <= lo + 2)
    {
        throw insufficient_signal("analysis band is empty at this sample rate");
    }

    std::vector<double> magnitude(hi - lo);
    for (std::size_t i = lo; i < hi; i++)
    {
        magnitude[i - lo] = std::abs(spectrum[i]);
    }

    // local maxima, strongest first
    std::vector<std::size_t> peaks;
    for (std::size_t i = 1; i + 1 < magnitude.size(); i++)
    {
        if (magnitude[i] > magnitude[i - 1] && magnitude[i] >= magnitude[i + 1])
        {
            peaks.push_back(i);
        }
    }
    std::sort(peaks.begin(), peaks.end(),
              [&](std::size_t a, std::size_t b) { return magnitude[a] > magnitude[b]; });

    std::vector<double> median_buf = magnitude;
    std::nth_element(median_buf.begin(), median_buf.begin() + median_buf.size() / 2,
                     median_buf.end());
    const double floor_level = median_buf[median_buf.size() / 2];

    const double min_separation_hz = 300.0;
    std::vector<double> found;
    std::vector<double> found_magnitude;
    for (std::size_t p : peaks)
    {
        const double freq = (lo + p) * bin_hz;
        bool distinct = true;
        for (double f : found)
        {
            if (std::abs(f - freq) < min_separation_hz)
            {
                distinct = false;
                break;
            }
        }
        if (distinct)
        {
            found.push_back(freq);
            found_magnitude.push_back(magnitude[p]);
        }
        if (found.size() == 2)
        {
            break;
        }
    }

    const double absolute_floor = 1e-9 * static_cast<double>(m);
    if (found.size() < 2 || found_magnitude[0] <= absolute_floor ||
        found_magnitude[1] < 0.05 * found_magnitude[0] ||
        found_magnitude[1] <= 8.0 * floor_level + absolute_floor)
    {
        throw insufficient_signal("no two distinct tone peaks above the noise floor");
    }

    if (found[0] > found[1])
    {
        std::swap(found[0], found[1]);
    }
    return { found[0], found[1] };
}

} // namespace aprsmodem

#endif // APRSMODEM_AFSK_HPP
