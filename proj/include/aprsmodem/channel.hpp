// Copyright (c) 2026 the aprsmodem authors
//
// SPDX-License-Identifier: MIT
//
// Deterministic channel impairments so decoder robustness is testable
// without a radio: seeded Gaussian noise, gain, DC offset and sample-rate
// skew. The generator is pinned (xoshiro256++ seeded by splitmix64,
// Box-Muller for normals) so identical inputs impair identically on any
// platform; reference draws live in tests/data/rng_reference.txt.

#ifndef APRSMODEM_CHANNEL_HPP
#define APRSMODEM_CHANNEL_HPP

#include "afsk.hpp"
#include "errors.hpp"
#include "modem.hpp"

#include <cmath>
#include <cstdint>
#include <numbers>
#include <optional>
#include <utility>

namespace aprsmodem {

struct channel_spec
{
    std::optional<double> snr_db;  // additive white Gaussian noise; absent = no noise
    double gain = 1.0;
    double dc_offset = 0.0;
    double rate_skew_ppm = 0.0;    // resampling error, parts per million
    std::uint64_t seed = 0;

    void validate() const
    {
        if (gain <= 0.0)
        {
            throw config_error("channel gain must be positive");
        }
    }
};

struct channel_report
{
    std::size_t clipped_samples = 0;
    double signal_rms = 0.0;
    double noise_rms = 0.0;
};

namespace detail {

inline std::uint64_t splitmix64_next(std::uint64_t& state)
{
    state += 0x9E3779B97F4A7C15ull;
    std::uint64_t z = state;
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ull;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBull;
    return z ^ (z >> 31);
}

} // namespace detail

// xoshiro256++ (Blackman/Vigna), state seeded through splitmix64.
class xoshiro256pp
{
public:
    explicit xoshiro256pp(std::uint64_t seed)
    {
        std::uint64_t sm = seed;
        for (auto& word : state_)
        {
            word = detail::splitmix64_next(sm);
        }
    }

    std::uint64_t next()
    {
        const std::uint64_t result = rotl(state_[0] + state_[3], 23) + state_[0];
        const std::uint64_t t = state_[1] << 17;
        state_[2] ^= state_[0];
        state_[3] ^= state_[1];
        state_[1] ^= state_[2];
        state_[0] ^= state_[3];
        state_[2] ^= t;
        state_[3] = rotl(state_[3], 45);
        return result;
    }

    // Standard normal via Box-Muller; draws two uniforms, returns two deviates.
    // u1 is mapped into (0, 1] so the log never sees zero.
    std::pair<double, double> normal_pair()
    {
        const double u1 = (static_cast<double>(next() >> 11) + 1.0) * 0x1.0p-53;
        const double u2 = static_cast<double>(next() >> 11) * 0x1.0p-53;
        const double radius = std::sqrt(-2.0 * std::log(u1));
        const double angle = 2.0 * std::numbers::pi * u2;
        return { radius * std::cos(angle), radius * std::sin(angle) };
    }

private:
    static std::uint64_t rotl(std::uint64_t x, int k)
    {
        return (x << k) | (x >> (64 - k));
    }

    std::uint64_t state_[4] = {};
};

namespace detail {

// RMS over the non-silent portion, so padding silence does not dilute the
// SNR reference.
inline double non_silent_rms(const std::vector<float>& samples)
{
    double sum = 0.0;
    std::size_t count = 0;
    for (float s : samples)
    {
        if (std::abs(s) > 1e-6f)
        {
            sum += static_cast<double>(s) * s;
            count++;
        }
    }
    return count > 0 ? std::sqrt(sum / count) : 0.0;
}

} // namespace detail

// Applies, in order: gain, DC offset, noise sized against the signal as it
// stands at that point, then linear-interpolation resampling for skew.
// The identity spec returns the input bit for bit.
inline std::pair<audio_buffer, channel_report> apply_channel(const audio_buffer& audio,
                                                             const channel_spec& spec)
{
    spec.validate();

    audio_buffer out = audio;
    channel_report report;
    report.signal_rms = detail::non_silent_rms(audio.samples) * spec.gain;

    if (spec.gain != 1.0)
    {
        for (float& s : out.samples)
        {
            s = static_cast<float>(s * spec.gain);
        }
    }
    if (spec.dc_offset != 0.0)
    {
        for (float& s : out.samples)
        {
            s = static_cast<float>(s + spec.dc_offset);
        }
    }

    if (spec.snr_db)
    {
        const double sigma = report.signal_rms / std::pow(10.0, *spec.snr_db / 20.0);
        report.noise_rms = sigma;
        xoshiro256pp rng(spec.seed);
        std::size_t i = 0;
        while (i < out.samples.size())
        {
            auto [a, b] = rng.normal_pair();
            out.samples[i] = static_cast<float>(out.samples[i] + sigma * a);
            i++;
            if (i < out.samples.size())
            {
                out.samples[i] = static_cast<float>(out.samples[i] + sigma * b);
                i++;
            }
        }
    }

    if (spec.rate_skew_ppm != 0.0)
    {
        const double ratio = 1.0 + spec.rate_skew_ppm * 1e-6;
        std::vector<float> resampled;
        resampled.reserve(out.samples.size());
        for (std::size_t k = 0;; k++)
        {
            const double position = k * ratio;
            const auto index = static_cast<std::size_t>(position);
            if (index + 1 >= out.samples.size())
            {
                break;
            }
            const double frac = position - static_cast<double>(index);
            resampled.push_back(static_cast<float>((1.0 - frac) * out.samples[index] +
                                                   frac * out.samples[index + 1]));
        }
        out.samples = std::move(resampled);
    }

    for (float& s : out.samples)
    {
        if (s > 1.0f)
        {
            s = 1.0f;
            report.clipped_samples++;
        }
        else if (s < -1.0f)
        {
            s = -1.0f;
            report.clipped_samples++;
        }
    }

    return { std::move(out), report };
}

// Per-trial seeds derived from the run seed via splitmix64, so trials are
// independent and the whole run is reproducible.
inline std::vector<std::uint64_t> derive_trial_seeds(std::uint64_t seed, int trials)
{
    std::vector<std::uint64_t> seeds(static_cast<std::size_t>(trials));
    std::uint64_t state = seed;
    for (auto& s : seeds)
    {
        s = detail::splitmix64_next(state);
    }
    return seeds;
}

// Encode once, impair per trial, decode, and count trials whose output
// contains the original frame. Returns successes / trials.
inline double frame_success_rate(const ui_frame& frame,
                                 const channel_spec& spec,
                                 int trials,
                                 const modem_config& modem = {},
                                 const framing_config& framing = {})
{
    if (trials < 1)
    {
        throw config_error("trial count must be at least 1");
    }

    const ui_frame reference = make_ui_frame(frame.destination, frame.source,
                                             frame.digipeaters, frame.info);
    const audio_buffer clean = encode_packet(reference, modem, framing);
    const auto seeds = derive_trial_seeds(spec.seed, trials);

    int successes = 0;
    for (int trial = 0; trial < trials; trial++)
    {
        channel_spec trial_spec = spec;
        trial_spec.seed = seeds[static_cast<std::size_t>(trial)];
        auto [impaired, report] = apply_channel(clean, trial_spec);
        for (const auto& decoded : decode_audio(impaired, modem))
        {
            if (decoded.frame == reference)
            {
                successes++;
                break;
            }
        }
    }
    return static_cast<double>(successes) / trials;
}

} // namespace aprsmodem

#endif // APRSMODEM_CHANNEL_HPP
