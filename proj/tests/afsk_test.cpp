// Copyright (c) 2026 the aprsmodem authors
//
// SPDX-License-Identifier: MIT

#include <aprsmodem/afsk.hpp>
#include <aprsmodem/modem.hpp>
#include <aprsmodem/tnc2.hpp>

#include <gtest/gtest.h>

#include <cmath>
#include <random>

using namespace aprsmodem;

namespace {

// Independent spectral probe: Goertzel power at one frequency. Used as the
// oracle for modulator tone placement instead of the library FFT.
double goertzel_power(const std::vector<float>& samples, int rate, double freq)
{
    const double w = 2.0 * std::numbers::pi * freq / rate;
    const double coeff = 2.0 * std::cos(w);
    double s1 = 0.0, s2 = 0.0;
    for (float x : samples)
    {
        const double s0 = x + coeff * s1 - s2;
        s2 = s1;
        s1 = s0;
    }
    return s1 * s1 + s2 * s2 - coeff * s1 * s2;
}

// argmax of Goertzel power over an FFT-style frequency grid
double dominant_frequency(const std::vector<float>& samples, int rate)
{
    const std::size_t grid = 32768;
    const double bin_hz = static_cast<double>(rate) / grid;
    double best_freq = 0.0;
    double best_power = -1.0;
    for (double f = 300.0; f <= 3500.0; f += bin_hz)
    {
        const double p = goertzel_power(samples, rate, f);
        if (p > best_power)
        {
            best_power = p;
            best_freq = f;
        }
    }
    return best_freq;
}

nrzi_bits constant_levels(std::uint8_t level, std::size_t count)
{
    return nrzi_bits{ std::vector<std::uint8_t>(count, level) };
}

nrzi_bits random_levels(std::mt19937& gen, std::size_t count)
{
    std::uniform_int_distribution<int> bit(0, 1);
    nrzi_bits out;
    out.bits.resize(count);
    for (auto& b : out.bits)
    {
        b = static_cast<std::uint8_t>(bit(gen));
    }
    return out;
}

nrzi_bits golden_level_stream()
{
    frame_bytes frame =
        build_frame(parse_tnc2("YG3DQQ>APTCM0,YBSAT,WIDE2-2:Pengujian APRS TCM3105"));
    return nrzi_encode(frame_to_bits(frame, { 25, 2 }));
}

modem_config config_at(int rate)
{
    modem_config cfg;
    cfg.sample_rate = rate;
    return cfg;
}

} // namespace

TEST(modulate, forty_samples_per_symbol_at_48k)
{
    auto audio = modulate(constant_levels(1, 1), config_at(48000));
    EXPECT_EQ(audio.samples.size(), 40u);
    EXPECT_EQ(audio.sample_rate, 48000);
}

TEST(modulate, symbol_count_conservation)
{
    std::mt19937 gen(31);
    for (int rate : { 8000, 11025, 22050, 44100, 48000 })
    {
        auto levels = random_levels(gen, 997);
        auto audio = modulate(levels, config_at(rate));
        const double expected = levels.size() * (static_cast<double>(rate) / 1200.0);
        EXPECT_LE(std::abs(static_cast<double>(audio.samples.size()) - expected),
                  static_cast<double>(rate) / 1200.0)
            << "rate " << rate;
    }
}

TEST(modulate, mark_and_space_tones)
{
    for (int rate : { 48000, 44100 })
    {
        const double bin_hz = static_cast<double>(rate) / 32768;
        auto mark_audio = modulate(constant_levels(1, 1000), config_at(rate));
        EXPECT_NEAR(dominant_frequency(mark_audio.samples, rate), 1200.0, bin_hz + 1e-9)
            << "rate " << rate;
        auto space_audio = modulate(constant_levels(0, 1000), config_at(rate));
        EXPECT_NEAR(dominant_frequency(space_audio.samples, rate), 2200.0, bin_hz + 1e-9)
            << "rate " << rate;
    }
}

TEST(modulate, phase_is_continuous)
{
    std::mt19937 gen(33);
    modem_config cfg = config_at(48000);
    auto audio = modulate(random_levels(gen, 2000), cfg);
    const double bound = cfg.amplitude * 2.0 * std::numbers::pi * cfg.space_hz /
                         cfg.sample_rate * 1.01;
    double worst = 0.0;
    for (std::size_t i = 1; i < audio.samples.size(); i++)
    {
        worst = std::max(worst, std::abs(static_cast<double>(audio.samples[i]) -
                                         audio.samples[i - 1]));
    }
    EXPECT_LE(worst, bound);
}

TEST(modulate, rejects_bad_config)
{
    modem_config cfg;
    cfg.sample_rate = 4000;  // below twice the space tone
    EXPECT_THROW(modulate(constant_levels(1, 10), cfg), config_error);

    cfg = {};
    cfg.mark_hz = cfg.space_hz;
    EXPECT_THROW(modulate(constant_levels(1, 10), cfg), config_error);

    cfg = {};
    cfg.amplitude = 0.0;
    EXPECT_THROW(modulate(constant_levels(1, 10), cfg), config_error);

    cfg = {};
    cfg.baud = -1.0;
    EXPECT_THROW(modulate(constant_levels(1, 10), cfg), config_error);
}

TEST(demodulate, single_symbol_of_mark)
{
    modem_config cfg = config_at(48000);
    auto audio = modulate(constant_levels(1, 1), cfg);
    auto levels = demodulate(audio, cfg);
    ASSERT_EQ(levels.size(), 1u);
    EXPECT_EQ(levels.bits[0], 1);
}

TEST(demodulate, golden_frame_levels_round_trip_exactly)
{
    modem_config cfg = config_at(48000);
    nrzi_bits levels = golden_level_stream();
    EXPECT_EQ(demodulate(modulate(levels, cfg), cfg), levels);
}

TEST(demodulate, random_level_round_trip_across_rates)
{
    std::mt19937 gen(37);
    for (int rate : { 8000, 11025, 22050, 44100, 48000 })
    {
        modem_config cfg = config_at(rate);
        for (int i = 0; i < 3; i++)
        {
            nrzi_bits levels = random_levels(gen, 1200);
            EXPECT_EQ(demodulate(modulate(levels, cfg), cfg), levels) << "rate " << rate;
        }
    }
}

TEST(demodulate, amplitude_invariant)
{
    modem_config cfg = config_at(48000);
    nrzi_bits levels = golden_level_stream();
    audio_buffer audio = modulate(levels, cfg);
    nrzi_bits reference = demodulate(audio, cfg);
    for (double scale : { 0.1, 0.25, 0.5, 0.75, 1.0 })
    {
        audio_buffer scaled = audio;
        for (float& s : scaled.samples)
        {
            s = static_cast<float>(s * scale);
        }
        EXPECT_EQ(demodulate(scaled, cfg), reference) << "scale " << scale;
    }
}

TEST(demodulate, inverted_audio_still_decodes)
{
    // line polarity must not matter: NRZI carries data in transitions
    modem_config cfg = config_at(48000);
    ui_frame frame = parse_tnc2("YG3DQQ>APTCM0,YBSAT,WIDE2-2:Pengujian APRS TCM3105");
    audio_buffer audio = encode_packet(frame, cfg);
    for (float& s : audio.samples)
    {
        s = -s;
    }
    auto decoded = decode_audio(audio, cfg);
    ASSERT_EQ(decoded.size(), 1u);
    EXPECT_EQ(decoded[0].frame, frame);
}

TEST(demodulate, rejects_rate_mismatch)
{
    auto audio = modulate(constant_levels(1, 10), config_at(48000));
    EXPECT_THROW(demodulate(audio, config_at(44100)), config_error);
}

TEST(demodulate, survives_one_percent_clock_skew)
{
    // a hundred frames in one stream, replayed 1% fast and 1% slow
    std::mt19937 gen(41);
    modem_config cfg = config_at(48000);
    framing_config framing{ 8, 2 };

    std::vector<ui_frame> frames;
    audio_buffer stream;
    stream.sample_rate = cfg.sample_rate;
    for (int i = 0; i < 100; i++)
    {
        std::string text = "SRC" + std::to_string(i % 10) + ">DEST" + std::to_string(i % 10) +
                           ",WIDE2-2:skew stress packet " + std::to_string(i);
        ui_frame frame = parse_tnc2(text);
        frames.push_back(frame);
        audio_buffer one = encode_packet(frame, cfg, framing);
        stream.samples.insert(stream.samples.end(), one.samples.begin(), one.samples.end());
    }

    for (double ratio : { 1.01, 0.99 })
    {
        audio_buffer skewed;
        skewed.sample_rate = cfg.sample_rate;
        for (std::size_t k = 0;; k++)
        {
            const double pos = k * ratio;
            const auto idx = static_cast<std::size_t>(pos);
            if (idx + 1 >= stream.samples.size())
            {
                break;
            }
            const double frac = pos - static_cast<double>(idx);
            skewed.samples.push_back(static_cast<float>(
                (1.0 - frac) * stream.samples[idx] + frac * stream.samples[idx + 1]));
        }

        auto decoded = decode_audio(skewed, cfg);
        ASSERT_EQ(decoded.size(), frames.size()) << "ratio " << ratio;
        for (std::size_t i = 0; i < frames.size(); i++)
        {
            EXPECT_EQ(decoded[i].frame, frames[i]) << "ratio " << ratio << " frame " << i;
        }
    }
}

TEST(tone_measurement, finds_mark_and_space)
{
    // alternating 25-symbol blocks of each tone
    nrzi_bits levels;
    for (int block = 0; block < 24; block++)
    {
        for (int i = 0; i < 25; i++)
        {
            levels.bits.push_back(block % 2);
        }
    }
    for (int rate : { 48000, 8000 })
    {
        auto audio = modulate(levels, config_at(rate));
        auto [low, high] = measure_tone_frequencies(audio);
        EXPECT_NEAR(low, 1200.0, 10.0) << "rate " << rate;
        EXPECT_NEAR(high, 2200.0, 10.0) << "rate " << rate;
    }
}

TEST(tone_measurement, rejects_silence)
{
    audio_buffer silence;
    silence.sample_rate = 48000;
    silence.samples.assign(48000, 0.0f);
    EXPECT_THROW(measure_tone_frequencies(silence), insufficient_signal);
}

TEST(tone_measurement, rejects_single_tone)
{
    auto audio = modulate(constant_levels(1, 600), config_at(48000));
    EXPECT_THROW(measure_tone_frequencies(audio), insufficient_signal);
}
