// Copyright (c) 2026 the aprsmodem authors
//
// SPDX-License-Identifier: MIT
//
// Minimal RIFF/WAVE PCM reader and writer. Emits 16-bit little-endian
// signed mono; reads 8-bit unsigned and 16-bit signed PCM, averaging
// multi-channel files to mono. Anything else is a loud error - the modem
// depends on sample fidelity, so no silent conversion.

#ifndef APRSMODEM_WAV_HPP
#define APRSMODEM_WAV_HPP

#include "afsk.hpp"
#include "errors.hpp"

#include <cmath>
#include <cstdint>
#include <cstring>
#include <filesystem>
#include <fstream>
#include <string>
#include <vector>

namespace aprsmodem {

namespace detail {

inline void put_u16(std::vector<std::uint8_t>& out, std::uint16_t v)
{
    out.push_back(static_cast<std::uint8_t>(v & 0xFF));
    out.push_back(static_cast<std::uint8_t>(v >> 8));
}

inline void put_u32(std::vector<std::uint8_t>& out, std::uint32_t v)
{
    out.push_back(static_cast<std::uint8_t>(v & 0xFF));
    out.push_back(static_cast<std::uint8_t>((v >> 8) & 0xFF));
    out.push_back(static_cast<std::uint8_t>((v >> 16) & 0xFF));
    out.push_back(static_cast<std::uint8_t>((v >> 24) & 0xFF));
}

inline std::uint16_t get_u16(const std::uint8_t* p)
{
    return static_cast<std::uint16_t>(p[0] | (p[1] << 8));
}

inline std::uint32_t get_u32(const std::uint8_t* p)
{
    return static_cast<std::uint32_t>(p[0]) | (static_cast<std::uint32_t>(p[1]) << 8) |
           (static_cast<std::uint32_t>(p[2]) << 16) | (static_cast<std::uint32_t>(p[3]) << 24);
}

// Symmetric quantization: +/-1.0 maps to +/-32767, halves round away from zero.
inline std::int16_t quantize16(float sample)
{
    double v = sample;
    if (v > 1.0)
    {
        v = 1.0;
    }
    else if (v < -1.0)
    {
        v = -1.0;
    }
    return static_cast<std::int16_t>(std::lround(v * 32767.0));
}

} // namespace detail

inline std::vector<std::uint8_t> encode_wav(const audio_buffer& audio)
{
    const std::uint32_t data_bytes = static_cast<std::uint32_t>(audio.samples.size() * 2);
    const std::uint32_t sample_rate = static_cast<std::uint32_t>(audio.sample_rate);

    std::vector<std::uint8_t> out;
    out.reserve(44 + data_bytes);

    out.insert(out.end(), { 'R', 'I', 'F', 'F' });
    detail::put_u32(out, 36 + data_bytes);
    out.insert(out.end(), { 'W', 'A', 'V', 'E' });

    out.insert(out.end(), { 'f', 'm', 't', ' ' });
    detail::put_u32(out, 16);
    detail::put_u16(out, 1);                 // PCM
    detail::put_u16(out, 1);                 // mono
    detail::put_u32(out, sample_rate);
    detail::put_u32(out, sample_rate * 2);   // byte rate
    detail::put_u16(out, 2);                 // block align
    detail::put_u16(out, 16);                // bits per sample

    out.insert(out.end(), { 'd', 'a', 't', 'a' });
    detail::put_u32(out, data_bytes);
    for (float s : audio.samples)
    {
        detail::put_u16(out, static_cast<std::uint16_t>(detail::quantize16(s)));
    }
    return out;
}

inline void write_wav(const audio_buffer& audio, const std::filesystem::path& path)
{
    const auto bytes = encode_wav(audio);
    std::ofstream file(path, std::ios::binary | std::ios::trunc);
    if (!file)
    {
        throw io_error("cannot open '" + path.string() + "' for writing");
    }
    file.write(reinterpret_cast<const char*>(bytes.data()),
               static_cast<std::streamsize>(bytes.size()));
    if (!file)
    {
        throw io_error("write to '" + path.string() + "' failed");
    }
}

inline audio_buffer decode_wav(const std::vector<std::uint8_t>& bytes)
{
    if (bytes.size() < 12 || std::memcmp(bytes.data(), "RIFF", 4) != 0 ||
        std::memcmp(bytes.data() + 8, "WAVE", 4) != 0)
    {
        throw corrupt_header("not a RIFF/WAVE file");
    }

    std::uint16_t format = 0;
    std::uint16_t channels = 0;
    std::uint16_t bits_per_sample = 0;
    std::uint32_t sample_rate = 0;
    bool have_fmt = false;

    std::size_t pos = 12;
    while (pos + 8 <= bytes.size())
    {
        const char* id = reinterpret_cast<const char*>(bytes.data() + pos);
        const std::uint32_t chunk_size = detail::get_u32(bytes.data() + pos + 4);
        const std::size_t body = pos + 8;
        if (body + chunk_size > bytes.size())
        {
            throw corrupt_header("chunk extends past end of file");
        }

        if (std::memcmp(id, "fmt ", 4) == 0)
        {
            if (chunk_size < 16)
            {
                throw corrupt_header("fmt chunk too small");
            }
            format = detail::get_u16(bytes.data() + body);
            channels = detail::get_u16(bytes.data() + body + 2);
            sample_rate = detail::get_u32(bytes.data() + body + 4);
            bits_per_sample = detail::get_u16(bytes.data() + body + 14);
            have_fmt = true;
        }
        else if (std::memcmp(id, "data", 4) == 0)
        {
            if (!have_fmt)
            {
                throw corrupt_header("data chunk before fmt chunk");
            }
            if (format != 1)
            {
                throw unsupported_format("only PCM integer WAV is supported (format " +
                                         std::to_string(format) + ")");
            }
            if (bits_per_sample != 8 && bits_per_sample != 16)
            {
                throw unsupported_format(std::to_string(bits_per_sample) +
                                         "-bit PCM is not supported");
            }
            if (channels == 0 || sample_rate == 0)
            {
                throw corrupt_header("fmt chunk has zero channels or sample rate");
            }

            const std::size_t bytes_per_sample = bits_per_sample / 8;
            const std::size_t frame_size = bytes_per_sample * channels;
            const std::size_t frames = chunk_size / frame_size;

            audio_buffer out;
            out.sample_rate = static_cast<int>(sample_rate);
            out.samples.reserve(frames);
            for (std::size_t f = 0; f < frames; f++)
            {
                double acc = 0.0;
                for (std::size_t c = 0; c < channels; c++)
                {
                    const std::uint8_t* p = bytes.data() + body + f * frame_size +
                                            c * bytes_per_sample;
                    if (bits_per_sample == 16)
                    {
                        acc += static_cast<std::int16_t>(detail::get_u16(p)) / 32767.0;
                    }
                    else
                    {
                        acc += (static_cast<int>(*p) - 128) / 128.0;
                    }
                }
                out.samples.push_back(static_cast<float>(acc / channels));
            }
            return out;
        }

        pos = body + chunk_size + (chunk_size & 1);  // chunks are word aligned
    }

    throw corrupt_header(have_fmt ? "no data chunk" : "no fmt chunk");
}

inline audio_buffer read_wav(const std::filesystem::path& path)
{
    std::ifstream file(path, std::ios::binary);
    if (!file)
    {
        throw io_error("cannot open '" + path.string() + "' for reading");
    }
    std::vector<std::uint8_t> bytes((std::istreambuf_iterator<char>(file)),
                                    std::istreambuf_iterator<char>());
    if (file.bad())
    {
        throw io_error("read from '" + path.string() + "' failed");
    }
    return decode_wav(bytes);
}

} // namespace aprsmodem

#endif // APRSMODEM_WAV_HPP
