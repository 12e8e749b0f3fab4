// Copyright (c) 2026 the aprsmodem authors
//
// SPDX-License-Identifier: MIT
//
// Bit-layer transforms between frame bytes and the on-air stream:
// LSB-first serialization, HDLC bit stuffing, flag delimiting and NRZI
// line coding, plus the inverse of each for the receive path.

#ifndef APRSMODEM_HDLC_HPP
#define APRSMODEM_HDLC_HPP

#include "ax25.hpp"
#include "errors.hpp"

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

namespace aprsmodem {

// Which transforms have been applied. Streams carry the stage in their
// type so a misordered pipeline is a compile error, not silent garbage.
enum class bit_stage
{
    logical,  // plain LSB-first data bits
    stuffed,  // a zero inserted after every run of five ones
    framed,   // flags added front and back
    nrzi      // line levels: 0 toggles, 1 holds
};

template <bit_stage Stage>
struct bit_stream
{
    std::vector<std::uint8_t> bits;

    static constexpr bit_stage stage = Stage;

    std::size_t size() const { return bits.size(); }
    bool empty() const { return bits.empty(); }

    bool operator==(const bit_stream&) const = default;
};

using logical_bits = bit_stream<bit_stage::logical>;
using stuffed_bits = bit_stream<bit_stage::stuffed>;
using framed_bits = bit_stream<bit_stage::framed>;
using nrzi_bits = bit_stream<bit_stage::nrzi>;

// Flags before and after the frame body. The preamble doubles as
// transmitter key-up time; 25 flags is about 167 ms at 1200 baud.
struct framing_config
{
    int preamble_flags = 25;
    int postamble_flags = 2;

    void validate() const
    {
        if (preamble_flags < 1 || postamble_flags < 1)
        {
            throw config_error("preamble and postamble must each have at least one flag");
        }
    }
};

// 0x7E in transmission order.
inline constexpr std::array<std::uint8_t, 8> flag_bits = { 0, 1, 1, 1, 1, 1, 1, 0 };

// Spans between flags shorter than this are treated as noise.
inline constexpr std::size_t min_frame_bits = 136;

inline logical_bits bytes_to_bits_lsb_first(std::span<const std::uint8_t> data)
{
    logical_bits out;
    out.bits.reserve(8 * data.size());
    for (std::uint8_t b : data)
    {
        for (int i = 0; i < 8; i++)
        {
            out.bits.push_back((b >> i) & 1);
        }
    }
    return out;
}

inline std::vector<std::uint8_t> bits_to_bytes_lsb_first(std::span<const std::uint8_t> bits)
{
    std::vector<std::uint8_t> out(bits.size() / 8, 0);
    for (std::size_t i = 0; i + 8 <= bits.size(); i += 8)
    {
        std::uint8_t b = 0;
        for (int j = 0; j < 8; j++)
        {
            b |= static_cast<std::uint8_t>((bits[i + j] & 1) << j);
        }
        out[i / 8] = b;
    }
    return out;
}

// Inserts a zero after every run of five ones, including a run that ends
// the stream, so the body can never contain six ones in a row.
inline stuffed_bits stuff_bits(const logical_bits& in)
{
    stuffed_bits out;
    out.bits.reserve(in.bits.size() + in.bits.size() / 5);
    int run = 0;
    for (std::uint8_t b : in.bits)
    {
        out.bits.push_back(b);
        if (b)
        {
            if (++run == 5)
            {
                out.bits.push_back(0);
                run = 0;
            }
        }
        else
        {
            run = 0;
        }
    }
    return out;
}

namespace detail {

inline std::optional<std::vector<std::uint8_t>> try_unstuff(std::span<const std::uint8_t> bits)
{
    std::vector<std::uint8_t> out;
    out.reserve(bits.size());
    int run = 0;
    for (std::size_t i = 0; i < bits.size(); i++)
    {
        out.push_back(bits[i]);
        if (bits[i])
        {
            if (++run == 5)
            {
                // the stuffer always follows five ones with a zero
                if (i + 1 >= bits.size() || bits[i + 1] != 0)
                {
                    return std::nullopt;
                }
                i++;
                run = 0;
            }
        }
        else
        {
            run = 0;
        }
    }
    return out;
}

} // namespace detail

inline logical_bits unstuff_bits(const stuffed_bits& in)
{
    auto bits = detail::try_unstuff(in.bits);
    if (!bits)
    {
        throw stuffing_violation("six consecutive ones inside a frame body");
    }
    return logical_bits{ std::move(*bits) };
}

// Flags are appended verbatim; they are never themselves stuffed.
inline framed_bits add_flags(const stuffed_bits& body, const framing_config& config = {})
{
    config.validate();
    framed_bits out;
    out.bits.reserve(body.bits.size() +
                     8 * static_cast<std::size_t>(config.preamble_flags + config.postamble_flags));
    for (int i = 0; i < config.preamble_flags; i++)
    {
        out.bits.insert(out.bits.end(), flag_bits.begin(), flag_bits.end());
    }
    out.bits.insert(out.bits.end(), body.bits.begin(), body.bits.end());
    for (int i = 0; i < config.postamble_flags; i++)
    {
        out.bits.insert(out.bits.end(), flag_bits.begin(), flag_bits.end());
    }
    return out;
}

// NRZI: a zero toggles the line level, a one holds it. The idle level
// defaults to mark (1).
inline nrzi_bits nrzi_encode(const framed_bits& in, std::uint8_t initial_level = 1)
{
    nrzi_bits out;
    out.bits.reserve(in.bits.size());
    std::uint8_t level = initial_level & 1;
    for (std::uint8_t b : in.bits)
    {
        if (!b)
        {
            level ^= 1;
        }
        out.bits.push_back(level);
    }
    return out;
}

// Emits 1 where consecutive levels are equal and 0 where they differ.
// Only the first bit depends on the reference level, and the output is
// unchanged when both the levels and the reference are inverted, which is
// what makes the receive path immune to line polarity.
inline framed_bits nrzi_decode(const nrzi_bits& in, std::uint8_t prior_level = 1)
{
    framed_bits out;
    out.bits.reserve(in.bits.size());
    std::uint8_t prev = prior_level & 1;
    for (std::uint8_t level : in.bits)
    {
        level &= 1;
        out.bits.push_back(level == prev ? 1 : 0);
        prev = level;
    }
    return out;
}

namespace detail {

inline bool flag_at(std::span<const std::uint8_t> bits, std::size_t pos)
{
    for (std::size_t i = 0; i < 8; i++)
    {
        if ((bits[pos + i] & 1) != flag_bits[i])
        {
            return false;
        }
    }
    return true;
}

// Flag positions, scanned greedily left to right. Two adjacent frames may
// share one flag, so every flag both closes a span and opens the next.
inline std::vector<std::size_t> find_flag_positions(std::span<const std::uint8_t> bits)
{
    std::vector<std::size_t> positions;
    std::size_t i = 0;
    while (i + 8 <= bits.size())
    {
        if (flag_at(bits, i))
        {
            positions.push_back(i);
            i += 8;
        }
        else
        {
            i++;
        }
    }
    return positions;
}

} // namespace detail

// Extracts the byte sequences (payload plus FCS) delimited by flags.
// Spans that are too short, not a whole number of bytes after unstuffing,
// or that violate the stuffing rule are dropped; validity beyond that is
// the frame parser's job.
inline std::vector<std::vector<std::uint8_t>> find_frames(const framed_bits& in)
{
    std::vector<std::vector<std::uint8_t>> frames;
    auto flags = detail::find_flag_positions(in.bits);
    for (std::size_t f = 1; f < flags.size(); f++)
    {
        std::size_t begin = flags[f - 1] + 8;
        std::size_t end = flags[f];
        if (end <= begin || end - begin < min_frame_bits)
        {
            continue;
        }
        auto span = std::span<const std::uint8_t>(in.bits).subspan(begin, end - begin);
        auto unstuffed = detail::try_unstuff(span);
        if (!unstuffed || unstuffed->size() % 8 != 0 || unstuffed->size() < min_frame_bits)
        {
            continue;
        }
        frames.push_back(bits_to_bytes_lsb_first(*unstuffed));
    }
    return frames;
}

// Debug dump: '0'/'1' in transmission order, a space every 8 bits,
// '|' at flag boundaries.
inline std::string format_bit_dump(const framed_bits& in)
{
    auto flags = detail::find_flag_positions(in.bits);
    std::string out;
    out.reserve(in.bits.size() + in.bits.size() / 8 + 2 * flags.size());
    std::size_t next_flag = 0;
    for (std::size_t i = 0; i < in.bits.size(); i++)
    {
        if (next_flag < flags.size() && flags[next_flag] == i)
        {
            if (!out.empty() && out.back() != '|')
            {
                out += '|';
            }
            else if (out.empty())
            {
                out += '|';
            }
        }
        if (i > 0 && i % 8 == 0 && out.back() != '|')
        {
            out += ' ';
        }
        out += in.bits[i] ? '1' : '0';
        if (next_flag < flags.size() && flags[next_flag] + 8 == i + 1)
        {
            out += '|';
            next_flag++;
        }
    }
    return out;
}

} // namespace aprsmodem

#endif // APRSMODEM_HDLC_HPP
