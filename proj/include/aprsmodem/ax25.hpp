// Copyright (c) 2026 the aprsmodem authors
//
// SPDX-License-Identifier: MIT
//
// AX.25 UI frame construction, parsing and FCS computation.

#ifndef APRSMODEM_AX25_HPP
#define APRSMODEM_AX25_HPP

#include "errors.hpp"

#include <array>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

namespace aprsmodem {

inline constexpr std::size_t max_callsign_length = 6;
inline constexpr std::size_t max_digipeaters = 8;
inline constexpr std::size_t max_info_bytes = 256;
inline constexpr std::uint8_t control_ui = 0x03;
inline constexpr std::uint8_t pid_no_layer3 = 0xF0;

// Smallest parseable frame: two addresses + control + PID + one info byte + FCS.
inline constexpr std::size_t min_frame_bytes = 7 + 7 + 1 + 1 + 1 + 2;

// One address in the AX.25 address block: a callsign of up to 6
// upper-case letters or digits, plus a 4-bit SSID.
struct address_field
{
    std::string callsign;
    int ssid = 0;
    bool is_last = false;            // address-extension bit, set on the final address
    bool has_been_repeated = false;  // digipeater H bit, printed as a trailing '*'

    bool operator==(const address_field&) const = default;
};

// Whether an address sits in the destination, source or digipeater slot.
// The slot decides what bit 7 of the SSID octet carries.
enum class address_role
{
    destination,
    source,
    digipeater
};

// Command/response bits for the destination and source SSID octets.
// Modern UI-frame convention is destination 1, source 0; configurable so
// frames from other tools can be matched bit for bit.
struct frame_options
{
    bool destination_command_bit = true;
    bool source_command_bit = false;
};

// A connectionless UI frame. Addresses hold decoded text form; info is
// opaque bytes (1-256). control/pid are kept so parsed non-UI traffic can
// be inspected, but encoding always emits 0x03/0xF0.
struct ui_frame
{
    address_field destination;
    address_field source;
    std::vector<address_field> digipeaters;
    std::uint8_t control = control_ui;
    std::uint8_t pid = pid_no_layer3;
    std::vector<std::uint8_t> info;

    bool operator==(const ui_frame&) const = default;
};

// Serialized frame: everything from the first destination byte through the
// last info byte, plus the FCS in transmission order (low octet first).
struct frame_bytes
{
    std::vector<std::uint8_t> payload;
    std::array<std::uint8_t, 2> fcs{};

    std::vector<std::uint8_t> serialize() const
    {
        std::vector<std::uint8_t> out = payload;
        out.push_back(fcs[0]);
        out.push_back(fcs[1]);
        return out;
    }
};

namespace detail {

constexpr std::uint8_t reverse_bits(std::uint8_t b)
{
    b = static_cast<std::uint8_t>((b & 0xF0) >> 4 | (b & 0x0F) << 4);
    b = static_cast<std::uint8_t>((b & 0xCC) >> 2 | (b & 0x33) << 2);
    b = static_cast<std::uint8_t>((b & 0xAA) >> 1 | (b & 0x55) << 1);
    return b;
}

// Byte-wise table for the reflected x^16 + x^12 + x^5 + 1 division
// (0x8408, LSB-first per byte).
constexpr std::array<std::uint16_t, 256> make_crc16_x25_table()
{
    std::array<std::uint16_t, 256> table{};
    for (int i = 0; i < 256; i++)
    {
        std::uint16_t crc = static_cast<std::uint16_t>(i);
        for (int j = 0; j < 8; j++)
        {
            crc = (crc & 1) ? static_cast<std::uint16_t>((crc >> 1) ^ 0x8408)
                            : static_cast<std::uint16_t>(crc >> 1);
        }
        table[i] = crc;
    }
    return table;
}

inline constexpr auto crc16_x25_table = make_crc16_x25_table();

constexpr bool valid_callsign_char(char c)
{
    return (c >= 'A' && c <= 'Z') || (c >= '0' && c <= '9');
}

} // namespace detail

// Validates callsign and SSID. Lower-case input is rejected rather than
// auto-upcased so bad input stays visible.
inline void validate_address(const address_field& addr)
{
    if (addr.callsign.empty() || addr.callsign.size() > max_callsign_length)
    {
        throw invalid_callsign("callsign '" + addr.callsign + "' must be 1-6 characters");
    }
    for (char c : addr.callsign)
    {
        if (!detail::valid_callsign_char(c))
        {
            throw invalid_callsign("callsign '" + addr.callsign +
                                   "' contains a character outside upper-case A-Z / 0-9");
        }
    }
    if (addr.ssid < 0 || addr.ssid > 15)
    {
        throw invalid_ssid("ssid " + std::to_string(addr.ssid) + " outside 0-15");
    }
}

// CRC-16/X-25 over the payload: reflected x^16 + x^12 + x^5 + 1,
// init 0xFFFF, final XOR 0xFFFF. The returned 16-bit value is the one
// canonical representation; transmission order (low octet first) is
// applied only when serializing.
inline std::uint16_t compute_fcs(std::span<const std::uint8_t> payload)
{
    std::uint16_t crc = 0xFFFF;
    for (std::uint8_t b : payload)
    {
        crc = static_cast<std::uint16_t>((crc >> 8) ^
                                         detail::crc16_x25_table[(crc ^ b) & 0xFF]);
    }
    return static_cast<std::uint16_t>(crc ^ 0xFFFF);
}

inline std::array<std::uint8_t, 2> fcs_transmission_order(std::uint16_t fcs)
{
    return { static_cast<std::uint8_t>(fcs & 0xFF), static_cast<std::uint8_t>(fcs >> 8) };
}

// Same FCS built the way an MSB-first shift register would: run the
// non-reflected CCITT engine (left-shifting 0x1021) over the packet bits
// in transmission order, exchange the two result octets, then bit-swap
// each octet for the wire. Exists to prove on-air equivalence with
// compute_fcs; returns the byte pair in transmission order.
inline std::array<std::uint8_t, 2> compute_fcs_msb_first(std::span<const std::uint8_t> payload)
{
    std::uint16_t crc = 0xFFFF;
    for (std::uint8_t b : payload)
    {
        // transmission order: each byte goes out LSB-first, so the
        // MSB-first engine sees the bit-swapped byte
        crc ^= static_cast<std::uint16_t>(detail::reverse_bits(b)) << 8;
        for (int j = 0; j < 8; j++)
        {
            crc = (crc & 0x8000) ? static_cast<std::uint16_t>((crc << 1) ^ 0x1021)
                                 : static_cast<std::uint16_t>(crc << 1);
        }
    }
    crc ^= 0xFFFF;
    // octet exchange, then the per-byte bit swap every outgoing byte gets
    return { detail::reverse_bits(static_cast<std::uint8_t>(crc >> 8)),
             detail::reverse_bits(static_cast<std::uint8_t>(crc & 0xFF)) };
}

// Encodes one address into its 7-byte wire form.
//
//  - Bytes 0-5: callsign, space-padded to 6, each character shifted left
//    one bit ('Y' = 0x59 -> 0xB2).
//  - Byte 6: SSID octet.
//
//      C/H   reserved   SSID    ext
//       7      6 5      4..1     0
//
//    Bit 7 carries the command bit for destination/source and the
//    has-been-repeated H bit for digipeaters. Reserved bits are 1.
inline std::array<std::uint8_t, 7> encode_address(const address_field& addr,
                                                  address_role role,
                                                  const frame_options& options = {})
{
    validate_address(addr);

    std::array<std::uint8_t, 7> out{};
    for (std::size_t i = 0; i < max_callsign_length; i++)
    {
        char c = i < addr.callsign.size() ? addr.callsign[i] : ' ';
        out[i] = static_cast<std::uint8_t>(static_cast<unsigned char>(c) << 1);
    }

    std::uint8_t ssid_octet = static_cast<std::uint8_t>(0x60 | (addr.ssid << 1));
    if (addr.is_last)
    {
        ssid_octet |= 0x01;
    }

    bool top_bit = false;
    switch (role)
    {
    case address_role::destination: top_bit = options.destination_command_bit; break;
    case address_role::source:      top_bit = options.source_command_bit; break;
    case address_role::digipeater:  top_bit = addr.has_been_repeated; break;
    }
    if (top_bit)
    {
        ssid_octet |= 0x80;
    }

    out[6] = ssid_octet;
    return out;
}

// Builds a frame with is_last set positionally on the final address.
// Control and PID are always emitted as 0x03 / 0xF0.
inline frame_bytes build_frame(const ui_frame& frame, const frame_options& options = {})
{
    if (frame.digipeaters.size() > max_digipeaters)
    {
        throw too_many_digipeaters("frame has " + std::to_string(frame.digipeaters.size()) +
                                   " digipeaters, limit is 8");
    }
    if (frame.info.empty() || frame.info.size() > max_info_bytes)
    {
        throw info_field_size("info field of " + std::to_string(frame.info.size()) +
                              " bytes outside 1-256");
    }

    frame_bytes out;
    out.payload.reserve(7 * (2 + frame.digipeaters.size()) + 2 + frame.info.size());

    auto append = [&out](const std::array<std::uint8_t, 7>& a) {
        out.payload.insert(out.payload.end(), a.begin(), a.end());
    };

    address_field dest = frame.destination;
    dest.is_last = false;
    append(encode_address(dest, address_role::destination, options));

    address_field src = frame.source;
    src.is_last = frame.digipeaters.empty();
    append(encode_address(src, address_role::source, options));

    for (std::size_t i = 0; i < frame.digipeaters.size(); i++)
    {
        address_field digi = frame.digipeaters[i];
        digi.is_last = (i + 1 == frame.digipeaters.size());
        append(encode_address(digi, address_role::digipeater, options));
    }

    out.payload.push_back(control_ui);
    out.payload.push_back(pid_no_layer3);
    out.payload.insert(out.payload.end(), frame.info.begin(), frame.info.end());

    out.fcs = fcs_transmission_order(compute_fcs(out.payload));
    return out;
}

enum class frame_error
{
    none,
    bad_fcs,                 // checksum mismatch, frame corrupted
    malformed_address_block  // no extension bit within 10 addresses, or truncated input
};

// Parse outcome. `frame` is empty on a fatal error; `not_ui_control` is a
// warning only - a frame with control != 0x03 still parses so non-UI
// traffic can be inspected.
struct frame_parse_result
{
    std::optional<ui_frame> frame;
    frame_error error = frame_error::none;
    bool not_ui_control = false;
};

namespace detail {

inline bool decode_callsign(std::span<const std::uint8_t> wire, std::string& out)
{
    out.clear();
    std::size_t len = max_callsign_length;
    while (len > 0 && wire[len - 1] == (' ' << 1))
    {
        len--;
    }
    if (len == 0)
    {
        return false;
    }
    for (std::size_t i = 0; i < len; i++)
    {
        if (wire[i] & 0x01)
        {
            return false;
        }
        char c = static_cast<char>(wire[i] >> 1);
        if (!valid_callsign_char(c))
        {
            return false;
        }
        out.push_back(c);
    }
    return true;
}

} // namespace detail

// Inverse of build_frame over payload-plus-FCS bytes. The FCS is checked
// before anything else, so any corruption reports bad_fcs rather than a
// secondary symptom.
inline frame_parse_result parse_frame(std::span<const std::uint8_t> payload_with_fcs)
{
    frame_parse_result result;

    if (payload_with_fcs.size() < min_frame_bytes)
    {
        result.error = frame_error::malformed_address_block;
        return result;
    }

    auto payload = payload_with_fcs.first(payload_with_fcs.size() - 2);
    std::uint16_t wire_fcs =
        static_cast<std::uint16_t>(payload_with_fcs[payload_with_fcs.size() - 2] |
                                   (payload_with_fcs[payload_with_fcs.size() - 1] << 8));
    if (compute_fcs(payload) != wire_fcs)
    {
        result.error = frame_error::bad_fcs;
        return result;
    }

    // Walk the address block: 7-byte entries until the extension bit,
    // at most 10 addresses (destination + source + 8 digipeaters).
    std::vector<address_field> addresses;
    std::size_t pos = 0;
    bool terminated = false;
    while (addresses.size() < 2 + max_digipeaters)
    {
        if (pos + 7 > payload.size())
        {
            break;
        }
        address_field addr;
        if (!detail::decode_callsign(payload.subspan(pos, 6), addr.callsign))
        {
            result.error = frame_error::malformed_address_block;
            return result;
        }
        std::uint8_t ssid_octet = payload[pos + 6];
        addr.ssid = (ssid_octet >> 1) & 0x0F;
        addr.is_last = ssid_octet & 0x01;
        addr.has_been_repeated = (ssid_octet & 0x80) != 0;
        addresses.push_back(std::move(addr));
        pos += 7;
        if (addresses.back().is_last)
        {
            terminated = true;
            break;
        }
    }

    if (!terminated || addresses.size() < 2 || pos + 2 > payload.size())
    {
        result.error = frame_error::malformed_address_block;
        return result;
    }

    ui_frame frame;
    frame.destination = addresses[0];
    frame.source = addresses[1];
    // bit 7 of destination/source is the command bit, not an H bit
    frame.destination.has_been_repeated = false;
    frame.source.has_been_repeated = false;
    frame.digipeaters.assign(addresses.begin() + 2, addresses.end());

    frame.control = payload[pos];
    frame.pid = payload[pos + 1];
    frame.info.assign(payload.begin() + static_cast<std::ptrdiff_t>(pos) + 2, payload.end());

    result.not_ui_control = frame.control != control_ui;
    result.frame = std::move(frame);
    return result;
}

// Convenience constructor that places the extension bit on the final
// address, as the invariants demand.
inline ui_frame make_ui_frame(address_field destination,
                              address_field source,
                              std::vector<address_field> digipeaters,
                              std::vector<std::uint8_t> info)
{
    ui_frame frame;
    destination.is_last = false;
    source.is_last = digipeaters.empty();
    for (std::size_t i = 0; i < digipeaters.size(); i++)
    {
        digipeaters[i].is_last = (i + 1 == digipeaters.size());
    }
    frame.destination = std::move(destination);
    frame.source = std::move(source);
    frame.digipeaters = std::move(digipeaters);
    frame.info = std::move(info);
    return frame;
}

} // namespace aprsmodem

#endif // APRSMODEM_AX25_HPP
