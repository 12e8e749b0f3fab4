// Copyright (c) 2026 the aprsmodem authors
//
// SPDX-License-Identifier: MIT
//
// TNC2 monitor text format: SOURCE-ssid>DEST-ssid,PATH1,PATH2*:info
// A trailing '*' marks a digipeater that has repeated the packet; SSID 0
// is printed without a suffix.

#ifndef APRSMODEM_TNC2_HPP
#define APRSMODEM_TNC2_HPP

#include "ax25.hpp"
#include "errors.hpp"

#include <string>
#include <string_view>

namespace aprsmodem {

inline constexpr std::string_view default_destination = "APTCM0";

namespace detail {

inline address_field parse_tnc2_address(std::string_view text,
                                        std::string_view field_name,
                                        bool allow_mark)
{
    address_field addr;

    if (!text.empty() && text.back() == '*')
    {
        if (!allow_mark)
        {
            throw modem_error(std::string(field_name) + " address '" + std::string(text) +
                              "' may not carry a '*' marker");
        }
        addr.has_been_repeated = true;
        text.remove_suffix(1);
    }

    auto dash = text.find('-');
    if (dash != std::string_view::npos)
    {
        std::string_view ssid = text.substr(dash + 1);
        if (ssid.empty() || ssid.size() > 2 ||
            (ssid.size() == 2 && ssid[0] == '0'))
        {
            throw invalid_ssid(std::string(field_name) + " ssid '" + std::string(ssid) +
                               "' is not a number in 0-15");
        }
        int value = 0;
        for (char c : ssid)
        {
            if (c < '0' || c > '9')
            {
                throw invalid_ssid(std::string(field_name) + " ssid '" + std::string(ssid) +
                                   "' is not a number in 0-15");
            }
            value = value * 10 + (c - '0');
        }
        if (value > 15)
        {
            throw invalid_ssid(std::string(field_name) + " ssid " + std::to_string(value) +
                               " outside 0-15");
        }
        addr.ssid = value;
        text = text.substr(0, dash);
    }

    addr.callsign = std::string(text);
    try
    {
        validate_address(addr);
    }
    catch (const invalid_callsign& e)
    {
        throw invalid_callsign(std::string(field_name) + ": " + e.what());
    }
    return addr;
}

} // namespace detail

// Parses packet text. The destination may be left empty, in which case
// the default tocall is used. Throws on malformed text, naming the
// offending field.
inline ui_frame parse_tnc2(std::string_view text,
                           std::string_view fallback_destination = default_destination)
{
    auto gt = text.find('>');
    if (gt == std::string_view::npos)
    {
        throw modem_error("packet text has no '>' separating source and destination");
    }
    auto colon = text.find(':', gt);
    if (colon == std::string_view::npos)
    {
        throw modem_error("packet text has no ':' separating header and info");
    }

    address_field source = detail::parse_tnc2_address(text.substr(0, gt), "source", false);

    std::string_view header = text.substr(gt + 1, colon - gt - 1);
    std::string_view dest_text = header;
    std::string_view path_text;
    auto comma = header.find(',');
    if (comma != std::string_view::npos)
    {
        dest_text = header.substr(0, comma);
        path_text = header.substr(comma + 1);
    }
    if (dest_text.empty())
    {
        dest_text = fallback_destination;
    }
    address_field destination = detail::parse_tnc2_address(dest_text, "destination", false);

    std::vector<address_field> digipeaters;
    while (!path_text.empty())
    {
        auto next = path_text.find(',');
        std::string_view entry = path_text.substr(0, next);
        digipeaters.push_back(detail::parse_tnc2_address(entry, "path", true));
        if (next == std::string_view::npos)
        {
            break;
        }
        path_text.remove_prefix(next + 1);
    }

    std::string_view info = text.substr(colon + 1);
    return make_ui_frame(std::move(destination), std::move(source), std::move(digipeaters),
                         std::vector<std::uint8_t>(info.begin(), info.end()));
}

inline std::string format_tnc2_address(const address_field& addr)
{
    std::string out = addr.callsign;
    if (addr.ssid != 0)
    {
        out += '-';
        out += std::to_string(addr.ssid);
    }
    if (addr.has_been_repeated)
    {
        out += '*';
    }
    return out;
}

inline std::string format_tnc2(const ui_frame& frame)
{
    std::string out = format_tnc2_address(frame.source);
    out += '>';
    out += format_tnc2_address(frame.destination);
    for (const auto& digi : frame.digipeaters)
    {
        out += ',';
        out += format_tnc2_address(digi);
    }
    out += ':';
    out.append(frame.info.begin(), frame.info.end());
    return out;
}

namespace detail {

inline void append_hex_byte(std::string& out, std::uint8_t b)
{
    static constexpr char digits[] = "0123456789ABCDEF";
    out += digits[b >> 4];
    out += digits[b & 0x0F];
}

} // namespace detail

// Upper-case hex bytes, space separated, FCS last in transmission order.
inline std::string format_frame_hex(const frame_bytes& frame)
{
    std::string out;
    out.reserve(3 * (frame.payload.size() + 2));
    for (std::uint8_t b : frame.payload)
    {
        detail::append_hex_byte(out, b);
        out += ' ';
    }
    detail::append_hex_byte(out, frame.fcs[0]);
    out += ' ';
    detail::append_hex_byte(out, frame.fcs[1]);
    return out;
}

inline std::string format_hex(std::span<const std::uint8_t> bytes)
{
    std::string out;
    out.reserve(3 * bytes.size());
    for (std::size_t i = 0; i < bytes.size(); i++)
    {
        if (i > 0)
        {
            out += ' ';
        }
        detail::append_hex_byte(out, bytes[i]);
    }
    return out;
}

} // namespace aprsmodem

#endif // APRSMODEM_TNC2_HPP
