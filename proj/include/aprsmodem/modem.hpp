// Copyright (c) 2026 the aprsmodem authors
//
// SPDX-License-Identifier: MIT
//
// End-to-end pipeline glue: packet -> audio and audio -> packets.

#ifndef APRSMODEM_MODEM_HPP
#define APRSMODEM_MODEM_HPP

#include "afsk.hpp"
#include "ax25.hpp"
#include "hdlc.hpp"

#include <vector>

namespace aprsmodem {

inline framed_bits frame_to_bits(const frame_bytes& frame, const framing_config& framing = {})
{
    return add_flags(stuff_bits(bytes_to_bits_lsb_first(frame.serialize())), framing);
}

inline audio_buffer encode_packet(const ui_frame& frame,
                                  const modem_config& modem = {},
                                  const framing_config& framing = {},
                                  const frame_options& options = {})
{
    return modulate(nrzi_encode(frame_to_bits(build_frame(frame, options), framing)), modem);
}

struct decoded_frame
{
    ui_frame frame;
    bool not_ui_control = false;
    std::vector<std::uint8_t> bytes;  // payload plus FCS as received
};

// Every FCS-valid frame found in the audio, in order of appearance.
inline std::vector<decoded_frame> decode_audio(const audio_buffer& audio,
                                               const modem_config& modem = {})
{
    std::vector<decoded_frame> out;
    const nrzi_bits levels = demodulate(audio, modem);
    const framed_bits framed = nrzi_decode(levels);
    for (auto& candidate : find_frames(framed))
    {
        frame_parse_result parsed = parse_frame(candidate);
        if (parsed.frame)
        {
            out.push_back({ std::move(*parsed.frame), parsed.not_ui_control,
                            std::move(candidate) });
        }
    }
    return out;
}

} // namespace aprsmodem

#endif // APRSMODEM_MODEM_HPP
