// Copyright (c) 2026 the aprsmodem authors
//
// SPDX-License-Identifier: MIT
//
// Command-line front end: encode packets to WAV, decode WAV to packets,
// inspect frame bytes, and measure decode success over a simulated
// channel.
//
// Exit codes: 0 success, 1 error, 2 no frames decoded (or lossy roundtrip).

#include <aprsmodem/aprsmodem.hpp>

#include <CLI11.hpp>
#include <json.hpp>

#include <cstdint>
#include <iomanip>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

namespace {

constexpr int exit_ok = 0;
constexpr int exit_error = 1;
constexpr int exit_no_frames = 2;

struct modem_flags
{
    int rate = 48000;
    double baud = 1200.0;
    double mark_hz = 1200.0;
    double space_hz = 2200.0;
    int preamble_flags = 25;
    int postamble_flags = 2;

    void attach(CLI::App& cmd)
    {
        cmd.add_option("--rate", rate, "Sample rate in Hz")->capture_default_str();
        cmd.add_option("--baud", baud, "Symbol rate")->capture_default_str();
        cmd.add_option("--mark-hz", mark_hz, "Mark (logic 1) tone")->capture_default_str();
        cmd.add_option("--space-hz", space_hz, "Space (logic 0) tone")->capture_default_str();
        cmd.add_option("--preamble-flags", preamble_flags, "Flags before the frame")
            ->capture_default_str();
        cmd.add_option("--postamble-flags", postamble_flags, "Flags after the frame")
            ->capture_default_str();
    }

    aprsmodem::modem_config modem() const
    {
        aprsmodem::modem_config cfg;
        cfg.sample_rate = rate;
        cfg.baud = baud;
        cfg.mark_hz = mark_hz;
        cfg.space_hz = space_hz;
        return cfg;
    }

    aprsmodem::framing_config framing() const
    {
        return { preamble_flags, postamble_flags };
    }
};

std::vector<std::uint8_t> parse_hex_bytes(const std::string& text)
{
    auto nibble = [](char c) -> int {
        if (c >= '0' && c <= '9') return c - '0';
        if (c >= 'a' && c <= 'f') return c - 'a' + 10;
        if (c >= 'A' && c <= 'F') return c - 'A' + 10;
        return -1;
    };
    if (text.size() % 2 != 0)
    {
        throw aprsmodem::modem_error("--info-hex needs an even number of hex digits");
    }
    std::vector<std::uint8_t> out;
    out.reserve(text.size() / 2);
    for (std::size_t i = 0; i < text.size(); i += 2)
    {
        int hi = nibble(text[i]);
        int lo = nibble(text[i + 1]);
        if (hi < 0 || lo < 0)
        {
            throw aprsmodem::modem_error("--info-hex contains a non-hex character");
        }
        out.push_back(static_cast<std::uint8_t>((hi << 4) | lo));
    }
    return out;
}

aprsmodem::ui_frame packet_from_args(const std::string& text, const std::string& info_hex)
{
    aprsmodem::ui_frame frame = aprsmodem::parse_tnc2(text);
    if (!info_hex.empty())
    {
        if (!frame.info.empty())
        {
            throw aprsmodem::modem_error(
                "--info-hex conflicts with info text after ':' in the packet");
        }
        frame.info = parse_hex_bytes(info_hex);
    }
    else
    {
        for (std::uint8_t b : frame.info)
        {
            if (b < 0x20 || b > 0x7E)
            {
                throw aprsmodem::modem_error(
                    "info field: non-ASCII byte in packet text, use --info-hex");
            }
        }
    }
    return frame;
}

nlohmann::json frame_to_json(const aprsmodem::decoded_frame& decoded)
{
    nlohmann::json j;
    j["source"] = aprsmodem::format_tnc2_address(decoded.frame.source);
    j["destination"] = aprsmodem::format_tnc2_address(decoded.frame.destination);
    auto path = nlohmann::json::array();
    for (const auto& digi : decoded.frame.digipeaters)
    {
        path.push_back(aprsmodem::format_tnc2_address(digi));
    }
    j["path"] = std::move(path);
    j["control"] = decoded.frame.control;
    j["pid"] = decoded.frame.pid;
    j["info"] = std::string(decoded.frame.info.begin(), decoded.frame.info.end());
    std::string info_hex;
    for (std::uint8_t b : decoded.frame.info)
    {
        static constexpr char digits[] = "0123456789ABCDEF";
        info_hex += digits[b >> 4];
        info_hex += digits[b & 0x0F];
    }
    j["info_hex"] = std::move(info_hex);
    const auto& bytes = decoded.bytes;
    static constexpr char digits[] = "0123456789ABCDEF";
    std::string fcs;
    for (std::size_t i = bytes.size() - 2; i < bytes.size(); i++)
    {
        fcs += digits[bytes[i] >> 4];
        fcs += digits[bytes[i] & 0x0F];
    }
    j["fcs"] = std::move(fcs);
    return j;
}

int run_encode(const std::string& packet_text, const std::string& out_path,
               const std::string& info_hex, const modem_flags& flags)
{
    aprsmodem::ui_frame frame = packet_from_args(packet_text, info_hex);
    aprsmodem::frame_bytes bytes = aprsmodem::build_frame(frame);
    aprsmodem::audio_buffer audio =
        aprsmodem::encode_packet(frame, flags.modem(), flags.framing());
    aprsmodem::write_wav(audio, out_path);

    std::cout << "frame: " << bytes.payload.size() + 2 << " bytes (" << bytes.payload.size()
              << " payload + 2 FCS)\n";
    std::cout << "fcs: " << aprsmodem::format_hex(bytes.fcs) << "\n";
    std::cout << "audio: " << std::fixed << std::setprecision(3) << audio.duration_seconds()
              << " s (" << audio.samples.size() << " samples at " << audio.sample_rate
              << " Hz)\n";
    return exit_ok;
}

int run_decode(const std::string& in_path, const std::string& format, const modem_flags& flags)
{
    aprsmodem::audio_buffer audio = aprsmodem::read_wav(in_path);
    aprsmodem::modem_config cfg = flags.modem();
    cfg.sample_rate = audio.sample_rate;  // the file knows its own rate

    auto decoded = aprsmodem::decode_audio(audio, cfg);
    for (const auto& d : decoded)
    {
        if (d.not_ui_control)
        {
            std::cerr << "warning: control 0x" << aprsmodem::format_hex({ &d.frame.control, 1 })
                      << " is not a UI frame\n";
        }
        if (format == "hex")
        {
            std::cout << aprsmodem::format_hex(d.bytes) << "\n";
        }
        else if (format == "json")
        {
            std::cout << frame_to_json(d).dump(-1, ' ', false,
                                               nlohmann::json::error_handler_t::replace)
                      << "\n";
        }
        else
        {
            std::cout << aprsmodem::format_tnc2(d.frame) << "\n";
        }
    }
    return decoded.empty() ? exit_no_frames : exit_ok;
}

int run_framedump(const std::string& packet_text, const std::string& info_hex,
                  bool show_bits, const modem_flags& flags)
{
    aprsmodem::ui_frame frame = packet_from_args(packet_text, info_hex);
    aprsmodem::frame_bytes bytes = aprsmodem::build_frame(frame);

    auto address_row = [&](const std::string& label, std::size_t index,
                           const aprsmodem::address_field& addr) {
        auto span = std::span<const std::uint8_t>(bytes.payload).subspan(index * 7, 7);
        std::cout << std::left << std::setw(13) << label << std::setw(11)
                  << aprsmodem::format_tnc2_address(addr)
                  << aprsmodem::format_hex(span.first(6)) << "  "
                  << aprsmodem::format_hex(span.last(1)) << "\n";
    };

    address_row("destination", 0, frame.destination);
    address_row("source", 1, frame.source);
    for (std::size_t i = 0; i < frame.digipeaters.size(); i++)
    {
        address_row("digipeater " + std::to_string(i + 1), 2 + i, frame.digipeaters[i]);
    }

    const std::size_t control_offset = 7 * (2 + frame.digipeaters.size());
    std::cout << std::left << std::setw(13) << "control"
              << aprsmodem::format_hex({ &bytes.payload[control_offset], 1 }) << "\n";
    std::cout << std::left << std::setw(13) << "pid"
              << aprsmodem::format_hex({ &bytes.payload[control_offset + 1], 1 }) << "\n";
    std::cout << std::left << std::setw(13) << "info"
              << aprsmodem::format_hex(
                     std::span<const std::uint8_t>(bytes.payload).subspan(control_offset + 2))
              << "\n";
    std::cout << std::left << std::setw(13) << "fcs" << aprsmodem::format_hex(bytes.fcs)
              << "\n";
    std::cout << std::left << std::setw(13) << "payload" << bytes.payload.size() << " bytes\n";

    const auto logical = aprsmodem::bytes_to_bits_lsb_first(bytes.serialize());
    const auto stuffed = aprsmodem::stuff_bits(logical);
    const auto framed = aprsmodem::add_flags(stuffed, flags.framing());
    std::cout << std::left << std::setw(13) << "stuffed bits"
              << stuffed.size() - logical.size() << " inserted\n";
    std::cout << std::left << std::setw(13) << "on-air bits" << framed.size() << " total ("
              << flags.preamble_flags << " + " << flags.postamble_flags << " flags)\n";
    if (show_bits)
    {
        std::cout << aprsmodem::format_bit_dump(framed) << "\n";
    }
    return exit_ok;
}

int run_roundtrip(const std::string& packet_text, const std::string& info_hex, int trials,
                  const aprsmodem::channel_spec& spec, const modem_flags& flags)
{
    aprsmodem::ui_frame frame = packet_from_args(packet_text, info_hex);
    const double rate =
        aprsmodem::frame_success_rate(frame, spec, trials, flags.modem(), flags.framing());
    std::cout << std::fixed << std::setprecision(3) << rate << "\n";
    return rate == 1.0 ? exit_ok : exit_no_frames;
}

} // namespace

int main(int argc, char** argv)
{
    CLI::App app{ "AFSK-1200 Bell 202 software modem for AX.25 UI frames" };
    app.require_subcommand(1);

    std::string packet_text;
    std::string wav_path;
    std::string info_hex;
    std::string format = "tnc2";
    bool show_bits = false;
    int trials = 100;
    std::optional<double> snr_db;
    double gain = 1.0;
    double dc_offset = 0.0;
    double skew_ppm = 0.0;
    std::optional<std::uint64_t> seed;

    modem_flags encode_flags;
    modem_flags decode_flags;
    modem_flags dump_flags;
    modem_flags roundtrip_flags;

    CLI::App* encode = app.add_subcommand("encode", "Encode packet text into a WAV file");
    encode->add_option("packet", packet_text, "Packet in TNC2 form: SRC>DEST,PATH:info")
        ->required();
    encode->add_option("output", wav_path, "Output WAV path")->required();
    encode->add_option("--info-hex", info_hex, "Info field as hex bytes (for non-ASCII data)");
    encode_flags.attach(*encode);

    CLI::App* decode = app.add_subcommand("decode", "Decode every frame found in a WAV file");
    decode->add_option("input", wav_path, "Input WAV path")->required();
    decode->add_option("--format", format, "Output format: tnc2, hex or json")
        ->check(CLI::IsMember({ "tnc2", "hex", "json" }))
        ->capture_default_str();
    decode_flags.attach(*decode);

    CLI::App* framedump = app.add_subcommand("framedump", "Show the encoded frame field by field");
    framedump->add_option("packet", packet_text, "Packet in TNC2 form")->required();
    framedump->add_option("--info-hex", info_hex, "Info field as hex bytes");
    framedump->add_flag("--bits", show_bits, "Also dump the on-air bit stream");
    dump_flags.attach(*framedump);

    CLI::App* roundtrip =
        app.add_subcommand("roundtrip", "Measure decode success over a simulated channel");
    roundtrip->add_option("packet", packet_text, "Packet in TNC2 form")->required();
    roundtrip->add_option("--info-hex", info_hex, "Info field as hex bytes");
    roundtrip->add_option("--trials", trials, "Number of trials")->capture_default_str();
    roundtrip->add_option("--snr-db", snr_db, "Add white Gaussian noise at this SNR");
    roundtrip->add_option("--gain", gain, "Linear gain")->capture_default_str();
    roundtrip->add_option("--dc-offset", dc_offset, "Additive DC offset")->capture_default_str();
    roundtrip->add_option("--skew-ppm", skew_ppm, "Sample-rate skew in ppm")
        ->capture_default_str();
    roundtrip->add_option("--seed", seed, "Channel noise seed (required with --snr-db)");
    roundtrip_flags.attach(*roundtrip);

    CLI11_PARSE(app, argc, argv);

    try
    {
        if (encode->parsed())
        {
            return run_encode(packet_text, wav_path, info_hex, encode_flags);
        }
        if (decode->parsed())
        {
            return run_decode(wav_path, format, decode_flags);
        }
        if (framedump->parsed())
        {
            return run_framedump(packet_text, info_hex, show_bits, dump_flags);
        }
        if (roundtrip->parsed())
        {
            if (snr_db && !seed)
            {
                throw aprsmodem::modem_error("--snr-db requires an explicit --seed");
            }
            aprsmodem::channel_spec spec;
            spec.snr_db = snr_db;
            spec.gain = gain;
            spec.dc_offset = dc_offset;
            spec.rate_skew_ppm = skew_ppm;
            spec.seed = seed.value_or(0);
            if (trials < 1)
            {
                throw aprsmodem::modem_error("--trials must be at least 1");
            }
            return run_roundtrip(packet_text, info_hex, trials, spec, roundtrip_flags);
        }
    }
    catch (const aprsmodem::modem_error& e)
    {
        std::cerr << "error: " << e.what() << "\n";
        return exit_error;
    }
    catch (const std::exception& e)
    {
        std::cerr << "error: " << e.what() << "\n";
        return exit_error;
    }
    return exit_error;
}
