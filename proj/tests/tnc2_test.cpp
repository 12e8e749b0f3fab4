// Copyright (c) 2026 the aprsmodem authors
//
// SPDX-License-Identifier: MIT

#include <aprsmodem/tnc2.hpp>

#include <gtest/gtest.h>

using namespace aprsmodem;

TEST(tnc2, parse_full_packet)
{
    ui_frame frame = parse_tnc2("YG3DQQ>APTCM0,YBSAT,WIDE2-2:Pengujian APRS TCM3105");
    EXPECT_EQ(frame.source.callsign, "YG3DQQ");
    EXPECT_EQ(frame.source.ssid, 0);
    EXPECT_EQ(frame.destination.callsign, "APTCM0");
    ASSERT_EQ(frame.digipeaters.size(), 2u);
    EXPECT_EQ(frame.digipeaters[0].callsign, "YBSAT");
    EXPECT_EQ(frame.digipeaters[1].callsign, "WIDE2");
    EXPECT_EQ(frame.digipeaters[1].ssid, 2);
    EXPECT_TRUE(frame.digipeaters[1].is_last);
    EXPECT_FALSE(frame.digipeaters[0].is_last);
    EXPECT_EQ(std::string(frame.info.begin(), frame.info.end()), "Pengujian APRS TCM3105");
}

TEST(tnc2, format_round_trip)
{
    const std::string text = "N0CALL-10>APRS,WIDE1-1*,WIDE2-2:Hello, APRS!";
    EXPECT_EQ(format_tnc2(parse_tnc2(text)), text);
}

TEST(tnc2, repeated_marker)
{
    ui_frame frame = parse_tnc2("A1>B2,DIGI-3*:x");
    ASSERT_EQ(frame.digipeaters.size(), 1u);
    EXPECT_TRUE(frame.digipeaters[0].has_been_repeated);
    EXPECT_EQ(frame.digipeaters[0].ssid, 3);
    EXPECT_EQ(format_tnc2(frame), "A1>B2,DIGI-3*:x");
}

TEST(tnc2, ssid_zero_has_no_suffix)
{
    EXPECT_EQ(format_tnc2(parse_tnc2("CALL-0>DEST:x")), "CALL>DEST:x");
}

TEST(tnc2, default_destination_when_empty)
{
    ui_frame frame = parse_tnc2("YG3DQQ>:test");
    EXPECT_EQ(frame.destination.callsign, "APTCM0");

    frame = parse_tnc2("YG3DQQ>,WIDE2-2:test");
    EXPECT_EQ(frame.destination.callsign, "APTCM0");
    ASSERT_EQ(frame.digipeaters.size(), 1u);
}

TEST(tnc2, rejects_malformed_text)
{
    EXPECT_THROW(parse_tnc2("NOSEPARATOR"), modem_error);
    EXPECT_THROW(parse_tnc2("A>B"), modem_error);            // no ':'
    EXPECT_THROW(parse_tnc2("lower>DEST:x"), invalid_callsign);
    EXPECT_THROW(parse_tnc2("A>B,TOOLONGCALL:x"), invalid_callsign);
    EXPECT_THROW(parse_tnc2("A>B-16:x"), invalid_ssid);
    EXPECT_THROW(parse_tnc2("A>B-:x"), invalid_ssid);
    EXPECT_THROW(parse_tnc2("A>B-01:x"), invalid_ssid);
    EXPECT_THROW(parse_tnc2("A>B-1x:x"), invalid_ssid);
    EXPECT_THROW(parse_tnc2("A*>B:x"), modem_error);          // '*' only on path entries
}

TEST(tnc2, error_messages_name_the_field)
{
    try
    {
        parse_tnc2("bad>DEST:x");
        FAIL() << "expected invalid_callsign";
    }
    catch (const invalid_callsign& e)
    {
        EXPECT_NE(std::string(e.what()).find("source"), std::string::npos);
    }
}

TEST(tnc2, frame_hex_dump)
{
    frame_bytes frame = build_frame(
        parse_tnc2("YG3DQQ>APTCM0,YBSAT,WIDE2-2:Pengujian APRS TCM3105"));
    std::string hex = format_frame_hex(frame);
    EXPECT_EQ(hex.substr(0, 20), "82 A0 A8 86 9A 60 E0");
    // FCS printed last, transmission order (low octet first)
    EXPECT_EQ(hex.substr(hex.size() - 5), "24 AD");
}
