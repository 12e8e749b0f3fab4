// Copyright (c) 2026 the aprsmodem authors
//
// SPDX-License-Identifier: MIT
//
// Umbrella header for the whole library.

#ifndef APRSMODEM_APRSMODEM_HPP
#define APRSMODEM_APRSMODEM_HPP

#include "afsk.hpp"
#include "ax25.hpp"
#include "channel.hpp"
#include "errors.hpp"
#include "fft.hpp"
#include "hdlc.hpp"
#include "modem.hpp"
#include "tnc2.hpp"
#include "wav.hpp"

#include <string_view>

namespace aprsmodem {

inline constexpr std::string_view version = "0.1.0";

} // namespace aprsmodem

#endif // APRSMODEM_APRSMODEM_HPP
