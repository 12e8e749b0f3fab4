// Copyright (c) 2026 the aprsmodem authors
//
// SPDX-License-Identifier: MIT

#ifndef APRSMODEM_ERRORS_HPP
#define APRSMODEM_ERRORS_HPP

#include <stdexcept>
#include <string>

namespace aprsmodem {

// Base class for every error thrown by this library.
class modem_error : public std::runtime_error
{
public:
    using std::runtime_error::runtime_error;
};

// Callsign is empty, longer than 6 characters, or contains a character
// outside upper-case A-Z / 0-9.
class invalid_callsign : public modem_error
{
public:
    using modem_error::modem_error;
};

// SSID outside the 4-bit range 0-15.
class invalid_ssid : public modem_error
{
public:
    using modem_error::modem_error;
};

class too_many_digipeaters : public modem_error
{
public:
    using modem_error::modem_error;
};

// Information field empty or longer than 256 bytes.
class info_field_size : public modem_error
{
public:
    using modem_error::modem_error;
};

class config_error : public modem_error
{
public:
    using modem_error::modem_error;
};

// Six consecutive ones inside a frame body: flag leakage or corruption.
class stuffing_violation : public modem_error
{
public:
    using modem_error::modem_error;
};

// No two distinct tone peaks above the noise floor.
class insufficient_signal : public modem_error
{
public:
    using modem_error::modem_error;
};

class io_error : public modem_error
{
public:
    using modem_error::modem_error;
};

class unsupported_format : public modem_error
{
public:
    using modem_error::modem_error;
};

class corrupt_header : public modem_error
{
public:
    using modem_error::modem_error;
};

} // namespace aprsmodem

#endif // APRSMODEM_ERRORS_HPP
