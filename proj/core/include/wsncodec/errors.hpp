#pragma once

#include <stdexcept>
#include <string>

namespace wsncodec {

// Decoder found data it cannot interpret (corrupt stream, unknown codeword,
// inconsistent pair halves).  Callers that own a resynchronization strategy
// may catch this and skip ahead.
struct DecodeError : std::runtime_error {
    explicit DecodeError(const std::string& what) : std::runtime_error(what) {}
};

// Variable-length decoder lost codeword alignment.
struct DesyncError : DecodeError {
    explicit DesyncError(const std::string& what) : DecodeError(what) {}
};

// Malformed external input (trace file, histogram CSV, config file).
// Messages carry the offending line where one exists.
struct ParseError : std::runtime_error {
    explicit ParseError(const std::string& what) : std::runtime_error(what) {}
};

// Semantically invalid experiment configuration.
struct ConfigError : std::runtime_error {
    explicit ConfigError(const std::string& what) : std::runtime_error(what) {}
};

}  // namespace wsncodec
