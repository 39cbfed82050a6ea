#pragma once

#include <cstdint>
#include <limits>
#include <stdexcept>
#include <string>

namespace gconn {

// Vertex ids are 32-bit so that every parent slot is one atomic word.
using vid_t = std::uint32_t;
using eid_t = std::uint64_t;

inline constexpr vid_t kMaxVertices = vid_t{1} << 31;

// Marks a labels slot that has not been claimed yet (incremental mode).
inline constexpr vid_t kUninitialized = std::numeric_limits<vid_t>::max();

struct Error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Invalid parameters or algorithm combinations, raised before any work starts.
struct ConfigError : Error {
  using Error::Error;
};

// Unparsable input text; the message carries the line number.
struct ParseError : Error {
  ParseError(const std::string& what, std::size_t line)
      : Error("line " + std::to_string(line) + ": " + what), line_(line) {}
  std::size_t line() const noexcept { return line_; }

 private:
  std::size_t line_;
};

// Structurally invalid data such as an endpoint outside [0, n).
struct MalformedInput : Error {
  using Error::Error;
};

}  // namespace gconn
