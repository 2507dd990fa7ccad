// Copyright 2026 The hefv Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <stdexcept>
#include <string>

namespace hefv {

enum class Errc {
  invalid_modulus,
  parameter_mismatch,
  invalid_parameter,
  infeasible_request,
  message_too_large,
  unrelinearised_operand,
  nothing_to_relinearise,
  length_mismatch,
  empty_input,
  out_of_range,
  randomness,
  corrupt_data,
  io,
  parse,
  unbound_identifier,
};

const char* errc_name(Errc code);

// Every failure surfaced by the library is an Error carrying one of the codes
// above; callers that need to branch (the CLI's exit codes) switch on code().
class Error : public std::runtime_error {
 public:
  Error(Errc code, const std::string& what) : std::runtime_error(what), code_(code) {}

  Errc code() const noexcept { return code_; }

 private:
  Errc code_;
};

// Parse failures additionally carry the 0-based character offset.
class ParseError : public Error {
 public:
  ParseError(std::size_t position, const std::string& what)
      : Error(Errc::parse, what + " at position " + std::to_string(position)), position_(position) {}

  std::size_t position() const noexcept { return position_; }

 private:
  std::size_t position_;
};

}  // namespace hefv
