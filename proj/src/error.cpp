// Copyright 2026 The hefv Authors
// SPDX-License-Identifier: Apache-2.0

#include "hefv/error.hpp"

namespace hefv {

const char* errc_name(Errc code) {
  switch (code) {
    case Errc::invalid_modulus: return "invalid-modulus";
    case Errc::parameter_mismatch: return "parameter-mismatch";
    case Errc::invalid_parameter: return "invalid-parameter";
    case Errc::infeasible_request: return "infeasible-request";
    case Errc::message_too_large: return "message-too-large";
    case Errc::unrelinearised_operand: return "unrelinearised-operand";
    case Errc::nothing_to_relinearise: return "nothing-to-relinearise";
    case Errc::length_mismatch: return "length-mismatch";
    case Errc::empty_input: return "empty-input";
    case Errc::out_of_range: return "out-of-range";
    case Errc::randomness: return "randomness";
    case Errc::corrupt_data: return "corrupt-data";
    case Errc::io: return "io";
    case Errc::parse: return "parse";
    case Errc::unbound_identifier: return "unbound-identifier";
  }
  return "unknown";
}

}  // namespace hefv
