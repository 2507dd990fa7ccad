// Copyright 2026 The hefv Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <cstddef>
#include <exception>
#include <functional>

namespace hefv {

enum class Exec {
  serial,    // reference path: one index at a time, in order
  parallel,  // OpenMP worksharing over independent indices
};

// Worker cap from HEFV_THREADS (unset or 0: every available core).
int worker_count();

// Runs body(i) for i in [0, count). Indices must be independent. Under
// Exec::parallel the first exception thrown by any index is rethrown after
// all workers finish.
void for_each_index(std::size_t count, Exec exec, const std::function<void(std::size_t)>& body);

}  // namespace hefv
