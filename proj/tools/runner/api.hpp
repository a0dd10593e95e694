// Copyright 2026 The levarray Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.


// Thin C++ conveniences over the C API: status checking and owning handles.
#pragma once

#include <memory>
#include <stdexcept>
#include <string>

#include "levarray/levarray.h"

namespace levarray::runner {

class Failure : public std::runtime_error {
 public:
  Failure(levarray_status status, const std::string& message)
      : std::runtime_error(message), status_(status) {}

  levarray_status status() const noexcept { return status_; }

 private:
  levarray_status status_;
};

inline void check(levarray_status status, const char* what) {
  if (status == LEVARRAY_OK) return;
  std::string message = std::string(what) + ": " + levarray_status_string(status);
  const std::string detail = levarray_last_error();
  if (!detail.empty()) message += " (" + detail + ")";
  throw Failure(status, message);
}

struct StateDeleter {
  void operator()(levarray_state* p) const noexcept { levarray_state_free(p); }
};
struct SweepDeleter {
  void operator()(levarray_sweep* p) const noexcept { levarray_sweep_free(p); }
};
struct CheckDeleter {
  void operator()(levarray_check* p) const noexcept { levarray_check_free(p); }
};

using StateHandle = std::unique_ptr<levarray_state, StateDeleter>;
using SweepHandle = std::unique_ptr<levarray_sweep, SweepDeleter>;
using CheckHandle = std::unique_ptr<levarray_check, CheckDeleter>;

}  // namespace levarray::runner
