// Copyright 2026 The Beamsel Authors. All Rights Reserved.
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

#pragma once

#include <string>

#include "beamsel/harness.hpp"

namespace beamsel {

/// Parses the flat `key = value` experiment format. Blank lines and lines
/// starting with '#' are ignored; lists are comma separated. Keys are the
/// SystemConfig and ExperimentSpec field names. Unknown keys, repeated keys
/// and malformed values throw std::invalid_argument with the line number.
///
/// d, N_Q and T_s follow f_c, K and B unless given explicitly.
ExperimentSpec parse_spec_text(const std::string& text);

/// Reads and parses a spec file; throws std::runtime_error if unreadable.
ExperimentSpec load_spec_file(const std::string& path);

}  // namespace beamsel
