// Copyright 2026 The swaptest Authors
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
#include <vector>

#include <json.hpp>

#include "swaptest/calibration.h"
#include "swaptest/components.h"
#include "swaptest/encoding.h"
#include "swaptest/kernel.h"
#include "swaptest/measurement.h"

namespace swaptest {

/// Shortest text that round-trips the double ("%.17g").
std::string format_double(double x);

/// {"dimension": d, "amplitudes": [[re, im], ...]}
nlohmann::json state_to_json(const QuditState& s);
QuditState state_from_json(const nlohmann::json& j);

/// {"dimension": d, "unitary": bool, "entries": [[[re, im], ...], ...]} (row-major).
nlohmann::json matrix_to_json(const TransferMatrix& m);
TransferMatrix matrix_from_json(const nlohmann::json& j);

nlohmann::json fit_to_json(const PhasePowerFit& fit);

/// CSV with header `power_W,counts`; `#` comment lines allowed.
SweepData read_sweep_csv(const std::string& path, int output_port);
SweepData parse_sweep_csv(const std::string& text, const std::string& source, int output_port);

/// Rows `delta_theta,delta_phi` (radians), optional header, `#` comments.
std::vector<QubitParams> read_dataset(const std::string& path);
std::vector<QubitParams> parse_dataset(const std::string& text, const std::string& source);

/// One labelled record per experiment unit.
struct LabelledCounts {
    std::size_t unit = 0;
    CountRecord record;
};

/// Columns run,output_index,raw_count,corrected_count,seed plus a leading unit column.
std::string counts_csv(const std::vector<LabelledCounts>& records, const DetectorModel& det);

std::string gram_csv(const GramMatrix& g);
nlohmann::json gram_json(const GramMatrix& g);
/// Fixed 6-decimal table of clamped values for the terminal.
std::string gram_table(const GramMatrix& g);

/// Writes to `path.tmp` then renames over `path`.
void write_atomic(const std::string& path, const std::string& content);
std::string read_text_file(const std::string& path);

}  // namespace swaptest
