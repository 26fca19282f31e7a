/*
   Copyright 2026 The dstc-vlc Authors

   Licensed under the Apache License, Version 2.0 (the "License");
   you may not use this file except in compliance with the License.
   You may obtain a copy of the License at

       http://www.apache.org/licenses/LICENSE-2.0

   Unless required by applicable law or agreed to in writing, software
   distributed under the License is distributed on an "AS IS" BASIS,
   WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
   See the License for the specific language governing permissions and
   limitations under the License.
*/

#pragma once

#include "dstc/experiments.hpp"

#include <iosfwd>
#include <string>

namespace dstc::config {

enum class SimulationMode { ber, alpha, both };

/// Overrides used by the `check` subcommand to build degenerate channels.
struct CheckOptions {
    bool identity_channel = false;  // H = I (needs n_rx = n_tx)
    int duplicate_column = 0;       // 1-based column replaced by column 1; 0 = off
};

struct RunConfig {
    experiments::ExperimentConfig experiment;
    SimulationMode mode = SimulationMode::ber;
    long long audit_symbols = 10000;
    CheckOptions check;
};

/// Parses the INI-style configuration:
///
///   [scenario]     tx_channels tx_groups rx_channels rx_groups states block
///   [dimming]      level alpha columns chromaticity
///   [experiment]   mode snr_grid_db alpha_grid alpha_snr_db symbols trials seed
///                  receivers channel_model noiseless audit_symbols
///   [constellation] points labels
///   [check]        channel duplicate_h_column
///
/// Lists are whitespace separated; grids also accept start:step:stop.
/// Matrices (points, chromaticity) separate rows with ';'. Unknown keys
/// are rejected.
RunConfig parse_config(std::istream& in);
RunConfig load_config(const std::string& path);

/// Annotated example configuration, printed by `--help`.
std::string reference_config();

std::string to_string(SimulationMode mode);

}  // namespace dstc::config
