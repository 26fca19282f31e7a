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

#include "dstc/config.hpp"

#include "dstc/error.hpp"

#include <boost/property_tree/ini_parser.hpp>
#include <boost/property_tree/ptree.hpp>

#include <cmath>
#include <fstream>
#include <map>
#include <set>
#include <sstream>

namespace dstc::config {

namespace pt = boost::property_tree;

namespace {

const std::map<std::string, std::set<std::string>>& known_keys() {
    static const std::map<std::string, std::set<std::string>> keys{
        {"scenario", {"tx_channels", "tx_groups", "rx_channels", "rx_groups", "states", "block"}},
        {"dimming", {"level", "alpha", "columns", "chromaticity"}},
        {"experiment",
         {"mode", "snr_grid_db", "alpha_grid", "alpha_snr_db", "symbols", "trials", "seed",
          "receivers", "channel_model", "noiseless", "audit_symbols"}},
        {"constellation", {"points", "labels"}},
        {"check", {"channel", "duplicate_h_column"}},
    };
    return keys;
}

std::vector<std::string> split(const std::string& text, char sep) {
    std::vector<std::string> out;
    std::string item;
    std::istringstream is(text);
    while (std::getline(is, item, sep)) out.push_back(item);
    return out;
}

std::vector<std::string> words(const std::string& text) {
    std::vector<std::string> out;
    std::istringstream is(text);
    for (std::string w; is >> w;) out.push_back(w);
    return out;
}

double to_double(const std::string& key, const std::string& text) {
    try {
        std::size_t used = 0;
        const double v = std::stod(text, &used);
        if (used != text.size()) throw std::invalid_argument(text);
        return v;
    } catch (const std::exception&) {
        throw ConfigError("'" + key + "': not a number: '" + text + "'");
    }
}

long long to_integer(const std::string& key, const std::string& text) {
    try {
        std::size_t used = 0;
        const long long v = std::stoll(text, &used);
        if (used != text.size()) throw std::invalid_argument(text);
        return v;
    } catch (const std::exception&) {
        throw ConfigError("'" + key + "': not an integer: '" + text + "'");
    }
}

std::vector<double> parse_grid(const std::string& key, const std::string& text) {
    std::vector<double> out;
    for (const auto& w : words(text)) {
        const auto parts = split(w, ':');
        if (parts.size() == 1) {
            out.push_back(to_double(key, w));
        } else if (parts.size() == 3) {
            const double start = to_double(key, parts[0]);
            const double step = to_double(key, parts[1]);
            const double stop = to_double(key, parts[2]);
            if (!(step > 0)) throw ConfigError("'" + key + "': range step must be positive");
            const auto count = static_cast<long long>(std::floor((stop - start) / step + 1e-9));
            for (long long i = 0; i <= count; ++i) out.push_back(start + step * i);
        } else {
            throw ConfigError("'" + key + "': bad grid entry '" + w + "'");
        }
    }
    if (out.empty()) throw ConfigError("'" + key + "' is empty");
    return out;
}

std::vector<std::vector<double>> parse_rows(const std::string& key, const std::string& text) {
    std::vector<std::vector<double>> rows;
    for (const auto& row : split(text, ';')) {
        const auto ws = words(row);
        if (ws.empty()) continue;
        std::vector<double> r;
        for (const auto& w : ws) r.push_back(to_double(key, w));
        rows.push_back(std::move(r));
    }
    return rows;
}

bool to_bool(const std::string& key, const std::string& text) {
    if (text == "true" || text == "1" || text == "yes") return true;
    if (text == "false" || text == "0" || text == "no") return false;
    throw ConfigError("'" + key + "': expected true/false, got '" + text + "'");
}

int to_int(const std::string& key, const std::string& text) {
    return static_cast<int>(to_integer(key, text));
}

}  // namespace

std::string to_string(SimulationMode mode) {
    switch (mode) {
    case SimulationMode::ber: return "ber";
    case SimulationMode::alpha: return "alpha";
    case SimulationMode::both: return "both";
    }
    return "?";
}

RunConfig parse_config(std::istream& in) {
    // read_ini only understands whole-line comments; drop trailing '#' notes.
    std::stringstream cleaned;
    for (std::string line; std::getline(in, line);) {
        const auto hash = line.find('#');
        if (hash != std::string::npos) line.erase(hash);
        cleaned << line << '\n';
    }
    pt::ptree tree;
    try {
        pt::read_ini(cleaned, tree);
    } catch (const pt::ini_parser_error& e) {
        throw ConfigError(std::string("config syntax: ") + e.what());
    }

    for (const auto& [section, body] : tree) {
        const auto it = known_keys().find(section);
        if (it == known_keys().end()) throw ConfigError("unknown section [" + section + "]");
        if (body.empty() && !body.data().empty())
            throw ConfigError("key '" + section + "' must live inside a section");
        for (const auto& [key, value] : body)
            if (!it->second.count(key))
                throw ConfigError("unknown key '" + key + "' in [" + section + "]");
    }

    RunConfig rc;
    auto& ex = rc.experiment;
    auto& sc = ex.scenario;
    auto get = [&](const std::string& path) { return tree.get_optional<std::string>(path); };

    if (auto v = get("scenario.tx_channels")) sc.tx_channels = to_int("tx_channels", *v);
    if (auto v = get("scenario.tx_groups")) sc.tx_groups = to_int("tx_groups", *v);
    if (auto v = get("scenario.rx_channels")) sc.rx_channels = to_int("rx_channels", *v);
    if (auto v = get("scenario.rx_groups")) sc.rx_groups = to_int("rx_groups", *v);
    if (auto v = get("scenario.states")) sc.states = to_int("states", *v);
    if (auto v = get("scenario.block")) sc.block = to_int("block", *v);

    if (auto v = get("dimming.level")) sc.level = to_double("level", *v);
    if (auto v = get("dimming.alpha")) sc.alpha = to_double("alpha", *v);
    if (auto v = get("dimming.columns"))
        for (const auto& w : words(*v)) sc.columns.push_back(to_int("columns", w));
    if (auto v = get("dimming.chromaticity")) {
        for (const auto& row : parse_rows("chromaticity", *v)) {
            if (row.size() != 2) throw ConfigError("'chromaticity': each row needs x and y");
            ex.chromaticity.channels.push_back({row[0], row[1]});
        }
    }

    if (auto v = get("experiment.mode")) {
        if (*v == "ber") rc.mode = SimulationMode::ber;
        else if (*v == "alpha") rc.mode = SimulationMode::alpha;
        else if (*v == "both") rc.mode = SimulationMode::both;
        else throw ConfigError("'mode': expected ber, alpha or both");
    }
    if (auto v = get("experiment.snr_grid_db")) ex.snr_grid_db = parse_grid("snr_grid_db", *v);
    if (auto v = get("experiment.alpha_grid")) ex.alpha_grid = parse_grid("alpha_grid", *v);
    if (auto v = get("experiment.alpha_snr_db")) ex.alpha_snr_db = to_double("alpha_snr_db", *v);
    if (auto v = get("experiment.symbols")) ex.n_symbols_total = to_integer("symbols", *v);
    if (auto v = get("experiment.trials")) ex.n_trials = to_int("trials", *v);
    if (auto v = get("experiment.seed"))
        ex.base_seed = static_cast<std::uint64_t>(to_integer("seed", *v));
    if (auto v = get("experiment.receivers")) {
        ex.receivers.clear();
        for (const auto& w : words(*v)) ex.receivers.push_back(receivers::parse_receiver(w));
    }
    if (auto v = get("experiment.channel_model"))
        ex.channel_model = channel::parse_channel_model(*v);
    if (auto v = get("experiment.noiseless")) ex.noiseless = to_bool("noiseless", *v);
    if (auto v = get("experiment.audit_symbols"))
        rc.audit_symbols = to_integer("audit_symbols", *v);

    if (auto v = get("constellation.points")) {
        const auto rows = parse_rows("points", *v);
        std::vector<Eigen::VectorXd> points;
        for (const auto& r : rows) points.push_back(Eigen::Map<const Eigen::VectorXd>(r.data(), r.size()));
        if (points.size() != 4) throw ConfigError("'points': 4-CSK needs exactly 4 points");
        ex.constellation.channels = static_cast<int>(points.front().size());
        ex.constellation.points = points;
        if (auto l = get("constellation.labels")) {
            const auto labels = words(*l);
            if (labels.size() != 4) throw ConfigError("'labels': need one 2-bit label per point");
            std::vector<Eigen::VectorXd> ordered(4);
            std::set<int> seen;
            for (std::size_t i = 0; i < 4; ++i) {
                const auto& lab = labels[i];
                if (lab.size() != 2 || (lab[0] != '0' && lab[0] != '1') ||
                    (lab[1] != '0' && lab[1] != '1'))
                    throw ConfigError("'labels': '" + lab + "' is not a 2-bit label");
                const int idx = (lab[0] - '0') * 2 + (lab[1] - '0');
                if (!seen.insert(idx).second) throw ConfigError("'labels': duplicate label " + lab);
                ordered[idx] = points[i];
            }
            ex.constellation.points = ordered;
        }
        ex.constellation.validate();
        if (ex.constellation.channels != sc.tx_channels)
            throw ConfigError("constellation points must have K_T entries");
    } else if (get("constellation.labels")) {
        throw ConfigError("'labels' requires 'points'");
    }

    if (auto v = get("check.channel")) {
        if (*v == "identity") rc.check.identity_channel = true;
        else if (*v == "gaussian" || *v == "diagonal") ex.channel_model = channel::parse_channel_model(*v);
        else throw ConfigError("[check] channel: expected gaussian, diagonal or identity");
    }
    if (auto v = get("check.duplicate_h_column"))
        rc.check.duplicate_column = to_int("duplicate_h_column", *v);

    ex.validate();
    return rc;
}

RunConfig load_config(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ConfigError("cannot open config file '" + path + "'");
    return parse_config(in);
}

std::string reference_config() {
    return R"(# Annotated configuration (QLED 2x2, K = 12).
[scenario]
tx_channels = 4        # K_T, color channels per transmit group (3 or 4)
tx_groups = 2          # L_T, transmit LED groups
rx_channels = 4        # K_R, photodetectors per receive group
rx_groups = 2          # L_R, receive groups
states = 12            # K, dimming states (Hadamard order)
block = 100            # N, rows per block; row 1 is the known training row

[dimming]
level = 0.5            # P_m, target normalized dimming level
alpha = 0.4            # variation amplitude, <= min(P_m, 1 - P_m)
# columns = 2 3 4 5 6 7 8 9            # 1-based Hadamard columns (default 2..n_tx+1)
# chromaticity = 0.70 0.29; 0.30 0.60; 0.15 0.06; 0.40 0.50

[experiment]
mode = ber             # ber | alpha | both
snr_grid_db = 0:6:36   # list or start:step:stop
alpha_grid = 0.1 0.2 0.3 0.4 0.5
alpha_snr_db = 20
symbols = 10000        # symbol rows per point (multiple of block)
trials = 0             # minimum channel draws per point
seed = 1
receivers = ZF VLC-KRF plain-CSK
channel_model = gaussian   # gaussian | diagonal
noiseless = false
audit_symbols = 10000

# [constellation]
# points = 1 0 0 0; 0 1 0 0; 0 0 1 0; 0 0 0 1
# labels = 00 01 10 11

# [check]
# channel = identity           # gaussian | diagonal | identity
# duplicate_h_column = 2       # overwrite this (1-based) column of H with column 1
)";
}

}  // namespace dstc::config
