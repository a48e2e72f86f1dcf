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

#include "swaptest/io.h"

#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "swaptest/errors.h"

namespace swaptest {

namespace {

std::string_view trim(std::string_view s) {
    while (!s.empty() && (s.front() == ' ' || s.front() == '\t' || s.front() == '\r')) s.remove_prefix(1);
    while (!s.empty() && (s.back() == ' ' || s.back() == '\t' || s.back() == '\r')) s.remove_suffix(1);
    return s;
}

// Splits CSV text into numeric rows of `width` fields. A first row that is
// not numeric is treated as the header.
std::vector<std::vector<double>> numeric_rows(const std::string& text, const std::string& source, std::size_t width) {
    std::vector<std::vector<double>> rows;
    std::istringstream in(text);
    std::string line;
    int line_no = 0;
    bool header_allowed = true;
    while (std::getline(in, line)) {
        ++line_no;
        std::string_view body = line;
        if (const auto hash = body.find('#'); hash != std::string_view::npos) body = body.substr(0, hash);
        body = trim(body);
        if (body.empty()) continue;
        std::vector<double> row;
        bool numeric = true;
        std::size_t start = 0;
        while (true) {
            const std::size_t comma = body.find(',', start);
            const std::string field(trim(body.substr(start, comma == std::string_view::npos ? body.size() - start
                                                                                          : comma - start)));
            try {
                std::size_t used = 0;
                row.push_back(std::stod(field, &used));
                if (used != field.size()) numeric = false;
            } catch (const std::exception&) {
                numeric = false;
            }
            if (comma == std::string_view::npos) break;
            start = comma + 1;
        }
        const std::string where = source + ":" + std::to_string(line_no) + ": ";
        if (!numeric) {
            if (header_allowed) {
                header_allowed = false;
                continue;
            }
            throw ConfigError(where + "non-numeric field");
        }
        header_allowed = false;
        if (row.size() != width) {
            throw ConfigError(where + "expected " + std::to_string(width) + " fields, got " +
                              std::to_string(row.size()));
        }
        for (double v : row) {
            if (!std::isfinite(v)) throw ConfigError(where + "non-finite value");
        }
        rows.push_back(std::move(row));
    }
    return rows;
}

nlohmann::json complex_pair(cdouble z) { return nlohmann::json::array({z.real(), z.imag()}); }

cdouble pair_to_complex(const nlohmann::json& j) {
    if (!j.is_array() || j.size() != 2) throw ConfigError("complex value must be a [re, im] pair");
    return {j[0].get<double>(), j[1].get<double>()};
}

}  // namespace

std::string format_double(double x) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.17g", x);
    return buf;
}

nlohmann::json state_to_json(const QuditState& s) {
    nlohmann::json amps = nlohmann::json::array();
    for (Eigen::Index i = 0; i < s.amplitudes.size(); ++i) amps.push_back(complex_pair(s.amplitudes[i]));
    return {{"dimension", s.dimension()}, {"normalized", s.normalized}, {"amplitudes", amps}};
}

QuditState state_from_json(const nlohmann::json& j) {
    try {
        const int d = j.at("dimension").get<int>();
        const auto& amps = j.at("amplitudes");
        if (static_cast<int>(amps.size()) != d) throw ConfigError("state dimension does not match amplitude count");
        QuditState s;
        s.amplitudes.resize(d);
        for (int i = 0; i < d; ++i) s.amplitudes[i] = pair_to_complex(amps[i]);
        s.normalized = j.value("normalized", true);
        return s;
    } catch (const nlohmann::json::exception& e) {
        throw ConfigError(std::string("bad state JSON: ") + e.what());
    }
}

nlohmann::json matrix_to_json(const TransferMatrix& m) {
    nlohmann::json rows = nlohmann::json::array();
    for (Eigen::Index r = 0; r < m.entries.rows(); ++r) {
        nlohmann::json row = nlohmann::json::array();
        for (Eigen::Index c = 0; c < m.entries.cols(); ++c) row.push_back(complex_pair(m.entries(r, c)));
        rows.push_back(row);
    }
    return {{"dimension", m.entries.rows()}, {"unitary", m.unitary}, {"entries", rows}};
}

TransferMatrix matrix_from_json(const nlohmann::json& j) {
    try {
        const int d = j.at("dimension").get<int>();
        const auto& rows = j.at("entries");
        if (static_cast<int>(rows.size()) != d) throw ConfigError("matrix dimension does not match row count");
        TransferMatrix m;
        m.entries.resize(d, d);
        for (int r = 0; r < d; ++r) {
            if (static_cast<int>(rows[r].size()) != d) throw ConfigError("matrix row has wrong length");
            for (int c = 0; c < d; ++c) m.entries(r, c) = pair_to_complex(rows[r][c]);
        }
        m.unitary = j.value("unitary", true);
        return m;
    } catch (const nlohmann::json::exception& e) {
        throw ConfigError(std::string("bad matrix JSON: ") + e.what());
    }
}

nlohmann::json fit_to_json(const PhasePowerFit& fit) {
    nlohmann::json cov = nlohmann::json::array();
    for (int r = 0; r < 4; ++r) {
        nlohmann::json row = nlohmann::json::array();
        for (int c = 0; c < 4; ++c) row.push_back(fit.covariance(r, c));
        cov.push_back(row);
    }
    return {{"a", fit.a},
            {"b", fit.b},
            {"c", fit.c},
            {"d", fit.d},
            {"b_sigma", fit.b_sigma()},
            {"d_sigma", fit.d_sigma()},
            {"output_port", fit.output_port},
            {"residual_rms", fit.residual_rms},
            {"iterations", fit.iterations},
            {"covariance_order", {"a", "b", "c", "d"}},
            {"covariance", cov}};
}

SweepData parse_sweep_csv(const std::string& text, const std::string& source, int output_port) {
    SweepData s;
    s.output_port = output_port;
    for (const auto& row : numeric_rows(text, source, 2)) {
        s.powers.push_back(row[0]);
        s.counts.push_back(row[1]);
    }
    return s;
}

SweepData read_sweep_csv(const std::string& path, int output_port) {
    return parse_sweep_csv(read_text_file(path), path, output_port);
}

std::vector<QubitParams> parse_dataset(const std::string& text, const std::string& source) {
    std::vector<QubitParams> out;
    for (const auto& row : numeric_rows(text, source, 2)) out.push_back({row[0], row[1]});
    if (out.empty()) throw ConfigError(source + ": dataset has no rows");
    return out;
}

std::vector<QubitParams> read_dataset(const std::string& path) { return parse_dataset(read_text_file(path), path); }

std::string counts_csv(const std::vector<LabelledCounts>& records, const DetectorModel& det) {
    std::ostringstream out;
    out << "unit,run,output_index,raw_count,corrected_count,seed\n";
    for (const auto& lc : records) {
        const CorrectedCounts c = correct_counts(lc.record, det);
        for (int i = 0; i < 8; ++i) {
            const auto [run, output] = lc.record.slot_label(i);
            out << lc.unit << ',' << run << ',' << output << ',' << lc.record.counts[i] << ','
                << format_double(c.per_slot[i]) << ',' << lc.record.seed << '\n';
        }
    }
    return out.str();
}

std::string gram_csv(const GramMatrix& g) {
    std::ostringstream out;
    out << "i,j,raw,clamped,std_error,ci_low,ci_high\n";
    for (int i = 0; i < g.size; ++i) {
        for (int j = 0; j < g.size; ++j) {
            const KernelEstimate& k = g.at(i, j);
            out << i << ',' << j << ',' << format_double(k.raw) << ',' << format_double(k.clamped) << ','
                << format_double(k.std_error) << ',' << (k.ci_low ? format_double(*k.ci_low) : "") << ','
                << (k.ci_high ? format_double(*k.ci_high) : "") << '\n';
        }
    }
    return out.str();
}

nlohmann::json gram_json(const GramMatrix& g) {
    nlohmann::json values = nlohmann::json::array();
    nlohmann::json lows = nlohmann::json::array();
    nlohmann::json highs = nlohmann::json::array();
    for (int i = 0; i < g.size; ++i) {
        nlohmann::json row = nlohmann::json::array();
        nlohmann::json lo = nlohmann::json::array();
        nlohmann::json hi = nlohmann::json::array();
        for (int j = 0; j < g.size; ++j) {
            const KernelEstimate& k = g.at(i, j);
            row.push_back(k.clamped);
            lo.push_back(k.ci_low ? nlohmann::json(*k.ci_low) : nlohmann::json(nullptr));
            hi.push_back(k.ci_high ? nlohmann::json(*k.ci_high) : nlohmann::json(nullptr));
        }
        values.push_back(row);
        lows.push_back(lo);
        highs.push_back(hi);
    }
    return {{"size", g.size}, {"values", values}, {"ci_low", lows}, {"ci_high", highs}};
}

std::string gram_table(const GramMatrix& g) {
    std::string out;
    char buf[32];
    for (int i = 0; i < g.size; ++i) {
        for (int j = 0; j < g.size; ++j) {
            std::snprintf(buf, sizeof buf, j == 0 ? "%.6f" : " %.6f", g.at(i, j).clamped);
            out += buf;
        }
        out += '\n';
    }
    return out;
}

void write_atomic(const std::string& path, const std::string& content) {
    const std::filesystem::path target(path);
    if (target.has_parent_path()) {
        std::error_code ec;
        std::filesystem::create_directories(target.parent_path(), ec);
        if (ec) throw IoError("cannot create directory " + target.parent_path().string() + ": " + ec.message());
    }
    const std::string tmp = path + ".tmp";
    {
        std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
        if (!out) throw IoError("cannot open " + tmp + " for writing");
        out << content;
        out.flush();
        if (!out) throw IoError("write to " + tmp + " failed");
    }
    std::error_code ec;
    std::filesystem::rename(tmp, target, ec);
    if (ec) throw IoError("cannot rename " + tmp + " to " + path + ": " + ec.message());
}

std::string read_text_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw ConfigError("cannot open '" + path + "'");
    std::ostringstream buf;
    buf << in.rdbuf();
    return buf.str();
}

}  // namespace swaptest
