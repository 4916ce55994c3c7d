// Copyright 2026 The qcrit Authors
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

#include "qcrit/csv.h"

#include <algorithm>
#include <charconv>
#include <cmath>

namespace qcrit {

std::string format_double(double v) {
    if (std::isnan(v)) {
        return "nan";
    }
    if (std::isinf(v)) {
        return v > 0 ? "inf" : "-inf";
    }
    char buf[64];
    auto res = std::to_chars(buf, buf + sizeof(buf), v);
    return std::string(buf, res.ptr);
}

std::string csv_escape(std::string_view field) {
    if (field.find_first_of(",\"\r\n") == std::string_view::npos) {
        return std::string(field);
    }
    std::string out = "\"";
    for (char c : field) {
        if (c == '"') {
            out += '"';
        }
        out += c;
    }
    out += '"';
    return out;
}

void CsvWriter::row(const std::vector<std::string> &cells) {
    for (size_t i = 0; i < cells.size(); i++) {
        if (i) {
            out_ << ',';
        }
        out_ << csv_escape(cells[i]);
    }
    out_ << '\n';
}

std::string markdown_table(const std::vector<std::string> &header, const std::vector<std::vector<std::string>> &rows) {
    std::vector<size_t> width(header.size(), 3);
    for (size_t c = 0; c < header.size(); c++) {
        width[c] = std::max(width[c], header[c].size());
        for (const auto &r : rows) {
            if (c < r.size()) {
                width[c] = std::max(width[c], r[c].size());
            }
        }
    }
    auto emit = [&](std::ostringstream &ss, const std::vector<std::string> &cells) {
        ss << '|';
        for (size_t c = 0; c < header.size(); c++) {
            std::string cell = c < cells.size() ? cells[c] : "";
            ss << ' ' << cell << std::string(width[c] - cell.size(), ' ') << " |";
        }
        ss << '\n';
    };
    std::ostringstream ss;
    emit(ss, header);
    ss << '|';
    for (size_t c = 0; c < header.size(); c++) {
        ss << ' ' << std::string(width[c], '-') << " |";
    }
    ss << '\n';
    for (const auto &r : rows) {
        emit(ss, r);
    }
    return ss.str();
}

}  // namespace qcrit
