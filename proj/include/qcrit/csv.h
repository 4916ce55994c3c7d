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

#ifndef _QCRIT_CSV_H
#define _QCRIT_CSV_H

#include <sstream>
#include <string>
#include <string_view>
#include <vector>

namespace qcrit {

/// Shortest decimal text that parses back to exactly `v`.
std::string format_double(double v);

/// RFC 4180 style writer: fields containing a comma, quote, CR or LF are
/// quoted with embedded quotes doubled; lines end in "\n".
class CsvWriter {
   public:
    void row(const std::vector<std::string> &cells);
    std::string str() const {
        return out_.str();
    }

   private:
    std::ostringstream out_;
};

std::string csv_escape(std::string_view field);

/// Markdown pipe table with every column padded to its widest cell.
std::string markdown_table(const std::vector<std::string> &header, const std::vector<std::vector<std::string>> &rows);

}  // namespace qcrit

#endif
