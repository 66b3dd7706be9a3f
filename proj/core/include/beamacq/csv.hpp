// SPDX-License-Identifier: Apache-2.0
//
// beamacq - beam acquisition simulator for dense millimeter-wave networks
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
// http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.
// ------------------------------------------------------------------------

#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace beamacq {

// Shortest round-trip decimal for a cell. Throws on NaN or infinity so
// tables never carry either.
std::string csv_number(double value);

struct CsvTable {
  std::vector<std::string> columns;  // unit-suffixed names, e.g. "snr_db"
  std::vector<std::vector<std::string>> rows;

  // Appends one row; the cell count must match the header.
  void add_row(std::vector<std::string> cells);
};

// Writes '#'-prefixed comment lines (the comment may span several lines),
// then the header row, then the data rows. Cells containing separators or
// quotes are quoted.
void write_csv(std::ostream& out, const CsvTable& table, const std::string& comment = "");
void write_csv_file(const std::string& path, const CsvTable& table,
                    const std::string& comment = "");

}  // namespace beamacq
