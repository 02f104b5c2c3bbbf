// Copyright 2026 The aqcsim authors
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

namespace aqc {

// 17 significant digits, '.' decimal separator, locale-independent.
// Round-trips any double bit-faithfully.
std::string format_double(double x);

// LF line endings regardless of platform.
class CsvWriter {
 public:
  explicit CsvWriter(std::vector<std::string> header);
  void row(const std::vector<std::string>& cells);
  void row_numeric(const std::vector<double>& cells);
  const std::string& payload() const { return payload_; }

 private:
  std::string payload_;
  std::size_t columns_;
};

// write-temp-rename so partially written files are never observed
void atomic_write(const std::string& path, const std::string& payload);

std::string read_file(const std::string& path);
bool file_exists(const std::string& path);

}  // namespace aqc
