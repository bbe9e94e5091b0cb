// Copyright 2026 The saft authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

#include <map>
#include <string>
#include <vector>

namespace saft {

/// Flat key-value run configuration with section headers. Every key has a
/// default; unknown keys are rejected so runs stay reproducible.
class RunConfig {
 public:
  RunConfig();  // defaults

  void load_text(const std::string& text);
  void load_file(const std::string& path);
  /// key as "section.name".
  void set(const std::string& key, const std::string& value);

  const std::string& get(const std::string& section, const std::string& name) const;
  double get_real(const std::string& section, const std::string& name) const;  // "inf" allowed
  int get_int(const std::string& section, const std::string& name) const;
  std::vector<double> get_reals(const std::string& section, const std::string& name) const;
  std::vector<std::int64_t> get_ints(const std::string& section, const std::string& name) const;
  std::vector<std::string> get_list(const std::string& section, const std::string& name) const;

  std::string to_text() const;

 private:
  // section -> key -> value, insertion-ordered for printing
  std::vector<std::pair<std::string, std::vector<std::pair<std::string, std::string>>>> data_;
  std::string* find(const std::string& section, const std::string& name);
  const std::string* find(const std::string& section, const std::string& name) const;
};

}  // namespace saft
