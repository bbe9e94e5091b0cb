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

#include "saft/config.hpp"

#include <cmath>
#include <fstream>
#include <limits>
#include <sstream>

#include "saft/error.hpp"

namespace saft {

namespace {

std::string trim(const std::string& s) {
  std::size_t a = s.find_first_not_of(" \t\r\n");
  std::size_t b = s.find_last_not_of(" \t\r\n");
  if (a == std::string::npos) return "";
  return s.substr(a, b - a + 1);
}

}  // namespace

RunConfig::RunConfig() {
  data_ = {
      {"tiling",
       {
           {"dimension", "1"},
           {"matrix", "2"},
           {"digits", "0 1"},
           {"depth", "12"},
           {"point_budget", "4194304"},
           {"probe_point", ""},
       }},
      {"function",
       {
           {"builtin", "takagi"},
           {"mu", "0.70710678118654752"},
           {"multipliers", ""},
           {"profile", "tent"},
           {"depth", "-1"},
           {"level", "14"},
           {"window", "0"},  // 0 = auto: one tile for series, 2 per axis otherwise
           {"frequency", "1"},
           {"amplitude", "1"},
           {"csv_path", ""},
       }},
      {"analysis",
       {
           {"s", "0.5"},
           {"p", "inf"},
           {"q", "inf"},
           {"k", "-1"},
           {"lmax", "-1"},
           {"margin", "6"},
           {"level_lo", "4"},
           {"level_hi", "-1"},
           {"routes", "osc diff sigma"},
           {"points", "0.3333333333333333"},
           {"s_prime", "0"},
           {"variants", "theorem1"},
           {"generator", "haar"},
           {"sf_order", "1"},
       }},
      {"output",
       {
           {"dir", "out"},
           {"formats", "json csv"},
       }},
  };
}

std::string* RunConfig::find(const std::string& section, const std::string& name) {
  for (auto& [sec, entries] : data_)
    if (sec == section)
      for (auto& [key, value] : entries)
        if (key == name) return &value;
  return nullptr;
}

const std::string* RunConfig::find(const std::string& section, const std::string& name) const {
  return const_cast<RunConfig*>(this)->find(section, name);
}

void RunConfig::load_text(const std::string& text) {
  std::istringstream is(text);
  std::string line, section;
  int lineno = 0;
  while (std::getline(is, line)) {
    ++lineno;
    const std::size_t hash = line.find('#');
    if (hash != std::string::npos) line.erase(hash);
    line = trim(line);
    if (line.empty()) continue;
    if (line.front() == '[') {
      if (line.back() != ']')
        raise(Errc::ConfigParse, "line " + std::to_string(lineno) + ": malformed section header");
      section = trim(line.substr(1, line.size() - 2));
      continue;
    }
    const std::size_t eq = line.find('=');
    if (eq == std::string::npos)
      raise(Errc::ConfigParse, "line " + std::to_string(lineno) + ": expected key = value");
    const std::string key = trim(line.substr(0, eq));
    const std::string value = trim(line.substr(eq + 1));
    if (section.empty())
      raise(Errc::ConfigParse, "line " + std::to_string(lineno) + ": key outside a section");
    std::string* slot = find(section, key);
    if (!slot) raise(Errc::UnknownKey, "unknown key '" + section + "." + key + "'");
    *slot = value;
  }
}

void RunConfig::load_file(const std::string& path) {
  std::ifstream is(path, std::ios::binary);
  if (!is) raise(Errc::IoError, "cannot open config '" + path + "'");
  std::ostringstream ss;
  ss << is.rdbuf();
  load_text(ss.str());
}

void RunConfig::set(const std::string& key, const std::string& value) {
  const std::size_t dot = key.find('.');
  if (dot == std::string::npos) raise(Errc::UnknownKey, "expected section.key, got '" + key + "'");
  std::string* slot = find(key.substr(0, dot), key.substr(dot + 1));
  if (!slot) raise(Errc::UnknownKey, "unknown key '" + key + "'");
  *slot = value;
}

const std::string& RunConfig::get(const std::string& section, const std::string& name) const {
  const std::string* slot = find(section, name);
  if (!slot) raise(Errc::UnknownKey, "unknown key '" + section + "." + name + "'");
  return *slot;
}

double RunConfig::get_real(const std::string& section, const std::string& name) const {
  const std::string& v = get(section, name);
  if (v == "inf" || v == "infinity") return std::numeric_limits<double>::infinity();
  try {
    return std::stod(v);
  } catch (...) {
    raise(Errc::ConfigParse, section + "." + name + ": not a number: '" + v + "'");
  }
}

int RunConfig::get_int(const std::string& section, const std::string& name) const {
  const std::string& v = get(section, name);
  try {
    return std::stoi(v);
  } catch (...) {
    raise(Errc::ConfigParse, section + "." + name + ": not an integer: '" + v + "'");
  }
}

std::vector<std::string> RunConfig::get_list(const std::string& section,
                                             const std::string& name) const {
  std::vector<std::string> out;
  std::istringstream is(get(section, name));
  std::string tok;
  while (is >> tok) {
    // Allow comma separators as well.
    std::stringstream cs(tok);
    std::string part;
    while (std::getline(cs, part, ','))
      if (!part.empty()) out.push_back(part);
  }
  return out;
}

std::vector<double> RunConfig::get_reals(const std::string& section,
                                         const std::string& name) const {
  std::vector<double> out;
  for (const auto& tok : get_list(section, name)) {
    if (tok == "inf" || tok == "infinity") {
      out.push_back(std::numeric_limits<double>::infinity());
      continue;
    }
    try {
      out.push_back(std::stod(tok));
    } catch (...) {
      raise(Errc::ConfigParse, section + "." + name + ": not a number: '" + tok + "'");
    }
  }
  return out;
}

std::vector<std::int64_t> RunConfig::get_ints(const std::string& section,
                                              const std::string& name) const {
  std::vector<std::int64_t> out;
  for (const auto& tok : get_list(section, name)) {
    try {
      out.push_back(std::stoll(tok));
    } catch (...) {
      raise(Errc::ConfigParse, section + "." + name + ": not an integer: '" + tok + "'");
    }
  }
  return out;
}

std::string RunConfig::to_text() const {
  std::string out;
  for (const auto& [sec, entries] : data_) {
    out += "[" + sec + "]\n";
    for (const auto& [key, value] : entries) out += key + " = " + value + "\n";
    out += "\n";
  }
  return out;
}

}  // namespace saft
