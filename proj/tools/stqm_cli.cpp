// Copyright 2026 The stqm Authors
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

#include <CLI11.hpp>

#include <cstdio>
#include <fstream>
#include <iostream>
#include <map>
#include <string>
#include <utility>
#include <vector>

#include "stqm/stqm.h"

namespace {

constexpr int kExitFail = 1;
constexpr int kExitUsage = 2;

std::string trim(const std::string& s) {
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string::npos) return "";
  const auto e = s.find_last_not_of(" \t\r");
  return s.substr(b, e - b + 1);
}

// Flat "key = value" lines; '#' starts a comment.
bool read_config_file(const std::string& path, std::vector<std::pair<std::string, std::string>>& out,
                      std::string& err) {
  std::ifstream in(path);
  if (!in) {
    err = "cannot open config file '" + path + "'";
    return false;
  }
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    const auto hash = line.find('#');
    if (hash != std::string::npos) line.erase(hash);
    line = trim(line);
    if (line.empty()) continue;
    const auto eq = line.find('=');
    if (eq == std::string::npos) {
      err = path + ":" + std::to_string(lineno) + ": expected key = value";
      return false;
    }
    std::string key = trim(line.substr(0, eq));
    if (key.rfind("--", 0) == 0) key.erase(0, 2);
    out.emplace_back(key, trim(line.substr(eq + 1)));
  }
  return true;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Spacetime quantum mechanics verification runner"};
  app.require_subcommand(1);

  app.add_subcommand("list", "List the available suites");

  auto* run = app.add_subcommand("run", "Run one verification suite and emit CSV");
  std::string config_path, output_path;
  std::map<std::string, std::string> flags;
  std::vector<std::string> tolerances;
  run->add_option("--config", config_path, "Flat key = value file; flags override it");
  run->add_option("--output,-o", output_path, "CSV destination (default: standard output)");
  struct Flag {
    const char* name;
    const char* help;
  };
  const std::vector<Flag> keyed{
      {"suite", "verify-boson, verify-fermion, wick, states, fig3, dirac, matsubara, composite"},
      {"n-slices", "Number of time slices N"},
      {"n-sites", "Number of sites L per slice"},
      {"local-dim", "Local qudit dimension d"},
      {"epsilon", "Time step"},
      {"hamiltonian", "Preset (zfield:x, xyfield:x, hopping:x, hubbard:x, random-quadratic:s, random-quartic:s) "
                      "or monomial list"},
      {"seed", "Random seed"},
      {"cases", "Number of random cases"},
      {"panel", "fig3 panel: a, b, c, all, scaling"},
      {"samples", "fig3 panel c sample count"},
      {"grid", "fig3 grid points per axis"},
      {"lambda", "fig3 field strength for panels a and b"},
      {"hbar", "fig3 entropy weight"},
  };
  std::map<std::string, CLI::Option*> opts;
  for (const auto& f : keyed) opts[f.name] = run->add_option(std::string("--") + f.name, flags[f.name], f.help);
  run->add_option("--tolerance", tolerances, "Tolerance override family=value (repeatable)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : kExitUsage;
  }

  if (app.got_subcommand("list")) {
    for (const char* s : {"verify-boson", "verify-fermion", "wick", "states", "fig3", "dirac", "matsubara",
                          "composite"})
      std::cout << s << '\n';
    return 0;
  }

  std::vector<std::pair<std::string, std::string>> settings;
  std::string err;
  if (!config_path.empty() && !read_config_file(config_path, settings, err)) {
    std::cerr << "error: " << err << '\n';
    return kExitUsage;
  }
  for (const auto& f : keyed)
    if (opts[f.name]->count() > 0) settings.emplace_back(f.name, flags[f.name]);
  for (const auto& t : tolerances) {
    const auto eq = t.find('=');
    if (eq == std::string::npos) {
      std::cerr << "error: --tolerance expects family=value\n";
      return kExitUsage;
    }
    settings.emplace_back("tolerance." + t.substr(0, eq), t.substr(eq + 1));
  }

  stqm_config* cfg = nullptr;
  if (stqm_config_new(&cfg) != STQM_OK) {
    std::cerr << "error: " << stqm_last_error() << '\n';
    return kExitFail;
  }
  for (const auto& [k, v] : settings) {
    if (stqm_config_set(cfg, k.c_str(), v.c_str()) != STQM_OK) {
      std::cerr << "error: " << stqm_last_error() << '\n';
      stqm_config_free(cfg);
      return kExitUsage;
    }
  }

  stqm_report* report = nullptr;
  const stqm_status st = stqm_run(cfg, &report);
  stqm_config_free(cfg);
  if (st != STQM_OK) {
    std::cerr << "error: " << stqm_last_error() << '\n';
    return st == STQM_ERR_CONFIG ? kExitUsage : kExitFail;
  }

  if (output_path.empty()) {
    std::cout << stqm_report_csv(report);
  } else {
    std::ofstream out(output_path, std::ios::binary);
    out << stqm_report_csv(report);
    if (!out) {
      std::cerr << "error: cannot write '" << output_path << "'\n";
      stqm_report_free(report);
      return kExitFail;
    }
  }
  const std::size_t passed = stqm_report_passed(report), total = stqm_report_total(report);
  stqm_report_free(report);
  std::cout << "PASS " << passed << '/' << total << '\n';
  return passed == total ? 0 : kExitFail;
}
