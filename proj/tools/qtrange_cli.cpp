// Copyright 2026 The qtrange developers
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     https://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

// qtrange command-line front end. Talks to the library exclusively through
// the public C interface.
//
// Exit codes: 0 success, 1 domain or runtime error from the library
// (including I/O failures), 2 usage error (bad flags, malformed sweep spec,
// invalid grid contents).

#include <cctype>
#include <cerrno>
#include <climits>
#include <cmath>
#include <cstdint>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "qtrange/qtrange.h"

using ordered_json = nlohmann::ordered_json;

namespace {

// ------------------------------------------------------------------
// Output plumbing

std::string fmt_g(double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

const char* bool_str(int b) { return b ? "true" : "false"; }

int emit(const std::string& text, const std::string& path) {
  if (path.empty()) {
    std::fwrite(text.data(), 1, text.size(), stdout);
    std::fflush(stdout);
    return 0;
  }
  std::ofstream out(path, std::ios::binary);
  if (!out) {
    std::cerr << "error: cannot open output file: " << path << "\n";
    return 1;
  }
  out << text;
  out.flush();
  if (!out.good()) {
    std::cerr << "error: failed writing output file: " << path << "\n";
    return 1;
  }
  return 0;
}

int lib_fail() {
  std::cerr << "error: " << qtr_last_error_message() << "\n";
  return 1;
}

int usage_fail(const std::string& message) {
  std::cerr << "error: " << message << "\n";
  return 2;
}

// ------------------------------------------------------------------
// Grid helpers

std::vector<double> linspace(double lo, double hi, int n) {
  std::vector<double> out;
  out.reserve(static_cast<size_t>(n));
  if (n == 1) {
    out.push_back(lo);
    return out;
  }
  for (int i = 0; i < n; ++i) {
    out.push_back(lo + (hi - lo) * static_cast<double>(i) /
                           static_cast<double>(n - 1));
  }
  return out;
}

std::vector<double> logspace(double lo, double hi, int n) {
  std::vector<double> out;
  out.reserve(static_cast<size_t>(n));
  if (n == 1) {
    out.push_back(lo);
    return out;
  }
  const double llo = std::log(lo);
  const double lhi = std::log(hi);
  for (int i = 0; i < n; ++i) {
    out.push_back(std::exp(llo + (lhi - llo) * static_cast<double>(i) /
                                     static_cast<double>(n - 1)));
  }
  return out;
}

// ------------------------------------------------------------------
// Sweep spec file parser
//
// Grammar (one assignment per line, '#' starts a comment):
//   m   = 2, 4, 8
//   M   = logspace(1, 1e6, 7)
//   n_s = 0.01
//   eta = linspace(0.05, 0.95, 10)
//   n_b = 0.1, 1, 10
// Values are comma-separated numbers or a single linspace(lo, hi, n) /
// logspace(lo, hi, n) range. All five keys are required, each exactly once.

struct SweepGrids {
  std::vector<int> m;
  std::vector<long long> big_m;
  std::vector<double> n_s;
  std::vector<double> eta;
  std::vector<double> n_b;
};

std::string trim(const std::string& s) {
  size_t a = 0;
  size_t b = s.size();
  while (a < b && std::isspace(static_cast<unsigned char>(s[a]))) ++a;
  while (b > a && std::isspace(static_cast<unsigned char>(s[b - 1]))) --b;
  return s.substr(a, b - a);
}

bool parse_number(const std::string& token, double* out) {
  const std::string t = trim(token);
  if (t.empty()) return false;
  errno = 0;
  char* end = nullptr;
  const double v = std::strtod(t.c_str(), &end);
  if (end != t.c_str() + t.size() || errno == ERANGE) return false;
  if (!std::isfinite(v)) return false;
  *out = v;
  return true;
}

std::vector<std::string> split_commas(const std::string& s) {
  std::vector<std::string> out;
  std::string current;
  for (char c : s) {
    if (c == ',') {
      out.push_back(current);
      current.clear();
    } else {
      current += c;
    }
  }
  out.push_back(current);
  return out;
}

// Parses the right-hand side of one assignment into a list of doubles.
bool parse_value_list(const std::string& rhs, std::vector<double>* out,
                      std::string* error) {
  const std::string value = trim(rhs);
  for (const char* fn : {"linspace", "logspace"}) {
    const std::string prefix = std::string(fn) + "(";
    if (value.rfind(prefix, 0) != 0) continue;
    if (value.back() != ')') {
      *error = "unterminated " + std::string(fn) + "(...)";
      return false;
    }
    const std::string inner =
        value.substr(prefix.size(), value.size() - prefix.size() - 1);
    const std::vector<std::string> parts = split_commas(inner);
    double lo = 0.0;
    double hi = 0.0;
    double count = 0.0;
    if (parts.size() != 3 || !parse_number(parts[0], &lo) ||
        !parse_number(parts[1], &hi) || !parse_number(parts[2], &count)) {
      *error = std::string(fn) + " needs three numeric arguments (lo, hi, n)";
      return false;
    }
    if (count < 1.0 || count != std::floor(count) || count > 1e7) {
      *error = std::string(fn) + " point count must be an integer in [1, 1e7]";
      return false;
    }
    if (fn[1] == 'o' && (lo <= 0.0 || hi <= 0.0)) {
      *error = "logspace endpoints must be positive";
      return false;
    }
    *out = (fn[1] == 'o') ? logspace(lo, hi, static_cast<int>(count))
                          : linspace(lo, hi, static_cast<int>(count));
    return true;
  }
  std::vector<double> values;
  for (const std::string& token : split_commas(value)) {
    double v = 0.0;
    if (!parse_number(token, &v)) {
      *error = "cannot parse number '" + trim(token) + "'";
      return false;
    }
    values.push_back(v);
  }
  *out = values;
  return true;
}

bool to_int_grid(const std::vector<double>& values, const char* key,
                 std::vector<int>* out, std::string* error) {
  out->clear();
  for (double v : values) {
    if (v != std::floor(v) || v < INT_MIN || v > INT_MAX) {
      *error = std::string(key) + " values must be integers, got " + fmt_g(v);
      return false;
    }
    out->push_back(static_cast<int>(v));
  }
  return true;
}

bool to_ll_grid(const std::vector<double>& values, const char* key,
                std::vector<long long>* out, std::string* error) {
  out->clear();
  for (double v : values) {
    if (v != std::floor(v) || v < -9.2e18 || v > 9.2e18) {
      *error = std::string(key) + " values must be integers, got " + fmt_g(v);
      return false;
    }
    out->push_back(static_cast<long long>(v));
  }
  return true;
}

bool parse_sweep_spec_file(const std::string& path, SweepGrids* out,
                           std::string* error) {
  std::ifstream file(path);
  if (!file) {
    *error = "cannot read sweep spec file: " + path;
    return false;
  }
  bool seen[5] = {false, false, false, false, false};
  const char* keys[5] = {"m", "M", "n_s", "eta", "n_b"};
  std::string line;
  int line_no = 0;
  while (std::getline(file, line)) {
    ++line_no;
    const size_t hash = line.find('#');
    if (hash != std::string::npos) line = line.substr(0, hash);
    line = trim(line);
    if (line.empty()) continue;
    const size_t eq = line.find('=');
    const std::string at = "line " + std::to_string(line_no) + ": ";
    if (eq == std::string::npos) {
      *error = at + "expected 'key = values'";
      return false;
    }
    const std::string key = trim(line.substr(0, eq));
    int key_index = -1;
    for (int i = 0; i < 5; ++i) {
      if (key == keys[i]) key_index = i;
    }
    if (key_index < 0) {
      *error = at + "unknown key '" + key + "' (expected m, M, n_s, eta, n_b)";
      return false;
    }
    if (seen[key_index]) {
      *error = at + "duplicate key '" + key + "'";
      return false;
    }
    seen[key_index] = true;
    std::vector<double> values;
    std::string inner_error;
    if (!parse_value_list(line.substr(eq + 1), &values, &inner_error)) {
      *error = at + inner_error;
      return false;
    }
    switch (key_index) {
      case 0:
        if (!to_int_grid(values, "m", &out->m, &inner_error)) {
          *error = at + inner_error;
          return false;
        }
        break;
      case 1:
        if (!to_ll_grid(values, "M", &out->big_m, &inner_error)) {
          *error = at + inner_error;
          return false;
        }
        break;
      case 2:
        out->n_s = values;
        break;
      case 3:
        out->eta = values;
        break;
      case 4:
        out->n_b = values;
        break;
    }
  }
  for (int i = 0; i < 5; ++i) {
    if (!seen[i]) {
      *error = "sweep spec is missing key '" + std::string(keys[i]) + "'";
      return false;
    }
  }
  return true;
}

// ------------------------------------------------------------------
// Report serialization

ordered_json report_to_json(const qtr_bounds_report& r, bool with_vacuous) {
  ordered_json j;
  j["m"] = r.m;
  j["M"] = r.big_m;
  j["n_s"] = r.n_s;
  j["eta"] = r.eta;
  j["n_b"] = r.n_b;
  j["gamma"] = r.gamma;
  j["classical_cpf_lb"] = r.classical_cpf_lb;
  j["quantum_ub_exact"] = r.quantum_ub_exact;
  j["quantum_ub_asym"] = r.quantum_ub_asym;
  j["cn_qtr_asym"] = r.cn_qtr_asym;
  j["classical_ctr_lb"] = r.classical_ctr_lb;
  j["advantage_possible"] = (r.advantage_possible != 0);
  if (with_vacuous) j["vacuous"] = (r.vacuous != 0);
  return j;
}

void report_to_csv_row(const qtr_bounds_report& r, bool with_vacuous,
                       std::string* out) {
  *out += std::to_string(r.m);
  *out += ',';
  *out += std::to_string(r.big_m);
  for (double v : {r.n_s, r.eta, r.n_b, r.gamma, r.classical_cpf_lb,
                   r.quantum_ub_exact, r.quantum_ub_asym, r.cn_qtr_asym,
                   r.classical_ctr_lb}) {
    *out += ',';
    *out += fmt_g(v);
  }
  *out += ',';
  *out += bool_str(r.advantage_possible);
  if (with_vacuous) {
    *out += ',';
    *out += bool_str(r.vacuous);
  }
  *out += '\n';
}

const char kReportColumns[] =
    "m,M,n_s,eta,n_b,gamma,classical_cpf_lb,quantum_ub_exact,quantum_ub_asym,"
    "cn_qtr_asym,classical_ctr_lb,advantage_possible";

std::string json_text(const ordered_json& j) { return j.dump(2) + "\n"; }

// ------------------------------------------------------------------
// bounds

struct BoundsArgs {
  int m = 0;
  long long big_m = 0;
  double n_s = 0.0;
  double eta = 0.0;
  double n_b = 0.0;
  std::string format = "json";
  std::string output;
  int threads = 0;
};

int run_bounds(const BoundsArgs& a) {
  qtr_bounds_report r;
  if (qtr_compare_all(a.m, a.big_m, a.n_s, a.eta, a.n_b, &r) != QTR_OK) {
    return lib_fail();
  }
  if (a.format == "json") {
    return emit(json_text(report_to_json(r, /*with_vacuous=*/true)), a.output);
  }
  std::string text = std::string(kReportColumns) + ",vacuous\n";
  report_to_csv_row(r, /*with_vacuous=*/true, &text);
  return emit(text, a.output);
}

// ------------------------------------------------------------------
// simulate-cn

struct SimulateArgs {
  double zeta1 = 0.0;
  double zeta2 = 0.0;
  int n_hyp = 0;
  int m = 0;
  long long big_m = 0;
  double n_s = 0.0;
  double eta = 0.0;
  double n_b = 0.0;
  unsigned long long trials = 1000000;
  unsigned long long seed = 42;
  int threads = 0;
  std::string format = "json";
  std::string output;
  bool scenario_mode = false;
  double zeta = 0.0;  // scenario mode only
};

void cn_result_fields(const qtr_cn_result& r, ordered_json* j) {
  (*j)["zeta1"] = r.zeta1;
  (*j)["zeta2"] = r.zeta2;
  (*j)["hypotheses"] = r.n_hyp;
  (*j)["trials"] = r.trials;
  (*j)["seed"] = r.master_seed;
  (*j)["error_count"] = r.error_count;
  (*j)["error_rate"] = r.error_rate;
  (*j)["std_error"] = r.std_error;
  (*j)["wilson_low"] = r.wilson_low;
  (*j)["wilson_high"] = r.wilson_high;
  (*j)["analytic"] = r.analytic;
  (*j)["analytic_only"] = (r.analytic_only != 0);
}

void cn_result_csv(const qtr_cn_result& r, std::string* out) {
  *out += fmt_g(r.zeta1);
  *out += ',';
  *out += fmt_g(r.zeta2);
  *out += ',';
  *out += std::to_string(r.n_hyp);
  *out += ',';
  *out += std::to_string(r.trials);
  *out += ',';
  *out += std::to_string(r.master_seed);
  *out += ',';
  *out += std::to_string(r.error_count);
  for (double v : {r.error_rate, r.std_error, r.wilson_low, r.wilson_high,
                   r.analytic}) {
    *out += ',';
    *out += fmt_g(v);
  }
  *out += ',';
  *out += bool_str(r.analytic_only);
  *out += '\n';
}

const char kCnColumns[] =
    "zeta1,zeta2,hypotheses,trials,seed,error_count,error_rate,std_error,"
    "wilson_low,wilson_high,analytic,analytic_only";

int run_simulate(SimulateArgs& a) {
  qtr_cn_result r;
  if (a.scenario_mode) {
    if (qtr_simulate_qtr_cn(a.m, a.big_m, a.n_s, a.eta, a.n_b, a.trials,
                            a.seed, a.threads, &a.zeta, &r) != QTR_OK) {
      return lib_fail();
    }
  } else {
    if (qtr_simulate_cn(a.zeta1, a.zeta2, a.n_hyp, a.trials, a.seed, a.threads,
                        &r) != QTR_OK) {
      return lib_fail();
    }
  }
  if (a.format == "json") {
    ordered_json j;
    if (a.scenario_mode) {
      j["m"] = a.m;
      j["M"] = a.big_m;
      j["n_s"] = a.n_s;
      j["eta"] = a.eta;
      j["n_b"] = a.n_b;
      j["zeta"] = a.zeta;
    }
    cn_result_fields(r, &j);
    return emit(json_text(j), a.output);
  }
  std::string text;
  if (a.scenario_mode) {
    text += "m,M,n_s,eta,n_b,zeta,";
    text += kCnColumns;
    text += '\n';
    text += std::to_string(a.m);
    text += ',';
    text += std::to_string(a.big_m);
    for (double v : {a.n_s, a.eta, a.n_b, a.zeta}) {
      text += ',';
      text += fmt_g(v);
    }
    text += ',';
  } else {
    text += kCnColumns;
    text += '\n';
  }
  cn_result_csv(r, &text);
  return emit(text, a.output);
}

// ------------------------------------------------------------------
// sweep

struct SweepArgs {
  std::string spec_path;
  std::vector<int> m;
  std::vector<long long> big_m;
  std::vector<double> n_s;
  std::vector<double> eta;
  std::vector<double> n_b;
  unsigned long long max_rows = 0;  // 0 = library default
  std::string format = "csv";
  std::string output;
  int threads = 0;
};

int run_sweep(const SweepArgs& a) {
  qtr_sweep_result* result = nullptr;
  if (qtr_sweep(a.m.data(), static_cast<int>(a.m.size()), a.big_m.data(),
                static_cast<int>(a.big_m.size()), a.n_s.data(),
                static_cast<int>(a.n_s.size()), a.eta.data(),
                static_cast<int>(a.eta.size()), a.n_b.data(),
                static_cast<int>(a.n_b.size()), a.max_rows,
                &result) != QTR_OK) {
    return lib_fail();
  }
  unsigned long long rows = 0;
  qtr_sweep_row_count(result, &rows);
  int rc = 0;
  if (a.format == "json") {
    ordered_json table = ordered_json::array();
    for (unsigned long long i = 0; i < rows; ++i) {
      qtr_bounds_report r;
      qtr_sweep_row(result, i, &r);
      table.push_back(report_to_json(r, /*with_vacuous=*/false));
    }
    rc = emit(json_text(table), a.output);
  } else {
    std::string text = std::string(kReportColumns) + "\n";
    for (unsigned long long i = 0; i < rows; ++i) {
      qtr_bounds_report r;
      qtr_sweep_row(result, i, &r);
      report_to_csv_row(r, /*with_vacuous=*/false, &text);
    }
    rc = emit(text, a.output);
  }
  qtr_sweep_result_free(result);
  return rc;
}

// ------------------------------------------------------------------
// advantage

struct AdvantageArgs {
  std::vector<int> m;
  std::vector<double> n_b;
  std::vector<long long> big_m;
  std::vector<double> gamma;
  std::string format = "json";
  std::string output;
  int threads = 0;
};

const char kWitnessText[] =
    "for m > 2 the condition ln(m) <= 2 M gamma (n_b (2 - m) + 1) / "
    "(2 n_b + 1) requires n_b <= 1 / (m - 2); any point with "
    "n_b > 1 / (m - 2) makes the right-hand side negative and fails";

int run_advantage(const AdvantageArgs& a) {
  qtr_advantage_result* result = nullptr;
  if (qtr_advantage_region_search(
          a.m.data(), static_cast<int>(a.m.size()), a.n_b.data(),
          static_cast<int>(a.n_b.size()), a.big_m.data(),
          static_cast<int>(a.big_m.size()), a.gamma.data(),
          static_cast<int>(a.gamma.size()), &result) != QTR_OK) {
    return lib_fail();
  }
  unsigned long long points = 0;
  unsigned long long hits = 0;
  int witness = 0;
  qtr_advantage_points_checked(result, &points);
  qtr_advantage_hit_count(result, &hits);
  qtr_advantage_witness_verified(result, &witness);
  int rc = 0;
  if (a.format == "json") {
    ordered_json j;
    j["points_checked"] = points;
    ordered_json hit_array = ordered_json::array();
    for (unsigned long long i = 0; i < hits; ++i) {
      int m = 0;
      double n_b = 0.0;
      long long big_m = 0;
      double gamma = 0.0;
      qtr_advantage_hit(result, i, &m, &n_b, &big_m, &gamma);
      ordered_json h;
      h["m"] = m;
      h["n_b"] = n_b;
      h["M"] = big_m;
      h["gamma"] = gamma;
      hit_array.push_back(h);
    }
    j["hits"] = hit_array;
    j["witness_inequality"] = kWitnessText;
    j["witness_verified"] = (witness != 0);
    rc = emit(json_text(j), a.output);
  } else {
    std::string text = "m,n_b,M,gamma\n";
    for (unsigned long long i = 0; i < hits; ++i) {
      int m = 0;
      double n_b = 0.0;
      long long big_m = 0;
      double gamma = 0.0;
      qtr_advantage_hit(result, i, &m, &n_b, &big_m, &gamma);
      text += std::to_string(m);
      text += ',';
      text += fmt_g(n_b);
      text += ',';
      text += std::to_string(big_m);
      text += ',';
      text += fmt_g(gamma);
      text += '\n';
    }
    rc = emit(text, a.output);
  }
  qtr_advantage_result_free(result);
  return rc;
}

void add_common_flags(CLI::App* cmd, std::string* format, std::string* output,
                      int* threads) {
  cmd->add_option("--format", *format, "Output format")
      ->check(CLI::IsMember({"json", "csv"}))
      ->capture_default_str();
  cmd->add_option("--output", *output,
                  "Write output to this file instead of standard output");
  cmd->add_option("--threads", *threads,
                  "Worker threads (0 = hardware concurrency); affects speed "
                  "only, never results")
      ->capture_default_str();
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{
      "qtrange: error-probability bounds, Monte Carlo receiver simulation "
      "and advantage-region search for finding one anomalous bosonic channel "
      "among m range bins"};
  app.require_subcommand(1);
  app.set_version_flag("--version", std::string(qtr_version()));

  BoundsArgs bounds;
  CLI::App* cmd_bounds = app.add_subcommand(
      "bounds", "Evaluate every closed-form bound for one scenario");
  cmd_bounds->add_option("-m,--bins", bounds.m, "Number of range bins")
      ->required();
  cmd_bounds->add_option("-M,--modes", bounds.big_m, "Probe modes per bin")
      ->required();
  cmd_bounds
      ->add_option("--signal-photons", bounds.n_s,
                   "Mean signal photons per mode")
      ->required();
  cmd_bounds->add_option("--eta", bounds.eta, "Round-trip transmissivity")
      ->required();
  cmd_bounds
      ->add_option("--background-photons", bounds.n_b,
                   "Background photons per mode")
      ->required();
  add_common_flags(cmd_bounds, &bounds.format, &bounds.output,
                   &bounds.threads);

  SimulateArgs sim;
  CLI::App* cmd_sim = app.add_subcommand(
      "simulate-cn",
      "Monte Carlo simulation of the scan-and-confirm receiver; configure it "
      "directly (--zeta1/--zeta2/--hypotheses) or from a ranging scenario");
  CLI::Option* opt_z1 =
      cmd_sim->add_option("--zeta1", sim.zeta1, "Type-I (false alarm) rate");
  CLI::Option* opt_z2 =
      cmd_sim->add_option("--zeta2", sim.zeta2, "Type-II (miss) rate");
  CLI::Option* opt_nh =
      cmd_sim->add_option("--hypotheses", sim.n_hyp, "Number of hypotheses");
  CLI::Option* opt_m =
      cmd_sim->add_option("-m,--bins", sim.m, "Number of range bins");
  CLI::Option* opt_bm =
      cmd_sim->add_option("-M,--modes", sim.big_m, "Probe modes per bin");
  CLI::Option* opt_ns = cmd_sim->add_option("--signal-photons", sim.n_s,
                                            "Mean signal photons per mode");
  CLI::Option* opt_eta =
      cmd_sim->add_option("--eta", sim.eta, "Round-trip transmissivity");
  CLI::Option* opt_nb = cmd_sim->add_option("--background-photons", sim.n_b,
                                            "Background photons per mode");
  cmd_sim->add_option("--trials", sim.trials, "Monte Carlo trials")
      ->capture_default_str();
  cmd_sim->add_option("--seed", sim.seed, "Master seed")
      ->capture_default_str();
  add_common_flags(cmd_sim, &sim.format, &sim.output, &sim.threads);

  SweepArgs sweep;
  CLI::App* cmd_sweep = app.add_subcommand(
      "sweep",
      "Evaluate the bounds over a Cartesian parameter grid, from a spec file "
      "or from repeated grid flags");
  CLI::Option* opt_spec = cmd_sweep->add_option(
      "--spec", sweep.spec_path,
      "Plain-text grid file: lines 'key = v1, v2, ...' or "
      "'key = linspace(lo, hi, n)' or 'key = logspace(lo, hi, n)' for keys "
      "m, M, n_s, eta, n_b; '#' starts a comment");
  CLI::Option* opt_sm =
      cmd_sweep->add_option("-m,--bins", sweep.m, "Range bin grid");
  CLI::Option* opt_sbm =
      cmd_sweep->add_option("-M,--modes", sweep.big_m, "Modes-per-bin grid");
  CLI::Option* opt_sns = cmd_sweep->add_option("--signal-photons", sweep.n_s,
                                               "Signal photon grid");
  CLI::Option* opt_seta =
      cmd_sweep->add_option("--eta", sweep.eta, "Transmissivity grid");
  CLI::Option* opt_snb = cmd_sweep->add_option(
      "--background-photons", sweep.n_b, "Background photon grid");
  cmd_sweep->add_option("--max-rows", sweep.max_rows,
                        "Row cap (0 = default 1000000)");
  add_common_flags(cmd_sweep, &sweep.format, &sweep.output, &sweep.threads);

  AdvantageArgs adv;
  CLI::App* cmd_adv = app.add_subcommand(
      "advantage",
      "Search a parameter grid for points satisfying the quantum ranging "
      "advantage condition");
  CLI::Option* opt_am = cmd_adv->add_option(
      "-m,--bins", adv.m, "Bin count grid (default 2..64)");
  CLI::Option* opt_anb = cmd_adv->add_option(
      "--background-photons", adv.n_b,
      "Background photon grid (default 25 log-spaced points in [0.1, 100])");
  CLI::Option* opt_abm = cmd_adv->add_option(
      "-M,--modes", adv.big_m, "Modes-per-bin grid (default 1, 10, ..., 1e6)");
  CLI::Option* opt_ag = cmd_adv->add_option(
      "--gamma", adv.gamma,
      "SNR grid (default 13 log-spaced points in [0.001, 10])");
  add_common_flags(cmd_adv, &adv.format, &adv.output, &adv.threads);

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForVersion& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 2;
  }

  if (app.got_subcommand(cmd_bounds)) return run_bounds(bounds);

  if (app.got_subcommand(cmd_sim)) {
    const int direct_given = static_cast<int>(opt_z1->count() > 0) +
                             static_cast<int>(opt_z2->count() > 0) +
                             static_cast<int>(opt_nh->count() > 0);
    const int scenario_given = static_cast<int>(opt_m->count() > 0) +
                               static_cast<int>(opt_bm->count() > 0) +
                               static_cast<int>(opt_ns->count() > 0) +
                               static_cast<int>(opt_eta->count() > 0) +
                               static_cast<int>(opt_nb->count() > 0);
    if (direct_given > 0 && scenario_given > 0) {
      return usage_fail(
          "simulate-cn takes either --zeta1/--zeta2/--hypotheses or the "
          "scenario flags (-m, -M, --signal-photons, --eta, "
          "--background-photons), not both");
    }
    if (direct_given == 3) {
      sim.scenario_mode = false;
    } else if (scenario_given == 5) {
      sim.scenario_mode = true;
    } else if (direct_given > 0) {
      return usage_fail(
          "simulate-cn needs all of --zeta1, --zeta2 and --hypotheses");
    } else if (scenario_given > 0) {
      return usage_fail(
          "simulate-cn needs all of -m, -M, --signal-photons, --eta and "
          "--background-photons");
    } else {
      return usage_fail(
          "simulate-cn needs either --zeta1/--zeta2/--hypotheses or the five "
          "scenario flags");
    }
    return run_simulate(sim);
  }

  if (app.got_subcommand(cmd_sweep)) {
    const bool grids_given = opt_sm->count() > 0 || opt_sbm->count() > 0 ||
                             opt_sns->count() > 0 || opt_seta->count() > 0 ||
                             opt_snb->count() > 0;
    if (opt_spec->count() > 0 && grids_given) {
      return usage_fail("sweep takes --spec or grid flags, not both");
    }
    if (opt_spec->count() > 0) {
      SweepGrids grids;
      std::string error;
      if (!parse_sweep_spec_file(sweep.spec_path, &grids, &error)) {
        return usage_fail(error);
      }
      sweep.m = grids.m;
      sweep.big_m = grids.big_m;
      sweep.n_s = grids.n_s;
      sweep.eta = grids.eta;
      sweep.n_b = grids.n_b;
    } else if (opt_sm->count() == 0 || opt_sbm->count() == 0 ||
               opt_sns->count() == 0 || opt_seta->count() == 0 ||
               opt_snb->count() == 0) {
      return usage_fail(
          "sweep needs --spec FILE or all five grid flags (-m, -M, "
          "--signal-photons, --eta, --background-photons)");
    }
    return run_sweep(sweep);
  }

  if (app.got_subcommand(cmd_adv)) {
    if (opt_am->count() > 0) {
      for (int v : adv.m) {
        if (v < 2) return usage_fail("-m grid values must be >= 2");
      }
    } else {
      for (int v = 2; v <= 64; ++v) adv.m.push_back(v);
    }
    if (opt_anb->count() > 0) {
      for (double v : adv.n_b) {
        if (!(v > 0.0) || !std::isfinite(v)) {
          return usage_fail(
              "--background-photons grid values must be finite and > 0");
        }
      }
    } else {
      adv.n_b = logspace(0.1, 100.0, 25);
    }
    if (opt_abm->count() > 0) {
      for (long long v : adv.big_m) {
        if (v < 1) return usage_fail("-M grid values must be >= 1");
      }
    } else {
      adv.big_m = {1, 10, 100, 1000, 10000, 100000, 1000000};
    }
    if (opt_ag->count() > 0) {
      for (double v : adv.gamma) {
        if (!(v > 0.0) || !std::isfinite(v)) {
          return usage_fail("--gamma grid values must be finite and > 0");
        }
      }
    } else {
      adv.gamma = logspace(1e-3, 10.0, 13);
    }
    return run_advantage(adv);
  }

  return 2;
}
