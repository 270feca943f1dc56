// Copyright 2026 The qqo Authors
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
//
// qqo — command-line front end.
//
//   qqo check <file>      full certificate suite, JSON report on stdout
//   qqo iterate <file>    trajectory of the induced ball map, CSV on stdout
//   qqo scan-abc          sweep the three-parameter family, CSV on stdout
//   qqo witness <file>    hunt for a Kadison-Schwarz violation, JSON on stdout
//
// Exit codes: 0 success (for `witness`: violation found), 1 `witness` found
// no violation, 2 bad input (file, flags, out-of-ball start), 3 internal
// consistency fault.

#include <cstdlib>
#include <iostream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "qqo/dynamics.hpp"
#include "qqo/families.hpp"
#include "qqo/ks.hpp"
#include "qqo/opfile.hpp"
#include "qqo/operator.hpp"
#include "qqo/pauli.hpp"
#include "qqo/report.hpp"

namespace {

using namespace qqo;

const char* bool_text(bool b) { return b ? "true" : "false"; }

struct CommonFlags {
  std::string file;
  std::uint64_t seed = 0;
  std::uint64_t samples = 4096;
  std::uint64_t oracle_samples = 2048;
  int grid_n = 2562;
  int workers = 1;
  std::string format;  // per-command fixed serialization
};

void add_sampling_flags(CLI::App* cmd, CommonFlags* fl) {
  cmd->add_option("--seed", fl->seed, "random seed for every sampled search");
  cmd->add_option("--samples", fl->samples,
                  "random (f, w) / (f, p) pairs beyond the canonical grid");
  cmd->add_option("--oracle-samples", fl->oracle_samples,
                  "extra random elements for the spectral oracle");
  cmd->add_option("--workers", fl->workers, "worker threads (output-neutral)")
      ->check(CLI::Range(1, 256));
}

int cmd_check(const CommonFlags& fl) {
  CheckOptions o;
  o.seed = fl.seed;
  o.samples = fl.samples;
  o.oracle_samples = fl.oracle_samples;
  o.grid_n = fl.grid_n;
  o.workers = fl.workers;
  const ClassificationReport r = run_check(fl.file, o);
  std::cout << write_report_json(r);
  return 0;
}

int cmd_iterate(const CommonFlags& fl, const std::vector<double>& init,
                int steps, double tol) {
  const ParsedOperator op = load_operator_file(fl.file);
  const StateVec f0(Vec3(init[0], init[1], init[2]));
  const Trajectory tr = iterate(op.tensor, f0, steps, tol);
  std::cout << "n,f1,f2,f3,norm\n";
  for (std::size_t n = 0; n < tr.points.size(); ++n) {
    const Vec3& p = tr.points[n];
    std::cout << n << ',' << fmt_g17(p(0)) << ',' << fmt_g17(p(1)) << ','
              << fmt_g17(p(2)) << ',' << fmt_g17(p.norm()) << '\n';
  }
  std::cout << "terminal," << terminal_name(tr.terminal) << '\n';
  return 0;
}

// Range spec: "v" (one point), "lo:hi" (`density` evenly spaced points), or
// "lo:hi:step" (lo, lo+step, ... while <= hi plus a hair of slack).
std::vector<double> parse_range(const std::string& spec, int density) {
  const auto number = [](const std::string& s) {
    std::size_t pos = 0;
    double v = 0.0;
    try {
      v = std::stod(s, &pos);
    } catch (const std::exception&) {
      throw std::invalid_argument("bad number in range: '" + s + "'");
    }
    if (pos != s.size()) {
      throw std::invalid_argument("bad number in range: '" + s + "'");
    }
    return v;
  };
  std::vector<std::string> parts;
  std::string cur;
  for (const char c : spec) {
    if (c == ':') {
      parts.push_back(cur);
      cur.clear();
    } else {
      cur += c;
    }
  }
  parts.push_back(cur);

  std::vector<double> out;
  if (parts.size() == 1) {
    out.push_back(number(parts[0]));
  } else if (parts.size() == 2) {
    const double lo = number(parts[0]);
    const double hi = number(parts[1]);
    if (density < 1) throw std::invalid_argument("--grid must be >= 1");
    if (density == 1) {
      if (hi >= lo) out.push_back(lo);
    } else if (hi >= lo) {
      for (int i = 0; i < density; ++i) {
        out.push_back(lo + (hi - lo) * static_cast<double>(i) /
                               static_cast<double>(density - 1));
      }
    }
  } else if (parts.size() == 3) {
    const double lo = number(parts[0]);
    const double hi = number(parts[1]);
    const double step = number(parts[2]);
    if (!(step > 0.0)) {
      throw std::invalid_argument("range step must be positive: '" + spec +
                                  "'");
    }
    const double slack = 1e-9 * std::max(1.0, std::abs(hi));
    for (double v = lo; v <= hi + slack; v += step) out.push_back(v);
  } else {
    throw std::invalid_argument("bad range spec: '" + spec + "'");
  }
  return out;
}

int cmd_scan_abc(const CommonFlags& fl, const std::string& ra,
                 const std::string& rb, const std::string& rc, int density) {
  const std::vector<double> as = parse_range(ra, density);
  const std::vector<double> bs = parse_range(rb, density);
  const std::vector<double> cs = parse_range(rc, density);
  if (as.empty() || bs.empty() || cs.empty()) {
    throw std::invalid_argument("empty parameter grid");
  }
  KsScanConfig cfg;
  cfg.pair_count = fl.samples;
  cfg.oracle_count = fl.oracle_samples;
  cfg.grid_n = fl.grid_n;
  cfg.seed = fl.seed;
  cfg.workers = fl.workers;

  std::cout << "a,b,c,positivity_bound_ok,positivity_bound,trace_bound,"
               "abs_sum,proved_not_ks,regime,ks_worst_margin\n";
  for (const double a : as) {
    for (const double b : bs) {
      for (const double c : cs) {
        const AbcParams p{a, b, c};
        const CertValue pos = abc_positivity_bound(p);
        const AbcKsObstruction obs = abc_ks_obstruction(p);
        const char* regime = family_regime(p);
        const KsReport ks = ks_scan(abc_to_tensor(p), cfg);
        std::cout << fmt_g17(a) << ',' << fmt_g17(b) << ',' << fmt_g17(c)
                  << ',' << bool_text(pos.ok) << ',' << fmt_g17(pos.value)
                  << ',' << fmt_g17(obs.trace_bound) << ','
                  << fmt_g17(obs.abs_sum) << ','
                  << bool_text(obs.proved_not_ks) << ',' << regime << ','
                  << fmt_g17(ks.worst.margin) << '\n';
      }
    }
  }
  return 0;
}

std::string witness_block(const KsWitness& w, const char* indent) {
  std::string out = "{\n";
  const std::string in(indent);
  out += in + "  \"channel\": \"" + ks_channel_name(w.channel) + "\",\n";
  out += in + "  \"margin\": " + fmt_g17(w.margin) + ",\n";
  out += in + "  \"f\": [" + fmt_g17(w.f(0)) + ", " + fmt_g17(w.f(1)) + ", " +
         fmt_g17(w.f(2)) + "],\n";
  out += in + "  \"w_re\": [" + fmt_g17(w.w(0).real()) + ", " +
         fmt_g17(w.w(1).real()) + ", " + fmt_g17(w.w(2).real()) + "],\n";
  out += in + "  \"w_im\": [" + fmt_g17(w.w(0).imag()) + ", " +
         fmt_g17(w.w(1).imag()) + ", " + fmt_g17(w.w(2).imag()) + "]\n";
  out += in + "}";
  return out;
}

std::string matrix_rows(const Mat4c& m, bool imag, const char* indent) {
  std::string out = "[\n";
  const std::string in(indent);
  for (int r = 0; r < 4; ++r) {
    out += in + "  [";
    for (int c = 0; c < 4; ++c) {
      if (c != 0) out += ", ";
      out += fmt_g17(imag ? m(r, c).imag() : m(r, c).real());
    }
    out += (r == 3) ? "]\n" : "],\n";
  }
  out += in + "]";
  return out;
}

int cmd_witness(const CommonFlags& fl) {
  const ParsedOperator op = load_operator_file(fl.file);
  const QqoTensor& t = op.tensor;
  KsScanConfig cfg;
  cfg.pair_count = fl.samples;
  cfg.oracle_count = fl.oracle_samples;
  cfg.grid_n = fl.grid_n;
  cfg.seed = fl.seed;
  cfg.workers = fl.workers;
  const KsReport ks = ks_scan(t, cfg);

  // Dense gap at the worst witness, as x = w·σ.
  PauliElement x;
  x.w0 = 0.0;
  x.w = ks.worst.w;
  const Mat4c dx = tensor_square_to_dense(apply_delta(t, x));
  const Mat4c dxx =
      tensor_square_to_dense(apply_delta(t, pauli_mul(x.adjoint(), x)));
  const Mat4c gap = dxx - dx.adjoint() * dx;
  const double min_eig = ks_oracle(t, x);

  std::string out = "{\n";
  out += "  \"file\": \"" + fl.file + "\",\n";
  out += "  \"seed\": " + std::to_string(fl.seed) + ",\n";
  out += "  \"samples\": " + std::to_string(fl.samples) + ",\n";
  out += "  \"oracle_samples\": " + std::to_string(fl.oracle_samples) + ",\n";
  out += "  \"grid_n\": " + std::to_string(fl.grid_n) + ",\n";
  out += "  \"violation_found\": " +
         std::string(bool_text(ks.violation_found)) + ",\n";
  out += "  \"pairs_scanned\": " + std::to_string(ks.pairs_scanned) + ",\n";
  out += "  \"oracle_points\": " + std::to_string(ks.oracle_points) + ",\n";
  out += "  \"worst\": " + witness_block(ks.worst, "  ") + ",\n";
  out += "  \"trace\": " + witness_block(ks.worst_trace, "  ") + ",\n";
  out += "  \"eig\": " + witness_block(ks.worst_eig, "  ") + ",\n";
  out += "  \"oracle\": " + witness_block(ks.worst_oracle, "  ") + ",\n";
  out += "  \"gap_min_eig\": " + fmt_g17(min_eig) + ",\n";
  out += "  \"gap_re\": " + matrix_rows(gap, false, "  ") + ",\n";
  out += "  \"gap_im\": " + matrix_rows(gap, true, "  ") + "\n";
  out += "}\n";
  std::cout << out;
  return ks.violation_found ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{
      "Certificates, Kadison-Schwarz scans, and ball dynamics for quantum "
      "quadratic operators on the 2x2 matrix algebra"};
  app.require_subcommand(1);

  CommonFlags ck;
  auto* check = app.add_subcommand(
      "check", "Run the full certificate suite and print a JSON report");
  check->add_option("file", ck.file, "operator file")->required();
  add_sampling_flags(check, &ck);
  check->add_option("--grid", ck.grid_n, "sphere grid size")
      ->check(CLI::Range(1, 100000000));
  check->add_option("--format", ck.format, "output format (json)")
      ->check(CLI::IsMember({"json"}));

  CommonFlags it;
  std::vector<double> init;
  int steps = 200;
  double tol = 1e-9;
  auto* iter = app.add_subcommand(
      "iterate", "Iterate the induced ball map and print the trajectory CSV");
  iter->add_option("file", it.file, "operator file")->required();
  iter->add_option("--init", init, "starting state f1,f2,f3")
      ->required()
      ->delimiter(',')
      ->expected(3);
  iter->add_option("--steps", steps, "maximum iterations")
      ->check(CLI::Range(1, 100000000));
  iter->add_option("--tol", tol, "convergence tolerance");
  iter->add_option("--format", it.format, "output format (csv)")
      ->check(CLI::IsMember({"csv"}));

  CommonFlags sc;
  sc.samples = 256;
  sc.oracle_samples = 128;
  std::string range_a = "0", range_b = "0", range_c = "0";
  int density = 11;
  auto* scan = app.add_subcommand(
      "scan-abc",
      "Sweep the three-parameter family and print one CSV row per point");
  scan->add_option("--a", range_a, "a range: v | lo:hi | lo:hi:step");
  scan->add_option("--b", range_b, "b range: v | lo:hi | lo:hi:step");
  scan->add_option("--c", range_c, "c range: v | lo:hi | lo:hi:step");
  scan->add_option("--grid", density, "points per lo:hi range")
      ->check(CLI::Range(1, 100000000));
  add_sampling_flags(scan, &sc);
  scan->add_option("--format", sc.format, "output format (csv)")
      ->check(CLI::IsMember({"csv"}));

  CommonFlags wt;
  auto* wit = app.add_subcommand(
      "witness",
      "Search for a Kadison-Schwarz violation; exit 0 iff one is found");
  wit->add_option("file", wt.file, "operator file")->required();
  add_sampling_flags(wit, &wt);
  wit->add_option("--grid", wt.grid_n, "sphere grid size")
      ->check(CLI::Range(1, 100000000));
  wit->add_option("--format", wt.format, "output format (json)")
      ->check(CLI::IsMember({"json"}));

  int rc = 0;
  check->callback([&] { rc = cmd_check(ck); });
  iter->callback([&] { rc = cmd_iterate(it, init, steps, tol); });
  scan->callback([&] { rc = cmd_scan_abc(sc, range_a, range_b, range_c, density); });
  wit->callback([&] { rc = cmd_witness(wt); });

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 2;
  } catch (const qqo::ParseError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 2;
  } catch (const std::invalid_argument& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 2;
  } catch (const qqo::InternalError& e) {
    std::cerr << "internal error: " << e.what() << '\n';
    return 3;
  } catch (const std::exception& e) {
    std::cerr << "internal error: " << e.what() << '\n';
    return 3;
  }
  return rc;
}
