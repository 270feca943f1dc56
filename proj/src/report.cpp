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

#include "qqo/report.hpp"

#include <cstdio>
#include <fstream>
#include <sstream>

#include "qqo/sampling.hpp"

namespace qqo {

std::uint64_t fnv1a64(const std::string& bytes) {
  std::uint64_t h = 0xcbf29ce484222325ull;
  for (const char c : bytes) {
    h ^= static_cast<unsigned char>(c);
    h *= 0x100000001b3ull;
  }
  return h;
}

std::string fnv1a64_hex(const std::string& bytes) {
  char buf[17];
  std::snprintf(buf, sizeof(buf), "%016llx",
                static_cast<unsigned long long>(fnv1a64(bytes)));
  return buf;
}

std::string fmt_g17(double x) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.17g", x);
  return buf;
}

ClassificationReport run_check(const std::string& path,
                               const CheckOptions& options,
                               const Tolerances& tol) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ParseError(0, "", "cannot open file '" + path + "'");
  std::ostringstream buf;
  buf << in.rdbuf();
  const std::string bytes = buf.str();
  const ParsedOperator op = parse_operator_text(bytes);
  const QqoTensor& t = op.tensor;

  ClassificationReport r;
  r.file = path;
  r.content_hash = "fnv1a64:" + fnv1a64_hex(bytes);
  r.kind = op.kind;
  r.seed = options.seed;
  r.samples = options.samples;
  r.oracle_samples = options.oracle_samples;
  r.grid_n = options.grid_n;

  // The marginal deviation is linear in x, so the four basis elements
  // bound it for every element.
  r.haar_deviation = 0.0;
  {
    PauliElement x;
    x.w0 = 1.0;
    r.haar_deviation = std::max(r.haar_deviation, haar_check(t, x));
    for (int k = 0; k < 3; ++k) {
      r.haar_deviation = std::max(r.haar_deviation, haar_check(t, PauliElement::sigma(k)));
    }
  }
  r.flip_symmetric = check_flip_symmetry(t);
  r.coassociativity_deviation = check_coassociativity(t);

  r.product_state = check_product_state_bound(
      t, options.samples, options.seed, options.grid_n, options.workers, tol);
  r.square_sum = check_square_sum_bound(t, tol);
  r.triple = triple_norm(t, options.grid_n, 50, options.workers);
  r.triple_ok = r.triple.estimate <= 1.0 + tol.triple_norm;

  KsScanConfig kcfg;
  kcfg.pair_count = options.samples;
  kcfg.oracle_count = options.oracle_samples;
  kcfg.grid_n = options.grid_n;
  kcfg.seed = options.seed;
  kcfg.workers = options.workers;
  r.ks = ks_scan(t, kcfg, tol);

  r.certs = certificates(t);
  r.regime = certificate_regime(r.certs);
  std::vector<StateVec> seeds;
  for (const Vec3& v : ball_grid(options.fixed_point_grid)) {
    seeds.emplace_back(v);
  }
  r.fixed_points = find_fixed_points(t, seeds, tol.fixed_point, tol);

  if (op.diagonal.has_value()) {
    r.diag_positivity = diag_positivity_bound(*op.diagonal, tol);
    r.diag_stability = diag_stability_bound(*op.diagonal, tol);
  }
  if (op.abc.has_value()) {
    r.abc = *op.abc;
    r.abc_positivity = abc_positivity_bound(*op.abc, tol);
    r.abc_obstruction = abc_ks_obstruction(*op.abc, tol);
    r.abc_regime = family_regime(*op.abc, tol);
  }
  return r;
}

namespace {

std::string json_escape(const std::string& s) {
  std::string out;
  out.reserve(s.size() + 2);
  for (const char c : s) {
    switch (c) {
      case '"':
        out += "\\\"";
        break;
      case '\\':
        out += "\\\\";
        break;
      case '\n':
        out += "\\n";
        break;
      case '\r':
        out += "\\r";
        break;
      case '\t':
        out += "\\t";
        break;
      default:
        if (static_cast<unsigned char>(c) < 0x20) {
          char buf[8];
          std::snprintf(buf, sizeof(buf), "\\u%04x", c);
          out += buf;
        } else {
          out += c;
        }
    }
  }
  return out;
}

std::string vec_json(const Vec3& v) {
  return "[" + fmt_g17(v(0)) + ", " + fmt_g17(v(1)) + ", " + fmt_g17(v(2)) +
         "]";
}

std::string cvec_re_json(const CVec3& v) {
  return "[" + fmt_g17(v(0).real()) + ", " + fmt_g17(v(1).real()) + ", " +
         fmt_g17(v(2).real()) + "]";
}

std::string cvec_im_json(const CVec3& v) {
  return "[" + fmt_g17(v(0).imag()) + ", " + fmt_g17(v(1).imag()) + ", " +
         fmt_g17(v(2).imag()) + "]";
}

const char* bool_json(bool b) { return b ? "true" : "false"; }

std::string witness_json(const KsWitness& w, const std::string& indent) {
  std::string out = "{\n";
  out += indent + "  \"channel\": \"" +
         std::string(ks_channel_name(w.channel)) + "\",\n";
  out += indent + "  \"margin\": " + fmt_g17(w.margin) + ",\n";
  out += indent + "  \"f\": " + vec_json(w.f) + ",\n";
  out += indent + "  \"w_re\": " + cvec_re_json(w.w) + ",\n";
  out += indent + "  \"w_im\": " + cvec_im_json(w.w) + "\n";
  out += indent + "}";
  return out;
}

}  // namespace

std::string write_report_json(const ClassificationReport& r) {
  std::string out = "{\n";
  out += "  \"file\": \"" + json_escape(r.file) + "\",\n";
  out += "  \"hash\": \"" + r.content_hash + "\",\n";
  out += "  \"format\": \"" + std::string(format_name(r.kind)) + "\",\n";
  out += "  \"seed\": " + std::to_string(r.seed) + ",\n";
  out += "  \"samples\": " + std::to_string(r.samples) + ",\n";
  out += "  \"oracle_samples\": " + std::to_string(r.oracle_samples) + ",\n";
  out += "  \"grid_n\": " + std::to_string(r.grid_n) + ",\n";

  out += "  \"structure\": {\n";
  out += "    \"haar_deviation\": " + fmt_g17(r.haar_deviation) + ",\n";
  out += "    \"flip_symmetric\": " + std::string(bool_json(r.flip_symmetric)) +
         ",\n";
  out += "    \"coassociativity_deviation\": " +
         fmt_g17(r.coassociativity_deviation) + "\n";
  out += "  },\n";

  out += "  \"positivity\": {\n";
  out += "    \"product_state\": {\n";
  out += "      \"ok\": " + std::string(bool_json(r.product_state.ok)) + ",\n";
  out += "      \"worst\": " + fmt_g17(r.product_state.worst) + ",\n";
  out += "      \"f\": " + vec_json(r.product_state.f) + ",\n";
  out += "      \"p\": " + vec_json(r.product_state.p) + "\n";
  out += "    },\n";
  out += "    \"square_sum\": {\n";
  out += "      \"ok\": " + std::string(bool_json(r.square_sum.ok)) + ",\n";
  out += "      \"value\": " + fmt_g17(r.square_sum.value) + "\n";
  out += "    },\n";
  out += "    \"triple_norm\": {\n";
  out += "      \"ok\": " + std::string(bool_json(r.triple_ok)) + ",\n";
  out += "      \"estimate\": " + fmt_g17(r.triple.estimate) + ",\n";
  out += "      \"argmax\": " + vec_json(r.triple.argmax) + "\n";
  out += "    }\n";
  out += "  },\n";

  out += "  \"ks\": {\n";
  out += "    \"violation_found\": " +
         std::string(bool_json(r.ks.violation_found)) + ",\n";
  out += "    \"pairs_scanned\": " + std::to_string(r.ks.pairs_scanned) +
         ",\n";
  out += "    \"oracle_points\": " + std::to_string(r.ks.oracle_points) +
         ",\n";
  out += "    \"worst\": " + witness_json(r.ks.worst, "    ") + ",\n";
  out += "    \"trace\": " + witness_json(r.ks.worst_trace, "    ") + ",\n";
  out += "    \"eig\": " + witness_json(r.ks.worst_eig, "    ") + ",\n";
  out += "    \"oracle\": " + witness_json(r.ks.worst_oracle, "    ") + "\n";
  out += "  },\n";

  out += "  \"dynamics\": {\n";
  out += "    \"lipschitz_k\": " + vec_json(r.certs.lipschitz_k) + ",\n";
  out += "    \"lipschitz_sq\": " + fmt_g17(r.certs.lipschitz_sq) + ",\n";
  out += "    \"abs_sum_k\": " + vec_json(r.certs.abs_sum_k) + ",\n";
  out += "    \"contraction\": " + std::string(bool_json(r.certs.contraction)) +
         ",\n";
  out += "    \"abs_sum_bounded\": " +
         std::string(bool_json(r.certs.abs_sum_bounded)) + ",\n";
  out += "    \"shrink_step\": " +
         (r.certs.shrink_step.has_value()
              ? std::to_string(*r.certs.shrink_step)
              : std::string("null")) +
         ",\n";
  out += "    \"unique_stable_origin\": " +
         std::string(bool_json(r.certs.unique_stable_origin)) + ",\n";
  out += "    \"regime\": \"" + r.regime + "\",\n";
  out += "    \"fixed_points\": [";
  for (std::size_t i = 0; i < r.fixed_points.size(); ++i) {
    if (i != 0) out += ", ";
    out += vec_json(r.fixed_points[i]);
  }
  out += "]\n";
  out += "  }";

  if (r.diag_positivity.has_value() || r.abc.has_value()) {
    out += ",\n  \"family\": {\n";
    if (r.abc.has_value()) {
      out += "    \"kind\": \"abc\",\n";
      out += "    \"a\": " + fmt_g17(r.abc->a) + ",\n";
      out += "    \"b\": " + fmt_g17(r.abc->b) + ",\n";
      out += "    \"c\": " + fmt_g17(r.abc->c) + ",\n";
    } else {
      out += "    \"kind\": \"diagonal\",\n";
    }
    if (r.diag_positivity.has_value()) {
      out += "    \"positivity_bound_ok\": " +
             std::string(bool_json(r.diag_positivity->ok)) + ",\n";
      out += "    \"positivity_bound\": " + fmt_g17(r.diag_positivity->value) +
             ",\n";
      out += "    \"stability_bound_ok\": " +
             std::string(bool_json(r.diag_stability->ok)) + ",\n";
      out += "    \"stability_bound\": " + fmt_g17(r.diag_stability->value);
      out += (r.abc.has_value() ? ",\n" : "\n");
    }
    if (r.abc.has_value()) {
      out += "    \"family_positivity_bound_ok\": " +
             std::string(bool_json(r.abc_positivity->ok)) + ",\n";
      out += "    \"family_positivity_bound\": " +
             fmt_g17(r.abc_positivity->value) + ",\n";
      out += "    \"trace_bound\": " + fmt_g17(r.abc_obstruction->trace_bound) +
             ",\n";
      out += "    \"abs_sum\": " + fmt_g17(r.abc_obstruction->abs_sum) + ",\n";
      out += "    \"proved_not_ks\": " +
             std::string(bool_json(r.abc_obstruction->proved_not_ks)) + ",\n";
      out += "    \"regime\": \"" + *r.abc_regime + "\"\n";
    }
    out += "  }\n";
  } else {
    out += "\n";
  }
  out += "}\n";
  return out;
}

}  // namespace qqo
