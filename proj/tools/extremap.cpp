// Copyright 2026 The extremap Authors
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

// extremap: classify superoperators, generate canonical fixtures and check
// weighted composition operators on the disc algebra.
//
// Exit codes: 0 accepted, 2 rejected, 1 malformed input or other error.

#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>

#include <CLI11.hpp>
#include <json.hpp>

#include "extremap/disc.hpp"
#include "extremap/error.hpp"
#include "extremap/io.hpp"
#include "extremap/random.hpp"
#include "extremap/structure.hpp"

namespace {

using namespace extremap;
using json = nlohmann::json;

constexpr int kAccept = 0;
constexpr int kError = 1;
constexpr int kReject = 2;

std::string fmt(double x) {
  if (!std::isfinite(x)) return "inf";
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.6e", x);
  return buf;
}

std::string fmt(cdouble z) { return "(" + fmt(z.real()) + ", " + fmt(z.imag()) + ")"; }

std::string index_list(const std::vector<int>& v) {
  if (v.empty()) return " none";
  std::string out;
  for (int b : v) out += " " + std::to_string(b);
  return out;
}

std::uint64_t default_seed() {
  if (const char* s = std::getenv("EXTREMAL_SEED")) {
    try {
      return std::stoull(s);
    } catch (const std::exception&) {
      throw Error(ErrorCode::InvalidArgument, "EXTREMAL_SEED is not an unsigned integer");
    }
  }
  return 0;
}

void print_verdict_lines(std::ostream& os, const GlobalClassification& c) {
  for (std::size_t o = 0; o < c.verdicts.size(); ++o) {
    const BlockVerdict& v = c.verdicts[o];
    os << "block " << o << ": ";
    if (const auto* r = std::get_if<Rejected>(&v)) {
      os << "Rejected " << to_string(r->reason) << " (" << r->detail << ")\n";
      os << "  witness out_block=" << r->witness.out_block << " defect=" << fmt(r->witness.defect)
         << " replays=" << (r->witness.replays ? "yes" : "no") << "\n";
    } else if (const auto* c1 = std::get_if<Form1Certificate>(&v)) {
      os << (c1->transposed ? "Form1 transposed" : "Form1") << " from input block "
         << c1->input_block << " residual=" << fmt(c.residuals[o]) << "\n";
    } else {
      const auto& c2 = std::get<Form2Certificate>(v);
      os << (c2.adjoint_variant ? "Form2 adjoint" : "Form2") << " from input block "
         << c2.input_block << " residual=" << fmt(c.residuals[o]) << "\n";
    }
  }
}

struct ClassifyArgs {
  std::string path;
  double tol = kDefaultTol;
  std::string mode = "extremal";
  std::string format = "json";
  std::optional<std::uint64_t> seed;
};

int run_classify(const ClassifyArgs& a) {
  const Superoperator psi = io::load_superoperator(a.path);
  const std::uint64_t seed = a.seed ? *a.seed : default_seed();
  const bool text = a.format == "text";
  std::ostringstream os;
  int code = kError;
  if (a.mode == "extremal") {
    const GlobalClassification c = classify_extremal_global(psi, a.tol, seed);
    code = c.accepted ? kAccept : kReject;
    if (text) {
      os << "mode: extremal\naccepted: " << (c.accepted ? "yes" : "no") << "\nseed: " << seed
         << "\nresidual: " << fmt(c.residual) << "\n";
      print_verdict_lines(os, c);
      if (c.certificate) {
        os << "non-degenerate output blocks:" << index_list(c.certificate->e_blocks)
           << "\ndegenerate output blocks:" << index_list(c.certificate->degenerate_blocks) << "\n";
      }
    } else {
      os << io::extremal_report(c, a.tol, seed).dump(2) << "\n";
    }
  } else if (a.mode == "pure") {
    const PureClassification c = classify_pure_preserving(psi, a.tol, seed);
    code = c.accepted ? kAccept : kReject;
    if (text) {
      os << "mode: pure\naccepted: " << (c.accepted ? "yes" : "no") << "\nseed: " << seed << "\n";
      if (c.reason) os << "reason: " << to_string(*c.reason) << "\n";
      if (c.witness) os << "witness: out_block=" << c.witness->out_block << "\n";
      if (c.certificate) os << "residual: " << fmt(c.certificate->residual) << "\n";
      print_verdict_lines(os, c.global);
    } else {
      os << io::pure_report(c, a.tol, seed).dump(2) << "\n";
    }
  } else {
    const JordanReport r = is_jordan_morphism(psi, 16, seed, a.tol);
    code = r.is_jordan ? kAccept : kReject;
    if (text) {
      os << "mode: jordan\naccepted: " << (r.is_jordan ? "yes" : "no") << "\nseed: " << seed
         << "\nmax_jordan_defect: " << fmt(r.max_jordan_defect) << "\n";
      for (std::size_t o = 0; o < r.block_labels.size(); ++o) {
        os << "block " << o << ": " << to_string(r.block_labels[o]) << "\n";
      }
    } else {
      os << io::jordan_report(r, a.tol, seed).dump(2) << "\n";
    }
  }
  std::cout << os.str();
  return code;
}

struct BlockSpec {
  std::string form;
  int k = 0;
  int h = 0;
};

std::vector<BlockSpec> parse_block_specs(const std::string& s) {
  std::vector<BlockSpec> out;
  std::stringstream ss(s);
  std::string item;
  while (std::getline(ss, item, ',')) {
    BlockSpec b;
    const auto c1 = item.find(':');
    const auto c2 = c1 == std::string::npos ? c1 : item.find(':', c1 + 1);
    if (c2 == std::string::npos) {
      throw Error(ErrorCode::InvalidArgument, "block entry '" + item + "' is not form:k:h");
    }
    b.form = item.substr(0, c1);
    try {
      b.k = std::stoi(item.substr(c1 + 1, c2 - c1 - 1));
      b.h = std::stoi(item.substr(c2 + 1));
    } catch (const std::exception&) {
      throw Error(ErrorCode::InvalidArgument, "block entry '" + item + "' has bad dimensions");
    }
    out.push_back(b);
  }
  if (out.empty()) throw Error(ErrorCode::InvalidArgument, "empty --blocks list");
  return out;
}

BlockMap generate_block(const BlockSpec& b, Rng& rng) {
  if (b.form != "1" && b.form != "1t" && b.form != "2" && b.form != "2a") {
    throw Error(ErrorCode::InvalidArgument, "unknown form '" + b.form + "'");
  }
  if (b.k < 1 || b.h < 1) throw Error(ErrorCode::InvalidArgument, "dimensions must be positive");
  if (b.form[0] == '1') {
    if (b.k < b.h) {
      throw Error(ErrorCode::DimensionObstruction,
                  "form 1 needs k >= h, got k=" + std::to_string(b.k) + " h=" + std::to_string(b.h));
    }
    const CMatrix u = random_isometry(rng, b.k, b.h);
    const CMatrix v = random_isometry(rng, b.k, b.h);
    return form1_map(u, v, b.form == "1t");
  }
  if (b.k < b.h * b.h) {
    throw Error(ErrorCode::DimensionObstruction,
                "form 2 needs k >= h^2, got k=" + std::to_string(b.k) + " h=" + std::to_string(b.h));
  }
  const CVector w = random_unit_vector(rng, b.k);
  const CMatrix frame = random_isometry(rng, b.k, b.h * b.h).adjoint();
  return form2_map(w, frame, b.form == "2a");
}

struct GenerateArgs {
  std::string form = "1";
  std::vector<int> dims;
  std::string blocks;
  std::optional<std::uint64_t> seed;
  std::string out = "-";
};

int run_generate(const GenerateArgs& a) {
  std::vector<BlockSpec> specs;
  if (!a.blocks.empty()) {
    specs = parse_block_specs(a.blocks);
  } else {
    if (a.dims.size() != 2) throw Error(ErrorCode::InvalidArgument, "--dims needs k and h");
    specs.push_back({a.form, a.dims[0], a.dims[1]});
  }
  Rng rng(a.seed ? *a.seed : default_seed());
  std::vector<int> in_dims, out_dims;
  std::vector<BlockMap> maps;
  for (const BlockSpec& b : specs) {
    maps.push_back(generate_block(b, rng));
    in_dims.push_back(b.k);
    out_dims.push_back(b.h);
  }
  Superoperator psi = Superoperator::zero(BlockShape(in_dims), BlockShape(out_dims));
  for (std::size_t i = 0; i < maps.size(); ++i) {
    add_route(psi, static_cast<int>(i), static_cast<int>(i), maps[i]);
  }
  const std::string doc = io::superoperator_to_json(psi).dump(1) + "\n";
  if (a.out == "-") {
    std::cout << doc;
  } else {
    std::ofstream f(a.out, std::ios::binary);
    if (!f) throw Error(ErrorCode::InvalidArgument, "cannot write " + a.out);
    f << doc;
  }
  return kAccept;
}

// Accepts "0.5", "-0.2i", "0.3+0.2i", "1e-3-2i", "i".
cdouble parse_complex_token(const std::string& raw) {
  std::string t;
  for (char c : raw) {
    if (!std::isspace(static_cast<unsigned char>(c))) t += c;
  }
  auto bad = [&]() -> Error { return Error(ErrorCode::InvalidArgument, "bad complex number '" + raw + "'"); };
  if (t.empty()) throw bad();
  auto to_double = [&](const std::string& s) {
    if (s.empty() || s == "+") return 1.0;
    if (s == "-") return -1.0;
    std::size_t used = 0;
    double x = 0.0;
    try {
      x = std::stod(s, &used);
    } catch (const std::exception&) {
      throw bad();
    }
    if (used != s.size()) throw bad();
    return x;
  };
  if (t.back() != 'i') return {to_double(t), 0.0};
  t.pop_back();
  std::size_t split = std::string::npos;
  for (std::size_t i = t.size(); i-- > 1;) {
    if ((t[i] == '+' || t[i] == '-') && t[i - 1] != 'e' && t[i - 1] != 'E') {
      split = i;
      break;
    }
  }
  if (split == std::string::npos) return {0.0, to_double(t)};
  return {to_double(t.substr(0, split)), to_double(t.substr(split))};
}

std::vector<cdouble> parse_complex_list(const std::string& raw) {
  std::string s = raw;
  if (!s.empty() && s.front() == '[') s.erase(0, 1);
  if (!s.empty() && s.back() == ']') s.pop_back();
  std::vector<cdouble> out;
  std::stringstream ss(s);
  std::string item;
  while (std::getline(ss, item, ',')) {
    if (item.find_first_not_of(" \t") == std::string::npos) continue;
    out.push_back(parse_complex_token(item));
  }
  return out;
}

struct DiscArgs {
  std::string psi_zeros = "[]";
  double psi_phase = 0.0;
  std::string phi_zeros = "[0]";
  double phi_phase = 0.0;
  int grid = 4096;
  double tol = 1e-10;
  std::string format = "json";
};

int run_disc(const DiscArgs& a) {
  const BlaschkeProduct psi{a.psi_phase, parse_complex_list(a.psi_zeros)};
  const BlaschkeProduct phi{a.phi_phase, parse_complex_list(a.phi_zeros)};
  const DiscCompositionOp op{psi, phi};
  const BoundaryCheck r = boundary_extremality_check(op, a.grid, a.tol);
  if (a.format == "text") {
    std::cout << "accepted: " << (r.accepted ? "yes" : "no") << "\ngrid: " << a.grid
              << "\nmax_deviation: " << fmt(r.max_deviation)
              << "\nmultiplier_deviation: " << fmt(r.multiplier_deviation)
              << "\nsymbol_deviation: " << fmt(r.symbol_deviation)
              << "\nworst_t: " << fmt(r.worst_t) << "\nworst_point: " << fmt(r.worst_point) << "\n";
  } else {
    const json out = {{"mode", "disc"},
                      {"accepted", r.accepted},
                      {"grid", a.grid},
                      {"tol", a.tol},
                      {"psi_degree", psi.degree()},
                      {"phi_degree", phi.degree()},
                      {"max_deviation", r.max_deviation},
                      {"multiplier_deviation", r.multiplier_deviation},
                      {"symbol_deviation", r.symbol_deviation},
                      {"worst_t", r.worst_t},
                      {"worst_point", io::to_json(r.worst_point)}};
    std::cout << out.dump(2) << "\n";
  }
  return r.accepted ? kAccept : kReject;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Extreme-point preserving maps between finite-dimensional C*-algebras"};
  app.require_subcommand(1);

  ClassifyArgs ca;
  auto* classify = app.add_subcommand("classify", "Classify a superoperator file");
  classify->add_option("path", ca.path, "Superoperator JSON file")->required();
  classify->add_option("--tol", ca.tol, "Numerical tolerance");
  classify->add_option("--mode", ca.mode, "extremal, pure or jordan")
      ->check(CLI::IsMember({"extremal", "pure", "jordan"}));
  classify->add_option("--format", ca.format, "json or text")->check(CLI::IsMember({"json", "text"}));
  classify->add_option("--seed", ca.seed, "Seed for witness search (default $EXTREMAL_SEED or 0)");

  GenerateArgs ga;
  auto* generate = app.add_subcommand("generate", "Write a canonical-form fixture");
  generate->add_option("--form", ga.form, "1, 1t, 2 or 2a")->check(CLI::IsMember({"1", "1t", "2", "2a"}));
  generate->add_option("--dims", ga.dims, "k h")->expected(2);
  generate->add_option("--blocks", ga.blocks, "Comma-separated form:k:h, one per block");
  generate->add_option("--seed", ga.seed, "Random seed (default $EXTREMAL_SEED or 0)");
  generate->add_option("--out", ga.out, "Output path, - for stdout");

  DiscArgs da;
  auto* disc = app.add_subcommand("disc", "Check a weighted composition operator on the disc algebra");
  disc->add_option("--psi-zeros", da.psi_zeros, "Zeros of the multiplier, e.g. [0.5,0.2i]");
  disc->add_option("--psi-phase", da.psi_phase, "Phase of the multiplier");
  disc->add_option("--phi-zeros", da.phi_zeros, "Zeros of the symbol");
  disc->add_option("--phi-phase", da.phi_phase, "Phase of the symbol");
  disc->add_option("--grid", da.grid, "Boundary grid size");
  disc->add_option("--tol", da.tol, "Deviation tolerance");
  disc->add_option("--format", da.format, "json or text")->check(CLI::IsMember({"json", "text"}));

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? 0 : kError;
  }

  try {
    if (*classify) return run_classify(ca);
    if (*generate) return run_generate(ga);
    return run_disc(da);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kError;
  }
}
