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

#include "extremap/io.hpp"

#include <cmath>
#include <fstream>
#include <sstream>

#include "extremap/error.hpp"

namespace extremap::io {

namespace {

[[noreturn]] void fail(const std::string& field, const std::string& what) {
  throw Error(ErrorCode::ParseError, "field '" + field + "': " + what);
}

json number(double x) { return std::isfinite(x) ? json(x) : json(nullptr); }

double real_from_json(const json& j, const std::string& field) {
  if (!j.is_number()) fail(field, "expected a number");
  const double x = j.get<double>();
  if (!std::isfinite(x)) fail(field, "value is not finite");
  return x;
}

int int_from_json(const json& j, const std::string& field) {
  if (!j.is_number_integer()) fail(field, "expected an integer");
  return j.get<int>();
}

const json& member(const json& obj, const std::string& key, const std::string& field) {
  if (!obj.is_object()) fail(field, "expected an object");
  auto it = obj.find(key);
  if (it == obj.end()) fail(field.empty() ? key : field + "." + key, "missing");
  return *it;
}

std::string sub(const std::string& field, const std::string& key) {
  return field.empty() ? key : field + "." + key;
}

std::string idx(const std::string& field, std::size_t i) {
  return field + "[" + std::to_string(i) + "]";
}

std::vector<int> dims_from_json(const json& j, const std::string& field) {
  if (!j.is_array() || j.empty()) fail(field, "expected a non-empty array of block sizes");
  std::vector<int> out;
  for (std::size_t i = 0; i < j.size(); ++i) {
    const int d = int_from_json(j[i], idx(field, i));
    if (d < 1) fail(idx(field, i), "block size must be positive");
    out.push_back(d);
  }
  return out;
}

std::string form_label(const BlockCertificate& c) {
  if (const auto* c1 = std::get_if<Form1Certificate>(&c)) return c1->transposed ? "1t" : "1";
  return std::get<Form2Certificate>(c).adjoint_variant ? "2a" : "2";
}

}  // namespace

json to_json(cdouble z) { return json::array({z.real(), z.imag()}); }

json to_json(const CVector& v) {
  json out = json::array();
  for (Eigen::Index i = 0; i < v.size(); ++i) out.push_back(to_json(v(i)));
  return out;
}

json to_json(const CMatrix& m) {
  json out = json::array();
  for (Eigen::Index r = 0; r < m.rows(); ++r) {
    json row = json::array();
    for (Eigen::Index c = 0; c < m.cols(); ++c) row.push_back(to_json(m(r, c)));
    out.push_back(std::move(row));
  }
  return out;
}

cdouble complex_from_json(const json& j, const std::string& field) {
  if (!j.is_array() || j.size() != 2) fail(field, "expected [re, im]");
  return {real_from_json(j[0], idx(field, 0)), real_from_json(j[1], idx(field, 1))};
}

CVector vector_from_json(const json& j, const std::string& field) {
  if (!j.is_array()) fail(field, "expected an array");
  CVector v(static_cast<Eigen::Index>(j.size()));
  for (std::size_t i = 0; i < j.size(); ++i) {
    v(static_cast<Eigen::Index>(i)) = complex_from_json(j[i], idx(field, i));
  }
  return v;
}

CMatrix matrix_from_json(const json& j, const std::string& field) {
  if (!j.is_array() || j.empty()) fail(field, "expected a non-empty array of rows");
  const std::size_t rows = j.size();
  if (!j[0].is_array()) fail(idx(field, 0), "expected a row array");
  const std::size_t cols = j[0].size();
  CMatrix m(static_cast<Eigen::Index>(rows), static_cast<Eigen::Index>(cols));
  for (std::size_t r = 0; r < rows; ++r) {
    const std::string rf = idx(field, r);
    if (!j[r].is_array() || j[r].size() != cols) fail(rf, "ragged matrix row");
    for (std::size_t c = 0; c < cols; ++c) {
      m(static_cast<Eigen::Index>(r), static_cast<Eigen::Index>(c)) =
          complex_from_json(j[r][c], idx(rf, c));
    }
  }
  return m;
}

Superoperator parse_superoperator(std::string_view text) {
  json doc;
  try {
    doc = json::parse(text.begin(), text.end());
  } catch (const json::parse_error& e) {
    const std::size_t pos = std::min<std::size_t>(e.byte == 0 ? 0 : e.byte - 1, text.size());
    std::size_t line = 1, col = 1;
    for (std::size_t i = 0; i < pos; ++i) {
      if (text[i] == '\n') {
        ++line;
        col = 1;
      } else {
        ++col;
      }
    }
    throw Error(ErrorCode::ParseError, "line " + std::to_string(line) + ", column " +
                                           std::to_string(col) + ": malformed JSON");
  } catch (const json::out_of_range& e) {
    throw Error(ErrorCode::ParseError, std::string("number is not finite: ") + e.what());
  }
  return superoperator_from_json(doc);
}

Superoperator load_superoperator(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorCode::ParseError, "cannot open " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return parse_superoperator(ss.str());
}

json superoperator_to_json(const Superoperator& psi) {
  json images = json::array();
  for (int b = 0; b < psi.in_shape.count(); ++b) {
    for (int p = 0; p < psi.in_shape.dim(b); ++p) {
      for (int q = 0; q < psi.in_shape.dim(b); ++q) {
        json value = json::array();
        for (const CMatrix& m : psi.image(b, p, q).blocks) value.push_back(to_json(m));
        images.push_back({{"block", b}, {"p", p}, {"q", q}, {"value", std::move(value)}});
      }
    }
  }
  return {{"v", kFormatVersion},
          {"in_blocks", psi.in_shape.dims},
          {"out_blocks", psi.out_shape.dims},
          {"images", std::move(images)}};
}

Superoperator superoperator_from_json(const json& doc) {
  if (!doc.is_object()) fail("", "document must be an object");
  if (int_from_json(member(doc, "v", "v"), "v") != kFormatVersion) fail("v", "unsupported version");
  const BlockShape in(dims_from_json(member(doc, "in_blocks", "in_blocks"), "in_blocks"));
  const BlockShape out(dims_from_json(member(doc, "out_blocks", "out_blocks"), "out_blocks"));
  Superoperator psi = Superoperator::zero(in, out);
  std::vector<bool> seen(static_cast<std::size_t>(in.unit_count()), false);
  const json& images = member(doc, "images", "images");
  if (!images.is_array()) fail("images", "expected an array");
  for (std::size_t i = 0; i < images.size(); ++i) {
    const std::string f = idx("images", i);
    const json& e = images[i];
    const int b = int_from_json(member(e, "block", f), sub(f, "block"));
    if (b < 0 || b >= in.count()) fail(sub(f, "block"), "input block out of range");
    const int p = int_from_json(member(e, "p", f), sub(f, "p"));
    const int q = int_from_json(member(e, "q", f), sub(f, "q"));
    if (p < 0 || p >= in.dim(b)) fail(sub(f, "p"), "index out of range");
    if (q < 0 || q >= in.dim(b)) fail(sub(f, "q"), "index out of range");
    const auto unit = static_cast<std::size_t>(in.unit_offset(b) + p * in.dim(b) + q);
    if (seen[unit]) fail(f, "duplicate matrix unit");
    seen[unit] = true;
    const json& value = member(e, "value", f);
    const std::string vf = sub(f, "value");
    if (!value.is_array() || value.size() != static_cast<std::size_t>(out.count())) {
      fail(vf, "expected one matrix per output block");
    }
    BlockElement& img = psi.images[unit];
    for (int o = 0; o < out.count(); ++o) {
      const std::string mf = idx(vf, static_cast<std::size_t>(o));
      CMatrix m = matrix_from_json(value[static_cast<std::size_t>(o)], mf);
      if (m.rows() != out.dim(o) || m.cols() != out.dim(o)) fail(mf, "matrix size differs from out_blocks");
      img.blocks[static_cast<std::size_t>(o)] = std::move(m);
    }
  }
  for (int b = 0; b < in.count(); ++b) {
    for (int p = 0; p < in.dim(b); ++p) {
      for (int q = 0; q < in.dim(b); ++q) {
        if (!seen[static_cast<std::size_t>(in.unit_offset(b) + p * in.dim(b) + q)]) {
          fail("images", "missing matrix unit block=" + std::to_string(b) + " p=" +
                             std::to_string(p) + " q=" + std::to_string(q));
        }
      }
    }
  }
  return psi;
}

json to_json(const BlockCertificate& cert) {
  json out = {{"form", form_label(cert)}, {"input_block", input_block_of(cert)}};
  if (const auto* c1 = std::get_if<Form1Certificate>(&cert)) {
    out["u"] = to_json(c1->u);
    out["v"] = to_json(c1->v);
  } else {
    const auto& c2 = std::get<Form2Certificate>(cert);
    out["w"] = to_json(c2.w);
    out["frame"] = to_json(c2.frame);
  }
  return out;
}

BlockCertificate certificate_from_json(const json& j, const std::string& field) {
  const json& form = member(j, "form", field);
  if (!form.is_string()) fail(sub(field, "form"), "expected a string");
  const std::string f = form.get<std::string>();
  const int in_block = int_from_json(member(j, "input_block", field), sub(field, "input_block"));
  if (f == "1" || f == "1t") {
    return Form1Certificate{in_block, matrix_from_json(member(j, "u", field), sub(field, "u")),
                            matrix_from_json(member(j, "v", field), sub(field, "v")), f == "1t"};
  }
  if (f == "2" || f == "2a") {
    return Form2Certificate{in_block, vector_from_json(member(j, "w", field), sub(field, "w")),
                            matrix_from_json(member(j, "frame", field), sub(field, "frame")),
                            f == "2a"};
  }
  fail(sub(field, "form"), "unknown form '" + f + "'");
}

json to_json(const Witness& w) {
  return {{"out_block", w.out_block}, {"x", to_json(w.x)}, {"y", to_json(w.y)},
          {"defect", number(w.defect)}, {"replays", w.replays}};
}

json to_json(const BlockVerdict& v) {
  if (const auto* r = std::get_if<Rejected>(&v)) {
    return {{"verdict", "Rejected"}, {"reason", std::string(to_string(r->reason))},
            {"detail", r->detail}, {"witness", to_json(r->witness)}};
  }
  if (const auto* c1 = std::get_if<Form1Certificate>(&v)) {
    return {{"verdict", "Form1"}, {"certificate", to_json(BlockCertificate(*c1))}};
  }
  return {{"verdict", "Form2"},
          {"certificate", to_json(BlockCertificate(std::get<Form2Certificate>(v)))}};
}

json to_json(const GlobalCertificate& cert) {
  json nd = json::array();
  for (const NondegenerateBlock& b : cert.nondegenerate) {
    nd.push_back({{"out_block", b.out_block}, {"in_block", b.in_block}, {"anti", b.anti},
                  {"w", to_json(b.w)}, {"e1", to_json(b.e1)}, {"e2", to_json(b.e2)},
                  {"embedding", to_json(b.embedding)}});
  }
  return {{"e_blocks", cert.e_blocks},
          {"degenerate_blocks", cert.degenerate_blocks},
          {"target_blocks", cert.target_shape.dims},
          {"nondegenerate", std::move(nd)},
          {"residual", number(cert.residual)}};
}

json to_json(const PureWitness& w) { return {{"out_block", w.out_block}, {"x", to_json(w.x)}}; }

json extremal_report(const GlobalClassification& c, double tol, std::uint64_t seed) {
  json blocks = json::array();
  for (std::size_t o = 0; o < c.verdicts.size(); ++o) {
    json b = to_json(c.verdicts[o]);
    b["out_block"] = static_cast<int>(o);
    b["residual"] = number(c.residuals[o]);
    blocks.push_back(std::move(b));
  }
  json out = {{"mode", "extremal"}, {"accepted", c.accepted}, {"tol", tol}, {"seed", seed},
              {"residual", number(c.residual)}, {"blocks", std::move(blocks)}};
  if (c.certificate) out["certificate"] = to_json(*c.certificate);
  return out;
}

json pure_report(const PureClassification& c, double tol, std::uint64_t seed) {
  json out = {{"mode", "pure"}, {"accepted", c.accepted}, {"tol", tol}, {"seed", seed},
              {"extremal", extremal_report(c.global, tol, seed)}};
  if (c.reason) out["reason"] = std::string(to_string(*c.reason));
  if (c.witness) out["witness"] = to_json(*c.witness);
  if (c.certificate) {
    json proj = json::array(), emb = json::array();
    for (const CMatrix& e : c.certificate->range_projection) proj.push_back(to_json(e));
    for (const CMatrix& u : c.certificate->embedding) emb.push_back(to_json(u));
    out["certificate"] = {{"target_blocks", c.certificate->target_shape.dims},
                          {"range_projection", std::move(proj)},
                          {"embedding", std::move(emb)},
                          {"residual", number(c.certificate->residual)}};
  }
  return out;
}

json jordan_report(const JordanReport& r, double tol, std::uint64_t seed) {
  json labels = json::array();
  for (BlockLabel l : r.block_labels) labels.push_back(std::string(to_string(l)));
  json out = {{"mode", "jordan"},
              {"accepted", r.is_jordan},
              {"tol", tol},
              {"seed", seed},
              {"star_preserving", r.star_preserving},
              {"jordan_identity", r.jordan_identity},
              {"unit_is_projection", r.unit_is_projection},
              {"compressed_by_unit", r.compressed_by_unit},
              {"max_jordan_defect", number(r.max_jordan_defect)},
              {"labels", std::move(labels)}};
  if (r.is_jordan) {
    const HomAntiSplit s = split_hom_antihom(r);
    out["split"] = {{"hom", s.hom}, {"anti", s.anti}};
  }
  return out;
}

double replay_report(const Superoperator& psi, const json& report) {
  const json& rep = report.value("mode", "") == "pure" ? report.at("extremal") : report;
  double gap = 0.0;
  const json& blocks = member(rep, "blocks", "blocks");
  for (std::size_t i = 0; i < blocks.size(); ++i) {
    const json& b = blocks[i];
    if (!b.contains("certificate")) continue;
    const std::string f = idx("blocks", i);
    const int o = int_from_json(member(b, "out_block", f), sub(f, "out_block"));
    const BlockCertificate cert = certificate_from_json(b.at("certificate"), sub(f, "certificate"));
    const int in_block = input_block_of(cert);
    const BlockMap target = restrict_map(psi, in_block, o);
    const double residual = max_unit_residual(target, reconstruct(cert, target.k, target.h));
    gap = std::max(gap, std::abs(residual - real_from_json(b.at("residual"), sub(f, "residual"))));
  }
  return gap;
}

}  // namespace extremap::io
