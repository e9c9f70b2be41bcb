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

#include <doctest.h>

#include <string>

#include "extremap/error.hpp"
#include "extremap/io.hpp"
#include "support.hpp"

using namespace extremap;
using namespace testsupport;
using json = nlohmann::json;

namespace {

std::string message_of(const std::string& text) {
  try {
    io::parse_superoperator(text);
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::ParseError);
    return e.what();
  }
  FAIL("expected a parse error");
  return {};
}

Superoperator random_mixed(Rng& rng) {
  const std::vector<std::string> forms = {"1", "1t", "2", "2a"};
  std::vector<GeneratedBlock> gs;
  std::vector<int> in, out;
  for (int i = 0; i < uniform_int(rng, 1, 3); ++i) {
    gs.push_back(random_form(rng, forms[static_cast<std::size_t>(uniform_int(rng, 0, 3))], 4, 2));
    in.push_back(gs.back().k);
    out.push_back(gs.back().h);
  }
  Superoperator psi = Superoperator::zero(BlockShape(in), BlockShape(out));
  for (std::size_t i = 0; i < gs.size(); ++i) add_route(psi, static_cast<int>(i), static_cast<int>(i), gs[i].map);
  return psi;
}

const char* kSmall = R"({
  "v": 1,
  "in_blocks": [1],
  "out_blocks": [1],
  "images": [ { "block": 0, "p": 0, "q": 0, "value": [ [[ [1.0, 0.0] ]] ] } ]
})";

}  // namespace

TEST_CASE("superoperator JSON round trip is exact") {
  Rng rng(81);
  for (int t = 0; t < 20; ++t) {
    const Superoperator psi = random_mixed(rng);
    const std::string text = io::superoperator_to_json(psi).dump();
    const Superoperator back = io::parse_superoperator(text);
    CHECK(back.in_shape == psi.in_shape);
    CHECK(back.out_shape == psi.out_shape);
    CHECK(max_unit_residual(back, psi) == 0.0);
    CHECK(io::superoperator_to_json(back).dump() == text);
  }
}

TEST_CASE("a minimal document parses") {
  const Superoperator psi = io::parse_superoperator(kSmall);
  CHECK(psi.image(0, 0, 0).blocks[0](0, 0) == cdouble(1.0));
}

TEST_CASE("malformed JSON reports line and column") {
  const std::string text = kSmall;
  const std::string msg = message_of(text.substr(0, 60));
  CHECK(msg.find("line") != std::string::npos);
  const std::string bad = "{\n  \"v\": 1,\n  \"in_blocks\": [1,,]\n}";
  CHECK(message_of(bad).find("line 3") != std::string::npos);
}

TEST_CASE("schema violations name the field") {
  json doc = json::parse(kSmall);
  auto msg = [](const json& d) { return message_of(d.dump()); };

  json v2 = doc;
  v2["v"] = 2;
  CHECK(msg(v2).find("'v'") != std::string::npos);

  json missing = doc;
  missing["images"] = json::array();
  CHECK(msg(missing).find("missing matrix unit") != std::string::npos);

  json dup = doc;
  dup["images"].push_back(dup["images"][0]);
  CHECK(msg(dup).find("duplicate") != std::string::npos);

  json big = doc;
  big["images"][0]["value"][0][0][0] = json::array({1.0, 2.0, 3.0});
  CHECK(msg(big).find("images[0].value[0][0][0]") != std::string::npos);

  json wrong = doc;
  wrong["out_blocks"] = json::array({2});
  CHECK(msg(wrong).find("matrix size") != std::string::npos);

  json range = doc;
  range["images"][0]["p"] = 3;
  CHECK(msg(range).find("images[0].p") != std::string::npos);

  CHECK(message_of(R"({"v":1,"in_blocks":[1],"out_blocks":[1],"images":[{"block":0,"p":0,"q":0,"value":[[[[1e999,0]]]]}]})")
            .find("finite") != std::string::npos);
}

TEST_CASE("certificates round trip through JSON") {
  Rng rng(82);
  for (const char* form : {"1", "1t", "2", "2a"}) {
    const GeneratedBlock g = random_form(rng, form, 5, 2);
    const SingleBlockResult r = classify_single_block(g.map);
    REQUIRE_FALSE(is_rejected(r.verdict));
    const BlockCertificate cert = std::visit(
        [](const auto& c) -> BlockCertificate {
          if constexpr (std::is_same_v<std::decay_t<decltype(c)>, Rejected>) {
            throw std::logic_error("rejected");
          } else {
            return c;
          }
        },
        r.verdict);
    const json j = json::parse(io::to_json(cert).dump());
    const BlockCertificate back = io::certificate_from_json(j);
    CHECK(max_unit_residual(reconstruct(back, 5, 2), reconstruct(cert, 5, 2)) == 0.0);
    CHECK(j["form"] == form);
  }
}

TEST_CASE("reports replay their residuals") {
  Rng rng(83);
  for (int t = 0; t < 20; ++t) {
    const Superoperator psi = random_mixed(rng);
    const json ext = json::parse(io::extremal_report(classify_extremal_global(psi), 1e-8, 7).dump(2));
    CHECK(ext["accepted"] == true);
    CHECK(ext["seed"] == 7);
    CHECK(io::replay_report(psi, ext) <= 1e-12);
    const json pure = json::parse(io::pure_report(classify_pure_preserving(psi), 1e-8, 7).dump(2));
    CHECK(io::replay_report(psi, pure) <= 1e-12);
  }
}

TEST_CASE("rejected blocks carry witnesses in the report") {
  const json r = io::extremal_report(classify_extremal_global(schur_counterexample(2)), 1e-8, 0);
  CHECK(r["accepted"] == false);
  CHECK(r["blocks"][0]["verdict"] == "Rejected");
  CHECK(r["blocks"][0]["reason"] == "PhaseDefect");
  CHECK(r["blocks"][0]["witness"]["replays"] == true);
  CHECK(r["blocks"][0]["residual"].is_null());
}

TEST_CASE("jordan report lists labels and the split") {
  Rng rng(84);
  const Superoperator psi = jordan_compression(rng, BlockShape({2}), {{0, false, 2}, {0, true, 2}});
  const json r = io::jordan_report(is_jordan_morphism(psi, 4, 1), 1e-8, 1);
  CHECK(r["accepted"] == true);
  CHECK(r["labels"] == json::array({"Homomorphism", "Antihomomorphism"}));
  CHECK(r["split"]["anti"] == json::array({1}));
}
