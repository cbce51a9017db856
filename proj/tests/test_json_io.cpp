#include <doctest.h>

#include "chancode/json_io.hpp"
#include "chancode/sampling.hpp"

using namespace chancode;
using nlohmann::json;

TEST_CASE("ensemble JSON: both state encodings parse") {
  const json j = json::parse(R"({
    "dim": 2,
    "items": [
      {"prior": 0.5, "state": {"bloch": [0, 0, 1]}},
      {"prior": 0.5, "state": {"matrix": [[[0.5, 0], [0.25, 0]], [[0.25, 0], [0.5, 0]]]}}
    ]
  })");
  const Ensemble e = ensemble_from_json(j);
  REQUIRE(e.size() == 2);
  CHECK(state_to_bloch(e.items()[0].state).z == doctest::Approx(1.0));
  CHECK(state_to_bloch(e.items()[1].state).x == doctest::Approx(0.5));
}

TEST_CASE("ensemble JSON round trip on random inputs") {
  SplitMix64 rng(71);
  for (int trial = 0; trial < 25; ++trial) {
    const Ensemble e = random_ensemble(rng, 2 + static_cast<int>(rng.next_below(3)), false);
    const Ensemble back = ensemble_from_json(ensemble_to_json(e));
    REQUIRE(back.size() == e.size());
    for (std::size_t i = 0; i < e.size(); ++i) {
      CHECK(std::abs(back.items()[i].prior - e.items()[i].prior) < 1e-12);
      CHECK(max_abs_diff(back.items()[i].state.mat(), e.items()[i].state.mat()) < 1e-12);
    }
  }
}

TEST_CASE("channel JSON: every kind constructs and round trips as a map") {
  SplitMix64 rng(72);
  const std::vector<json> specs = {
      json::parse(R"({"kind":"flip","axis":"X","p":0.25})"),
      json::parse(R"({"kind":"flip","axis":"Y","p":0.7})"),
      json::parse(R"({"kind":"depolarizing","eta":0.5})"),
      json::parse(R"({"kind":"fixed_state","eta":0.3,"sigma":{"bloch":[0.2,0.1,-0.4]}})"),
  };
  for (const json& spec : specs) {
    const KrausChannel n = channel_from_json(spec);
    const KrausChannel back = channel_from_json(channel_to_json_kraus(n));
    for (int j = 0; j < 4; ++j) {
      CHECK(max_abs_diff(apply_mat(n, pauli(j)), apply_mat(back, pauli(j))) < 1e-12);
    }
  }
  const KrausChannel n = random_channel(rng);
  const KrausChannel back = channel_from_json(channel_to_json_kraus(n));
  CHECK(max_abs_diff(apply_mat(n, pauli(2)), apply_mat(back, pauli(2))) < 1e-12);
}

TEST_CASE("channel JSON rejects malformed and non-CPTP specs") {
  CHECK_THROWS_AS(channel_from_json(json::parse(R"({"kind":"warp"})")), ConfigError);
  CHECK_THROWS_AS(channel_from_json(json::parse(R"({"kind":"flip","axis":"Z","p":0.2})")),
                  ConfigError);
  // Kraus set that is not trace preserving.
  CHECK_THROWS_AS(
      channel_from_json(json::parse(R"({"kind":"kraus","ops":[[[[0.5,0],[0,0]],[[0,0],[0.5,0]]]]})")),
      ConfigError);
}

TEST_CASE("povm JSON round trip") {
  const Povm z({CMat{{1.0, 0.0}, {0.0, 0.0}}, CMat{{0.0, 0.0}, {0.0, 1.0}}});
  const Povm back = povm_from_json(povm_to_json(z));
  CHECK(max_abs_diff(back.elements()[0], z.elements()[0]) < 1e-15);
  CHECK_THROWS_AS(povm_from_json(json::array()), ConfigError);
}

TEST_CASE("transcript JSONL shape") {
  ProtocolTranscript t{{}, ProtocolMode::SAMPLED, 9};
  t.rounds.push_back({0, 1, 7, 1});
  t.rounds.push_back({1, 0, 11, 0});
  const std::string lines = transcript_to_jsonl(t);
  std::istringstream in(lines);
  std::string line;
  REQUIRE(std::getline(in, line));
  const json first = json::parse(line);
  CHECK(first["round"] == 0);
  CHECK(first["x"] == 1);
  CHECK(first["j"] == 7);
  CHECK(first["outcome"] == 1);
  REQUIRE(std::getline(in, line));
  CHECK(json::parse(line)["j"] == 11);
  CHECK_FALSE(std::getline(in, line));
}

TEST_CASE("counts JSON shape") {
  ShotResult result{{{"00", 7990}, {"01", 0}, {"10", 10}, {"11", 0}}, 8000};
  const json j = counts_to_json(result);
  CHECK(j["shots"] == 8000);
  CHECK(j["counts"]["00"] == 7990);
  CHECK(j["counts"]["10"] == 10);
}
