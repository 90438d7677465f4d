#include <cstdio>
#include <filesystem>

#include "doctest.h"
#include "oqec/channel.hpp"
#include "oqec/code_zoo.hpp"
#include "oqec/io.hpp"
#include "oracles.hpp"

using namespace oqec;

TEST_SUITE("io") {

TEST_CASE("channel JSON round trip preserves the map exactly") {
  for (std::uint64_t seed = 0; seed < 4; ++seed) {
    const QuantumChannel ch = random_channel(3, 2, seed);
    const Json j = channel_to_json(ch);
    const QuantumChannel back = channel_from_json(j);
    CHECK(back.dim() == ch.dim());
    CHECK(back.n_kraus() == ch.n_kraus());
    CHECK(back.label() == ch.label());
    // nlohmann prints shortest-round-trip doubles, so entries come back
    // bit-identical
    for (std::size_t a = 0; a < ch.n_kraus(); ++a)
      CHECK((back.kraus()[a] - ch.kraus()[a]).norm() == 0.0);
  }
}

TEST_CASE("decomposition JSON round trip") {
  const Fixture fix = fixture("damping_on_A");
  const Json j = decomposition_to_json(*fix.decomp);
  auto [decomp, mu] = decomposition_from_json(j);
  CHECK(decomp.m == 2);
  CHECK(decomp.n == 2);
  CHECK((decomp.embedding - fix.decomp->embedding).norm() == 0.0);
  CHECK((mu.p_frak - fix.units->p_frak).norm() <= 1e-14);
}

TEST_CASE("malformed inputs are rejected with Error") {
  CHECK_THROWS_AS(channel_from_json(Json{{"dim", 2}}), Error);
  CHECK_THROWS_AS(matrix_from_json(Json::array()), Error);
  // ragged rows
  Json ragged = Json::array();
  ragged.push_back(Json::array({Json::array({1.0, 0.0})}));
  ragged.push_back(Json::array(
      {Json::array({1.0, 0.0}), Json::array({0.0, 0.0})}));
  CHECK_THROWS_AS(matrix_from_json(ragged), Error);
  // an entry that is not an [re, im] pair
  Json bad_entry = Json::array();
  bad_entry.push_back(Json::array({Json::array({1.0, 0.0, 3.0})}));
  CHECK_THROWS_AS(matrix_from_json(bad_entry), Error);
  // Kraus shape disagreeing with dim
  Json wrong = channel_to_json(identity_channel(2));
  wrong["dim"] = 3;
  CHECK_THROWS_AS(channel_from_json(wrong), DimensionMismatch);
}

TEST_CASE("file IO: write, read back, missing file") {
  const std::string path =
      (std::filesystem::temp_directory_path() / "oqec_io_test.json").string();
  const QuantumChannel ch = random_channel(2, 2, 9);
  write_json_file(path, channel_to_json(ch));
  const QuantumChannel back = channel_from_json(read_json_file(path));
  CHECK(channels_equal(ch, back));
  std::remove(path.c_str());
  CHECK_THROWS_AS(read_json_file(path), Error);
}

TEST_CASE("lambda tensor serialization shape") {
  LambdaTensor lam;
  lam.kind = LambdaKind::Unified;
  lam.shape = {2, 2, 2, 2};
  lam.values.assign(16, Complex(0.25, -1.0));
  const Json j = lambda_to_json(lam);
  REQUIRE(j.is_array());
  REQUIRE(j.size() == 2);
  CHECK(j[0][0][0][0][0].get<double>() == 0.25);
  CHECK(j[1][1][1][1][1].get<double>() == -1.0);
}

TEST_CASE("verdict serialization carries the witness on failure") {
  const Fixture db = fixture("damping_on_B");
  const NsVerdict verdict = check_ns(db.channel, *db.decomp, *db.units, 1);
  const Json j = ns_verdict_to_json(verdict);
  CHECK(j["ok"].get<bool>() == false);
  CHECK(j["witness"].is_object());
  const Json ok = ns_verdict_to_json(
      check_ns(identity_channel(4), *db.decomp, *db.units, 1));
  CHECK(ok["ok"].get<bool>() == true);
  CHECK(ok["witness"].is_null());
}

}  // TEST_SUITE
