#include "shortlist/config.hpp"
#include "shortlist/errors.hpp"

#include <doctest.h>

using namespace shortlist;

TEST_CASE("fnv1a64") {
  CHECK(fnv1a64("") == 0xcbf29ce484222325ULL);
  CHECK(fnv1a64("a") == 0xaf63dc4c8601ec8cULL);
  CHECK(fnv1a64("foobar") == 0x85944171f73967e8ULL);
}

TEST_CASE("config round trip") {
  const auto c = load_config(default_config_path());
  CHECK(c.machine_version == "toy-v1");
  CHECK(c.n_values == std::vector<int>{4, 6, 8});
  CHECK(c.c_star > 0);
  const auto text = format_config(c);
  const auto back = parse_config(text);
  CHECK(back == c);
  CHECK(format_config(back) == text);
  CHECK(config_hash(back).size() == 16);
}

TEST_CASE("config hash covers only result keys") {
  const auto c = load_config(default_config_path());
  auto moved = c;
  moved.output_dir = "/elsewhere";
  moved.workers = 8;
  CHECK(config_hash(moved) == config_hash(c));
  auto seeded = c;
  seeded.master_seed ^= 1;
  CHECK(config_hash(seeded) != config_hash(c));
  auto frozen = c;
  frozen.c_star += 1;
  CHECK(config_hash(frozen) != config_hash(c));
}

TEST_CASE("config parse errors") {
  CHECK_THROWS(parse_config("no_such_key=1\n"));
  CHECK_THROWS(parse_config("k_d\n"));
  const auto c = parse_config("# comment\n\nmaster_seed=0x10\ndeltas=1/2,1/8\n");
  CHECK(c.master_seed == 16);
  CHECK(c.deltas == std::vector<Rational>{Rational(1, 2), Rational(1, 8)});
}

TEST_CASE("lab and builder settings follow the config") {
  auto c = load_config(default_config_path());
  c.table_n_max = 9;
  c.sampled_trials = 77;
  const auto lab = lab_config(c);
  CHECK(lab.table_n_max == 9);
  CHECK(lab.search.sampled_trials == 77);
  CHECK(lab.master_seed == c.master_seed);
  const auto k = builder_constants(c);
  CHECK(k.k_d == c.k_d);
  CHECK(k.k_m == c.k_m);
}
