// Copyright 2026 The snnfc Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include <doctest.h>

#include <cmath>

#include "snnfc/encoding.hpp"
#include "snnfc/errors.hpp"
#include "snnfc/prng.hpp"
#include "testutil.hpp"

using namespace snnfc;

namespace {

FeatureSchema keyed_schema(int n_keys, int card) {
  FeatureSchema s;
  s.name = "enc-toy";
  for (int k = 0; k < n_keys; ++k) {
    KeySpec key;
    key.name = "k" + std::to_string(k);
    for (int v = 0; v < card; ++v) key.values.push_back("v" + std::to_string(v));
    key.values.push_back("?");
    s.keys.push_back(std::move(key));
  }
  s.class_names = {"a", "b"};
  return s;
}

}  // namespace

TEST_SUITE_BEGIN("encoding");

TEST_CASE("codebook is a pure function of schema and config") {
  FeatureSchema schema = keyed_schema(6, 4);
  EncodingConfig config;
  config.master_seed = 99;
  Codebook a(schema, config);
  Codebook b(schema, config);
  CHECK(a.input_neurons() == 6 * 20);
  for (int k = 0; k < 6; ++k)
    for (int v = 0; v < schema.keys[static_cast<size_t>(k)].cardinality(); ++v)
      CHECK(a.sub_pattern(k, v) == b.sub_pattern(k, v));

  EncodingConfig other = config;
  other.master_seed = 100;
  Codebook c(schema, other);
  bool any_diff = false;
  for (int k = 0; k < 6 && !any_diff; ++k)
    any_diff = !(a.sub_pattern(k, 0) == c.sub_pattern(k, 0));
  CHECK(any_diff);
}

TEST_CASE("codebook spike rate matches the configured expectation") {
  FeatureSchema schema = keyed_schema(4, 5);
  EncodingConfig config;
  config.spike_rate = 4.0;
  config.n_steps = 80;
  Codebook cb(schema, config);
  long total = 0, cells = 0;
  for (int k = 0; k < 4; ++k)
    for (int v = 0; v < schema.keys[static_cast<size_t>(k)].cardinality(); ++v) {
      total += cb.sub_pattern(k, v).total_spikes();
      cells += config.n_per_key;
    }
  const double mean_per_neuron = static_cast<double>(total) / static_cast<double>(cells);
  CHECK(mean_per_neuron == doctest::Approx(4.0).epsilon(0.1));
}

TEST_CASE("shared keys produce identical groups, differing key its own group") {
  // Five keys of 20 neurons; records agree everywhere except the last key.
  FeatureSchema schema = keyed_schema(5, 3);
  EncodingConfig config;
  Codebook cb(schema, config);
  REQUIRE(cb.input_neurons() == 100);
  Record r1{{0, 1, 2, 0, 1}, 0};
  Record r2{{0, 1, 2, 0, 2}, 0};
  SpikePattern p1 = encode_record(r1, cb);
  SpikePattern p2 = encode_record(r2, cb);
  CHECK(cb.group_begin(4) == 80);
  for (int n = 0; n < 80; ++n)
    for (int t = 0; t < config.n_steps; ++t) REQUIRE(p1.at(n, t) == p2.at(n, t));
  bool differs = false;
  for (int n = 80; n < 100 && !differs; ++n)
    for (int t = 0; t < config.n_steps && !differs; ++t)
      if (p1.at(n, t) != p2.at(n, t)) differs = true;
  CHECK(differs);
}

TEST_CASE("identical records encode to bit-identical patterns") {
  FeatureSchema schema = keyed_schema(6, 4);
  Codebook cb(schema, EncodingConfig{});
  Record r{{3, 0, 1, 2, 0, 1}, 0};
  CHECK(encode_record(r, cb) == encode_record(r, cb));
}

TEST_CASE("encode_record rejects out-of-range value ids") {
  FeatureSchema schema = keyed_schema(2, 3);
  Codebook cb(schema, EncodingConfig{});
  Record bad{{0, 99}, 0};
  CHECK_THROWS_AS(encode_record(bad, cb), DataError);
}

TEST_CASE("encoding inner product grows with the number of shared pairs") {
  // Monte Carlo: mean inner product strictly increases with shared-pair count,
  // and matches shared-exact + expected-random-overlap decomposition.
  const int K = 6;
  FeatureSchema schema = keyed_schema(K, 8);
  EncodingConfig config;
  Codebook cb(schema, config);
  Rng rng(17);
  std::vector<double> mean_dot(static_cast<size_t>(K) + 1, 0.0);
  std::vector<double> mean_shared_energy(static_cast<size_t>(K) + 1, 0.0);
  const int trials = 1200;
  for (int s = 0; s <= K; ++s) {
    for (int trial = 0; trial < trials; ++trial) {
      Record a, b;
      for (int k = 0; k < K; ++k) {
        int va = static_cast<int>(rng.next_below(8));
        a.values.push_back(va);
        if (k < s) {
          b.values.push_back(va);
        } else {
          int vb = static_cast<int>(rng.next_below(7));
          if (vb >= va) ++vb;  // guaranteed different
          b.values.push_back(vb);
        }
      }
      const SpikePattern pa = encode_record(a, cb);
      const SpikePattern pb = encode_record(b, cb);
      mean_dot[static_cast<size_t>(s)] += static_cast<double>(pattern_dot(pa, pb));
      for (int k = 0; k < s; ++k)
        mean_shared_energy[static_cast<size_t>(s)] +=
            static_cast<double>(cb.sub_pattern(k, a.values[static_cast<size_t>(k)]).total_spikes());
    }
    mean_dot[static_cast<size_t>(s)] /= trials;
    mean_shared_energy[static_cast<size_t>(s)] /= trials;
  }
  for (int s = 1; s <= K; ++s)
    CHECK(mean_dot[static_cast<size_t>(s)] > mean_dot[static_cast<size_t>(s - 1)]);

  // Expected random-overlap term: (spike_rate^2 / n_steps) * n_per_key per
  // non-shared key.
  const double expected_overlap = config.spike_rate * config.spike_rate /
                                  static_cast<double>(config.n_steps) * config.n_per_key;
  for (int s = 0; s <= K; ++s) {
    const double expected =
        mean_shared_energy[static_cast<size_t>(s)] + expected_overlap * (K - s);
    CHECK(mean_dot[static_cast<size_t>(s)] == doctest::Approx(expected).epsilon(0.08));
  }
}

TEST_CASE("van Rossum distance: identity, closed form, oracle agreement") {
  Rng rng(5);
  SpikePattern x = testutil::random_pattern(4, 60, 0.08, rng);
  CHECK(van_rossum_distance(x, x, 10.0) == 0.0);

  // Single neuron, spike at t=0 vs empty train: the discretized closed form
  // is d^2 = (1/tau) * sum_t exp(-2t/tau).
  const int T = 80;
  const double tau = 50.0;
  SpikePattern one(1, T), empty(1, T);
  one.set(0, 0, 1);
  double closed = 0.0;
  for (int t = 0; t < T; ++t) closed += std::exp(-2.0 * t / tau);
  closed = std::sqrt(closed / tau);
  CHECK(van_rossum_distance(one, empty, tau) == doctest::Approx(closed).epsilon(1e-12));
  CHECK(van_rossum_distance(one, empty, tau) ==
        doctest::Approx(testutil::van_rossum_bruteforce(one, empty, tau)).epsilon(1e-10));

  for (int i = 0; i < 20; ++i) {
    SpikePattern a = testutil::random_pattern(3, 40, 0.1, rng);
    SpikePattern b = testutil::random_pattern(3, 40, 0.1, rng);
    CHECK(van_rossum_distance(a, b, 10.0) ==
          doctest::Approx(testutil::van_rossum_bruteforce(a, b, 10.0)).epsilon(1e-10));
  }
}

TEST_CASE("van Rossum metric axioms over 1000 random triples") {
  Rng rng(23);
  for (int i = 0; i < 1000; ++i) {
    SpikePattern a = testutil::random_pattern(2, 30, 0.12, rng);
    SpikePattern b = testutil::random_pattern(2, 30, 0.12, rng);
    SpikePattern c = testutil::random_pattern(2, 30, 0.12, rng);
    const double dab = van_rossum_distance(a, b, 7.0);
    const double dba = van_rossum_distance(b, a, 7.0);
    const double dac = van_rossum_distance(a, c, 7.0);
    const double dbc = van_rossum_distance(b, c, 7.0);
    REQUIRE(dab >= 0.0);
    REQUIRE(dab == doctest::Approx(dba).epsilon(1e-12));
    REQUIRE(dac <= dab + dbc + 1e-9);
    REQUIRE(van_rossum_distance(a, a, 7.0) == 0.0);
  }
}

TEST_CASE("van Rossum distance rejects shape mismatches") {
  SpikePattern a(2, 10), b(3, 10), c(2, 11);
  CHECK_THROWS_AS(van_rossum_distance(a, b, 5.0), ConfigError);
  CHECK_THROWS_AS(van_rossum_distance(a, c, 5.0), ConfigError);
}

TEST_CASE("generate_targets produces distinct, well-separated patterns") {
  TargetConfig config;
  config.seed = 3;
  TargetSet set = generate_targets(3, 3, config);
  REQUIRE(set.class_count() == 3);
  for (int a = 0; a < 3; ++a)
    for (int b = a + 1; b < 3; ++b) {
      CHECK(!(set.patterns[static_cast<size_t>(a)] == set.patterns[static_cast<size_t>(b)]));
      CHECK(van_rossum_distance(set.patterns[static_cast<size_t>(a)],
                                set.patterns[static_cast<size_t>(b)], config.tau) >
            config.separation_floor);
    }
  for (const auto& p : set.patterns) CHECK(p.total_spikes() == config.spikes_per_target);

  TargetSet again = generate_targets(3, 3, config);
  for (int c = 0; c < 3; ++c)
    CHECK(set.patterns[static_cast<size_t>(c)] == again.patterns[static_cast<size_t>(c)]);
}

TEST_CASE("generate_targets single class needs no pairwise constraint") {
  TargetConfig config;
  TargetSet set = generate_targets(1, 1, config);
  CHECK(set.class_count() == 1);
  CHECK(set.patterns[0].total_spikes() == config.spikes_per_target);
}

TEST_CASE("generate_targets fails cleanly when the window is too small") {
  TargetConfig config;
  config.n_steps = 2;
  config.spikes_per_target = 2;
  config.max_attempts = 50;
  // Two classes on one neuron with a full window: patterns are forced equal.
  CHECK_THROWS_AS(generate_targets(2, 1, config), ConfigError);
}

TEST_CASE("decode_rate follows max count with lowest-index ties") {
  SpikePattern out(3, 10);
  std::vector<int> class_map = {0, 1, 2};
  // counts 3, 7, 2
  for (int t = 0; t < 3; ++t) out.set(0, t, 1);
  for (int t = 0; t < 7; ++t) out.set(1, t, 1);
  for (int t = 0; t < 2; ++t) out.set(2, t, 1);
  CHECK(decode_rate(out, class_map) == 1);

  SpikePattern zeros(3, 10);
  CHECK(decode_rate(zeros, class_map) == 0);

  SpikePattern tie(3, 10);
  for (int t = 0; t < 5; ++t) {
    tie.set(0, t, 1);
    tie.set(1, t, 1);
  }
  tie.set(2, 0, 1);
  CHECK(decode_rate(tie, class_map) == 0);

  std::vector<int> remap = {2, 0, 1};
  CHECK(decode_rate(tie, remap) == 2);
}

TEST_CASE("decode_temporal picks the nearest target") {
  TargetConfig config;
  config.seed = 11;
  TargetSet set = generate_targets(3, 3, config);

  // Exact target -> its own class, for every class.
  for (int c = 0; c < 3; ++c)
    CHECK(decode_temporal(set.patterns[static_cast<size_t>(c)], set) == c);

  // Empty output -> the class whose target has the least kernel energy,
  // computed explicitly.
  SpikePattern empty(3, config.n_steps);
  int expected = 0;
  double best = 1e300;
  for (int c = 0; c < 3; ++c) {
    double d = van_rossum_distance(empty, set.patterns[static_cast<size_t>(c)], config.tau);
    if (d < best) {
      best = d;
      expected = c;
    }
  }
  CHECK(decode_temporal(empty, set) == expected);
}

TEST_CASE("pattern self inner product equals its spike count") {
  Rng rng(31);
  for (int i = 0; i < 50; ++i) {
    SpikePattern p = testutil::random_pattern(5, 40, 0.1, rng);
    CHECK(pattern_dot(p, p) == p.total_spikes());
  }
}

TEST_SUITE_END();
