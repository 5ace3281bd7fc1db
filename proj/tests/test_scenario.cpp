#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <vector>

#include "agc/rng.hpp"
#include "agc/scenario.hpp"

using namespace agc;

TEST_CASE("zipf_popularity") {
  CHECK(zipf_popularity(1, 0.7) == std::vector<double>{1.0});
  const auto flat = zipf_popularity(2, 0.0);
  CHECK(flat[0] == doctest::Approx(0.5));
  CHECK(flat[1] == doctest::Approx(0.5));
  const auto p = zipf_popularity(30, 0.5);
  CHECK(p[0] == doctest::Approx(0.1046).epsilon(1e-2));
  double sum = 0.0;
  for (size_t k = 0; k < p.size(); ++k) {
    sum += p[k];
    if (k > 0) CHECK(p[k] <= p[k - 1]);
  }
  CHECK(sum == doctest::Approx(1.0).epsilon(1e-12));
}

TEST_CASE("generate is deterministic in the seed") {
  GeneratorParams params;
  params.seed = 7;
  const ScenarioSpec a = generate(params);
  const ScenarioSpec b = generate(params);
  REQUIRE(a.num_ues() == b.num_ues());
  for (int i = 0; i < a.num_ues(); ++i) {
    CHECK(a.ues[i].position.x == b.ues[i].position.x);
    CHECK(a.ues[i].position.y == b.ues[i].position.y);
    for (int t = 0; t < a.num_slots; ++t) {
      CHECK(a.tasks[i][t].cpu_cycles == b.tasks[i][t].cpu_cycles);
      CHECK(a.tasks[i][t].input_bits == b.tasks[i][t].input_bits);
      CHECK(a.tasks[i][t].required_service == b.tasks[i][t].required_service);
    }
  }
  CHECK(a.uav.cpu_capacity == b.uav.cpu_capacity);
  CHECK(a.uav.max_associated_ues == b.uav.max_associated_ues);
  CHECK(a.services.sizes == b.services.sizes);
}

TEST_CASE("workload coefficient scales cycles and nothing else") {
  GeneratorParams params;
  params.seed = 3;
  const ScenarioSpec base = generate(params);
  params.workload_coefficient = 2.0;
  const ScenarioSpec twice = generate(params);
  for (int i = 0; i < base.num_ues(); ++i) {
    CHECK(base.ues[i].position.x == twice.ues[i].position.x);
    for (int t = 0; t < base.num_slots; ++t) {
      CHECK(twice.tasks[i][t].cpu_cycles ==
            doctest::Approx(2.0 * base.tasks[i][t].cpu_cycles).epsilon(1e-15));
      CHECK(twice.tasks[i][t].input_bits == base.tasks[i][t].input_bits);
      CHECK(twice.tasks[i][t].required_service == base.tasks[i][t].required_service);
    }
  }
  CHECK(twice.services.sizes == base.services.sizes);
  CHECK(twice.uav.cpu_capacity == base.uav.cpu_capacity);
}

TEST_CASE("storage sweep shares all other randomness") {
  GeneratorParams params;
  params.seed = 11;
  params.uav_storage = 2.0;
  const ScenarioSpec lo = generate(params);
  params.uav_storage = 10.0;
  const ScenarioSpec hi = generate(params);
  CHECK(lo.uav.storage_capacity == 2.0);
  CHECK(hi.uav.storage_capacity == 10.0);
  CHECK(lo.bs.storage_capacity == 4.0);
  CHECK(hi.bs.storage_capacity == 20.0);
  CHECK(lo.services.sizes == hi.services.sizes);
  CHECK(lo.uav.cpu_capacity == hi.uav.cpu_capacity);
  for (int i = 0; i < lo.num_ues(); ++i)
    CHECK(lo.ues[i].position.x == hi.ues[i].position.x);
}

TEST_CASE("generated defaults satisfy every structural invariant") {
  GeneratorParams params;
  params.seed = 1;
  const ScenarioSpec spec = generate(params);
  CHECK_NOTHROW(spec.validate());
  CHECK(spec.num_ues() == 10);
  CHECK(spec.num_slots == 100);
  CHECK(spec.services.num_services() == 30);
  CHECK(spec.uav.cpu_capacity >= 5e9);
  CHECK(spec.uav.cpu_capacity <= 10e9);
  CHECK(spec.uav.max_associated_ues >= 3);
  CHECK(spec.uav.max_associated_ues <= 5);
  CHECK(spec.bs.storage_capacity == doctest::Approx(2.0 * spec.uav.storage_capacity));
  for (double s : spec.services.sizes) {
    CHECK(s >= 0.5);
    CHECK(s <= 1.0);
  }
  for (int i = 0; i < spec.num_ues(); ++i) {
    CHECK(spec.ues[i].position.x >= 0.0);
    CHECK(spec.ues[i].position.x <= 200.0);
    for (int t = 0; t < spec.num_slots; ++t) {
      const TaskSpec& task = spec.task(i, t);
      CHECK(task.cpu_cycles >= 1e8);
      CHECK(task.cpu_cycles <= 1e9);
      CHECK(task.input_bits >= 8e5);
      CHECK(task.input_bits <= 8e6);
      CHECK(task.required_service == spec.ues[i].requested_service[t]);
    }
  }
}

TEST_CASE("empirical request frequencies match the Zipf law") {
  GeneratorParams params;
  params.num_ues = 100;
  params.num_slots = 1000;  // 1e5 draws
  params.seed = 5;
  const ScenarioSpec spec = generate(params);
  std::vector<double> freq(spec.services.num_services(), 0.0);
  const double total = 100.0 * 1000.0;
  for (int i = 0; i < spec.num_ues(); ++i)
    for (int t = 0; t < spec.num_slots; ++t)
      freq[spec.task(i, t).required_service] += 1.0 / total;
  const auto p = zipf_popularity(spec.services.num_services(), 0.5);
  double tv = 0.0;
  for (size_t k = 0; k < p.size(); ++k) tv += std::abs(freq[k] - p[k]);
  CHECK(tv / 2.0 < 0.02);
}

TEST_CASE("substreams are stable and decoupled") {
  Substream a(42, 1), b(42, 1), c(42, 2);
  const double x = a.uniform01();
  CHECK(x == b.uniform01());
  CHECK(x != c.uniform01());
  Substream d(42, 3);
  for (int i = 0; i < 1000; ++i) {
    const int v = d.uniform_int(3, 5);
    CHECK(v >= 3);
    CHECK(v <= 5);
  }
}
