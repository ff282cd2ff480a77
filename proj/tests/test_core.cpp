#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>

#include "banditlab/core.hpp"
#include "banditlab/errors.hpp"
#include "banditlab/rng.hpp"

using namespace banditlab;

TEST_CASE("make_instance computes best arm and gaps") {
  const BanditInstance inst = make_instance({0.9, 0.6, 0.5, 0.4});
  CHECK(inst.best_arm == 0);
  REQUIRE(inst.gaps.size() == 4);
  CHECK(inst.gaps[0] == doctest::Approx(0.0));
  CHECK(inst.gaps[1] == doctest::Approx(0.3));
  CHECK(inst.gaps[2] == doctest::Approx(0.4));
  CHECK(inst.gaps[3] == doctest::Approx(0.5));
  CHECK(inst.min_positive_gap() == doctest::Approx(0.3));
  CHECK(inst.max_gap() == doctest::Approx(0.5));
}

TEST_CASE("make_instance keeps input order") {
  const BanditInstance inst = make_instance({0.2, 0.7});
  CHECK(inst.best_arm == 1);
  CHECK(inst.gaps[0] == doctest::Approx(0.5));
  CHECK(inst.gaps[1] == doctest::Approx(0.0));
}

TEST_CASE("make_instance rejects bad input") {
  CHECK_THROWS_AS(make_instance({0.5, 0.5}), NonUniqueBest);
  CHECK_THROWS_AS(make_instance({0.5}), TooFewArms);
  CHECK_THROWS_AS(make_instance({}), TooFewArms);
  CHECK_THROWS_AS(make_instance({0.5, 1.2}), OutOfRange);
  CHECK_THROWS_AS(make_instance({-0.1, 0.2}), OutOfRange);
}

TEST_CASE("make_instance is permutation-equivariant") {
  const std::vector<double> means = {0.9, 0.6, 0.5, 0.4};
  const std::vector<int> perm = {2, 0, 3, 1};
  std::vector<double> permuted(4);
  for (int i = 0; i < 4; ++i) permuted[perm[i]] = means[i];
  const BanditInstance a = make_instance(means);
  const BanditInstance b = make_instance(permuted);
  CHECK(b.best_arm == perm[a.best_arm]);
  for (int i = 0; i < 4; ++i) CHECK(b.gaps[perm[i]] == doctest::Approx(a.gaps[i]));
}

TEST_CASE("two_group_instance lays out the experiment family") {
  const BanditInstance inst = two_group_instance(32, 0.4, 0.2);
  REQUIRE(inst.num_arms() == 32);
  CHECK(inst.best_arm == 0);
  CHECK(inst.means[0] == doctest::Approx(0.4));
  CHECK(inst.means[1] == doctest::Approx(0.4 - 0.2 / 3.0));
  for (int i = 2; i < 32; ++i) CHECK(inst.means[i] == doctest::Approx(0.2));
  CHECK(inst.gaps[1] == doctest::Approx(0.2 / 3.0));  // delta = (w*-w')/3

  const BanditInstance small = two_group_instance(3, 0.5, 0.2);
  CHECK(small.means[0] == doctest::Approx(0.5));
  CHECK(small.means[1] == doctest::Approx(0.4));
  CHECK(small.means[2] == doctest::Approx(0.2));
}

TEST_CASE("two_group_instance gap structure holds across parameters") {
  Rng rng(7);
  for (int rep = 0; rep < 50; ++rep) {
    const int L = 3 + static_cast<int>(rng.below(60));
    const double w_prime = 0.05 + 0.4 * rng.next_double();
    const double w_star = w_prime + 0.05 + (0.99 - w_prime) * rng.next_double() * 0.9;
    const BanditInstance inst = two_group_instance(L, w_star, w_prime);
    const double delta = (w_star - w_prime) / 3.0;
    CHECK(inst.gaps[1] == doctest::Approx(delta));
    for (int i = 2; i < L; ++i) CHECK(inst.gaps[i] == doctest::Approx(3.0 * delta));
  }
}

TEST_CASE("two_group_instance rejects bad parameters") {
  CHECK_THROWS_AS(two_group_instance(3, 0.2, 0.5), InvalidInstance);
  CHECK_THROWS_AS(two_group_instance(2, 0.5, 0.2), InvalidInstance);
  CHECK_THROWS_AS(two_group_instance(4, 1.2, 0.2), InvalidInstance);
  CHECK_THROWS_AS(two_group_instance(4, 0.5, 0.0), InvalidInstance);
}

TEST_CASE("pss_schedule matches hand-evaluated layouts") {
  const PhaseSchedule s1 = pss_schedule(8, 100, 2.0);
  CHECK(s1.num_phases == 3);
  CHECK(s1.phase_len == 33);
  CHECK(s1.active_sizes == std::vector<int>{8, 4, 2, 1});
  CHECK(s1.pull_probability(1) == doctest::Approx(1.0 / 8));
  CHECK(s1.expected_pulls(1) == doctest::Approx(33.0 / 8));

  const PhaseSchedule s2 = pss_schedule(32, 2000, 2.0);
  CHECK(s2.num_phases == 5);
  CHECK(s2.phase_len == 400);
  CHECK(s2.active_sizes == std::vector<int>{32, 16, 8, 4, 2, 1});

  CHECK_THROWS_AS(pss_schedule(8, 2, 2.0), HorizonTooShort);
  CHECK_THROWS_AS(pss_schedule(8, 100, 1.0), InvalidU);
  CHECK_THROWS_AS(pss_schedule(8, 100, 9.0), InvalidU);
}

TEST_CASE("sh_schedule matches hand-evaluated layouts") {
  const PhaseSchedule s1 = sh_schedule(4, 24);
  CHECK(s1.num_phases == 2);
  CHECK(s1.sh_pull_counts == std::vector<long long>{3, 6});
  CHECK(s1.active_sizes == std::vector<int>{4, 2, 1});

  const PhaseSchedule s2 = sh_schedule(2, 10);
  CHECK(s2.num_phases == 1);
  CHECK(s2.sh_pull_counts == std::vector<long long>{5});

  const PhaseSchedule s3 = sh_schedule(32, 2000);
  CHECK(s3.sh_pull_counts == std::vector<long long>{12, 25, 50, 100, 200});

  CHECK_THROWS_AS(sh_schedule(32, 100), HorizonTooShort);
}

TEST_CASE("shrinking schedules are feasible across the grid") {
  Rng rng(11);
  for (int L = 2; L <= 128; ++L) {
    for (double u : {1.5, 2.0, 3.0, static_cast<double>(L)}) {
      if (u <= 1.0 || u > L) continue;
      const int M = ceil_log(L, u);
      const long long sampled[] = {static_cast<long long>(M), M + 1, 7LL * M + 3, 9999,
                                   static_cast<long long>(M + rng.below(10000 - M))};
      for (long long T : sampled) {
        const PhaseSchedule s = pss_schedule(L, T, u);
        CHECK(s.phase_len * s.num_phases <= T);
        CHECK(s.active_sizes.front() == L);
        CHECK(s.active_sizes.back() == 1);
        for (int m = 1; m <= s.num_phases; ++m) {
          CHECK(s.active_sizes[m] <= s.active_sizes[m - 1]);
          // ceiling arithmetic: one shrink step loses at most a factor u (+1).
          CHECK(static_cast<double>(s.active_sizes[m]) >= s.active_sizes[m - 1] / u - 1.0);
        }
      }
    }
  }
}

TEST_CASE("pss(2) and sh shrink through identical size sequences") {
  for (int L = 2; L <= 64; ++L) {
    const PhaseSchedule pss = pss_schedule(L, 100000, 2.0);
    const PhaseSchedule sh = sh_schedule(L, 100000);
    CHECK(pss.active_sizes == sh.active_sizes);
  }
}
