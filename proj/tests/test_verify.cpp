// SPDX-License-Identifier: Apache-2.0
//
// Tests for the randomized falsification campaigns: generator reproducibility
// against a golden file, campaign determinism, zero-failure guarantees, and
// the report contract (failures == 0 exactly when worst_violation <= 0).
#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <fstream>
#include <string>

#include <amgm/errors.hpp>
#include <amgm/json_io.hpp>
#include <amgm/verify.hpp>

using namespace amgm;

namespace {

nlohmann::json load_golden() {
  const std::string path = std::string(AMGM_SOURCE_DIR) + "/tests/golden/rng_reference.json";
  std::ifstream in(path);
  REQUIRE_MESSAGE(in.good(), "missing golden file: ", path);
  return nlohmann::json::parse(in);
}

}  // namespace

TEST_CASE("campaign config validates its ranges") {
  CampaignConfig cfg;
  CHECK_NOTHROW(cfg.validate());
  cfg.trials = 0;
  CHECK_THROWS_AS(cfg.validate(), InadmissibleParamsError);
  cfg = CampaignConfig{};
  cfg.max_atoms = 0;
  CHECK_THROWS_AS(cfg.validate(), InadmissibleParamsError);
  cfg = CampaignConfig{};
  cfg.value_cap = 0.0;
  CHECK_THROWS_AS(cfg.validate(), InadmissibleParamsError);
  cfg = CampaignConfig{};
  cfg.zero_atom_prob = 1.5;
  CHECK_THROWS_AS(cfg.validate(), InadmissibleParamsError);
  cfg.zero_atom_prob = -0.1;
  CHECK_THROWS_AS(cfg.validate(), InadmissibleParamsError);
}

TEST_CASE("random generator reproduces the golden reference bit for bit") {
  const auto gold = load_golden();
  REQUIRE(gold.at("rng_scheme").get<std::string>() == kRngScheme);

  SUBCASE("raw unit draws") {
    auto rng = make_trial_rng(42, 0);
    for (const auto& expected : gold.at("unit_draws_seed42_trial0")) {
      CHECK(draw_unit(rng) == expected.get<double>());
    }
  }

  SUBCASE("whole distributions") {
    CampaignConfig cfg;
    cfg.seed = 42;
    const auto& dists = gold.at("distributions_seed42");
    for (std::size_t t = 0; t < dists.size(); ++t) {
      auto rng = make_trial_rng(cfg.seed, t);
      const DiscreteDistribution got = random_distribution(cfg, rng);
      const DiscreteDistribution want = distribution_from_json(dists[t]);
      CAPTURE(t);
      CHECK(got == want);  // exact double equality, atom by atom
    }
  }
}

TEST_CASE("random distributions respect their configuration") {
  CampaignConfig cfg;
  cfg.seed = 99;

  SUBCASE("maxAtoms = 1 always yields one-point laws") {
    cfg.max_atoms = 1;
    for (std::uint64_t t = 0; t < 50; ++t) {
      auto rng = make_trial_rng(cfg.seed, t);
      CHECK(random_distribution(cfg, rng).size() == 1);
    }
  }

  SUBCASE("zeroAtomProb = 1 forces an atom at exactly zero") {
    cfg.zero_atom_prob = 1.0;
    for (std::uint64_t t = 0; t < 50; ++t) {
      auto rng = make_trial_rng(cfg.seed, t);
      CHECK(random_distribution(cfg, rng).min_value() == 0.0);
    }
  }

  SUBCASE("zeroAtomProb = 0 never places one") {
    cfg.zero_atom_prob = 0.0;
    for (std::uint64_t t = 0; t < 50; ++t) {
      auto rng = make_trial_rng(cfg.seed, t);
      CHECK(random_distribution(cfg, rng).min_value() > 0.0);
    }
  }

  SUBCASE("atom count stays within bounds and values within the cap") {
    for (std::uint64_t t = 0; t < 100; ++t) {
      auto rng = make_trial_rng(cfg.seed, t);
      const auto d = random_distribution(cfg, rng);
      CHECK(d.size() >= 1);
      CHECK(d.size() <= static_cast<std::size_t>(cfg.max_atoms));
      CHECK(d.max_value() <= cfg.value_cap);
    }
  }

  SUBCASE("trials are independent of evaluation order") {
    auto rng5 = make_trial_rng(cfg.seed, 5);
    const auto first = random_distribution(cfg, rng5);
    // Re-derive trial 5 after touching other trials: identical result.
    auto rng0 = make_trial_rng(cfg.seed, 0);
    (void)random_distribution(cfg, rng0);
    auto rng5b = make_trial_rng(cfg.seed, 5);
    CHECK(random_distribution(cfg, rng5b) == first);
  }
}

TEST_CASE("sandwich campaign finds nothing and is deterministic") {
  CampaignConfig cfg;
  cfg.trials = 3000;
  cfg.seed = 11;
  const VerificationReport a = falsify_sandwich(cfg);
  CHECK(a.trials == 3000);
  CHECK(a.failures == 0);
  CHECK(a.worst_violation <= 0.0);
  CHECK_FALSE(a.witness.has_value());

  const VerificationReport b = falsify_sandwich(cfg);
  CHECK(b.failures == a.failures);
  CHECK(b.worst_violation == a.worst_violation);  // bit-identical modulo elapsed
}

TEST_CASE("infimum campaign: finite F") {
  CampaignConfig cfg;
  cfg.trials = 300;
  cfg.seed = 21;
  const VerificationReport r = verify_infimum(1.0, 2.0, cfg);
  CHECK(r.trials == 301);  // the attaining two-point member plus the random members
  CHECK(r.failures == 0);
  CHECK(r.worst_violation <= 0.0);

  // Scale robustness: a different admissible pair.
  const VerificationReport r2 = verify_infimum(0.5, 4.0, cfg);
  CHECK(r2.failures == 0);
}

TEST_CASE("infimum campaign: infinite F walks the mixture ladder") {
  CampaignConfig cfg;
  cfg.seed = 22;
  const VerificationReport r = verify_infimum(1.0, ExtendedReal::infinity(), cfg);
  CHECK(r.trials == 3);  // eps in {0.1, 0.01, 0.001}
  CHECK(r.failures == 0);
  CHECK(r.worst_violation <= 0.0);
}

TEST_CASE("infimum campaign rejects inadmissible pairs") {
  CampaignConfig cfg;
  CHECK_THROWS_AS(verify_infimum(1.0, 0.5, cfg), InadmissiblePairError);
  CHECK_THROWS_AS(verify_infimum(1.0, 1.0, cfg), InadmissiblePairError);
  CHECK_THROWS_AS(verify_infimum(0.0, ExtendedReal::infinity(), cfg), InadmissiblePairError);
}

TEST_CASE("equality-case campaign finds nothing") {
  CampaignConfig cfg;
  cfg.trials = 2000;
  cfg.seed = 31;
  const VerificationReport r = verify_equality_cases(cfg);
  CHECK(r.failures == 0);
  CHECK(r.worst_violation <= 0.0);
}

TEST_CASE("variance-product campaign finds nothing") {
  CampaignConfig cfg;
  cfg.trials = 5000;
  cfg.seed = 41;
  const VerificationReport r = verify_variance_product(cfg);
  CHECK(r.failures == 0);
  CHECK(r.worst_violation <= 0.0);
}

TEST_CASE("attainment scans hug their closed-form targets") {
  SUBCASE("upper side, endpoint regime (E > 2V)") {
    const VerificationReport r = verify_attainment(1.0, 4.0, BoundSide::hi, 1000);
    CHECK(r.failures == 0);
    CHECK(r.trials == 1000);
  }
  SUBCASE("upper side, far-shift regime (E < 2V)") {
    const VerificationReport r = verify_attainment(1.0, 1.5, BoundSide::hi, 1000);
    CHECK(r.failures == 0);
  }
  SUBCASE("lower side") {
    const VerificationReport r = verify_attainment(1.0, 2.0, BoundSide::lo, 1000);
    CHECK(r.failures == 0);
  }
  SUBCASE("coarse grids are rejected") {
    CHECK_THROWS_AS(verify_attainment(1.0, 4.0, BoundSide::hi, 50),
                    InadmissibleParamsError);
  }
  SUBCASE("inadmissible pairs are rejected") {
    CHECK_THROWS_AS(verify_attainment(1.0, ExtendedReal::infinity(), BoundSide::hi, 1000),
                    InadmissiblePairError);
    CHECK_THROWS_AS(verify_attainment(1.0, ExtendedReal::infinity(), BoundSide::lo, 1000),
                    InadmissiblePairError);
    CHECK_THROWS_AS(verify_attainment(1.0, 0.5, BoundSide::lo, 1000),
                    InadmissiblePairError);
  }
}

TEST_CASE("report JSON carries the full contract") {
  CampaignConfig cfg;
  cfg.trials = 100;
  cfg.seed = 51;
  const VerificationReport r = falsify_sandwich(cfg);
  const auto j = to_json(r);
  for (const char* key : {"trials", "failures", "worst_violation", "witness", "elapsed_ms"}) {
    CAPTURE(key);
    CHECK(j.contains(key));
  }
  CHECK(j["trials"].get<std::uint64_t>() == 100);
  CHECK(j["witness"].is_null());
  CHECK(j["elapsed_ms"].get<double>() >= 0.0);

  // failures == 0 exactly when the signed worst violation is <= 0.
  CHECK((r.failures == 0) == (r.worst_violation <= 0.0));
}
