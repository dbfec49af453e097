#include <gtest/gtest.h>

#include <cmath>
#include <random>

#include "sigscan/detect.hpp"
#include "sigscan/errors.hpp"
#include "sigscan/oracle.hpp"
#include "sigscan/synth.hpp"
#include "support.hpp"

using namespace sigscan;
using sigscan::testing::random_image;

namespace {

FamilyConfig config_for(Family f) {
  FamilyConfig c;
  c.family = f;
  if (f == Family::Ring) {
    c.max_width = 4;
  }
  if (f == Family::BoundedStrip) {
    c.quantization.theta_step = 0.5;
    c.quantization.phi_step = 0.5;
    c.max_sector = 6;
    c.max_width = 3;
  }
  return c;
}

void expect_same_tables(const BestPerCardinality& a, const BestPerCardinality& b) {
  ASSERT_EQ(a.kappa_of.size(), b.kappa_of.size());
  for (std::size_t nu = 1; nu < a.kappa_of.size(); ++nu) {
    ASSERT_EQ(a.kappa_of[nu], b.kappa_of[nu]) << "nu=" << nu;
    if (a.kappa_of[nu] > 0) {
      ASSERT_EQ(a.params_of[nu], b.params_of[nu]) << "nu=" << nu;
    }
  }
}

}  // namespace

TEST(ScanCandidates, BlankAndOneHot) {
  for (const auto f : {Family::Tile, Family::Strip, Family::Ring, Family::BoundedStrip}) {
    const auto fam = make_family(ImageGeometry::of(12, 12), config_for(f));
    const auto blank = scan_candidates(*fam, integrate(fam->vote(BinaryImage(12, 12))), fam->cached_area_space());
    for (const auto k : blank.kappa_of) {
      EXPECT_EQ(k, 0u);
    }
    const auto one = fam->best_per_cardinality(sigscan::testing::one_hot(12, 12, {4, 9}), 1);
    EXPECT_EQ(*std::max_element(one.kappa_of.begin(), one.kappa_of.end()), 1u);
    for (std::size_t nu = 1; nu < one.kappa_of.size(); ++nu) {
      EXPECT_LE(one.kappa_of[nu], nu);
    }
  }
}

TEST(ScanCandidates, NeedsIntegratedSpaces) {
  const auto fam = make_family(ImageGeometry::of(8, 8), config_for(Family::Strip));
  EXPECT_THROW(scan_candidates(*fam, fam->vote(BinaryImage(8, 8)), fam->cached_area_space()), PreconditionError);
}

TEST(ScanCandidates, TilesMatchExhaustiveOracle) {
  std::mt19937_64 rng(1);
  for (int t = 0; t < 5; ++t) {
    const auto img = random_image(8, 8, 0.4, rng);
    const auto fam = make_family(ImageGeometry::of(8, 8), config_for(Family::Tile));
    expect_same_tables(fam->best_per_cardinality(img, 1), oracle::brute_best(img, config_for(Family::Tile)));
  }
}

TEST(ScanCandidates, AllFamiliesMatchExhaustiveOracle) {
  std::mt19937_64 rng(2);
  for (const auto f : {Family::Tile, Family::Strip, Family::Ring, Family::BoundedStrip}) {
    for (int t = 0; t < 2; ++t) {
      const auto img = random_image(16, 16, 0.3, rng);
      const auto c = config_for(f);
      const auto fam = make_family(ImageGeometry::of(16, 16), c);
      SCOPED_TRACE(std::string(family_name(f)));
      expect_same_tables(fam->best_per_cardinality(img, 1), oracle::brute_best(img, c));
    }
  }
}

TEST(ScanCandidates, ExplicitCandidatesMatchOracle) {
  std::mt19937_64 rng(3);
  const auto img = random_image(16, 16, 0.3, rng);
  auto c = config_for(Family::BoundedStrip);
  const ParameterGrid g(ImageGeometry::of(16, 16), c.quantization);
  for (int i = 0; i < 40; ++i) {
    c.candidates.push_back(sigscan::testing::random_params(Family::BoundedStrip, g, rng));
  }
  const auto fam = make_family(ImageGeometry::of(16, 16), c);
  expect_same_tables(fam->best_per_cardinality(img, 1), oracle::brute_best(img, c));
  expect_same_tables(fam->best_per_cardinality(img, 3), oracle::brute_best(img, c));
}

TEST(ScanCandidates, ThreadCountDoesNotChangeTables) {
  std::mt19937_64 rng(4);
  for (const auto f : {Family::Tile, Family::Strip, Family::Ring, Family::BoundedStrip}) {
    const auto img = random_image(20, 18, 0.25, rng);
    const auto fam = make_family(ImageGeometry::of(20, 18), config_for(f));
    const auto one = fam->best_per_cardinality(img, 1);
    expect_same_tables(one, fam->best_per_cardinality(img, 3));
    expect_same_tables(one, fam->best_per_cardinality(img, 7));
  }
}

TEST(PickMostSignificant, Examples) {
  const NaiveModel m{0.2, 1.0};
  BestPerCardinality zero(50);
  EXPECT_FALSE(pick_most_significant(zero, m).has_value());

  BestPerCardinality single(50);
  single.offer(10, 9, StripParams{1, 2, 3});
  single.offer(20, 3, StripParams{1, 2, 4});  // below density p
  const auto d = pick_most_significant(single, m);
  ASSERT_TRUE(d.has_value());
  EXPECT_EQ(d->nu, 10u);
  EXPECT_EQ(d->kappa, 9u);
  EXPECT_EQ(std::get<StripParams>(d->params), (StripParams{1, 2, 3}));
  EXPECT_NEAR(d->s, significance_hoeffding(9, 10, m).s, 1e-12);
}

TEST(PickMostSignificant, NotSignificantEnough) {
  BestPerCardinality b(50);
  b.offer(10, 3, StripParams{0, 0, 0});
  EXPECT_FALSE(pick_most_significant(b, {0.2, 50.0}).has_value());
}

TEST(PickMostSignificant, MatchesDirectArgmax) {
  std::mt19937_64 rng(5);
  for (int t = 0; t < 200; ++t) {
    const double p = std::uniform_real_distribution<double>(0.01, 0.6)(rng);
    const NaiveModel m{p, std::uniform_real_distribution<double>(0.0, 5.0)(rng)};
    BestPerCardinality b(80);
    for (std::size_t nu = 1; nu <= 80; ++nu) {
      b.kappa_of[nu] = std::uniform_int_distribution<std::uint64_t>(0, nu)(rng);
      b.params_of[nu] = StripParams{static_cast<int>(nu), 0, 0};
    }
    double best = 0.0;
    std::size_t best_nu = 0;
    for (std::size_t nu = 1; nu <= 80; ++nu) {
      const auto k = b.kappa_of[nu];
      if (static_cast<double>(k) / static_cast<double>(nu) > p) {
        const double s = significance_hoeffding(k, nu, m).s;
        if (s > best) {
          best = s;
          best_nu = nu;
        }
      }
    }
    const auto d = pick_most_significant(b, m);
    if (best_nu == 0) {
      EXPECT_FALSE(d.has_value());
    } else {
      ASSERT_TRUE(d.has_value());
      EXPECT_EQ(d->nu, best_nu);
      EXPECT_NEAR(d->s, best, 1e-9);
    }
  }
}

namespace {

struct StripScene {
  BinaryImage image;
  std::unique_ptr<PatternFamily> family;
};

StripScene strip_scene(std::vector<StripParams> planted, std::uint64_t seed, int size = 128) {
  StripScene s;
  FamilyConfig c;
  c.family = Family::Strip;
  s.family = make_family(ImageGeometry::of(size, size), c);
  s.image = synth::gen_bernoulli(size, size, 0.05, seed);
  for (std::size_t i = 0; i < planted.size(); ++i) {
    synth::plant_pattern(s.image, *s.family, planted[i], 0.9, seed + 1 + i);
  }
  return s;
}

}  // namespace

TEST(SetSignificance, UnionOfOne) {
  auto s = strip_scene({{40, -3, -1}}, 7, 64);
  DetectionSet set;
  set.model = {0.08, s.family->ln_candidate_count()};
  set.support = BinaryImage(64, 64);
  const auto pix = s.family->pixels(StripParams{40, -3, -1});
  std::uint64_t k = 0;
  for (const auto& p : pix) {
    k += s.image.get(p) ? 1 : 0;
  }
  const Detection d{StripParams{40, -3, -1}, k, pix.size(), 0.0, 1};
  const double expected = kl_mass(k, pix.size(), 0.08) - set.model.ln_eta2;
  EXPECT_NEAR(set_significance(set, d, s.image, *s.family), expected, 1e-9);
}

TEST(SetSignificance, DuplicateIsRejectedAndDisjointSums) {
  auto s = strip_scene({{40, -20, -18}, {40, 15, 17}}, 8, 64);
  DetectOptions o;
  o.max_iterations = 2;
  const auto set = detect_all(s.image, *s.family, o);
  ASSERT_EQ(set.detections.size(), 2u);
  // Duplicate: same union, one more budget.
  const double dup = set_significance(set, set.detections[0], s.image, *s.family);
  EXPECT_LT(dup, set.set_significance);
  EXPECT_NEAR(dup, set.set_significance - set.model.ln_eta2, 1e-6);
  // Disjoint strips: counts add up.
  std::uint64_t k = 0, n = 0;
  for (const auto& d : set.detections) {
    for (const auto& p : s.family->pixels(d.params)) {
      k += s.image.get(p) ? 1 : 0;
      ++n;
    }
  }
  EXPECT_NEAR(set.set_significance, kl_mass(k, n, set.model.p) - 2 * set.model.ln_eta2, 1e-6);
}

TEST(RemovePattern, KeepsFloorPNu) {
  // nu = 100, kappa = 60, p = 0.1: ten true pixels stay.
  BinaryImage img(10, 10);
  for (int i = 0; i < 60; ++i) {
    img.data()[static_cast<std::size_t>(i)] = 1;
  }
  FamilyConfig c;
  c.family = Family::Tile;
  const auto fam = make_family(ImageGeometry::of(10, 10), c);
  const Detection d{TileParams{1, 1, 10, 10}, 60, 100, 1.0, 1};
  Rng rng(1);
  EXPECT_EQ(remove_pattern(img, d, {0.1, 0.0}, *fam, rng), 50u);
  EXPECT_EQ(img.count_true(), 10u);
  // Nothing exceeds: unchanged.
  const auto before = img;
  EXPECT_EQ(remove_pattern(img, d, {0.1, 0.0}, *fam, rng), 0u);
  EXPECT_EQ(img, before);
}

TEST(RemovePattern, SeededAndBitIdentical) {
  std::mt19937_64 gen(3);
  const auto img = random_image(16, 16, 0.6, gen);
  FamilyConfig c;
  c.family = Family::Tile;
  const auto fam = make_family(ImageGeometry::of(16, 16), c);
  const Detection d{TileParams{2, 2, 12, 12}, 0, 121, 1.0, 1};
  auto a = img;
  auto b = img;
  Rng ra(42), rb(42);
  remove_pattern(a, d, {0.2, 0.0}, *fam, ra);
  remove_pattern(b, d, {0.2, 0.0}, *fam, rb);
  EXPECT_EQ(a, b);
  std::uint64_t inside = 0;
  for (const auto& p : fam->pixels(d.params)) {
    inside += a.get(p) ? 1 : 0;
  }
  EXPECT_EQ(inside, 24u);  // floor(0.2 * 121)
  // Pixels outside the pattern are untouched.
  for (int y = 1; y <= 16; ++y) {
    for (int x = 1; x <= 16; ++x) {
      if (!fam->contains(d.params, {x, y})) {
        EXPECT_EQ(a.get(x, y), img.get(x, y));
      }
    }
  }
}

TEST(DetectAll, DegenerateImages) {
  FamilyConfig c;
  c.family = Family::Strip;
  EXPECT_TRUE(detect_all(BinaryImage(16, 16), c).detections.empty());
  EXPECT_TRUE(detect_all(BinaryImage(16, 16, true), c).detections.empty());
  EXPECT_THROW(detect_all(BinaryImage(), c), DomainError);
}

TEST(DetectAll, RecoversPlantedStrip) {
  const StripParams truth{70, 10, 12};
  auto s = strip_scene({truth}, 11);
  const auto set = detect_all(s.image, *s.family);
  ASSERT_EQ(set.detections.size(), 1u);
  const auto& d = std::get<StripParams>(set.detections[0].params);
  const int n = s.family->grid().theta_cells();
  const int dt = std::abs(d.theta - truth.theta);
  EXPECT_LE(std::min(dt, n - dt), 1);
  EXPECT_LE(std::abs(d.rho0 - truth.rho0), 1);
  EXPECT_LE(std::abs(d.rho1 - truth.rho1), 1);
  EXPECT_GT(set.detections[0].s, 0.0);
  EXPECT_GT(static_cast<double>(set.detections[0].kappa), set.model.p * static_cast<double>(set.detections[0].nu));
}

TEST(DetectAll, InvariantsOnThreeStrips) {
  auto s = strip_scene({{30, -30, -28}, {150, 5, 7}, {240, 40, 42}}, 12);
  DetectOptions o;
  o.seed = 9;
  const auto set = detect_all(s.image, *s.family, o);
  EXPECT_EQ(set.detections.size(), 3u);
  // Strictly increasing set significance, replayed from the members.
  DetectionSet replay;
  replay.model = set.model;
  replay.support = BinaryImage(128, 128);
  double prev = 0.0;
  for (const auto& d : set.detections) {
    const double su = set_significance(replay, d, s.image, *s.family);
    EXPECT_GT(su, prev);
    prev = su;
    replay.detections.push_back(d);
    for (const auto& p : s.family->pixels(d.params)) {
      replay.support.set(p, true);
    }
  }
  EXPECT_NEAR(prev, set.set_significance, 1e-9);
  // Curve rows exist for every iteration, including the stopping one.
  ASSERT_FALSE(set.curve.empty());
  EXPECT_EQ(set.curve.back().iteration, 4);
  for (const auto& c : set.curve) {
    EXPECT_GT(c.kappa, 0u);
    EXPECT_LE(c.kappa, c.nu);
  }
  // Fixed point: nothing acceptable remains in the residual.
  DetectOptions again;
  again.model = set.model;
  EXPECT_TRUE(detect_all(set.residual, *s.family, again).detections.empty());
  // Determinism, and thread independence of the detections.
  const auto twice = detect_all(s.image, *s.family, o);
  EXPECT_EQ(twice.residual, set.residual);
  ASSERT_EQ(twice.detections.size(), set.detections.size());
  o.threads = 4;
  const auto threaded = detect_all(s.image, *s.family, o);
  ASSERT_EQ(threaded.detections.size(), set.detections.size());
  for (std::size_t i = 0; i < set.detections.size(); ++i) {
    EXPECT_EQ(twice.detections[i].params, set.detections[i].params);
    EXPECT_EQ(threaded.detections[i].params, set.detections[i].params);
    EXPECT_EQ(threaded.detections[i].kappa, set.detections[i].kappa);
  }
  EXPECT_EQ(threaded.residual, set.residual);
}

TEST(DetectAll, ModelOverrides) {
  auto s = strip_scene({{30, -30, -28}}, 13, 64);
  DetectOptions o;
  o.ln_eta2 = 0.0;
  const auto set = detect_all(s.image, *s.family, o);
  EXPECT_EQ(set.model.ln_eta2, 0.0);
  EXPECT_NEAR(set.model.p, static_cast<double>(s.image.count_true()) / (64.0 * 64.0), 1e-15);
  DetectOptions bad;
  bad.model = NaiveModel{1.5, 0.0};
  EXPECT_THROW(detect_all(s.image, *s.family, bad), DomainError);
}
