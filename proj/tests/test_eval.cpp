#include <gtest/gtest.h>

#include <filesystem>
#include <sstream>

#include "sigscan/errors.hpp"
#include "sigscan/eval.hpp"
#include "sigscan/pnm.hpp"
#include "sigscan/synth.hpp"

using namespace sigscan;

TEST(Dilate, Examples) {
  const auto img = synth::gen_bernoulli(16, 12, 0.2, 3);
  EXPECT_EQ(eval::dilate(img, 0.0), img);
  BinaryImage one(7, 7);
  one.set(4, 4, true);
  const auto plus = eval::dilate(one, 1.0);
  EXPECT_EQ(plus.count_true(), 5u);
  EXPECT_TRUE(plus.get(4, 3));
  EXPECT_TRUE(plus.get(5, 4));
  EXPECT_FALSE(plus.get(5, 5));
  EXPECT_EQ(eval::dilate(one, 1.5).count_true(), 9u);
  EXPECT_EQ(eval::dilate(one, 2.0).count_true(), 13u);
  const BinaryImage full(9, 9, true);
  EXPECT_EQ(eval::dilate(full, 3.0), full);
  EXPECT_THROW(eval::dilate(one, -1.0), DomainError);
}

TEST(PrecisionRecall, Examples) {
  const auto gt = synth::segment_mask(40, 40, {{{5, 5}, {30, 20}}}, 3);
  auto s = eval::precision_recall(gt, gt, 0);
  EXPECT_DOUBLE_EQ(s.precision, 1.0);
  EXPECT_DOUBLE_EQ(s.recall, 1.0);

  BinaryImage a(40, 40), b(40, 40);
  a.set(3, 3, true);
  b.set(30, 30, true);
  s = eval::precision_recall(a, b, 2);
  EXPECT_DOUBLE_EQ(s.precision, 0.0);
  EXPECT_DOUBLE_EQ(s.recall, 0.0);
  EXPECT_EQ(s.tp, 0u);
  EXPECT_EQ(s.fp, 1u);
  EXPECT_EQ(s.fn, 1u);

  BinaryImage shifted(40, 40);
  for (int y = 1; y <= 40; ++y) {
    for (int x = 2; x <= 40; ++x) {
      if (gt.get(x - 1, y)) {
        shifted.set(x, y, true);
      }
    }
  }
  s = eval::precision_recall(shifted, gt, 1);
  EXPECT_DOUBLE_EQ(s.precision, 1.0);
  EXPECT_DOUBLE_EQ(s.recall, 1.0);
  EXPECT_THROW(eval::precision_recall(a, BinaryImage(4, 4), 1), DomainError);
}

TEST(PrecisionRecall, BlankConvention) {
  const BinaryImage z(10, 10);
  const auto s = eval::precision_recall(z, z, 1);
  EXPECT_DOUBLE_EQ(s.precision, 1.0);
  EXPECT_DOUBLE_EQ(s.recall, 1.0);
}

TEST(PrecisionRecall, MonotoneInRadius) {
  for (std::uint64_t seed = 1; seed < 6; ++seed) {
    const auto det = synth::gen_bernoulli(30, 30, 0.05, seed);
    const auto gt = synth::gen_bernoulli(30, 30, 0.05, seed + 100);
    double pp = -1, pr = -1;
    for (double r : {0.0, 1.0, 1.5, 2.0, 3.0, 5.0}) {
      const auto s = eval::precision_recall(det, gt, r);
      EXPECT_GE(s.precision, pp);
      EXPECT_GE(s.recall, pr);
      pp = s.precision;
      pr = s.recall;
    }
  }
}

TEST(Summarize, HandComputed) {
  const auto s = eval::summarize({0.4, 0.1, 0.3, 0.2});
  EXPECT_NEAR(s.mean, 0.25, 1e-15);
  EXPECT_NEAR(s.median, 0.25, 1e-15);
  EXPECT_NEAR(s.p25, 0.175, 1e-15);
  EXPECT_NEAR(s.p75, 0.325, 1e-15);
  const auto one = eval::summarize({0.7});
  EXPECT_DOUBLE_EQ(one.p25, 0.7);
  EXPECT_THROW(eval::summarize({}), DomainError);
}

TEST(Batch, DirectoryAndCsv) {
  const auto dir = std::filesystem::temp_directory_path() / "sigscan_eval_batch";
  std::filesystem::remove_all(dir);
  std::filesystem::create_directories(dir / "det");
  std::filesystem::create_directories(dir / "gt");
  // a: perfect; b: half of the detection is false.
  BinaryImage gt(8, 8), det_b(8, 8);
  gt.set(2, 2, true);
  det_b.set(2, 2, true);
  det_b.set(7, 7, true);
  write_pbm(dir / "det" / "a.pbm", gt);
  write_pbm(dir / "gt" / "a.pbm", gt);
  write_pbm(dir / "det" / "b.pbm", det_b);
  write_pbm(dir / "gt" / "b.pbm", gt);
  const auto r = eval::evaluate(dir / "det", dir / "gt", {0.0, 1.0});
  ASSERT_EQ(r.images.size(), 4u);
  EXPECT_EQ(r.images[0].name, "a.pbm");
  EXPECT_DOUBLE_EQ(r.precision[0].mean, 0.75);
  EXPECT_DOUBLE_EQ(r.recall[0].mean, 1.0);
  std::ostringstream csv;
  eval::write_csv(csv, r);
  const std::string text = csv.str();
  EXPECT_EQ(text.substr(0, text.find('\n')), "kind,name,radius,precision,recall,tp,fp,fn");
  EXPECT_NE(text.find("image,b.pbm,0,0.5,1,1,1,0\n"), std::string::npos);
  EXPECT_NE(text.find("p25,,0,0.625,1,,,\n"), std::string::npos);
  std::filesystem::remove(dir / "gt" / "b.pbm");
  EXPECT_THROW(eval::evaluate(dir / "det", dir / "gt", {1.0}), DomainError);
  std::filesystem::remove_all(dir);
}
