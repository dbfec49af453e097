#include <gtest/gtest.h>

#include <set>

#include "sigscan/crack.hpp"
#include "sigscan/errors.hpp"
#include "sigscan/synth.hpp"

using namespace sigscan;

namespace {

BinaryImage scene(int size, const std::vector<synth::Segment>& segments, std::uint64_t seed, double p = 0.05) {
  auto img = synth::gen_bernoulli(size, size, p, seed);
  synth::plant_mask(img, synth::segment_mask(size, size, segments, 3.0), 0.9, seed + 1);
  return img;
}

}  // namespace

TEST(WindowGrid, TilesWithoutOverlap) {
  const WindowGrid g(130, 70, 64, 64);
  ASSERT_EQ(g.windows().size(), 6u);
  EXPECT_EQ(g.windows()[2].width, 2);
  EXPECT_EQ(g.windows()[3].height, 6);
  BinaryImage seen(130, 70);
  std::size_t covered = 0;
  for (const auto& w : g.windows()) {
    for (int y = w.y0; y < w.y0 + w.height; ++y) {
      for (int x = w.x0; x < w.x0 + w.width; ++x) {
        EXPECT_FALSE(seen.get(x, y));
        seen.set(x, y, true);
        ++covered;
      }
    }
  }
  EXPECT_EQ(covered, 130u * 70u);
  EXPECT_THROW(WindowGrid(64, 64, 7, 64), DomainError);
}

TEST(StripAxis, ClippedToWindow) {
  const ParameterGrid g(ImageGeometry::of(64, 64), {});
  // Horizontal axis through the center row: normal points up, theta = pi/2.
  const int k = g.theta_cells() / 2;
  const auto [a, b] = strip_axis_extremities(StripParams{k, 0, 0}, g);
  std::set<int> xs{a.x, b.x};
  EXPECT_EQ(xs, (std::set<int>{1, 64}));
  // The center row sits between two pixel rows.
  EXPECT_LE(std::abs(a.y - b.y), 1);
  // Axis outside the window.
  const auto none = strip_axis_extremities(StripParams{0, 45, 45}, g);
  EXPECT_EQ(none.first, Pixel{});
}

TEST(ElementaryStrips, BlankImage) {
  const BinaryImage blank(128, 128);
  const WindowGrid g(128, 128, 64, 64);
  const auto r = detect_elementary_strips(blank, g);
  EXPECT_EQ(r.filtered.count_true(), 0u);
  EXPECT_TRUE(r.extremities.empty());
  EXPECT_TRUE(r.strips.empty());
  const auto chain = chain_bounded_strips(blank, r.filtered, r.extremities);
  EXPECT_TRUE(chain.set.detections.empty());
  EXPECT_EQ(crack_mask(chain.set, r.filtered).count_true(), 0u);
}

TEST(ElementaryStrips, SegmentInsideOneWindow) {
  const auto img = scene(128, {{{10, 20}, {54, 44}}}, 3);
  const WindowGrid g(128, 128, 64, 64);
  const auto r = detect_elementary_strips(img, g);
  ASSERT_GE(r.strips.size(), 1u);
  EXPECT_EQ(r.strips[0].window, 0);
  // The strip covers most of the planted segment.
  const auto seg = synth::segment_mask(128, 128, {{{10, 20}, {54, 44}}}, 3.0);
  const auto covered = (seg & r.filtered).count_true();
  EXPECT_GE(static_cast<double>(covered), 0.9 * static_cast<double>(seg.count_true()));
  // Both extremities of the strip are recorded, on the window boundary.
  EXPECT_EQ(r.extremities.size(), 2 * r.strips.size());
  for (const auto& e : r.extremities) {
    if (e.window == 0) {
      const bool on_edge = e.pixel.x == 1 || e.pixel.x == 64 || e.pixel.y == 1 || e.pixel.y == 64;
      EXPECT_TRUE(on_edge);
    }
  }
}

TEST(ElementaryStrips, DiagonalAcrossThreeWindows) {
  const auto img = scene(192, {{{5, 8}, {186, 180}}}, 4);
  const WindowGrid g(192, 192, 64, 64);
  const auto r = detect_elementary_strips(img, g);
  EXPECT_GE(r.strips.size(), 3u);
  EXPECT_GE(r.extremities.size(), 6u);
  std::set<int> windows;
  for (const auto& s : r.strips) {
    windows.insert(s.window);
  }
  EXPECT_TRUE(windows.count(0) && windows.count(4) && windows.count(8));
}

TEST(ElementaryStrips, ScheduleIndependent) {
  const auto img = scene(192, {{{5, 30}, {186, 120}}}, 5);
  const WindowGrid g(192, 192, 64, 64);
  CrackOptions one;
  CrackOptions many;
  many.threads = 4;
  const auto a = detect_elementary_strips(img, g, one);
  const auto b = detect_elementary_strips(img, g, many);
  EXPECT_EQ(a.filtered, b.filtered);
  ASSERT_EQ(a.extremities.size(), b.extremities.size());
  for (std::size_t i = 0; i < a.extremities.size(); ++i) {
    EXPECT_EQ(a.extremities[i].pixel, b.extremities[i].pixel);
    EXPECT_EQ(a.extremities[i].window, b.extremities[i].window);
  }
  const auto ca = crack_detect(img, one);
  const auto cb = crack_detect(img, many);
  EXPECT_EQ(ca.mask, cb.mask);
}

TEST(ChainBoundedStrips, CollinearPiecesBecomeOneStrip) {
  // Horizontal crack with a gap between two windows, off the image center.
  const auto img = scene(128, {{{4, 24}, {58, 24}}, {{68, 24}, {124, 24}}}, 6);
  const auto r = crack_detect(img);
  ASSERT_EQ(r.chain.set.detections.size(), 1u);
  const auto pix = r.chain.set.support;
  EXPECT_TRUE(pix.get(10, 24));
  EXPECT_TRUE(pix.get(120, 24));
}

TEST(ChainBoundedStrips, OnlySupportedCandidateIsDetected) {
  const int n = 128;
  BinaryImage seeds(n, n);
  const auto line = synth::segment_mask(n, n, {{{8, 20}, {120, 20}}}, 1.0);
  seeds |= line;
  // Extremity pairs for the supported horizontal line and a perpendicular one.
  std::vector<Extremity> e{{{8, 20}, 0}, {{120, 20}, 1}, {{100, 4}, 2}, {{100, 110}, 3}};
  CrackOptions o;
  o.max_width = 1;
  const auto chain = chain_bounded_strips(seeds, seeds, e, o);
  ASSERT_EQ(chain.set.detections.size(), 1u);
  const ParameterGrid g(ImageGeometry::of(n, n), o.quantization);
  const auto& b = std::get<BoundedStripParams>(chain.set.detections[0].params);
  EXPECT_LE(std::abs(b.theta - g.theta_cells() / 2), 1);
}

TEST(CrackMask, SetAlgebra) {
  const auto img = scene(192, {{{6, 40}, {90, 60}}, {{96, 64}, {186, 100}}}, 7);
  const auto r = crack_detect(img);
  ASSERT_FALSE(r.chain.set.detections.empty());
  const BoundedStripFamily fam(ImageGeometry::of(192, 192), r.chain.config);
  BinaryImage expected(192, 192);
  for (const auto& d : r.chain.set.detections) {
    for (const auto& p : fam.pixels(d.params)) {
      if (r.elementary.filtered.get(p)) {
        expected.set(p, true);
      }
    }
  }
  EXPECT_EQ(r.mask, expected);
  // Containment.
  for (int y = 1; y <= 192; ++y) {
    for (int x = 1; x <= 192; ++x) {
      if (r.mask.get(x, y)) {
        EXPECT_TRUE(r.elementary.filtered.get(x, y));
      }
    }
  }
  EXPECT_EQ(crack_mask(r.chain.set, BinaryImage(192, 192)).count_true(), 0u);
  EXPECT_EQ(crack_mask(DetectionSet{}, r.elementary.filtered).count_true(), 0u);
}

TEST(CrackProperties, FewFalseAlarmsOnNoise) {
  int total = 0;
  for (std::uint64_t seed = 1; seed <= 20; ++seed) {
    const auto img = synth::gen_bernoulli(256, 256, 0.05, seed);
    total += static_cast<int>(crack_detect(img).chain.set.detections.size());
  }
  EXPECT_LE(total, 20);
}
