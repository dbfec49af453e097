#include <gtest/gtest.h>

#include <array>
#include <random>
#include <sstream>

#include "sigscan/accum.hpp"
#include "sigscan/errors.hpp"

using namespace sigscan;

namespace {

CumulativeSpace row(std::vector<CumulativeSpace::Cell> values, bool circular = false) {
  CumulativeSpace s({AxisSpec{AxisKind::Bip, static_cast<int>(values.size()), 1, 1.0, circular}});
  for (std::size_t i = 0; i < values.size(); ++i) {
    const std::array<int, 1> idx{static_cast<int>(i) + 1};
    s.add(idx, values[i]);
  }
  return s;
}

CumulativeSpace grid2(const std::vector<std::vector<CumulativeSpace::Cell>>& v) {
  CumulativeSpace s({AxisSpec{AxisKind::Bip, static_cast<int>(v.size())},
                     AxisSpec{AxisKind::Bip, static_cast<int>(v[0].size())}});
  for (std::size_t i = 0; i < v.size(); ++i) {
    for (std::size_t j = 0; j < v[i].size(); ++j) {
      const std::array<int, 2> idx{static_cast<int>(i) + 1, static_cast<int>(j) + 1};
      s.add(idx, v[i][j]);
    }
  }
  return s;
}

std::vector<CumulativeSpace::Cell> cells_of_row(const CumulativeSpace& s) {
  std::vector<CumulativeSpace::Cell> out;
  for (int i = 1; i <= s.axes()[0].size; ++i) {
    const std::array<int, 1> idx{i};
    out.push_back(s.at(idx));
  }
  return out;
}

}  // namespace

TEST(IntegrateOne, Examples) {
  EXPECT_EQ(cells_of_row(integrate_one(row({0, 0, 0, 0}))), (std::vector<CumulativeSpace::Cell>{0, 0, 0, 0}));
  EXPECT_EQ(cells_of_row(integrate_one(row({7}))), (std::vector<CumulativeSpace::Cell>{7}));
  EXPECT_EQ(cells_of_row(integrate_one(row({1, 0, 2, 1}))), (std::vector<CumulativeSpace::Cell>{1, 1, 3, 4}));
}

TEST(IntegrateOne, Errors) {
  auto once = integrate_one(row({1, 2}));
  EXPECT_THROW(integrate_one(once), PreconditionError);
  EXPECT_THROW(integrate_one(grid2({{1}})), PreconditionError);
}

TEST(IntegrateTwo, Examples) {
  auto z = integrate_two(grid2({{0, 0}, {0, 0}}));
  auto one = integrate_two(grid2({{7}}));
  auto ones = integrate_two(grid2({{1, 1}, {1, 1}}));
  auto at = [](const CumulativeSpace& s, int i, int j) {
    const std::array<int, 2> idx{i, j};
    return s.at(idx);
  };
  EXPECT_EQ(at(z, 2, 2), 0u);
  EXPECT_EQ(at(one, 1, 1), 7u);
  EXPECT_EQ(at(ones, 1, 1), 1u);
  EXPECT_EQ(at(ones, 1, 2), 2u);
  EXPECT_EQ(at(ones, 2, 1), 2u);
  EXPECT_EQ(at(ones, 2, 2), 4u);
  EXPECT_EQ(at(ones, 0, 2), 0u);  // virtual zero
  EXPECT_THROW(integrate_two(ones), PreconditionError);
  EXPECT_THROW(integrate_two(row({1})), PreconditionError);
}

TEST(QueryInterval, Examples) {
  const auto s = integrate(row({1, 2, 3, 4}));
  EXPECT_EQ(query_interval(s, {}, 1, 4), 10u);
  EXPECT_EQ(query_interval(s, {}, 2, 4), 9u);
  EXPECT_EQ(query_interval(s, {}, 3, 3), 3u);
}

TEST(QueryInterval, LowerBoundCellIsIncluded) {
  // Subtracting the partial sum at lo instead of lo - 1 would give 7 here.
  const auto s = integrate(row({1, 2, 3, 4}));
  EXPECT_EQ(query_interval(s, {}, 2, 3), 5u);
}

TEST(QueryInterval, Errors) {
  const auto s = integrate(row({1, 2, 3, 4}));
  EXPECT_THROW(query_interval(s, {}, 0, 2), DomainError);
  EXPECT_THROW(query_interval(s, {}, 3, 2), DomainError);
  EXPECT_THROW(query_interval(s, {}, 1, 5), DomainError);
  EXPECT_THROW(query_interval(row({1, 2}), {}, 1, 2), PreconditionError);  // not integrated
}

TEST(QueryRect, Examples) {
  const auto s = integrate(grid2({{1, 2}, {3, 4}}));
  EXPECT_EQ(query_rect(s, {}, 1, 2, 1, 2), 10u);
  EXPECT_EQ(query_rect(s, {}, 2, 2, 2, 2), 4u);
  EXPECT_EQ(query_rect(s, {}, 1, 2, 2, 2), 6u);
  EXPECT_THROW(query_rect(s, {}, 1, 3, 1, 1), DomainError);
}

TEST(QueryWrapped, Examples) {
  const auto s = integrate(row({1, 2, 3, 4}, true));
  EXPECT_EQ(query_wrapped_interval(s, {}, 4, 1), 5u);
  EXPECT_EQ(query_wrapped_interval(s, {}, 1, 4), 10u);
  EXPECT_EQ(query_wrapped_interval(s, {}, 3, 2), 10u);
  const auto z = integrate(row({0, 0, 0}, true));
  EXPECT_EQ(query_wrapped_interval(z, {}, 3, 1), 0u);
  const auto plain = integrate(row({1, 2, 3}));
  EXPECT_THROW(query_wrapped_interval(plain, {}, 3, 1), PreconditionError);
}

TEST(QueryWrapped, RectAcrossSeam) {
  CumulativeSpace s({AxisSpec{AxisKind::Bip, 2}, AxisSpec{AxisKind::Bip, 3, 1, 1.0, true}});
  int v = 1;
  for (int i = 1; i <= 2; ++i) {
    for (int j = 1; j <= 3; ++j) {
      const std::array<int, 2> idx{i, j};
      s.add(idx, static_cast<CumulativeSpace::Cell>(v++));
    }
  }
  const auto in = integrate(s);
  // rows {1,2,3},{4,5,6}; columns 3 then 1
  EXPECT_EQ(query_wrapped_rect(in, {}, 1, 2, 3, 1), 3u + 1u + 6u + 4u);
}

TEST(QueryCost, FixedNumberOfReads) {
  const auto s1 = integrate(row({1, 2, 3, 4, 5, 6}));
  const auto s2 = integrate(grid2({{1, 2, 3}, {4, 5, 6}, {7, 8, 9}}));
  ReadCounter c;
  query_interval(s1, {}, 2, 5, &c);
  EXPECT_EQ(c.reads, 2u);
  c = {};
  query_rect(s2, {}, 1, 3, 2, 3, &c);
  EXPECT_EQ(c.reads, 4u);
  c = {};
  query_interval(s1, {}, 1, 6, &c);
  EXPECT_EQ(c.reads, 2u);
}

TEST(AccumProperties, OracleEquivalenceOnRandomGrids) {
  std::mt19937_64 rng(3);
  auto draw = [&](int lo, int hi) { return std::uniform_int_distribution<int>(lo, hi)(rng); };
  for (int g = 0; g < 500; ++g) {
    const int m = draw(1, 2);
    const int monos = draw(0, 1);
    std::vector<AxisSpec> axes;
    for (int i = 0; i < monos; ++i) {
      axes.push_back({AxisKind::Mono, draw(1, 4)});
    }
    for (int i = 0; i < m; ++i) {
      axes.push_back({AxisKind::Bip, draw(1, m == 1 ? 32 : 16)});
    }
    CumulativeSpace j(axes);
    const int mono_size = monos ? axes[0].size : 1;
    const int n1 = axes[static_cast<std::size_t>(monos)].size;
    const int n2 = m == 2 ? axes.back().size : 1;
    std::vector<std::vector<std::vector<std::uint64_t>>> naive(
        mono_size, std::vector<std::vector<std::uint64_t>>(n1, std::vector<std::uint64_t>(n2, 0)));
    for (int a = 0; a < mono_size; ++a) {
      for (int x = 0; x < n1; ++x) {
        for (int y = 0; y < n2; ++y) {
          const auto v = static_cast<CumulativeSpace::Cell>(draw(0, 9));
          std::vector<int> idx;
          if (monos) idx.push_back(a + 1);
          idx.push_back(x + 1);
          if (m == 2) idx.push_back(y + 1);
          j.add(idx, v);
          naive[a][x][y] = v;
        }
      }
    }
    const auto in = integrate(j);
    // Prefix sums equal naive cumulative sums.
    for (int a = 0; a < mono_size; ++a) {
      for (int x = 0; x < n1; ++x) {
        for (int y = 0; y < n2; ++y) {
          std::uint64_t sum = 0;
          for (int i = 0; i <= x; ++i)
            for (int k = 0; k <= y; ++k) sum += naive[a][i][k];
          std::vector<int> idx;
          if (monos) idx.push_back(a + 1);
          idx.push_back(x + 1);
          if (m == 2) idx.push_back(y + 1);
          ASSERT_EQ(in.at(idx), sum);
        }
      }
    }
    for (int q = 0; q < 100; ++q) {
      const int a = draw(0, mono_size - 1);
      int lo1 = draw(1, n1), hi1 = draw(1, n1);
      if (lo1 > hi1) std::swap(lo1, hi1);
      int lo2 = draw(1, n2), hi2 = draw(1, n2);
      if (lo2 > hi2) std::swap(lo2, hi2);
      std::uint64_t expected = 0;
      for (int i = lo1; i <= hi1; ++i)
        for (int k = (m == 2 ? lo2 : 1); k <= (m == 2 ? hi2 : 1); ++k) expected += naive[a][i - 1][k - 1];
      std::vector<int> mono;
      if (monos) mono.push_back(a + 1);
      const auto got = m == 1 ? query_interval(in, mono, lo1, hi1) : query_rect(in, mono, lo1, hi1, lo2, hi2);
      ASSERT_EQ(got, expected);
    }
  }
}

TEST(AccumProperties, IntegrationIsLinear) {
  std::mt19937_64 rng(8);
  for (int t = 0; t < 50; ++t) {
    std::vector<AxisSpec> axes{{AxisKind::Mono, 3}, {AxisKind::Bip, 5}, {AxisKind::Bip, 7}};
    CumulativeSpace a(axes), b(axes);
    for (int k = 0; k < 40; ++k) {
      const std::array<int, 3> idx{static_cast<int>(rng() % 3) + 1, static_cast<int>(rng() % 5) + 1,
                                   static_cast<int>(rng() % 7) + 1};
      (k % 2 ? a : b).add(idx, static_cast<CumulativeSpace::Cell>(rng() % 5));
    }
    CumulativeSpace sum = a;
    sum += b;
    auto ia = integrate(a);
    ia += integrate(b);
    EXPECT_EQ(integrate(sum), ia);
  }
}

TEST(AccumProperties, MonotoneAlongBipAxes) {
  auto s = integrate(grid2({{3, 0, 1}, {0, 2, 0}}));
  for (int i = 1; i <= 2; ++i) {
    for (int j = 2; j <= 3; ++j) {
      const std::array<int, 2> a{i, j - 1}, b{i, j};
      EXPECT_LE(s.at(a), s.at(b));
    }
  }
}

TEST(CumulativeSpace, AxisValidation) {
  EXPECT_THROW(CumulativeSpace({AxisSpec{AxisKind::Bip, 2}, AxisSpec{AxisKind::Mono, 2}}), DomainError);
  EXPECT_THROW(CumulativeSpace({AxisSpec{AxisKind::Bip, 2}, AxisSpec{AxisKind::Bip, 2}, AxisSpec{AxisKind::Bip, 2}}),
               DomainError);
  EXPECT_THROW(CumulativeSpace({AxisSpec{AxisKind::Bip, 0}}), DomainError);
  EXPECT_THROW(CumulativeSpace({AxisSpec{AxisKind::Bip, 2, 1, 0.0}}), DomainError);
  auto s = integrate(row({1}));
  const std::array<int, 1> idx{1};
  EXPECT_THROW(s.add(idx), PreconditionError);
}

TEST(CumulativeSpace, CsvRoundTrip) {
  std::vector<AxisSpec> axes{{AxisKind::Mono, 2}, {AxisKind::Bip, 3}, {AxisKind::Bip, 2}};
  CumulativeSpace s(axes);
  const std::array<int, 3> i1{1, 2, 1}, i2{2, 3, 2};
  s.add(i1, 4);
  s.add(i2, 9);
  const auto in = integrate(s);
  std::stringstream buf;
  write_csv(buf, in);
  std::string header;
  std::getline(std::stringstream(buf.str()), header);
  EXPECT_EQ(header, "2,3,2");
  const auto back = read_csv(buf, axes, true);
  EXPECT_EQ(back, in);
}
