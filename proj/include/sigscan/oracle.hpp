#pragma once

#include <cstdint>

#include "sigscan/geometry.hpp"
#include "sigscan/image.hpp"
#include "sigscan/patterns.hpp"

// Reference implementations for tests. Nothing here touches cumulative
// spaces: membership is decided pixel by pixel from the parameter grid.
namespace sigscan::oracle {

/// Largest image side accepted by brute_best.
inline constexpr int kMaxSide = 32;

bool brute_contains(const PatternParams& params, Pixel pixel, const ParameterGrid& grid);

/// True pixels of the pattern, by a full pixel scan.
std::uint64_t brute_count(const BinaryImage& image, const PatternParams& params, const ParameterGrid& grid);
std::uint64_t brute_count(const BinaryImage& image, const PatternParams& params, const Quantization& q = {});

/// Exhaustive best-per-cardinality table. Throws DomainError above kMaxSide.
BestPerCardinality brute_best(const BinaryImage& image, const FamilyConfig& config);

}  // namespace sigscan::oracle
