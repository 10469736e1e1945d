#include "fockmarket/operators.hpp"

#include <cmath>
#include <string>

#include "fockmarket/errors.hpp"

namespace fockmarket {

namespace {

constexpr std::int64_t kExactFactorialLimit = 20;  // 20! still fits a 64-bit integer

double product_range(std::int64_t lo, std::int64_t hi) {
  // lo * (lo+1) * ... * hi, exact when hi <= 20, log-gamma otherwise
  if (hi < lo) return 1.0;
  if (lo <= 0) return 0.0;
  if (hi <= kExactFactorialLimit) {
    std::uint64_t acc = 1;
    for (std::int64_t v = lo; v <= hi; ++v) acc *= static_cast<std::uint64_t>(v);
    return static_cast<double>(acc);
  }
  return std::exp(std::lgamma(static_cast<double>(hi) + 1.0) -
                  std::lgamma(static_cast<double>(lo)));
}

}  // namespace

double factorial_ratio_falling(std::int64_t k, std::int64_t m) {
  if (m < 0 || k < 0) throw ConfigError("factorial ratio takes non-negative arguments");
  if (m == 0) return 1.0;
  if (k - m < 0) return 0.0;
  return product_range(k - m + 1, k);
}

double factorial_ratio_rising(std::int64_t k, std::int64_t m) {
  if (m < 0 || k < 0) throw ConfigError("factorial ratio takes non-negative arguments");
  if (m == 0) return 1.0;
  return product_range(k + 1, k + m);
}

SparseOperator ladder_matrix(const FockSector& sector, std::size_t mode, LadderKind kind) {
  if (mode >= sector.mode_count()) throw ConfigError("ladder mode outside the sector's modes");
  std::vector<SparseOperator::Triplet> entries;
  entries.reserve(sector.dim());
  for (std::size_t col = 0; col < sector.dim(); ++col) {
    const OccupationVector& s = sector.state(col);
    const std::int64_t n = s[mode];
    switch (kind) {
      case LadderKind::Number:
        if (n != 0) entries.emplace_back(static_cast<int>(col), static_cast<int>(col),
                                         Complex(static_cast<double>(n), 0));
        break;
      case LadderKind::Lower: {
        if (n < 1) break;
        OccupationVector target = s;
        target[mode] -= 1;
        if (auto row = sector.index_of(target)) {
          entries.emplace_back(static_cast<int>(*row), static_cast<int>(col),
                               Complex(std::sqrt(static_cast<double>(n)), 0));
        }
        break;
      }
      case LadderKind::Raise: {
        OccupationVector target = s;
        target[mode] += 1;
        if (auto row = sector.index_of(target)) {
          entries.emplace_back(static_cast<int>(*row), static_cast<int>(col),
                               Complex(std::sqrt(static_cast<double>(n + 1)), 0));
        }
        break;
      }
    }
  }
  return SparseOperator::from_triplets(sector.dim(), entries);
}

SparseOperator hop_operator(const FockSector& sector, std::size_t dst_share, std::size_t src_share,
                            std::optional<std::size_t> dst_cash, std::optional<std::size_t> src_cash,
                            std::int64_t cash_quanta) {
  const std::size_t modes = sector.mode_count();
  if (dst_share >= modes || src_share >= modes || dst_share == src_share) {
    throw ConfigError("hop shares must be two distinct modes of the sector");
  }
  if (cash_quanta < 0) throw ConfigError("hop cash quanta must be non-negative");
  if (cash_quanta > 0 && (!dst_cash || !src_cash)) {
    throw ConfigError("hop with cash quanta needs both cash modes");
  }
  if (cash_quanta > 0 && (*dst_cash >= modes || *src_cash >= modes || *dst_cash == *src_cash)) {
    throw ConfigError("hop cash modes must be two distinct modes of the sector");
  }

  std::vector<SparseOperator::Triplet> entries;
  for (std::size_t col = 0; col < sector.dim(); ++col) {
    const OccupationVector& s = sector.state(col);
    if (s[src_share] < 1) continue;
    if (cash_quanta > 0 && s[*dst_cash] < cash_quanta) continue;

    OccupationVector target = s;
    target[dst_share] += 1;
    target[src_share] -= 1;
    double weight = std::sqrt(static_cast<double>(s[dst_share] + 1) *
                              static_cast<double>(s[src_share]));
    if (cash_quanta > 0) {
      target[*dst_cash] -= cash_quanta;
      target[*src_cash] += cash_quanta;
      weight *= std::sqrt(factorial_ratio_falling(s[*dst_cash], cash_quanta) *
                          factorial_ratio_rising(s[*src_cash], cash_quanta));
    }
    auto row = sector.index_of(target);
    if (!row) {
      throw InternalError("hop image leaves the sector; the sector is not closed under this hop");
    }
    entries.emplace_back(static_cast<int>(*row), static_cast<int>(col), Complex(weight, 0));
  }
  return SparseOperator::from_triplets(sector.dim(), entries);
}

}  // namespace fockmarket
