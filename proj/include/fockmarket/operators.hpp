#pragma once

#include <cstdint>
#include <optional>

#include "fockmarket/sector.hpp"
#include "fockmarket/sparse_operator.hpp"

namespace fockmarket {

enum class LadderKind { Lower, Raise, Number };

// k!/(k-m)! resp. (k+m)!/k!. Exact integer accumulation while the largest
// factorial involved stays below 21!, log-gamma beyond that.
double factorial_ratio_falling(std::int64_t k, std::int64_t m);
double factorial_ratio_rising(std::int64_t k, std::int64_t m);

// Matrix of a_mode (Lower), a_mode^dag (Raise) or n_mode (Number) restricted
// to the sector basis; transitions whose image lies outside the sector are
// dropped.
SparseOperator ladder_matrix(const FockSector& sector, std::size_t mode, LadderKind kind);

// a_dst^dag a_src (c_dst)^M (c_src^dag)^M restricted to the sector: moves one
// share quantum src -> dst against M cash quanta dst -> src, with weight
// sqrt((n_dst+1) n_src) * sqrt(k_dst!/(k_dst-M)!) * sqrt((k_src+M)!/k_src!).
// For M = 0 the cash modes are unused and may be omitted. States failing
// n_src >= 1 or k_dst >= M are annihilated; an admissible image that leaves
// the sector means the sector was not closed under this hop and throws
// InternalError.
SparseOperator hop_operator(const FockSector& sector, std::size_t dst_share, std::size_t src_share,
                            std::optional<std::size_t> dst_cash, std::optional<std::size_t> src_cash,
                            std::int64_t cash_quanta);

}  // namespace fockmarket
