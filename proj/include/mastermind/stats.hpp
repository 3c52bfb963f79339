// stats.hpp -- summary statistics and the paired signed-rank test

#pragma once

#include <cstddef>
#include <span>
#include <vector>

namespace mastermind::stats {

/// Sample size up to which the signed-rank distribution is enumerated
/// exactly; larger samples use the normal approximation.
inline constexpr std::size_t kExactWilcoxonLimit = 25;

struct Summary
{
    double mean = 0.0;
    double sem = 0.0;    ///< sd / sqrt(n); 0 for a single value
    double sd = 0.0;     ///< sample sd (n - 1 denominator)
    double median = 0.0;
    double max = 0.0;
    std::size_t n = 0;
};

/// Throws `std::invalid_argument` on an empty input.
Summary mean_sem(std::span<const double> values);

/// Two-sided p-value of the Wilcoxon signed-rank test on the paired
/// differences `a[i] - b[i]`.
///
/// Zero differences are dropped and tied magnitudes get mid-ranks. With at
/// most `kExactWilcoxonLimit` nonzero differences the null distribution of
/// the positive rank sum is enumerated exactly (conditional on the tie
/// pattern); otherwise the normal approximation with tie and continuity
/// corrections is used. Returns 1 when every difference is zero.
///
/// Throws `std::invalid_argument` if the samples are empty or differ in size.
double wilcoxon_signed_rank(std::span<const double> a, std::span<const double> b);

/// Same test with the branch forced, for cross-checking.
double wilcoxon_signed_rank_exact(std::span<const double> a, std::span<const double> b);
double wilcoxon_signed_rank_normal(std::span<const double> a, std::span<const double> b);

} // namespace mastermind::stats
