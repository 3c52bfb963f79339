#include "mastermind/stats.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>

namespace mastermind::stats {

Summary mean_sem(std::span<const double> values)
{
    if (values.empty())
        throw std::invalid_argument("mean_sem needs at least one value");

    Summary s;
    s.n = values.size();
    const double n = double(s.n);
    s.mean = std::accumulate(values.begin(), values.end(), 0.0) / n;
    if (s.n > 1)
    {
        double ss = 0.0;
        for (double v : values)
            ss += (v - s.mean) * (v - s.mean);
        s.sd = std::sqrt(ss / (n - 1.0));
        s.sem = s.sd / std::sqrt(n);
    }
    std::vector<double> sorted(values.begin(), values.end());
    std::sort(sorted.begin(), sorted.end());
    const std::size_t mid = s.n / 2;
    s.median = s.n % 2 ? sorted[mid] : 0.5 * (sorted[mid - 1] + sorted[mid]);
    s.max = sorted.back();
    return s;
}

namespace {

// Nonzero paired differences with their mid-ranks, doubled so that every
// rank is an integer.
struct SignedRanks
{
    std::vector<int> doubled_ranks;
    std::vector<bool> positive;
    std::vector<std::size_t> tie_sizes;

    std::size_t n() const { return doubled_ranks.size(); }
    long doubled_positive_sum() const
    {
        long w = 0;
        for (std::size_t i = 0; i < n(); ++i)
            if (positive[i])
                w += doubled_ranks[i];
        return w;
    }
};

SignedRanks rank_differences(std::span<const double> a, std::span<const double> b)
{
    if (a.empty() || a.size() != b.size())
        throw std::invalid_argument("paired samples must be nonempty and of equal size");

    std::vector<double> d;
    for (std::size_t i = 0; i < a.size(); ++i)
        if (a[i] != b[i])
            d.push_back(a[i] - b[i]);

    std::vector<std::size_t> order(d.size());
    std::iota(order.begin(), order.end(), 0);
    std::sort(order.begin(), order.end(), [&](std::size_t x, std::size_t y) {
        return std::abs(d[x]) < std::abs(d[y]);
    });

    SignedRanks r;
    r.doubled_ranks.resize(d.size());
    r.positive.resize(d.size());
    for (std::size_t i = 0; i < d.size();)
    {
        std::size_t j = i;
        while (j + 1 < d.size() && std::abs(d[order[j + 1]]) == std::abs(d[order[i]]))
            ++j;
        // ranks i+1 .. j+1 share their mean; doubled: i + j + 2
        for (std::size_t k = i; k <= j; ++k)
            r.doubled_ranks[order[k]] = int(i + j + 2);
        r.tie_sizes.push_back(j - i + 1);
        i = j + 1;
    }
    for (std::size_t i = 0; i < d.size(); ++i)
        r.positive[i] = d[i] > 0;
    return r;
}

double exact_p(const SignedRanks &r)
{
    const std::size_t n = r.n();
    long max_sum = 0;
    for (int v : r.doubled_ranks)
        max_sum += v;

    // ways[s]: number of sign assignments whose doubled positive-rank sum is s
    std::vector<double> ways(std::size_t(max_sum) + 1, 0.0);
    ways[0] = 1.0;
    long reach = 0;
    for (int v : r.doubled_ranks)
    {
        for (long s = reach; s >= 0; --s)
            if (ways[s] != 0.0)
                ways[s + v] += ways[s];
        reach += v;
    }
    const double total = std::ldexp(1.0, int(n));
    const long w = r.doubled_positive_sum();
    double lower = 0.0, upper = 0.0;
    for (long s = 0; s <= max_sum; ++s)
    {
        if (s <= w)
            lower += ways[s];
        if (s >= w)
            upper += ways[s];
    }
    return std::min(1.0, 2.0 * std::min(lower, upper) / total);
}

double normal_p(const SignedRanks &r)
{
    const double n = double(r.n());
    const double w = 0.5 * double(r.doubled_positive_sum());
    double tie_term = 0.0;
    for (std::size_t t : r.tie_sizes)
        tie_term += double(t) * double(t) * double(t) - double(t);
    const double var = n * (n + 1.0) * (2.0 * n + 1.0) / 24.0 - tie_term / 48.0;
    if (var <= 0.0)
        return 1.0;
    double z = w - n * (n + 1.0) / 4.0;
    const double correction = z > 0 ? 0.5 : (z < 0 ? -0.5 : 0.0);
    z = (z - correction) / std::sqrt(var);
    // two-sided: 2 * Phi(-|z|)
    return std::min(1.0, std::erfc(std::abs(z) / std::sqrt(2.0)));
}

} // namespace

double wilcoxon_signed_rank(std::span<const double> a, std::span<const double> b)
{
    const SignedRanks r = rank_differences(a, b);
    if (r.n() == 0)
        return 1.0;
    return r.n() <= kExactWilcoxonLimit ? exact_p(r) : normal_p(r);
}

double wilcoxon_signed_rank_exact(std::span<const double> a, std::span<const double> b)
{
    const SignedRanks r = rank_differences(a, b);
    return r.n() == 0 ? 1.0 : exact_p(r);
}

double wilcoxon_signed_rank_normal(std::span<const double> a, std::span<const double> b)
{
    const SignedRanks r = rank_differences(a, b);
    return r.n() == 0 ? 1.0 : normal_p(r);
}

} // namespace mastermind::stats
