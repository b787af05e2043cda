#include "hetnet/numeric/partitions.hpp"

#include <array>
#include <cmath>
#include <string>

#include "hetnet/errors.hpp"

namespace hetnet::num {

namespace {

// Largest part value times multiplicity stays <= 32, so every count and
// factorial here is tiny; weights are computed in double once per entry.
void fill_weights(partition& p, int n) {
    p.order = 0;
    double log_denom = 0.0;
    double inv = 1.0;
    for (int a = 1; a <= n; ++a) {
        const int m = p.counts[a - 1];
        p.order += m;
        log_denom += std::lgamma(m + 1.0);
        inv /= factorial(m);
    }
    p.weight = std::exp(std::lgamma(n + 1.0) - log_denom);
    p.inv_mult_factorial = inv;
}

// Recursively assign parts <= max_part summing to remaining.
void emit(int n, int remaining, int max_part, std::vector<int>& counts,
          partition_set& out) {
    if (remaining == 0) {
        partition p;
        p.counts = counts;
        fill_weights(p, n);
        out.push_back(std::move(p));
        return;
    }
    for (int a = std::min(remaining, max_part); a >= 1; --a) {
        ++counts[a - 1];
        emit(n, remaining - a, a, counts, out);
        --counts[a - 1];
    }
}

std::vector<partition_set> build_all() {
    std::vector<partition_set> all(max_partition_order + 1);
    for (int n = 0; n <= max_partition_order; ++n) {
        std::vector<int> counts(n, 0);
        if (n == 0) {
            partition empty;
            empty.weight = 1.0;
            empty.inv_mult_factorial = 1.0;
            all[0].push_back(std::move(empty));
        } else {
            emit(n, n, n, counts, all[n]);
        }
    }
    return all;
}

const std::array<double, 21> kFactorials = [] {
    std::array<double, 21> f{};
    f[0] = 1.0;
    for (int n = 1; n <= 20; ++n) f[n] = f[n - 1] * n;
    return f;
}();

} // namespace

const partition_set& enumerate_partitions(int n) {
    // Magic-static: built exactly once, safe under concurrent first use.
    static const std::vector<partition_set> all = build_all();
    if (n < 0 || n > max_partition_order)
        throw domain_error("enumerate_partitions: order " + std::to_string(n) +
                           " outside [0, " + std::to_string(max_partition_order) + "]");
    return all[n];
}

std::size_t partition_count(int n) { return enumerate_partitions(n).size(); }

std::vector<composition3> enumerate_compositions3(int n) {
    if (n < 0) throw domain_error("enumerate_compositions3: n must be >= 0");
    std::vector<composition3> out;
    out.reserve(static_cast<std::size_t>(n + 1) * (n + 2) / 2);
    for (int n1 = 0; n1 <= n; ++n1)
        for (int n2 = 0; n2 <= n - n1; ++n2)
            out.push_back({n1, n2, n - n1 - n2});
    return out;
}

std::uint64_t multinomial3(int n, const composition3& c) {
    if (c.n1 < 0 || c.n2 < 0 || c.n3 < 0 || c.n1 + c.n2 + c.n3 != n)
        throw domain_error("multinomial3: parts must be >= 0 and sum to n");
    // Product of two binomials keeps intermediates within uint64 for the
    // n <= 20 range used here.
    auto binom = [](int m, int k) {
        std::uint64_t r = 1;
        for (int i = 1; i <= k; ++i)
            r = r * static_cast<std::uint64_t>(m - k + i) / static_cast<std::uint64_t>(i);
        return r;
    };
    if (n > 20)
        throw domain_error("multinomial3: exact evaluation limited to n <= 20");
    return binom(n, c.n1) * binom(n - c.n1, c.n2);
}

double factorial(int n) {
    if (n < 0) throw domain_error("factorial: n must be >= 0");
    if (n <= 20) return kFactorials[static_cast<std::size_t>(n)];
    return std::exp(std::lgamma(n + 1.0));
}

} // namespace hetnet::num
