#ifndef HETNET_NUMERIC_PARTITIONS_HPP
#define HETNET_NUMERIC_PARTITIONS_HPP

#include <cstdint>
#include <vector>

// Integer partitions in multiplicity form and weak 3-part compositions.
// These index the derivative expansions of the interference Laplace
// transforms: a partition (m_1, ..., m_n) of n with sum_a a*m_a = n
// selects one product of per-order annulus/tail factors, and a
// composition (n1, n2, n3) of n splits a derivative order across the
// three independent interference fields.

namespace hetnet::num {

struct partition {
    // counts[a-1] = multiplicity of part a; sum_a a*counts[a-1] = n.
    std::vector<int> counts;
    // Number of parts, sum_a counts[a-1].
    int order = 0;
    // n! / prod_a counts[a-1]!  (the weight appearing alongside factors
    // that already absorb the 1/a! of each derivative).
    double weight = 0.0;
    // prod_a 1 / counts[a-1]!  (the weight left after the enclosing
    // multinomial and factorial normalizations cancel).
    double inv_mult_factorial = 0.0;
};

using partition_set = std::vector<partition>;

// All partitions of n (n = 0 gives the single empty partition).
// Thread-safe; tables are built once. n must lie in [0, max_partition_order].
inline constexpr int max_partition_order = 32;
const partition_set& enumerate_partitions(int n);

// Number of partitions of n, from the enumeration table.
std::size_t partition_count(int n);

struct composition3 {
    int n1 = 0, n2 = 0, n3 = 0;
};

// All (n1, n2, n3) >= 0 with n1 + n2 + n3 = n, lexicographic in (n1, n2).
std::vector<composition3> enumerate_compositions3(int n);

// n! / (n1! n2! n3!) for a composition of n. Exact for n <= 20.
std::uint64_t multinomial3(int n, const composition3& c);

// n! as a double (exact for n <= 20, lgamma-based beyond).
double factorial(int n);

} // namespace hetnet::num

#endif
