#ifndef HETNET_NUMERIC_KAHAN_HPP
#define HETNET_NUMERIC_KAHAN_HPP

#include <cmath>

namespace hetnet::num {

// Kahan-Neumaier compensated accumulator. Sums of many small positive
// terms (partition sums, series tails) stay accurate to ~1 ulp of the
// running total instead of growing an O(n) rounding error.
class kahan_sum {
  public:
    void add(double x) {
        double t = sum_ + x;
        if (std::abs(sum_) >= std::abs(x))
            comp_ += (sum_ - t) + x;
        else
            comp_ += (x - t) + sum_;
        sum_ = t;
    }

    double value() const { return sum_ + comp_; }

  private:
    double sum_ = 0.0;
    double comp_ = 0.0;
};

} // namespace hetnet::num

#endif
