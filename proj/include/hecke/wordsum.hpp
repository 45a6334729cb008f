#pragma once

#include <cmath>
#include <cstdint>
#include <functional>
#include <vector>

#include "hecke/group.hpp"

namespace hecke {

// Float image of a group element: enough to evaluate the Moebius action and
// its derivative. Determinants are +-1, so |h'| = 1/(cx+d)^2.
struct Mob {
    double a, b, c, d;
    double det;

    double apply(double x) const { return (a * x + b) / (c * x + d); }
    double deriv(double x) const {
        const double t = c * x + d;
        return det / (t * t);
    }
    double deriv_abs(double x) const {
        const double t = c * x + d;
        return 1.0 / (t * t);
    }
    Mob mul(const Mob& o) const {
        return Mob{a * o.a + b * o.c, a * o.b + b * o.d, c * o.a + d * o.c, c * o.b + d * o.d,
                   det * o.det};
    }
    static Mob identity() { return Mob{1, 0, 0, 1, 1}; }
};

Mob to_mob(const GroupElem& g);
std::vector<Mob> alphabet_float(const RingContext& ctx);

// Neumaier-compensated accumulator.
struct Kahan {
    double sum = 0.0, comp = 0.0;

    void add(double x) {
        const double t = sum + x;
        if (std::abs(sum) >= std::abs(x)) {
            comp += (sum - t) + x;
        } else {
            comp += (x - t) + sum;
        }
        sum = t;
    }
    double value() const { return sum + comp; }
};

// Worker count from HF_THREADS (0 or unset = auto).
int worker_count();

// Sum of term(h) over all words h of length n in lexicographic order, with a
// compensated accumulator. The index range is split into a fixed number of
// chunks whose partial sums are merged in chunk order, so the result is
// bitwise identical for any worker count.
double word_sum(const std::vector<Mob>& alpha, int n, const std::function<double(const Mob&)>& term);

// Single-threaded lexicographic visit of all words of length n.
template <typename F>
void for_each_word_mob(const std::vector<Mob>& alpha, int n, F&& visit) {
    if (n == 0) {
        visit(Mob::identity());
        return;
    }
    const int base = static_cast<int>(alpha.size());
    std::vector<Mob> stack(static_cast<size_t>(n + 1));
    stack[0] = Mob::identity();
    std::vector<int> digits(static_cast<size_t>(n), 0);
    for (int i = 0; i < n; ++i) stack[i + 1] = stack[i].mul(alpha[static_cast<size_t>(digits[i])]);
    for (;;) {
        visit(stack[static_cast<size_t>(n)]);
        int pos = n - 1;
        while (pos >= 0 && digits[pos] == base - 1) {
            digits[pos] = 0;
            --pos;
        }
        if (pos < 0) break;
        ++digits[pos];
        for (int i = pos; i < n; ++i)
            stack[i + 1] = stack[i].mul(alpha[static_cast<size_t>(digits[i])]);
    }
}

}  // namespace hecke
