#include "hecke/wordsum.hpp"

#include <atomic>
#include <cstdlib>
#include <thread>

namespace hecke {

Mob to_mob(const GroupElem& g) {
    return Mob{g.a.to_double(), g.b.to_double(), g.c.to_double(), g.d.to_double(),
               static_cast<double>(g.det)};
}

std::vector<Mob> alphabet_float(const RingContext& ctx) {
    std::vector<Mob> out;
    for (const GroupElem& g : alphabet(ctx)) out.push_back(to_mob(g));
    return out;
}

int worker_count() {
    const char* env = std::getenv("HF_THREADS");
    long v = 0;
    if (env != nullptr) v = std::strtol(env, nullptr, 10);
    if (v <= 0) {
        const unsigned hw = std::thread::hardware_concurrency();
        v = hw == 0 ? 1 : static_cast<long>(hw);
    }
    if (v > 64) v = 64;
    return static_cast<int>(v);
}

namespace {

// Sums over the lexicographic index range [lo, hi) via an odometer that keeps
// partial matrix products per digit position.
Kahan sum_range(const std::vector<Mob>& alpha, int n, std::uint64_t lo, std::uint64_t hi,
                const std::function<double(const Mob&)>& term) {
    Kahan acc;
    if (lo >= hi) return acc;
    if (n == 0) {
        acc.add(term(Mob::identity()));
        return acc;
    }
    const std::uint64_t base = alpha.size();
    std::vector<int> digits(static_cast<size_t>(n), 0);
    std::uint64_t rem = lo;
    for (int pos = n - 1; pos >= 0; --pos) {
        digits[static_cast<size_t>(pos)] = static_cast<int>(rem % base);
        rem /= base;
    }
    std::vector<Mob> stack(static_cast<size_t>(n + 1));
    stack[0] = Mob::identity();
    for (int i = 0; i < n; ++i)
        stack[i + 1] = stack[i].mul(alpha[static_cast<size_t>(digits[i])]);
    for (std::uint64_t idx = lo; idx < hi; ++idx) {
        acc.add(term(stack[static_cast<size_t>(n)]));
        if (idx + 1 == hi) break;
        int pos = n - 1;
        while (digits[static_cast<size_t>(pos)] == static_cast<int>(base) - 1) {
            digits[static_cast<size_t>(pos)] = 0;
            --pos;
        }
        ++digits[static_cast<size_t>(pos)];
        for (int i = pos; i < n; ++i)
            stack[i + 1] = stack[i].mul(alpha[static_cast<size_t>(digits[i])]);
    }
    return acc;
}

}  // namespace

double word_sum(const std::vector<Mob>& alpha, int n,
                const std::function<double(const Mob&)>& term) {
    std::uint64_t total = 1;
    for (int i = 0; i < n; ++i) total *= alpha.size();

    // Chunk boundaries are independent of the worker count, so the merged
    // result is bitwise reproducible.
    const int chunks = total >= 65536 ? 64 : 1;
    std::vector<Kahan> partial(static_cast<size_t>(chunks));

    const int workers = std::min(worker_count(), chunks);
    if (workers <= 1) {
        for (int c = 0; c < chunks; ++c) {
            const std::uint64_t lo = total * static_cast<std::uint64_t>(c) / chunks;
            const std::uint64_t hi = total * (static_cast<std::uint64_t>(c) + 1) / chunks;
            partial[static_cast<size_t>(c)] = sum_range(alpha, n, lo, hi, term);
        }
    } else {
        std::atomic<int> next{0};
        auto run = [&]() {
            for (;;) {
                const int c = next.fetch_add(1);
                if (c >= chunks) return;
                const std::uint64_t lo = total * static_cast<std::uint64_t>(c) / chunks;
                const std::uint64_t hi = total * (static_cast<std::uint64_t>(c) + 1) / chunks;
                partial[static_cast<size_t>(c)] = sum_range(alpha, n, lo, hi, term);
            }
        };
        std::vector<std::thread> pool;
        for (int t = 0; t < workers; ++t) pool.emplace_back(run);
        for (auto& t : pool) t.join();
    }

    Kahan out;
    for (const Kahan& p : partial) {
        out.add(p.sum);
        out.add(p.comp);
    }
    return out.value();
}

}  // namespace hecke
