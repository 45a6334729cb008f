#include "hecke/operators.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace hecke {

DensityFn density_one() {
    return DensityFn{[](double) { return 1.0; }, "one"};
}

DensityFn density_inv_x() {
    return DensityFn{[](double x) { return 1.0 / x; }, "invx"};
}

DensityFn density_by_name(const std::string& name) {
    if (name == "one") return density_one();
    if (name == "invx") return density_inv_x();
    throw std::invalid_argument("unknown density: " + name);
}

double pf_apply(const FareyMap& fm, const RealFn& f, double x) {
    if (!(x > 0.0) || x > 1.0) throw std::domain_error("pf_apply requires x in (0,1]");
    Kahan acc;
    for (const Mob& p : fm.alphabet_float()) acc.add(p.deriv_abs(x) * f(p.apply(x)));
    return acc.value();
}

double pf_iterate_pointwise(const FareyMap& fm, const RealFn& f, double x, int n, int cap) {
    if (!(x > 0.0) || x > 1.0) throw std::domain_error("x must be in (0,1]");
    word_count(fm.context(), n, cap);
    return word_sum(fm.alphabet_float(), n,
                    [&](const Mob& h) { return h.deriv_abs(x) * f(h.apply(x)); });
}

double pf_iterate_recursive(const FareyMap& fm, const RealFn& f, double x, int n) {
    if (n == 0) return f(x);
    return pf_apply(
        fm, [&](double y) { return pf_iterate_recursive(fm, f, y, n - 1); }, x);
}

std::vector<double> pf_iterate_one_batch(const FareyMap& fm, const std::vector<double>& xs, int n,
                                         int cap) {
    word_count(fm.context(), n, cap);
    std::vector<double> acc(xs.size(), 0.0);
    for_each_word_mob(fm.alphabet_float(), n, [&](const Mob& h) {
        for (size_t i = 0; i < xs.size(); ++i) {
            const double t = h.c * xs[i] + h.d;
            acc[i] += 1.0 / (t * t);
        }
    });
    return acc;
}

double transfer_apply(const FareyMap& fm, const RealFn& f, double x) {
    return x * pf_apply(fm, [&](double y) { return f(y) / y; }, x);
}

double transfer_iterate_pointwise(const FareyMap& fm, const RealFn& f, double x, int n, int cap) {
    if (!(x > 0.0) || x > 1.0) throw std::domain_error("x must be in (0,1]");
    word_count(fm.context(), n, cap);
    return x * word_sum(fm.alphabet_float(), n, [&](const Mob& h) {
               const double hx = h.apply(x);
               return h.deriv_abs(x) * f(hx) / hx;
           });
}

double eigenfunction_residual(const FareyMap& fm, int grid_size) {
    if (grid_size < 2) throw std::invalid_argument("grid_size must be >= 2");
    double worst = 0.0;
    for (int i = 1; i <= grid_size; ++i) {
        const double x = static_cast<double>(i) / grid_size;
        const double ph = pf_apply(fm, [](double y) { return 1.0 / y; }, x);
        worst = std::max(worst, std::abs(ph - 1.0 / x) * x);
    }
    return worst;
}

double quadrature_midpoint(const RealFn& f, double a, double b, int panels) {
    if (panels < 1) throw std::invalid_argument("panels must be >= 1");
    const double h = (b - a) / panels;
    Kahan acc;
    for (int i = 0; i < panels; ++i) acc.add(f(a + (i + 0.5) * h));
    return acc.value() * h;
}

UlamMatrix ulam_build(const FareyMap& fm, int bins) {
    if (bins < 2) throw std::invalid_argument("bins must be >= 2");
    UlamMatrix m;
    m.bins = bins;
    m.rows.assign(static_cast<size_t>(bins), {});
    const double w = 1.0 / bins;
    for (int i = 0; i < bins; ++i) {
        std::vector<std::pair<int, double>>& row = m.rows[static_cast<size_t>(i)];
        for (const Mob& p : fm.alphabet_float()) {
            // Image of bin_i under the inverse branch p, as a sorted interval.
            double u = p.apply(i * w);
            double v = p.apply((i + 1) * w);
            if (u > v) std::swap(u, v);
            u = std::max(0.0, u);
            v = std::min(1.0, v);
            int j0 = std::max(0, static_cast<int>(std::floor(u * bins)));
            int j1 = std::min(bins - 1, static_cast<int>(std::floor(v * bins)));
            for (int j = j0; j <= j1; ++j) {
                const double lo = std::max(u, j * w);
                const double hi = std::min(v, (j + 1) * w);
                if (hi > lo) row.emplace_back(j, (hi - lo) / w);
            }
        }
        // Consolidate duplicate columns.
        std::sort(row.begin(), row.end());
        size_t out = 0;
        for (size_t k = 0; k < row.size(); ++k) {
            if (out > 0 && row[out - 1].first == row[k].first) {
                row[out - 1].second += row[k].second;
            } else {
                row[out++] = row[k];
            }
        }
        row.resize(out);
    }
    return m;
}

std::vector<double> ulam_apply(const UlamMatrix& m, const std::vector<double>& density) {
    if (static_cast<int>(density.size()) != m.bins)
        throw std::invalid_argument("density size does not match bin count");
    std::vector<double> out(density.size(), 0.0);
    for (int i = 0; i < m.bins; ++i) {
        double s = 0.0;
        for (const auto& [j, v] : m.rows[static_cast<size_t>(i)])
            s += v * density[static_cast<size_t>(j)];
        out[static_cast<size_t>(i)] = s;
    }
    return out;
}

std::vector<double> ulam_iterate(const UlamMatrix& m, std::vector<double> density, int iters) {
    for (int it = 0; it < iters; ++it) density = ulam_apply(m, density);
    return density;
}

}  // namespace hecke
