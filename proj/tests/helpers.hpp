#pragma once

#include "wdam/instance.hpp"
#include "wdam/limsup.hpp"
#include "wdam/power.hpp"

#include <random>

namespace wdam::testing {

inline Rat random_rat(std::mt19937_64& rng, long max_num, long max_den) {
    std::uniform_int_distribution<long> num(1, max_num);
    std::uniform_int_distribution<long> den(1, max_den);
    Rat r(num(rng), den(rng));
    r.canonicalize();
    return r;
}

// Random weight vector satisfying all WeightVector invariants; when
// require_heavy is set, resamples until the total weight sum exceeds 1.
inline WeightVector random_weights(std::mt19937_64& rng, unsigned max_dim = 5,
                                   bool require_heavy = true) {
    std::uniform_int_distribution<unsigned> dim(1, max_dim);
    for (;;) {
        unsigned d = dim(rng), m = dim(rng);
        // tail: m positive rationals with sum < 1
        std::vector<Rat> tail;
        Rat tail_sum(0);
        bool ok = true;
        for (unsigned j = 0; j < m; ++j) {
            Rat t = random_rat(rng, 6, 8 * m);
            if (tail_sum + t >= 1) {
                ok = false;
                break;
            }
            tail.push_back(t);
            tail_sum += t;
        }
        if (!ok) continue;
        Rat tail_max(0);
        for (const auto& t : tail) tail_max = std::max(tail_max, t);

        // head: weakly decreasing, bottom at least the tail max
        std::vector<Rat> head(d);
        Rat cur = tail_max;
        std::uniform_int_distribution<int> bump(0, 3);
        for (unsigned i = d; i >= 1; --i) {
            if (bump(rng)) cur += random_rat(rng, 4, 9);
            head[i - 1] = cur;
        }
        std::vector<Rat> taus = head;
        taus.insert(taus.end(), tail.begin(), tail.end());

        WeightVector w = validate_weights(taus, d, m);
        if (require_heavy && w.total_sum() <= 1) continue;
        return w;
    }
}

// f(x) = x^2 on a configurable interval, the workhorse instance.
inline ManifoldSpec parabola(const Rat& lo = Rat(0), const Rat& hi = Rat(1)) {
    ManifoldSpec spec;
    spec.d = 1;
    spec.m = 1;
    spec.domain = RationalBox({Interval{lo, hi}});
    Polynomial f(1);
    f.add_term(Rat(1), {2});
    spec.components.push_back(f);
    return spec;
}

// Cofactor-expansion determinant, the independent oracle for the Minkowski
// matrix check. Exponential, fine for n+1 <= 11.
inline Rat cofactor_det(const std::vector<std::vector<Rat>>& a) {
    size_t n = a.size();
    if (n == 1) return a[0][0];
    Rat det(0);
    std::vector<std::vector<Rat>> minor(n - 1, std::vector<Rat>(n - 1));
    for (size_t col = 0; col < n; ++col) {
        if (a[0][col] == 0) continue;
        for (size_t r = 1; r < n; ++r) {
            size_t cc = 0;
            for (size_t c = 0; c < n; ++c) {
                if (c == col) continue;
                minor[r - 1][cc++] = a[r][c];
            }
        }
        Rat term = a[0][col] * cofactor_det(minor);
        if (col % 2)
            det -= term;
        else
            det += term;
    }
    return det;
}

// Naive per-cell / per-rectangle intersection marking; oracle for box_count
// and coverage_fraction. Loops over every cell and every rectangle.
inline std::uint64_t brute_force_box_count(const RectangleFamily& family, const Rat& delta,
                                           std::uint64_t* total_cells = nullptr) {
    size_t d = family.domain.dim();
    std::vector<std::uint64_t> cells(d);
    std::uint64_t total = 1;
    for (size_t i = 0; i < d; ++i) {
        Rat ratio = (family.domain.axis(i).hi - family.domain.axis(i).lo) / delta;
        cells[i] = ratio.get_num().get_ui();
        total *= cells[i];
    }
    if (total_cells) *total_cells = total;

    std::uint64_t hit = 0;
    std::vector<std::uint64_t> idx(d, 0);
    for (std::uint64_t flat = 0; flat < total; ++flat) {
        std::uint64_t rest = flat;
        for (size_t i = d; i >= 1; --i) {
            idx[i - 1] = rest % cells[i - 1];
            rest /= cells[i - 1];
        }
        bool covered = false;
        for (const auto& rect : family.rectangles) {
            bool inside = true;
            for (size_t i = 0; i < d && inside; ++i) {
                Rat lo = family.domain.axis(i).lo + Rat(static_cast<unsigned long>(idx[i])) * delta;
                Rat hi = lo + delta;
                Rat center = Rat(rect.p[i], rect.q);
                center.canonicalize();
                PowerProduct h = family.half_side(i, rect.q);
                // interior of [lo,hi] meets [center-h, center+h]?
                Rat need1 = lo - center;
                Rat need2 = center - hi;
                Rat need = std::max(need1, need2);
                inside = h.greater_than(need);
            }
            if (inside) {
                covered = true;
                break;
            }
        }
        if (covered) ++hit;
    }
    return hit;
}

}  // namespace wdam::testing
