#include "wdam/limsup.hpp"

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <future>
#include <map>
#include <numeric>
#include <set>

namespace wdam {

namespace {

unsigned worker_count() {
    if (const char* env = std::getenv("WDAM_THREADS")) {
        long v = std::atol(env);
        if (v >= 1) return static_cast<unsigned>(v);
    }
    return 1;
}

// Precompiled polynomial component for the scaled-integer witness scan:
// f_j(p/q) = sum(coeff * prod p_i^e_i * q^(s-|e|)) / (L q^s).
struct ScaledComponent {
    std::vector<std::pair<Int, Polynomial::MultiIndex>> terms;  // integer coeffs L*c
    Int L;
    unsigned s;        // scale degree, >= max(total degree, 1)
    Int tau_num;       // tau_{d+j} = tau_num / tau_den
    unsigned long tau_den;
};

ScaledComponent compile_component(const Polynomial& f, const Rat& tau) {
    ScaledComponent sc;
    sc.L = f.coeff_denominator_lcm();
    sc.s = std::max(f.total_degree(), 1u);
    for (const auto& [mi, c] : f.terms()) {
        Rat ic = Rat(sc.L) * c;
        sc.terms.emplace_back(ic.get_num(), mi);
    }
    sc.tau_num = tau.get_num();
    sc.tau_den = tau.get_den().get_ui();
    return sc;
}

// Witness-set scan over one q range; entries come out sorted by (q, lex p).
std::vector<WitnessEntry> scan_witnesses(const ManifoldSpec& spec,
                                         const std::vector<ScaledComponent>& comps,
                                         const Int& q_from, const Int& q_to) {
    std::vector<WitnessEntry> out;
    unsigned d = spec.d;
    for (Int q = q_from; q <= q_to; ++q) {
        // per-q constants for each component
        struct QConst {
            Int M;        // L * q^(s-1); denominator of y = q f(p/q)
            Int M_pow;    // M^tau_den
            Int q_pow_tau;  // q^tau_num
            std::vector<Int> qpow;  // q^0 .. q^s
        };
        std::vector<QConst> qc(comps.size());
        for (size_t j = 0; j < comps.size(); ++j) {
            const auto& c = comps[j];
            auto& k = qc[j];
            k.qpow.resize(c.s + 1);
            k.qpow[0] = 1;
            for (unsigned e = 1; e <= c.s; ++e) k.qpow[e] = k.qpow[e - 1] * q;
            k.M = c.L * k.qpow[c.s - 1];
            mpz_pow_ui(k.M_pow.get_mpz_t(), k.M.get_mpz_t(), c.tau_den);
            mpz_pow_ui(k.q_pow_tau.get_mpz_t(), q.get_mpz_t(),
                       static_cast<unsigned long>(c.tau_num.get_ui()));
        }

        std::vector<Int> lo(d), hi(d);
        bool empty = false;
        for (unsigned i = 0; i < d; ++i) {
            lo[i] = ceil_rat(Rat(q) * spec.domain.axis(i).lo);
            hi[i] = floor_rat(Rat(q) * spec.domain.axis(i).hi);
            if (lo[i] > hi[i]) empty = true;
        }
        if (empty) continue;

        std::vector<Int> p = lo;
        Int numer, t, k2, pw, lhs;
        while (true) {
            bool ok = true;
            for (size_t j = 0; j < comps.size() && ok; ++j) {
                const auto& c = comps[j];
                const auto& kc = qc[j];
                numer = 0;
                for (const auto& [coeff, mi] : c.terms) {
                    unsigned total = 0;
                    Int term = coeff;
                    for (unsigned v = 0; v < d; ++v) {
                        for (unsigned e = 0; e < mi[v]; ++e) term *= p[v];
                        total += mi[v];
                    }
                    term *= kc.qpow[c.s - total];
                    numer += term;
                }
                // y = q f(p/q) = numer / M; nearest-integer distance k2/M
                mpz_mod(t.get_mpz_t(), numer.get_mpz_t(), kc.M.get_mpz_t());
                k2 = kc.M - t;
                if (t < k2) k2 = t;
                if (k2 != 0) {
                    // (2 k2 / M)^v < q^(-tau)  <=>  (2 k2)^v q^tau_num < M^v
                    mpz_pow_ui(pw.get_mpz_t(), Int(2 * k2).get_mpz_t(), c.tau_den);
                    lhs = pw * kc.q_pow_tau;
                    if (lhs >= kc.M_pow) ok = false;
                }
            }
            if (ok) {
                WitnessEntry e;
                e.p = p;
                e.q = q;
                out.push_back(std::move(e));
            }
            unsigned i = d;
            while (i > 0) {
                if (++p[i - 1] <= hi[i - 1]) break;
                p[i - 1] = lo[i - 1];
                --i;
            }
            if (i == 0) break;
        }
    }
    return out;
}

}  // namespace

WitnessSet build_witness_set(const ManifoldSpec& spec, const WeightVector& w, const Int& Q) {
    std::vector<ScaledComponent> comps;
    for (unsigned j = 0; j < spec.m; ++j)
        comps.push_back(compile_component(spec.components[j], w.tau(spec.d + j + 1)));

    WitnessSet ws;
    ws.horizon = Q;
    unsigned workers = worker_count();
    if (workers <= 1 || Q < 64) {
        ws.entries = scan_witnesses(spec, comps, 1, Q);
        return ws;
    }
    // contiguous q blocks, merged in order: deterministic regardless of degree
    std::vector<std::future<std::vector<WitnessEntry>>> parts;
    Int block = Q / workers + 1;
    for (Int from = 1; from <= Q; from += block) {
        Int to = std::min(Int(from + block - 1), Q);
        parts.push_back(std::async(std::launch::async, [&, from, to] {
            return scan_witnesses(spec, comps, from, to);
        }));
    }
    for (auto& f : parts) {
        auto v = f.get();
        ws.entries.insert(ws.entries.end(), v.begin(), v.end());
    }
    return ws;
}

bool witness_set_member(const ManifoldSpec& spec, const WeightVector& w,
                        const WitnessEntry& entry) {
    std::vector<Rat> point(spec.d);
    for (unsigned i = 0; i < spec.d; ++i) {
        point[i] = Rat(entry.p[i], entry.q);
        point[i].canonicalize();
    }
    if (!spec.domain.contains(point)) return false;
    for (unsigned j = 0; j < spec.m; ++j) {
        Rat dist = nearest_integer_distance(Rat(entry.q) * spec.components[j].eval(point));
        if (dist == 0) continue;
        PowerProduct lhs = PowerProduct::of(dist * 2, Rat(1));
        lhs.mul(Rat(entry.q), w.tau(spec.d + j + 1));
        if (!lhs.less_than(Rat(1))) return false;
    }
    return true;
}

CPrimeCertificate choose_c_prime(const DerivativeBounds& bounds, unsigned d, const Rat& tau_d) {
    CPrimeCertificate cert;
    cert.c_prime = bounds.D > 0 ? Rat(1) / (8 * bounds.D * Rat(d)) : Rat(1);
    if (bounds.C == 0) {
        cert.q_min = 1;
        return cert;
    }
    // least q with 2 C c'^2 d^2 < q^(1+tau_d), by monotone search
    Rat lhs = 2 * bounds.C * cert.c_prime * cert.c_prime * Rat(d) * Rat(d);
    auto holds = [&](const Int& q) {
        return PowerProduct::of(Rat(q), 1 + tau_d).greater_than(lhs);
    };
    Int hi = 1;
    while (!holds(hi)) hi *= 2;
    Int lo = hi / 2;
    while (lo + 1 < hi) {
        Int mid = (lo + hi) / 2;
        if (holds(mid))
            hi = mid;
        else
            lo = mid;
    }
    cert.q_min = hi;
    return cert;
}

bool verify_containment_sample(const ManifoldSpec& spec, const WeightVector& w,
                               const CPrimeCertificate& cert, const WitnessEntry& entry,
                               const std::vector<Rat>& x) {
    if (entry.q < cert.q_min)
        throw PreconditionViolated("witness denominator below q_min");
    for (unsigned i = 0; i < spec.d; ++i) {
        // |x_i - p_i/q| < c'/q^(tau_i+1)
        Rat center = Rat(entry.p[i], entry.q);
        center.canonicalize();
        Rat diff = abs(x[i] - center);
        PowerProduct radius = PowerProduct::of(cert.c_prime, Rat(1));
        radius.mul(Rat(entry.q), -(w.tau(i + 1) + 1));
        if (diff != 0 && !radius.greater_than(diff))
            throw PreconditionViolated("sample point outside the shrunken rectangle");
    }
    if (!spec.domain.contains(x)) throw PreconditionViolated("sample point outside the domain");

    for (unsigned j = 0; j < spec.m; ++j) {
        Rat dist = nearest_integer_distance(Rat(entry.q) * spec.components[j].eval(x));
        if (dist == 0) continue;
        // dist < q^(-tau_{d+j})
        PowerProduct lhs = PowerProduct::of(dist, Rat(1));
        lhs.mul(Rat(entry.q), w.tau(spec.d + j + 1));
        if (!lhs.less_than(Rat(1))) return false;
    }
    return true;
}

RectangleFamily make_dirichlet_family(const ManifoldSpec& spec, const std::vector<Rat>& a,
                                      const WitnessSet& ws) {
    RectangleFamily f;
    f.kind = RectangleKind::DirichletC;
    f.domain = spec.domain;
    f.scale = Rat(1);
    f.four_exponent = Rat(spec.m, spec.d);
    f.axis_exponents = a;
    f.rectangles = ws.entries;
    return f;
}

RectangleFamily make_target_family(const ManifoldSpec& spec, const WeightVector& w,
                                   const Rat& c_prime, const WitnessSet& ws) {
    RectangleFamily f;
    f.kind = RectangleKind::TargetCPrime;
    f.domain = spec.domain;
    f.scale = c_prime;
    f.four_exponent = Rat(0);
    for (unsigned i = 1; i <= spec.d; ++i) f.axis_exponents.push_back(w.tau(i) + 1);
    f.rectangles = ws.entries;
    return f;
}

namespace {

struct Grid {
    std::vector<std::uint64_t> cells_per_axis;
    std::uint64_t total = 1;
};

Grid grid_for(const RationalBox& box, const Rat& delta, std::uint64_t budget) {
    if (delta <= 0) throw MisalignedGrid("grid step must be positive");
    Grid g;
    for (const auto& ax : box.axes()) {
        Rat ratio = (ax.hi - ax.lo) / delta;
        if (ratio.get_den() != 1)
            throw MisalignedGrid("grid step does not divide side length evenly");
        if (!ratio.get_num().fits_ulong_p()) throw GridTooLarge("axis cell count overflow");
        std::uint64_t c = ratio.get_num().get_ui();
        if (g.total > budget / std::max<std::uint64_t>(c, 1))
            throw GridTooLarge("total cell count exceeds the configured budget");
        g.cells_per_axis.push_back(c);
        g.total *= c;
    }
    if (g.total > budget) throw GridTooLarge("total cell count exceeds the configured budget");
    return g;
}

// Marks every grid cell whose interior meets the union of the (clipped)
// rectangles. Boundary cells are decided with exact power comparisons; cells
// certified by the rational lower bound of the half-side skip them.
std::vector<bool> mark_cells(const RectangleFamily& family, const Rat& delta,
                             std::uint64_t budget, Grid& grid) {
    grid = grid_for(family.domain, delta, budget);
    std::vector<bool> marked(grid.total, false);
    unsigned d = static_cast<unsigned>(family.domain.dim());

    struct AxisHalfSide {
        PowerProduct exact;
        Rat ub, lb;
    };
    std::map<Int, std::vector<AxisHalfSide>> cache;  // by q

    std::vector<std::vector<std::uint64_t>> keep(d);
    for (const auto& rect : family.rectangles) {
        auto it = cache.find(rect.q);
        if (it == cache.end()) {
            std::vector<AxisHalfSide> hs;
            for (unsigned i = 0; i < d; ++i) {
                PowerProduct h = family.half_side(i, rect.q);
                Rat ub = h.upper_bound(), lb = h.lower_bound();
                hs.push_back(AxisHalfSide{std::move(h), ub, lb});
            }
            it = cache.emplace(rect.q, std::move(hs)).first;
        }
        const auto& hs = it->second;

        bool any_empty = false;
        for (unsigned i = 0; i < d && !any_empty; ++i) {
            keep[i].clear();
            const Rat& lo = family.domain.axis(i).lo;
            Rat center = Rat(rect.p[i], rect.q);
            center.canonicalize();
            Int k_lo = floor_rat((center - hs[i].ub - lo) / delta);
            Int k_hi = floor_rat((center + hs[i].ub - lo) / delta);
            if (k_lo < 0) k_lo = 0;
            Int axis_max(static_cast<unsigned long>(grid.cells_per_axis[i] - 1));
            if (k_hi > axis_max) k_hi = axis_max;
            for (Int k = k_lo; k <= k_hi; ++k) {
                Rat cell_lo = lo + Rat(k) * delta;
                Rat cell_hi = cell_lo + delta;
                // interior intersects [center-h, center+h] iff
                // h > cell_lo - center and h > center - cell_hi
                Rat need1 = cell_lo - center;
                Rat need2 = center - cell_hi;
                Rat need = need1 > need2 ? need1 : need2;
                bool hit = need < hs[i].lb || (need < hs[i].ub && hs[i].exact.greater_than(need));
                if (hit) keep[i].push_back(k.get_ui());
            }
            if (keep[i].empty()) any_empty = true;
        }
        if (any_empty) continue;

        std::vector<size_t> idx(d, 0);
        while (true) {
            std::uint64_t flat = 0;
            for (unsigned i = 0; i < d; ++i) flat = flat * grid.cells_per_axis[i] + keep[i][idx[i]];
            marked[flat] = true;
            unsigned i = d;
            while (i > 0) {
                if (++idx[i - 1] < keep[i - 1].size()) break;
                idx[i - 1] = 0;
                --i;
            }
            if (i == 0) break;
        }
    }
    return marked;
}

}  // namespace

CoverageReport coverage_fraction(const RectangleFamily& family, const Rat& delta,
                                 const Int& horizon, std::uint64_t cell_budget) {
    Grid grid;
    auto marked = mark_cells(family, delta, cell_budget, grid);
    std::uint64_t hit = static_cast<std::uint64_t>(std::count(marked.begin(), marked.end(), true));
    Rat fraction(Int(static_cast<unsigned long>(hit)), Int(static_cast<unsigned long>(grid.total)));
    fraction.canonicalize();
    return CoverageReport{delta, fraction, horizon};
}

std::uint64_t box_count(const RectangleFamily& family, const Rat& delta,
                        std::uint64_t cell_budget) {
    Grid grid;
    auto marked = mark_cells(family, delta, cell_budget, grid);
    return static_cast<std::uint64_t>(std::count(marked.begin(), marked.end(), true));
}

DimensionEstimate dimension_estimate(const std::vector<std::pair<Rat, std::uint64_t>>& counts) {
    std::set<Rat> distinct;
    for (const auto& [delta, n] : counts) distinct.insert(delta);
    if (distinct.size() < 3)
        throw InsufficientData("dimension estimate needs at least 3 distinct grid steps");

    double sx = 0, sy = 0, sxx = 0, sxy = 0;
    const double n = static_cast<double>(counts.size());
    std::vector<std::pair<double, double>> pts;
    for (const auto& [delta, count] : counts) {
        double x = -std::log(mpq_get_d(delta.get_mpq_t()));
        double y = std::log(static_cast<double>(std::max<std::uint64_t>(count, 1)));
        pts.emplace_back(x, y);
        sx += x;
        sy += y;
        sxx += x * x;
        sxy += x * y;
    }
    double denom = n * sxx - sx * sx;
    if (denom == 0) throw InsufficientData("degenerate grid ladder");
    double slope = (n * sxy - sx * sy) / denom;
    double intercept = (sy - slope * sx) / n;
    double res = 0;
    for (const auto& [x, y] : pts) {
        double e = y - (slope * x + intercept);
        res += e * e;
    }
    return DimensionEstimate{slope, std::sqrt(res)};
}

std::vector<Rat> lift_to_manifold(const ManifoldSpec& spec, const std::vector<Rat>& x) {
    std::vector<Rat> out = x;
    for (const auto& fy : eval_f(spec, x)) out.push_back(fy);
    return out;
}

std::vector<Rat> project_to_base(const ManifoldSpec& spec, const std::vector<Rat>& point) {
    if (point.size() != static_cast<size_t>(spec.d) + spec.m)
        throw OutOfDomain("graph point arity mismatch");
    std::vector<Rat> out(point.begin(), point.begin() + spec.d);
    if (!spec.domain.contains(out)) throw OutOfDomain("projected point outside the domain");
    return out;
}

}  // namespace wdam
