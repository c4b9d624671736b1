#include "wdam/dirichlet.hpp"

#include <algorithm>
#include <functional>

namespace wdam {

namespace {

Rat rat_of(const Int& z) { return Rat(z); }

// Integers p with |center - p| < radius (strict) and axis.lo <= p/q <= axis.hi.
std::vector<Int> axis_candidates(const Rat& center, const PowerProduct& radius,
                                 const Rat& radius_ub, const Interval& axis,
                                 const Int& q) {
    std::vector<Int> out;
    Int lo = ceil_rat(center - radius_ub);
    Int hi = floor_rat(center + radius_ub);
    for (Int p = lo; p <= hi; ++p) {
        Rat pr(p);
        if (pr < axis.lo * rat_of(q) || pr > axis.hi * rat_of(q)) continue;
        Rat diff = abs(center - pr);
        if (diff == 0 || radius.greater_than(diff)) out.push_back(p);
    }
    return out;
}

// Strict check  dist < 1 / (2 q^tau)  with dist >= 0 rational.
bool nearest_bound_holds(const Rat& dist, const Int& q, const Rat& tau) {
    if (dist == 0) return true;
    PowerProduct lhs = PowerProduct::of(dist * 2, Rat(1));
    lhs.mul(rat_of(q), tau);
    return lhs.less_than(Rat(1));
}

// All p_{d+j} choices satisfying (Dirichlet2) for the head p/q, ascending.
std::vector<Int> manifold_candidates(const Rat& y, const Int& q, const Rat& tau) {
    std::vector<Int> out;
    Int f = floor_rat(y);
    for (const Int& cand : {f, Int(f + 1)}) {
        Rat dist = abs(y - Rat(cand));
        if (nearest_bound_holds(dist, q, tau)) out.push_back(cand);
    }
    return out;
}

struct ScanCallbacks {
    // return true to stop the scan
    std::function<bool(DirichletWitness&&)> emit;
};

// Shared scan body: for a fixed q enumerates head candidates against the
// supplied per-axis radii, extends each to manifold coordinates, and emits
// complete witnesses in lexicographic order.
bool scan_q(const ManifoldSpec& spec, const std::vector<Rat>& x, const WeightVector& w,
            const Int& q, const std::vector<PowerProduct>& radii,
            const std::vector<Rat>& radii_ub, const ScanCallbacks& cb) {
    unsigned d = spec.d;
    std::vector<std::vector<Int>> axis(d);
    for (unsigned i = 0; i < d; ++i) {
        axis[i] = axis_candidates(Rat(q) * x[i], radii[i], radii_ub[i],
                                  spec.domain.axis(i), q);
        if (axis[i].empty()) return false;
    }

    std::vector<size_t> idx(d, 0);
    std::vector<Rat> point(d);
    while (true) {
        std::vector<Int> head(d);
        for (unsigned i = 0; i < d; ++i) {
            head[i] = axis[i][idx[i]];
            point[i] = Rat(head[i], q);
            point[i].canonicalize();
        }
        // manifold coordinates, one nested choice per component
        std::vector<std::vector<Int>> tails(spec.m);
        bool feasible = true;
        for (unsigned j = 0; j < spec.m && feasible; ++j) {
            Rat y = Rat(q) * spec.components[j].eval(point);
            tails[j] = manifold_candidates(y, q, w.tau(d + j + 1));
            feasible = !tails[j].empty();
        }
        if (feasible) {
            std::vector<size_t> tidx(spec.m, 0);
            while (true) {
                DirichletWitness wit;
                wit.q = q;
                wit.p = head;
                for (unsigned j = 0; j < spec.m; ++j) wit.p.push_back(tails[j][tidx[j]]);
                if (cb.emit(std::move(wit))) return true;
                unsigned j = spec.m;
                while (j > 0) {
                    if (++tidx[j - 1] < tails[j - 1].size()) break;
                    tidx[j - 1] = 0;
                    --j;
                }
                if (j == 0) break;
            }
        }
        unsigned i = d;
        while (i > 0) {
            if (++idx[i - 1] < axis[i - 1].size()) break;
            idx[i - 1] = 0;
            --i;
        }
        if (i == 0) break;
    }
    return false;
}

}  // namespace

QSetCertificate q0_bound(const ManifoldSpec& spec, const std::vector<Rat>& x,
                         const std::vector<Rat>& a) {
    for (const auto& ai : a)
        if (ai <= 1) throw std::invalid_argument("q0_bound requires min a_i > 1");
    Rat r = spec.domain.boundary_distance(x);
    if (r == 0) throw PointOnBoundary("query point lies on the domain boundary");

    DerivativeBounds bounds = derivative_bounds(spec);
    Rat threshold_sq = std::min(Rat(1), Rat(r * r));
    if (bounds.C > 0) {
        Rat curvature = Rat(1) / (2 * bounds.C * Rat(spec.d) * Rat(spec.d));
        threshold_sq = std::min(threshold_sq, curvature);
    }

    // The left-hand side max_i 4^(m/d)/Q^(a_i-1) is attained at the smallest
    // exponent, so a single squared comparison per Q decides membership.
    Rat amin = *std::min_element(a.begin(), a.end());
    Rat alpha = 2 * (amin - 1);
    auto in_q_set = [&](const Int& Q) {
        PowerProduct lhs = PowerProduct::of(Rat(4), Rat(2 * static_cast<long>(spec.m), spec.d));
        lhs.mul(rat_of(Q), -alpha);
        return lhs.less_than(threshold_sq);
    };

    Int hi = 1;
    while (!in_q_set(hi)) hi *= 2;
    Int lo = hi / 2;  // lo fails (or hi == 1)
    while (lo + 1 < hi) {
        Int mid = (lo + hi) / 2;
        if (in_q_set(mid))
            hi = mid;
        else
            lo = mid;
    }
    return QSetCertificate{hi, r, threshold_sq};
}

std::optional<DirichletWitness> find_witness(const ManifoldSpec& spec,
                                             const std::vector<Rat>& x,
                                             const WeightVector& w,
                                             const std::vector<Rat>& a, const Int& Q) {
    if (Q < 1) throw std::invalid_argument("horizon Q must be >= 1");
    // (Dirichlet1) in the form |q x_i - p_i| < 4^(m/d)/Q^(a_i-1); the radius
    // does not depend on q.
    std::vector<PowerProduct> radii;
    std::vector<Rat> radii_ub;
    for (unsigned i = 0; i < spec.d; ++i) {
        PowerProduct r = PowerProduct::of(Rat(4), Rat(spec.m, spec.d));
        r.mul(rat_of(Q), -(a[i] - 1));
        radii_ub.push_back(r.upper_bound());
        radii.push_back(std::move(r));
    }

    std::optional<DirichletWitness> found;
    ScanCallbacks cb{[&](DirichletWitness&& wit) {
        found = std::move(wit);
        return true;
    }};
    for (Int q = 1; q <= Q; ++q)
        if (scan_q(spec, x, w, q, radii, radii_ub, cb)) break;
    return found;
}

std::vector<DirichletWitness> enumerate_witnesses(const ManifoldSpec& spec,
                                                  const std::vector<Rat>& x,
                                                  const WeightVector& w,
                                                  const std::vector<Rat>& a,
                                                  const Int& q_max) {
    std::vector<DirichletWitness> out;
    ScanCallbacks cb{[&](DirichletWitness&& wit) {
        out.push_back(std::move(wit));
        return false;
    }};
    for (Int q = 1; q <= q_max; ++q) {
        // (Dirichlet3): |q x_i - p_i| < 4^(m/d)/q^(a_i-1)
        std::vector<PowerProduct> radii;
        std::vector<Rat> radii_ub;
        for (unsigned i = 0; i < spec.d; ++i) {
            PowerProduct r = PowerProduct::of(Rat(4), Rat(spec.m, spec.d));
            r.mul(rat_of(q), -(a[i] - 1));
            radii_ub.push_back(r.upper_bound());
            radii.push_back(std::move(r));
        }
        scan_q(spec, x, w, q, radii, radii_ub, cb);
    }
    return out;
}

bool verify_witness(const ManifoldSpec& spec, const std::vector<Rat>& x,
                    const WeightVector& w, const std::vector<Rat>& a, const Int& Q,
                    const DirichletWitness& wit) {
    // Deliberately avoids PowerProduct: raises each inequality to the lcm of
    // the exponent denominators by hand.
    if (wit.q < 1 || wit.q > Q) return false;
    std::vector<Rat> point(spec.d);
    for (unsigned i = 0; i < spec.d; ++i) {
        point[i] = Rat(wit.p[i], wit.q);
        point[i].canonicalize();
    }
    if (!spec.domain.contains(point)) return false;

    for (unsigned i = 0; i < spec.d; ++i) {
        // |x_i - p_i/q| * q * Q^(a_i-1) < 4^(m/d)
        Rat diff = abs(x[i] - point[i]) * Rat(wit.q);
        Rat ai1 = a[i] - 1;
        long L = static_cast<long>(Int(lcm(Int(spec.d), ai1.get_den())).get_ui());
        Rat lhs = pow_rat(diff, L) * pow_rat(Rat(Q), static_cast<long>(Rat(ai1 * L).get_num().get_si()));
        Rat rhs = pow_rat(Rat(4), static_cast<long>(Rat(Rat(spec.m, spec.d) * L).get_num().get_si()));
        if (!(lhs < rhs)) return false;
    }
    for (unsigned j = 0; j < spec.m; ++j) {
        // |f_j(p/q) - p_{d+j}/q| * 2 * q^(tau+1) < 1
        Rat diff = abs(spec.components[j].eval(point) - Rat(wit.p[spec.d + j], wit.q));
        const Rat& tau = w.tau(spec.d + j + 1);
        long L = static_cast<long>(tau.get_den().get_ui());
        Rat lhs = pow_rat(diff * 2, L) * pow_rat(Rat(wit.q), static_cast<long>(Rat((tau + 1) * L).get_num().get_si()));
        if (!(lhs < 1)) return false;
    }
    return true;
}

std::optional<Rat> SymbolicPower::as_rational() const {
    if (base == 1 || exponent == 0) return Rat(1);
    if (exponent.get_den() == 1) {
        if (!exponent.get_num().fits_slong_p()) return std::nullopt;
        return pow_rat(Rat(base), exponent.get_num().get_si());
    }
    // Q^(u/v) is rational iff Q is an exact v-th power.
    if (!exponent.get_den().fits_ulong_p()) return std::nullopt;
    unsigned long v = exponent.get_den().get_ui();
    Int root;
    if (mpz_root(root.get_mpz_t(), base.get_mpz_t(), v) == 0) return std::nullopt;
    if (!exponent.get_num().fits_slong_p()) return std::nullopt;
    return pow_rat(Rat(root), exponent.get_num().get_si());
}

SymbolicPower minkowski_product(const WeightVector& w, const std::vector<Rat>& a,
                                const Int& Q) {
    // (prod_j Q^(-tau_{d+j})/4)(prod_i 4^(m/d)/Q^(a_i-1)) * Q: the powers of 4
    // cancel ((4^(m/d))^d = 4^m), leaving Q^(1 - sum(a_i-1) - tail sum).
    Rat e(1);
    for (const auto& ai : a) e -= ai - 1;
    e -= w.tail_sum();
    return SymbolicPower{Q, e};
}

Int minkowski_matrix_det(const ManifoldSpec& spec, const std::vector<Rat>& x) {
    if (!spec.domain.contains(x)) throw OutOfDomain("point outside the domain box");
    unsigned d = spec.d, m = spec.m, n = d + m;
    auto grads = first_partials(spec);

    std::vector<std::vector<Rat>> A(n + 1, std::vector<Rat>(n + 1, Rat(0)));
    for (unsigned j = 0; j < m; ++j) {
        Rat g = spec.components[j].eval(x);
        for (unsigned i = 0; i < d; ++i) {
            Rat df = grads[j][i].eval(x);
            g -= x[i] * df;
            A[j][1 + i] = df;
        }
        A[j][0] = g;
        A[j][1 + d + j] = Rat(-1);
    }
    for (unsigned i = 0; i < d; ++i) {
        A[m + i][0] = x[i];
        A[m + i][1 + i] = Rat(-1);
    }
    A[n][0] = Rat(1);

    // rational Gaussian elimination
    Rat det(1);
    for (unsigned col = 0; col <= n; ++col) {
        unsigned pivot = col;
        while (pivot <= n && A[pivot][col] == 0) ++pivot;
        if (pivot > n) return 0;
        if (pivot != col) {
            std::swap(A[pivot], A[col]);
            det = -det;
        }
        det *= A[col][col];
        for (unsigned row = col + 1; row <= n; ++row) {
            if (A[row][col] == 0) continue;
            Rat factor = A[row][col] / A[col][col];
            for (unsigned c2 = col; c2 <= n; ++c2) A[row][c2] -= factor * A[col][c2];
        }
    }
    if (det.get_den() != 1 || abs(det.get_num()) != 1)
        throw std::logic_error("Minkowski matrix determinant is not +-1: " +
                               to_fraction_string(det));
    return det.get_num();
}

bool taylor_remainder_check(const ManifoldSpec& spec, const std::vector<Rat>& x,
                            const std::vector<Rat>& x_prime, const Rat& C) {
    if (!spec.domain.contains(x) || !spec.domain.contains(x_prime))
        throw OutOfDomain("Taylor check point outside the domain box");
    auto grads = first_partials(spec);
    Rat step(0);
    for (unsigned i = 0; i < spec.d; ++i) { Rat diff = abs(x_prime[i] - x[i]); if (diff > step) step = diff; }
    Rat rhs = C * Rat(spec.d) * Rat(spec.d) * step * step / 2;
    for (unsigned j = 0; j < spec.m; ++j) {
        Rat remainder = spec.components[j].eval(x_prime) - spec.components[j].eval(x);
        for (unsigned i = 0; i < spec.d; ++i)
            remainder -= grads[j][i].eval(x) * (x_prime[i] - x[i]);
        if (abs(remainder) > rhs) return false;
    }
    return true;
}

}  // namespace wdam
