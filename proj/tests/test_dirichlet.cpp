#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "helpers.hpp"
#include "wdam/bounds.hpp"
#include "wdam/dirichlet.hpp"

using namespace wdam;
using wdam::testing::cofactor_det;
using wdam::testing::parabola;
using wdam::testing::random_rat;
using wdam::testing::random_weights;

namespace {

// tau = (1, 1/2) with a = (3/2): the standing d = m = 1 setup.
WeightVector parabola_weights() { return validate_weights({Rat(1), Rat(1, 2)}, 1, 1); }
std::vector<Rat> parabola_a() { return {Rat(3, 2)}; }

bool q_in_qset(const QSetCertificate& cert, const ManifoldSpec& spec,
               const std::vector<Rat>& a, const Int& Q) {
    // (4^(m/d)/Q^(a_i-1))^2 < threshold_sq for every i, via power products
    Rat two_m_over_d(2 * spec.m, spec.d);
    two_m_over_d.canonicalize();
    for (const Rat& ai : a) {
        PowerProduct lhs = PowerProduct::of(Rat(4), two_m_over_d);
        lhs.mul(Rat(Q), -2 * (ai - 1));
        if (!lhs.less_than(cert.threshold_sq)) return false;
    }
    return true;
}

}  // namespace

TEST_CASE("q0 certificate at the hand-computed parabola point") {
    QSetCertificate cert = q0_bound(parabola(), {Rat(1, 2)}, parabola_a());
    CHECK(cert.r == Rat(1, 2));
    CHECK(cert.threshold_sq == Rat(1, 4));  // min{1, 1/4, 1/4}
    CHECK(cert.Q0 == 65);
}

TEST_CASE("q0 with linear f drops the curvature term") {
    ManifoldSpec lin;
    lin.d = 1;
    lin.m = 1;
    lin.domain = RationalBox({Interval{Rat(0), Rat(1)}});
    Polynomial f(1);
    f.add_term(Rat(1, 3), {1});
    lin.components.push_back(f);
    QSetCertificate cert = q0_bound(lin, {Rat(1, 2)}, {Rat(3, 2)});
    CHECK(cert.threshold_sq == Rat(1, 4));  // min{1, r^2}, no C term
    // need 4/sqrt(Q) < 1/2, same as the parabola case
    CHECK(cert.Q0 == 65);
}

TEST_CASE("q0 with threshold 1: smallest Q with Q^(min a_i - 1) > 4^(m/d)") {
    // linear f on a wide box: C = 0 and r > 1, so the threshold saturates at 1
    ManifoldSpec lin;
    lin.d = 1;
    lin.m = 1;
    lin.domain = RationalBox({Interval{Rat(-2), Rat(4)}});
    Polynomial f(1);
    f.add_term(Rat(2), {1});
    lin.components.push_back(f);
    QSetCertificate cert = q0_bound(lin, {Rat(1)}, {Rat(3, 2)});
    CHECK(cert.threshold_sq == Rat(1));
    // 4/sqrt(Q) < 1 <=> Q > 16 => Q0 = 17
    CHECK(cert.Q0 == 17);
}

TEST_CASE("q0 minimality: Q0 is in the Q-set, Q0 - 1 is not") {
    std::mt19937_64 rng(59);
    ManifoldSpec spec = parabola();
    for (int trial = 0; trial < 30; ++trial) {
        Rat x = Rat(1 + trial, 40) + Rat(1, 97);  // stays inside (0, 1)
        Rat a1 = 1 + random_rat(rng, 4, 5);
        QSetCertificate cert = q0_bound(spec, {x}, {a1});
        CHECK(q_in_qset(cert, spec, {a1}, cert.Q0));
        if (cert.Q0 > 1) CHECK_FALSE(q_in_qset(cert, spec, {a1}, Int(cert.Q0 - 1)));
    }
}

TEST_CASE("q0 rejects boundary points") {
    CHECK_THROWS_AS(q0_bound(parabola(), {Rat(0)}, parabola_a()), PointOnBoundary);
    CHECK_THROWS_AS(q0_bound(parabola(), {Rat(1)}, parabola_a()), PointOnBoundary);
}

TEST_CASE("find_witness: exact rational point gives the zero-left-side witness") {
    // x = 1/4: f(1/4) = 1/16, denominators divide 16
    ManifoldSpec spec = parabola();
    WeightVector w = parabola_weights();
    std::vector<Rat> x{Rat(1, 4)};
    auto wit = find_witness(spec, x, w, parabola_a(), Int(100000));
    REQUIRE(wit.has_value());
    CHECK(verify_witness(spec, x, w, parabola_a(), Int(100000), *wit));
    // the q = 16 exact hit is a witness; whatever smaller q wins must verify too
    DirichletWitness exact;
    exact.q = 16;
    exact.p = {Int(4), Int(1)};
    CHECK(verify_witness(spec, x, w, parabola_a(), Int(100000), exact));
}

TEST_CASE("find_witness at the frozen large-denominator point") {
    ManifoldSpec spec = parabola(Rat(1, 10), Rat(9, 10));
    WeightVector w = parabola_weights();
    std::vector<Rat> x{Rat(414213, 1000000)};
    auto wit = find_witness(spec, x, w, parabola_a(), Int(10000));
    REQUIRE(wit.has_value());
    CHECK(verify_witness(spec, x, w, parabola_a(), Int(10000), *wit));

    // Q = 1: the Dirichlet horizon is too small for a generic point when the
    // domain excludes the integer endpoints
    CHECK_FALSE(find_witness(spec, x, w, parabola_a(), Int(1)).has_value());
}

TEST_CASE("find_witness never fails above the certified horizon") {
    std::mt19937_64 rng(61);
    ManifoldSpec spec = parabola();
    WeightVector w = parabola_weights();
    std::uniform_int_distribution<long> den(11, 997), num(1, 996);
    for (int trial = 0; trial < 10; ++trial) {
        long qd = den(rng);
        Rat x(num(rng) % qd + 1, qd + 1);
        x.canonicalize();
        if (x <= Rat(1, 10) || x >= Rat(9, 10)) continue;
        QSetCertificate cert = q0_bound(spec, {x}, parabola_a());
        Int Q = cert.Q0 + 1;
        auto wit = find_witness(spec, {x}, w, parabola_a(), Q);
        REQUIRE(wit.has_value());
        CHECK(verify_witness(spec, {x}, w, parabola_a(), Q, *wit));
    }
}

TEST_CASE("verify_witness rejects corrupted tuples") {
    ManifoldSpec spec = parabola();
    WeightVector w = parabola_weights();
    std::vector<Rat> x{Rat(414213, 1000000)};
    auto wit = find_witness(spec, x, w, parabola_a(), Int(10000));
    REQUIRE(wit.has_value());
    DirichletWitness bad = *wit;
    bad.p[0] += 10;
    CHECK_FALSE(verify_witness(spec, x, w, parabola_a(), Int(10000), bad));
    DirichletWitness bad2 = *wit;
    bad2.p[1] += 1 + (bad2.q / 2);
    CHECK_FALSE(verify_witness(spec, x, w, parabola_a(), Int(10000), bad2));
}

TEST_CASE("enumerate_witnesses: the x = 1/2 ladder and monotone growth") {
    ManifoldSpec spec = parabola();
    WeightVector w = parabola_weights();
    std::vector<Rat> x{Rat(1, 2)};

    auto small = enumerate_witnesses(spec, x, w, parabola_a(), Int(0));
    CHECK(small.empty());

    // q = 2 candidate p = (1, ?) fails the second system: |1/4 - p2/2| >= 1/4
    // while the bound is 1/(2 * 2^(3/2)); q = 4, p = (2, 1) hits exactly.
    auto w4 = enumerate_witnesses(spec, x, w, parabola_a(), Int(4));
    bool has_q2_center = false, has_q4_exact = false;
    for (const auto& wit : w4) {
        if (wit.q == 2 && wit.p[0] == 1) has_q2_center = true;
        if (wit.q == 4 && wit.p[0] == 2 && wit.p[1] == 1) has_q4_exact = true;
    }
    CHECK_FALSE(has_q2_center);
    CHECK(has_q4_exact);

    // witness monotonicity: prefix property as the horizon doubles
    auto w8 = enumerate_witnesses(spec, x, w, parabola_a(), Int(8));
    auto w16 = enumerate_witnesses(spec, x, w, parabola_a(), Int(16));
    REQUIRE(w8.size() >= w4.size());
    REQUIRE(w16.size() >= w8.size());
    for (size_t i = 0; i < w4.size(); ++i) {
        CHECK(w8[i].q == w4[i].q);
        CHECK(w8[i].p == w4[i].p);
    }
}

TEST_CASE("minkowski product telescopes to a pure power of Q") {
    std::mt19937_64 rng(67);
    for (int trial = 0; trial < 100; ++trial) {
        WeightVector w = random_weights(rng);
        ExponentSelection s = select_exponents(w);
        REQUIRE_FALSE(s.trivial());
        SymbolicPower p = minkowski_product(w, s.a, Int(1000));
        CHECK(p.is_one());
        REQUIRE(p.as_rational().has_value());
        CHECK(*p.as_rational() == 1);

        // perturb a_1 by +1/7: the product becomes Q^(-1/7)
        std::vector<Rat> a2 = s.a;
        a2[0] += Rat(1, 7);
        SymbolicPower q = minkowski_product(w, a2, Int(128));
        CHECK_FALSE(q.is_one());
        CHECK(q.exponent == Rat(-1, 7));

        // Q = 1 is one regardless of exponents
        CHECK(minkowski_product(w, a2, Int(1)).is_one());
    }
}

TEST_CASE("minkowski matrix determinant is unimodular") {
    ManifoldSpec spec = parabola();
    CHECK(abs(minkowski_matrix_det(spec, {Rat(1, 3)})) == 1);

    ManifoldSpec lin;
    lin.d = 1;
    lin.m = 1;
    lin.domain = RationalBox({Interval{Rat(0), Rat(1)}});
    Polynomial f(1);
    f.add_term(Rat(7, 3), {1});
    lin.components.push_back(f);
    CHECK(abs(minkowski_matrix_det(lin, {Rat(2, 5)})) == 1);

    ManifoldSpec prod;
    prod.d = 2;
    prod.m = 1;
    prod.domain = RationalBox({Interval{Rat(0), Rat(1)}, Interval{Rat(0), Rat(1)}});
    Polynomial xy(2);
    xy.add_term(Rat(1), {1, 1});
    prod.components.push_back(xy);
    CHECK(abs(minkowski_matrix_det(prod, {Rat(1, 2), Rat(1, 3)})) == 1);
}

TEST_CASE("taylor remainder estimate holds with the certified C") {
    ManifoldSpec spec = parabola();
    // exact quadratic: remainder equals h^2, bound equals h^2; <= passes
    CHECK(taylor_remainder_check(spec, {Rat(0)}, {Rat(1, 3)}, Rat(2)));
    CHECK_FALSE(taylor_remainder_check(spec, {Rat(0)}, {Rat(1, 3)}, Rat(1)));

    ManifoldSpec lin;
    lin.d = 1;
    lin.m = 1;
    lin.domain = RationalBox({Interval{Rat(0), Rat(1)}});
    Polynomial f(1);
    f.add_term(Rat(5), {1});
    lin.components.push_back(f);
    CHECK(taylor_remainder_check(lin, {Rat(1, 4)}, {Rat(3, 4)}, Rat(0)));

    ManifoldSpec cub;
    cub.d = 1;
    cub.m = 1;
    cub.domain = RationalBox({Interval{Rat(0), Rat(1)}});
    Polynomial g(1);
    g.add_term(Rat(1), {3});
    cub.components.push_back(g);
    std::mt19937_64 rng(71);
    for (int trial = 0; trial < 50; ++trial) {
        Rat x = random_rat(rng, 30, 31);
        Rat xp = random_rat(rng, 30, 31);
        if (x > 1 || xp > 1) continue;
        CHECK(taylor_remainder_check(cub, {x}, {xp}, Rat(6)));
    }
}
