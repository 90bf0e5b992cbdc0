#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>

#include "h10/numberfield.hpp"

using namespace h10;
using namespace h10::nf;

TEST_CASE("imaginary quadratic field setup") {
    ImagQuadField K(5);
    CHECK(K.discriminant() == -20);
    CHECK_FALSE(K.half_basis());
    ImagQuadField K7(7);
    CHECK(K7.discriminant() == -7);
    CHECK(K7.half_basis());
    CHECK_THROWS_AS(ImagQuadField(12), MathError);   // not squarefree
    CHECK_THROWS_AS(ImagQuadField(-5), MathError);

    // omega coordinates round-trip
    QCoords x = K7.from_quad(Rat(3), Rat(-2));
    auto [a, b] = K7.to_quad(x);
    CHECK(a == 3);
    CHECK(b == -2);
}

TEST_CASE("splitting matches kronecker for all ell < 1000") {
    ImagQuadField K(5);
    for (uint32_t ell : primes_up_to(1000)) {
        Splitting s = splitting_in_K(ell, K);
        int k = kronecker_symbol(K.discriminant(), ell);
        if (k == 1) CHECK(s == Splitting::Split);
        if (k == -1) CHECK(s == Splitting::Inert);
        if (k == 0) CHECK(s == Splitting::Ramified);
    }
    CHECK(splitting_in_K(3, K) == Splitting::Split);
    CHECK(splitting_in_K(7, K) == Splitting::Split);
    CHECK(splitting_in_K(2, K) == Splitting::Ramified);
}

TEST_CASE("class numbers") {
    CHECK(class_number(ImagQuadField(5)) == 2);
    CHECK(class_number(ImagQuadField(1)) == 1);
    CHECK(class_number(ImagQuadField(23)) == 3);
    for (long d : {1L, 2L, 3L, 7L, 11L, 163L}) CHECK(class_number(ImagQuadField(d)) == 1);
    CHECK(class_number(ImagQuadField(6)) == 2);
    CHECK_THROWS_AS(class_number(ImagQuadField(10007), Int(10000)), MathError);
}

TEST_CASE("norm equation") {
    auto s = solve_norm_equation(49, 5);
    REQUIRE(s.has_value());
    CHECK(s->a == 2);
    CHECK(s->b == 3);
    auto t = solve_norm_equation(1, 5);
    REQUIRE(t.has_value());
    CHECK(t->a == 1);
    CHECK(t->b == 0);
    CHECK_FALSE(solve_norm_equation(3, 5).has_value());

    std::mt19937 rng(2024);
    for (int i = 0; i < 200; ++i) {
        Int m = 1 + long(rng() % 5000), d = 1 + long(rng() % 30);
        auto r = solve_norm_equation(m, d);
        if (r) {
            CHECK(r->a * r->a + d * r->b * r->b == m);
            CHECK(gcd(r->a, r->b) == 1);
        }
    }
}

TEST_CASE("quad arithmetic") {
    // (2 + 3w)^2 = -41 + 12w over Q(sqrt(-5))
    QuadElem x{Rat(2), Rat(3)};
    QuadElem sq = quad_power(x, 2, 5);
    CHECK(sq.a == -41);
    CHECK(sq.b == 12);
    CHECK(quad_power(x, 0, 5) == QuadElem{Rat(1), Rat(0)});
    QuadElem y{Rat(1), Rat(1)};
    CHECK(quad_power(y, 2, 5) == QuadElem{Rat(-4), Rat(2)});

    std::mt19937 rng(1);
    for (int i = 0; i < 100; ++i) {
        QuadElem z{Rat(long(rng() % 19) - 9), Rat(long(rng() % 19) - 9)};
        unsigned long j = rng() % 5, k = rng() % 5;
        QuadElem lhs = quad_power(z, j + k, 5);
        QuadElem rhs = quad_mul(quad_power(z, j, 5), quad_power(z, k, 5), 5);
        CHECK(lhs == rhs);
    }
}

TEST_CASE("primes above in K") {
    ImagQuadField K(5);
    auto p7 = K.primes_above(7);
    REQUIRE(p7.size() == 2);
    for (const auto& P : p7) {
        CHECK(P.ramification_index() == 1);
        CHECK(P.residue_degree() == 1);
    }
    CHECK(p7[0].partner_index == 1);
    CHECK(p7[1].partner_index == 0);
    CHECK(p7[0].label() == "v7");
    CHECK(p7[1].label() == "v7*");

    auto p2 = K.primes_above(2);
    REQUIRE(p2.size() == 1);
    CHECK(p2[0].ramification_index() == 2);
    CHECK(p2[0].residue_degree() == 1);

    auto p11 = K.primes_above(11);
    REQUIRE(p11.size() == 1);
    CHECK(p11[0].residue_degree() == 2);
    CHECK(p11[0].residue_field().order() == 121);

    for (uint32_t ell : primes_up_to(100)) {
        int total = 0;
        for (const auto& P : K.primes_above(ell))
            total += P.ramification_index() * P.residue_degree();
        CHECK(total == 2);
    }
    // half-basis field too
    ImagQuadField K7(7);
    for (uint32_t ell : primes_up_to(50)) {
        int total = 0;
        for (const auto& P : K7.primes_above(ell))
            total += P.ramification_index() * P.residue_degree();
        CHECK(total == 2);
    }
}

TEST_CASE("residue fields and reduction maps") {
    ImagQuadField K(5);
    const Order& R = *K.order();

    auto p3 = K.primes_above(3);
    REQUIRE(p3.size() == 2);
    CHECK(p3[0].residue_field().order() == 3);

    std::mt19937 rng(77);
    for (const Int& ell : {Int(3), Int(7), Int(11), Int(2)}) {
        for (const auto& P : K.primes_above(ell)) {
            const FqField& F = P.residue_field();
            // reduce is a ring homomorphism
            for (int i = 0; i < 60; ++i) {
                QCoords x = {Rat(long(rng() % 41) - 20), Rat(long(rng() % 41) - 20)};
                QCoords y = {Rat(long(rng() % 41) - 20), Rat(long(rng() % 41) - 20)};
                CHECK(P.reduce(R.qmul(x, y)) == F.mul(P.reduce(x), P.reduce(y)));
                CHECK(P.reduce(R.qadd(x, y)) == F.add(P.reduce(x), P.reduce(y)));
            }
            // reduce(lift(a)) == a for every residue element
            for (long i = 0; i < F.order(); ++i) {
                FqElem a = F.element(i);
                CHECK(P.reduce(P.lift(a)) == a);
            }
            // uniformizer has valuation exactly 1; ell has valuation e
            CHECK(P.valuation(P.uniformizer()) == PadicVal{false, 1});
            CHECK(P.valuation(R.from_rational(Rat(ell))) ==
                  PadicVal{false, P.ramification_index()});
            CHECK(P.valuation(R.qzero()).infinite);
            // valuation is additive
            for (int i = 0; i < 40; ++i) {
                QCoords x = {Rat(long(rng() % 21) - 10), Rat(long(rng() % 21) - 10)};
                QCoords y = {Rat(long(rng() % 21) - 10), Rat(long(rng() % 21) - 10)};
                if (R.qis_zero(x) || R.qis_zero(y)) continue;
                CHECK(P.valuation(R.qmul(x, y)).v == P.valuation(x).v + P.valuation(y).v);
            }
            // shifted reduction: red(pi^2 x / pi^2) == red(x)
            QCoords pi2 = R.qmul(P.uniformizer(), P.uniformizer());
            for (int i = 0; i < 20; ++i) {
                QCoords x = {Rat(long(rng() % 21) - 10), Rat(long(rng() % 21) - 10)};
                CHECK(P.reduce_shifted(R.qmul(pi2, x), 2) == P.reduce(x));
            }
        }
    }
}

TEST_CASE("compositum K(mu_3) for K = Q(sqrt(-5))") {
    ImagQuadField K(5);
    CompositumField Kp(K, 3);
    CHECK(Kp.degree() == 4);

    // the prime above 2: unique, e = 2, f = 2 (2 ramifies in K, inert in Q(mu_3))
    auto w2 = Kp.primes_above(2);
    REQUIRE(w2.size() == 1);
    CHECK(w2[0].ramification_index() == 2);
    CHECK(w2[0].residue_degree() == 2);
    CHECK(w2[0].residue_field().order() == 4);

    // 7 splits completely
    auto w7 = Kp.primes_above(7);
    CHECK(w7.size() == 4);
    for (const auto& P : w7) {
        CHECK(P.ramification_index() == 1);
        CHECK(P.residue_degree() == 1);
    }

    // 11 is inert in both quadratic parts: two primes of residue degree 2
    auto w11 = Kp.primes_above(11);
    REQUIRE(w11.size() == 2);
    for (const auto& P : w11) {
        CHECK(P.ramification_index() == 1);
        CHECK(P.residue_degree() == 2);
    }

    // 3 splits in K and ramifies in Q(mu_3)
    auto w3 = Kp.primes_above(3);
    REQUIRE(w3.size() == 2);
    for (const auto& P : w3) {
        CHECK(P.ramification_index() == 2);
        CHECK(P.residue_degree() == 1);
    }

    for (uint32_t ell : primes_up_to(100)) {
        int total = 0;
        for (const auto& P : Kp.primes_above(ell))
            total += P.ramification_index() * P.residue_degree();
        CHECK(total == 4);
    }

    // residue maps on the compositum behave
    const Order& R = *Kp.order();
    std::mt19937 rng(5);
    for (const auto& P : w2) {
        const FqField& F = P.residue_field();
        for (long i = 0; i < F.order(); ++i) CHECK(P.reduce(P.lift(F.element(i))) == F.element(i));
        for (int i = 0; i < 40; ++i) {
            QCoords x(4), y(4);
            for (int j = 0; j < 4; ++j) {
                x[size_t(j)] = Rat(long(rng() % 15) - 7);
                y[size_t(j)] = Rat(long(rng() % 15) - 7);
            }
            CHECK(P.reduce(R.qmul(x, y)) == F.mul(P.reduce(x), P.reduce(y)));
        }
    }
}

TEST_CASE("primes of the compositum lie above the right primes of K") {
    ImagQuadField K(5);
    CompositumField Kp(K, 3);
    auto v7 = K.primes_above(7);
    auto w7 = Kp.primes_above(7);
    int counts[2] = {0, 0};
    for (const auto& w : w7) {
        for (int i = 0; i < 2; ++i) {
            std::vector<QCoords> embedded;
            for (const auto& g : v7[size_t(i)].extra_generators())
                embedded.push_back(Kp.embed_base(K.order()->to_q(g)));
            if (w.lies_above(v7[size_t(i)], embedded)) ++counts[i];
        }
    }
    CHECK(counts[0] == 2);
    CHECK(counts[1] == 2);
}

TEST_CASE("compositum over a half-basis field") {
    // D = 7: maximal order Z[(1+omega)/2]; disc -7 is coprime to 3
    ImagQuadField K(7);
    CompositumField Kp(K, 3);
    for (uint32_t ell : primes_up_to(60)) {
        int total = 0;
        for (const auto& P : Kp.primes_above(ell)) {
            total += P.ramification_index() * P.residue_degree();
            // residue maps stay ring homomorphisms
            const Order& R = *Kp.order();
            const FqField& F = P.residue_field();
            std::mt19937 rng(ell);
            for (int i = 0; i < 10; ++i) {
                QCoords x(4), y(4);
                for (int j = 0; j < 4; ++j) {
                    x[size_t(j)] = Rat(long(rng() % 11) - 5);
                    y[size_t(j)] = Rat(long(rng() % 11) - 5);
                }
                CHECK(P.reduce(R.qmul(x, y)) == F.mul(P.reduce(x), P.reduce(y)));
            }
        }
        CHECK(total == 4);
    }
    // 7 ramifies in K and splits in Q(mu_3): two primes with e = 2, f = 1
    auto w7 = Kp.primes_above(7);
    REQUIRE(w7.size() == 2);
    for (const auto& P : w7) {
        CHECK(P.ramification_index() == 2);
        CHECK(P.residue_degree() == 1);
    }
}

TEST_CASE("unsupported compositum parameters") {
    ImagQuadField K(5);
    CHECK_THROWS_AS(CompositumField(K, 5), UnsupportedField);
    ImagQuadField K6(6);  // disc -24, divisible by 3
    CHECK_THROWS_AS(CompositumField(K6, 3), UnsupportedField);
}
