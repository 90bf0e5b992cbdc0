#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>

#include "h10/algebra.hpp"
#include "h10/intlattice.hpp"

using namespace h10;

TEST_CASE("kronecker symbol pinned values") {
    // (-20|7): -20 = 1 mod 7 and 1 is a square; verify by enumerating squares
    bool one_is_square = false;
    for (int x = 0; x < 7; ++x)
        if ((x * x) % 7 == ((-20 % 7) + 7) % 7) one_is_square = true;
    CHECK(one_is_square);
    CHECK(kronecker_symbol(-20, 7) == 1);
    CHECK(kronecker_symbol(-20, 2) == 0);
    // -20 = 1 mod 3, a square
    CHECK(kronecker_symbol(-20, 3) == 1);
    CHECK_THROWS_AS(kronecker_symbol(5, 0), MathError);
}

TEST_CASE("kronecker multiplicativity in n") {
    std::mt19937 rng(12345);
    std::uniform_int_distribution<long> dist(-60, 60);
    for (int i = 0; i < 500; ++i) {
        long a = dist(rng);
        long m = dist(rng), n = dist(rng);
        if (m == 0 || n == 0) continue;
        CHECK(kronecker_symbol(a, Int(m) * n) ==
              kronecker_symbol(a, m) * kronecker_symbol(a, n));
    }
}

TEST_CASE("padic valuation") {
    CHECK(padic_valuation(Rat(12), 3) == PadicVal{false, 1});
    CHECK(padic_valuation(Rat(0), 5).infinite);
    // 56 = 2^3 * 7
    CHECK(padic_valuation(Rat(56), 2) == PadicVal{false, 3});
    CHECK(padic_valuation(Rat(3, 8), 2) == PadicVal{false, -3});
    CHECK_THROWS_AS(padic_valuation(Rat(1), 4), MathError);

    std::mt19937 rng(99);
    std::uniform_int_distribution<long> dist(1, 4000);
    for (int i = 0; i < 200; ++i) {
        Rat x(dist(rng), dist(rng)), y(dist(rng), dist(rng));
        x.canonicalize();
        y.canonicalize();
        for (long ell : {2L, 3L, 7L}) {
            auto vx = padic_valuation(x, ell), vy = padic_valuation(y, ell);
            auto vxy = padic_valuation(x * y, ell);
            CHECK(vxy.v == vx.v + vy.v);
        }
    }
}

TEST_CASE("Fq basics and canonical moduli") {
    FqField F4(2, 2);
    CHECK(F4.order() == 4);
    // canonical modulus of F_4 is x^2 + x + 1
    CHECK(F4.modulus() == std::vector<long>{1, 1, 1});
    // field axioms, exhaustively
    for (long i = 0; i < 4; ++i)
        for (long j = 0; j < 4; ++j) {
            FqElem a = F4.element(i), b = F4.element(j);
            CHECK(F4.mul(a, b) == F4.mul(b, a));
            for (long k = 0; k < 4; ++k) {
                FqElem c = F4.element(k);
                CHECK(F4.mul(a, F4.add(b, c)) == F4.add(F4.mul(a, b), F4.mul(a, c)));
                CHECK(F4.mul(F4.mul(a, b), c) == F4.mul(a, F4.mul(b, c)));
            }
        }
    FqField F16(2, 4), F81(3, 4), F9(3, 2);
    for (const FqField& F : {F16, F81, F9}) {
        for (long i = 1; i < F.order(); ++i) {
            FqElem a = F.element(i);
            CHECK(F.mul(a, F.inv(a)) == F.one());
        }
        // Frobenius fixed field is F_p: x^q = x for all x
        for (long i = 0; i < F.order(); ++i) {
            FqElem a = F.element(i);
            CHECK(F.pow(a, F.order()) == a);
        }
    }
}

TEST_CASE("Fq sqrt") {
    FqField F9(3, 2), F8(2, 3);
    for (const FqField& F : {F9, F8}) {
        for (long i = 0; i < F.order(); ++i) {
            FqElem a = F.element(i);
            FqElem sq = F.mul(a, a);
            FqElem r = F.sqrt(sq);
            CHECK(F.mul(r, r) == sq);
        }
    }
}

// Independent multiplicity oracle: Taylor expansion around r by repeated
// synthetic shifts; the multiplicity is the index of the first nonzero
// Taylor coefficient.
static int taylor_multiplicity(const FqField& F, const FqPoly& f, const FqElem& r) {
    // Repeated synthetic division by (x - r); the collected remainders are the
    // Taylor coefficients of f at r, and the multiplicity is the index of the
    // first nonzero one.
    std::vector<FqElem> work = f.c;
    std::vector<FqElem> coeffs;
    while (!work.empty()) {
        FqElem rem = F.zero();
        std::vector<FqElem> quot(work.size() - 1, F.zero());
        for (int i = int(work.size()) - 1; i >= 0; --i) {
            FqElem cur = F.add(work[size_t(i)], F.mul(rem, r));
            if (i > 0) quot[size_t(i - 1)] = cur;
            rem = cur;
        }
        coeffs.push_back(rem);
        work = quot;
    }
    int m = 0;
    while (m < int(coeffs.size()) && F.is_zero(coeffs[size_t(m)])) ++m;
    return m;
}

TEST_CASE("root multiplicity") {
    FqField F3(3);
    FqElem one = F3.one();
    // 1 - X over F_3 at r = 1
    FqPoly f = poly_make(F3, {one, F3.neg(one)});
    CHECK(root_multiplicity(F3, f, one) == 1);
    // constant 1
    FqPoly c1 = poly_make(F3, {one});
    CHECK(root_multiplicity(F3, c1, one) == 0);
    // (1 - X)^2
    FqPoly f2 = poly_mul(F3, f, f);
    CHECK(root_multiplicity(F3, f2, one) == 2);
    CHECK_THROWS_AS(root_multiplicity(F3, poly_make(F3, {}), one), MathError);

    // additivity over products + agreement with the Taylor oracle
    std::mt19937 rng(7);
    for (int iter = 0; iter < 200; ++iter) {
        std::vector<FqElem> ca, cb;
        for (int i = 0; i <= int(rng() % 3) + 1; ++i) ca.push_back(F3.element(long(rng() % 3)));
        for (int i = 0; i <= int(rng() % 3) + 1; ++i) cb.push_back(F3.element(long(rng() % 3)));
        FqPoly a = poly_make(F3, ca), b = poly_make(F3, cb);
        if (poly_degree(F3, a) < 0 || poly_degree(F3, b) < 0) continue;
        FqElem r = F3.element(long(rng() % 3));
        FqPoly ab = poly_mul(F3, a, b);
        CHECK(root_multiplicity(F3, ab, r) ==
              root_multiplicity(F3, a, r) + root_multiplicity(F3, b, r));
        CHECK(root_multiplicity(F3, ab, r) == taylor_multiplicity(F3, ab, r));
    }
}

TEST_CASE("finite field roots") {
    FqField F3(3), F2(2);
    FqElem one3 = F3.one();
    // X^2 - 1 over F_3: roots 1, 2
    FqPoly f = poly_make(F3, {F3.neg(one3), F3.zero(), one3});
    auto roots = finite_field_roots(F3, f);
    REQUIRE(roots.size() == 2);
    CHECK(roots[0].value == F3.element(1));
    CHECK(roots[1].value == F3.element(2));
    // X^2 + 1 over F_3: irreducible
    FqPoly g = poly_make(F3, {one3, F3.zero(), one3});
    CHECK(finite_field_roots(F3, g).empty());
    // X^3 over F_2: 0 with multiplicity 3
    FqPoly h = poly_make(F2, {F2.zero(), F2.zero(), F2.zero(), F2.one()});
    auto r2 = finite_field_roots(F2, h);
    REQUIRE(r2.size() == 1);
    CHECK(r2[0].multiplicity == 3);
    // degree restriction
    CHECK_THROWS_AS(finite_field_roots(F3, poly_make(F3, {one3, one3})), MathError);
}

TEST_CASE("roots cross-checked by polynomial division") {
    // prod (X - r)^m divides f exactly, and the quotient has no roots left
    std::mt19937 rng(404);
    for (const FqField& F : {FqField(3), FqField(5), FqField(2, 2), FqField(3, 2)}) {
        for (int iter = 0; iter < 60; ++iter) {
            int deg = 2 + int(rng() % 2);
            std::vector<FqElem> cs;
            for (int i = 0; i < deg; ++i) cs.push_back(F.element(long(rng()) % F.order()));
            cs.push_back(F.element(1 + long(rng()) % (F.order() - 1)));  // nonzero lead
            FqPoly f = poly_make(F, cs);
            FqPoly quotient = f, q, rem;
            int total = 0;
            for (const FqRoot& root : finite_field_roots(F, f)) {
                total += root.multiplicity;
                for (int k = 0; k < root.multiplicity; ++k) {
                    poly_divrem(F, quotient, poly_make(F, {F.neg(root.value), F.one()}), q, rem);
                    CHECK(poly_degree(F, rem) < 0);
                    quotient = q;
                }
            }
            CHECK(total <= deg);
            for (long i = 0; i < F.order(); ++i)
                CHECK_FALSE(F.is_zero(poly_eval(F, quotient, F.element(i))));
        }
    }
}

TEST_CASE("lattice HNF and solving") {
    std::mt19937 rng(31337);
    auto rnd = [&](int lo, int hi) { return long(lo + long(rng() % unsigned(hi - lo + 1))); };
    for (int iter = 0; iter < 300; ++iter) {
        int n = 2 + int(rng() % 3);
        // random full-rank lattice: diag-dominant generators
        IntMat gens;
        for (int j = 0; j < n + 2; ++j) {
            std::vector<Int> col(size_t(n), 0);
            for (int i = 0; i < n; ++i) col[size_t(i)] = rnd(-9, 9);
            gens.push_back(col);
        }
        for (int i = 0; i < n; ++i) {
            std::vector<Int> col(size_t(n), 0);
            col[size_t(i)] = rnd(1, 12);
            gens.push_back(col);
        }
        IntMat H = hnf_lower(gens);
        // every generator is in the lattice spanned by H
        for (const auto& g : gens) CHECK(lattice_contains(H, g));
        // canonical representatives are stable: reduce twice
        std::vector<Int> x(size_t(n), 0);
        for (int i = 0; i < n; ++i) x[size_t(i)] = rnd(-50, 50);
        auto r1 = lattice_reduce(H, x);
        CHECK(lattice_reduce(H, r1) == r1);
        // x - rep is in the lattice
        std::vector<Int> diff(size_t(n), 0);
        for (int i = 0; i < n; ++i) diff[size_t(i)] = x[size_t(i)] - r1[size_t(i)];
        CHECK(lattice_contains(H, diff));
        // random member detection
        std::vector<Int> member(size_t(n), 0);
        for (const auto& col : H) {
            long c = rnd(-3, 3);
            for (int i = 0; i < n; ++i) member[size_t(i)] += c * col[size_t(i)];
        }
        CHECK(lattice_contains(H, member));
    }
}

TEST_CASE("solve_mod_lattice") {
    std::mt19937 rng(5150);
    auto rnd = [&](int lo, int hi) { return long(lo + long(rng() % unsigned(hi - lo + 1))); };
    for (int iter = 0; iter < 200; ++iter) {
        int n = 2 + int(rng() % 3);
        IntMat A;
        for (int j = 0; j < n; ++j) {
            std::vector<Int> col(size_t(n), 0);
            for (int i = 0; i < n; ++i) col[size_t(i)] = rnd(-6, 6);
            A.push_back(col);
        }
        IntMat gens;
        for (int i = 0; i < n; ++i) {
            std::vector<Int> col(size_t(n), 0);
            col[size_t(i)] = rnd(2, 9);
            gens.push_back(col);
        }
        IntMat H = hnf_lower(gens);
        // pick b = A x0 + lattice vector
        std::vector<Int> x0(size_t(n), 0);
        for (int i = 0; i < n; ++i) x0[size_t(i)] = rnd(-5, 5);
        std::vector<Int> b = mat_apply(A, x0);
        for (const auto& col : H) {
            long c = rnd(-2, 2);
            for (int i = 0; i < n; ++i) b[size_t(i)] += c * col[size_t(i)];
        }
        auto sol = solve_mod_lattice(A, H, b);
        REQUIRE(sol.has_value());
        std::vector<Int> ax = mat_apply(A, *sol);
        std::vector<Int> diff(size_t(n), 0);
        for (int i = 0; i < n; ++i) diff[size_t(i)] = b[size_t(i)] - ax[size_t(i)];
        CHECK(lattice_contains(H, diff));
    }
}
