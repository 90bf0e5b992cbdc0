#include "h10/curves.hpp"

#include <algorithm>

namespace h10::curves {

Invariants invariants(const Model& m) {
    const Rat &a1 = m.a[0], &a2 = m.a[1], &a3 = m.a[2], &a4 = m.a[3], &a6 = m.a[4];
    Invariants v;
    v.b2 = a1 * a1 + 4 * a2;
    v.b4 = 2 * a4 + a1 * a3;
    v.b6 = a3 * a3 + 4 * a6;
    v.b8 = a1 * a1 * a6 + 4 * a2 * a6 - a1 * a3 * a4 + a2 * a3 * a3 - a4 * a4;
    v.c4 = v.b2 * v.b2 - 24 * v.b4;
    v.c6 = -v.b2 * v.b2 * v.b2 + 36 * v.b2 * v.b4 - 216 * v.b6;
    v.disc = -v.b2 * v.b2 * v.b8 - 8 * v.b4 * v.b4 * v.b4 - 27 * v.b6 * v.b6 +
             9 * v.b2 * v.b4 * v.b6;
    if (v.disc == 0) throw MathError("singular model");
    if (4 * v.b8 != v.b2 * v.b6 - v.b4 * v.b4) throw MathError("b8 identity violated");
    if (v.c4 * v.c4 * v.c4 - v.c6 * v.c6 != 1728 * v.disc)
        throw MathError("c4^3 - c6^2 = 1728*disc violated");
    v.j = v.c4 * v.c4 * v.c4 / v.disc;
    return v;
}

bool is_integral(const Model& m) {
    return std::all_of(m.a.begin(), m.a.end(),
                       [](const Rat& x) { return x.get_den() == 1; });
}

Int integral_coeff(const Model& m, int i) {
    if (m.a[size_t(i)].get_den() != 1) throw MathError("integral_coeff: non-integral model");
    return Int(m.a[size_t(i)].get_num());
}

Model rst_transform(const Model& m, const Rat& r, const Rat& s, const Rat& t) {
    const Rat &a1 = m.a[0], &a2 = m.a[1], &a3 = m.a[2], &a4 = m.a[3], &a6 = m.a[4];
    Model out;
    out.a[0] = a1 + 2 * s;
    out.a[1] = a2 - s * a1 + 3 * r - s * s;
    out.a[2] = a3 + r * a1 + 2 * t;
    out.a[3] = a4 - s * a3 + 2 * r * a2 - (t + r * s) * a1 + 3 * r * r - 2 * s * t;
    out.a[4] = a6 + r * a4 + r * r * a2 + r * r * r - t * a3 - t * t - r * t * a1;
    return out;
}

Model u_transform(const Model& m, const Rat& u) {
    Model out;
    Rat ui = u;
    out.a[0] = m.a[0] / ui;
    ui *= u;
    out.a[1] = m.a[1] / ui;
    ui *= u;
    out.a[2] = m.a[2] / ui;
    ui *= u;
    out.a[3] = m.a[3] / ui;
    ui *= u * u;
    out.a[4] = m.a[4] / ui;
    return out;
}

// ---------------------------------------------------------------------------
// Factorization

namespace {

Int pollard_rho(const Int& n) {
    // Brent's variant; n composite, not a prime power of interest
    gmp_randclass rnd(gmp_randinit_default);
    rnd.seed(20240901);
    while (true) {
        Int c = rnd.get_z_range(n - 3) + 1;
        Int x = rnd.get_z_range(n - 2) + 1, y = x, d = 1;
        while (d == 1) {
            x = (x * x + c) % n;
            y = (y * y + c) % n;
            y = (y * y + c) % n;
            d = gcd(abs(x - y), n);
        }
        if (d != n) return d;
    }
}

void factor_into(const Int& n, std::map<Int, long>& out) {
    if (n == 1) return;
    if (is_prime(n)) {
        ++out[n];
        return;
    }
    Int d = pollard_rho(n);
    factor_into(d, out);
    factor_into(n / d, out);
}

}  // namespace

std::map<Int, long> factor(const Int& n) {
    if (n == 0) throw MathError("factor: zero");
    std::map<Int, long> out;
    Int m = abs(n);
    for (uint32_t p : primes_up_to(100000)) {
        while (m % p == 0) {
            ++out[Int(p)];
            m /= p;
        }
        if (m == 1) break;
    }
    if (m > 1) factor_into(m, out);
    return out;
}

std::vector<Int> bad_primes(const Model& minimal) {
    Invariants v = invariants(minimal);
    if (v.disc.get_den() != 1) throw MathError("bad_primes: non-integral model");
    std::vector<Int> out;
    for (const auto& [p, e] : factor(Int(v.disc.get_num()))) out.push_back(p);
    return out;
}

// ---------------------------------------------------------------------------
// Minimal models (Laska-Kraus-Connell)

namespace {

Model model_from_c4c6(const Int& C4, const Int& C6) {
    Int b2 = ((-C6) % 12 + 12) % 12;
    if (b2 > 6) b2 -= 12;
    Int num_b4 = b2 * b2 - C4;
    if (num_b4 % 24 != 0) throw MathError("model_from_c4c6: b4 not integral");
    Int b4 = num_b4 / 24;
    Int num_b6 = -b2 * b2 * b2 + 36 * b2 * b4 - C6;
    if (num_b6 % 216 != 0) throw MathError("model_from_c4c6: b6 not integral");
    Int b6 = num_b6 / 216;
    Int a1 = ((b2 % 2) + 2) % 2;
    if ((b2 - a1) % 4 != 0) throw MathError("model_from_c4c6: a2 not integral");
    Int a2 = (b2 - a1) / 4;
    Int a3 = ((b6 % 2) + 2) % 2;
    Int num_a4 = b4 - a1 * a3;
    if (num_a4 % 2 != 0) throw MathError("model_from_c4c6: a4 not integral");
    Int a4 = num_a4 / 2;
    Int num_a6 = b6 - a3;
    if (num_a6 % 4 != 0) throw MathError("model_from_c4c6: a6 not integral");
    Int a6 = num_a6 / 4;
    return make_model(Rat(a1), Rat(a2), Rat(a3), Rat(a4), Rat(a6));
}

bool kraus_at_2(const Int& C4, const Int& C6) {
    Int r = ((C6 % 4) + 4) % 4;
    if (r == 3) return true;  // C6 = -1 mod 4
    long v4 = (C4 == 0) ? 100 : padic_valuation_int(C4, 2);
    if (v4 < 4) return false;
    Int m = ((C6 % 32) + 32) % 32;
    return m == 0 || m == 8;
}

bool kraus_at_3(const Int& C6) {
    if (C6 == 0) return true;
    return padic_valuation_int(C6, 3) != 2;
}

}  // namespace

Model minimal_model(const Model& m) {
    // clear denominators first
    Int den = 1;
    for (const auto& x : m.a) den = lcm(den, Int(x.get_den()));
    Model im = u_transform(m, Rat(1, den));
    if (!is_integral(im)) throw MathError("minimal_model: integral scaling failed");

    Invariants v = invariants(im);
    Int c4(v.c4.get_num()), c6(v.c6.get_num()), disc(v.disc.get_num());

    Int u = 1;
    for (const auto& [ell, vd] : factor(disc)) {
        if (vd < 12) continue;
        long e4 = (c4 == 0) ? 1000000 : padic_valuation_int(c4, ell);
        long e6 = (c6 == 0) ? 1000000 : padic_valuation_int(c6, ell);
        long e = std::min({e4 / 4, e6 / 6, vd / 12});
        for (long i = 0; i < e; ++i) u *= ell;
    }
    auto scaled = [&](const Int& uu) {
        Int u4 = uu * uu * uu * uu;
        return std::pair<Int, Int>(c4 / u4, c6 / (u4 * uu * uu));
    };
    auto [C4, C6] = scaled(u);
    if (!kraus_at_3(C6) && u % 3 == 0) {
        u /= 3;
        std::tie(C4, C6) = scaled(u);
    }
    if (!kraus_at_2(C4, C6) && u % 2 == 0) {
        u /= 2;
        std::tie(C4, C6) = scaled(u);
    }
    if (!kraus_at_3(C6) || !kraus_at_2(C4, C6))
        throw MathError("minimal_model: Kraus conditions unsatisfiable");

    Model out = model_from_c4c6(C4, C6);
    Invariants vo = invariants(out);
    if (vo.c4 != C4 || vo.c6 != C6) throw MathError("minimal_model: reconstruction mismatch");
    return out;
}

Model quadratic_twist(const Model& m, const Int& d) {
    if (d == 0) throw MathError("quadratic_twist: d = 0");
    for (const auto& [p, e] : factor(d))
        if (e > 1) throw MathError("quadratic_twist: d must be squarefree");
    Invariants v = invariants(m);
    Rat dd(d);
    Model tw = make_model(Rat(0), Rat(0), Rat(0), -27 * v.c4 * dd * dd, -54 * v.c6 * dd * dd * dd);
    return minimal_model(tw);
}

// ---------------------------------------------------------------------------
// Point counting

FqCurve reduce_model(const Model& integral, const nf::PrimeIdeal& P) {
    if (!is_integral(integral)) throw MathError("reduce_model: non-integral model");
    FqCurve c{P.residue_field(), {}};
    const auto& R = P.order();
    for (int i = 0; i < 5; ++i) c.a[size_t(i)] = P.reduce(R.from_rational(integral.a[size_t(i)]));
    return c;
}

bool is_nonsingular(const FqCurve& c) {
    const FqField& F = c.F;
    auto b2 = F.add(F.mul(c.a[0], c.a[0]), F.mul(F.from_int(4), c.a[1]));
    auto b4 = F.add(F.mul(F.from_int(2), c.a[3]), F.mul(c.a[0], c.a[2]));
    auto b6 = F.add(F.mul(c.a[2], c.a[2]), F.mul(F.from_int(4), c.a[4]));
    auto b8 = F.sub(
        F.add(F.add(F.mul(F.mul(c.a[0], c.a[0]), c.a[4]),
                    F.mul(F.from_int(4), F.mul(c.a[1], c.a[4]))),
              F.sub(F.mul(c.a[1], F.mul(c.a[2], c.a[2])), F.mul(F.mul(c.a[0], c.a[2]), c.a[3]))),
        F.mul(c.a[3], c.a[3]));
    // disc = -b2^2 b8 - 8 b4^3 - 27 b6^2 + 9 b2 b4 b6
    auto t1 = F.neg(F.mul(F.mul(b2, b2), b8));
    auto t2 = F.neg(F.mul(F.from_int(8), F.mul(F.mul(b4, b4), b4)));
    auto t3 = F.neg(F.mul(F.from_int(27), F.mul(b6, b6)));
    auto t4 = F.mul(F.from_int(9), F.mul(b2, F.mul(b4, b6)));
    return !F.is_zero(F.add(F.add(t1, t2), F.add(t3, t4)));
}

Int count_points(const FqCurve& c) {
    if (!is_nonsingular(c)) throw MathError("count_points: singular curve");
    const FqField& F = c.F;
    long q = F.order();
    Int count = 1;  // infinity
    if (F.characteristic() == 2) {
        int k = F.degree();
        auto trace = [&](FqElem t) {
            FqElem acc = t;
            FqElem cur = t;
            for (int i = 1; i < k; ++i) {
                cur = F.mul(cur, cur);
                acc = F.add(acc, cur);
            }
            return acc;
        };
        for (long i = 0; i < q; ++i) {
            FqElem x = F.element(i);
            FqElem L = F.add(F.mul(c.a[0], x), c.a[2]);
            FqElem rhs = F.add(
                F.add(F.mul(F.mul(x, x), F.add(x, c.a[1])), F.mul(c.a[3], x)), c.a[4]);
            if (F.is_zero(L)) {
                count += 1;  // unique y with y^2 = rhs
            } else {
                FqElem t = F.mul(rhs, F.inv(F.mul(L, L)));
                if (F.is_zero(trace(t))) count += 2;
            }
        }
        return count;
    }
    // odd characteristic: complete the square, quadratic character of
    // 4x^3 + b2 x^2 + 2 b4 x + b6
    auto b2 = F.add(F.mul(c.a[0], c.a[0]), F.mul(F.from_int(4), c.a[1]));
    auto b4 = F.add(F.mul(F.from_int(2), c.a[3]), F.mul(c.a[0], c.a[2]));
    auto b6 = F.add(F.mul(c.a[2], c.a[2]), F.mul(F.from_int(4), c.a[4]));
    Int half = (Int(q) - 1) / 2;
    for (long i = 0; i < q; ++i) {
        FqElem x = F.element(i);
        FqElem d = F.add(
            F.add(F.mul(F.mul(F.from_int(4), x), F.mul(x, x)), F.mul(b2, F.mul(x, x))),
            F.add(F.mul(F.from_int(2), F.mul(b4, x)), b6));
        if (F.is_zero(d)) {
            count += 1;
        } else if (F.pow(d, half) == F.one()) {
            count += 2;
        }
    }
    return count;
}

long count_points_mod_ell(const Model& integral, long ell) {
    if (ell == 2) {
        // direct enumeration over F_2
        long a1 = to_long(integral_coeff(integral, 0)) & 1;
        long a2 = to_long(Int(integral_coeff(integral, 1) % 2 + 2) % 2);
        long a3 = to_long(Int(integral_coeff(integral, 2) % 2 + 2) % 2);
        long a4 = to_long(Int(integral_coeff(integral, 3) % 2 + 2) % 2);
        long a6 = to_long(Int(integral_coeff(integral, 4) % 2 + 2) % 2);
        long count = 1;
        for (long x = 0; x < 2; ++x)
            for (long y = 0; y < 2; ++y) {
                long lhs = (y * y + a1 * x * y + a3 * y) & 1;
                long rhs = (x * x * x + a2 * x * x + a4 * x + a6) & 1;
                if (lhs == rhs) ++count;
            }
        return count;
    }
    auto red = [&](const Int& v) {
        Int r = v % ell;
        if (r < 0) r += ell;
        return r.get_si();
    };
    Int A1 = integral_coeff(integral, 0), A2 = integral_coeff(integral, 1),
        A3 = integral_coeff(integral, 2), A4 = integral_coeff(integral, 3),
        A6 = integral_coeff(integral, 4);
    long b2 = red(A1 * A1 + 4 * A2);
    long b4 = red(2 * A4 + A1 * A3);
    long b6 = red(A3 * A3 + 4 * A6);
    // quadratic residue table
    std::vector<uint8_t> qr(size_t(ell), 0);
    for (long t = 1; t < ell; ++t) qr[size_t((t * t) % ell)] = 1;
    long tb4 = (2 * b4) % ell;
    long count = 1;
    for (long x = 0; x < ell; ++x) {
        long d = (((4 * x + b2) % ell) * x % ell + tb4) % ell * x % ell + b6;
        d %= ell;
        if (d == 0)
            count += 1;
        else if (qr[size_t(d)])
            count += 2;
    }
    return count;
}

Int trace_good(const Model& minimal, const Int& ell) {
    Invariants v = invariants(minimal);
    if (Int(v.disc.get_num()) % ell == 0) throw MathError("trace_good: bad reduction");
    return ell + 1 - count_points_mod_ell(minimal, to_long(ell));
}

bool is_ordinary(const Model& minimal, const Int& p) {
    if (p == 2 || !is_prime(p)) throw MathError("is_ordinary: p must be an odd prime");
    Invariants v = invariants(minimal);
    if (Int(v.disc.get_num()) % p == 0)
        throw MathError("is_ordinary: not applicable, bad reduction at p");
    Int ap = trace_good(minimal, p);
    return ap % p != 0;
}

TorsionEvidence torsion_p_vanishes_over_K(const Model& minimal, const Int& p,
                                          const nf::ImagQuadField& K, long search_bound) {
    Invariants v = invariants(minimal);
    Int disc(v.disc.get_num());
    TorsionEvidence ev;
    if (search_bound < 2) return ev;
    for (uint32_t ell : primes_up_to(uint32_t(search_bound))) {
        if (Int(ell) == p) continue;
        if (disc % ell == 0) continue;
        if (K.splitting(ell) != nf::Splitting::Split) continue;
        Int order = Int(ell) + 1 - trace_good(minimal, ell);
        if (order % p != 0) {
            ev.proved = true;
            ev.witness_ell = long(ell);
            ev.group_order = order;
            return ev;
        }
    }
    return ev;
}

}  // namespace h10::curves
