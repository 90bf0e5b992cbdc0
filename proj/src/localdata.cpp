#include "h10/localdata.hpp"

#include <algorithm>
#include <set>

namespace h10::localdata {

using nf::PrimeIdeal;
using nf::QCoords;

NFModel base_change(const curves::Model& m, const nf::OrderPtr& order) {
    NFModel out;
    out.order = order;
    for (int i = 0; i < 5; ++i) out.a[size_t(i)] = order->from_rational(m.a[size_t(i)]);
    return out;
}

std::string kind_str(ReductionKind k) {
    switch (k) {
        case ReductionKind::Good: return "good";
        case ReductionKind::SplitMultiplicative: return "split-multiplicative";
        case ReductionKind::NonsplitMultiplicative: return "nonsplit-multiplicative";
        case ReductionKind::Additive: return "additive";
    }
    return "?";
}

std::string KodairaType::str() const {
    switch (series) {
        case Series::I: return "I" + std::to_string(n);
        case Series::Istar: return "I" + std::to_string(n) + "*";
        case Series::II: return "II";
        case Series::IIstar: return "II*";
        case Series::III: return "III";
        case Series::IIIstar: return "III*";
        case Series::IV: return "IV";
        case Series::IVstar: return "IV*";
    }
    return "?";
}

// ---------------------------------------------------------------------------

namespace {

constexpr long kValInf = 1L << 40;

struct NFInvariants {
    QCoords b2, b4, b6, b8, disc;
};

NFInvariants nf_invariants(const nf::Order& R, const std::array<QCoords, 5>& a) {
    auto C = [&](long v) { return R.from_rational(Rat(v)); };
    const QCoords &a1 = a[0], &a2 = a[1], &a3 = a[2], &a4 = a[3], &a6 = a[4];
    NFInvariants out;
    out.b2 = R.qadd(R.qmul(a1, a1), R.qmul(C(4), a2));
    out.b4 = R.qadd(R.qmul(C(2), a4), R.qmul(a1, a3));
    out.b6 = R.qadd(R.qmul(a3, a3), R.qmul(C(4), a6));
    out.b8 = R.qsub(
        R.qadd(R.qadd(R.qmul(R.qmul(a1, a1), a6), R.qmul(C(4), R.qmul(a2, a6))),
               R.qsub(R.qmul(a2, R.qmul(a3, a3)), R.qmul(R.qmul(a1, a3), a4))),
        R.qmul(a4, a4));
    QCoords t1 = R.qneg(R.qmul(R.qmul(out.b2, out.b2), out.b8));
    QCoords t2 = R.qneg(R.qmul(C(8), R.qmul(R.qmul(out.b4, out.b4), out.b4)));
    QCoords t3 = R.qneg(R.qmul(C(27), R.qmul(out.b6, out.b6)));
    QCoords t4 = R.qmul(C(9), R.qmul(out.b2, R.qmul(out.b4, out.b6)));
    out.disc = R.qadd(R.qadd(t1, t2), R.qadd(t3, t4));
    return out;
}

std::array<QCoords, 5> nf_rst(const nf::Order& R, const std::array<QCoords, 5>& a,
                              const QCoords& r, const QCoords& s, const QCoords& t) {
    auto C = [&](long v) { return R.from_rational(Rat(v)); };
    const QCoords &a1 = a[0], &a2 = a[1], &a3 = a[2], &a4 = a[3], &a6 = a[4];
    std::array<QCoords, 5> out;
    out[0] = R.qadd(a1, R.qmul(C(2), s));
    out[1] = R.qsub(R.qadd(a2, R.qmul(C(3), r)), R.qadd(R.qmul(s, a1), R.qmul(s, s)));
    out[2] = R.qadd(a3, R.qadd(R.qmul(r, a1), R.qmul(C(2), t)));
    out[3] = R.qsub(
        R.qadd(a4, R.qadd(R.qmul(C(2), R.qmul(r, a2)), R.qmul(C(3), R.qmul(r, r)))),
        R.qadd(R.qadd(R.qmul(s, a3), R.qmul(R.qadd(t, R.qmul(r, s)), a1)),
               R.qmul(C(2), R.qmul(s, t))));
    out[4] = R.qsub(
        R.qadd(a6, R.qadd(R.qmul(r, a4),
                          R.qadd(R.qmul(R.qmul(r, r), a2), R.qmul(r, R.qmul(r, r))))),
        R.qadd(R.qadd(R.qmul(t, a3), R.qmul(t, t)), R.qmul(r, R.qmul(t, a1))));
    return out;
}

// number of distinct roots in F of the cubic x^3 + b x^2 + c x + d
int cubic_roots_in_field(const FqField& F, const FqElem& b, const FqElem& c, const FqElem& d) {
    int count = 0;
    for (long i = 0; i < F.order(); ++i) {
        FqElem x = F.element(i);
        FqElem val = F.add(F.mul(F.add(F.mul(F.add(x, b), x), c), x), d);
        if (F.is_zero(val)) ++count;
    }
    return count;
}

struct TateCtx {
    const nf::Order& R;
    const PrimeIdeal& P;
    const FqField& F;
    QCoords pi;
    long charp;

    long val(const QCoords& x) const {
        PadicVal v = P.valuation(x);
        if (v.infinite) return kValInf;
        if (v.v > 50) throw MathError("tate: valuation cap exceeded at " + P.label());
        return v.v;
    }
    FqElem red(const QCoords& x) const { return P.reduce(x); }
    FqElem reds(const QCoords& x, long k) const { return P.reduce_shifted(x, k); }
    QCoords lift(const FqElem& a) const { return P.lift(a); }
    QCoords pi_pow(long k) const {
        QCoords out = R.qone();
        for (long i = 0; i < k; ++i) out = R.qmul(out, pi);
        return out;
    }
    FqElem half_inv() const { return F.inv(F.from_int(2)); }
};

// singular point of the reduced curve; the curve must be singular
std::pair<FqElem, FqElem> find_singular_point(const TateCtx& T, const std::array<FqElem, 5>& A) {
    const FqField& F = T.F;
    const FqElem &a1 = A[0], &a2 = A[1], &a3 = A[2], &a4 = A[3], &a6 = A[4];
    auto on_curve = [&](const FqElem& x, const FqElem& y) {
        FqElem lhs = F.add(F.mul(y, y), F.add(F.mul(F.mul(a1, x), y), F.mul(a3, y)));
        FqElem rhs = F.add(F.mul(F.mul(x, x), F.add(x, a2)), F.add(F.mul(a4, x), a6));
        return lhs == rhs;
    };
    auto dx_zero = [&](const FqElem& x, const FqElem& y) {
        // a1 y - 3x^2 - 2 a2 x - a4
        FqElem v = F.sub(F.mul(a1, y),
                         F.add(F.mul(F.from_int(3), F.mul(x, x)),
                               F.add(F.mul(F.from_int(2), F.mul(a2, x)), a4)));
        return F.is_zero(v);
    };
    for (long i = 0; i < F.order(); ++i) {
        FqElem x = F.element(i);
        FqElem y;
        if (T.charp == 2) {
            if (!F.is_zero(F.add(F.mul(a1, x), a3))) continue;
            FqElem rhs = F.add(F.mul(F.mul(x, x), F.add(x, a2)), F.add(F.mul(a4, x), a6));
            y = F.sqrt(rhs);
        } else {
            // dy = 2y + a1 x + a3 = 0
            y = F.neg(F.mul(F.add(F.mul(a1, x), a3), T.half_inv()));
        }
        if (on_curve(x, y) && dx_zero(x, y)) return {x, y};
    }
    throw MathError("tate: singular point not found over the residue field");
}

}  // namespace

LocalReductionData tate_algorithm(const NFModel& model, const PrimeIdeal& P) {
    const nf::Order& R = *model.order;
    if (&R != &P.order()) throw MathError("tate: model and prime live in different fields");
    if (R.degree() > 4) throw nf::UnsupportedField("tate: field degree > 4 unsupported");
    const FqField& F = P.residue_field();
    TateCtx T{R, P, F, P.uniformizer(), F.characteristic()};

    std::array<QCoords, 5> a = model.a;
    for (const auto& ai : a)
        if (!P.valuation(ai).infinite && P.valuation(ai).v < 0)
            throw MathError("tate: model is not integral at " + P.label());

    LocalReductionData out;
    out.prime = P;
    out.q_v = P.norm();

    for (int restarts = 0;; ++restarts) {
        if (restarts > 25) throw MathError("tate: restart cap exceeded");
        NFInvariants inv = nf_invariants(R, a);
        long n = T.val(inv.disc);
        if (n >= kValInf) throw MathError("tate: singular model (disc = 0)");
        out.v_disc_min = n;

        if (n == 0) {
            curves::FqCurve c{F, {T.red(a[0]), T.red(a[1]), T.red(a[2]), T.red(a[3]), T.red(a[4])}};
            Int N = curves::count_points(c);
            out.kind = ReductionKind::Good;
            out.kodaira = KodairaType{KodairaType::Series::I, 0};
            out.conductor_exponent = 0;
            out.tamagawa = 1;
            out.a_v = Int(F.order()) + 1 - N;
            return out;
        }

        // move the singular point to the origin
        {
            std::array<FqElem, 5> A{T.red(a[0]), T.red(a[1]), T.red(a[2]), T.red(a[3]),
                                    T.red(a[4])};
            auto [x0, y0] = find_singular_point(T, A);
            a = nf_rst(R, a, T.lift(x0), R.qzero(), T.lift(y0));
        }
        if (T.val(a[2]) < 1 || T.val(a[3]) < 1 || T.val(a[4]) < 1)
            throw MathError("tate: origin translation failed");
        inv = nf_invariants(R, a);

        if (T.val(inv.b2) == 0) {
            // multiplicative: I_n; split iff T^2 + a1 T - a2 has roots in F
            bool split = quadratic_has_root(F, F.one(), T.red(a[0]), F.neg(T.red(a[1])));
            out.kind = split ? ReductionKind::SplitMultiplicative
                             : ReductionKind::NonsplitMultiplicative;
            out.kodaira = KodairaType{KodairaType::Series::I, n};
            out.conductor_exponent = 1;
            out.tamagawa = split ? Int(n) : Int(n % 2 == 0 ? 2 : 1);
            out.a_v = split ? 1 : -1;
            return out;
        }
        out.kind = ReductionKind::Additive;
        out.a_v = 0;

        if (T.val(a[4]) < 2) {
            out.kodaira = KodairaType{KodairaType::Series::II};
            out.conductor_exponent = n;
            out.tamagawa = 1;
            return out;
        }
        if (T.val(inv.b8) < 3) {
            out.kodaira = KodairaType{KodairaType::Series::III};
            out.conductor_exponent = n - 1;
            out.tamagawa = 2;
            return out;
        }
        if (T.val(inv.b6) < 3) {
            bool has = quadratic_has_root(F, F.one(), T.reds(a[2], 1), F.neg(T.reds(a[4], 2)));
            out.kodaira = KodairaType{KodairaType::Series::IV};
            out.conductor_exponent = n - 2;
            out.tamagawa = has ? 3 : 1;
            return out;
        }

        // normalize: v(a1) >= 1, v(a2) >= 1, v(a3) >= 2, v(a4) >= 2, v(a6) >= 3
        {
            QCoords s;
            if (T.charp == 2)
                s = T.lift(F.sqrt(T.red(a[1])));
            else if (T.charp == 3)
                s = T.lift(T.red(a[0]));
            else
                s = T.lift(F.neg(F.mul(T.red(a[0]), T.half_inv())));
            a = nf_rst(R, a, R.qzero(), s, R.qzero());
            QCoords t;
            if (T.charp == 2)
                t = R.qmul(T.pi, T.lift(F.sqrt(T.reds(a[4], 2))));
            else if (T.charp == 3)
                t = R.qmul(T.pi, T.lift(T.reds(a[2], 1)));
            else
                t = R.qmul(T.pi, T.lift(F.neg(F.mul(T.reds(a[2], 1), T.half_inv()))));
            a = nf_rst(R, a, R.qzero(), R.qzero(), t);
        }
        if (T.val(a[0]) < 1 || T.val(a[1]) < 1 || T.val(a[2]) < 2 || T.val(a[3]) < 2 ||
            T.val(a[4]) < 3)
            throw MathError("tate: step-6 normalization failed");

        // cubic T^3 + b T^2 + c T + d over the residue field
        FqElem b = T.reds(a[1], 1), c = T.reds(a[3], 2), d = T.reds(a[4], 3);
        // discriminant 18bcd - 4b^3d + b^2c^2 - 4c^3 - 27d^2
        FqElem disc3;
        {
            FqElem t18 = F.mul(F.from_int(18), F.mul(b, F.mul(c, d)));
            FqElem t4b = F.mul(F.from_int(4), F.mul(F.mul(b, F.mul(b, b)), d));
            FqElem tb2c2 = F.mul(F.mul(b, b), F.mul(c, c));
            FqElem t4c = F.mul(F.from_int(4), F.mul(c, F.mul(c, c)));
            FqElem t27 = F.mul(F.from_int(27), F.mul(d, d));
            disc3 = F.sub(F.add(F.sub(t18, t4b), tb2c2), F.add(t4c, t27));
        }
        if (!F.is_zero(disc3)) {
            int nroots = cubic_roots_in_field(F, b, c, d);
            out.kodaira = KodairaType{KodairaType::Series::Istar, 0};
            out.conductor_exponent = n - 4;
            out.tamagawa = 1 + nroots;
            return out;
        }

        // repeated root of the cubic (rational over the residue field)
        FqPoly cubic = poly_make(F, {d, c, b, F.one()});
        FqElem rep;
        int repmult = 0;
        for (const auto& root : finite_field_roots(F, cubic)) {
            if (root.multiplicity >= 2) {
                rep = root.value;
                repmult = root.multiplicity;
            }
        }
        if (repmult == 0) throw MathError("tate: repeated root not found");

        a = nf_rst(R, a, R.qmul(T.pi, T.lift(rep)), R.qzero(), R.qzero());

        if (repmult == 2) {
            // type I_m*, m >= 1
            if (T.val(a[1]) != 1 || T.val(a[3]) < 3 || T.val(a[4]) < 4)
                throw MathError("tate: I_m* entry conditions failed");
            long ex = 2, ey = 2;
            while (true) {
                if (ex + ey > n + 6) throw MathError("tate: I_m* loop cap exceeded");
                FqElem A3 = T.reds(a[2], ey), A6 = T.reds(a[4], ex + ey);
                FqElem disc2 = F.add(F.mul(A3, A3), F.mul(F.from_int(4), A6));
                if (!F.is_zero(disc2)) {
                    long mm = ex + ey - 3;
                    bool has = quadratic_has_root(F, F.one(), A3, F.neg(A6));
                    out.kodaira = KodairaType{KodairaType::Series::Istar, mm};
                    out.conductor_exponent = n - mm - 4;
                    out.tamagawa = has ? 4 : 2;
                    return out;
                }
                FqElem y0 = (T.charp == 2) ? F.sqrt(A6) : F.neg(F.mul(A3, T.half_inv()));
                a = nf_rst(R, a, R.qzero(), R.qzero(), R.qmul(T.pi_pow(ey), T.lift(y0)));
                ++ey;
                if (T.val(a[2]) < ey || T.val(a[4]) < ex + ey)
                    throw MathError("tate: I_m* y-step failed");

                FqElem A2 = T.reds(a[1], 1), A4 = T.reds(a[3], ex + 1);
                A6 = T.reds(a[4], ex + ey);
                if (F.is_zero(A2)) throw MathError("tate: I_m* lost the double root");
                disc2 = F.sub(F.mul(A4, A4), F.mul(F.from_int(4), F.mul(A2, A6)));
                if (!F.is_zero(disc2)) {
                    long mm = ex + ey - 3;
                    bool has = quadratic_has_root(F, A2, A4, A6);
                    out.kodaira = KodairaType{KodairaType::Series::Istar, mm};
                    out.conductor_exponent = n - mm - 4;
                    out.tamagawa = has ? 4 : 2;
                    return out;
                }
                FqElem x0 = (T.charp == 2) ? F.sqrt(F.mul(A6, F.inv(A2)))
                                           : F.neg(F.mul(A4, F.inv(F.mul(F.from_int(2), A2))));
                a = nf_rst(R, a, R.qmul(T.pi_pow(ex), T.lift(x0)), R.qzero(), R.qzero());
                ++ex;
                if (T.val(a[3]) < ex + 1 || T.val(a[4]) < ex + ey)
                    throw MathError("tate: I_m* x-step failed");
            }
        }

        // triple root
        if (T.val(a[1]) < 2 || T.val(a[3]) < 3 || T.val(a[4]) < 4)
            throw MathError("tate: triple-root translation failed");
        {
            FqElem A3 = T.reds(a[2], 2), A6 = T.reds(a[4], 4);
            FqElem disc2 = F.add(F.mul(A3, A3), F.mul(F.from_int(4), A6));
            if (!F.is_zero(disc2)) {
                bool has = quadratic_has_root(F, F.one(), A3, F.neg(A6));
                out.kodaira = KodairaType{KodairaType::Series::IVstar};
                out.conductor_exponent = n - 6;
                out.tamagawa = has ? 3 : 1;
                return out;
            }
            FqElem y0 = (T.charp == 2) ? F.sqrt(A6) : F.neg(F.mul(A3, T.half_inv()));
            a = nf_rst(R, a, R.qzero(), R.qzero(), R.qmul(T.pi_pow(2), T.lift(y0)));
        }
        if (T.val(a[2]) < 3 || T.val(a[4]) < 5)
            throw MathError("tate: IV* y-step failed");
        if (T.val(a[3]) < 4) {
            out.kodaira = KodairaType{KodairaType::Series::IIIstar};
            out.conductor_exponent = n - 7;
            out.tamagawa = 2;
            return out;
        }
        if (T.val(a[4]) < 6) {
            out.kodaira = KodairaType{KodairaType::Series::IIstar};
            out.conductor_exponent = n - 8;
            out.tamagawa = 1;
            return out;
        }
        // non-minimal: rescale by the uniformizer and start over
        QCoords piinv = R.qinv(T.pi);
        QCoords u = piinv;
        a[0] = R.qmul(a[0], u);
        u = R.qmul(u, piinv);
        a[1] = R.qmul(a[1], u);
        u = R.qmul(u, piinv);
        a[2] = R.qmul(a[2], u);
        u = R.qmul(u, piinv);
        a[3] = R.qmul(a[3], u);
        u = R.qmul(u, R.qmul(piinv, piinv));
        a[4] = R.qmul(a[4], u);
    }
}

Int tamagawa_p_part(const Int& c_v, const Int& p) {
    if (c_v < 1) throw MathError("tamagawa_p_part: c_v must be >= 1");
    long v = padic_valuation_int(c_v, p);
    Int out = 1;
    for (long i = 0; i < v; ++i) out *= p;
    return out;
}

LocalLFactor local_l_factor(const LocalReductionData& d) {
    LocalLFactor f;
    switch (d.kind) {
        case ReductionKind::Good:
            f.coeffs = {1, -d.a_v, d.q_v};
            f.degree = 2;
            break;
        case ReductionKind::SplitMultiplicative:
            f.coeffs = {1, -1, 0};
            f.degree = 1;
            break;
        case ReductionKind::NonsplitMultiplicative:
            f.coeffs = {1, 1, 0};
            f.degree = 1;
            break;
        case ReductionKind::Additive:
            f.coeffs = {1, 0, 0};
            f.degree = 0;
            break;
    }
    return f;
}

int d_v(const LocalLFactor& f, const Int& ell, const Int& p) {
    if (ell == p) throw MathError("d_v: ell = p (inverse undefined)");
    FqField Fp(to_long(p));
    std::vector<FqElem> coeffs;
    for (int i = 0; i <= f.degree; ++i) coeffs.push_back(Fp.from_int(f.coeffs[size_t(i)]));
    FqPoly poly = poly_make(Fp, coeffs);
    FqElem target = Fp.inv(Fp.from_int(ell));
    return root_multiplicity(Fp, poly, target);
}

// ---------------------------------------------------------------------------

std::string reason_str(SigmaReason r) {
    switch (r) {
        case SigmaReason::NotMember: return "not-a-member";
        case SigmaReason::GoodPDividesCount: return "good-with-p-dividing-count";
        case SigmaReason::SplitMultOverKprime: return "split-multiplicative-over-Kprime";
        case SigmaReason::AdditiveIVOverKprime: return "additive-IV-or-IVstar-over-Kprime";
    }
    return "?";
}

SigmaSet sigma_set(const curves::Model& e1_min, const curves::Model& e2_min,
                   const nf::ImagQuadField& K, const Int& p) {
    std::set<Int> rational_bad;
    for (const auto& ell : curves::bad_primes(e1_min)) rational_bad.insert(ell);
    for (const auto& ell : curves::bad_primes(e2_min)) rational_bad.insert(ell);

    std::unique_ptr<nf::CompositumField> Kp;  // built on first use
    auto kprime_primes = [&](const Int& ell) {
        if (!Kp) Kp = std::make_unique<nf::CompositumField>(K, p);
        return Kp->primes_above(ell);
    };

    SigmaSet out;
    for (const Int& ell : rational_bad) {
        for (const auto& v : K.primes_above(ell)) {
            NFModel m1 = base_change(e1_min, K.order());
            NFModel m2 = base_change(e2_min, K.order());
            LocalReductionData d1 = tate_algorithm(m1, v);
            LocalReductionData d2 = tate_algorithm(m2, v);
            if (d1.kind == ReductionKind::Good && d2.kind == ReductionKind::Good) continue;

            TPrimeData rec{v, d1, d2, SigmaReason::NotMember, SigmaReason::NotMember, {}, {}};

            bool need_kprime = false;
            for (int i = 0; i < 2; ++i)
                if ((i == 0 ? d1 : d2).kind != ReductionKind::Good) need_kprime = true;

            std::vector<PrimeIdeal> ws;
            if (need_kprime) {
                for (const auto& w : kprime_primes(ell)) {
                    std::vector<QCoords> embedded;
                    for (const auto& g : v.extra_generators())
                        embedded.push_back(Kp->embed_base(K.order()->to_q(g)));
                    if (w.lies_above(v, embedded)) ws.push_back(w);
                }
                if (ws.empty()) throw MathError("sigma_set: no primes of K' above " + v.label());
            }

            for (int i = 0; i < 2; ++i) {
                const LocalReductionData& d = (i == 0) ? d1 : d2;
                const curves::Model& e = (i == 0) ? e1_min : e2_min;
                SigmaReason& reason = (i == 0) ? rec.reason1 : rec.reason2;
                auto& records = (i == 0) ? rec.kprime1 : rec.kprime2;
                if (d.kind == ReductionKind::Good) {
                    Int count = d.q_v + 1 - d.a_v;
                    if (count % p == 0) reason = SigmaReason::GoodPDividesCount;
                    continue;
                }
                for (const auto& w : ws) {
                    NFModel mw = base_change(e, Kp->order());
                    LocalReductionData dw = tate_algorithm(mw, w);
                    records.push_back(KprimeRecord{w.label(), dw.kind, dw.kodaira});
                    if (dw.kind == ReductionKind::SplitMultiplicative) {
                        reason = SigmaReason::SplitMultOverKprime;
                    } else if (p == 3 && dw.kind == ReductionKind::Additive &&
                               (dw.kodaira == KodairaType{KodairaType::Series::IV, 0} ||
                                dw.kodaira == KodairaType{KodairaType::Series::IVstar, 0})) {
                        if (reason == SigmaReason::NotMember)
                            reason = SigmaReason::AdditiveIVOverKprime;
                    }
                }
            }
            out.bad_primes.push_back(std::move(rec));
        }
    }
    for (size_t i = 0; i < out.bad_primes.size(); ++i)
        if (out.bad_primes[i].in_sigma()) out.sigma_indices.push_back(i);
    return out;
}

void crosscheck_local_data(const curves::Model& minimal,
                           const std::vector<ExpectedLocalData>& expected) {
    auto Q = nf::Order::rationals();
    for (const auto& exp : expected) {
        auto primes = std::vector<PrimeIdeal>{
            PrimeIdeal::make(Q, exp.ell, {}, exp.ell.get_str())};
        LocalReductionData d = tate_algorithm(base_change(minimal, Q), primes[0]);
        if (d.kodaira.str() != exp.kodaira)
            throw MathError("local data mismatch at " + exp.ell.get_str() + ": kodaira " +
                            d.kodaira.str() + " != " + exp.kodaira);
        if (kind_str(d.kind) != exp.kind)
            throw MathError("local data mismatch at " + exp.ell.get_str() + ": kind " +
                            kind_str(d.kind) + " != " + exp.kind);
        if (d.tamagawa != exp.tamagawa)
            throw MathError("local data mismatch at " + exp.ell.get_str() + ": tamagawa " +
                            d.tamagawa.get_str() + " != " + exp.tamagawa.get_str());
        if (exp.v_disc >= 0 && d.v_disc_min != exp.v_disc)
            throw MathError("local data mismatch at " + exp.ell.get_str() + ": v(disc)");
        if (exp.conductor_exponent >= 0 && d.conductor_exponent != exp.conductor_exponent)
            throw MathError("local data mismatch at " + exp.ell.get_str() + ": conductor exponent");
    }
}

}  // namespace h10::localdata
