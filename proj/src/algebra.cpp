#include "h10/algebra.hpp"

#include <algorithm>

namespace h10 {

bool is_prime(const Int& n) {
    return mpz_probab_prime_p(n.get_mpz_t(), 40) != 0;
}

std::vector<uint32_t> primes_up_to(uint32_t n) {
    std::vector<bool> comp(n + 1, false);
    std::vector<uint32_t> out;
    for (uint32_t i = 2; i <= n; ++i) {
        if (comp[i]) continue;
        out.push_back(i);
        for (uint64_t j = uint64_t(i) * i; j <= n; j += i) comp[j] = true;
    }
    return out;
}

int kronecker_symbol(const Int& a, const Int& n) {
    if (n == 0) throw MathError("kronecker_symbol: n = 0");
    return mpz_kronecker(a.get_mpz_t(), n.get_mpz_t());
}

long padic_valuation_int(const Int& x, const Int& ell) {
    if (x == 0) throw MathError("padic_valuation_int: x = 0");
    Int tmp;
    return long(mpz_remove(tmp.get_mpz_t(), x.get_mpz_t(), ell.get_mpz_t()));
}

PadicVal padic_valuation(const Rat& x, const Int& ell) {
    if (ell < 2 || !is_prime(ell)) throw MathError("padic_valuation: ell not prime");
    if (x == 0) return PadicVal{true, 0};
    long vn = padic_valuation_int(Int(x.get_num()), ell);
    long vd = padic_valuation_int(Int(x.get_den()), ell);
    return PadicVal{false, vn - vd};
}

// ---------------------------------------------------------------------------
// FqField

namespace {

long mod_pos(const Int& n, long p) {
    Int r = n % p;
    if (r < 0) r += p;
    return r.get_si();
}

long inv_mod(long a, long p) {
    long t = 0, nt = 1, r = p, nr = a % p;
    if (nr < 0) nr += p;
    while (nr != 0) {
        long q = r / nr;
        std::swap(t -= q * nt, nt);
        std::swap(r -= q * nr, nr);
    }
    if (r != 1) throw MathError("inv_mod: not invertible");
    return t < 0 ? t + p : t;
}

// Irreducibility over F_p by trial division with all monic factors of
// degree <= deg/2.  Degrees here are at most 4.
bool poly_has_factor_of_degree(long p, const std::vector<long>& f, int d);

bool irreducible_mod_p(long p, const std::vector<long>& f) {
    int deg = int(f.size()) - 1;
    for (int d = 1; d <= deg / 2; ++d)
        if (poly_has_factor_of_degree(p, f, d)) return false;
    return true;
}

std::vector<long> poly_mod_divrem(long p, const std::vector<long>& num,
                                  const std::vector<long>& den) {
    // returns remainder; den monic
    std::vector<long> r = num;
    int dd = int(den.size()) - 1;
    while (int(r.size()) - 1 >= dd) {
        long lead = r.back() % p;
        int shift = int(r.size()) - 1 - dd;
        for (int i = 0; i <= dd; ++i) {
            long& ri = r[i + shift];
            ri = ((ri - lead * den[i]) % p + p) % p;
        }
        while (!r.empty() && r.back() % p == 0) r.pop_back();
        if (r.empty()) break;
    }
    return r;
}

bool poly_has_factor_of_degree(long p, const std::vector<long>& f, int d) {
    // enumerate monic polynomials of degree d over F_p
    long count = 1;
    for (int i = 0; i < d; ++i) count *= p;
    std::vector<long> g(size_t(d) + 1, 0);
    g[size_t(d)] = 1;
    for (long idx = 0; idx < count; ++idx) {
        long t = idx;
        for (int i = 0; i < d; ++i) {
            g[size_t(i)] = t % p;
            t /= p;
        }
        if (poly_mod_divrem(p, f, g).empty()) return true;
    }
    return false;
}

}  // namespace

FqField::FqField(long ell) : p_(ell), f_(1), q_(ell), mod_{0, 1} {
    if (ell < 2 || !is_prime(Int(ell))) throw MathError("FqField: characteristic not prime");
}

FqField::FqField(long ell, int degree) : p_(ell), f_(degree) {
    if (ell < 2 || !is_prime(Int(ell))) throw MathError("FqField: characteristic not prime");
    if (degree < 1 || degree > 4) throw MathError("FqField: degree out of range (f <= 4)");
    q_ = 1;
    for (int i = 0; i < degree; ++i) {
        if (q_ > (1L << 40) / ell) throw MathError("FqField: order too large");
        q_ *= ell;
    }
    if (degree == 1) {
        mod_ = {0, 1};
        return;
    }
    // canonical modulus: least monic irreducible in coefficient-lex order
    long count = q_;
    std::vector<long> m(size_t(degree) + 1, 0);
    m[size_t(degree)] = 1;
    for (long idx = 0; idx < count; ++idx) {
        long t = idx;
        for (int i = 0; i < degree; ++i) {
            m[size_t(i)] = t % ell;
            t /= ell;
        }
        if (irreducible_mod_p(ell, m)) {
            mod_ = m;
            return;
        }
    }
    throw MathError("FqField: no irreducible modulus found");
}

FqElem FqField::from_int(const Int& n) const {
    FqElem e;
    e.c[0] = mod_pos(n, p_);
    return e;
}

FqElem FqField::from_coeffs(const std::vector<long>& c) const {
    if (int(c.size()) > f_) throw MathError("FqField::from_coeffs: too many coefficients");
    FqElem e;
    for (size_t i = 0; i < c.size(); ++i) e.c[i] = ((c[i] % p_) + p_) % p_;
    return e;
}

FqElem FqField::element(long index) const {
    FqElem e;
    for (int i = 0; i < f_; ++i) {
        e.c[size_t(i)] = index % p_;
        index /= p_;
    }
    return e;
}

long FqField::index_of(const FqElem& a) const {
    long idx = 0;
    for (int i = f_ - 1; i >= 0; --i) idx = idx * p_ + a.c[size_t(i)];
    return idx;
}

FqElem FqField::add(const FqElem& a, const FqElem& b) const {
    FqElem e;
    for (int i = 0; i < f_; ++i) e.c[size_t(i)] = (a.c[size_t(i)] + b.c[size_t(i)]) % p_;
    return e;
}

FqElem FqField::sub(const FqElem& a, const FqElem& b) const {
    FqElem e;
    for (int i = 0; i < f_; ++i)
        e.c[size_t(i)] = ((a.c[size_t(i)] - b.c[size_t(i)]) % p_ + p_) % p_;
    return e;
}

FqElem FqField::neg(const FqElem& a) const { return sub(FqElem{}, a); }

void FqField::reduce_(std::array<long, 8>& prod, FqElem& out) const {
    for (int d = 6; d >= f_; --d) {
        long lead = prod[size_t(d)] % p_;
        if (lead == 0) continue;
        for (int i = 0; i < f_; ++i) {
            size_t pos = size_t(d - f_ + i);
            prod[pos] = ((prod[pos] - lead * mod_[size_t(i)]) % p_ + p_) % p_;
        }
        prod[size_t(d)] = 0;
    }
    for (int i = 0; i < f_; ++i) out.c[size_t(i)] = ((prod[size_t(i)] % p_) + p_) % p_;
}

FqElem FqField::mul(const FqElem& a, const FqElem& b) const {
    std::array<long, 8> prod{};
    for (int i = 0; i < f_; ++i) {
        if (a.c[size_t(i)] == 0) continue;
        for (int j = 0; j < f_; ++j)
            prod[size_t(i + j)] = (prod[size_t(i + j)] + a.c[size_t(i)] * b.c[size_t(j)]) % p_;
    }
    FqElem e;
    reduce_(prod, e);
    return e;
}

FqElem FqField::pow(const FqElem& a, const Int& e) const {
    if (e < 0) return pow(inv(a), -e);
    FqElem base = a, out = one();
    Int k = e;
    while (k > 0) {
        if (mpz_odd_p(k.get_mpz_t())) out = mul(out, base);
        base = mul(base, base);
        k >>= 1;
    }
    return out;
}

FqElem FqField::inv(const FqElem& a) const {
    if (is_zero(a)) throw MathError("FqField::inv: zero");
    if (f_ == 1) {
        FqElem e;
        e.c[0] = inv_mod(a.c[0], p_);
        return e;
    }
    return pow(a, Int(q_) - 2);
}

FqElem FqField::sqrt(const FqElem& a) const {
    if (is_zero(a)) return a;
    if (p_ == 2) return pow(a, Int(q_) / 2);  // Frobenius is bijective
    if (pow(a, Int((q_ - 1) / 2)) != one()) throw MathError("FqField::sqrt: not a square");
    for (long i = 0; i < q_; ++i) {
        FqElem x = element(i);
        if (mul(x, x) == a) return x;
    }
    throw MathError("FqField::sqrt: search failed");
}

// ---------------------------------------------------------------------------
// Polynomials

FqPoly poly_make(const FqField& F, std::vector<FqElem> coeffs) {
    while (!coeffs.empty() && F.is_zero(coeffs.back())) coeffs.pop_back();
    return FqPoly{std::move(coeffs)};
}

int poly_degree(const FqField& F, const FqPoly& f) {
    int d = int(f.c.size()) - 1;
    while (d >= 0 && F.is_zero(f.c[size_t(d)])) --d;
    return d;
}

FqElem poly_eval(const FqField& F, const FqPoly& f, const FqElem& x) {
    FqElem acc = F.zero();
    for (int i = int(f.c.size()) - 1; i >= 0; --i) acc = F.add(F.mul(acc, x), f.c[size_t(i)]);
    return acc;
}

FqPoly poly_mul(const FqField& F, const FqPoly& a, const FqPoly& b) {
    if (a.c.empty() || b.c.empty()) return FqPoly{};
    std::vector<FqElem> out(a.c.size() + b.c.size() - 1, F.zero());
    for (size_t i = 0; i < a.c.size(); ++i)
        for (size_t j = 0; j < b.c.size(); ++j)
            out[i + j] = F.add(out[i + j], F.mul(a.c[i], b.c[j]));
    return poly_make(F, std::move(out));
}

void poly_divrem(const FqField& F, const FqPoly& num, const FqPoly& den,
                 FqPoly& quot, FqPoly& rem) {
    int dd = poly_degree(F, den);
    if (dd < 0) throw MathError("poly_divrem: division by zero polynomial");
    FqElem dlead_inv = F.inv(den.c[size_t(dd)]);
    std::vector<FqElem> r = num.c;
    int dr = poly_degree(F, FqPoly{r});
    std::vector<FqElem> q(dr >= dd ? size_t(dr - dd) + 1 : 0, F.zero());
    while (dr >= dd) {
        FqElem coef = F.mul(r[size_t(dr)], dlead_inv);
        q[size_t(dr - dd)] = coef;
        for (int i = 0; i <= dd; ++i) {
            size_t pos = size_t(dr - dd + i);
            r[pos] = F.sub(r[pos], F.mul(coef, den.c[size_t(i)]));
        }
        dr = poly_degree(F, FqPoly{r});
    }
    quot = poly_make(F, std::move(q));
    rem = poly_make(F, std::move(r));
}

int root_multiplicity(const FqField& F, const FqPoly& f, const FqElem& r) {
    if (poly_degree(F, f) < 0) throw MathError("root_multiplicity: zero polynomial");
    FqPoly lin = poly_make(F, {F.neg(r), F.one()});
    FqPoly cur = f, q, rem;
    int m = 0;
    while (true) {
        poly_divrem(F, cur, lin, q, rem);
        if (poly_degree(F, rem) >= 0) break;
        ++m;
        cur = q;
        if (poly_degree(F, cur) < 0) break;
    }
    return m;
}

std::vector<FqRoot> finite_field_roots(const FqField& F, const FqPoly& f) {
    int d = poly_degree(F, f);
    if (d != 2 && d != 3) throw MathError("finite_field_roots: degree must be 2 or 3");
    std::vector<FqRoot> roots;
    for (long i = 0; i < F.order(); ++i) {
        FqElem x = F.element(i);
        if (F.is_zero(poly_eval(F, f, x)))
            roots.push_back(FqRoot{x, root_multiplicity(F, f, x)});
    }
    return roots;
}

bool quadratic_has_root(const FqField& F, const FqElem& a, const FqElem& b,
                        const FqElem& c) {
    for (long i = 0; i < F.order(); ++i) {
        FqElem x = F.element(i);
        FqElem val = F.add(F.mul(F.add(F.mul(a, x), b), x), c);
        if (F.is_zero(val)) return true;
    }
    return false;
}

}  // namespace h10
