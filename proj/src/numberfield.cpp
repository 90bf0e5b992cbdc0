#include "h10/numberfield.hpp"

#include <algorithm>
#include <deque>
#include <map>
#include <mutex>

namespace h10::nf {

// ---------------------------------------------------------------------------
// Order

Order::Order(int n, std::vector<std::vector<Coords>> mult) : n_(n), mult_(std::move(mult)) {}

OrderPtr Order::rationals() {
    std::vector<std::vector<Coords>> mult{{Coords{1}}};
    return OrderPtr(new Order(1, std::move(mult)));
}

OrderPtr Order::quadratic(const Int& t, const Int& nrm) {
    std::vector<std::vector<Coords>> mult(2, std::vector<Coords>(2));
    mult[0][0] = {1, 0};
    mult[0][1] = {0, 1};
    mult[1][0] = {0, 1};
    mult[1][1] = {-nrm, t};  // theta^2 = t*theta - nrm
    return OrderPtr(new Order(2, std::move(mult)));
}

OrderPtr Order::tensor(const OrderPtr& a, const OrderPtr& b) {
    int na = a->degree(), nb = b->degree();
    int n = na * nb;
    if (n > 4) throw UnsupportedField("tensor order of degree > 4");
    auto idx = [na](int i, int j) { return i + na * j; };
    std::vector<std::vector<Coords>> mult(size_t(n), std::vector<Coords>{});
    for (auto& row : mult) row.resize(size_t(n));
    for (int i = 0; i < na; ++i)
        for (int j = 0; j < nb; ++j)
            for (int k = 0; k < na; ++k)
                for (int l = 0; l < nb; ++l) {
                    const Coords& ca = a->mult_[size_t(i)][size_t(k)];
                    const Coords& cb = b->mult_[size_t(j)][size_t(l)];
                    Coords out(size_t(n), 0);
                    for (int r = 0; r < na; ++r)
                        for (int s = 0; s < nb; ++s)
                            out[size_t(idx(r, s))] = ca[size_t(r)] * cb[size_t(s)];
                    mult[size_t(idx(i, j))][size_t(idx(k, l))] = std::move(out);
                }
    return OrderPtr(new Order(n, std::move(mult)));
}

Coords Order::one() const {
    Coords c = zero();
    c[0] = 1;
    return c;
}

Coords Order::basis_elem(int i) const {
    Coords c = zero();
    c[size_t(i)] = 1;
    return c;
}

Coords Order::mul(const Coords& x, const Coords& y) const {
    Coords out = zero();
    for (int i = 0; i < n_; ++i) {
        if (x[size_t(i)] == 0) continue;
        for (int j = 0; j < n_; ++j) {
            if (y[size_t(j)] == 0) continue;
            Int c = x[size_t(i)] * y[size_t(j)];
            const Coords& m = mult_[size_t(i)][size_t(j)];
            for (int k = 0; k < n_; ++k) out[size_t(k)] += c * m[size_t(k)];
        }
    }
    return out;
}

Coords Order::add(const Coords& x, const Coords& y) const {
    Coords out = x;
    for (int i = 0; i < n_; ++i) out[size_t(i)] += y[size_t(i)];
    return out;
}

Coords Order::scale(const Int& c, const Coords& x) const {
    Coords out = x;
    for (auto& v : out) v *= c;
    return out;
}

QCoords Order::qone() const {
    QCoords c = qzero();
    c[0] = 1;
    return c;
}

QCoords Order::from_rational(const Rat& x) const {
    QCoords c = qzero();
    c[0] = x;
    return c;
}

QCoords Order::to_q(const Coords& x) const {
    QCoords c;
    c.reserve(size_t(n_));
    for (int i = 0; i < n_; ++i) c.emplace_back(x[size_t(i)]);
    return c;
}

QCoords Order::qmul(const QCoords& x, const QCoords& y) const {
    QCoords out = qzero();
    for (int i = 0; i < n_; ++i) {
        if (x[size_t(i)] == 0) continue;
        for (int j = 0; j < n_; ++j) {
            if (y[size_t(j)] == 0) continue;
            Rat c = x[size_t(i)] * y[size_t(j)];
            const Coords& m = mult_[size_t(i)][size_t(j)];
            for (int k = 0; k < n_; ++k)
                if (m[size_t(k)] != 0) out[size_t(k)] += c * Rat(m[size_t(k)]);
        }
    }
    return out;
}

QCoords Order::qadd(const QCoords& x, const QCoords& y) const {
    QCoords out = x;
    for (int i = 0; i < n_; ++i) out[size_t(i)] += y[size_t(i)];
    return out;
}

QCoords Order::qsub(const QCoords& x, const QCoords& y) const {
    QCoords out = x;
    for (int i = 0; i < n_; ++i) out[size_t(i)] -= y[size_t(i)];
    return out;
}

QCoords Order::qscale(const Rat& c, const QCoords& x) const {
    QCoords out = x;
    for (auto& v : out) v *= c;
    return out;
}

QCoords Order::qneg(const QCoords& x) const {
    QCoords out = x;
    for (auto& v : out) v = -v;
    return out;
}

bool Order::qis_zero(const QCoords& x) const {
    for (const auto& v : x)
        if (v != 0) return false;
    return true;
}

QCoords Order::qinv(const QCoords& x) const {
    if (qis_zero(x)) throw MathError("qinv: zero element");
    // Solve M y = e0 where M is multiplication by x.
    size_t n = size_t(n_);
    std::vector<std::vector<Rat>> m(n, std::vector<Rat>(n + 1, Rat(0)));
    for (int j = 0; j < n_; ++j) {
        QCoords col = qmul(x, to_q(basis_elem(j)));
        for (size_t i = 0; i < n; ++i) m[i][size_t(j)] = col[i];
    }
    m[0][n] = 1;
    // Gaussian elimination, exact.
    for (size_t c = 0, r = 0; c < n && r < n; ++c, ++r) {
        size_t piv = r;
        while (piv < n && m[piv][c] == 0) ++piv;
        if (piv == n) throw MathError("qinv: singular multiplication matrix");
        std::swap(m[r], m[piv]);
        for (size_t i = 0; i < n; ++i) {
            if (i == r || m[i][c] == 0) continue;
            Rat factor = m[i][c] / m[r][c];
            for (size_t k = c; k <= n; ++k) m[i][k] -= factor * m[r][k];
        }
    }
    QCoords y(n);
    for (size_t i = 0; i < n; ++i) y[i] = m[i][n] / m[i][i];
    return y;
}

QCoords Order::qpow(const QCoords& x, long k) const {
    QCoords out = qone(), base = x;
    while (k > 0) {
        if (k & 1) out = qmul(out, base);
        base = qmul(base, base);
        k >>= 1;
    }
    return out;
}

IntMat Order::mul_matrix(const Coords& x) const {
    IntMat m;
    for (int j = 0; j < n_; ++j) m.push_back(mul(x, basis_elem(j)));
    return m;
}

// ---------------------------------------------------------------------------
// Small F_ell linear algebra used for residue-field setup

namespace {

long mod_pos_l(const Int& v, long p) {
    Int r = v % p;
    if (r < 0) r += p;
    return r.get_si();
}

// Invert an f x f matrix over F_p (columns given); throws if singular.
std::vector<std::vector<long>> invert_mod_p(std::vector<std::vector<long>> cols, long p) {
    size_t f = cols.size();
    auto inv_mod = [p](long a) {
        long t = 0, nt = 1, r = p, nr = ((a % p) + p) % p;
        while (nr != 0) {
            long q = r / nr;
            std::swap(t -= q * nt, nt);
            std::swap(r -= q * nr, nr);
        }
        if (r != 1) throw MathError("invert_mod_p: singular");
        return t < 0 ? t + p : t;
    };
    // augmented columns: work rows = f, columns = matrix | identity
    std::vector<std::vector<long>> m(f, std::vector<long>(2 * f, 0));
    for (size_t j = 0; j < f; ++j) {
        for (size_t i = 0; i < f; ++i) m[i][j] = cols[j][i] % p;
        m[j][f + j] = 1;
    }
    for (size_t r = 0; r < f; ++r) {
        size_t piv = r;
        while (piv < f && m[piv][r] % p == 0) ++piv;
        if (piv == f) throw MathError("invert_mod_p: singular");
        std::swap(m[r], m[piv]);
        long ip = inv_mod(m[r][r]);
        for (size_t k = 0; k < 2 * f; ++k) m[r][k] = (m[r][k] * ip) % p;
        for (size_t i = 0; i < f; ++i) {
            if (i == r) continue;
            long c = ((m[i][r] % p) + p) % p;
            if (c == 0) continue;
            for (size_t k = 0; k < 2 * f; ++k)
                m[i][k] = (((m[i][k] - c * m[r][k]) % p) + p) % p;
        }
    }
    std::vector<std::vector<long>> out(f, std::vector<long>(f));
    for (size_t j = 0; j < f; ++j)
        for (size_t i = 0; i < f; ++i) out[j][i] = ((m[i][f + j] % p) + p) % p;
    return out;  // columns of the inverse
}

}  // namespace

// ---------------------------------------------------------------------------
// PrimeIdeal

struct PrimeIdeal::Impl {
    OrderPtr order;
    Int ell;
    long ell_l = 0;
    std::vector<Coords> gens;  // generators besides ell
    std::string label;
    IntMat H;                  // HNF lattice of the ideal
    std::vector<int> J;        // rows with diagonal entry ell
    int e = 0, f = 0;
    std::unique_ptr<FqField> F;
    std::vector<Coords> delta_pows;            // canonical reps of delta^i, i < f
    std::vector<std::vector<long>> ginv_cols;  // inverse of the delta-power matrix
    Coords pi;                                 // uniformizer

    mutable std::mutex mtx;
    // powers[k] = HNF of P^{k+1}; deque keeps references stable across growth
    mutable std::deque<IntMat> powers;

    const IntMat& power(long k) const {  // P^k, k >= 1
        std::lock_guard<std::mutex> lock(mtx);
        while (long(powers.size()) < k) {
            if (long(powers.size()) >= 400) throw MathError("prime power cap exceeded");
            const IntMat& prev = powers.back();
            IntMat prods;
            for (const auto& a : prev)
                for (const auto& b : powers[0]) prods.push_back(order->mul(a, b));
            powers.push_back(hnf_lower(prods));
        }
        return powers[size_t(k - 1)];
    }

    std::vector<long> jvec(const Coords& rep) const {
        std::vector<long> w(size_t(f), 0);
        for (int i = 0; i < f; ++i) w[size_t(i)] = mod_pos_l(rep[size_t(J[size_t(i)])], ell_l);
        return w;
    }

    FqElem residue_of_integral(const Coords& y) const {
        std::vector<long> w = jvec(lattice_reduce(H, y));
        std::vector<long> c(size_t(f), 0);
        for (int j = 0; j < f; ++j)
            for (int i = 0; i < f; ++i)
                c[size_t(j)] = (c[size_t(j)] + ginv_cols[size_t(i)][size_t(j)] * w[size_t(i)]) % ell_l;
        return F->from_coeffs(c);
    }

    long val_integral(const Coords& y) const {
        long k = 0;
        while (lattice_contains(power(k + 1), y)) {
            ++k;
            if (k > 380) throw MathError("valuation cap exceeded");
        }
        return k;
    }
};

PrimeIdeal PrimeIdeal::make(OrderPtr order, const Int& ell, std::vector<Coords> gens,
                            std::string label) {
    auto impl = std::make_shared<Impl>();
    impl->order = std::move(order);
    impl->ell = ell;
    impl->ell_l = to_long(ell);
    impl->gens = std::move(gens);
    impl->label = std::move(label);
    const Order& R = *impl->order;
    int n = R.degree();

    IntMat cols;
    for (int i = 0; i < n; ++i) cols.push_back(R.scale(ell, R.basis_elem(i)));
    for (const auto& g : impl->gens)
        for (int i = 0; i < n; ++i) cols.push_back(R.mul(g, R.basis_elem(i)));
    impl->H = hnf_lower(cols);

    for (int i = 0; i < n; ++i) {
        const Int& d = impl->H[size_t(i)][size_t(i)];
        if (d == 1) continue;
        if (d == ell) {
            impl->J.push_back(i);
            continue;
        }
        throw MathError("PrimeIdeal: ideal is not prime (diagonal entry " + d.get_str() + ")");
    }
    impl->f = int(impl->J.size());
    if (impl->f == 0) throw MathError("PrimeIdeal: unit ideal");
    impl->powers.push_back(impl->H);

    // Residue field: find a root of the canonical modulus in O/P by
    // exhaustive search over canonical representatives.
    impl->F = std::make_unique<FqField>(impl->ell_l, impl->f);
    const auto& mod = impl->F->modulus();
    long q = impl->F->order();
    Coords delta;
    bool found = false;
    for (long idx = 0; idx < q && !found; ++idx) {
        Coords cand(size_t(n), 0);
        long t = idx;
        for (int i = 0; i < impl->f; ++i) {
            cand[size_t(impl->J[size_t(i)])] = t % impl->ell_l;
            t /= impl->ell_l;
        }
        // Horner evaluation of the modulus at cand inside O/P
        Coords acc(size_t(n), 0);
        for (int d = impl->f; d >= 0; --d) {
            acc = lattice_reduce(impl->H, R.mul(acc, cand));
            acc[0] += mod[size_t(d)];
            acc = lattice_reduce(impl->H, acc);
        }
        bool zero = std::all_of(acc.begin(), acc.end(), [](const Int& v) { return v == 0; });
        if (zero) {
            delta = cand;
            found = true;
        }
    }
    if (!found) throw MathError("PrimeIdeal: residue ring is not a field of the expected size");

    Coords pw = R.one();
    std::vector<std::vector<long>> gcols;
    for (int i = 0; i < impl->f; ++i) {
        Coords rep = lattice_reduce(impl->H, pw);
        impl->delta_pows.push_back(rep);
        gcols.push_back(impl->jvec(rep));
        pw = R.mul(pw, delta);
    }
    impl->ginv_cols = invert_mod_p(gcols, impl->ell_l);

    // Uniformizer: a lattice basis vector of P outside P^2.
    const IntMat& H2 = impl->power(2);
    bool have_pi = false;
    for (const auto& col : impl->H) {
        if (!lattice_contains(H2, col)) {
            impl->pi = col;
            have_pi = true;
            break;
        }
    }
    if (!have_pi) throw MathError("PrimeIdeal: no uniformizer (P = P^2?)");

    impl->e = int(impl->val_integral(R.scale(ell, R.one())));
    if (impl->e < 1 || impl->e * impl->f > n)
        throw MathError("PrimeIdeal: inconsistent ramification data");

    PrimeIdeal P;
    P.impl_ = std::move(impl);
    return P;
}

const Order& PrimeIdeal::order() const { return *impl_->order; }
const Int& PrimeIdeal::residue_char() const { return impl_->ell; }
int PrimeIdeal::ramification_index() const { return impl_->e; }
int PrimeIdeal::residue_degree() const { return impl_->f; }
const std::string& PrimeIdeal::label() const { return impl_->label; }
const std::vector<Coords>& PrimeIdeal::extra_generators() const { return impl_->gens; }
const FqField& PrimeIdeal::residue_field() const { return *impl_->F; }

Int PrimeIdeal::norm() const {
    Int n = 1;
    for (int i = 0; i < impl_->f; ++i) n *= impl_->ell;
    return n;
}

PadicVal PrimeIdeal::valuation(const QCoords& x) const {
    const Order& R = order();
    if (R.qis_zero(x)) return PadicVal{true, 0};
    Int den = 1;
    for (const auto& v : x) den = lcm(den, Int(v.get_den()));
    Coords y(x.size());
    for (size_t i = 0; i < x.size(); ++i) y[i] = Int(x[i] * Rat(den));
    long m = padic_valuation_int(den, impl_->ell);
    return PadicVal{false, impl_->val_integral(y) - impl_->e * m};
}

FqElem PrimeIdeal::reduce(const QCoords& x) const { return reduce_shifted(x, 0); }

FqElem PrimeIdeal::reduce_shifted(const QCoords& x, long k) const {
    const Order& R = order();
    const FqField& F = *impl_->F;
    if (R.qis_zero(x)) return F.zero();
    Int den = 1;
    for (const auto& v : x) den = lcm(den, Int(v.get_den()));
    Coords y(x.size());
    for (size_t i = 0; i < x.size(); ++i) y[i] = Int(x[i] * Rat(den));
    long m = padic_valuation_int(den, impl_->ell);
    Int d2 = den;
    for (long i = 0; i < m; ++i) d2 /= impl_->ell;
    long W = impl_->e * m + k;

    FqElem res;
    if (W == 0) {
        res = impl_->residue_of_integral(y);
    } else {
        Int ellm = 1;
        for (long i = 0; i < m; ++i) ellm *= impl_->ell;
        Coords elt = R.scale(ellm, R.one());
        for (long i = 0; i < k; ++i) elt = R.mul(elt, impl_->pi);
        auto sol = solve_mod_lattice(R.mul_matrix(elt), impl_->power(W + 1), y);
        if (!sol) throw MathError("reduce_shifted: element has valuation below the shift");
        res = impl_->residue_of_integral(*sol);
    }
    if (d2 != 1) res = F.mul(res, F.inv(F.from_int(d2)));
    return res;
}

QCoords PrimeIdeal::lift(const FqElem& a) const {
    const Order& R = order();
    Coords out = R.zero();
    for (int i = 0; i < impl_->f; ++i) {
        if (a.c[size_t(i)] == 0) continue;
        out = R.add(out, R.scale(Int(a.c[size_t(i)]), impl_->delta_pows[size_t(i)]));
    }
    return R.to_q(out);
}

QCoords PrimeIdeal::uniformizer() const { return order().to_q(impl_->pi); }

bool PrimeIdeal::lies_above(const PrimeIdeal& below,
                            const std::vector<QCoords>& embedded_gens) const {
    if (impl_->ell != below.impl_->ell) return false;
    for (const auto& g : embedded_gens) {
        PadicVal v = valuation(g);
        if (!v.infinite && v.v < 1) return false;
    }
    return true;
}

bool PrimeIdeal::operator==(const PrimeIdeal& o) const {
    return impl_->order == o.impl_->order && impl_->ell == o.impl_->ell && impl_->H == o.impl_->H;
}

// ---------------------------------------------------------------------------
// Kummer-Dedekind for monogenic quadratic orders

namespace {

struct QuadPrimeShape {
    std::vector<Int> roots;  // roots of the minimal polynomial mod ell
    bool ramified = false;
};

QuadPrimeShape quad_factor_shape(const Int& t, const Int& nrm, const Int& ell) {
    long l = to_long(ell);
    QuadPrimeShape shape;
    for (long x = 0; x < l; ++x) {
        Int v = (Int(x) * x - t * x + nrm) % ell;
        if (v % ell == 0) shape.roots.push_back(x);
    }
    if (shape.roots.size() == 1) {
        // single root: double iff the polynomial's discriminant vanishes mod ell
        Int disc = t * t - 4 * nrm;
        shape.ramified = (disc % ell == 0);
        if (!shape.ramified) throw MathError("quad_factor_shape: inconsistent root count");
    }
    return shape;
}

}  // namespace

// ---------------------------------------------------------------------------
// ImagQuadField

namespace {

bool is_squarefree(const Int& n) {
    Int m = abs(n);
    if (m == 0) return false;
    for (uint32_t p : primes_up_to(1000)) {
        Int q = Int(p) * p;
        if (m % q == 0) return false;
        if (Int(p) * p * p > m) break;
    }
    // guard against large square factors
    Int cof = m;
    for (uint32_t p : primes_up_to(1000))
        while (cof % p == 0) cof /= p;
    if (cof > 1 && mpz_perfect_power_p(cof.get_mpz_t())) return false;
    return true;
}

}  // namespace

ImagQuadField::ImagQuadField(const Int& D) : D_(D) {
    if (D <= 0) throw MathError("ImagQuadField: D must be positive");
    if (!is_squarefree(D)) throw MathError("ImagQuadField: D must be squarefree");
    half_ = (D % 4 == 3);
    disc_ = half_ ? Int(-D) : Int(-4 * D);
    if (half_)
        order_ = Order::quadratic(1, (1 + D) / 4);  // theta = (1+omega)/2
    else
        order_ = Order::quadratic(0, D);  // theta = omega
}

QCoords ImagQuadField::from_quad(const Rat& a, const Rat& b) const {
    if (!half_) return {a, b};
    return {a - b, 2 * b};  // a + b*omega = (a - b) + 2b * (1+omega)/2
}

std::pair<Rat, Rat> ImagQuadField::to_quad(const QCoords& x) const {
    if (!half_) return {x[0], x[1]};
    Rat b = x[1] / 2;
    return {x[0] + b, b};
}

Splitting ImagQuadField::splitting(const Int& ell) const {
    int k = kronecker_symbol(disc_, ell);
    if (k == 1) return Splitting::Split;
    if (k == -1) return Splitting::Inert;
    return Splitting::Ramified;
}

Splitting splitting_in_K(const Int& ell, const ImagQuadField& K) { return K.splitting(ell); }

std::vector<PrimeIdeal> ImagQuadField::primes_above(const Int& ell) const {
    if (!is_prime(ell)) throw MathError("primes_above: ell not prime");
    Int t = half_ ? Int(1) : Int(0);
    Int nrm = half_ ? Int((1 + D_) / 4) : D_;
    QuadPrimeShape shape = quad_factor_shape(t, nrm, ell);
    std::string base = "v" + ell.get_str();
    std::vector<PrimeIdeal> out;
    if (shape.roots.empty()) {
        out.push_back(PrimeIdeal::make(order_, ell, {}, base));
        if (splitting(ell) != Splitting::Inert) throw MathError("primes_above: splitting mismatch");
    } else if (shape.roots.size() == 1) {
        out.push_back(PrimeIdeal::make(order_, ell, {Coords{-shape.roots[0], 1}}, base));
        if (splitting(ell) != Splitting::Ramified)
            throw MathError("primes_above: splitting mismatch");
    } else {
        out.push_back(PrimeIdeal::make(order_, ell, {Coords{-shape.roots[0], 1}}, base));
        out.push_back(PrimeIdeal::make(order_, ell, {Coords{-shape.roots[1], 1}}, base + "*"));
        out[0].partner_index = 1;
        out[1].partner_index = 0;
        if (splitting(ell) != Splitting::Split) throw MathError("primes_above: splitting mismatch");
    }
    int total = 0;
    for (const auto& P : out) total += P.ramification_index() * P.residue_degree();
    if (total != 2) throw MathError("primes_above: sum e*f != degree");
    return out;
}

std::string ImagQuadField::name() const { return "Q(sqrt(-" + D_.get_str() + "))"; }

// ---------------------------------------------------------------------------

Int class_number(const ImagQuadField& K, const Int& bound) {
    if (K.D() > bound) throw MathError("class_number: discriminant bound exceeded");
    Int disc = K.discriminant();
    Int absd = -disc;
    Int h = 0;
    for (Int a = 1; 3 * a * a <= absd; ++a) {
        for (Int b = -a + 1; b <= a; ++b) {
            if ((b - disc) % 2 != 0) continue;
            Int t = b * b - disc;
            if (t % (4 * a) != 0) continue;
            Int c = t / (4 * a);
            if (c < a) continue;
            if (b < 0 && (a == c)) continue;
            if (gcd(gcd(a, b), c) != 1) continue;
            ++h;
        }
    }
    return h;
}

std::optional<NormEquationSolution> solve_norm_equation(const Int& m, const Int& Delta) {
    if (m <= 0 || Delta <= 0) throw MathError("solve_norm_equation: need m > 0, Delta > 0");
    for (Int b = 0; Delta * b * b <= m; ++b) {
        Int r = m - Delta * b * b;
        if (mpz_perfect_square_p(r.get_mpz_t())) {
            Int a;
            mpz_sqrt(a.get_mpz_t(), r.get_mpz_t());
            if (gcd(a, b) == 1) return NormEquationSolution{a, b};
        }
    }
    return std::nullopt;
}

QuadElem quad_mul(const QuadElem& x, const QuadElem& y, const Int& D) {
    return QuadElem{x.a * y.a - Rat(D) * x.b * y.b, x.a * y.b + x.b * y.a};
}

QuadElem quad_power(const QuadElem& x, unsigned long k, const Int& D) {
    QuadElem out{Rat(1), Rat(0)}, base = x;
    while (k > 0) {
        if (k & 1) out = quad_mul(out, base, D);
        base = quad_mul(base, base, D);
        k >>= 1;
    }
    return out;
}

// ---------------------------------------------------------------------------
// CompositumField

CompositumField::CompositumField(const ImagQuadField& K, const Int& p) : K_(K), p_(p) {
    if (p != 3)
        throw UnsupportedField("compositum K(mu_p) supported only for p = 3 (degree 4)");
    if (K.discriminant() % 3 == 0)
        throw UnsupportedField("compositum with non-coprime discriminants is unsupported");
    cyclo_ = Order::quadratic(-1, 1);  // zeta^2 = -zeta - 1
    order_ = Order::tensor(K.order(), cyclo_);
}

QCoords CompositumField::embed_base(const QCoords& xK) const {
    QCoords out = order_->qzero();
    out[0] = xK[0];
    out[1] = xK[1];
    return out;
}

QCoords CompositumField::from_rational(const Rat& x) const { return order_->from_rational(x); }

std::string CompositumField::name() const { return K_.name() + "(mu_3)"; }

namespace {

// minimal polynomial of xi in O/(ell) over F_ell, via incremental Gauss
std::vector<long> min_poly_mod(const Order& R, const Coords& xi, long ell, int dim) {
    std::vector<std::vector<long>> rows;      // echelon rows
    std::vector<std::vector<long>> combos;    // combination giving each row
    auto inv_mod = [ell](long a) {
        long t = 0, nt = 1, r = ell, nr = ((a % ell) + ell) % ell;
        while (nr != 0) {
            long q = r / nr;
            std::swap(t -= q * nt, nt);
            std::swap(r -= q * nr, nr);
        }
        return t < 0 ? t + ell : t;
    };
    Coords pw = R.one();
    for (int j = 0;; ++j) {
        std::vector<long> v(size_t(dim), 0);
        for (int i = 0; i < dim; ++i) v[size_t(i)] = mod_pos_l(pw[size_t(i)], ell);
        std::vector<long> combo(size_t(j) + 1, 0);
        combo[size_t(j)] = 1;
        // reduce v against echelon rows
        for (size_t r = 0; r < rows.size(); ++r) {
            size_t lead = 0;
            while (lead < rows[r].size() && rows[r][lead] == 0) ++lead;
            if (lead >= size_t(dim)) continue;
            long c = v[lead] % ell;
            if (c == 0) continue;
            long factor = (c * inv_mod(rows[r][lead])) % ell;
            for (int i = 0; i < dim; ++i)
                v[size_t(i)] = (((v[size_t(i)] - factor * rows[r][size_t(i)]) % ell) + ell) % ell;
            if (combos[r].size() > combo.size()) combo.resize(combos[r].size(), 0);
            for (size_t i = 0; i < combos[r].size(); ++i)
                combo[i] = (((combo[i] - factor * combos[r][i]) % ell) + ell) % ell;
        }
        bool zero = std::all_of(v.begin(), v.end(), [](long c) { return c == 0; });
        if (zero) return combo;  // coefficients of the minimal polynomial
        rows.push_back(v);
        combos.push_back(combo);
        pw = R.mul(pw, xi);
        if (j > dim) throw MathError("min_poly_mod: no dependence found");
    }
}

// factorization of a squarefree monic polynomial of degree <= 4 over F_ell
std::vector<std::vector<long>> factor_squarefree_mod(std::vector<long> poly, long ell) {
    auto normalize = [&](std::vector<long>& f) {
        for (auto& c : f) c = ((c % ell) + ell) % ell;
        while (!f.empty() && f.back() == 0) f.pop_back();
    };
    auto divide = [&](std::vector<long> num, const std::vector<long>& den)
        -> std::optional<std::vector<long>> {
        // den monic; returns quotient when remainder is zero
        std::vector<long> q(num.size() >= den.size() ? num.size() - den.size() + 1 : 0, 0);
        while (num.size() >= den.size()) {
            long lead = num.back() % ell;
            size_t shift = num.size() - den.size();
            q[shift] = lead;
            for (size_t i = 0; i < den.size(); ++i)
                num[shift + i] = (((num[shift + i] - lead * den[i]) % ell) + ell) % ell;
            while (!num.empty() && num.back() == 0) num.pop_back();
            if (num.size() < den.size()) break;
        }
        if (!num.empty()) return std::nullopt;
        return q;
    };
    normalize(poly);
    std::vector<std::vector<long>> factors;
    // linear factors
    bool progress = true;
    while (progress && poly.size() > 1) {
        progress = false;
        for (long r = 0; r < ell && poly.size() > 1; ++r) {
            long acc = 0;
            for (size_t i = poly.size(); i-- > 0;) acc = (acc * r + poly[i]) % ell;
            if (acc % ell == 0) {
                std::vector<long> lin{((ell - r) % ell), 1};
                auto q = divide(poly, lin);
                if (!q) throw MathError("factor_squarefree_mod: division failed");
                factors.push_back(lin);
                poly = *q;
                normalize(poly);
                progress = true;
                break;
            }
        }
    }
    if (poly.size() == 2) {
        factors.push_back(poly);
        poly = {1};
    } else if (poly.size() == 3) {
        factors.push_back(poly);  // quadratic with no roots: irreducible
        poly = {1};
    } else if (poly.size() == 5) {
        // quartic with no roots: product of two irreducible quadratics, or irreducible
        bool split = false;
        for (long b = 0; b < ell && !split; ++b)
            for (long c = 1; c < ell && !split; ++c) {
                std::vector<long> g{c, b, 1};
                auto q = divide(poly, g);
                if (q) {
                    factors.push_back(g);
                    factors.push_back(*q);
                    split = true;
                }
            }
        if (!split) factors.push_back(poly);
        poly = {1};
    } else if (poly.size() == 4) {
        factors.push_back(poly);  // cubic with no roots: irreducible
        poly = {1};
    }
    return factors;
}

}  // namespace

std::vector<PrimeIdeal> CompositumField::primes_above(const Int& ell) const {
    if (!is_prime(ell)) throw MathError("primes_above: ell not prime");
    long l = to_long(ell);
    // quadratic shapes of both parts
    Int tK = K_.half_basis() ? Int(1) : Int(0);
    Int nK = K_.half_basis() ? Int((1 + K_.D()) / 4) : K_.D();
    QuadPrimeShape sK = quad_factor_shape(tK, nK, ell);
    QuadPrimeShape sM = quad_factor_shape(Int(-1), Int(1), ell);  // x^2 + x + 1

    struct Part {
        std::vector<Coords> gens;  // in the big order
        int e, f;
    };
    auto parts_of = [&](const QuadPrimeShape& s, bool is_base) {
        std::vector<Part> parts;
        auto gen_vec = [&](const Int& root) {
            Coords g(4, 0);
            g[0] = -root;
            g[size_t(is_base ? 1 : 2)] = 1;  // theta - r  or  zeta - r
            return g;
        };
        if (s.roots.empty()) {
            parts.push_back(Part{{}, 1, 2});
        } else if (s.roots.size() == 1) {
            parts.push_back(Part{{gen_vec(s.roots[0])}, 2, 1});
        } else {
            parts.push_back(Part{{gen_vec(s.roots[0])}, 1, 1});
            parts.push_back(Part{{gen_vec(s.roots[1])}, 1, 1});
        }
        return parts;
    };
    std::vector<Part> partsK = parts_of(sK, true);
    std::vector<Part> partsM = parts_of(sM, false);

    std::vector<PrimeIdeal> out;
    for (const auto& pk : partsK)
        for (const auto& pm : partsM) {
            std::vector<Coords> gens = pk.gens;
            gens.insert(gens.end(), pm.gens.begin(), pm.gens.end());
            int e = pk.e * pm.e;
            int f = std::max(pk.f, pm.f);  // lcm of values in {1,2}
            // probe the joint ideal
            IntMat cols;
            for (int i = 0; i < 4; ++i) cols.push_back(order_->scale(ell, order_->basis_elem(i)));
            for (const auto& g : gens)
                for (int i = 0; i < 4; ++i) cols.push_back(order_->mul(g, order_->basis_elem(i)));
            IntMat H = hnf_lower(cols);
            long k = 0;
            Int det = hnf_det(H);
            while (det > 1) {
                det /= ell;
                ++k;
            }
            if (k == f) {
                out.push_back(PrimeIdeal::make(order_, ell, gens, ""));
            } else if (k == 2 * f && pk.f == 2 && pm.f == 2) {
                // residue algebra F_{l^2} (x) F_{l^2}: split with a primitive element
                bool done = false;
                for (long c = 0; c < l && !done; ++c) {
                    Coords xi(4, 0);
                    xi[1] = 1;
                    xi[2] = c;  // theta + c*zeta
                    std::vector<long> mp = min_poly_mod(*order_, xi, l, 4);
                    auto factors = factor_squarefree_mod(mp, l);
                    if (factors.size() < 2) continue;
                    int added = 0;
                    for (const auto& g : factors) {
                        // evaluate g at xi
                        Coords val = order_->zero();
                        for (size_t i = g.size(); i-- > 0;) {
                            val = order_->mul(val, xi);
                            val[0] += g[i];
                        }
                        std::vector<Coords> pgens = gens;
                        pgens.push_back(val);
                        PrimeIdeal P = PrimeIdeal::make(order_, ell, pgens, "");
                        if (P.residue_degree() == f) {
                            out.push_back(P);
                            ++added;
                        }
                    }
                    if (added == 2) done = true;
                    else if (added > 0) throw MathError("compositum splitting: bad factor count");
                }
                if (!done) throw MathError("compositum splitting: no primitive element found");
            } else {
                throw MathError("compositum primes_above: unexpected residue dimension");
            }
            // consistency of the combined e, f
            const PrimeIdeal& last = out.back();
            if (last.ramification_index() != e || last.residue_degree() != f)
                throw MathError("compositum primes_above: e/f mismatch");
        }

    int total = 0;
    for (const auto& P : out) total += P.ramification_index() * P.residue_degree();
    if (total != 4) throw MathError("compositum primes_above: sum e*f != 4");

    // deterministic labels
    std::sort(out.begin(), out.end(), [](const PrimeIdeal& a, const PrimeIdeal& b) {
        return a.extra_generators() < b.extra_generators();
    });
    // labels are attached at construction; rebuild with stable names
    std::vector<PrimeIdeal> named;
    for (size_t i = 0; i < out.size(); ++i) {
        std::string label = "w" + ell.get_str();
        if (out.size() > 1) label += "." + std::to_string(i + 1);
        named.push_back(PrimeIdeal::make(order_, ell, out[i].extra_generators(), label));
        named.back().partner_index = int(i);
    }
    return named;
}

}  // namespace h10::nf
