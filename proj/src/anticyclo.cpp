#include "h10/anticyclo.hpp"

namespace h10::anticyclo {

BrinkParams make_brink_params(const nf::ImagQuadField& K, const Int& p,
                              std::optional<long> nu) {
    BrinkParams out;
    out.Delta = K.D();
    out.p = p;
    out.h = nf::class_number(K);
    out.mu = (out.h % p == 0) ? padic_valuation_int(out.h, p) : 0;
    if (nu) {
        out.nu = *nu;
        out.nu_specified = true;
    } else {
        out.nu = 0;
        out.nu_specified = (out.h % p != 0);  // nu = 0 is forced when p does not divide h
    }
    return out;
}

bool is_finitely_decomposed_ell(const Int& ell, const nf::ImagQuadField& K, const Int& p) {
    if (ell == p) return true;  // p splits by standing hypothesis
    return K.splitting(ell) == nf::Splitting::Split;
}

bool is_finitely_decomposed(const nf::PrimeIdeal& v, const nf::ImagQuadField& K, const Int& p) {
    return is_finitely_decomposed_ell(v.residue_char(), K, p);
}

Decomposition brink_split_depth(const Int& ell, const nf::ImagQuadField& K, const Int& p,
                                const BrinkParams& params) {
    Decomposition out;
    out.ell = ell;
    out.finitely_decomposed = is_finitely_decomposed_ell(ell, K, p);
    if (!out.finitely_decomposed)
        throw MathError("brink_split_depth: prime is not finitely decomposed");
    if (ell == p) throw MathError("brink_split_depth: v | p is outside the recipe");
    if (params.Delta % 4 == 3)
        throw MathError("unsupported parameters: Delta = 3 mod 4 branch not implemented");
    if (!params.nu_specified)
        throw MathError("unsupported parameters: p divides the class number and nu is unspecified");

    Int m;
    mpz_pow_ui(m.get_mpz_t(), ell.get_mpz_t(), static_cast<unsigned long>(to_long(params.h)));
    auto sol = nf::solve_norm_equation(m, params.Delta);
    if (!sol) throw MathError("no primitive solution to the norm equation");
    out.a = sol->a;
    out.b = sol->b;

    nf::QuadElem power =
        nf::quad_power(nf::QuadElem{Rat(out.a), Rat(out.b)}, static_cast<unsigned long>(to_long(p - 1)), params.Delta);
    out.a_star = Int(power.a.get_num());
    out.b_star = Int(power.b.get_num());
    if (power.a.get_den() != 1 || power.b.get_den() != 1)
        throw MathError("brink_split_depth: non-integral power");
    if (out.b_star == 0) throw MathError("brink_split_depth: b* = 0");

    out.vp_bstar = padic_valuation_int(out.b_star, p);
    long t = out.vp_bstar - 1 - params.mu + params.nu;
    out.t = t < 0 ? 0 : t;
    out.s_v = s_v_from_depth(out.t, p);
    return out;
}

bool splits_at_level(const Decomposition& d, const BrinkParams& params, long n) {
    long exp = n + 1 + params.mu - params.nu;
    if (exp <= 0) return true;
    Int mod = 1;
    for (long i = 0; i < exp; ++i) mod *= params.p;
    return d.b_star % mod == 0;
}

Int s_v_from_depth(long t, const Int& p) {
    if (t < 0) throw MathError("s_v_from_depth: negative depth");
    Int out = 1;
    for (long i = 0; i < t; ++i) out *= p;
    return out;
}

Int sigma_E_v(const Int& s_v, int d_v) { return s_v * d_v; }

}  // namespace h10::anticyclo
