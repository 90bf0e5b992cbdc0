#ifndef H10_ANTICYCLO_HPP
#define H10_ANTICYCLO_HPP

#include <optional>

#include "h10/numberfield.hpp"

// Decomposition of primes of K in the anticyclotomic Z_p-tower: the
// finitely-decomposed test, split depth t from the norm-equation recipe,
// s_v = p^t, and sigma_E^(v) = s_v * d_v(E).

namespace h10::anticyclo {

struct BrinkParams {
    Int Delta;  // the squarefree D with K = Q(sqrt(-Delta))
    Int p;
    Int h;      // class number of K
    long mu;    // v_p(h)
    long nu;    // index of K_H intersect K_anti in the tower
    bool nu_specified = false;
};

// nu defaults to 0, which is valid only when p does not divide h; other
// cases must supply nu explicitly.
BrinkParams make_brink_params(const nf::ImagQuadField& K, const Int& p,
                              std::optional<long> nu = std::nullopt);

// A prime of K is finitely decomposed in K_anti iff its residue
// characteristic splits in K (primes above p always qualify, since p is
// assumed split).
bool is_finitely_decomposed(const nf::PrimeIdeal& v, const nf::ImagQuadField& K, const Int& p);
bool is_finitely_decomposed_ell(const Int& ell, const nf::ImagQuadField& K, const Int& p);

struct Decomposition {
    Int ell;
    bool finitely_decomposed = false;
    Int a, b;            // ell^h = a^2 + Delta * b^2, coprime
    Int a_star, b_star;  // (a + b*omega)^(p-1)
    long vp_bstar = 0;
    long t = 0;   // largest n with v split completely in the n-th layer
    Int s_v = 1;  // p^t
};

// Split depth of a finitely decomposed prime v | ell, ell != p, via the
// norm-equation recipe.  Supported branch: Delta != 3 mod 4 and (p | h only
// with nu supplied).
Decomposition brink_split_depth(const Int& ell, const nf::ImagQuadField& K, const Int& p,
                                const BrinkParams& params);

// Direct per-level criterion: v splits in the n-th layer iff
// b* = 0 mod p^(n+1+mu-nu).
bool splits_at_level(const Decomposition& d, const BrinkParams& params, long n);

Int s_v_from_depth(long t, const Int& p);
Int sigma_E_v(const Int& s_v, int d_v);

}  // namespace h10::anticyclo

#endif
