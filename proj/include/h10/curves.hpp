#ifndef H10_CURVES_HPP
#define H10_CURVES_HPP

#include <array>
#include <map>

#include "h10/algebra.hpp"
#include "h10/numberfield.hpp"

// Weierstrass models over Q: invariants, global minimal models
// (Laska-Kraus-Connell with the canonical reduced form), quadratic twists,
// reduction mod primes and point counting.

namespace h10::curves {

struct Model {
    std::array<Rat, 5> a;  // a1, a2, a3, a4, a6
    bool operator==(const Model&) const = default;
};

inline Model make_model(const Rat& a1, const Rat& a2, const Rat& a3, const Rat& a4,
                        const Rat& a6) {
    return Model{{a1, a2, a3, a4, a6}};
}

struct Invariants {
    Rat b2, b4, b6, b8, c4, c6, disc, j;
};

// Standard b/c-invariants; throws "singular model" when disc = 0.
Invariants invariants(const Model& m);

bool is_integral(const Model& m);
Int integral_coeff(const Model& m, int i);  // model must be integral

// x = x' + r, y = y' + s x' + t  (u = 1).
Model rst_transform(const Model& m, const Rat& r, const Rat& s, const Rat& t);
// a_i -> a_i / u^i.
Model u_transform(const Model& m, const Rat& u);

// Global minimal model over Q, canonically reduced: a1, a3 in {0,1},
// a2 in {-1, 0, 1}.  Idempotent.
Model minimal_model(const Model& m);

// Minimal model of the quadratic twist by squarefree d != 0.
Model quadratic_twist(const Model& m, const Int& d);

// Complete factorization (trial division + Pollard rho).
std::map<Int, long> factor(const Int& n);

// Bad primes of a minimal model (support of the minimal discriminant).
std::vector<Int> bad_primes(const Model& minimal);

// --------------------------------------------------------------------------
// Curves over finite fields

struct FqCurve {
    FqField F;
    std::array<FqElem, 5> a;
};

// Reduce an integral model through a residue map.
FqCurve reduce_model(const Model& integral, const nf::PrimeIdeal& P);
bool is_nonsingular(const FqCurve& c);

// #E(F_q) including the point at infinity; rejects singular curves.
Int count_points(const FqCurve& c);

// Fast path over F_ell for an integral model (used by the coefficient sweep).
long count_points_mod_ell(const Model& integral, long ell);

// Trace of Frobenius at a good prime: ell + 1 - #E(F_ell).
Int trace_good(const Model& minimal, const Int& ell);

// Good ordinary test at an odd prime p: a_p != 0 mod p.
// Throws "not applicable" when the curve has bad reduction at p.
bool is_ordinary(const Model& minimal, const Int& p);

// One-sided torsion-vanishing certificate for E(K)[p] = 0: a good prime
// ell != p, split in K, with p not dividing #E(F_ell).  E(K)[p] injects into
// E(F_ell) at such primes, so a witness proves vanishing; exhausting the
// search bound leaves the question open ("undetermined").
struct TorsionEvidence {
    bool proved = false;
    long witness_ell = 0;
    Int group_order;
};
TorsionEvidence torsion_p_vanishes_over_K(const Model& minimal, const Int& p,
                                          const nf::ImagQuadField& K, long search_bound);

}  // namespace h10::curves

#endif
