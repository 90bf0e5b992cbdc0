#ifndef H10_CONGRUENCE_HPP
#define H10_CONGRUENCE_HPP

#include "h10/hecke.hpp"

// Mod-p congruence verification between the coefficient streams of two
// rational elliptic curves: Sturm bound bookkeeping, oldform coefficient
// adjustment f(z) - f(ell z), the full sweep, and witness-based evidence for
// surjectivity of the residual representations.

namespace h10::congruence {

struct SturmData {
    Int level;
    Int index;               // N^2 prod_{ell | N} (1 - ell^-2)
    Int formula_bound;       // ceil(index / 12) + 1
    Int conservative_bound;  // index + 1
};
SturmData sturm_data(const Int& N, int weight = 2);

// a_n of f after subtracting f(ell z) for each ell in the strip set:
// one prime gives a_n(g) = a_n(f) - a_{n/ell}(f), zero when ell does not
// divide n.
Int adjusted_coefficient(const curves::HeckeCoefficients& f, const Int& n,
                         const std::vector<Int>& strip);

// Strip sets from conductor exponents: a prime with v_ell(N_i) < v_ell(N_j)
// is stripped from the curve with the smaller exponent.
std::pair<std::vector<Int>, std::vector<Int>> strip_sets(const Int& N1, const Int& N2);

struct CongruenceReport {
    Int p;
    long bound = 0;
    std::vector<Int> strip1, strip2;
    long checked = 0;
    bool pass = false;
    long first_fail_n = 0;  // 0 when pass
    Int fail_a1, fail_a2;   // adjusted coefficients at the first failure
};

// Checks adjusted coefficients mod p for all 1 <= n <= bound.  The prime
// sweep is parallel; the verdict merge is deterministic.
CongruenceReport verify_congruence(const curves::HeckeCoefficients& f1,
                                   const curves::HeckeCoefficients& f2, const Int& p,
                                   long bound, const std::vector<Int>& strip1,
                                   const std::vector<Int>& strip2, int jobs = 0);

// --------------------------------------------------------------------------
// Residual image evidence.
//
// Witnesses are Frobenius data (a_ell mod p, ell mod p) at good primes.
// Exclusion of each maximal-subgroup class of GL_2(F_p):
//   borel: some trace/det pair has nonsquare discriminant t^2 - 4d;
//   split-Cartan normalizer: t != 0 and disc nonsquare;
//   nonsplit-Cartan normalizer: t != 0 and disc a nonzero square;
//   determinant onto: some d is a nonsquare;
//   exceptional (p = 5, 7): some projective order outside {1,...,5}.
// For p = 3 trace/det pairs cannot separate GL_2(F_3) from the nonsplit
// Cartan normalizer (their profiles coincide), so both Cartan classes are
// excluded by certifying an element of order 3: a repeated-eigenvalue
// witness with 9 not dividing #E(F_ell) (eigenvalue +1) or #E(F_{ell^2})
// (eigenvalue -1) cannot lie in the 2-group SD_16.
struct WitnessRecord {
    std::string excludes;
    long ell = 0;
    long trace_mod_p = 0;
    long det_mod_p = 0;
};

enum class ImageVerdict { Surjective, Obstructed, Undetermined };
std::string verdict_str(ImageVerdict v);

struct ImageEvidence {
    ImageVerdict verdict = ImageVerdict::Undetermined;
    std::string obstruction;  // "borel" when a p-isogeny-compatible pattern persists
    std::vector<WitnessRecord> witnesses;
};

// p in {3, 5, 7}; samples good primes up to sample_bound.
ImageEvidence residual_image_surjective(const curves::HeckeCoefficients& f, const Int& p,
                                        long sample_bound);

}  // namespace h10::congruence

#endif
