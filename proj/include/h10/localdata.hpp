#ifndef H10_LOCALDATA_HPP
#define H10_LOCALDATA_HPP

#include <string>
#include <vector>

#include "h10/curves.hpp"
#include "h10/numberfield.hpp"

// Tate's algorithm at primes of Q, K and K' with exact ideal-valuation
// arithmetic; Kodaira types; Tamagawa numbers and their p-parts; local
// L-factors P_v(X) and the root multiplicities d_v; the set Sigma.

namespace h10::localdata {

// Weierstrass model with coefficients in a number field, as coordinate
// vectors over the maximal order's basis.
struct NFModel {
    nf::OrderPtr order;
    std::array<nf::QCoords, 5> a;
};

// Base change of a rational model into the field of the given order.
NFModel base_change(const curves::Model& m, const nf::OrderPtr& order);

enum class ReductionKind { Good, SplitMultiplicative, NonsplitMultiplicative, Additive };
std::string kind_str(ReductionKind k);

struct KodairaType {
    enum class Series { I, Istar, II, IIstar, III, IIIstar, IV, IVstar };
    Series series = Series::I;
    long n = 0;  // index for I_n and I_n*
    std::string str() const;
    bool operator==(const KodairaType&) const = default;
};

struct LocalReductionData {
    nf::PrimeIdeal prime;
    ReductionKind kind = ReductionKind::Good;
    KodairaType kodaira;
    long v_disc_min = 0;         // valuation of the minimal discriminant at P
    long conductor_exponent = 0;
    Int tamagawa = 1;            // c_v
    Int a_v = 0;                 // trace (good), +-1 (multiplicative), 0 (additive)
    Int q_v = 0;                 // residue field size
};

// Full Tate loop at P.  The model must be integral at P; fields of degree
// up to 4 are supported.  Internal valuation cap of 50 guards termination.
LocalReductionData tate_algorithm(const NFModel& m, const nf::PrimeIdeal& P);

// p^{v_p(c_v)}.
Int tamagawa_p_part(const Int& c_v, const Int& p);

// P_v(X): degree 2 (good), 1 (multiplicative), 0 (additive).
struct LocalLFactor {
    std::array<Int, 3> coeffs{1, 0, 0};  // ascending
    int degree = 0;
};
LocalLFactor local_l_factor(const LocalReductionData& d);

// Multiplicity of ell^{-1} mod p as a root of the mod-p reduction of P_v.
int d_v(const LocalLFactor& f, const Int& ell, const Int& p);

// --------------------------------------------------------------------------
// Sigma = Sigma(E1) u Sigma(E2)

enum class SigmaReason { NotMember, GoodPDividesCount, SplitMultOverKprime, AdditiveIVOverKprime };
std::string reason_str(SigmaReason r);

struct KprimeRecord {
    std::string label;  // prime of K'
    ReductionKind kind;
    KodairaType kodaira;
};

struct TPrimeData {
    nf::PrimeIdeal v;
    LocalReductionData e1, e2;  // over K
    SigmaReason reason1 = SigmaReason::NotMember;
    SigmaReason reason2 = SigmaReason::NotMember;
    std::vector<KprimeRecord> kprime1, kprime2;
    bool in_sigma() const {
        return reason1 != SigmaReason::NotMember || reason2 != SigmaReason::NotMember;
    }
};

struct SigmaSet {
    std::vector<TPrimeData> bad_primes;  // all of the set T of bad primes of K
    std::vector<size_t> sigma_indices;   // positions of Sigma members
};

// Computes T from minimal discriminants over K, then tests each v against
// the membership clauses, running Tate over K' at every w | v when a curve
// has bad reduction at v.  p >= 5 with bad primes needs K' of degree > 4 and
// raises UnsupportedField.
SigmaSet sigma_set(const curves::Model& e1_min, const curves::Model& e2_min,
                   const nf::ImagQuadField& K, const Int& p);

// Cross-check hook for fixture-supplied local data (hard error on mismatch).
struct ExpectedLocalData {
    Int ell;
    std::string kodaira;  // printed form, e.g. "I3*"
    std::string kind;     // "good", "split-multiplicative", ...
    Int tamagawa;
    long v_disc = -1;            // -1 = unspecified
    long conductor_exponent = -1;
};
void crosscheck_local_data(const curves::Model& minimal,
                           const std::vector<ExpectedLocalData>& expected);

}  // namespace h10::localdata

#endif
