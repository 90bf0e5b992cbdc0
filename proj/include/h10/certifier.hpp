#ifndef H10_CERTIFIER_HPP
#define H10_CERTIFIER_HPP

#include "h10/anticyclo.hpp"
#include "h10/congruence.hpp"

// Orchestrates the hypothesis list for the negative-answer certificate:
// the congruence evidence, rank profile, torsion and decomposition checks,
// the Euler-characteristic vanishing route, the lambda transfer, the rank
// equation, and the final gated conclusion.  External data (ranks, the
// p-primary part of Sha) enters with explicit provenance and is never
// reported as computed.

namespace h10::certifier {

enum class Provenance { Computed, IngestedLmfdb, IngestedUser };
std::string provenance_str(Provenance p);
Provenance provenance_from_str(const std::string& s);

struct ExternalDatum {
    std::string name;
    Int value;
    Provenance provenance = Provenance::IngestedUser;
    std::string citation;
};

struct Externals {
    std::map<std::string, ExternalDatum> entries;
    // optional per-label local-data expectations, cross-checked against the
    // computed values (mismatch is a hard error)
    std::map<std::string, std::vector<localdata::ExpectedLocalData>> local_overrides;
    std::optional<long> nu;  // anticyclotomic/Hilbert overlap index override

    const ExternalDatum* find(const std::string& name) const {
        auto it = entries.find(name);
        return it == entries.end() ? nullptr : &it->second;
    }
};

enum class HypothesisStatus { VerifiedComputed, VerifiedIngested, Failed, Undetermined, Unsupported };
std::string status_str(HypothesisStatus s);
inline bool is_verified(HypothesisStatus s) {
    return s == HypothesisStatus::VerifiedComputed || s == HypothesisStatus::VerifiedIngested;
}

struct HypothesisEntry {
    int index = 0;
    std::string name;
    HypothesisStatus status = HypothesisStatus::Undetermined;
    std::vector<std::pair<std::string, std::string>> evidence;
};

struct BrinkRow {
    Int ell;
    Int h;
    long mu = 0, nu = 0;
    Int a, b, a_star, b_star;
    long vp_bstar = 0;
    long t = 0;
    Int s_v;
};

// One prime of K bad for at least one curve, with its Sigma verdict.
struct SigmaRow {
    std::string label;
    Int ell;
    bool member = false;
    bool finitely_decomposed = false;
    std::string kind1, kodaira1, kind2, kodaira2;  // reduction over K
    std::string reason1, reason2;
    std::vector<localdata::KprimeRecord> kprime1, kprime2;
    Int tamagawa1 = 1, tamagawa2 = 1;
    int d1 = 0, d2 = 0;   // root multiplicities of the mod-p L-factors
    Int s_v = 0;          // members only
};

struct EulerFactors {
    bool applicable = false;
    Int sha_p_part = 0;
    Int reduction_p_part = 0;  // p-part of (prod_{P | p} #E1(F_P))^2
    Int tamagawa_p_part = 0;   // p-part of prod_{v in Omega_K} c_v(E1)
    Int product = 0;
};

struct LambdaReport {
    bool valid = false;
    long lambda_e1 = 0;
    long sigma_sum = 0;   // sum s_v (d_v(E1) - d_v(E2))
    long lambda_e2 = 0;   // lambda_e1 + sigma_sum
    Int rank_e2_K = 0;
    bool matches_rank = false;
};

struct RankEquation {
    Int lhs = 0;  // rank E2(K)
    Int rhs = 0;  // Sigma-sum
    bool holds = false;
};

enum class Conclusion { NegativeAnswerAllLayers, Inconclusive, RefutedHypothesis };

struct Certificate {
    std::string schema = "h10.certificate/1";
    Int p, D;
    std::string field_name;
    std::string e1_label, e2_label;
    curves::Model e1_model, e2_model;
    Int conductor1, conductor2;
    congruence::SturmData sturm;
    long bound_used = 0;
    std::vector<HypothesisEntry> hypotheses;
    congruence::CongruenceReport congruence_report;
    congruence::ImageEvidence image1, image2;
    std::vector<SigmaRow> sigma_rows;  // all of T, members flagged
    std::vector<BrinkRow> brink_rows;  // one per Sigma residue characteristic
    EulerFactors euler;
    LambdaReport lambda;
    RankEquation rank_equation;
    Conclusion conclusion = Conclusion::Inconclusive;
    int refuted_index = 0;
    std::string conclusion_text;
    std::string toolchain;
};

std::string conclusion_str(const Certificate& c);

// ---------------------------------------------------------------------------
// Individually exposed steps

struct RankOverK {
    bool known = false;
    Int value = 0;
    Provenance provenance = Provenance::IngestedUser;
};
// rank E(K) = rank E(Q) + rank E^{-D}(Q); provenance is the weakest input's.
RankOverK rank_over_K_from_twists(const ExternalDatum* rank_Q, const ExternalDatum* rank_twist_Q);

EulerFactors euler_characteristic_factors(const Int& p, const Int& sha_p_value,
                                          const Int& reduction_count_at_p,
                                          const std::vector<Int>& omega_tamagawas);
bool mu_lambda_vanishing(const EulerFactors& f);

LambdaReport lambda_transfer(long lambda_e1, const std::vector<SigmaRow>& rows,
                             const Int& rank_e2_K);
RankEquation rank_equation_check(const Int& rank_e2_K, const std::vector<SigmaRow>& rows);

// Recompute the gated conclusion from the hypothesis entries, the rank
// equation and the rank profile (used for ablation tests as well).
void conclude(Certificate& cert);

struct CertifyOptions {
    // 0 = conservative bound (index + 1), -1 = formula bound, > 0 = explicit
    long sturm_bound = 0;
    int jobs = 0;
    long torsion_search_bound = 200;
    long image_sample_bound = 1000;
};

Certificate certify(const curves::Model& e1_in, const std::string& label1,
                    const curves::Model& e2_in, const std::string& label2, const Int& D,
                    const Int& p, const Externals& ext, const CertifyOptions& opt = {});

}  // namespace h10::certifier

#endif
