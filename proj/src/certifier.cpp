#include "h10/certifier.hpp"

#include <algorithm>
#include <set>

namespace h10::certifier {

std::string provenance_str(Provenance p) {
    switch (p) {
        case Provenance::Computed: return "computed";
        case Provenance::IngestedLmfdb: return "ingested-lmfdb";
        case Provenance::IngestedUser: return "ingested-user";
    }
    return "?";
}

Provenance provenance_from_str(const std::string& s) {
    if (s == "computed") return Provenance::Computed;
    if (s == "ingested-lmfdb") return Provenance::IngestedLmfdb;
    if (s == "ingested-user") return Provenance::IngestedUser;
    throw MathError("unknown provenance: " + s);
}

std::string status_str(HypothesisStatus s) {
    switch (s) {
        case HypothesisStatus::VerifiedComputed: return "verified-computed";
        case HypothesisStatus::VerifiedIngested: return "verified-ingested";
        case HypothesisStatus::Failed: return "failed";
        case HypothesisStatus::Undetermined: return "undetermined";
        case HypothesisStatus::Unsupported: return "unsupported";
    }
    return "?";
}

std::string conclusion_str(const Certificate& c) {
    switch (c.conclusion) {
        case Conclusion::NegativeAnswerAllLayers: return "negative-answer-all-layers";
        case Conclusion::Inconclusive: return "inconclusive";
        case Conclusion::RefutedHypothesis:
            return "refuted-hypothesis(" + std::to_string(c.refuted_index) + ")";
    }
    return "?";
}

RankOverK rank_over_K_from_twists(const ExternalDatum* rank_Q, const ExternalDatum* rank_twist_Q) {
    RankOverK out;
    if (!rank_Q || !rank_twist_Q) return out;
    out.known = true;
    out.value = rank_Q->value + rank_twist_Q->value;
    out.provenance = Provenance::IngestedUser;
    if (rank_Q->provenance == rank_twist_Q->provenance) out.provenance = rank_Q->provenance;
    else if (rank_Q->provenance != Provenance::IngestedUser &&
             rank_twist_Q->provenance != Provenance::IngestedUser)
        out.provenance = Provenance::IngestedLmfdb;
    return out;
}

EulerFactors euler_characteristic_factors(const Int& p, const Int& sha_p_value,
                                          const Int& reduction_count_at_p,
                                          const std::vector<Int>& omega_tamagawas) {
    EulerFactors f;
    f.applicable = true;
    f.sha_p_part = localdata::tamagawa_p_part(sha_p_value, p);
    // (prod_{P | p} #E(F_P))^2 with both primes split: (c * c)^2
    Int c = localdata::tamagawa_p_part(reduction_count_at_p, p);
    f.reduction_p_part = c * c * c * c;
    f.tamagawa_p_part = 1;
    for (const Int& cv : omega_tamagawas) f.tamagawa_p_part *= localdata::tamagawa_p_part(cv, p);
    f.product = f.sha_p_part * f.reduction_p_part * f.tamagawa_p_part;
    return f;
}

bool mu_lambda_vanishing(const EulerFactors& f) {
    if (!f.applicable) throw MathError("mu_lambda_vanishing: factors not applicable");
    return f.product == 1;
}

LambdaReport lambda_transfer(long lambda_e1, const std::vector<SigmaRow>& rows,
                             const Int& rank_e2_K) {
    LambdaReport rep;
    rep.valid = true;
    rep.lambda_e1 = lambda_e1;
    long sum = 0;
    for (const SigmaRow& r : rows) {
        if (!r.member) continue;
        if (!r.finitely_decomposed)
            throw MathError("lambda_transfer: a Sigma prime is not finitely decomposed");
        sum += to_long(r.s_v) * (r.d1 - r.d2);
    }
    rep.sigma_sum = sum;
    rep.lambda_e2 = lambda_e1 + sum;
    rep.rank_e2_K = rank_e2_K;
    rep.matches_rank = (Int(rep.lambda_e2) == rank_e2_K);
    return rep;
}

RankEquation rank_equation_check(const Int& rank_e2_K, const std::vector<SigmaRow>& rows) {
    RankEquation eq;
    eq.lhs = rank_e2_K;
    Int rhs = 0;
    for (const SigmaRow& r : rows)
        if (r.member) rhs += r.s_v * (r.d1 - r.d2);
    eq.rhs = rhs;
    eq.holds = (eq.lhs == eq.rhs);
    return eq;
}

void conclude(Certificate& cert) {
    cert.refuted_index = 0;
    for (const HypothesisEntry& h : cert.hypotheses) {
        if (h.status == HypothesisStatus::Failed) {
            cert.conclusion = Conclusion::RefutedHypothesis;
            cert.refuted_index = h.index;
            cert.conclusion_text = "hypothesis " + std::to_string(h.index) + " (" + h.name +
                                   ") does not hold for this instance";
            return;
        }
    }
    bool all_verified = std::all_of(cert.hypotheses.begin(), cert.hypotheses.end(),
                                    [](const HypothesisEntry& h) { return is_verified(h.status); });
    bool rank_positive = cert.lambda.rank_e2_K > 0;
    if (all_verified && cert.rank_equation.holds && rank_positive) {
        cert.conclusion = Conclusion::NegativeAnswerAllLayers;
        cert.conclusion_text =
            "Hilbert's tenth problem has a negative answer for the ring of integers of "
            "every layer of the anticyclotomic Z_" + cert.p.get_str() + "-tower over " +
            cert.field_name + " (all layers n >= 0; no layer is materialized)";
    } else {
        cert.conclusion = Conclusion::Inconclusive;
        cert.conclusion_text = "not every hypothesis could be verified; no conclusion";
    }
}

Certificate certify(const curves::Model& e1_in, const std::string& label1,
                    const curves::Model& e2_in, const std::string& label2, const Int& D,
                    const Int& p, const Externals& ext, const CertifyOptions& opt) {
    if (p < 3 || !is_prime(p)) throw MathError("certify: p must be an odd prime");
    nf::ImagQuadField K(D);
    if (K.splitting(p) != nf::Splitting::Split)
        throw MathError("certify: p = " + p.get_str() + " does not split in " + K.name());

    Certificate cert;
    cert.p = p;
    cert.D = D;
    cert.field_name = K.name();
    cert.e1_label = label1;
    cert.e2_label = label2;
    cert.e1_model = curves::minimal_model(e1_in);
    cert.e2_model = curves::minimal_model(e2_in);
    cert.toolchain = std::string("anticyclo-h10/1.0 (") +
#if defined(__clang__)
                     "clang " + std::to_string(__clang_major__)
#elif defined(__GNUC__)
                     "gcc " + std::to_string(__GNUC__) + "." + std::to_string(__GNUC_MINOR__)
#else
                     "unknown compiler"
#endif
                     + ")";

    curves::HeckeCoefficients f1(cert.e1_model), f2(cert.e2_model);
    cert.conductor1 = f1.conductor();
    cert.conductor2 = f2.conductor();

    // fixture-supplied local data, when present, must agree with computation
    for (const auto& [label, expected] : ext.local_overrides) {
        if (label == label1) localdata::crosscheck_local_data(cert.e1_model, expected);
        if (label == label2) localdata::crosscheck_local_data(cert.e2_model, expected);
    }

    // ------------------------------------------------------------------ (1)
    HypothesisEntry h1;
    h1.index = 1;
    h1.name = "good-ordinary-reduction-above-p";
    {
        bool good1 = cert.conductor1 % p != 0, good2 = cert.conductor2 % p != 0;
        if (good1 && good2) {
            Int a1 = f1.a_ell(p), a2 = f2.a_ell(p);
            bool ord1 = a1 % p != 0, ord2 = a2 % p != 0;
            h1.evidence.emplace_back("a_p(E1)", a1.get_str());
            h1.evidence.emplace_back("a_p(E2)", a2.get_str());
            h1.evidence.emplace_back("primes-above-p", "split pair; completions Q_p");
            h1.status = (ord1 && ord2) ? HypothesisStatus::VerifiedComputed
                                       : HypothesisStatus::Failed;
        } else {
            h1.evidence.emplace_back("bad-reduction-at-p", good1 ? label2 : label1);
            h1.status = HypothesisStatus::Failed;
        }
    }
    cert.hypotheses.push_back(h1);

    // ------------------------------------------------------------------ (2)
    HypothesisEntry h2;
    h2.index = 2;
    h2.name = "mod-p-congruence-of-curves";
    {
        Int level = lcm(cert.conductor1, cert.conductor2);
        cert.sturm = congruence::sturm_data(level);
        long bound;
        if (opt.sturm_bound == 0) bound = to_long(cert.sturm.conservative_bound);
        else if (opt.sturm_bound == -1) bound = to_long(cert.sturm.formula_bound);
        else bound = opt.sturm_bound;
        cert.bound_used = bound;
        auto [s1, s2] = congruence::strip_sets(cert.conductor1, cert.conductor2);
        cert.congruence_report = congruence::verify_congruence(f1, f2, p, bound, s1, s2, opt.jobs);
        cert.image1 = congruence::residual_image_surjective(f1, p, opt.image_sample_bound);
        cert.image2 = congruence::residual_image_surjective(f2, p, opt.image_sample_bound);
        h2.evidence.emplace_back("comparison-level", level.get_str());
        h2.evidence.emplace_back("sturm-index", cert.sturm.index.get_str());
        h2.evidence.emplace_back("bound-used", std::to_string(bound));
        h2.evidence.emplace_back("sweep", cert.congruence_report.pass ? "pass" : "fail");
        h2.evidence.emplace_back("image-E1", congruence::verdict_str(cert.image1.verdict));
        h2.evidence.emplace_back("image-E2", congruence::verdict_str(cert.image2.verdict));
        bool images_ok = cert.image1.verdict == congruence::ImageVerdict::Surjective &&
                         cert.image2.verdict == congruence::ImageVerdict::Surjective;
        bool bound_ok = Int(bound) >= cert.sturm.formula_bound;
        if (!cert.congruence_report.pass) {
            h2.status = HypothesisStatus::Failed;
            h2.evidence.emplace_back("first-failure",
                                     std::to_string(cert.congruence_report.first_fail_n));
        } else if (images_ok && bound_ok) {
            // irreducible + checked beyond the Sturm bound: the congruence of
            // semisimplifications is a certified isomorphism
            h2.status = HypothesisStatus::VerifiedComputed;
        } else {
            h2.status = HypothesisStatus::Undetermined;
            if (!bound_ok) h2.evidence.emplace_back("note", "bound below the Sturm bound");
        }
    }
    cert.hypotheses.push_back(h2);

    // ------------------------------------------------------------------ (3)
    HypothesisEntry h3;
    h3.index = 3;
    h3.name = "rank-profile-over-K";
    RankOverK rank1 = rank_over_K_from_twists(ext.find("rank_E1_Q"), ext.find("rank_E1_twist_Q"));
    RankOverK rank2 = rank_over_K_from_twists(ext.find("rank_E2_Q"), ext.find("rank_E2_twist_Q"));
    {
        if (!rank1.known || !rank2.known) {
            h3.status = HypothesisStatus::Undetermined;
            h3.evidence.emplace_back("note", "rank data missing from the externals");
        } else {
            h3.evidence.emplace_back("rank_E1_K", rank1.value.get_str());
            h3.evidence.emplace_back("rank_E2_K", rank2.value.get_str());
            h3.evidence.emplace_back("provenance", provenance_str(rank2.provenance));
            h3.status = (rank1.value == 0 && rank2.value > 0) ? HypothesisStatus::VerifiedIngested
                                                              : HypothesisStatus::Failed;
        }
    }
    cert.hypotheses.push_back(h3);

    // ------------------------------------------------------------------ (4)
    HypothesisEntry h4;
    h4.index = 4;
    h4.name = "torsion-mod-p-trivial-over-K";
    {
        auto ev1 = curves::torsion_p_vanishes_over_K(cert.e1_model, p, K, opt.torsion_search_bound);
        auto ev2 = curves::torsion_p_vanishes_over_K(cert.e2_model, p, K, opt.torsion_search_bound);
        if (ev1.proved)
            h4.evidence.emplace_back("witness-E1", "ell=" + std::to_string(ev1.witness_ell) +
                                                       " #E(F_ell)=" + ev1.group_order.get_str());
        if (ev2.proved)
            h4.evidence.emplace_back("witness-E2", "ell=" + std::to_string(ev2.witness_ell) +
                                                       " #E(F_ell)=" + ev2.group_order.get_str());
        h4.status = (ev1.proved && ev2.proved) ? HypothesisStatus::VerifiedComputed
                                               : HypothesisStatus::Undetermined;
    }
    cert.hypotheses.push_back(h4);

    // ------------------------------------------------------------------ (5)
    HypothesisEntry h5;
    h5.index = 5;
    h5.name = "sigma-primes-finitely-decomposed";
    localdata::SigmaSet sigma;
    bool sigma_known = true;
    try {
        sigma = localdata::sigma_set(cert.e1_model, cert.e2_model, K, p);
    } catch (const nf::UnsupportedField& e) {
        sigma_known = false;
        h5.status = HypothesisStatus::Unsupported;
        h5.evidence.emplace_back("unsupported-field", e.what());
    }
    anticyclo::BrinkParams params = anticyclo::make_brink_params(K, p, ext.nu);
    if (sigma_known) {
        std::set<Int> brink_done;
        bool all_fd = true;
        for (const auto& rec : sigma.bad_primes) {
            SigmaRow row;
            row.label = rec.v.label();
            row.ell = rec.v.residue_char();
            row.member = rec.in_sigma();
            row.finitely_decomposed = anticyclo::is_finitely_decomposed(rec.v, K, p);
            row.kind1 = localdata::kind_str(rec.e1.kind);
            row.kodaira1 = rec.e1.kodaira.str();
            row.kind2 = localdata::kind_str(rec.e2.kind);
            row.kodaira2 = rec.e2.kodaira.str();
            row.reason1 = localdata::reason_str(rec.reason1);
            row.reason2 = localdata::reason_str(rec.reason2);
            row.kprime1 = rec.kprime1;
            row.kprime2 = rec.kprime2;
            row.tamagawa1 = rec.e1.tamagawa;
            row.tamagawa2 = rec.e2.tamagawa;
            row.d1 = localdata::d_v(localdata::local_l_factor(rec.e1), row.ell, p);
            row.d2 = localdata::d_v(localdata::local_l_factor(rec.e2), row.ell, p);
            if (row.member) {
                if (!row.finitely_decomposed) {
                    all_fd = false;
                    h5.evidence.emplace_back("infinitely-decomposed", row.label);
                } else {
                    anticyclo::Decomposition dec =
                        anticyclo::brink_split_depth(row.ell, K, p, params);
                    row.s_v = dec.s_v;
                    if (!brink_done.count(row.ell)) {
                        brink_done.insert(row.ell);
                        cert.brink_rows.push_back(BrinkRow{row.ell, params.h, params.mu,
                                                           params.nu, dec.a, dec.b, dec.a_star,
                                                           dec.b_star, dec.vp_bstar, dec.t,
                                                           dec.s_v});
                    }
                }
            }
            cert.sigma_rows.push_back(std::move(row));
        }
        std::string members;
        for (const auto& r : cert.sigma_rows)
            if (r.member) members += (members.empty() ? "" : ", ") + r.label;
        h5.evidence.emplace_back("sigma", "{" + members + "}");
        h5.status = all_fd ? HypothesisStatus::VerifiedComputed : HypothesisStatus::Failed;
    }
    cert.hypotheses.push_back(h5);

    // parity consistency: curves over Q and conjugate-stable split Sigma
    {
        bool conjugate_stable = true;
        std::map<std::string, int> by_ell;
        for (const auto& r : cert.sigma_rows)
            if (r.member && r.finitely_decomposed) ++by_ell[r.ell.get_str()];
        for (const auto& [ell, count] : by_ell)
            if (count != 2) conjugate_stable = false;
        if (conjugate_stable) {
            long sum = 0;
            for (const auto& r : cert.sigma_rows)
                if (r.member) sum += to_long(r.s_v) * (r.d1 - r.d2);
            if (sum % 2 != 0)
                throw MathError("certify: parity consistency violated (odd Sigma-sum)");
        }
    }

    // ------------------------------------------------------------------ (6)
    HypothesisEntry h6;
    h6.index = 6;
    h6.name = "sha-p-primary-trivial-for-E1";
    const ExternalDatum* sha = ext.find("sha_p_part_E1_K");
    {
        if (!sha) {
            h6.status = HypothesisStatus::Undetermined;
            h6.evidence.emplace_back("note", "no Sha datum in the externals");
        } else {
            h6.evidence.emplace_back("sha_p_part", sha->value.get_str());
            h6.evidence.emplace_back("provenance", provenance_str(sha->provenance));
            h6.evidence.emplace_back("citation", sha->citation);
            h6.status = (sha->value == 1) ? HypothesisStatus::VerifiedIngested
                                          : HypothesisStatus::Failed;
        }
    }
    cert.hypotheses.push_back(h6);

    // ------------------------------------------------------------------ (7)
    HypothesisEntry h7;
    h7.index = 7;
    h7.name = "reduction-of-E1-at-p-has-no-p-torsion";
    Int count_at_p = p + 1 - f1.a_ell(p);
    {
        h7.evidence.emplace_back("#E1(F_p)", count_at_p.get_str());
        h7.status = (count_at_p % p != 0) ? HypothesisStatus::VerifiedComputed
                                          : HypothesisStatus::Failed;
    }
    cert.hypotheses.push_back(h7);

    // ------------------------------------------------------------------ (8)
    HypothesisEntry h8;
    h8.index = 8;
    h8.name = "tamagawa-p-parts-trivial-on-omega";
    std::vector<Int> omega_tamagawas;
    {
        // bad primes of E1 over K that are finitely decomposed and away from p
        struct OmegaEntry {
            std::string label;
            Int tamagawa;
        };
        std::vector<OmegaEntry> entries;
        if (sigma_known) {
            for (const auto& r : cert.sigma_rows) {
                if (r.ell == p || !r.finitely_decomposed || r.kind1 == "good") continue;
                entries.push_back({r.label, r.tamagawa1});
            }
        } else {
            for (const Int& ell : curves::bad_primes(cert.e1_model)) {
                if (ell == p || K.splitting(ell) != nf::Splitting::Split) continue;
                for (const auto& v : K.primes_above(ell)) {
                    auto d = localdata::tate_algorithm(
                        localdata::base_change(cert.e1_model, K.order()), v);
                    if (d.kind == localdata::ReductionKind::Good) continue;
                    entries.push_back({v.label(), d.tamagawa});
                }
            }
        }
        bool all_trivial = true;
        for (const auto& e : entries) {
            omega_tamagawas.push_back(e.tamagawa);
            Int part = localdata::tamagawa_p_part(e.tamagawa, p);
            h8.evidence.emplace_back("c_" + e.label + "(E1)",
                                     e.tamagawa.get_str() + " (p-part " + part.get_str() + ")");
            if (part != 1) all_trivial = false;
        }
        h8.status = all_trivial ? HypothesisStatus::VerifiedComputed : HypothesisStatus::Failed;
    }
    cert.hypotheses.push_back(h8);

    // ------------------------------------------------- rank equation, lambda
    bool sigma_usable = is_verified(cert.hypotheses[4].status);
    if (rank2.known && sigma_usable) {
        cert.rank_equation = rank_equation_check(rank2.value, cert.sigma_rows);
    }
    if (sha && rank1.known && rank1.value == 0) {
        cert.euler = euler_characteristic_factors(p, sha->value, count_at_p, omega_tamagawas);
        if (mu_lambda_vanishing(cert.euler) && rank2.known && sigma_usable) {
            // trivial Euler characteristic forces mu = lambda = 0 for E1
            cert.lambda = lambda_transfer(0, cert.sigma_rows, rank2.value);
        }
    }
    if (!cert.lambda.valid && rank2.known) cert.lambda.rank_e2_K = rank2.value;

    conclude(cert);
    return cert;
}

}  // namespace h10::certifier
