#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "h10/certifier.hpp"
#include "h10/io.hpp"

using namespace h10;
using namespace h10::certifier;

static curves::Model m56b1() { return curves::make_model(0, -1, 0, 0, -4); }
static curves::Model m392c1() { return curves::make_model(0, -1, 0, -16, 29); }

static Externals golden_externals() {
    return io::parse_externals(
        io::read_file(std::string(H10_BUNDLED_FIXTURE_DIR) + "/externals/golden.json"));
}

static CertifyOptions fast_options() {
    CertifyOptions opt;
    opt.sturm_bound = -1;  // formula bound: fast, still a sound certificate
    opt.jobs = 2;
    return opt;
}

TEST_CASE("golden instance certifies") {
    Certificate cert = certify(m56b1(), "56b1", m392c1(), "392c1", 5, 3, golden_externals(),
                               fast_options());
    REQUIRE(cert.hypotheses.size() == 8);
    for (const auto& h : cert.hypotheses) CHECK(is_verified(h.status));
    CHECK(cert.hypotheses[2].status == HypothesisStatus::VerifiedIngested);  // ranks
    CHECK(cert.hypotheses[5].status == HypothesisStatus::VerifiedIngested);  // Sha
    CHECK(cert.conclusion == Conclusion::NegativeAnswerAllLayers);
    CHECK(cert.rank_equation.lhs == 2);
    CHECK(cert.rank_equation.rhs == 2);
    CHECK(cert.rank_equation.holds);
    CHECK(cert.lambda.valid);
    CHECK(cert.lambda.lambda_e1 == 0);
    CHECK(cert.lambda.lambda_e2 == 2);
    CHECK(cert.lambda.matches_rank);
    CHECK(cert.euler.applicable);
    CHECK(cert.euler.sha_p_part == 1);
    CHECK(cert.euler.reduction_p_part == 1);
    CHECK(cert.euler.tamagawa_p_part == 1);
    CHECK(cert.euler.product == 1);
    REQUIRE(cert.brink_rows.size() == 1);
    CHECK(cert.brink_rows[0].a == 2);
    CHECK(cert.brink_rows[0].b == 3);
    CHECK(cert.brink_rows[0].a_star == -41);
    CHECK(cert.brink_rows[0].b_star == 12);
    CHECK(cert.brink_rows[0].t == 0);
    // gating soundness on the positive side
    CHECK(cert.lambda.rank_e2_K > 0);
    // two Sigma members, both above 7
    int members = 0;
    for (const auto& r : cert.sigma_rows)
        if (r.member) {
            ++members;
            CHECK(r.ell == 7);
            CHECK(r.s_v == 1);
            CHECK(r.d1 == 1);
            CHECK(r.d2 == 0);
        }
    CHECK(members == 2);
}

TEST_CASE("rank composition from twists") {
    ExternalDatum r0{"rank_E_Q", 0, Provenance::IngestedLmfdb, ""};
    ExternalDatum r1{"rank_Et_Q", 1, Provenance::IngestedLmfdb, ""};
    auto both0 = rank_over_K_from_twists(&r0, &r0);
    CHECK(both0.known);
    CHECK(both0.value == 0);
    auto both1 = rank_over_K_from_twists(&r1, &r1);
    CHECK(both1.value == 2);
    auto mixed = rank_over_K_from_twists(&r0, &r1);
    CHECK(mixed.value == 1);
    CHECK_FALSE(rank_over_K_from_twists(&r0, nullptr).known);
}

TEST_CASE("euler factors and vanishing") {
    // golden: Sha part 1, #E1(F_3) = 2 at both primes above 3, Tamagawa 3-parts 1
    EulerFactors f = euler_characteristic_factors(3, 1, 2, {Int(1), Int(1)});
    CHECK(f.sha_p_part == 1);
    CHECK(f.reduction_p_part == 1);
    CHECK(f.tamagawa_p_part == 1);
    CHECK(f.product == 1);
    CHECK(mu_lambda_vanishing(f));

    EulerFactors sha3 = euler_characteristic_factors(3, 3, 2, {Int(1)});
    CHECK(sha3.sha_p_part == 3);
    CHECK(sha3.product == 3);
    CHECK_FALSE(mu_lambda_vanishing(sha3));

    // p | #E(F_p) at the primes above p: squared product contributes p^4
    EulerFactors red = euler_characteristic_factors(3, 1, 6, {});
    CHECK(red.reduction_p_part == 81);
    CHECK_FALSE(mu_lambda_vanishing(red));

    EulerFactors tam = euler_characteristic_factors(3, 1, 2, {Int(6), Int(2)});
    CHECK(tam.tamagawa_p_part == 3);
    CHECK_FALSE(mu_lambda_vanishing(tam));
}

TEST_CASE("lambda transfer and rank equation") {
    std::vector<SigmaRow> rows(2);
    for (auto& r : rows) {
        r.member = true;
        r.finitely_decomposed = true;
        r.s_v = 1;
        r.d1 = 1;
        r.d2 = 0;
    }
    LambdaReport rep = lambda_transfer(0, rows, 2);
    CHECK(rep.sigma_sum == 2);
    CHECK(rep.lambda_e2 == 2);
    CHECK(rep.matches_rank);

    // empty Sigma: lambda is transported unchanged
    LambdaReport rep0 = lambda_transfer(5, {}, 5);
    CHECK(rep0.lambda_e2 == 5);

    // swapping the curves negates the difference
    std::vector<SigmaRow> swapped = rows;
    for (auto& r : swapped) std::swap(r.d1, r.d2);
    CHECK(lambda_transfer(0, swapped, 2).sigma_sum == -2);

    RankEquation eq = rank_equation_check(2, rows);
    CHECK(eq.holds);
    CHECK_FALSE(rank_equation_check(4, rows).holds);
    CHECK_FALSE(rank_equation_check(2, {}).holds);

    // a non-finitely-decomposed member is a hard failure
    rows[0].finitely_decomposed = false;
    CHECK_THROWS_AS(lambda_transfer(0, rows, 2), MathError);
}

TEST_CASE("entry-level ablation flips the conclusion") {
    Certificate cert = certify(m56b1(), "56b1", m392c1(), "392c1", 5, 3, golden_externals(),
                               fast_options());
    REQUIRE(cert.conclusion == Conclusion::NegativeAnswerAllLayers);
    for (size_t i = 0; i < cert.hypotheses.size(); ++i) {
        Certificate broken = cert;
        broken.hypotheses[i].status = HypothesisStatus::Failed;
        conclude(broken);
        CHECK(broken.conclusion == Conclusion::RefutedHypothesis);
        CHECK(broken.refuted_index == int(i) + 1);

        Certificate unknown = cert;
        unknown.hypotheses[i].status = HypothesisStatus::Undetermined;
        conclude(unknown);
        CHECK(unknown.conclusion == Conclusion::Inconclusive);
    }
    Certificate noeq = cert;
    noeq.rank_equation.holds = false;
    conclude(noeq);
    CHECK(noeq.conclusion == Conclusion::Inconclusive);
}

TEST_CASE("input-level ablations") {
    Externals ext = golden_externals();
    CertifyOptions opt = fast_options();

    SUBCASE("withholding the Sha datum leaves hypothesis 6 undetermined") {
        Externals noSha = ext;
        noSha.entries.erase("sha_p_part_E1_K");
        Certificate c = certify(m56b1(), "56b1", m392c1(), "392c1", 5, 3, noSha, opt);
        CHECK(c.hypotheses[5].status == HypothesisStatus::Undetermined);
        CHECK(c.conclusion == Conclusion::Inconclusive);
    }
    SUBCASE("zero rank for E2 refutes hypothesis 3") {
        Externals zero = ext;
        zero.entries["rank_E2_Q"].value = 0;
        zero.entries["rank_E2_twist_Q"].value = 0;
        Certificate c = certify(m56b1(), "56b1", m392c1(), "392c1", 5, 3, zero, opt);
        CHECK(c.conclusion == Conclusion::RefutedHypothesis);
        CHECK(c.refuted_index == 3);
    }
    SUBCASE("empty torsion search leaves hypothesis 4 undetermined") {
        CertifyOptions o = opt;
        o.torsion_search_bound = 1;
        Certificate c = certify(m56b1(), "56b1", m392c1(), "392c1", 5, 3, ext, o);
        CHECK(c.hypotheses[3].status == HypothesisStatus::Undetermined);
        CHECK(c.conclusion == Conclusion::Inconclusive);
    }
    SUBCASE("a field where 7 is inert refutes hypothesis 5") {
        // 3 splits in Q(sqrt(-23)) but 7 does not
        Certificate c = certify(m56b1(), "56b1", m392c1(), "392c1", 23, 3, ext, opt);
        CHECK(c.conclusion == Conclusion::RefutedHypothesis);
        CHECK(c.refuted_index == 5);
    }
    SUBCASE("a non-congruent pair refutes hypothesis 2") {
        CertifyOptions o = opt;
        o.sturm_bound = 100;
        Certificate c = certify(m56b1(), "56b1", curves::quadratic_twist(m56b1(), -5),
                                "56b1-twist", 5, 3, ext, o);
        CHECK(c.hypotheses[1].status == HypothesisStatus::Failed);
        CHECK(c.conclusion == Conclusion::RefutedHypothesis);
        CHECK(c.refuted_index == 2);
        CHECK(c.congruence_report.first_fail_n == 5);
    }
    SUBCASE("p with bad reduction refutes hypothesis 1; K' is unsupported") {
        CertifyOptions o = opt;
        o.sturm_bound = 50;
        Certificate c = certify(m56b1(), "56b1", m392c1(), "392c1", 5, 7, ext, o);
        CHECK(c.hypotheses[0].status == HypothesisStatus::Failed);
        CHECK(c.hypotheses[4].status == HypothesisStatus::Unsupported);
        CHECK(c.conclusion == Conclusion::RefutedHypothesis);
        CHECK(c.refuted_index == 1);
    }
}

TEST_CASE("instance preconditions are hard failures") {
    Externals ext = golden_externals();
    // p = 11 is inert in Q(sqrt(-5))
    CHECK_THROWS_AS(certify(m56b1(), "56b1", m392c1(), "392c1", 5, 11, ext, fast_options()),
                    MathError);
    CHECK_THROWS_AS(certify(m56b1(), "56b1", m392c1(), "392c1", 5, 4, ext, fast_options()),
                    MathError);
}

TEST_CASE("bound below the Sturm bound is not a verified congruence") {
    Externals ext = golden_externals();
    CertifyOptions o = fast_options();
    o.sturm_bound = 500;  // passes, but proves nothing
    Certificate c = certify(m56b1(), "56b1", m392c1(), "392c1", 5, 3, ext, o);
    CHECK(c.congruence_report.pass);
    CHECK(c.hypotheses[1].status == HypothesisStatus::Undetermined);
    CHECK(c.conclusion == Conclusion::Inconclusive);
}
