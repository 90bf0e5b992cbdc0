#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#define CPPHTTPLIB_OPENSSL_SUPPORT
#include <httplib.h>

#include <filesystem>
#include <random>
#include <thread>

#include "h10/io.hpp"

using namespace h10;
using namespace h10::io;
namespace fs = std::filesystem;

static std::string bundled_curves() {
    return std::string(H10_BUNDLED_FIXTURE_DIR) + "/curves";
}

TEST_CASE("fixture round trip and validation") {
    std::string text = read_file(bundled_curves() + "/56b1.json");
    CurveFixture f = parse_fixture(text);
    CHECK(f.label == "56b1");
    CHECK(f.conductor == 56);
    CHECK(f.ainvs[1] == -1);
    validate_fixture(f);  // conductor + bundled local data agree with Tate

    // serialize -> parse -> serialize is byte-stable
    std::string s1 = serialize_fixture(f);
    CHECK(serialize_fixture(parse_fixture(s1)) == s1);

    // every bundled fixture validates
    for (const auto& entry : fs::directory_iterator(bundled_curves()))
        validate_fixture(parse_fixture(read_file(entry.path().string())));

    // corrupted conductor is rejected
    CurveFixture bad = f;
    bad.conductor = 57;
    CHECK_THROWS_AS(validate_fixture(bad), MathError);
    // corrupted local data is rejected
    CurveFixture badld = f;
    badld.local_data[0].tamagawa = 4;
    CHECK_THROWS_AS(validate_fixture(badld), MathError);
}

TEST_CASE("externals round trip") {
    std::string text = read_file(std::string(H10_BUNDLED_FIXTURE_DIR) + "/externals/golden.json");
    certifier::Externals e = parse_externals(text);
    CHECK(e.entries.size() == 5);
    CHECK(e.find("rank_E2_Q")->value == 1);
    CHECK(e.find("sha_p_part_E1_K")->provenance == certifier::Provenance::IngestedUser);
    std::string s1 = serialize_externals(e);
    CHECK(serialize_externals(parse_externals(s1)) == s1);
}

static certifier::Certificate golden_certificate() {
    certifier::Externals ext = parse_externals(
        read_file(std::string(H10_BUNDLED_FIXTURE_DIR) + "/externals/golden.json"));
    certifier::CertifyOptions opt;
    opt.sturm_bound = -1;
    opt.jobs = 2;
    return certifier::certify(curves::make_model(0, -1, 0, 0, -4), "56b1",
                              curves::make_model(0, -1, 0, -16, 29), "392c1", 5, 3, ext, opt);
}

TEST_CASE("certificate serialization round trip and determinism") {
    certifier::Certificate cert = golden_certificate();
    std::string s1 = serialize_certificate(cert);
    certifier::Certificate back = parse_certificate(s1);
    CHECK(serialize_certificate(back) == s1);
    CHECK(back.conclusion == cert.conclusion);
    CHECK(back.rank_equation.holds);

    // identical inputs give byte-identical certificates
    certifier::Certificate cert2 = golden_certificate();
    CHECK(serialize_certificate(cert2) == s1);
}

TEST_CASE("randomized certificate round trips") {
    std::mt19937 rng(4242);
    auto rnd_str = [&](const char* pool) {
        std::string s;
        for (int i = 0; i < 6; ++i) s += pool[rng() % 26];
        return s;
    };
    const char* pool = "abcdefghijklmnopqrstuvwxyz";
    for (int iter = 0; iter < 50; ++iter) {
        certifier::Certificate c;
        c.p = long(rng() % 100) + 3;
        c.D = long(rng() % 1000) + 1;
        c.field_name = rnd_str(pool);
        c.e1_label = rnd_str(pool);
        c.e2_label = rnd_str(pool);
        c.e1_model = curves::make_model(long(rng() % 5), long(rng() % 9) - 4, 1, 0,
                                        long(rng() % 100) - 50);
        c.e2_model = c.e1_model;
        c.conductor1 = long(rng() % 100000);
        c.conductor2 = long(rng() % 100000);
        c.sturm.level = long(rng() % 1000);
        c.sturm.index = long(rng() % 100000);
        c.sturm.formula_bound = long(rng() % 10000);
        c.sturm.conservative_bound = long(rng() % 100000);
        c.bound_used = long(rng() % 100000);
        for (int i = 1; i <= 8; ++i) {
            certifier::HypothesisEntry h;
            h.index = i;
            h.name = rnd_str(pool);
            h.status = certifier::HypothesisStatus(rng() % 5);
            for (int k = 0; k < int(rng() % 3); ++k)
                h.evidence.emplace_back(rnd_str(pool), rnd_str(pool));
            c.hypotheses.push_back(h);
        }
        c.congruence_report.p = c.p;
        c.congruence_report.bound = long(rng() % 1000);
        c.congruence_report.pass = (rng() % 2) == 0;
        if (!c.congruence_report.pass) {
            c.congruence_report.first_fail_n = long(rng() % 100) + 1;
            c.congruence_report.fail_a1 = long(rng() % 100) - 50;
            c.congruence_report.fail_a2 = long(rng() % 100) - 50;
        }
        if (rng() % 2) c.congruence_report.strip1.push_back(long(rng() % 50) + 2);
        c.image1.verdict = congruence::ImageVerdict(rng() % 3);
        c.image1.witnesses.push_back(
            congruence::WitnessRecord{rnd_str(pool), long(rng() % 1000), long(rng() % 3),
                                      long(rng() % 3)});
        c.image2.verdict = congruence::ImageVerdict(rng() % 3);
        for (int k = 0; k < int(rng() % 3); ++k) {
            certifier::SigmaRow r;
            r.label = rnd_str(pool);
            r.ell = long(rng() % 100) + 2;
            r.member = rng() % 2;
            r.finitely_decomposed = rng() % 2;
            r.kind1 = "additive";
            r.kodaira1 = "I" + std::to_string(rng() % 9) + "*";
            r.kind2 = "good";
            r.kodaira2 = "I0";
            r.reason1 = rnd_str(pool);
            r.reason2 = rnd_str(pool);
            r.kprime1.push_back(localdata::KprimeRecord{
                rnd_str(pool), localdata::ReductionKind::Additive,
                localdata::KodairaType{localdata::KodairaType::Series::IVstar, 0}});
            r.tamagawa1 = long(rng() % 8) + 1;
            r.tamagawa2 = long(rng() % 8) + 1;
            r.d1 = int(rng() % 3);
            r.d2 = int(rng() % 3);
            r.s_v = long(rng() % 9);
            c.sigma_rows.push_back(r);
        }
        if (rng() % 2) {
            certifier::BrinkRow b;
            b.ell = long(rng() % 100) + 2;
            b.h = long(rng() % 10) + 1;
            b.mu = long(rng() % 3);
            b.nu = long(rng() % 3);
            b.a = long(rng() % 1000) - 500;
            b.b = long(rng() % 1000) - 500;
            b.a_star = long(rng() % 1000) - 500;
            b.b_star = long(rng() % 1000) - 500;
            b.vp_bstar = long(rng() % 5);
            b.t = long(rng() % 5);
            b.s_v = long(rng() % 100) + 1;
            c.brink_rows.push_back(b);
        }
        c.euler.applicable = rng() % 2;
        c.euler.sha_p_part = long(rng() % 27) + 1;
        c.euler.reduction_p_part = long(rng() % 27) + 1;
        c.euler.tamagawa_p_part = long(rng() % 27) + 1;
        c.euler.product = c.euler.sha_p_part * c.euler.reduction_p_part * c.euler.tamagawa_p_part;
        c.lambda.valid = rng() % 2;
        c.lambda.lambda_e1 = long(rng() % 5);
        c.lambda.sigma_sum = long(rng() % 10) - 5;
        c.lambda.lambda_e2 = c.lambda.lambda_e1 + c.lambda.sigma_sum;
        c.lambda.rank_e2_K = long(rng() % 5);
        c.lambda.matches_rank = rng() % 2;
        c.rank_equation.lhs = long(rng() % 5);
        c.rank_equation.rhs = long(rng() % 5);
        c.rank_equation.holds = c.rank_equation.lhs == c.rank_equation.rhs;
        c.conclusion = certifier::Conclusion(rng() % 3);
        if (c.conclusion == certifier::Conclusion::RefutedHypothesis)
            c.refuted_index = int(rng() % 8) + 1;
        c.conclusion_text = rnd_str(pool);
        c.toolchain = rnd_str(pool);

        std::string s1 = serialize_certificate(c);
        CHECK(serialize_certificate(parse_certificate(s1)) == s1);
    }
}

TEST_CASE("fetch: bundled, cache, network, offline") {
    fs::path tmp = fs::temp_directory_path() / "h10-cache-test";
    fs::remove_all(tmp);

    // bundled hit
    FetchOptions opt;
    opt.bundled_dir = bundled_curves();
    opt.cache_dir = (tmp / "cache").string();
    opt.offline = true;
    CurveFixture f = fetch_curve("56b1", opt);
    CHECK(f.source == "bundled");

    // offline with a cold cache: unavailable, never a silent default
    CHECK_THROWS_WITH_AS(fetch_curve("99001a1", opt),
                         "unavailable: offline mode with a cold cache for '99001a1'", MathError);

    // local server in the LMFDB response shape
    httplib::Server srv;
    srv.Get("/api/ec_curvedata/", [](const httplib::Request& req, httplib::Response& res) {
        std::string label = req.get_param_value("Clabel");
        if (label == "99001a1") {
            // 11a1 data under a fake label for the test
            res.set_content(R"({"data":[{"ainvs":[0,-1,1,-10,-20],"conductor":11}]})",
                            "application/json");
        } else {
            res.set_content(R"({"data":[]})", "application/json");
        }
    });
    int port = srv.bind_to_any_port("127.0.0.1");
    REQUIRE(port > 0);
    std::thread server_thread([&] { srv.listen_after_bind(); });
    srv.wait_until_ready();

    FetchOptions net;
    net.base_url = "http://127.0.0.1:" + std::to_string(port);
    net.cache_dir = (tmp / "cache").string();
    CurveFixture fetched = fetch_curve("99001a1", net);
    CHECK(fetched.source == "lmfdb");
    CHECK(fetched.conductor == 11);
    // cache written atomically; re-serving from cache is identical
    fs::path cached = fs::path(net.cache_dir) / "99001a1.json";
    REQUIRE(fs::exists(cached));
    std::string cached_text = read_file(cached.string());
    CHECK(cached_text == serialize_fixture(fetched));

    // unknown labels are "not found"
    CHECK_THROWS_WITH_AS(fetch_curve("nosuchcurve999", net), "not found: nosuchcurve999",
                         MathError);

    srv.stop();
    server_thread.join();

    // the cache now serves the fixture without the network
    FetchOptions cold = net;
    cold.offline = true;
    CurveFixture from_cache = fetch_curve("99001a1", cold);
    CHECK(serialize_fixture(from_cache) == cached_text);

    fs::remove_all(tmp);
}

TEST_CASE("cli exit codes") {
    auto run = [](std::vector<std::string> args) {
        std::vector<const char*> argv{"anticyclo-h10"};
        for (const auto& a : args) argv.push_back(a.c_str());
        return run_cli(int(argv.size()), argv.data());
    };
    fs::path out = fs::temp_directory_path() / "h10-cli-cert.json";

    // malformed flags: usage, exit 64
    CHECK(run({"certify", "--bogus"}) == 64);
    // missing externals file: exit 64
    CHECK(run({"certify", "--p", "3", "--D", "5", "--e1", "56b1", "--e2", "392c1",
               "--externals", "/nonexistent/ex.json", "--out", out.string(), "--offline"}) == 64);
    // decompose golden values
    CHECK(run({"decompose", "--D", "5", "--p", "3", "--ell", "7"}) == 0);
    // full certify at the formula bound: conclusive, exit 0
    std::string externals = std::string(H10_BUNDLED_FIXTURE_DIR) + "/externals/golden.json";
    CHECK(run({"certify", "--p", "3", "--D", "5", "--e1", "56b1", "--e2", "392c1",
               "--externals", externals, "--out", out.string(), "--sturm-bound", "formula",
               "--offline"}) == 0);
    std::string first = read_file(out.string());
    // offline determinism: byte-identical on a second run
    CHECK(run({"certify", "--p", "3", "--D", "5", "--e1", "56b1", "--e2", "392c1",
               "--externals", externals, "--out", out.string(), "--sturm-bound", "formula",
               "--offline"}) == 0);
    CHECK(read_file(out.string()) == first);
    // parses back as a valid conclusive certificate
    certifier::Certificate cert = parse_certificate(first);
    CHECK(cert.conclusion == certifier::Conclusion::NegativeAnswerAllLayers);

    // inconclusive instances exit 2: withhold the Sha entry
    certifier::Externals noSha = parse_externals(read_file(externals));
    noSha.entries.erase("sha_p_part_E1_K");
    fs::path exfile = fs::temp_directory_path() / "h10-nosha.json";
    write_file_atomic(exfile.string(), serialize_externals(noSha));
    CHECK(run({"certify", "--p", "3", "--D", "5", "--e1", "56b1", "--e2", "392c1",
               "--externals", exfile.string(), "--out", out.string(), "--sturm-bound", "formula",
               "--offline"}) == 2);

    // congruence subcommand
    CHECK(run({"congruence", "--e1", "56b1", "--e2", "392c1", "--p", "3", "--bound", "2000",
               "--offline"}) == 0);
    // localdata over K'
    CHECK(run({"localdata", "--curve", "56b1", "--field", "Kprime", "--ell", "2", "--D", "5",
               "--p", "3", "--offline"}) == 0);
    fs::remove(out);
    fs::remove(exfile);
}
