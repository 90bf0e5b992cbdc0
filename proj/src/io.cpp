#define CPPHTTPLIB_OPENSSL_SUPPORT
#include <httplib.h>

#include <CLI11.hpp>
#include <chrono>
#include <filesystem>
#include <fstream>
#include <json.hpp>
#include <mutex>
#include <thread>

#include "h10/io.hpp"

namespace h10::io {

using json = nlohmann::ordered_json;
namespace fs = std::filesystem;

struct UsageError : std::runtime_error {
    explicit UsageError(const std::string& w) : std::runtime_error(w) {}
};

namespace {

std::string istr(const Int& v) { return v.get_str(); }
Int pint(const json& j) { return Int(j.get<std::string>()); }
std::string qstr(const Rat& v) { return Rat(v).get_str(); }
Rat prat(const json& j) {
    Rat r(j.get<std::string>());
    r.canonicalize();
    return r;
}

json local_data_to_json(const std::vector<localdata::ExpectedLocalData>& rows) {
    json arr = json::array();
    for (const auto& r : rows) {
        json o;
        o["ell"] = istr(r.ell);
        o["kind"] = r.kind;
        o["kodaira"] = r.kodaira;
        o["tamagawa"] = istr(r.tamagawa);
        o["v_disc"] = r.v_disc;
        o["conductor_exponent"] = r.conductor_exponent;
        arr.push_back(o);
    }
    return arr;
}

std::vector<localdata::ExpectedLocalData> local_data_from_json(const json& arr) {
    std::vector<localdata::ExpectedLocalData> out;
    for (const auto& o : arr) {
        localdata::ExpectedLocalData r;
        r.ell = pint(o.at("ell"));
        r.kind = o.at("kind").get<std::string>();
        r.kodaira = o.at("kodaira").get<std::string>();
        r.tamagawa = pint(o.at("tamagawa"));
        r.v_disc = o.value("v_disc", -1L);
        r.conductor_exponent = o.value("conductor_exponent", -1L);
        out.push_back(r);
    }
    return out;
}

}  // namespace

// ---------------------------------------------------------------------------
// Curve fixtures

curves::Model fixture_model(const CurveFixture& f) {
    return curves::make_model(Rat(f.ainvs[0]), Rat(f.ainvs[1]), Rat(f.ainvs[2]),
                              Rat(f.ainvs[3]), Rat(f.ainvs[4]));
}

CurveFixture parse_fixture(const std::string& text) {
    json j = json::parse(text);
    CurveFixture f;
    f.schema = j.at("schema").get<std::string>();
    if (f.schema != "h10.curve/1") throw MathError("unsupported fixture schema: " + f.schema);
    f.label = j.at("label").get<std::string>();
    const json& a = j.at("ainvs");
    if (a.size() != 5) throw MathError("fixture needs exactly five a-invariants");
    for (int i = 0; i < 5; ++i) f.ainvs[size_t(i)] = pint(a[size_t(i)]);
    f.conductor = pint(j.at("conductor"));
    f.source = j.value("source", std::string("user"));
    if (j.contains("local_data")) f.local_data = local_data_from_json(j["local_data"]);
    return f;
}

std::string serialize_fixture(const CurveFixture& f) {
    json j;
    j["schema"] = f.schema;
    j["label"] = f.label;
    json a = json::array();
    for (int i = 0; i < 5; ++i) a.push_back(istr(f.ainvs[size_t(i)]));
    j["ainvs"] = a;
    j["conductor"] = istr(f.conductor);
    j["source"] = f.source;
    if (!f.local_data.empty()) j["local_data"] = local_data_to_json(f.local_data);
    return j.dump(2) + "\n";
}

void validate_fixture(const CurveFixture& f) {
    curves::Model m = curves::minimal_model(fixture_model(f));
    curves::HeckeCoefficients h(m);
    if (h.conductor() != f.conductor)
        throw MathError("fixture " + f.label + ": stored conductor " + istr(f.conductor) +
                        " disagrees with the computed conductor " + istr(h.conductor()));
    if (!f.local_data.empty()) localdata::crosscheck_local_data(m, f.local_data);
}

// ---------------------------------------------------------------------------
// Externals

certifier::Externals parse_externals(const std::string& text) {
    json j = json::parse(text);
    if (j.at("schema").get<std::string>() != "h10.externals/1")
        throw MathError("unsupported externals schema");
    certifier::Externals out;
    for (const auto& [name, o] : j.at("entries").items()) {
        certifier::ExternalDatum d;
        d.name = name;
        d.value = pint(o.at("value"));
        d.provenance = certifier::provenance_from_str(o.at("provenance").get<std::string>());
        d.citation = o.value("citation", std::string());
        out.entries.emplace(name, d);
    }
    if (j.contains("nu") && !j["nu"].is_null()) out.nu = j["nu"].get<long>();
    if (j.contains("local_data_overrides"))
        for (const auto& [label, arr] : j["local_data_overrides"].items())
            out.local_overrides.emplace(label, local_data_from_json(arr));
    return out;
}

std::string serialize_externals(const certifier::Externals& e) {
    json j;
    j["schema"] = "h10.externals/1";
    json entries;
    for (const auto& [name, d] : e.entries) {
        json o;
        o["value"] = istr(d.value);
        o["provenance"] = certifier::provenance_str(d.provenance);
        o["citation"] = d.citation;
        entries[name] = o;
    }
    j["entries"] = entries;
    if (e.nu) j["nu"] = *e.nu;
    if (!e.local_overrides.empty()) {
        json o;
        for (const auto& [label, rows] : e.local_overrides) o[label] = local_data_to_json(rows);
        j["local_data_overrides"] = o;
    }
    return j.dump(2) + "\n";
}

// ---------------------------------------------------------------------------
// Certificates

namespace {

json model_to_json(const curves::Model& m) {
    json a = json::array();
    for (int i = 0; i < 5; ++i) a.push_back(qstr(m.a[size_t(i)]));
    return a;
}

curves::Model model_from_json(const json& a) {
    curves::Model m;
    for (int i = 0; i < 5; ++i) m.a[size_t(i)] = prat(a[size_t(i)]);
    return m;
}

json image_to_json(const congruence::ImageEvidence& ev) {
    json o;
    o["verdict"] = congruence::verdict_str(ev.verdict);
    o["obstruction"] = ev.obstruction;
    json ws = json::array();
    for (const auto& w : ev.witnesses) {
        json wo;
        wo["excludes"] = w.excludes;
        wo["ell"] = w.ell;
        wo["trace_mod_p"] = w.trace_mod_p;
        wo["det_mod_p"] = w.det_mod_p;
        ws.push_back(wo);
    }
    o["witnesses"] = ws;
    return o;
}

congruence::ImageEvidence image_from_json(const json& o) {
    congruence::ImageEvidence ev;
    std::string v = o.at("verdict").get<std::string>();
    ev.verdict = v == "surjective"   ? congruence::ImageVerdict::Surjective
                 : v == "obstructed" ? congruence::ImageVerdict::Obstructed
                                     : congruence::ImageVerdict::Undetermined;
    ev.obstruction = o.value("obstruction", std::string());
    for (const auto& wo : o.at("witnesses")) {
        congruence::WitnessRecord w;
        w.excludes = wo.at("excludes").get<std::string>();
        w.ell = wo.at("ell").get<long>();
        w.trace_mod_p = wo.at("trace_mod_p").get<long>();
        w.det_mod_p = wo.at("det_mod_p").get<long>();
        ev.witnesses.push_back(w);
    }
    return ev;
}

json kprime_to_json(const std::vector<localdata::KprimeRecord>& rows) {
    json arr = json::array();
    for (const auto& r : rows) {
        json o;
        o["prime"] = r.label;
        o["kind"] = localdata::kind_str(r.kind);
        o["kodaira"] = r.kodaira.str();
        arr.push_back(o);
    }
    return arr;
}

localdata::ReductionKind kind_from_str(const std::string& s) {
    using RK = localdata::ReductionKind;
    if (s == "good") return RK::Good;
    if (s == "split-multiplicative") return RK::SplitMultiplicative;
    if (s == "nonsplit-multiplicative") return RK::NonsplitMultiplicative;
    if (s == "additive") return RK::Additive;
    throw MathError("unknown reduction kind: " + s);
}

localdata::KodairaType kodaira_from_str(const std::string& s) {
    using KT = localdata::KodairaType;
    KT t;
    if (s == "II") t.series = KT::Series::II;
    else if (s == "II*") t.series = KT::Series::IIstar;
    else if (s == "III") t.series = KT::Series::III;
    else if (s == "III*") t.series = KT::Series::IIIstar;
    else if (s == "IV") t.series = KT::Series::IV;
    else if (s == "IV*") t.series = KT::Series::IVstar;
    else if (s.size() > 1 && s[0] == 'I') {
        bool star = s.back() == '*';
        t.series = star ? KT::Series::Istar : KT::Series::I;
        t.n = std::stol(s.substr(1, s.size() - 1 - (star ? 1 : 0)));
    } else {
        throw MathError("unknown Kodaira type: " + s);
    }
    return t;
}

std::vector<localdata::KprimeRecord> kprime_from_json(const json& arr) {
    std::vector<localdata::KprimeRecord> out;
    for (const auto& o : arr)
        out.push_back(localdata::KprimeRecord{o.at("prime").get<std::string>(),
                                              kind_from_str(o.at("kind").get<std::string>()),
                                              kodaira_from_str(o.at("kodaira").get<std::string>())});
    return out;
}

}  // namespace

std::string serialize_certificate(const certifier::Certificate& c) {
    json j;
    j["schema"] = c.schema;
    {
        json inst;
        inst["p"] = istr(c.p);
        inst["D"] = istr(c.D);
        inst["field"] = c.field_name;
        json e1, e2;
        e1["label"] = c.e1_label;
        e1["ainvs"] = model_to_json(c.e1_model);
        e1["conductor"] = istr(c.conductor1);
        e2["label"] = c.e2_label;
        e2["ainvs"] = model_to_json(c.e2_model);
        e2["conductor"] = istr(c.conductor2);
        inst["e1"] = e1;
        inst["e2"] = e2;
        j["instance"] = inst;
    }
    {
        json hs = json::array();
        for (const auto& h : c.hypotheses) {
            json o;
            o["index"] = h.index;
            o["name"] = h.name;
            o["status"] = certifier::status_str(h.status);
            json ev = json::array();
            for (const auto& [k, v] : h.evidence) ev.push_back(json::array({k, v}));
            o["evidence"] = ev;
            hs.push_back(o);
        }
        j["hypotheses"] = hs;
    }
    {
        json reports;
        json sturm;
        sturm["level"] = istr(c.sturm.level);
        sturm["index"] = istr(c.sturm.index);
        sturm["formula_bound"] = istr(c.sturm.formula_bound);
        sturm["conservative_bound"] = istr(c.sturm.conservative_bound);
        sturm["bound_used"] = c.bound_used;
        reports["sturm"] = sturm;

        json cong;
        cong["p"] = istr(c.congruence_report.p);
        cong["bound"] = c.congruence_report.bound;
        json s1 = json::array(), s2 = json::array();
        for (const auto& v : c.congruence_report.strip1) s1.push_back(istr(v));
        for (const auto& v : c.congruence_report.strip2) s2.push_back(istr(v));
        cong["strip_e1"] = s1;
        cong["strip_e2"] = s2;
        cong["checked"] = c.congruence_report.checked;
        cong["verdict"] = c.congruence_report.pass ? "pass" : "fail";
        if (!c.congruence_report.pass) {
            json ff;
            ff["n"] = c.congruence_report.first_fail_n;
            ff["a_e1"] = istr(c.congruence_report.fail_a1);
            ff["a_e2"] = istr(c.congruence_report.fail_a2);
            cong["first_failure"] = ff;
        } else {
            cong["first_failure"] = nullptr;
        }
        reports["congruence"] = cong;

        reports["residual_image_e1"] = image_to_json(c.image1);
        reports["residual_image_e2"] = image_to_json(c.image2);

        json sigma = json::array();
        for (const auto& r : c.sigma_rows) {
            json o;
            o["prime"] = r.label;
            o["ell"] = istr(r.ell);
            o["member"] = r.member;
            o["finitely_decomposed"] = r.finitely_decomposed;
            o["kind_e1"] = r.kind1;
            o["kodaira_e1"] = r.kodaira1;
            o["kind_e2"] = r.kind2;
            o["kodaira_e2"] = r.kodaira2;
            o["reason_e1"] = r.reason1;
            o["reason_e2"] = r.reason2;
            o["kprime_e1"] = kprime_to_json(r.kprime1);
            o["kprime_e2"] = kprime_to_json(r.kprime2);
            o["tamagawa_e1"] = istr(r.tamagawa1);
            o["tamagawa_e2"] = istr(r.tamagawa2);
            o["d_e1"] = r.d1;
            o["d_e2"] = r.d2;
            o["s_v"] = istr(r.s_v);
            sigma.push_back(o);
        }
        reports["sigma"] = sigma;

        json brink = json::array();
        for (const auto& b : c.brink_rows) {
            json o;
            o["ell"] = istr(b.ell);
            o["h"] = istr(b.h);
            o["mu"] = b.mu;
            o["nu"] = b.nu;
            o["a"] = istr(b.a);
            o["b"] = istr(b.b);
            o["a_star"] = istr(b.a_star);
            o["b_star"] = istr(b.b_star);
            o["v_p_b_star"] = b.vp_bstar;
            o["t"] = b.t;
            o["s_v"] = istr(b.s_v);
            brink.push_back(o);
        }
        reports["decomposition"] = brink;

        json euler;
        euler["applicable"] = c.euler.applicable;
        euler["sha_p_part"] = istr(c.euler.sha_p_part);
        euler["reduction_p_part"] = istr(c.euler.reduction_p_part);
        euler["tamagawa_p_part"] = istr(c.euler.tamagawa_p_part);
        euler["product"] = istr(c.euler.product);
        euler["mu_lambda_zero"] = c.euler.applicable && c.euler.product == 1;
        reports["euler_characteristic"] = euler;

        json lambda;
        lambda["valid"] = c.lambda.valid;
        lambda["lambda_e1"] = c.lambda.lambda_e1;
        lambda["sigma_sum"] = c.lambda.sigma_sum;
        lambda["lambda_e2"] = c.lambda.lambda_e2;
        lambda["rank_e2_K"] = istr(c.lambda.rank_e2_K);
        lambda["matches_rank"] = c.lambda.matches_rank;
        reports["lambda"] = lambda;

        json rank;
        rank["lhs_rank_e2_K"] = istr(c.rank_equation.lhs);
        rank["rhs_sigma_sum"] = istr(c.rank_equation.rhs);
        rank["holds"] = c.rank_equation.holds;
        reports["rank_equation"] = rank;

        j["reports"] = reports;
    }
    j["conclusion"] = certifier::conclusion_str(c);
    j["conclusion_detail"] = c.conclusion_text;
    j["toolchain"] = c.toolchain;
    return j.dump(2) + "\n";
}

certifier::Certificate parse_certificate(const std::string& text) {
    json j = json::parse(text);
    certifier::Certificate c;
    c.schema = j.at("schema").get<std::string>();
    if (c.schema != "h10.certificate/1") throw MathError("unsupported certificate schema");
    const json& inst = j.at("instance");
    c.p = pint(inst.at("p"));
    c.D = pint(inst.at("D"));
    c.field_name = inst.at("field").get<std::string>();
    c.e1_label = inst.at("e1").at("label").get<std::string>();
    c.e1_model = model_from_json(inst.at("e1").at("ainvs"));
    c.conductor1 = pint(inst.at("e1").at("conductor"));
    c.e2_label = inst.at("e2").at("label").get<std::string>();
    c.e2_model = model_from_json(inst.at("e2").at("ainvs"));
    c.conductor2 = pint(inst.at("e2").at("conductor"));

    for (const auto& o : j.at("hypotheses")) {
        certifier::HypothesisEntry h;
        h.index = o.at("index").get<int>();
        h.name = o.at("name").get<std::string>();
        std::string st = o.at("status").get<std::string>();
        using HS = certifier::HypothesisStatus;
        h.status = st == "verified-computed"   ? HS::VerifiedComputed
                   : st == "verified-ingested" ? HS::VerifiedIngested
                   : st == "failed"            ? HS::Failed
                   : st == "unsupported"       ? HS::Unsupported
                                               : HS::Undetermined;
        for (const auto& ev : o.at("evidence"))
            h.evidence.emplace_back(ev[0].get<std::string>(), ev[1].get<std::string>());
        c.hypotheses.push_back(h);
    }

    const json& reports = j.at("reports");
    const json& sturm = reports.at("sturm");
    c.sturm.level = pint(sturm.at("level"));
    c.sturm.index = pint(sturm.at("index"));
    c.sturm.formula_bound = pint(sturm.at("formula_bound"));
    c.sturm.conservative_bound = pint(sturm.at("conservative_bound"));
    c.bound_used = sturm.at("bound_used").get<long>();

    const json& cong = reports.at("congruence");
    c.congruence_report.p = pint(cong.at("p"));
    c.congruence_report.bound = cong.at("bound").get<long>();
    for (const auto& v : cong.at("strip_e1")) c.congruence_report.strip1.push_back(Int(v.get<std::string>()));
    for (const auto& v : cong.at("strip_e2")) c.congruence_report.strip2.push_back(Int(v.get<std::string>()));
    c.congruence_report.checked = cong.at("checked").get<long>();
    c.congruence_report.pass = cong.at("verdict").get<std::string>() == "pass";
    if (!cong.at("first_failure").is_null()) {
        c.congruence_report.first_fail_n = cong.at("first_failure").at("n").get<long>();
        c.congruence_report.fail_a1 = pint(cong.at("first_failure").at("a_e1"));
        c.congruence_report.fail_a2 = pint(cong.at("first_failure").at("a_e2"));
    }
    c.image1 = image_from_json(reports.at("residual_image_e1"));
    c.image2 = image_from_json(reports.at("residual_image_e2"));

    for (const auto& o : reports.at("sigma")) {
        certifier::SigmaRow r;
        r.label = o.at("prime").get<std::string>();
        r.ell = pint(o.at("ell"));
        r.member = o.at("member").get<bool>();
        r.finitely_decomposed = o.at("finitely_decomposed").get<bool>();
        r.kind1 = o.at("kind_e1").get<std::string>();
        r.kodaira1 = o.at("kodaira_e1").get<std::string>();
        r.kind2 = o.at("kind_e2").get<std::string>();
        r.kodaira2 = o.at("kodaira_e2").get<std::string>();
        r.reason1 = o.at("reason_e1").get<std::string>();
        r.reason2 = o.at("reason_e2").get<std::string>();
        r.kprime1 = kprime_from_json(o.at("kprime_e1"));
        r.kprime2 = kprime_from_json(o.at("kprime_e2"));
        r.tamagawa1 = pint(o.at("tamagawa_e1"));
        r.tamagawa2 = pint(o.at("tamagawa_e2"));
        r.d1 = o.at("d_e1").get<int>();
        r.d2 = o.at("d_e2").get<int>();
        r.s_v = pint(o.at("s_v"));
        c.sigma_rows.push_back(r);
    }
    for (const auto& o : reports.at("decomposition")) {
        certifier::BrinkRow b;
        b.ell = pint(o.at("ell"));
        b.h = pint(o.at("h"));
        b.mu = o.at("mu").get<long>();
        b.nu = o.at("nu").get<long>();
        b.a = pint(o.at("a"));
        b.b = pint(o.at("b"));
        b.a_star = pint(o.at("a_star"));
        b.b_star = pint(o.at("b_star"));
        b.vp_bstar = o.at("v_p_b_star").get<long>();
        b.t = o.at("t").get<long>();
        b.s_v = pint(o.at("s_v"));
        c.brink_rows.push_back(b);
    }
    const json& euler = reports.at("euler_characteristic");
    c.euler.applicable = euler.at("applicable").get<bool>();
    c.euler.sha_p_part = pint(euler.at("sha_p_part"));
    c.euler.reduction_p_part = pint(euler.at("reduction_p_part"));
    c.euler.tamagawa_p_part = pint(euler.at("tamagawa_p_part"));
    c.euler.product = pint(euler.at("product"));
    const json& lambda = reports.at("lambda");
    c.lambda.valid = lambda.at("valid").get<bool>();
    c.lambda.lambda_e1 = lambda.at("lambda_e1").get<long>();
    c.lambda.sigma_sum = lambda.at("sigma_sum").get<long>();
    c.lambda.lambda_e2 = lambda.at("lambda_e2").get<long>();
    c.lambda.rank_e2_K = pint(lambda.at("rank_e2_K"));
    c.lambda.matches_rank = lambda.at("matches_rank").get<bool>();
    const json& rank = reports.at("rank_equation");
    c.rank_equation.lhs = pint(rank.at("lhs_rank_e2_K"));
    c.rank_equation.rhs = pint(rank.at("rhs_sigma_sum"));
    c.rank_equation.holds = rank.at("holds").get<bool>();

    std::string concl = j.at("conclusion").get<std::string>();
    if (concl == "negative-answer-all-layers")
        c.conclusion = certifier::Conclusion::NegativeAnswerAllLayers;
    else if (concl.rfind("refuted-hypothesis", 0) == 0) {
        c.conclusion = certifier::Conclusion::RefutedHypothesis;
        c.refuted_index = std::stoi(concl.substr(concl.find('(') + 1));
    } else {
        c.conclusion = certifier::Conclusion::Inconclusive;
    }
    c.conclusion_text = j.at("conclusion_detail").get<std::string>();
    c.toolchain = j.at("toolchain").get<std::string>();
    return c;
}

// ---------------------------------------------------------------------------
// Files and the HTTP client

std::string read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw UsageError("cannot read file: " + path);
    std::string out((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
    return out;
}

void write_file_atomic(const std::string& path, const std::string& content) {
    fs::path target(path);
    if (target.has_parent_path()) fs::create_directories(target.parent_path());
    fs::path tmp = target;
    tmp += ".tmp" + std::to_string(std::chrono::steady_clock::now().time_since_epoch().count());
    {
        std::ofstream out(tmp, std::ios::binary);
        if (!out) throw MathError("cannot write file: " + tmp.string());
        out << content;
    }
    fs::rename(tmp, target);
}

namespace {

// global rate limit for the client: at most one request per second
std::mutex rate_mtx;
std::chrono::steady_clock::time_point last_request;

void rate_limit() {
    std::lock_guard<std::mutex> lock(rate_mtx);
    auto now = std::chrono::steady_clock::now();
    auto min_gap = std::chrono::seconds(1);
    if (last_request.time_since_epoch().count() != 0 && now - last_request < min_gap)
        std::this_thread::sleep_for(min_gap - (now - last_request));
    last_request = std::chrono::steady_clock::now();
}

CurveFixture fixture_from_lmfdb_json(const std::string& label, const std::string& body) {
    json j = json::parse(body);
    if (!j.contains("data") || !j["data"].is_array() || j["data"].empty())
        throw MathError("not found: " + label);
    const json& rec = j["data"][0];
    CurveFixture f;
    f.label = label;
    const json& a = rec.at("ainvs");
    if (a.size() != 5) throw MathError("malformed ainvs for " + label);
    for (int i = 0; i < 5; ++i) {
        if (a[size_t(i)].is_string())
            f.ainvs[size_t(i)] = Int(a[size_t(i)].get<std::string>());
        else
            f.ainvs[size_t(i)] = Int(a[size_t(i)].get<long>());
    }
    if (rec.at("conductor").is_string())
        f.conductor = Int(rec.at("conductor").get<std::string>());
    else
        f.conductor = Int(rec.at("conductor").get<long>());
    f.source = "lmfdb";
    return f;
}

}  // namespace

CurveFixture fetch_curve(const std::string& label, const FetchOptions& opt) {
    if (label.empty() || label.find_first_of("/\\.") != std::string::npos)
        throw MathError("not found: invalid label '" + label + "'");
    if (!opt.bundled_dir.empty()) {
        fs::path p = fs::path(opt.bundled_dir) / (label + ".json");
        if (fs::exists(p)) {
            CurveFixture f = parse_fixture(read_file(p.string()));
            f.source = "bundled";
            return f;
        }
    }
    if (!opt.cache_dir.empty()) {
        fs::path p = fs::path(opt.cache_dir) / (label + ".json");
        if (fs::exists(p)) return parse_fixture(read_file(p.string()));
    }
    if (opt.offline)
        throw MathError("unavailable: offline mode with a cold cache for '" + label + "'");

    rate_limit();
    httplib::Client cli(opt.base_url);
    cli.set_connection_timeout(10);
    cli.set_read_timeout(30);
    std::string path = "/api/ec_curvedata/?Clabel=" + label + "&_format=json";
    auto res = cli.Get(path);
    if (!res)
        throw MathError("unavailable: network failure fetching '" + label + "' from " +
                        opt.base_url);
    if (res->status == 404) throw MathError("not found: " + label);
    if (res->status != 200)
        throw MathError("unavailable: HTTP " + std::to_string(res->status) + " for '" + label +
                        "'");
    CurveFixture f = fixture_from_lmfdb_json(label, res->body);
    validate_fixture(f);
    if (!opt.cache_dir.empty()) {
        fs::path p = fs::path(opt.cache_dir) / (label + ".json");
        write_file_atomic(p.string(), serialize_fixture(f));
    }
    return f;
}

// ---------------------------------------------------------------------------
// CLI

namespace {

std::string default_bundled_dir() {
#ifdef H10_BUNDLED_FIXTURE_DIR
    return std::string(H10_BUNDLED_FIXTURE_DIR) + "/curves";
#else
    return "fixtures/curves";
#endif
}

CurveFixture resolve_curve(const std::string& arg, const FetchOptions& opt) {
    if (fs::exists(arg) && fs::is_regular_file(arg)) {
        CurveFixture f = parse_fixture(read_file(arg));
        validate_fixture(f);
        return f;
    }
    return fetch_curve(arg, opt);
}

long parse_sturm_bound(const std::string& s) {
    if (s == "conservative") return 0;
    if (s == "formula") return -1;
    try {
        size_t used = 0;
        long v = std::stol(s, &used);
        if (used != s.size() || v < 1) throw std::invalid_argument("");
        return v;
    } catch (...) {
        throw UsageError("invalid --sturm-bound value: " + s);
    }
}

void print_certificate_summary(const certifier::Certificate& cert) {
    std::printf("instance: p=%s D=%s e1=%s (N=%s) e2=%s (N=%s)\n", cert.p.get_str().c_str(),
                cert.D.get_str().c_str(), cert.e1_label.c_str(), cert.conductor1.get_str().c_str(),
                cert.e2_label.c_str(), cert.conductor2.get_str().c_str());
    for (const auto& h : cert.hypotheses)
        std::printf("hypothesis %d (%s): %s\n", h.index, h.name.c_str(),
                    certifier::status_str(h.status).c_str());
    std::printf("rank equation: %s = %s: %s\n", cert.rank_equation.lhs.get_str().c_str(),
                cert.rank_equation.rhs.get_str().c_str(),
                cert.rank_equation.holds ? "holds" : "fails");
    if (cert.lambda.valid)
        std::printf("lambda: lambda(E1)=%ld, inferred lambda(E2)=%ld, rank E2(K)=%s (%s)\n",
                    cert.lambda.lambda_e1, cert.lambda.lambda_e2,
                    cert.lambda.rank_e2_K.get_str().c_str(),
                    cert.lambda.matches_rank ? "equal" : "different");
    std::printf("conclusion: %s\n", certifier::conclusion_str(cert).c_str());
}

}  // namespace

int run_cli(int argc, const char* const* argv) {
    CLI::App app{"anticyclo-h10: verification engine for negative answers to Hilbert's tenth "
                 "problem in anticyclotomic towers"};
    app.require_subcommand(1);

    // shared curve-source options
    std::string fixtures_dir = default_bundled_dir();
    std::string cache_dir;
    std::string base_url = "https://www.lmfdb.org";
    bool offline = false;
    auto add_source_opts = [&](CLI::App* sub) {
        sub->add_option("--fixtures", fixtures_dir, "bundled fixture directory");
        sub->add_option("--cache", cache_dir, "fixture cache directory");
        sub->add_option("--base-url", base_url, "curve database base URL");
        sub->add_flag("--offline", offline, "serve fixtures from bundle/cache only");
    };

    // certify
    auto* certify_cmd = app.add_subcommand("certify", "evaluate the full hypothesis list");
    std::string opt_p, opt_D, e1_arg, e2_arg, externals_path, out_path = "certificate.json";
    std::string sturm_choice = "conservative";
    int jobs = 0;
    long torsion_bound = 200, image_bound = 1000;
    certify_cmd->add_option("--p", opt_p, "odd prime, split in K")->required();
    certify_cmd->add_option("--D", opt_D, "squarefree D > 0 with K = Q(sqrt(-D))")->required();
    certify_cmd->add_option("--e1", e1_arg, "rank-zero curve: label or fixture file")->required();
    certify_cmd->add_option("--e2", e2_arg, "positive-rank curve: label or fixture file")->required();
    certify_cmd->add_option("--externals", externals_path, "externals file (ranks, Sha)")->required();
    certify_cmd->add_option("--out", out_path, "certificate output path");
    certify_cmd->add_option("--sturm-bound", sturm_choice,
                            "formula | conservative | explicit integer");
    certify_cmd->add_option("--jobs", jobs, "parallel workers for the coefficient sweep");
    certify_cmd->add_option("--torsion-bound", torsion_bound, "witness search bound");
    certify_cmd->add_option("--image-bound", image_bound, "surjectivity sample bound");
    add_source_opts(certify_cmd);

    // congruence
    auto* cong_cmd = app.add_subcommand("congruence", "run the coefficient congruence sweep");
    cong_cmd->add_option("--e1", e1_arg)->required();
    cong_cmd->add_option("--e2", e2_arg)->required();
    cong_cmd->add_option("--p", opt_p)->required();
    long cong_bound = 0;
    cong_cmd->add_option("--bound", cong_bound, "0 = conservative Sturm bound of the lcm level");
    cong_cmd->add_option("--jobs", jobs);
    add_source_opts(cong_cmd);

    // decompose
    auto* dec_cmd = app.add_subcommand("decompose", "anticyclotomic decomposition of a prime");
    std::string opt_ell;
    long nu_in = -1;
    bool show_depth = false;
    dec_cmd->add_option("--D", opt_D)->required();
    dec_cmd->add_option("--p", opt_p)->required();
    dec_cmd->add_option("--ell", opt_ell)->required();
    dec_cmd->add_option("--nu", nu_in, "overlap index (needed when p | h)");
    dec_cmd->add_flag("--depth", show_depth, "print the per-level splitting table");

    // localdata
    auto* ld_cmd = app.add_subcommand("localdata", "Tate data at primes above ell");
    std::string curve_arg, field_choice = "Q";
    ld_cmd->add_option("--curve", curve_arg)->required();
    ld_cmd->add_option("--field", field_choice, "Q | K | Kprime");
    ld_cmd->add_option("--ell", opt_ell)->required();
    ld_cmd->add_option("--D", opt_D, "required for K and Kprime");
    ld_cmd->add_option("--p", opt_p, "required for Kprime");
    add_source_opts(ld_cmd);

    // fetch
    auto* fetch_cmd = app.add_subcommand("fetch", "fetch a curve fixture by label");
    std::string label_arg;
    fetch_cmd->add_option("--label", label_arg)->required();
    add_source_opts(fetch_cmd);

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return 64;
    }

    FetchOptions fopt{base_url, fixtures_dir, cache_dir, offline};
    try {
        if (certify_cmd->parsed()) {
            CurveFixture f1 = resolve_curve(e1_arg, fopt);
            CurveFixture f2 = resolve_curve(e2_arg, fopt);
            certifier::Externals ext = parse_externals(read_file(externals_path));
            certifier::CertifyOptions copt;
            copt.sturm_bound = parse_sturm_bound(sturm_choice);
            copt.jobs = jobs;
            copt.torsion_search_bound = torsion_bound;
            copt.image_sample_bound = image_bound;
            certifier::Certificate cert =
                certifier::certify(fixture_model(f1), f1.label, fixture_model(f2), f2.label,
                                   Int(opt_D), Int(opt_p), ext, copt);
            write_file_atomic(out_path, serialize_certificate(cert));
            print_certificate_summary(cert);
            std::printf("certificate written to %s\n", out_path.c_str());
            switch (cert.conclusion) {
                case certifier::Conclusion::NegativeAnswerAllLayers: return 0;
                case certifier::Conclusion::Inconclusive: return 2;
                case certifier::Conclusion::RefutedHypothesis: return 1;
            }
        } else if (cong_cmd->parsed()) {
            CurveFixture f1 = resolve_curve(e1_arg, fopt);
            CurveFixture f2 = resolve_curve(e2_arg, fopt);
            curves::HeckeCoefficients h1(curves::minimal_model(fixture_model(f1)));
            curves::HeckeCoefficients h2(curves::minimal_model(fixture_model(f2)));
            Int level = lcm(h1.conductor(), h2.conductor());
            congruence::SturmData sd = congruence::sturm_data(level);
            long bound = cong_bound > 0 ? cong_bound : to_long(sd.conservative_bound);
            auto [s1, s2] = congruence::strip_sets(h1.conductor(), h2.conductor());
            auto rep = congruence::verify_congruence(h1, h2, Int(opt_p), bound, s1, s2, jobs);
            std::printf("level lcm(%s, %s) = %s; sturm index %s; bound %ld\n",
                        h1.conductor().get_str().c_str(), h2.conductor().get_str().c_str(),
                        level.get_str().c_str(), sd.index.get_str().c_str(), bound);
            auto strips = [](const std::vector<Int>& s) {
                std::string out = "{";
                for (size_t i = 0; i < s.size(); ++i) out += (i ? "," : "") + s[i].get_str();
                return out + "}";
            };
            std::printf("strip e1 %s, strip e2 %s\n", strips(s1).c_str(), strips(s2).c_str());
            if (rep.pass) {
                std::printf("verdict: pass (%ld coefficients checked mod %s)\n", rep.checked,
                            opt_p.c_str());
                return 0;
            }
            std::printf("verdict: fail at n=%ld (adjusted a_n: %s vs %s mod %s)\n",
                        rep.first_fail_n, rep.fail_a1.get_str().c_str(),
                        rep.fail_a2.get_str().c_str(), opt_p.c_str());
            return 1;
        } else if (dec_cmd->parsed()) {
            nf::ImagQuadField K((Int(opt_D)));
            Int p(opt_p), ell(opt_ell);
            auto params = anticyclo::make_brink_params(
                K, p, nu_in >= 0 ? std::optional<long>(nu_in) : std::nullopt);
            std::printf("K = %s, h = %s, mu = %ld, nu = %ld\n", K.name().c_str(),
                        params.h.get_str().c_str(), params.mu, params.nu);
            if (!anticyclo::is_finitely_decomposed_ell(ell, K, p)) {
                std::printf("ell = %s is %s in K: infinitely decomposed in the anticyclotomic "
                            "tower\n",
                            ell.get_str().c_str(),
                            K.splitting(ell) == nf::Splitting::Inert ? "inert" : "ramified");
                return 0;
            }
            auto dec = anticyclo::brink_split_depth(ell, K, p, params);
            std::printf("norm equation: %s^%s = %s^2 + %s*%s^2  (a = %s, b = %s)\n",
                        ell.get_str().c_str(), params.h.get_str().c_str(),
                        dec.a.get_str().c_str(), params.Delta.get_str().c_str(),
                        dec.b.get_str().c_str(), dec.a.get_str().c_str(),
                        dec.b.get_str().c_str());
            std::printf("(a + b w)^(p-1) = %s + %s w  (a* = %s, b* = %s), v_p(b*) = %ld\n",
                        dec.a_star.get_str().c_str(), dec.b_star.get_str().c_str(),
                        dec.a_star.get_str().c_str(), dec.b_star.get_str().c_str(),
                        dec.vp_bstar);
            std::printf("t = %ld, s_v = %s\n", dec.t, dec.s_v.get_str().c_str());
            if (show_depth)
                for (long n = 0; n <= dec.t + 2; ++n)
                    std::printf("  level %ld: %s\n", n,
                                anticyclo::splits_at_level(dec, params, n) ? "split" : "inert");
            return 0;
        } else if (ld_cmd->parsed()) {
            CurveFixture f = resolve_curve(curve_arg, fopt);
            curves::Model m = curves::minimal_model(fixture_model(f));
            Int ell(opt_ell);
            auto print_row = [](const localdata::LocalReductionData& d) {
                std::printf("%-8s e=%d f=%d q=%s: %s, kodaira %s, c=%s, v(disc)=%ld, "
                            "conductor exponent %ld, a_v=%s\n",
                            d.prime.label().c_str(), d.prime.ramification_index(),
                            d.prime.residue_degree(), d.q_v.get_str().c_str(),
                            localdata::kind_str(d.kind).c_str(), d.kodaira.str().c_str(),
                            d.tamagawa.get_str().c_str(), d.v_disc_min, d.conductor_exponent,
                            d.a_v.get_str().c_str());
            };
            if (field_choice == "Q") {
                auto Q = nf::Order::rationals();
                auto P = nf::PrimeIdeal::make(Q, ell, {}, ell.get_str());
                print_row(localdata::tate_algorithm(localdata::base_change(m, Q), P));
            } else if (field_choice == "K") {
                if (opt_D.empty()) throw UsageError("--field K needs --D");
                nf::ImagQuadField K((Int(opt_D)));
                for (const auto& P : K.primes_above(ell))
                    print_row(localdata::tate_algorithm(localdata::base_change(m, K.order()), P));
            } else if (field_choice == "Kprime") {
                if (opt_D.empty() || opt_p.empty()) throw UsageError("--field Kprime needs --D and --p");
                nf::ImagQuadField K((Int(opt_D)));
                nf::CompositumField Kp(K, Int(opt_p));
                for (const auto& P : Kp.primes_above(ell))
                    print_row(localdata::tate_algorithm(localdata::base_change(m, Kp.order()), P));
            } else {
                throw UsageError("unknown --field (use Q, K or Kprime)");
            }
            return 0;
        } else if (fetch_cmd->parsed()) {
            CurveFixture f = fetch_curve(label_arg, fopt);
            std::fputs(serialize_fixture(f).c_str(), stdout);
            return 0;
        }
    } catch (const UsageError& e) {
        std::fprintf(stderr, "usage error: %s\n", e.what());
        std::fprintf(stderr, "%s\n", app.help().c_str());
        return 64;
    } catch (const std::exception& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return 1;
    }
    return 64;
}

}  // namespace h10::io
