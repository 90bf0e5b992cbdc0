#ifndef H10_IO_HPP
#define H10_IO_HPP

#include "h10/certifier.hpp"

// File formats (curve fixtures, externals, certificates — versioned
// structured text with integers as decimal strings), the cached LMFDB-style
// HTTP client, and the command-line interface.

namespace h10::io {

struct CurveFixture {
    std::string schema = "h10.curve/1";
    std::string label;
    std::array<Int, 5> ainvs{};
    Int conductor = 0;
    std::string source = "user";  // bundled | lmfdb | user
    std::vector<localdata::ExpectedLocalData> local_data;
};

curves::Model fixture_model(const CurveFixture& f);
CurveFixture parse_fixture(const std::string& json_text);
std::string serialize_fixture(const CurveFixture& f);
// conductor must match the computed bad-prime support; bundled local data is
// cross-checked against Tate's algorithm
void validate_fixture(const CurveFixture& f);

certifier::Externals parse_externals(const std::string& json_text);
std::string serialize_externals(const certifier::Externals& e);

std::string serialize_certificate(const certifier::Certificate& c);
certifier::Certificate parse_certificate(const std::string& json_text);

// --------------------------------------------------------------------------

struct FetchOptions {
    std::string base_url = "https://www.lmfdb.org";
    std::string bundled_dir;  // searched first
    std::string cache_dir;    // read/write cache, atomic writes
    bool offline = false;
};

// Resolution order: bundled fixture, cache, network (unless offline).
// Unknown labels raise "not found"; network failure with a cold cache raises
// "unavailable" — never a silent default.
CurveFixture fetch_curve(const std::string& label, const FetchOptions& opt);

std::string read_file(const std::string& path);
void write_file_atomic(const std::string& path, const std::string& content);

int run_cli(int argc, const char* const* argv);

}  // namespace h10::io

#endif
