#include <gtest/gtest.h>

#include <cstdlib>
#include <fstream>
#include <sstream>

#include "pcf/cli/cli.hpp"

namespace {

struct CliRun {
    int code;
    std::string out, err;
};

CliRun run(const std::vector<std::string>& args) {
    std::vector<const char*> argv{"pcf"};
    for (const auto& a : args) argv.push_back(a.c_str());
    std::ostringstream out, err;
    const int code = pcf::cli::run(static_cast<int>(argv.size()), argv.data(), out, err);
    return {code, out.str(), err.str()};
}

std::string golden_path(const std::string& name) { return std::string(PCF_GOLDEN_DIR) + "/" + name; }

std::string slurp(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    std::ostringstream s;
    s << in.rdbuf();
    return s.str();
}

struct Fixture {
    std::string name;
    std::vector<std::string> args;
    int code;
};

const std::vector<Fixture>& fixtures() {
    static const std::vector<Fixture> f{
        {"gleason_2_3.json", {"gleason", "--d", "2", "--n", "3"}, 0},
        {"gleason_2_3.txt", {"gleason", "--d", "2", "--n", "3", "--format", "text"}, 0},
        {"misiurewicz_3_2_1.json", {"misiurewicz", "--d", "3", "--m", "2", "--n", "1"}, 0},
        {"orbit_2_g3.json", {"orbit", "--d", "2", "--gleason-n", "3", "--k", "4"}, 0},
        {"exact_type_2_m22.json", {"exact-type", "--d", "2", "--misiurewicz", "2,2"}, 0},
        {"exact_type_file.json", {"exact-type", "--d", "3", "--field", golden_path("field_qi.json")}, 0},
        {"factor_2_g2_k3.json", {"factor", "--d", "2", "--gleason-n", "2", "--k", "3", "--verify"}, 0},
        {"verify_factor_3_g2_k3.json", {"verify-factor", "--d", "3", "--gleason-n", "2", "--k", "3"}, 0},
        {"stability_2_m21.json", {"stability-cert", "--d", "2", "--misiurewicz", "2,1", "--alpha", "4", "--kmax", "12"}, 0},
        {"stability_3_qi.json", {"stability-cert", "--d", "3", "--g", "c^2 + 1", "--alpha", "3", "--kmax", "6"}, 0},
        {"stability_3_qi.txt",
         {"stability-cert", "--d", "3", "--g", "c^2 + 1", "--alpha", "3", "--kmax", "6", "--format", "text"}, 0},
        {"f_irred_2_g3.json", {"f-irred-cert", "--d", "2", "--gleason-n", "3", "--k", "2", "--i", "1"}, 0},
        {"f_irred_2_g3_fallback.json",
         {"f-irred-cert", "--d", "2", "--gleason-n", "3", "--k", "2", "--i", "1", "--fallback"}, 0},
        {"disc_check_3_qi.json", {"disc-check", "--d", "3", "--g", "c^2 + 1", "--alpha", "3", "--k", "3"}, 0},
        {"ideal_audit_3_quartic.json", {"ideal-audit", "--d", "3", "--g", "c^4 + 3c^2 + 3", "--i", "1"}, 0},
        {"nonabelian_periodic_1.json",
         {"nonabelian-cert", "--case", "periodic-1", "--d", "2", "--gleason-n", "3", "--alpha", "2"}, 0},
        {"nonabelian_periodic_2.json", {"nonabelian-cert", "--case", "periodic-2", "--d", "2", "--gleason-n", "3"}, 0},
        {"nonabelian_periodic_3.json",
         {"nonabelian-cert", "--case", "periodic-3", "--d", "3", "--gleason-n", "2", "--alpha", "3"}, 0},
        {"nonabelian_periodic_4.json", {"nonabelian-cert", "--case", "periodic-4", "--d", "3", "--gleason-n", "2"}, 2},
        {"nonabelian_preperiodic_2.json",
         {"nonabelian-cert", "--case", "preperiodic-2", "--d", "3", "--misiurewicz", "2,1", "--alpha", "c^2"}, 2},
    };
    return f;
}

}  // namespace

TEST(Cli, GoldenFixtures) {
    const bool update = std::getenv("PCF_UPDATE_GOLDEN") != nullptr;
    for (const auto& f : fixtures()) {
        const CliRun r = run(f.args);
        EXPECT_EQ(r.code, f.code) << f.name << ": " << r.err;
        EXPECT_TRUE(r.err.empty()) << f.name << ": " << r.err;
        if (update) {
            std::ofstream(golden_path(f.name), std::ios::binary) << r.out;
            continue;
        }
        EXPECT_EQ(r.out, slurp(golden_path(f.name))) << f.name;
    }
}

TEST(Cli, Deterministic) {
    for (const auto& f : fixtures()) {
        auto args = f.args;
        args.insert(args.end(), {"--seed", "42"});
        const CliRun a = run(args), b = run(args);
        EXPECT_EQ(a.out, b.out) << f.name;
        EXPECT_EQ(a.code, b.code) << f.name;
    }
}

TEST(Cli, ErrorExitCodesLeaveStdoutEmpty) {
    const std::vector<std::pair<std::vector<std::string>, int>> cases{
        {{}, 3},
        {{"bogus"}, 3},
        {{"gleason", "--d", "4", "--n", "2"}, 3},
        {{"gleason", "--d", "2"}, 3},
        {{"orbit", "--d", "2"}, 3},
        {{"orbit", "--d", "2", "--gleason-n", "2", "--g", "c + 1"}, 3},
        {{"exact-type", "--d", "2", "--g", "c^2 - 1"}, 3},
        {{"exact-type", "--d", "2", "--field", "/nonexistent/field.json"}, 3},
        {{"stability-cert", "--d", "2", "--g", "c + 1", "--alpha", "1", "--kmax", "3"}, 3},
        {{"stability-cert", "--d", "2", "--g", "c + 1", "--alpha", "1/", "--kmax", "3"}, 3},
        {{"nonabelian-cert", "--case", "periodic-9", "--d", "2", "--gleason-n", "3"}, 3},
        {{"nonabelian-cert", "--case", "preperiodic-1", "--d", "2", "--misiurewicz", "2,3", "--alpha", "4"}, 4},
        {{"factor", "--d", "2", "--gleason-n", "2", "--k", "5", "--budget", "16"}, 4},
        {{"factor", "--d", "2", "--misiurewicz", "2,1", "--k", "2"}, 3},
        {{"gleason", "--d", "2", "--n", "3", "--format", "yaml"}, 3},
    };
    for (const auto& [args, code] : cases) {
        const CliRun r = run(args);
        std::string joined;
        for (const auto& a : args) joined += a + " ";
        EXPECT_EQ(r.code, code) << joined << r.err;
        EXPECT_TRUE(r.out.empty()) << joined;
        EXPECT_FALSE(r.err.empty()) << joined;
    }
}

TEST(Cli, UnsupportedReasonIsClear) {
    const CliRun r = run({"nonabelian-cert", "--case", "preperiodic-1", "--d", "2", "--misiurewicz", "2,3", "--alpha", "4"});
    EXPECT_EQ(r.code, 4);
    EXPECT_NE(r.err.find("Unsupported"), std::string::npos);
    EXPECT_NE(r.err.find("no shift of g is Eisenstein"), std::string::npos);
}

TEST(Cli, DocumentedExamples) {
    EXPECT_EQ(run({"gleason", "--d", "2", "--n", "3", "--format", "text"}).out, "c^3 + 2*c^2 + c + 1\n");
    const CliRun f = run({"factor", "--d", "2", "--gleason-n", "2", "--k", "3", "--verify"});
    EXPECT_EQ(f.code, 0);
    const auto j = pcf::json::parse(f.out);
    EXPECT_EQ(j["factorization"]["count"], 3);
    EXPECT_EQ(j["certificate"]["verdict"], "Verified");
    const CliRun s = run({"stability-cert", "--d", "2", "--misiurewicz", "2,1", "--alpha", "4", "--kmax", "12"});
    EXPECT_EQ(s.code, 0);
    EXPECT_EQ(pcf::json::parse(s.out)["verdict"], "Verified");
}
