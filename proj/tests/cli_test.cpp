#include <cstdlib>
#include <fstream>
#include <sstream>
#include <string>

#include <gtest/gtest.h>
#include <sys/wait.h>

#include "json.hpp"

namespace {

const std::string cli = GNT_CLI_PATH;
const std::string configs = GNT_CONFIG_DIR;
const std::string scratch = GNT_SCRATCH_DIR;

int run(const std::string& args) {
    const int status = std::system((cli + " " + args + " >/dev/null 2>&1").c_str());
    return WIFEXITED(status) ? WEXITSTATUS(status) : -1;
}

std::string slurp(const std::string& path) {
    std::ifstream in(path);
    std::stringstream s;
    s << in.rdbuf();
    return s.str();
}

nlohmann::ordered_json report(const std::string& path) {
    auto j = nlohmann::ordered_json::parse(slurp(path));
    j.erase("metadata");
    return j;
}

void write(const std::string& path, const std::string& text) { std::ofstream(path) << text; }

}  // namespace

TEST(Cli, ShippedConfigsPass) {
    for (const char* name : {"identities_classical", "sigma_diag", "sigma_identity", "functional_torus",
                             "functional_sphere", "variation_sphere", "variation_torus", "variation_clifford",
                             "minimality_clifford", "minimality_torus"}) {
        std::string command = name;
        command = command.substr(0, command.find('_'));
        EXPECT_EQ(run(command + " --config " + configs + "/" + name + ".json --out " + scratch + "/out.json"), 0)
            << name;
    }
}

TEST(Cli, ExitCodes) {
    write(scratch + "/bad.json", "{\"q\": ");
    EXPECT_EQ(run("identities --config " + scratch + "/bad.json"), 2);
    write(scratch + "/unknown.json", "{\"trials\": 3, \"colour\": 1}");
    EXPECT_EQ(run("identities --config " + scratch + "/unknown.json"), 2);
    EXPECT_EQ(run("identities --reading sideways"), 2);
    EXPECT_EQ(run("sigma --config " + configs + "/sigma_diag.json --seed 3"), 2);
    EXPECT_EQ(run(""), 2);
    // the literal reading disagrees with finite differences on the flat torus
    EXPECT_EQ(run("variation --config " + configs + "/variation_torus.json --reading literal"), 1);
    write(scratch + "/wrong.json", "{\"matrices\": [[[2]]], \"expected\": [{\"u\": [1], \"value\": 3}]}");
    EXPECT_EQ(run("sigma --config " + scratch + "/wrong.json"), 1);
}

TEST(Cli, DeterministicReports) {
    const std::string a = scratch + "/a.json", b = scratch + "/b.json";
    const std::string args = "identities --config " + configs + "/identities.json --seed 5 --out ";
    ASSERT_EQ(run(args + a), 0);
    ASSERT_EQ(run(args + b), 0);
    EXPECT_EQ(report(a).dump(), report(b).dump());
    EXPECT_EQ(report(a)["config"]["seed"], 5);

    const std::string va = scratch + "/va.json", vb = scratch + "/vb.json", csv = scratch + "/v.csv";
    ASSERT_EQ(run("variation --config " + configs + "/variation_clifford.json --out " + va + " --csv " + csv), 0);
    ASSERT_EQ(run("variation --config " + configs + "/variation_clifford.json --out " + vb), 0);
    EXPECT_EQ(report(va).dump(), report(vb).dump());
    EXPECT_EQ(slurp(csv).rfind("step,central_difference,extrapolated", 0), 0u);
}
