#include <gtest/gtest.h>

#include <sys/wait.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>

#include "json.hpp"

namespace fs = std::filesystem;

namespace {

const fs::path kTool = CHEN_VERIFY_PATH;

class CliTest : public ::testing::Test {
protected:
    void SetUp() override {
        dir_ = fs::temp_directory_path() /
               (std::string("chen_cli_") + ::testing::UnitTest::GetInstance()->current_test_info()->name());
        fs::remove_all(dir_);
        fs::create_directories(dir_);
    }
    void TearDown() override { fs::remove_all(dir_); }

    int run(const std::string& args) const {
        const std::string cmd = kTool.string() + " " + args + " >" + (dir_ / "stdout.txt").string() + " 2>" +
                                (dir_ / "stderr.txt").string();
        const int status = std::system(cmd.c_str());
        return WIFEXITED(status) ? WEXITSTATUS(status) : -1;
    }

    std::string read(const std::string& name) const {
        std::ifstream f(dir_ / name);
        std::stringstream ss;
        ss << f.rdbuf();
        return ss.str();
    }

    std::string out(const std::string& name) const { return (dir_ / name).string(); }

    fs::path dir_;
};

}  // namespace

TEST_F(CliTest, VerifyDefaultPasses) {
    EXPECT_EQ(run("verify --out " + out("r.json")), 0) << read("stderr.txt");
    const auto doc = nlohmann::json::parse(read("r.json"));
    EXPECT_TRUE(doc["overall_pass"].get<bool>());
    EXPECT_EQ(doc["config"]["surface"], "clifford");
    EXPECT_NE(read("stdout.txt").find("PASS improved_equality"), std::string::npos);
}

TEST_F(CliTest, VerifyReferenceAndControls) {
    EXPECT_EQ(run("verify --case rp3 --out " + out("rp3.json")), 0);
    EXPECT_EQ(run("verify --case perturbed --out " + out("p.json")), 1);
    EXPECT_EQ(run("verify --surface latitude_control --out " + out("l.json")), 1);
    const auto doc = nlohmann::json::parse(read("p.json"));
    EXPECT_FALSE(doc["failures"].empty());
    EXPECT_FALSE(doc["pass"]["horizontality"].get<bool>());
}

TEST_F(CliTest, OdeWritesCsvAndSummary) {
    EXPECT_EQ(run("ode --b1 0 --lam2 0.5 --t0 0 --t1 0.5 --ode-step 1e-3 --out " + out("traj.csv")), 0);
    const std::string csv = read("traj.csv");
    EXPECT_EQ(csv.substr(0, csv.find('\n')), "t,b1,lam2,first_integral");
    EXPECT_NE(read("stdout.txt").find("reversal endpoint error"), std::string::npos);
    EXPECT_EQ(run("ode --t1 1"), 3);
    EXPECT_NE(read("stderr.txt").find("stopped early"), std::string::npos);
}

TEST_F(CliTest, BuildWritesRecords) {
    EXPECT_EQ(run("build --grid 2x2x2 --out " + out("b.json")), 0);
    const auto doc = nlohmann::json::parse(read("b.json"));
    EXPECT_EQ(doc["records"].size(), 8u);
    EXPECT_LT(doc["metadata"]["unit_norm_max_deviation"].get<double>(), 1e-12);
}

TEST_F(CliTest, UsageErrors) {
    EXPECT_EQ(run("verify --lam2 0"), 2);
    EXPECT_EQ(run("verify --bogus 1"), 2);
    EXPECT_EQ(run("verify --tol unknown=1"), 2);
    EXPECT_EQ(run("verify --grid 3x3"), 2);
    EXPECT_EQ(run("verify --surface torus"), 2);
    EXPECT_EQ(run(""), 2);
    EXPECT_EQ(run("--help"), 0);
}

TEST_F(CliTest, ToleranceOverrideChangesVerdict) {
    EXPECT_EQ(run("verify --tol equality_gap=1e-30 --out " + out("r.json")), 1);
    EXPECT_EQ(run("verify --tol horizontality=1e-5 --tol structure=1e-3 --out " + out("r.json")), 0);
}

TEST_F(CliTest, ReportTable) {
    ASSERT_EQ(run("verify --out " + out("b.json")), 0);
    ASSERT_EQ(run("verify --surface geodesic_sphere --out " + out("a.json")), 0);
    EXPECT_EQ(run("report " + out("b.json") + " " + out("a.json") + " --out " + out("t.csv")), 0);
    const std::string table = read("stdout.txt");
    EXPECT_LT(table.find("a.json"), table.find("b.json"));
    const std::string csv = read("t.csv");
    EXPECT_EQ(std::count(csv.begin(), csv.end(), '\n'), 3);

    std::ofstream(dir_ / "empty.json").close();
    EXPECT_EQ(run("report " + out("empty.json")), 2);
    EXPECT_NE(read("stderr.txt").find("empty.json"), std::string::npos);
}
