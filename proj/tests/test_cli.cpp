#include <array>
#include <chrono>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <string>
#include <sys/wait.h>

#include <gtest/gtest.h>
#include <nlohmann/json.hpp>

#include <chachabench/bytes.hpp>

#include "test_util.hpp"

namespace {

struct CliResult {
    int exit_code = -1;
    std::string output; // stdout and stderr interleaved
};

CliResult run_cli(const std::string& args, bool merge_stderr = true) {
    std::string command = std::string(CHACHABENCH_CLI_PATH) + " " + args +
                          (merge_stderr ? " 2>&1" : " 2>/dev/null");
    FILE* pipe = popen(command.c_str(), "r");
    EXPECT_NE(pipe, nullptr);
    CliResult result;
    std::array<char, 4096> buffer;
    std::size_t n;
    while ((n = fread(buffer.data(), 1, buffer.size(), pipe)) > 0) {
        result.output.append(buffer.data(), n);
    }
    int status = pclose(pipe);
    result.exit_code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
    return result;
}

class CliTest : public ::testing::Test {
protected:
    void SetUp() override {
        char tmpl[] = "/tmp/chachabench-cli-XXXXXX";
        ASSERT_NE(mkdtemp(tmpl), nullptr);
        dir_ = tmpl;
    }

    void TearDown() override {
        std::string cleanup = "rm -rf " + dir_;
        ASSERT_EQ(std::system(cleanup.c_str()), 0);
    }

    std::string path(const std::string& name) const { return dir_ + "/" + name; }

    void write_bytes(const std::string& name, chachabench::ByteView data) const {
        std::ofstream out(path(name), std::ios::binary);
        ASSERT_TRUE(out);
        out.write(reinterpret_cast<const char*>(data.data()),
                  static_cast<std::streamsize>(data.size()));
        ASSERT_TRUE(out.flush());
    }

    chachabench::Bytes read_bytes(const std::string& name) const {
        std::ifstream in(path(name), std::ios::binary);
        EXPECT_TRUE(in);
        return chachabench::Bytes((std::istreambuf_iterator<char>(in)),
                                  std::istreambuf_iterator<char>());
    }

    std::string dir_;
};

} // namespace

TEST_F(CliTest, SelftestPassesAndIsDeterministic) {
    CliResult first = run_cli("selftest");
    EXPECT_EQ(first.exit_code, 0);
    EXPECT_NE(first.output.find("ok   aead seal"), std::string::npos);
    EXPECT_EQ(first.output.find("FAIL"), std::string::npos);

    CliResult second = run_cli("selftest");
    EXPECT_EQ(second.output, first.output);
}

TEST_F(CliTest, BenchCsvToFile) {
    CliResult result = run_cli("bench --sizes 28 56 --runs 40 --warmup 4 --format csv --out " +
                               path("report.csv"));
    EXPECT_EQ(result.exit_code, 0);
    EXPECT_NE(result.output.find("selftest: ok"), std::string::npos);

    std::ifstream in(path("report.csv"));
    ASSERT_TRUE(in);
    std::string line;
    std::size_t data_rows = 0;
    bool saw_header = false;
    while (std::getline(in, line)) {
        if (line.rfind("phase,", 0) == 0) {
            saw_header = true;
            EXPECT_EQ(line, "phase,mean_ns,p5_ns,p95_ns,n_valid,n_dropped,payload_bytes,label");
        } else if (!line.empty() && line[0] != '#' && saw_header) {
            data_rows++;
        }
    }
    EXPECT_TRUE(saw_header);
    EXPECT_EQ(data_rows, 8u);
}

TEST_F(CliTest, BenchJsonToStdout) {
    // Without --out the report goes to stdout; diagnostics stay on stderr.
    CliResult result = run_cli("bench --sizes 28 --runs 30 --warmup 2 --format json "
                               "--skip-selftest",
                               false);
    EXPECT_EQ(result.exit_code, 0);

    nlohmann::json doc = nlohmann::json::parse(result.output);
    EXPECT_EQ(doc["schema"], "chachabench-report-v1");
    ASSERT_EQ(doc["campaigns"].size(), 1u);
    EXPECT_EQ(doc["campaigns"][0]["runs"], 30);
    EXPECT_EQ(doc["campaigns"][0]["samples"]["total"], 30);
}

TEST_F(CliTest, SkipSelftestSuppressesTheImplicitCheck) {
    CliResult with = run_cli("bench --sizes 28 --runs 5 --warmup 0 --out " + path("a.csv"));
    EXPECT_EQ(with.exit_code, 0);
    EXPECT_NE(with.output.find("selftest: ok"), std::string::npos);

    CliResult without =
        run_cli("bench --sizes 28 --runs 5 --warmup 0 --skip-selftest --out " + path("b.csv"));
    EXPECT_EQ(without.exit_code, 0);
    EXPECT_EQ(without.output.find("selftest"), std::string::npos);
}

TEST_F(CliTest, BenchCustomBudgetsReplaceDefaults) {
    CliResult result = run_cli("bench --sizes 28 --runs 20 --warmup 0 --skip-selftest "
                               "--format json --budget fast=0.5 --budget slow=2000 --out " +
                               path("report.json"));
    EXPECT_EQ(result.exit_code, 0);
    std::ifstream in(path("report.json"));
    nlohmann::json doc = nlohmann::json::parse(in);
    ASSERT_EQ(doc["campaigns"][0]["budgets"].size(), 2u);
    EXPECT_EQ(doc["campaigns"][0]["budgets"][0]["name"], "fast");
    EXPECT_EQ(doc["campaigns"][0]["budgets"][0]["limit_ns"], 500000);
    EXPECT_EQ(doc["campaigns"][0]["budgets"][1]["name"], "slow");
}

TEST_F(CliTest, BenchRejectsBadBudget) {
    for (const char* bad : {"nolimit", "x=", "=4", "x=0", "x=-2", "x=abc", "x=4q"}) {
        CliResult result =
            run_cli(std::string("bench --skip-selftest --runs 10 --budget ") + bad);
        EXPECT_EQ(result.exit_code, 5) << bad;
        EXPECT_NE(result.output.find("bad --budget"), std::string::npos) << bad;
    }
}

TEST_F(CliTest, BenchUnwritableOutputFailsBeforeCampaigns) {
    auto start = std::chrono::steady_clock::now();
    CliResult result = run_cli("bench --skip-selftest --sizes 224 --runs 50000000 --out " +
                               path("missing-dir") + "/report.csv");
    auto elapsed = std::chrono::steady_clock::now() - start;
    EXPECT_EQ(result.exit_code, 5);
    EXPECT_NE(result.output.find("cannot open output path"), std::string::npos);
    // 50 million runs would take minutes; failing early takes moments.
    EXPECT_LT(std::chrono::duration_cast<std::chrono::seconds>(elapsed).count(), 30);
}

TEST_F(CliTest, SealOpenRoundTrip) {
    std::mt19937_64 rng(81);
    chachabench::Key256 key = chachabench::testutil::random_key(rng);
    write_bytes("key", key);
    chachabench::Bytes message = chachabench::testutil::random_bytes(rng, 224);
    write_bytes("message", message);

    CliResult sealed = run_cli("seal --key " + path("key") + " " + path("message") +
                               " --out " + path("sealed"));
    EXPECT_EQ(sealed.exit_code, 0) << sealed.output;
    EXPECT_EQ(read_bytes("sealed").size(), message.size() + 28);

    CliResult opened = run_cli("open --key " + path("key") + " " + path("sealed") +
                               " --out " + path("recovered"));
    EXPECT_EQ(opened.exit_code, 0) << opened.output;
    EXPECT_EQ(read_bytes("recovered"), message);
}

TEST_F(CliTest, OpenTruncatedFileIsMalformed) {
    std::mt19937_64 rng(82);
    write_bytes("key", chachabench::testutil::random_key(rng));
    write_bytes("short", chachabench::testutil::random_bytes(rng, 20));

    CliResult result = run_cli("open --key " + path("key") + " " + path("short") + " --out " +
                               path("out"));
    EXPECT_EQ(result.exit_code, 3);
    EXPECT_NE(result.output.find("malformed"), std::string::npos);
}

TEST_F(CliTest, OpenTamperedFileFailsAuthentication) {
    std::mt19937_64 rng(83);
    chachabench::Key256 key = chachabench::testutil::random_key(rng);
    write_bytes("key", key);
    write_bytes("message", chachabench::testutil::random_bytes(rng, 56));

    ASSERT_EQ(run_cli("seal --key " + path("key") + " " + path("message") + " --out " +
                      path("sealed"))
                  .exit_code,
              0);

    chachabench::Bytes tampered = read_bytes("sealed");
    tampered[tampered.size() / 2] ^= 0x20;
    write_bytes("sealed", tampered);

    CliResult result = run_cli("open --key " + path("key") + " " + path("sealed") + " --out " +
                               path("out"));
    EXPECT_EQ(result.exit_code, 4);
    EXPECT_NE(result.output.find("authentication failed"), std::string::npos);
}

TEST_F(CliTest, OpenWithWrongKeyFailsAuthentication) {
    std::mt19937_64 rng(84);
    write_bytes("key", chachabench::testutil::random_key(rng));
    write_bytes("other", chachabench::testutil::random_key(rng));
    write_bytes("message", chachabench::testutil::random_bytes(rng, 28));

    ASSERT_EQ(run_cli("seal --key " + path("key") + " " + path("message") + " --out " +
                      path("sealed"))
                  .exit_code,
              0);
    EXPECT_EQ(run_cli("open --key " + path("other") + " " + path("sealed") + " --out " +
                      path("out"))
                  .exit_code,
              4);
}

TEST_F(CliTest, KeyFileMustBeExactly32Bytes) {
    std::mt19937_64 rng(85);
    write_bytes("short-key", chachabench::testutil::random_bytes(rng, 31));
    write_bytes("long-key", chachabench::testutil::random_bytes(rng, 33));
    write_bytes("message", chachabench::testutil::random_bytes(rng, 10));

    for (const char* key : {"short-key", "long-key", "missing-key"}) {
        CliResult result = run_cli("seal --key " + path(key) + " " + path("message") +
                                   " --out " + path("sealed"));
        EXPECT_EQ(result.exit_code, 6) << key;
        EXPECT_NE(result.output.find("invalid key file"), std::string::npos) << key;
    }
    EXPECT_EQ(run_cli("open --key " + path("short-key") + " " + path("message") + " --out " +
                      path("out"))
                  .exit_code,
              6);
}

TEST_F(CliTest, MissingInputIsAnEnvironmentError) {
    std::mt19937_64 rng(86);
    write_bytes("key", chachabench::testutil::random_key(rng));
    CliResult result = run_cli("seal --key " + path("key") + " " + path("no-such-file") +
                               " --out " + path("sealed"));
    EXPECT_EQ(result.exit_code, 5);
    EXPECT_NE(result.output.find("cannot read input"), std::string::npos);
}

TEST_F(CliTest, UsageErrors) {
    EXPECT_NE(run_cli("").exit_code, 0);
    EXPECT_NE(run_cli("frobnicate").exit_code, 0);
    EXPECT_NE(run_cli("bench --format yaml").exit_code, 0);
    EXPECT_NE(run_cli("bench --runs 0").exit_code, 0);
    EXPECT_EQ(run_cli("--help").exit_code, 0);
}
