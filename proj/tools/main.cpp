// chachabench: reference-vector selftest, phase-timed benchmark campaigns,
// and file seal/open utilities over the ChaCha20-Poly1305 envelope.
//
// Exit codes:
//   0  success
//   2  selftest failure (reference vector mismatch)
//   3  malformed message (sealed input shorter than the minimum envelope)
//   4  authentication failure (tag mismatch: corruption or wrong key)
//   5  environment error (entropy source, unreadable input, unwritable output)
//   6  invalid key file (length is not exactly 32 bytes, or unreadable)
// Argument errors exit with the CLI parser's own nonzero codes.

#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include <chachabench/chachabench.hpp>

namespace {

constexpr int exit_ok = 0;
constexpr int exit_selftest_failed = 2;
constexpr int exit_malformed = 3;
constexpr int exit_auth_failed = 4;
constexpr int exit_environment = 5;
constexpr int exit_bad_key_file = 6;

std::optional<chachabench::Bytes> read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) {
        return std::nullopt;
    }
    chachabench::Bytes data((std::istreambuf_iterator<char>(in)),
                            std::istreambuf_iterator<char>());
    if (in.bad()) {
        return std::nullopt;
    }
    return data;
}

bool write_file(const std::string& path, chachabench::ByteView data) {
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out) {
        return false;
    }
    out.write(reinterpret_cast<const char*>(data.data()),
              static_cast<std::streamsize>(data.size()));
    return static_cast<bool>(out.flush());
}

// Key files hold exactly 32 raw bytes; any other length is refused.
std::optional<chachabench::Key256> read_key_file(const std::string& path) {
    auto data = read_file(path);
    if (!data || data->size() != 32) {
        return std::nullopt;
    }
    chachabench::Key256 key{};
    std::copy(data->begin(), data->end(), key.begin());
    return key;
}

int cmd_selftest() {
    return chachabench::run_selftest(&std::cout) ? exit_ok : exit_selftest_failed;
}

// "GOOSE=4" -> {GOOSE, 4 ms}; the limit is in milliseconds, decimals allowed.
std::optional<chachabench::bench::BudgetSpec> parse_budget(const std::string& text) {
    std::size_t eq = text.rfind('=');
    if (eq == std::string::npos || eq == 0 || eq + 1 >= text.size()) {
        return std::nullopt;
    }
    double limit_ms = 0.0;
    try {
        std::size_t consumed = 0;
        limit_ms = std::stod(text.substr(eq + 1), &consumed);
        if (consumed != text.size() - eq - 1) {
            return std::nullopt;
        }
    } catch (const std::exception&) {
        return std::nullopt;
    }
    if (!(limit_ms > 0.0)) {
        return std::nullopt;
    }
    chachabench::bench::BudgetSpec spec;
    spec.name = text.substr(0, eq);
    spec.limit_ns = static_cast<std::int64_t>(limit_ms * 1'000'000.0);
    return spec;
}

int cmd_bench(const chachabench::bench::CampaignGrid& grid, const std::string& format,
              const std::string& out_path, bool skip_selftest) {
    if (!skip_selftest) {
        std::ostringstream log;
        if (!chachabench::run_selftest(&log)) {
            std::cerr << log.str();
            std::cerr << "selftest failed; refusing to benchmark a broken build\n";
            return exit_selftest_failed;
        }
        std::cerr << "selftest: ok\n";
    }

    // The output path must be writable before any campaign starts.
    std::ofstream out_file;
    if (!out_path.empty()) {
        out_file.open(out_path, std::ios::trunc);
        if (!out_file) {
            std::cerr << "cannot open output path: " << out_path << '\n';
            return exit_environment;
        }
    }
    std::ostream& out = out_path.empty() ? std::cout : out_file;

    chachabench::SystemEntropy entropy;
    chachabench::bench::BenchReport report =
        chachabench::bench::run_grid(grid, entropy, &std::cerr);

    if (format == "json") {
        chachabench::bench::write_json(report, out);
    } else {
        chachabench::bench::write_csv(report, out);
    }
    if (!out.flush()) {
        std::cerr << "failed writing report\n";
        return exit_environment;
    }
    return report.partial ? exit_environment : exit_ok;
}

int cmd_seal(const std::string& key_path, const std::string& in_path,
             const std::string& out_path) {
    auto key = read_key_file(key_path);
    if (!key) {
        std::cerr << "invalid key file (need exactly 32 raw bytes): " << key_path << '\n';
        return exit_bad_key_file;
    }
    auto plaintext = read_file(in_path);
    if (!plaintext) {
        std::cerr << "cannot read input: " << in_path << '\n';
        return exit_environment;
    }
    chachabench::Bytes sealed;
    try {
        chachabench::SystemEntropy entropy;
        sealed = chachabench::seal(*key, *plaintext, {}, entropy);
    } catch (const chachabench::EntropyError& e) {
        std::cerr << "entropy source unavailable: " << e.what() << '\n';
        return exit_environment;
    }
    if (!write_file(out_path, sealed)) {
        std::cerr << "cannot write output: " << out_path << '\n';
        return exit_environment;
    }
    return exit_ok;
}

int cmd_open(const std::string& key_path, const std::string& in_path,
             const std::string& out_path) {
    auto key = read_key_file(key_path);
    if (!key) {
        std::cerr << "invalid key file (need exactly 32 raw bytes): " << key_path << '\n';
        return exit_bad_key_file;
    }
    auto sealed = read_file(in_path);
    if (!sealed) {
        std::cerr << "cannot read input: " << in_path << '\n';
        return exit_environment;
    }
    chachabench::OpenResult opened = chachabench::open(*key, *sealed);
    if (opened.status == chachabench::OpenStatus::malformed) {
        std::cerr << "malformed message: shorter than the 28-byte minimum envelope\n";
        return exit_malformed;
    }
    if (opened.status == chachabench::OpenStatus::auth_failed) {
        std::cerr << "authentication failed: message corrupted or wrong key\n";
        return exit_auth_failed;
    }
    if (!write_file(out_path, opened.plaintext)) {
        std::cerr << "cannot write output: " << out_path << '\n';
        return exit_environment;
    }
    return exit_ok;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{
        "ChaCha20-Poly1305 envelope tool and phase-timed latency benchmark.\n"
        "Exit codes: 0 ok, 2 selftest failure, 3 malformed message,\n"
        "4 authentication failure, 5 environment error, 6 invalid key file."};
    app.require_subcommand(1);

    app.add_subcommand("selftest", "Run the embedded RFC 8439 reference vectors");

    auto* bench = app.add_subcommand("bench", "Run phase-timed benchmark campaigns");
    chachabench::bench::CampaignGrid grid;
    std::vector<std::string> budget_args;
    std::string format = "csv";
    std::string out_path;
    bool skip_selftest = false;
    bench->add_option("--sizes", grid.sizes, "Payload sizes in bytes")
        ->expected(-1)
        ->capture_default_str();
    bench->add_option("--runs", grid.runs, "Timed iterations per campaign")
        ->check(CLI::PositiveNumber)
        ->capture_default_str();
    bench->add_option("--warmup", grid.warmup, "Untimed warmup iterations per campaign")
        ->capture_default_str();
    bench->add_option("--budget", budget_args,
                      "Latency budget as name=limit_ms (repeatable; replaces the "
                      "default GOOSE=4, \"IEC 60834-1\"=10, SCADA=1000)");
    bench->add_option("--format", format, "Report format")
        ->check(CLI::IsMember({"csv", "json"}))
        ->capture_default_str();
    bench->add_option("--out", out_path, "Report path (stdout when omitted)");
    bench->add_flag("--skip-selftest", skip_selftest,
                    "Skip the implicit reference-vector selftest");

    auto* seal = app.add_subcommand("seal", "Seal a file into an envelope");
    std::string seal_key, seal_in, seal_out;
    seal->add_option("--key", seal_key, "Key file, exactly 32 raw bytes")->required();
    seal->add_option("input", seal_in, "Plaintext file")->required();
    seal->add_option("--out", seal_out, "Sealed output file")->required();

    auto* open_cmd = app.add_subcommand("open", "Open a sealed envelope file");
    std::string open_key, open_in, open_out;
    open_cmd->add_option("--key", open_key, "Key file, exactly 32 raw bytes")->required();
    open_cmd->add_option("input", open_in, "Sealed file")->required();
    open_cmd->add_option("--out", open_out, "Recovered plaintext file")->required();

    CLI11_PARSE(app, argc, argv);

    if (app.got_subcommand("selftest")) {
        return cmd_selftest();
    }
    if (app.got_subcommand("bench")) {
        if (grid.sizes.empty()) {
            std::cerr << "at least one payload size is required\n";
            return exit_environment;
        }
        if (!budget_args.empty()) {
            grid.budgets.clear();
            for (const std::string& text : budget_args) {
                auto spec = parse_budget(text);
                if (!spec) {
                    std::cerr << "bad --budget (want name=limit_ms with limit > 0): " << text
                              << '\n';
                    return exit_environment;
                }
                grid.budgets.push_back(std::move(*spec));
            }
        }
        return cmd_bench(grid, format, out_path, skip_selftest);
    }
    if (app.got_subcommand("seal")) {
        return cmd_seal(seal_key, seal_in, seal_out);
    }
    return cmd_open(open_key, open_in, open_out);
}
