#include <cstdio>
#include <filesystem>
#include <unistd.h>

#include "doctest.h"
#include "support/cli_runner.hpp"

namespace fs = std::filesystem;

namespace {

struct TempDir {
    fs::path path;
    TempDir() {
        path = fs::temp_directory_path() / ("patmap_cli_test_" + std::to_string(::getpid()));
        fs::create_directories(path);
    }
    ~TempDir() { std::error_code ec; fs::remove_all(path, ec); }
    std::string file(const std::string& name) const { return (path / name).string(); }
};

} // namespace

TEST_CASE("cli: gen -> classify -> simulate -> metrics pipeline" * doctest::skip(!clirun::cli_path())) {
    TempDir dir;
    const std::string trace = dir.file("p2.trace");

    auto gen = clirun::run("gen --pattern P2 --count 20000 --out " + trace);
    CHECK(gen.exit_code == 0);

    auto classify = clirun::run("classify " + trace + " --window-len 0");
    CHECK(classify.exit_code == 0);
    CHECK(classify.out.find("P2") != std::string::npos);
    CHECK(classify.out.find("MIX:,") != std::string::npos);

    const std::string counters = dir.file("counters.csv");
    auto sim = clirun::run("simulate " + trace + " --out " + counters);
    CHECK(sim.exit_code == 0);
    CHECK(clirun::slurp(counters).find("l1_hits,") != std::string::npos);

    auto metrics = clirun::run("metrics " + counters);
    CHECK(metrics.exit_code == 0);
    CHECK(metrics.out.find("ral,") != std::string::npos);
    CHECK(metrics.out.find("prefetch_request_ratio,") != std::string::npos);
}

TEST_CASE("cli: binary format round-trips through the pipeline" * doctest::skip(!clirun::cli_path())) {
    TempDir dir;
    const std::string trace = dir.file("p1.bin");
    auto gen = clirun::run("gen --pattern P1 --count 5000 --format binary --out " + trace);
    CHECK(gen.exit_code == 0);
    const std::string bytes = clirun::slurp(trace);
    REQUIRE(bytes.size() >= 4);
    CHECK(bytes.substr(0, 4) == "GPTR");
    auto classify = clirun::run("classify " + trace + " --window-len 0");
    CHECK(classify.exit_code == 0);
    CHECK(classify.out.find("P1") != std::string::npos);
}

TEST_CASE("cli: parameter errors exit 2 with a one-line error" * doctest::skip(!clirun::cli_path())) {
    auto r = clirun::run("gen --pattern P9");
    CHECK(r.exit_code == 2);
    CHECK(r.out.rfind("error: parameter:", 0) == 0);
    CHECK(r.out.find('\n') == r.out.size() - 1);

    auto unknown = clirun::run("gen --no-such-flag");
    CHECK(unknown.exit_code == 2);
    CHECK(unknown.out.rfind("error: parameter:", 0) == 0);

    // generator constraint violations are parameter errors too
    auto stride = clirun::run("gen --pattern P2 --stride 4096");
    CHECK(stride.exit_code == 2);
}

TEST_CASE("cli: malformed inputs exit 3 with a one-line error" * doctest::skip(!clirun::cli_path())) {
    TempDir dir;
    const std::string bad = dir.file("bad.trace");
    clirun::spit(bad, "0,zz,R,8\n");
    auto r = clirun::run("classify " + bad);
    CHECK(r.exit_code == 3);
    CHECK(r.out.rfind("error: input-format:", 0) == 0);
    CHECK(r.out.find('\n') == r.out.size() - 1);

    auto missing = clirun::run("simulate /nonexistent/file.trace");
    CHECK(missing.exit_code == 3);

    // structurally valid lines but broken seq numbering
    const std::string badseq = dir.file("badseq.trace");
    clirun::spit(badseq, "5,10,R,8\n6,20,R,8\n");
    auto seq = clirun::run("simulate " + badseq);
    CHECK(seq.exit_code == 3);
    CHECK(seq.out.rfind("error: input-format:", 0) == 0);
}

TEST_CASE("cli: advise consumes classify output" * doctest::skip(!clirun::cli_path())) {
    TempDir dir;
    const std::string trace = dir.file("p4.trace");
    CHECK(clirun::run("gen --pattern P4 --count 20000 --out " + trace).exit_code == 0);
    const std::string report = dir.file("classify.csv");
    CHECK(clirun::run("classify " + trace + " --window-len 0 --out " + report).exit_code == 0);
    auto advise = clirun::run("advise " + report);
    CHECK(advise.exit_code == 0);
    CHECK(advise.out.find("P4,1,close,fine,L1,off,1") != std::string::npos);
}

TEST_CASE("cli: config file overrides defaults" * doctest::skip(!clirun::cli_path())) {
    TempDir dir;
    const std::string cfg = dir.file("cfg.ini");
    clirun::spit(cfg, "# tiny hierarchy\nsim.l1.capacity=4096\nsim.l2.capacity=8192\n"
                      "sim.l3.capacity=16384\nsim.prefetch_enabled=false\n");
    const std::string trace = dir.file("t.trace");
    CHECK(clirun::run("gen --pattern P1 --count 2000 --out " + trace).exit_code == 0);
    const std::string counters = dir.file("c.csv");
    CHECK(clirun::run("simulate " + trace + " --config " + cfg + " --out " + counters).exit_code ==
          0);
    CHECK(clirun::slurp(counters).find("l2_prefetch_requests,0") != std::string::npos);

    clirun::spit(cfg, "not a config\n");
    CHECK(clirun::run("simulate " + trace + " --config " + cfg).exit_code == 3);
}

TEST_CASE("cli: gen mix from a config file" * doctest::skip(!clirun::cli_path())) {
    TempDir dir;
    const std::string cfg = dir.file("mix.ini");
    clirun::spit(cfg,
                 "seg1.pattern=P2\nseg1.fraction=0.25\nseg1.stride=8\n"
                 "seg2.pattern=P4\nseg2.fraction=0.75\ntotal=40000\n");
    const std::string trace = dir.file("mix.trace");
    CHECK(clirun::run("gen --config " + cfg + " --out " + trace).exit_code == 0);
    auto classify = clirun::run("classify " + trace + " --window-len 2048");
    CHECK(classify.exit_code == 0);
    CHECK(classify.out.find("MIX:,") != std::string::npos);
}
