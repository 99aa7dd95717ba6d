#include <doctest.h>

#include <filesystem>
#include <fstream>
#include <string>
#include <vector>

#include "cli.hpp"
#include "fbcs/image.hpp"
#include "oracles.hpp"

namespace {

int cli(const std::vector<std::string>& args) {
    std::vector<const char*> argv;
    argv.push_back("fbcs");
    for (const std::string& a : args) argv.push_back(a.c_str());
    return fbcs::run_cli(static_cast<int>(argv.size()), argv.data());
}

std::string slurp(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    return {std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>()};
}

} // namespace

TEST_SUITE("cli") {

TEST_CASE("usage errors exit with 1") {
    CHECK(cli({}) == 1);
    CHECK(cli({"recover"}) == 1);             // missing --image
    CHECK(cli({"frobnicate"}) == 1);          // unknown subcommand
    CHECK(cli({"bench", "--nope", "x"}) == 1); // unknown flag
}

TEST_CASE("help exits with 0") {
    CHECK(cli({"--help"}) == 0);
}

TEST_CASE("recover writes baseline and compensated images") {
    testutil::TempDir dir("cli_recover");
    const std::string input = dir.file("input.pgm");
    fbcs::save_pgm(testutil::synth_shapes(64), input);
    const std::string prefix = dir.file("out");

    const int code = cli({"recover", "--image", input, "--rates", "0.25", "--seed", "3", "--out",
                          prefix, "--threads", "1"});
    CHECK(code == 0);

    const fbcs::Image baseline = fbcs::load_pgm(prefix + "_baseline.pgm");
    const fbcs::Image compensated = fbcs::load_pgm(prefix + "_compensated.pgm");
    CHECK(baseline.width == 64);
    CHECK(compensated.height == 64);

    // same command again: byte-identical outputs
    const std::string prefix2 = dir.file("again");
    CHECK(cli({"recover", "--image", input, "--rates", "0.25", "--seed", "3", "--out", prefix2,
               "--threads", "1"}) == 0);
    CHECK(slurp(prefix + "_baseline.pgm") == slurp(prefix2 + "_baseline.pgm"));
    CHECK(slurp(prefix + "_compensated.pgm") == slurp(prefix2 + "_compensated.pgm"));
}

TEST_CASE("recover maps data problems to exit 2 and usage problems to exit 1") {
    testutil::TempDir dir("cli_recover_err");
    CHECK(cli({"recover", "--image", dir.file("missing.pgm")}) == 2);

    const std::string input = dir.file("input.pgm");
    fbcs::save_pgm(testutil::synth_smooth(32), input);
    CHECK(cli({"recover", "--image", input, "--rates", "0.1,0.5"}) == 1);  // one rate only
    CHECK(cli({"recover", "--image", input, "--rates", "1.5"}) == 1);      // rate out of range
}

TEST_CASE("bench writes the pinned CSV header") {
    testutil::TempDir dir("cli_bench");
    const std::string dataset = (dir.path() / "set").string();
    std::filesystem::create_directory(dataset);
    fbcs::save_pgm(testutil::synth_smooth(64), dataset + "/a.pgm");
    fbcs::save_pgm(testutil::synth_shapes(64), dataset + "/b.pgm");

    const std::string out_csv = dir.file("rows.csv");
    CHECK(cli({"bench", "--dataset", dataset, "--rates", "0.1,0.25", "--out", out_csv,
               "--threads", "1"}) == 0);
    const std::string csv = slurp(out_csv);
    CHECK(csv.rfind("dataset,image,rate,psnr_original,psnr_proposed,ssim_original,"
                    "ssim_proposed,lambda,n_max,seed\n",
                    0) == 0);
    CHECK(csv.find("set,a,0.1000,") != std::string::npos);

    const std::string out_md = dir.file("summary.md");
    CHECK(cli({"bench", "--dataset", dataset, "--rates", "0.25", "--format", "md", "--out",
               out_md, "--threads", "1"}) == 0);
    CHECK(slurp(out_md).rfind("| dataset | r |", 0) == 0);

    CHECK(cli({"bench", "--dataset", dir.file("nowhere")}) == 2);
}

TEST_CASE("analyze prints a report and flags divergence via exit code 3") {
    testutil::TempDir dir("cli_analyze");
    const std::string out = dir.file("report.txt");
    CHECK(cli({"analyze", "--block", "8", "--rates", "0.5", "--lambda", "1.0", "--out", out}) ==
          0);
    const std::string text = slurp(out);
    CHECK(text.find("spectral_radius:") != std::string::npos);
    CHECK(text.find("steady_state_status: converged") != std::string::npos);

    const std::string csv_out = dir.file("report.csv");
    CHECK(cli({"analyze", "--block", "8", "--rates", "0.5", "--lambda", "3.0", "--format", "csv",
               "--out", csv_out}) == 3);
    CHECK(slurp(csv_out).find("divergent") != std::string::npos);
}

} // TEST_SUITE
