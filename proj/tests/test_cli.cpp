// End-to-end checks of the command-line binary (path injected by CMake).

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>

#include "doctest.h"

namespace {

namespace fs = std::filesystem;

const char* kCli = DEBLUR_CLI_PATH;

fs::path tmp_dir() {
  const auto dir = fs::path("cli_tmp");
  fs::create_directories(dir);
  return dir;
}

int run(const std::string& args, const std::string& stdout_file = "") {
  std::string cmd = std::string("\"") + kCli + "\" " + args + " 2>/dev/null";
  if (!stdout_file.empty()) {
    cmd += " > " + stdout_file;
  } else {
    cmd += " > /dev/null";
  }
  const int status = std::system(cmd.c_str());
  return WEXITSTATUS(status);
}

std::string slurp(const fs::path& path) {
  std::ifstream in(path, std::ios::binary);
  std::stringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

}  // namespace

TEST_CASE("degrade writes image plus sidecar and is seed-deterministic") {
  const auto dir = tmp_dir();
  const auto clean = (dir / "clean.pgm").string();
  REQUIRE(run("phantom " + clean + " --size 32") == 0);

  const auto out1 = (dir / "deg1.pgm").string();
  const auto out2 = (dir / "deg2.pgm").string();
  REQUIRE(run("degrade --kernel gaussian:5:2 --sigma 4 --seed 42 " + clean +
              " " + out1) == 0);
  REQUIRE(run("degrade --kernel gaussian:5:2 --sigma 4 --seed 42 " + clean +
              " " + out2) == 0);
  CHECK(slurp(out1) == slurp(out2));
  CHECK(slurp(out1) != slurp(clean));

  const std::string sidecar = slurp(out1 + ".meta");
  CHECK(sidecar.find("kernel = gaussian:5:2") != std::string::npos);
  CHECK(sidecar.find("sigma = 4") != std::string::npos);
  CHECK(sidecar.find("seed = 42") != std::string::npos);
}

TEST_CASE("degrade validation failures exit with usage code") {
  const auto dir = tmp_dir();
  const auto clean = (dir / "clean.pgm").string();
  REQUIRE(run("phantom " + clean + " --size 32") == 0);
  // Missing input names the path and fails.
  CHECK(run("degrade --kernel gaussian:5:2 missing_input.pgm " +
            (dir / "x.pgm").string()) == 2);
  // Even kernel size rejected before compute.
  CHECK(run("degrade --kernel gaussian:8:5 " + clean + " " +
            (dir / "x.pgm").string()) == 2);
  CHECK(run("degrade --kernel gaussian:9:5 --sigma -1 " + clean + " " +
            (dir / "x.pgm").string()) == 2);
}

TEST_CASE("deblur pipeline writes restored image, history and sidecar") {
  const auto dir = tmp_dir();
  const auto clean = (dir / "p.pgm").string();
  const auto degraded = (dir / "p_deg.pgm").string();
  const auto restored = (dir / "p_res.pgm").string();
  const auto history = (dir / "p_hist.csv").string();
  const auto log = (dir / "p_log.txt").string();
  REQUIRE(run("phantom " + clean + " --size 32") == 0);
  REQUIRE(run("degrade --kernel gaussian:9:5 --sigma 5 --seed 1 " + clean +
              " " + degraded) == 0);
  REQUIRE(run("deblur --kernel gaussian:9:5 --sigma 5 --max-iter 40 --history " +
                  history + " " + degraded + " " + restored,
              log) == 0);

  CHECK(fs::exists(restored));
  const std::string hist = slurp(history);
  CHECK(hist.rfind("iter,primal_residual,rel_u_change,objective,weights_flipped",
                   0) == 0);
  CHECK(std::count(hist.begin(), hist.end(), '\n') >= 2);

  // Auto schedule echoes the polynomial values for gaussian:9:5, sigma 5.
  const std::string text = slurp(log);
  CHECK(text.find("mu 2000") != std::string::npos);
  CHECK(text.find("tau 0.917") != std::string::npos);
  CHECK(text.find("beta 0.11815") != std::string::npos);
  CHECK(text.find("iterations") != std::string::npos);

  const std::string sidecar = slurp(restored + ".meta");
  CHECK(sidecar.find("mu = 2000") != std::string::npos);
  CHECK(sidecar.find("eta = 1") != std::string::npos);
  CHECK(sidecar.find("max_iter = 40") != std::string::npos);
}

TEST_CASE("deblur rejects an out-of-range multiplier step") {
  const auto dir = tmp_dir();
  const auto clean = (dir / "q.pgm").string();
  REQUIRE(run("phantom " + clean + " --size 32") == 0);
  CHECK(run("deblur --kernel gaussian:5:2 --sigma 3 --eta 1.7 " + clean + " " +
            (dir / "q_out.pgm").string()) == 2);
  // Auto schedule without sigma has nothing to evaluate.
  CHECK(run("deblur --kernel gaussian:5:2 " + clean + " " +
            (dir / "q_out.pgm").string()) == 2);
}

TEST_CASE("config file feeds values and flags override it") {
  const auto dir = tmp_dir();
  const auto clean = (dir / "r.pgm").string();
  REQUIRE(run("phantom " + clean + " --size 32") == 0);
  const auto cfg = dir / "run.cfg";
  std::ofstream(cfg) << "kernel = gaussian:5:2\nsigma = 3\nmax_iter = 10\n";
  const auto out = (dir / "r_out.pgm").string();
  REQUIRE(run("deblur --config " + cfg.string() + " --max-iter 6 " + clean +
              " " + out) == 0);
  const std::string sidecar = slurp(out + ".meta");
  CHECK(sidecar.find("kernel = gaussian:5:2") != std::string::npos);
  CHECK(sidecar.find("max_iter = 6") != std::string::npos);  // flag wins
}

TEST_CASE("eval prints metrics and appends CSV rows") {
  const auto dir = tmp_dir();
  const auto clean = (dir / "e.pgm").string();
  const auto noisy = (dir / "e_deg.pgm").string();
  REQUIRE(run("phantom " + clean + " --size 32") == 0);
  REQUIRE(run("degrade --kernel average:3 --sigma 6 --seed 3 " + clean + " " +
              noisy) == 0);

  const auto log = (dir / "e_log.txt").string();
  REQUIRE(run("eval " + clean + " " + clean, log) == 0);
  CHECK(slurp(log).find("psnr inf") != std::string::npos);
  CHECK(slurp(log).find("ssim 1") != std::string::npos);

  const auto csv = (dir / "e.csv").string();
  fs::remove(csv);
  REQUIRE(run("eval --csv " + csv + " --image ph --method degraded --kernel "
              "average:3 --sigma 6 " + clean + " " + noisy) == 0);
  REQUIRE(run("eval --csv " + csv + " " + clean + " " + clean) == 0);
  const std::string rows = slurp(csv);
  CHECK(rows.rfind("image,method,kernel,sigma,psnr,ssim,mse", 0) == 0);
  CHECK(rows.find("ph,degraded,average:3,6,") != std::string::npos);
  CHECK(rows.find("inf,1,0") != std::string::npos);
  CHECK(std::count(rows.begin(), rows.end(), '\n') == 3);

  // Mismatched sizes fail.
  const auto small = (dir / "e_small.pgm").string();
  REQUIRE(run("phantom " + small + " --size 16") == 0);
  CHECK(run("eval " + clean + " " + small) != 0);
}

TEST_CASE("bench runs a manifest deterministically") {
  const auto dir = tmp_dir();
  const auto clean = (dir / "b.pgm").string();
  REQUIRE(run("phantom " + clean + " --size 32") == 0);

  const auto manifest = dir / "cases.txt";
  std::ofstream(manifest) << "# two cases\n"
                          << clean << " gaussian:5:2 3 7\n"
                          << clean << " average:3 2 9\n";
  const auto overrides = dir / "solver.cfg";
  std::ofstream(overrides) << "max_iter = 30\n";

  const auto csv1 = (dir / "bench1.csv").string();
  const auto csv2 = (dir / "bench2.csv").string();
  REQUIRE(run("bench --manifest " + manifest.string() + " --config " +
              overrides.string() + " --out " + csv1) == 0);
  REQUIRE(run("bench --manifest " + manifest.string() + " --config " +
              overrides.string() + " --out " + csv2) == 0);
  const std::string a = slurp(csv1);
  CHECK(a == slurp(csv2));  // bit-identical rerun
  // Header, two case rows, one average row.
  CHECK(std::count(a.begin(), a.end(), '\n') == 4);
  CHECK(a.find("average,") != std::string::npos);
  CHECK(a.find(",ok") != std::string::npos);

  // Empty manifest errors out.
  const auto empty = dir / "empty.txt";
  std::ofstream(empty) << "# nothing\n";
  CHECK(run("bench --manifest " + empty.string() + " --out " +
            (dir / "nowhere.csv").string()) != 0);

  // A broken case is recorded and flips the exit code.
  const auto broken = dir / "broken.txt";
  std::ofstream(broken) << clean << " gaussian:5:2 3 7\n"
                        << "missing.pgm gaussian:5:2 3 8\n";
  const auto csv3 = (dir / "bench3.csv").string();
  CHECK(run("bench --manifest " + broken.string() + " --config " +
            overrides.string() + " --out " + csv3) == 1);
  const std::string b = slurp(csv3);
  CHECK(b.find("failed:") != std::string::npos);
  CHECK(b.find("missing.pgm") != std::string::npos);
}

TEST_CASE("usage errors exit with code 2") {
  CHECK(run("") == 2);
  CHECK(run("unknown_subcommand") == 2);
  CHECK(run("deblur") == 2);  // missing positionals
}
