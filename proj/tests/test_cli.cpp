// End-to-end checks of the CLI: exit codes, artifact files, determinism.

#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>

namespace fs = std::filesystem;

namespace {

int checks = 0, failed = 0;

void expect(bool ok, const std::string& what) {
    ++checks;
    if (!ok) {
        ++failed;
        std::cout << "FAIL: " << what << "\n";
    }
}

int run(const std::string& args, const std::string& outdir) {
    std::string cmd = std::string(LPALG_CLI_PATH) + " " + args + " --outdir " + outdir +
                      " >/dev/null 2>&1";
    int rc = std::system(cmd.c_str());
    return WEXITSTATUS(rc);
}

std::string slurp(const fs::path& p) {
    std::ifstream ifs(p, std::ios::binary);
    std::ostringstream os;
    os << ifs.rdbuf();
    return os.str();
}

}  // namespace

int main() {
    fs::path base = fs::temp_directory_path() / "lpalg_cli_test";
    fs::remove_all(base);
    fs::create_directories(base);

    // bounded weight: exit 0, artifacts present
    int rc = run("check-weight --group Z --weight subexp:C=1,gamma=0.5 --q 2 --m-max 60",
                 (base / "a").string());
    expect(rc == 0, "check-weight bounded exits 0 (got " + std::to_string(rc) + ")");
    expect(fs::exists(base / "a" / "ratio.csv"), "ratio.csv written");
    expect(fs::exists(base / "a" / "manifest.json"), "manifest written");

    // expected-fail fixture: exponential weight fails (S) and BDna, exit 4
    rc = run("conditions --weight exp:C=1 --n-max 100", (base / "b").string());
    expect(rc == 4, "conditions exp:C=1 exits 4 (got " + std::to_string(rc) + ")");

    rc = run("conditions --weight subexp:C=1,gamma=0.5 --n-max 100", (base / "c").string());
    expect(rc == 0, "conditions subexp exits 0 (got " + std::to_string(rc) + ")");

    // mesh line model with absolute-value weight semantics
    rc = run("check-weight --group mesh:0.5 --weight subexp:C=1,gamma=0.5 --q 2 --m-max 40",
             (base / "m").string());
    expect(rc == 0, "check-weight on mesh exits 0 (got " + std::to_string(rc) + ")");

    // laplace: ratio near 1 at x=500
    rc = run("laplace --Q 1 --gamma 0.5 --x 500 --m-max 60", (base / "d").string());
    expect(rc == 0, "laplace exits 0 (got " + std::to_string(rc) + ")");
    expect(fs::exists(base / "d" / "laplace_F.csv"), "laplace_F.csv written");

    // growth on Z2
    rc = run("growth --group Z2 --n-max 12", (base / "e").string());
    expect(rc == 0, "growth exits 0 (got " + std::to_string(rc) + ")");

    // operator sweep
    rc = run("operator --size 3 --x-max 50", (base / "f").string());
    expect(rc == 0, "operator exits 0 (got " + std::to_string(rc) + ")");

    // spectral + funcalc smoke
    rc = run("spectral --group Z --weight poly:K=1,D=2 --p 2 --k-max 6", (base / "g").string());
    expect(rc == 0, "spectral exits 0 (got " + std::to_string(rc) + ")");
    rc = run("funcalc --weight poly:K=1,D=2 --cyclic 16 --n-max 64", (base / "h").string());
    expect(rc == 0, "funcalc exits 0 (got " + std::to_string(rc) + ")");

    // config error: unknown weight
    rc = run("check-weight --weight nope:1", (base / "i").string());
    expect(rc == 2, "bad weight spec exits 2 (got " + std::to_string(rc) + ")");

    // computation error: Heisenberg radius cap blown by the GRS power range
    rc = run("conditions --group heis --weight poly:K=1,D=2 --n-max 400",
             (base / "i2").string());
    expect(rc == 3, "radius-cap overflow exits 3 (got " + std::to_string(rc) + ")");

    // determinism: byte-identical CSV and manifest across reruns
    rc = run("check-weight --group Z --weight poly:K=1,D=2 --q 2 --m-max 40 --seed 9",
             (base / "r1").string());
    expect(rc == 0, "determinism run 1 exits 0");
    rc = run("check-weight --group Z --weight poly:K=1,D=2 --q 2 --m-max 40 --seed 9",
             (base / "r2").string());
    expect(rc == 0, "determinism run 2 exits 0");
    expect(slurp(base / "r1" / "ratio.csv") == slurp(base / "r2" / "ratio.csv"),
           "ratio.csv byte-identical across reruns");
    expect(slurp(base / "r1" / "manifest.json") == slurp(base / "r2" / "manifest.json"),
           "manifest byte-identical across reruns");

    // config file mirrors the flags (values with commas are quoted)
    {
        std::ofstream cfg(base / "run.ini");
        cfg << "group=Z\nweight=\"poly:K=1,D=2\"\nq=2\n";
    }
    rc = run("check-weight --config " + (base / "run.ini").string() + " --m-max 30",
             (base / "j").string());
    expect(rc == 0, "config file accepted (got " + std::to_string(rc) + ")");
    expect(fs::exists(base / "j" / "ratio.csv"), "config run produced ratio.csv");

    // env var override for the output directory
    setenv("LPALG_OUTDIR", (base / "env").c_str(), 1);
    rc = run("growth --group Z --n-max 8", (base / "ignored").string());
    expect(rc == 0, "growth with env override exits 0");
    expect(fs::exists(base / "env" / "growth.csv"), "env LPALG_OUTDIR honored");
    unsetenv("LPALG_OUTDIR");

    std::cout << (failed == 0 ? "cli tests: all passed (" : "cli tests: FAILURES (")
              << (checks - failed) << "/" << checks << ")\n";
    return failed == 0 ? 0 : 1;
}
