// End-to-end exercise of the command-line tool: pipelines, file formats,
// exit codes, and byte-identical reruns.

#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>

namespace fs = std::filesystem;

namespace {

int failures = 0;

void check(bool ok, const std::string& what) {
    if (!ok) {
        ++failures;
        std::cerr << "[FAIL] " << what << "\n";
    } else {
        std::cout << "[ok] " << what << "\n";
    }
}

int run(const std::string& args) {
    const std::string cmd = std::string(FRAMEKIT_CLI_PATH) + " " + args + " > /dev/null 2>&1";
    const int status = std::system(cmd.c_str());
    if (status == -1) return -1;
    return WEXITSTATUS(status);
}

std::string slurp(const fs::path& p) {
    std::ifstream in(p, std::ios::binary);
    std::ostringstream out;
    out << in.rdbuf();
    return out.str();
}

} // namespace

int main() {
    const fs::path dir = fs::temp_directory_path() / "framekit_e2e";
    fs::remove_all(dir);
    fs::create_directories(dir);
    const std::string d = dir.string() + "/";

    // generate: all three kinds plus the complex field
    check(run("generate harmonic --dim 6 --count 12 -o " + d + "h.json") == 0,
          "generate harmonic");
    check(run("generate orthonormal --dim 4 -o " + d + "on.json") == 0, "generate orthonormal");
    check(run("generate random-tight --dim 4 --count 12 --seed 1 -o " + d + "rt.json") == 0,
          "generate random-tight");
    check(run("generate random-tight --dim 4 --count 12 -o " + d + "x.json") == 2,
          "random generation without a seed is a usage error");
    check(run("generate harmonic --dim 3 --count 7 --field complex -o " + d + "hc.json") == 0,
          "generate complex harmonic");
    check(run("generate harmonic --dim 7 --count 3 -o " + d + "bad.json") == 2,
          "count below dim is a usage error");

    // rip: exhaustive and randomized, plus determinism of the output bytes
    check(run("rip --frame " + d + "h.json --s 2 -o " + d + "rip.json") == 0, "rip exhaustive");
    check(run("rip --frame " + d + "h.json --s 2 -o " + d + "rip2.json") == 0, "rip rerun");
    check(slurp(d + "rip.json") == slurp(d + "rip2.json"), "identical runs, identical bytes");
    check(run("rip --frame " + d + "hc.json --s 2 -o " + d + "ripc.json") == 0,
          "rip on a complex frame");
    check(run("rip --frame " + d + "h.json --s 2 --method randomized --samples 66 --seed 4 -o " +
              d + "ripr.json") == 0,
          "rip randomized");
    check(run("rip --frame " + d + "h.json --s 2 --method randomized --samples 5") == 2,
          "randomized sweep without a seed is a usage error");
    check(run("rip --frame " + d + "missing.json --s 2") == 2, "missing input file");
    check(run("rip --frame " + d + "h.json --s 2 --format csv -o " + d + "rip.csv") == 0,
          "rip csv output");
    {
        std::ifstream csv(d + "rip.csv");
        std::string header;
        std::getline(csv, header);
        check(header.rfind("s,epsilon_hat", 0) == 0, "csv header shape");
    }

    // fusion: with a precomputed certificate and inline
    check(run("fusion --frame " + d + "h.json --block-size 2 --rip " + d + "rip.json -o " + d +
              "fus.json --out-fusion " + d + "ff.json") == 0,
          "fusion certificate");
    check(fs::exists(d + "ff.json"), "fusion frame file written");
    check(run("fusion --frame " + d + "h.json --block-size 2 -o " + d + "fus2.json") == 0,
          "fusion with inline sweep");
    check(run("fusion --frame " + d + "h.json --rip " + d + "rip.json") == 2,
          "fusion without a partition is a usage error");

    // angles: from the fusion file, and the combined certificate from a frame
    check(run("angles --fusion " + d + "ff.json --epsilon 0.99 -o " + d + "ang.json") == 0,
          "angles from a fusion file");
    check(run("angles --frame " + d + "h.json --block-size 1 --rip " + d + "rip.json -o " + d +
              "ang2.json") == 0,
          "combined angle certificate");
    check(run("angles --fusion " + d + "ff.json --format csv -o " + d + "ang.csv") == 0,
          "angles csv");
    check(run("angles --epsilon 0.5") == 2, "angles without input is a usage error");

    // replace: certified pipeline on a near-orthonormal frame
    check(run("generate random-tight --dim 9 --count 9 --seed 5 -o " + d + "id9.json") == 0,
          "orthonormal-ish base for replacement");
    check(run("replace --frame " + d + "id9.json --block-size 3 --replace-first 2 --s 3 "
              "--out-frame " + d + "rep.json -o " + d + "reprep.json") == 0,
          "replace with certification");
    check(fs::exists(d + "rep.json"), "replaced frame written");
    check(run("replace --frame " + d + "id9.json --block-size 3 --replace-ids 0,2 --s 3") == 0,
          "replace by explicit ids");
    check(run("replace --frame " + d + "h.json --block-size 2 --replace-first 1 --s 2") == 2,
          "replacement outside the epsilon hypothesis is rejected");

    // verify-all: pass, forced failure, empty config
    check(run("verify-all -o " + d + "verify.json") == 0, "verify-all default");
    {
        std::ofstream cfg(d + "force.json");
        cfg << "{\"force_epsilon\": 1e-9}\n";
    }
    check(run("verify-all --config " + d + "force.json") == 1,
          "verify-all with a forced wrong epsilon fails");
    {
        std::ofstream cfg(d + "empty.json");
        cfg << "{}\n";
    }
    check(run("verify-all --config " + d + "empty.json") == 2, "empty config is a usage error");

    // no subcommand / unknown flags
    check(run("") == 2, "no subcommand is a usage error");
    check(run("rip --frame " + d + "h.json") == 2, "missing required flag");

    if (failures == 0) {
        std::cout << "CLI end-to-end: all checks passed\n";
        return 0;
    }
    std::cerr << "CLI end-to-end: " << failures << " failures\n";
    return 1;
}
