// Exercises the command-line tool end to end: output contents, exit codes,
// JSON emission, the safety cap, and the cache directory.

#include <sys/wait.h>

#include <cstdio>
#include <filesystem>
#include <iostream>
#include <string>
#include <vector>

namespace {

struct RunResult {
    int exit_code = -1;
    std::string output;
};

RunResult run(const std::string& command) {
    RunResult r;
    FILE* pipe = popen((command + " 2>&1").c_str(), "r");
    if (!pipe) return r;
    char buf[4096];
    while (size_t n = fread(buf, 1, sizeof buf, pipe)) r.output.append(buf, n);
    const int status = pclose(pipe);
    r.exit_code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
    return r;
}

int failures = 0;

void expect(bool ok, const std::string& what, const RunResult& r) {
    if (ok) {
        std::cout << "ok: " << what << "\n";
    } else {
        ++failures;
        std::cout << "FAILED: " << what << "\n--- exit " << r.exit_code << ", output:\n"
                  << r.output << "---\n";
    }
}

}  // namespace

int main(int argc, char** argv) {
    if (argc < 2) {
        std::cerr << "usage: cli_driver <path-to-omegaq>\n";
        return 2;
    }
    const std::string cli = argv[1];

    auto r = run(cli + " compute omega --order 3");
    expect(r.exit_code == 0 && r.output.find("-1/2") != std::string::npos &&
               r.output.find("1/12") != std::string::npos,
           "compute omega --order 3 prints -1/2 and 1/12", r);

    r = run(cli + " compute omega-0 --order 5");
    expect(r.exit_code == 0 && r.output.find("[[][]]") == std::string::npos &&
               r.output.find("[[[[[]]]]]") != std::string::npos,
           "compute omega-0 --order 5 prints alternating chains only", r);

    r = run(cli + " compute carlitz --order 3");
    expect(r.exit_code == 0 && r.output.find("q/(Phi2*Phi3)") != std::string::npos,
           "compute carlitz --order 3 prints beta_2", r);

    r = run(cli + " compute omega-q --order 3 --format json");
    expect(r.exit_code == 0 && r.output.find("\"schema_version\"") != std::string::npos &&
               r.output.find("\"kind\": \"omega-q\"") != std::string::npos,
           "compute omega-q --format json emits the schema", r);

    r = run(cli + " compute --series omega-q --order 2 --mode forks");
    expect(r.exit_code == 0 && r.output.find("Phi2") != std::string::npos,
           "--series flag and fork mode work", r);

    r = run(cli + " verify fork-equivalence --order 4");
    expect(r.exit_code == 0 && r.output.find("PASS fork-equivalence") != std::string::npos,
           "verify fork-equivalence --order 4 passes", r);

    r = run(cli + " verify qlog --order 6");
    expect(r.exit_code == 0 && r.output.find("PASS") != std::string::npos,
           "verify qlog --order 6 passes", r);

    r = run(cli + " verify no-such-check");
    expect(r.exit_code == 2 && r.output.find("unknown check") != std::string::npos,
           "unknown check name exits 2", r);

    r = run(cli + " compute no-such-series --order 3");
    expect(r.exit_code == 2, "unknown series exits 2", r);

    r = run(cli + " compute omega --order 0");
    expect(r.exit_code == 2, "order 0 exits 2", r);

    r = run(cli + " compute omega --order 4 --safety-cap 3");
    expect(r.exit_code == 2 && r.output.find("safety cap") != std::string::npos,
           "orders above the cap exit 2", r);

    r = run(cli + " compute omega --order 4 --safety-cap 3 --force-large");
    expect(r.exit_code == 0, "--force-large overrides the cap", r);

    r = run(cli + " compute omega --order 3 --output /nonexistent-dir/x.txt");
    expect(r.exit_code == 2, "unwritable output path exits 2", r);

    r = run(cli + " verify --list");
    expect(r.exit_code == 0 && r.output.find("fork-equivalence") != std::string::npos &&
               r.output.find("dend-formula") != std::string::npos,
           "verify --list names the registered checks", r);

    {
        namespace fs = std::filesystem;
        const fs::path tmp = fs::temp_directory_path() / "omegaq-cli-cache";
        const fs::path out = fs::temp_directory_path() / "omegaq-cli-out.json";
        fs::remove_all(tmp);
        fs::remove(out);
        const std::string env = "OMEGAQ_CACHE_DIR=" + tmp.string() + " ";
        r = run(env + cli + " compute omega-q --order 3 --format json --output " + out.string());
        expect(r.exit_code == 0 && fs::exists(tmp / "cyclotomic.tbl") && fs::exists(out),
               "cache directory and --output are populated", r);
        r = run(env + cli + " compute omega-q --order 3");
        expect(r.exit_code == 0, "second run loads the cache", r);
        fs::remove_all(tmp);
        fs::remove(out);
    }

    if (failures) {
        std::cout << failures << " cli checks failed\n";
        return 1;
    }
    std::cout << "all cli checks passed\n";
    return 0;
}
