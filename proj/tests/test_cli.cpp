#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <sys/wait.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>

namespace fs = std::filesystem;

namespace {

const fs::path kDir = fs::temp_directory_path() / "otto_cli_test";

int otto(const std::string& args) {
    const std::string cmd = std::string("\"") + OTTO_CLI + "\" " + args + " > \"" + (kDir / "stdout.txt").string() +
                            "\" 2> \"" + (kDir / "stderr.txt").string() + "\"";
    const int status = std::system(cmd.c_str());
    return WIFEXITED(status) ? WEXITSTATUS(status) : -1;
}

std::string read(const fs::path& p) {
    std::ifstream in(p, std::ios::binary);
    std::ostringstream s;
    s << in.rdbuf();
    return s.str();
}

fs::path write_cfg(const std::string& name, const std::string& text) {
    const auto path = kDir / name;
    std::ofstream(path) << text;
    return path;
}

struct Scratch {
    Scratch() {
        fs::remove_all(kDir);
        fs::create_directories(kDir);
    }
    ~Scratch() { fs::remove_all(kDir); }
};

}  // namespace

TEST_CASE_FIXTURE(Scratch, "exit codes") {
    const auto out = (kDir / "out").string();
    CHECK(otto("run --preset fig3 --output-dir \"" + out + "\"") == 0);
    CHECK(fs::exists(fs::path(out) / "fig3_advantage.csv"));
    CHECK(read(kDir / "stdout.txt").find("peak advantage") != std::string::npos);

    CHECK(otto("validate") == 0);
    CHECK(read(kDir / "stdout.txt").find("all checks passed") != std::string::npos);

    const auto unknown = write_cfg("unknown.cfg", "schema_version = 1\nscenario = multicycle\n[engine]\nfoo = 1\n");
    CHECK(otto("run \"" + unknown.string() + "\"") == 2);
    CHECK(read(kDir / "stderr.txt").find("unknown.cfg:4: unknown key 'foo'") != std::string::npos);

    const auto invalid = write_cfg("invalid.cfg", "schema_version = 1\nscenario = multicycle\n[engine]\np_mx = 0.6\n");
    CHECK(otto("run \"" + invalid.string() + "\"") == 1);
    CHECK(read(kDir / "stderr.txt").find("positivity bound") != std::string::npos);

    CHECK(otto("") == 2);
    CHECK(otto("run --preset fig3 --bogus") == 2);
    CHECK(otto("run --preset fig3 --format xml") == 2);
    CHECK(otto("run") == 2);
    CHECK(otto("run --preset nope") == 2);
    CHECK(otto("run \"" + (kDir / "missing.cfg").string() + "\"") == 2);
    CHECK(otto("search --preset fig3") == 2);
    CHECK(otto("--help") == 0);
    CHECK(otto("preset") == 0);
    CHECK(read(kDir / "stdout.txt").find("fig3\n") != std::string::npos);
}

TEST_CASE_FIXTURE(Scratch, "format override and timing") {
    const auto out = kDir / "fmt";
    CHECK(otto("run --preset fig3 --format json --timing --workers 2 --output-dir \"" + out.string() + "\"") == 0);
    CHECK(fs::exists(out / "fig3.json"));
    CHECK_FALSE(fs::exists(out / "fig3_coherent.csv"));
    CHECK(read(out / "fig3.json").find("runtime_seconds") != std::string::npos);
}

TEST_CASE_FIXTURE(Scratch, "preset text runs as a file") {
    CHECK(otto("preset fig2c") == 0);
    const auto cfg = write_cfg("fig2c.cfg", read(kDir / "stdout.txt"));
    CHECK(otto("run \"" + cfg.string() + "\" --format csv --output-dir \"" + (kDir / "f").string() + "\"") == 0);
    CHECK(fs::exists(kDir / "f" / "fig2c__p_mx_0.5.csv"));
}
