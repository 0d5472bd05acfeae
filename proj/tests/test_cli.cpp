// Integration checks of the command-line front end: every subcommand is run
// against the real binary with asserted exit codes and output.
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>

#include <json.hpp>

namespace {

int failures = 0;

void check(bool ok, const std::string& what) {
    if (ok) {
        std::cout << "[ok] " << what << "\n";
    } else {
        std::cout << "[FAIL] " << what << "\n";
        ++failures;
    }
}

struct RunResult {
    int exit_code;
    std::string out;
};

RunResult run(const std::string& cmd) {
    std::string full = cmd + " 2>&1";
    FILE* p = popen(full.c_str(), "r");
    if (!p) return {-1, ""};
    std::string out;
    char buf[4096];
    size_t n;
    while ((n = fread(buf, 1, sizeof buf, p)) > 0) out.append(buf, n);
    int status = pclose(p);
    int code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
    return {code, out};
}

std::string slurp(const std::string& path) {
    std::ifstream in(path);
    std::stringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

}  // namespace

int main(int argc, char** argv) {
    if (argc < 3) {
        std::cerr << "usage: test_cli <congr-binary> <configs-dir>\n";
        return 1;
    }
    std::string bin = argv[1];
    std::string cfgdir = argv[2];
    std::string tmp = "/tmp/congr_cli_test";
    (void)run("mkdir -p " + tmp);

    {
        auto r = run(bin + " qexp --form s26 --terms 6");
        check(r.exit_code == 0, "qexp exit code");
        check(r.out == "1\n-48\n-195804\n-33552128\n-741989850\n9398592\n", "qexp s26 prints the six coefficients");
    }
    {
        auto r = run(bin + " cmform --disc -3 --u -6 --terms 19");
        check(r.exit_code == 0, "cmform exit code");
        check(r.out == "1\n0\n-27\n64\n0\n0\n-286\n0\n729\n0\n0\n-1728\n506\n0\n0\n4096\n0\n0\n-10582\n",
              "cmform prints g through q^19");
    }
    {
        auto r = run(bin + " lvalue --spec " + tmp + "/missing.txt --s 2");
        check(r.exit_code == 2, "lvalue with a missing spec file exits 2");
    }
    {
        std::ofstream spec(tmp + "/zeta.spec");
        spec << "label = zeta\ndegree = 1\nconductor = 1\nmotivic_weight = 0\n"
             << "gamma = R:0\nroot_number = 1\ncoeffs = zeta\n";
        spec.close();
        auto r = run(bin + " lvalue --spec " + tmp + "/zeta.spec --s 2 --digits 60");
        check(r.exit_code == 0, "lvalue zeta exit code");
        check(r.out.find("L(2) = 1.6449340668482264364724151666") != std::string::npos,
              "lvalue zeta(2) value");
    }
    {
        auto r = run(bin + " ikeda coeff --gamma -5");
        check(r.exit_code == 0 && r.out == "-741989850\n", "ikeda coeff gamma=-5");
        auto r2 = run(bin + " ikeda coeff --gamma 25");
        check(r2.exit_code == 1, "ikeda coeff gamma=25 rejected (exit 1)");
        auto r3 = run(bin + " ikeda sweep --ell 31 --bound 100");
        check(r3.exit_code == 0 && r3.out.find("witness p = 5") != std::string::npos, "ikeda sweep ell=31");
    }
    {
        auto r = run(bin + " nosuchcommand");
        check(r.exit_code == 2, "unknown subcommand exits 2");
    }
    {
        // invalid config: t out of range
        std::ofstream bad(tmp + "/bad.toml");
        bad << "disc = -3\nn = 5\nk = 13\nm = 2\nt = -18\n";
        bad.close();
        auto r = run(bin + " certify --config " + tmp + "/bad.toml");
        check(r.exit_code == 2, "certify with invalid t exits 2");
        std::ofstream unk(tmp + "/unknown.toml");
        unk << "disc = -3\nn = 5\nk = 13\nm = 2\nt = -24\nzzz = 1\n";
        unk.close();
        auto r2 = run(bin + " certify --config " + tmp + "/unknown.toml");
        check(r2.exit_code == 2, "unknown config key is a hard error");
    }
    {
        // full run at reduced precision, golden-stability of the JSON report
        std::string cmd = bin + " certify --config " + cfgdir + "/sec9.toml --digits 100 --json " + tmp + "/r1.json";
        auto r1 = run(cmd);
        check(r1.exit_code == 0, "certify sec9 exits 0");
        check(r1.out.find("ell = 31: Certified, depth b = 1") != std::string::npos, "31 certified");
        check(r1.out.find("ell = 6761: Certified, depth b = 1") != std::string::npos, "6761 certified");

        auto r2 = run("CONGR_THREADS=1 " + bin + " certify --config " + cfgdir + "/sec9.toml --digits 100 --json " +
                      tmp + "/r2.json");
        check(r2.exit_code == 0, "second certify run (single-threaded) exits 0");
        check(slurp(tmp + "/r1.json") == slurp(tmp + "/r2.json"),
              "JSON report byte-stable across runs and thread counts");

        // schema and content
        auto j = nlohmann::json::parse(slurp(tmp + "/r1.json"));
        check(j.contains("config_echo") && j.contains("lalg_sym2") && j.contains("lalg_conv") &&
                  j.contains("dirichlet") && j.contains("V") && j.contains("U") && j.contains("reports"),
              "JSON schema keys");
        check(j["lalg_sym2"].size() == 4 && j["lalg_conv"].size() == 5, "table sizes");
        std::vector<std::string> expect = {"31", "67", "137", "139", "523", "1609", "3463", "6761"};
        bool setok = j["reports"].size() == expect.size();
        for (size_t i = 0; setok && i < expect.size(); ++i) {
            setok = j["reports"][i]["ell"] == expect[i] && j["reports"][i]["status"] == "Certified" &&
                    j["reports"][i]["depth"] == 1;
        }
        check(setok, "certified set is script-L with depth 1");
        check(j["reports"][4]["ell"] == "523" && j["reports"][4]["depth"] == 1, "depth field for ell = 523");
    }

    std::cout << (failures ? "FAILED" : "ALL OK") << "\n";
    return failures ? 1 : 0;
}
