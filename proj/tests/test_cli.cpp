#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <sys/wait.h>

#include "doctest.h"

namespace fs = std::filesystem;

namespace {

const fs::path kWork = fs::temp_directory_path() / "relmass_cli_test";

struct Result {
    int code;
    std::string out;
};

// Runs the CLI from the work directory with the given arguments.
Result run(const std::string& args) {
    fs::create_directories(kWork);
    const fs::path log = kWork / "stdout.txt";
    const std::string cmd =
        "cd '" + kWork.string() + "' && '" RELMASS_CLI "' " + args + " > '" + log.string() + "' 2>&1";
    const int status = std::system(cmd.c_str());
    std::ifstream in(log);
    std::stringstream ss;
    ss << in.rdbuf();
    return {WIFEXITED(status) ? WEXITSTATUS(status) : -1, ss.str()};
}

std::string slurp(const fs::path& p) {
    std::ifstream in(p, std::ios::binary);
    std::stringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

std::string first_line(const std::string& s) { return s.substr(0, s.find('\n')); }

}  // namespace

TEST_CASE("figure1") {
    REQUIRE(run("figure1 --out-dir fig").code == 0);
    const auto text = slurp(kWork / "fig/figure1.csv");
    CHECK(first_line(text) == "# relmass figure1 --out-dir fig");
    CHECK(text.find("\nt,c4,c5,c6,c7\n0,0,0,0,0\n") != std::string::npos);
    CHECK(text.find('\r') == std::string::npos);
    CHECK(run("figure1 --t-max 0 --out-dir fig").code == 1);
    CHECK(run("figure1 --d 41 --out-dir fig").code == 1);
}

TEST_CASE("witness exit codes") {
    const auto five = run("witness --d 5");
    CHECK(five.code == 0);
    CHECK(five.out.find("t1=6.3784") != std::string::npos);
    CHECK(run("witness --d 4").code == 2);
    CHECK(run("witness --d 0").code == 1);
    CHECK(run("no-such-command").code == 1);
}

TEST_CASE("appendix report") {
    const auto r = run("appendix --out-dir app");
    CHECK(r.code == 0);
    CHECK(r.out.find("lambda2=0.3596117") != std::string::npos);
    CHECK(r.out.find("c=f2(apex)/f2(face)=1.5615528") != std::string::npos);
    CHECK(r.out.find("r > 1 from t=") != std::string::npos);
    CHECK(slurp(kWork / "app/appendix_r.csv").find("\nt,value\n0,0\n") != std::string::npos);
}

TEST_CASE("verify-claim and blowup tables") {
    CHECK(run("verify-claim --d 2 --eps 0.01 --t 0.5,1 --out-dir claim").code == 0);
    const auto claim = slurp(kWork / "claim/verify_claim.csv");
    CHECK(claim.find("\nd,epsilon,t,puu,puv,residual_uu,residual_uv,bound\n2,0.01,0.5,") != std::string::npos);

    CHECK(run("blowup --sizes 16,32 --out-dir blow").code == 0);
    const auto blow = slurp(kWork / "blow/blowup.csv");
    CHECK(blow.find("\nN,deg,sup_r_dev,sup_p_dev\n16,21,") != std::string::npos);
    CHECK(blow.find("\n32,37,") != std::string::npos);
    CHECK(run("blowup --sizes 3 --out-dir blow").code == 1);
}

TEST_CASE("scan") {
    CHECK(run("scan --graph pyramid --u 1 --v 0 --out-dir scan").code == 0);
    CHECK(run("scan --graph cycle:12 --u 0 --v 5 --out-dir scan").code == 2);
    CHECK(run("scan --graph cayley:6:1:1,5:1 --u 0 --v 3 --out-dir scan").code == 2);
    CHECK(run("scan --graph hypercube:3 --u 0 --v 8 --out-dir scan").code == 1);
    CHECK(run("scan --graph nonsense --out-dir scan").code == 1);
}

TEST_CASE("mc output is byte-identical on rerun") {
    const std::string args = "mc c-d --d 3 --t 2 --samples 20000 --chunks 8 --seed 99 --out-dir mc";
    REQUIRE(run(args).code == 0);
    const auto first = slurp(kWork / "mc/mc_c_d.csv");
    CHECK(first_line(first) == "# relmass " + args);
    CHECK(first.find("\nquantity,d,epsilon,t,estimate,stderr,n,n_conditioned,seed,chunks\nc_d,3,,2,") !=
          std::string::npos);

    // Re-run the invocation recorded in the header.
    fs::remove(kWork / "mc/mc_c_d.csv");
    REQUIRE(run(first_line(first).substr(std::string("# relmass ").size()) + " --threads 3").code == 0);
    const auto again = slurp(kWork / "mc/mc_c_d.csv");
    CHECK(again.substr(again.find('\n')) == first.substr(first.find('\n')));
    REQUIRE(run(args).code == 0);
    CHECK(slurp(kWork / "mc/mc_c_d.csv") == first);

    CHECK(run("mc c-d --samples 0 --out-dir mc").code == 1);
    CHECK(run("mc puv --d 2 --eps 0.1 --t 1 --samples 1000 --chunks 4 --out-dir mc").code == 0);
}
