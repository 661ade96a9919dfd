// End-to-end exercises of the command-line interface: real subprocess
// invocations, exit codes, error prefixes, stdin streaming, JSON output.
#include <array>
#include <cstdio>
#include <string>

#include "doctest.h"
#include "json.hpp"

namespace {

struct RunResult {
    int exit_code = -1;
    std::string out;
};

RunResult run(const std::string& args, const std::string& redirect = " 2>&1") {
    RunResult r;
    std::string cmd = std::string(RPF_CLI_PATH) + " " + args + redirect;
    FILE* pipe = popen(cmd.c_str(), "r");
    REQUIRE(pipe != nullptr);
    std::array<char, 4096> buf;
    std::size_t got;
    while ((got = fread(buf.data(), 1, buf.size(), pipe)) > 0) r.out.append(buf.data(), got);
    int status = pclose(pipe);
    r.exit_code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
    if (!r.out.empty() && r.out.back() == '\n') r.out.pop_back();
    return r;
}

RunResult run_pipeline(const std::string& shell_line) {
    RunResult r;
    FILE* pipe = popen(shell_line.c_str(), "r");
    REQUIRE(pipe != nullptr);
    std::array<char, 4096> buf;
    std::size_t got;
    while ((got = fread(buf.data(), 1, buf.size(), pipe)) > 0) r.out.append(buf.data(), got);
    int status = pclose(pipe);
    r.exit_code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
    if (!r.out.empty() && r.out.back() == '\n') r.out.pop_back();
    return r;
}

}  // namespace

TEST_CASE("encode and decode round the worked examples") {
    CHECK(run("encode 520").out == "(()(()))()(())()()(())");
    CHECK(run("decode '()(()(()))'").out == "27");
    CHECK(run("encode -2/9 --rational").out == "(())((())())()");
    CHECK(run("decode '(())((())())()' --rational").out == "-2/9");
    CHECK(run("encode -1/3 --rational").out == "()(()())()");
    CHECK(run("decode EPSILON").out == "0");
    CHECK(run("encode 0").out == "EPSILON");
    CHECK(run("decode '()' --rational --print-den").out == "1/1");
}

TEST_CASE("exit codes and error prefixes") {
    RunResult bad_word = run("decode '))(('");
    CHECK(bad_word.exit_code == 2);
    CHECK(bad_word.out.rfind("ERROR NotDyck:", 0) == 0);

    RunResult not_minimal = run("succ '(())()'");
    CHECK(not_minimal.exit_code == 2);
    CHECK(not_minimal.out.rfind("ERROR NotMinimal:", 0) == 0);

    RunResult budget = run("decode '((((((()))))))' --max-bits 64");
    CHECK(budget.exit_code == 3);
    CHECK(budget.out.rfind("ERROR BudgetExceeded:", 0) == 0);

    RunResult cap = run("analyze counts --max 20 --cap 16");
    CHECK(cap.exit_code == 3);
    CHECK(cap.out.rfind("ERROR CapExceeded:", 0) == 0);

    RunResult zero = run("encode abc");
    CHECK(zero.exit_code == 2);
    CHECK(zero.out.rfind("ERROR DomainError:", 0) == 0);

    CHECK(run("nonsense").exit_code == 1);
    CHECK(run("encode 1 --rational --perm /dev/null").exit_code == 1);
    CHECK(run("compress '()()' --alphabet binary").exit_code == 1);
    CHECK(run("encode").exit_code == 1);
}

TEST_CASE("validate classifies into the most specific class") {
    CHECK(run("validate '()(())'").out == "minimal");
    CHECK(run("validate '(())()'").out == "quasiminimal");
    CHECK(run("validate '()()()'").out == "dyck");
    CHECK(run("validate ')('").out == "invalid");
    CHECK(run("validate EPSILON").out == "minimal");
    CHECK(run("validate ')('").exit_code == 0);  // a classification, not an error
    CHECK(run("dinf EPSILON").out == "0");
    CHECK(run("collapse EPSILON").out == "EPSILON");
    CHECK(run("compress EPSILON").out == "EPSILON");
    CHECK(run("decompress EPSILON").out == "EPSILON");
}

TEST_CASE("binary alias alphabet") {
    CHECK(run("encode 520 --alphabet binary").out == "1101100010110010101100");
    CHECK(run("decode 1101100010110010101100 --alphabet binary").out == "520");
    CHECK(run("succ 1100 --alphabet binary").out == "101100");
}

TEST_CASE("stdin streaming stays line-aligned") {
    RunResult r = run_pipeline("printf '2\\n3\\n4\\n' | " + std::string(RPF_CLI_PATH) + " encode -");
    CHECK(r.exit_code == 0);
    CHECK(r.out == "(())\n()(())\n((()))");
}

TEST_CASE("pipe roundtrip over the first ten thousand naturals") {
    std::string cli(RPF_CLI_PATH);
    RunResult r = run_pipeline("seq 0 10000 | " + cli + " encode - | " + cli + " decode - | cksum");
    RunResult expected = run_pipeline("seq 0 10000 | cksum");
    CHECK(r.exit_code == 0);
    CHECK(r.out == expected.out);
    RunResult rq = run_pipeline("seq 0 10000 | " + cli + " encode - --rational | " + cli +
                                " decode - --rational | cksum");
    CHECK(rq.out == expected.out);
    RunResult rneg = run_pipeline("seq -200 200 | " + cli + " encode - --rational | " + cli +
                                  " decode - --rational | cksum");
    RunResult expected_neg = run_pipeline("seq -200 200 | cksum");
    CHECK(rneg.out == expected_neg.out);
}

TEST_CASE("json output is a single parseable document") {
    RunResult r = run("encode 520 --json", "");
    auto doc = nlohmann::json::parse(r.out);
    CHECK(doc["command"] == "encode");
    CHECK(doc["results"][0]["output"] == "(()(()))()(())()()(())");

    RunResult stream = run_pipeline("printf '5\\n6\\n' | " + std::string(RPF_CLI_PATH) + " encode - --json");
    auto docs = nlohmann::json::parse(stream.out);
    CHECK(docs["results"].size() == 2);

    for (const char* cmd : {"decode '(())' --json", "validate '(())' --json", "collapse '()()' --json",
                            "dinf '()()' --json", "succ EPSILON --json", "factorize '(())' --json",
                            "compress '()()()' --json", "decompress 3 --json",
                            "analyze counts --max 4 --json", "analyze stripes --k 3 --json",
                            "analyze grammar --cap 4 --json", "analyze stripe-patterns --max 3 --json"}) {
        RunResult rr = run(cmd, "");
        CAPTURE(cmd);
        CHECK(rr.exit_code == 0);
        nlohmann::json parsed = nlohmann::json::parse(rr.out, nullptr, false);
        CHECK_FALSE(parsed.is_discarded());
    }
}

TEST_CASE("analyze json follows the report schema") {
    RunResult r = run("analyze grammar --cap 5 --json", "");
    auto doc = nlohmann::json::parse(r.out);
    CHECK(doc["check"] == "grammar");
    CHECK(doc["pass"] == true);
    CHECK(doc["parameters"].is_object());
    CHECK(doc["counterexamples"].is_array());
    CHECK(doc["data"].is_object());
}

TEST_CASE("permutation files drive encode, decode and convert") {
    std::string dir = std::string(RPF_TEST_TMPDIR);
    REQUIRE(run_pipeline("printf '2,1' > " + dir + "/swap.perm && printf '1' > " + dir + "/id.perm")
                .exit_code == 0);
    CHECK(run("encode 3 --perm " + dir + "/swap.perm").out == "(())");
    CHECK(run("decode '(())' --perm " + dir + "/swap.perm").out == "3");
    CHECK(run("convert '(())' --from " + dir + "/swap.perm --to " + dir + "/id.perm").out == "()(())");
    CHECK(run("convert '(())()' --from " + dir + "/swap.perm --to " + dir + "/id.perm").exit_code == 2);
}

TEST_CASE("compressed factorization through the cli") {
    CHECK(run("factorize '(())9(()(()))' --compressed").out == "[(())^()][A(())^()(())]");
    CHECK(run("factorize '(())()()(()(()))((()))'").out ==
          "[(())^()][()()()(())^()(())][()()()()(())^(())]");
    CHECK(run("factorize '(())9(()(()))' --compressed --alphabet binary").exit_code == 1);
}
