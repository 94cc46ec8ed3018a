#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <array>
#include <cstdio>
#include <string>

#include "edc/census.hpp"

#ifndef EDCENSUS_BIN
#error "EDCENSUS_BIN must point at the CLI binary"
#endif

namespace {

struct RunResult {
    int exit_code = -1;
    std::string output;
};

RunResult run_cli(const std::string& args) {
    std::string cmd = std::string(EDCENSUS_BIN) + " " + args + " 2>&1";
    FILE* pipe = popen(cmd.c_str(), "r");
    REQUIRE(pipe != nullptr);
    RunResult res;
    std::array<char, 4096> buf;
    size_t n;
    while ((n = fread(buf.data(), 1, buf.size(), pipe)) > 0) res.output.append(buf.data(), n);
    int status = pclose(pipe);
    res.exit_code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
    return res;
}

}  // namespace

TEST_CASE("census subcommand") {
    RunResult r = run_cli("census --p 13");
    CHECK(r.exit_code == 0);
    CHECK(r.output.find("# ctx=13^1") != std::string::npos);
    CHECK(r.output.find("A,N,N_n2,N_2n4,N_4,d_list") != std::string::npos);
    CHECK(r.output.find("-6,1,") != std::string::npos);
    CHECK(r.output.find("-2,6,") != std::string::npos);

    // emitted CSV re-parses to the identical table
    edc::CensusTable direct = edc::trace_spectrum(edc::FieldContext::create(13));
    edc::CensusTable parsed = edc::census_from_csv(r.output);
    CHECK(edc::census_to_csv(parsed) == edc::census_to_csv(direct));

    RunResult rj = run_cli("census --p 13 --format json");
    CHECK(rj.exit_code == 0);
    edc::CensusTable parsed_json = edc::census_from_json(rj.output);
    CHECK(edc::census_to_json(parsed_json) == edc::census_to_json(direct));
}

TEST_CASE("verify subcommand") {
    CHECK(run_cli("verify --p 13 --theorem katz").exit_code == 0);
    CHECK(run_cli("verify --p 13 --theorem 7.6").exit_code == 0);
    CHECK(run_cli("verify --p 7 --theorem 7.7").exit_code == 0);
    CHECK(run_cli("verify --p 13 --theorem all").exit_code == 0);
    CHECK(run_cli("verify --p 7 --theorem all").exit_code == 0);
    // residue-class mismatch is a precondition error
    CHECK(run_cli("verify --p 7 --theorem katz").exit_code == 3);
    CHECK(run_cli("verify --p 13 --theorem nonsense").exit_code == 3);
    RunResult r = run_cli("verify --p 13 --theorem katz");
    CHECK(r.output.find("\"status\": \"verified\"") != std::string::npos);
}

TEST_CASE("map subcommand") {
    RunResult r = run_cli("map --name psi --p 13 --d 2 --point 0,1");
    CHECK(r.exit_code == 0);
    CHECK(r.output.find("inf") != std::string::npos);

    RunResult r2 = run_cli("map --name psi --p 13 --d 2 --point 1,0");
    CHECK(r2.exit_code == 0);
    CHECK(r2.output.find("(1,0)") != std::string::npos);

    RunResult r3 = run_cli("map --name s2 --p 13 --d 4 --point 4,0");
    CHECK(r3.exit_code == 0);
    CHECK(r3.output.find("(1,0)") != std::string::npos);

    // maps needing an extension are refused without the flag
    RunResult r4 = run_cli("map --name s1 --p 7 --d 3 --point inf");
    CHECK(r4.exit_code == 3);
    RunResult r5 = run_cli("map --name s1 --p 7 --d 3 --point inf --allow-extension");
    CHECK(r5.exit_code == 0);

    // twisted psi through --a
    RunResult r6 = run_cli("map --name psi --p 13 --a 4 --d 3 --point 0,1");
    CHECK(r6.exit_code == 0);
    CHECK(r6.output.find("inf") != std::string::npos);

    // malformed point literal
    CHECK(run_cli("map --name psi --p 13 --d 2 --point '0;1'").exit_code == 3);
    CHECK(run_cli("map --name nosuch --p 13 --d 2 --point 0,1").exit_code == 3);

    // the huff parameter map: a = 3, b = 1 over F_13 gives d = 10
    RunResult rh = run_cli("map --name huff --p 13 --a 3 --b 1");
    CHECK(rh.exit_code == 0);
    CHECK(rh.output.find("10") != std::string::npos);
    CHECK(run_cli("map --name huff --p 13 --a 3 --b 3").exit_code == 3);
}

TEST_CASE("classify, deuring and orbit subcommands") {
    RunResult r = run_cli("classify --p 13 --d 3");
    CHECK(r.exit_code == 0);
    CHECK(r.output.find("\"trace\": -2") != std::string::npos);
    CHECK(r.output.find("\"original_isogenous\": true") != std::string::npos);

    RunResult rd = run_cli("deuring --p 7");
    CHECK(rd.exit_code == 0);
    CHECK(rd.output.find("S=3") != std::string::npos);

    RunResult ro = run_cli("orbit --p 13 --d 3");
    CHECK(ro.exit_code == 0);
    CHECK(ro.output.find("3;5;6;8;9;11") != std::string::npos);

    // degenerate parameter -> precondition exit
    CHECK(run_cli("orbit --p 13 --d 1").exit_code == 3);
    // census bound violations
    CHECK(run_cli("census --p 1021 --m 3").exit_code == 3);
}

TEST_CASE("usage errors") {
    CHECK(run_cli("").exit_code == 1);
    CHECK(run_cli("nonsense").exit_code == 1);
    CHECK(run_cli("census").exit_code == 1);  // missing --p
}
