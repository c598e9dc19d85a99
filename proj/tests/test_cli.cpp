#include <catch2/catch_amalgamated.hpp>

#include <cstdio>
#include <fstream>
#include <sstream>

#include "residua/cli.hpp"

using namespace residua;
using residua::cli::request;

namespace {

cli::response run_req(const request& req) {
    std::ostringstream sink;
    return cli::run(req, sink);
}

} // namespace

TEST_CASE("milnor command") {
    request req;
    req.command = "milnor";
    req.vars = 2;
    req.section_text = "[z1, z2]";
    auto resp = run_req(req);
    REQUIRE(resp.exit_code == 0);
    CHECK(resp.payload.at("payload").at("mu") == 1);
    CHECK(resp.payload.at("payload").at("basis") == json::array({"1"}));
}

TEST_CASE("duality-check command") {
    request req;
    req.command = "duality-check";
    req.vars = 2;
    req.section_text = "[3*z1^2, 3*z2^2]";
    auto resp = run_req(req);
    REQUIRE(resp.exit_code == 0);
    CHECK(resp.payload.at("payload").at("nondegenerate") == true);
    CHECK(resp.payload.at("payload").at("mu") == 4);
}

TEST_CASE("residue and pairing-psi commands") {
    request req;
    req.command = "residue";
    req.vars = 2;
    req.section_text = "[3*z1^2, 3*z2^2]";
    req.g_text = "z1*z2";
    auto resp = run_req(req);
    REQUIRE(resp.exit_code == 0);
    CHECK(resp.payload.at("payload").at("value") == "1/9");
    CHECK(resp.payload.at("payload").at("unit_power") == 0);

    req.command = "pairing-psi";
    req.g_text = "z1";
    req.h_text = "z2";
    auto resp2 = run_req(req);
    REQUIRE(resp2.exit_code == 0);
    CHECK(resp2.payload.at("payload").at("unit_power") == 2);
}

TEST_CASE("hessian command") {
    request req;
    req.command = "hessian";
    req.vars = 2;
    req.f_text = "z1^3 + z2^4";
    auto resp = run_req(req);
    REQUIRE(resp.exit_code == 0);
    CHECK(resp.payload.at("payload").at("value") == "6");
    CHECK(resp.payload.at("payload").at("mu") == 6);
}

TEST_CASE("vres command computes the unit example") {
    request req;
    req.command = "vres";
    req.vars = 1;
    req.section_text = "[z1]";
    req.g_text = "1";
    req.h_text = "1";
    req.resolution = 128;
    auto resp = run_req(req);
    REQUIRE(resp.exit_code == 0);
    double re = resp.payload.at("payload").at("value_re").get<double>();
    CHECK(std::abs(re + 1.0) < 1e-9);
}

TEST_CASE("eta export feeds vres through a file") {
    request req;
    req.command = "eta";
    req.vars = 2;
    req.section_text = "[3*z1^2, 3*z2^2]";
    req.g_text = "z1";
    req.h_text = "z2";
    auto resp = run_req(req);
    REQUIRE(resp.exit_code == 0);
    CHECK(resp.payload.at("payload").at("convention") == "derivation");
    CHECK(resp.payload.at("payload").at("dbar_closed") == true);

    std::string path = "cli_eta_roundtrip.json";
    {
        std::ofstream out(path);
        out << resp.payload.dump();
    }
    request vreq;
    vreq.command = "vres";
    vreq.eta_file = path;
    vreq.resolution = 24;
    auto vresp = run_req(vreq);
    std::remove(path.c_str());
    REQUIRE(vresp.exit_code == 0);
    double re = vresp.payload.at("payload").at("value_re").get<double>();
    CHECK(std::abs(re + 1.0 / 9.0) < 1e-4);
}

TEST_CASE("check-laws reports zero failures") {
    request req;
    req.command = "check-laws";
    req.vars = 2;
    req.section_text = "[z1, z2]";
    auto resp = run_req(req);
    REQUIRE(resp.exit_code == 0);
    CHECK(resp.payload.at("payload").at("failures") == 0);
    CHECK(resp.payload.at("payload").at("pass") == true);
}

TEST_CASE("error mapping: arity, parse, domain") {
    request req;
    req.command = "residue";
    req.vars = 2;
    req.section_text = "[z1]";
    req.g_text = "z1";
    auto resp = run_req(req);
    CHECK(resp.exit_code == 2);
    CHECK(resp.payload.at("code") == "ARITY_ERROR");

    req.section_text = "[z1, z2]";
    req.g_text = "z1 + + z2";
    resp = run_req(req);
    CHECK(resp.exit_code == 2);
    CHECK(resp.payload.at("code") == "PARSE_ERROR");
    CHECK(resp.payload.at("col") == 6);

    req.g_text = "z1";
    req.section_text = "[z1, z1*z2]";
    resp = run_req(req);
    CHECK(resp.exit_code == 1);
    CHECK(resp.payload.at("code") == "NON_ISOLATED_ZERO");

    request hreq;
    hreq.command = "homology";
    hreq.vars = 2;
    hreq.section_text = "[z1^2 + z2, z2^2]";
    resp = run_req(hreq);
    CHECK(resp.exit_code == 1);
    CHECK(resp.payload.at("code") == "NOT_QUASI_HOMOGENEOUS");

    request vreq;
    vreq.command = "vres";
    vreq.vars = 2;
    vreq.section_text = "[z1, z1 + z2^2]";
    vreq.g_text = "1";
    vreq.h_text = "1";
    vreq.resolution = 16;
    vreq.radius = 1.0;
    resp = run_req(vreq);
    // zero locus is the origin only, so this one must succeed
    CHECK(resp.exit_code == 0);
}

TEST_CASE("request text round-trips through canonical serialization") {
    request req;
    req.command = "milnor";
    req.vars = 2;
    req.section_text = "[3*z1^2 + z2^2, 2*z1*z2]";
    ring_ptr ring = poly_ring::make(2);
    auto fs = parse_section_list(ring, req.section_text);
    std::string rebuilt = "[";
    for (std::size_t i = 0; i < fs.size(); ++i) rebuilt += (i ? ", " : "") + fs[i].str();
    rebuilt += "]";
    request req2 = req;
    req2.section_text = rebuilt;
    auto a = run_req(req);
    auto b = run_req(req2);
    CHECK(a.payload == b.payload);
    CHECK(parse_section_list(ring, rebuilt) == fs);
}

TEST_CASE("weighted order threads through milnor") {
    request req;
    req.command = "milnor";
    req.vars = 2;
    req.order = "weighted:3,2";
    req.section_text = "[z1^2, z2^3]"; // E6-shaped weights
    auto resp = run_req(req);
    REQUIRE(resp.exit_code == 0);
    CHECK(resp.payload.at("payload").at("mu") == 6);

    req.order = "weighted:1,2,3"; // wrong arity
    auto bad = run_req(req);
    CHECK(bad.exit_code == 2);
    CHECK(bad.payload.at("code") == "ARITY_ERROR");
}

TEST_CASE("check-laws reports the eta convention") {
    request req;
    req.command = "check-laws";
    req.vars = 1;
    auto resp = run_req(req);
    REQUIRE(resp.exit_code == 0);
    CHECK(resp.payload.at("payload").at("eta").at("convention") == "derivation");
    CHECK(resp.payload.at("payload").at("eta").at("dbar_closed") == true);
}

TEST_CASE("pretty output renders tables") {
    request req;
    req.command = "pairing-matrix";
    req.vars = 1;
    req.section_text = "[3*z1^2]";
    req.output = "pretty";
    std::ostringstream out;
    auto resp = cli::run(req, out);
    REQUIRE(resp.exit_code == 0);
    CHECK(out.str().find("determinant: -1/9") != std::string::npos);
}
