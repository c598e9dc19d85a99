#include <CLI11.hpp>

#include <iostream>
#include <string>
#include <vector>

#include "residua/cli.hpp"

namespace {

void add_common(CLI::App* cmd, residua::cli::request& req, bool wants_section) {
    cmd->set_help_flag("--help", "print help");
    cmd->add_option("--vars", req.vars, "number of variables (n)");
    cmd->add_option("--order", req.order, "monomial order: lex|grlex|grevlex|weighted:w1,..,wn");
    if (wants_section)
        cmd->add_option("--section", req.section_text,
                        "section components, e.g. \"[3*z1^2, 3*z2^2]\"");
    cmd->add_option("--output", req.output, "json|pretty")->check(CLI::IsMember({"json", "pretty"}));
}

} // namespace

int main(int argc, char** argv) {
    residua::cli::request req;
    CLI::App app{"exact Koszul/residue engine on C^n: Milnor algebras, graded Koszul homology,\n"
                 "Grothendieck residues with the duality pairing, and the numeric virtual residue"};
    app.require_subcommand(1);
    app.set_config("--config", "", "key=value config file (flags override)");
    app.fallthrough();

    auto* milnor = app.add_subcommand("milnor", "standard-monomial basis and Milnor number");
    add_common(milnor, req, true);

    auto* homology = app.add_subcommand("homology", "graded Koszul homology dimensions");
    add_common(homology, req, true);
    homology->add_option("--weights", req.weights, "positive variable weights w1,..,wn")
        ->delimiter(',');
    long dmin = 0, dmax = 0;
    auto* odmin = homology->add_option("--dmin", dmin, "lowest internal degree");
    auto* odmax = homology->add_option("--dmax", dmax, "highest internal degree");

    auto* residue = app.add_subcommand("residue", "Grothendieck residue of --g against the section");
    add_common(residue, req, true);
    residue->add_option("--g", req.g_text, "numerator polynomial");

    auto* pmatrix = app.add_subcommand("pairing-matrix", "residue pairing on the Milnor basis");
    add_common(pmatrix, req, true);

    auto* dual = app.add_subcommand("duality-check", "non-degeneracy of the residue pairing");
    add_common(dual, req, true);

    auto* ppsi = app.add_subcommand("pairing-psi", "duality pairing (g,h) in units of (2 pi i)^n");
    add_common(ppsi, req, true);
    ppsi->add_option("--g", req.g_text, "left argument");
    ppsi->add_option("--h", req.h_text, "right argument");

    auto* hess = app.add_subcommand("hessian", "residue of the Hessian determinant of --f");
    add_common(hess, req, false);
    hess->add_option("--f", req.f_text, "potential; the section is its gradient");

    auto* eta = app.add_subcommand("eta", "closed (n, n-1)-form eta as a JSON term tree");
    add_common(eta, req, true);
    eta->add_option("--g", req.g_text, "numerator factor g");
    eta->add_option("--h", req.h_text, "numerator factor h");

    auto* vres = app.add_subcommand("vres", "numeric virtual residue over a sphere");
    add_common(vres, req, true);
    vres->add_option("--g", req.g_text, "numerator factor g");
    vres->add_option("--h", req.h_text, "numerator factor h");
    vres->add_option("--radius", req.radius, "sphere radius");
    vres->add_option("--resolution", req.resolution, "points per angular dimension");
    vres->add_option("--tol", req.tol, "target tolerance for the error estimate");
    vres->add_option("--eta-file", req.eta_file, "integrate a previously exported eta tree");

    auto* laws = app.add_subcommand("check-laws", "run the symbolic identity suites");
    add_common(laws, req, true);
    laws->add_option("--f-rank", req.f_rank, "rank of the trivial twist bundle");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int rc = app.exit(e);
        return rc == 0 ? 0 : 2;
    }

    if (odmin->count()) req.dmin = dmin;
    if (odmax->count()) req.dmax = dmax;
    for (auto* sub : {milnor, homology, residue, pmatrix, dual, ppsi, hess, eta, vres, laws})
        if (sub->parsed()) req.command = sub->get_name();

    return residua::cli::run(req, std::cout).exit_code;
}
