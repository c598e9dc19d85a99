#pragma once

#include <fstream>
#include <iomanip>
#include <optional>
#include <ostream>
#include <sstream>
#include <string>
#include <vector>

#include "residua/json_io.hpp"

namespace residua::cli {

/// Parsed invocation. Commands: milnor, homology, residue, pairing-matrix,
/// duality-check, pairing-psi, hessian, eta, vres, check-laws.
struct request {
    std::string command;
    int vars = 0;
    std::string order = "grevlex";
    std::string section_text;
    std::string g_text;
    std::string h_text = "1";
    std::string f_text;
    std::vector<long> weights;
    std::optional<long> dmin, dmax;
    double radius = 1.0;
    int resolution = 0; // 0 = command default
    double tol = 0.0;   // 0 = command default
    std::vector<double> radii{0.5, 1.0, 2.0};
    int f_rank = 1;
    std::string eta_file;
    std::string output = "json";
};

struct response {
    int exit_code = 0;   // 0 ok, 1 domain error, 2 parse error
    json payload;        // full response document
};

namespace detail {

inline monomial_order parse_order(const std::string& text, int nvars) {
    if (text == "lex") return monomial_order::lex();
    if (text == "grlex") return monomial_order::grlex();
    if (text == "grevlex") return monomial_order::grevlex();
    if (text.rfind("weighted:", 0) == 0) {
        std::vector<long> w;
        std::stringstream ss(text.substr(9));
        std::string item;
        while (std::getline(ss, item, ',')) w.push_back(std::stol(item));
        if (static_cast<int>(w.size()) != nvars)
            throw error(errc::arity_error, "order weights count != --vars");
        return monomial_order::weighted(std::move(w));
    }
    throw error(errc::parse_error, "unknown order '" + text + "'");
}

inline section build_section(const request& req) {
    if (req.vars <= 0) throw error(errc::arity_error, "--vars must be positive");
    ring_ptr ring = poly_ring::make(req.vars);
    auto fs = parse_section_list(ring, req.section_text);
    if (fs.size() != static_cast<std::size_t>(req.vars))
        throw error(errc::arity_error,
                    "section has " + std::to_string(fs.size()) + " entries but --vars is " +
                        std::to_string(req.vars));
    std::optional<std::vector<long>> w;
    if (!req.weights.empty()) w = req.weights;
    return section::make(ring, std::move(fs), std::move(w));
}

inline polynomial need_poly(const request& req, const std::string& text, const char* flag,
                            const ring_ptr& ring) {
    (void)req;
    if (text.empty()) throw error(errc::arity_error, std::string("missing required ") + flag);
    return parse_polynomial(ring, text);
}

inline quadrature_spec build_spec(const request& req, int n) {
    quadrature_spec spec;
    spec.radius = req.radius;
    spec.resolution = req.resolution > 0 ? req.resolution : (n == 1 ? 256 : 64);
    spec.target_tol = req.tol > 0 ? req.tol : 0.0;
    return spec;
}

// ---- pretty renderers ---------------------------------------------------

inline void pretty_matrix(std::ostream& os, const json& pm) {
    const auto& basis = pm.at("basis");
    const auto& rows = pm.at("entries");
    std::size_t width = 6;
    for (const auto& b : basis) width = std::max(width, b.get<std::string>().size() + 2);
    for (const auto& row : rows)
        for (const auto& e : row) width = std::max(width, e.get<std::string>().size() + 2);
    os << std::setw(static_cast<int>(width)) << "";
    for (const auto& b : basis) os << std::setw(static_cast<int>(width)) << b.get<std::string>();
    os << "\n";
    for (std::size_t i = 0; i < rows.size(); ++i) {
        os << std::setw(static_cast<int>(width)) << basis[i].get<std::string>();
        for (const auto& e : rows[i]) os << std::setw(static_cast<int>(width)) << e.get<std::string>();
        os << "\n";
    }
    os << "determinant: " << pm.at("determinant").get<std::string>() << "\n";
}

inline void pretty_homology(std::ostream& os, const json& t) {
    os << std::setw(6) << "k" << std::setw(10) << "degree" << std::setw(8) << "dim" << "\n";
    for (const auto& e : t.at("entries"))
        os << std::setw(6) << e.at("k").get<int>() << std::setw(10) << e.at("degree").get<long>()
           << std::setw(8) << e.at("dim").get<std::size_t>() << "\n";
    os << "euler: " << t.at("euler").get<long>() << "   (degrees " << t.at("dmin").get<long>()
       << ".." << t.at("dmax").get<long>() << ")\n";
}

inline void pretty_default(std::ostream& os, const json& payload) {
    os << payload.dump(2) << "\n";
}

} // namespace detail

/// Executes a parsed request; never throws (errors become the documented
/// response codes).
inline response run(const request& req, std::ostream& out) {
    response resp;
    json payload;
    try {
        const std::string& cmd = req.command;
        if (cmd == "milnor") {
            section s = detail::build_section(req);
            auto m = make_milnor(s, detail::parse_order(req.order, req.vars));
            payload = to_json(m, s.ring);
        } else if (cmd == "homology") {
            section s = detail::build_section(req);
            std::optional<std::pair<long, long>> range;
            if (req.dmin && req.dmax) range = {*req.dmin, *req.dmax};
            auto t = koszul_homology_graded(s, range);
            payload = to_json(t);
            payload["mu"] = make_milnor(s).mu;
        } else if (cmd == "residue") {
            section s = detail::build_section(req);
            auto g = detail::need_poly(req, req.g_text, "--g", s.ring);
            payload = to_json(groth_residue(g, s));
        } else if (cmd == "pairing-matrix") {
            section s = detail::build_section(req);
            payload = to_json(s.ring, residue_pairing_matrix(s));
        } else if (cmd == "duality-check") {
            section s = detail::build_section(req);
            auto rep = duality_check(s);
            payload = to_json(rep);
        } else if (cmd == "pairing-psi") {
            section s = detail::build_section(req);
            auto g = detail::need_poly(req, req.g_text, "--g", s.ring);
            auto h = detail::need_poly(req, req.h_text, "--h", s.ring);
            payload = to_json(pairing_psi(g, h, s));
        } else if (cmd == "hessian") {
            if (req.vars <= 0) throw error(errc::arity_error, "--vars must be positive");
            ring_ptr ring = poly_ring::make(req.vars);
            auto f = detail::need_poly(req, req.f_text, "--f", ring);
            auto r = hessian_residue(f);
            payload = to_json(r);
            payload["mu"] = make_milnor(section::gradient_of(f)).mu;
        } else if (cmd == "eta") {
            section s = detail::build_section(req);
            auto g = detail::need_poly(req, req.g_text, "--g", s.ring);
            auto h = detail::need_poly(req, req.h_text, "--h", s.ring);
            auto res = eta_psi(g, h, s);
            auto tree = export_eta(g, h, s, res.ctx);
            payload = eta_tree_to_json(tree, iota_convention_name(res.convention),
                                       res.dbar_closed);
        } else if (cmd == "vres") {
            std::optional<eta_tree> tree;
            if (!req.eta_file.empty()) {
                std::ifstream in(req.eta_file);
                if (!in) throw error(errc::invalid_argument, "cannot open " + req.eta_file);
                json j = json::parse(in);
                tree = eta_tree_from_json(j);
            } else {
                section s = detail::build_section(req);
                auto g = detail::need_poly(req, req.g_text, "--g", s.ring);
                auto h = detail::need_poly(req, req.h_text, "--h", s.ring);
                tree = export_eta(g, h, s);
            }
            payload = to_json(integrate_eta(*tree, detail::build_spec(req, tree->n)));
        } else if (cmd == "check-laws") {
            int n = req.vars > 0 ? req.vars : 2;
            law_report ext = exterior_law_suite(n, 1, 100);
            payload["exterior"] = to_json(ext);
            section s = [&] {
                if (!req.section_text.empty()) return detail::build_section(req);
                ring_ptr ring = poly_ring::make(n);
                std::vector<polynomial> fs;
                for (int i = 0; i < n; ++i)
                    fs.push_back(polynomial::variable(ring, static_cast<std::size_t>(i)));
                return section::make(ring, std::move(fs));
            }();
            auto ctx = make_dolbeault_context(s, req.f_rank);
            auto comm = check_commutators(ctx, default_samples(ctx));
            payload["commutators"] = to_json(comm);
            std::vector<form<cutoff_expr>> cut;
            for (const auto& smp : default_samples(ctx)) cut.push_back(lift_to_cutoff(smp));
            auto homo = check_homotopy_lemma(ctx, cut);
            payload["homotopy"] = to_json(homo);
            std::size_t fails = ext.total_failures() + comm.failures() + homo.failures();
            if (n <= 2) {
                auto er = eta_psi(polynomial::one(s.ring), polynomial::one(s.ring), s, ctx);
                payload["eta"] = json{{"convention", iota_convention_name(er.convention)},
                                      {"dbar_closed", er.dbar_closed}};
                if (!er.dbar_closed) ++fails;
            }
            payload["failures"] = fails;
            payload["pass"] = fails == 0;
        } else {
            throw error(errc::parse_error, "unknown command '" + cmd + "'");
        }
    } catch (const error& e) {
        json err{{"status", "error"},
                 {"code", errc_name(e.code())},
                 {"message", e.what()},
                 {"diagnostics", json::array()}};
        if (e.code() == errc::parse_error && (e.line() || e.col())) {
            err["line"] = e.line();
            err["col"] = e.col();
        }
        resp.exit_code = (e.code() == errc::parse_error || e.code() == errc::arity_error) ? 2 : 1;
        resp.payload = std::move(err);
        out << resp.payload.dump(2) << "\n";
        return resp;
    }

    resp.payload = json{{"status", "ok"}, {"payload", payload}, {"diagnostics", json::array()}};
    if (req.output == "pretty") {
        if (req.command == "pairing-matrix")
            detail::pretty_matrix(out, payload);
        else if (req.command == "homology")
            detail::pretty_homology(out, payload);
        else
            detail::pretty_default(out, payload);
    } else {
        out << resp.payload.dump(2) << "\n";
    }
    return resp;
}

} // namespace residua::cli
