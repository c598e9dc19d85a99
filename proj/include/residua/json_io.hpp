#pragma once

#include <json.hpp>

#include "residua/koszul.hpp"
#include "residua/parser.hpp"
#include "residua/laws.hpp"
#include "residua/residue.hpp"
#include "residua/vres.hpp"

namespace residua {

using nlohmann::json;

inline json to_json(const residue_value& v) {
    return json{{"value", v.value.str()}, {"unit_power", v.unit_power}};
}

inline json to_json(const ring_ptr& ring, const pairing_matrix& pm) {
    json basis = json::array();
    for (const auto& m : pm.basis) basis.push_back(polynomial::from_monomial(ring, m, 1).str());
    json rows = json::array();
    for (const auto& row : pm.entries) {
        json r = json::array();
        for (const auto& e : row) r.push_back(e.str());
        rows.push_back(std::move(r));
    }
    return json{{"basis", std::move(basis)},
                {"entries", std::move(rows)},
                {"determinant", pm.determinant.str()}};
}

inline json to_json(const duality_report& r) {
    return json{{"nondegenerate", r.nondegenerate},
                {"mu", r.mu},
                {"determinant", r.determinant.str()}};
}

inline json to_json(const milnor_algebra& m, const ring_ptr& ring, bool with_table = false) {
    json basis = json::array();
    for (const auto& b : m.basis) basis.push_back(polynomial::from_monomial(ring, b, 1).str());
    json out{{"mu", m.mu}, {"basis", std::move(basis)}};
    if (with_table) {
        json table = json::array();
        for (std::size_t i = 0; i < m.mu; ++i) {
            json row = json::array();
            for (std::size_t j = 0; j < m.mu; ++j) {
                json cell = json::array();
                for (const auto& c : m.mult[i][j]) cell.push_back(c.str());
                row.push_back(std::move(cell));
            }
            table.push_back(std::move(row));
        }
        out["mult_table"] = std::move(table);
    }
    return out;
}

inline json to_json(const homology_table& t) {
    json entries = json::array();
    for (const auto& [k, d, dim] : t.entries)
        entries.push_back(json{{"k", k}, {"degree", d}, {"dim", dim}});
    return json{{"entries", std::move(entries)},
                {"euler", t.euler()},
                {"dmin", t.dmin},
                {"dmax", t.dmax}};
}

inline json to_json(const law_report& r) {
    json items = json::array();
    for (const auto& it : r.items)
        items.push_back(json{{"name", it.name},
                             {"checks", it.checks},
                             {"failures", it.failures},
                             {"detail", it.detail}});
    return json{{"identities", std::move(items)},
                {"checks", r.total_checks()},
                {"failures", r.total_failures()}};
}

inline json to_json(const op_report& r) {
    json items = json::array();
    for (const auto& it : r.items)
        items.push_back(json{{"name", it.name}, {"pass", it.pass}, {"discrepancy", it.discrepancy}});
    return json{{"identities", std::move(items)}, {"failures", r.failures()}};
}

inline json to_json(const numeric_residue& v) {
    return json{{"value_re", v.value.real()},
                {"value_im", v.value.imag()},
                {"error_estimate", v.error_estimate},
                {"radius", v.radius},
                {"resolution", v.resolution}};
}

inline json to_json(const equa9_report& r) {
    return json{{"numeric", to_json(r.numeric)},
                {"exact_residue", r.exact_residue.str()},
                {"expected_re", r.expected.real()},
                {"expected_im", r.expected.imag()},
                {"abs_diff", r.abs_diff},
                {"tolerance", r.tolerance},
                {"pass", r.pass}};
}

inline json to_json(const radius_report& r) {
    json vals = json::array();
    for (const auto& v : r.values) vals.push_back(to_json(v));
    return json{{"values", std::move(vals)},
                {"spread", r.spread},
                {"tolerance", r.tolerance},
                {"pass", r.pass}};
}

inline json eta_tree_to_json(const eta_tree& t, const char* convention, bool dbar_closed) {
    json terms = json::array();
    for (const auto& tm : t.terms) {
        json dzbar = json::array();
        for (int i = 1; i <= t.n; ++i)
            if (tm.dzbar & (1u << (i - 1))) dzbar.push_back(i);
        terms.push_back(json{{"i", tm.branch},
                             {"coeff", tm.coeff.str()},
                             {"monomial", tm.mono.exponents()},
                             {"ss_power", tm.ss_pow},
                             {"dzbar", std::move(dzbar)}});
    }
    return json{{"n", t.n},
                {"ss", t.ss.str()},
                {"terms", std::move(terms)},
                {"convention", convention},
                {"dbar_closed", dbar_closed}};
}

inline eta_tree eta_tree_from_json(const json& full) {
    const json& j = full.contains("payload") ? full.at("payload") : full;
    int n = j.at("n").get<int>();
    ring_ptr dring = poly_ring::make_with_conjugates(n);
    eta_tree t{n, dring, parse_polynomial(dring, j.at("ss").get<std::string>()), {}};
    for (const auto& jt : j.at("terms")) {
        polynomial c = parse_polynomial(t.dring, jt.at("coeff").get<std::string>());
        if (!c.is_constant()) fail(errc::parse_error, "eta term coefficient is not constant");
        auto exps = jt.at("monomial").get<std::vector<std::uint32_t>>();
        if (exps.size() != static_cast<std::size_t>(2 * t.n))
            fail(errc::parse_error, "eta term monomial has wrong length");
        std::uint32_t dzbar = 0;
        for (int i : jt.at("dzbar").get<std::vector<int>>()) dzbar |= 1u << (i - 1);
        // the closed form always carries the full dz_1..dz_n factor
        t.terms.push_back({jt.at("i").get<int>(), c.constant_term(), monomial(std::move(exps)),
                           jt.at("ss_power").get<unsigned>(), dzbar, (1u << t.n) - 1u});
    }
    return t;
}

} // namespace residua
