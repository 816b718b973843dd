#pragma once

#include <fstream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "weyl/expr.hpp"
#include "weyl/signature.hpp"

namespace weyl {

// Line-oriented `key = value` text with '#' comments:
//   l1 = 1
//   l2 = 1
//   l3 = 0
//   minpoly = [0, 1]
//   gen = [2]
// One `gen` line per generator; entries are field-element literals.

inline Signature parse_signature_text(const std::string& text) {
    std::optional<std::size_t> l1, l2, l3;
    std::optional<std::string> minpoly_text;
    std::vector<std::string> gen_texts;

    std::istringstream in(text);
    std::string line;
    std::size_t lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        if (auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
        std::size_t a = line.find_first_not_of(" \t\r");
        if (a == std::string::npos) continue;
        std::size_t eq = line.find('=');
        if (eq == std::string::npos)
            throw parse_error(lineno, "expected 'key = value' in signature file");
        auto strip = [](std::string s) {
            std::size_t b = s.find_first_not_of(" \t\r");
            std::size_t e = s.find_last_not_of(" \t\r");
            return b == std::string::npos ? std::string() : s.substr(b, e - b + 1);
        };
        std::string key = strip(line.substr(0, eq));
        std::string value = strip(line.substr(eq + 1));
        auto parse_nat = [&](const std::string& v) {
            for (char c : v)
                if (!std::isdigit(static_cast<unsigned char>(c)))
                    throw parse_error(lineno, key + " must be a natural number");
            if (v.empty()) throw parse_error(lineno, key + " must be a natural number");
            return static_cast<std::size_t>(std::stoul(v));
        };
        if (key == "l1")
            l1 = parse_nat(value);
        else if (key == "l2")
            l2 = parse_nat(value);
        else if (key == "l3")
            l3 = parse_nat(value);
        else if (key == "minpoly")
            minpoly_text = value;
        else if (key == "gen")
            gen_texts.push_back(value);
        else
            throw parse_error(lineno, "unknown key '" + key + "'");
    }
    if (!l1 || !l2 || !l3) throw parse_error(0, "signature file must set l1, l2 and l3");
    if (!minpoly_text) throw parse_error(0, "signature file must set minpoly");

    // minpoly entries are plain rationals; parse against Q and reject th.
    NumberField q = NumberField::rationals();
    std::vector<FieldElement> raw = parse_field_vector(q, *minpoly_text);
    std::vector<Rational> minpoly;
    minpoly.reserve(raw.size());
    for (const auto& e : raw) minpoly.push_back(e.rational_value());
    NumberField field = NumberField::make(std::move(minpoly));

    Mat<FieldElement> gens;
    gens.reserve(gen_texts.size());
    for (const auto& g : gen_texts) gens.push_back(parse_field_vector(field, g));
    GammaGroup gamma = GammaGroup::make(field, *l2 + *l3, gens);
    return Signature::make(*l1, *l2, *l3, field, gamma);
}

inline Signature load_signature(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw error(errc::parse_error, "cannot open signature file '" + path + "'");
    std::ostringstream buf;
    buf << in.rdbuf();
    return parse_signature_text(buf.str());
}

// Canonical form: the stored Z-basis, one gen line per row. Parsing the
// output reproduces an equal signature.
inline std::string save_signature(const Signature& sig) {
    std::string out;
    out += "l1 = " + std::to_string(sig.l1()) + "\n";
    out += "l2 = " + std::to_string(sig.l2()) + "\n";
    out += "l3 = " + std::to_string(sig.l3()) + "\n";
    out += "minpoly = [";
    const auto& mp = sig.field().minpoly();
    for (std::size_t k = 0; k < mp.size(); ++k) {
        if (k) out += ", ";
        out += to_string(mp[k]);
    }
    out += "]\n";
    for (const auto& row : sig.gamma().basis()) {
        out += "gen = [";
        for (std::size_t j = 0; j < row.size(); ++j) {
            if (j) out += ", ";
            out += to_string(row[j]);
        }
        out += "]\n";
    }
    return out;
}

} // namespace weyl
