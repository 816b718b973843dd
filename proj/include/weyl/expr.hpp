#pragma once

#include <cctype>
#include <string>
#include <utility>
#include <vector>

#include "weyl/element.hpp"
#include "weyl/error.hpp"
#include "weyl/gamma.hpp"

namespace weyl {

// Grammar shared by the CLI and the file formats:
//   element  := ['+'|'-'] term (('+' | '-') term)* ;
//   term     := factor ('*' factor)* ;
//   factor   := atom ['^' nat] ;
//   atom     := 'x[' fieldelem (',' fieldelem)* ']' | 't' nat | 'd' nat
//             | '(' element ')' | rational | 'th' ;
// Field-element literals are rational polynomials in 'th', e.g. 1/2 + 3*th.

namespace lex {

enum class Kind { integer, tvar, dvar, theta, xsym, lparen, rparen, lbracket, rbracket, plus, minus, star, caret, slash, comma, end };

struct Token {
    Kind kind;
    std::string text;  // digits for integer tokens
    std::size_t axis;  // 1-based axis for tvar/dvar
    std::size_t pos;
};

inline std::vector<Token> tokenize(const std::string& s) {
    std::vector<Token> out;
    std::size_t i = 0;
    while (i < s.size()) {
        char c = s[i];
        if (std::isspace(static_cast<unsigned char>(c))) {
            ++i;
            continue;
        }
        std::size_t start = i;
        if (std::isdigit(static_cast<unsigned char>(c))) {
            std::string digits;
            while (i < s.size() && std::isdigit(static_cast<unsigned char>(s[i]))) digits += s[i++];
            out.push_back({Kind::integer, std::move(digits), 0, start});
            continue;
        }
        if (std::isalpha(static_cast<unsigned char>(c))) {
            std::string word;
            while (i < s.size() && std::isalpha(static_cast<unsigned char>(s[i]))) word += s[i++];
            std::string digits;
            while (i < s.size() && std::isdigit(static_cast<unsigned char>(s[i]))) digits += s[i++];
            if (word == "th" && digits.empty()) {
                out.push_back({Kind::theta, "th", 0, start});
            } else if (word == "x" && digits.empty()) {
                out.push_back({Kind::xsym, "x", 0, start});
            } else if ((word == "t" || word == "d") && !digits.empty()) {
                std::size_t axis = 0;
                for (char dch : digits) axis = axis * 10 + static_cast<std::size_t>(dch - '0');
                out.push_back({word == "t" ? Kind::tvar : Kind::dvar, word + digits, axis, start});
            } else {
                throw parse_error(start, "unrecognized symbol '" + word + digits + "'");
            }
            continue;
        }
        Kind k;
        switch (c) {
        case '(': k = Kind::lparen; break;
        case ')': k = Kind::rparen; break;
        case '[': k = Kind::lbracket; break;
        case ']': k = Kind::rbracket; break;
        case '+': k = Kind::plus; break;
        case '-': k = Kind::minus; break;
        case '*': k = Kind::star; break;
        case '^': k = Kind::caret; break;
        case '/': k = Kind::slash; break;
        case ',': k = Kind::comma; break;
        default: throw parse_error(start, std::string("unexpected character '") + c + "'");
        }
        out.push_back({k, std::string(1, c), 0, start});
        ++i;
    }
    out.push_back({Kind::end, "", 0, s.size()});
    return out;
}

} // namespace lex

namespace detail {

class ElementParser {
  public:
    ElementParser(const Signature& sig, const std::string& text)
        : sig_(&sig), field_(sig.field()), tokens_(lex::tokenize(text)) {}

    ElementParser(const NumberField& field, const std::string& text)
        : sig_(nullptr), field_(field), tokens_(lex::tokenize(text)) {}

    WeylElement parse_element_all() {
        WeylElement e = parse_element();
        expect_end();
        return e;
    }

    FieldElement parse_field_all() {
        FieldElement e = parse_fexpr();
        expect_end();
        return e;
    }

    Mat<FieldElement> parse_matrix_all() {
        expect(lex::Kind::lbracket, "expected '['");
        Mat<FieldElement> rows;
        while (true) {
            expect(lex::Kind::lbracket, "expected '['");
            std::vector<FieldElement> row;
            if (peek().kind != lex::Kind::rbracket) {
                row.push_back(parse_fexpr());
                while (peek().kind == lex::Kind::comma) {
                    advance();
                    row.push_back(parse_fexpr());
                }
            }
            expect(lex::Kind::rbracket, "expected ']'");
            rows.push_back(std::move(row));
            if (peek().kind == lex::Kind::comma) {
                advance();
                continue;
            }
            break;
        }
        expect(lex::Kind::rbracket, "expected ']'");
        expect_end();
        return rows;
    }

    std::vector<FieldElement> parse_vector_all() {
        expect(lex::Kind::lbracket, "expected '['");
        std::vector<FieldElement> row;
        if (peek().kind != lex::Kind::rbracket) {
            row.push_back(parse_fexpr());
            while (peek().kind == lex::Kind::comma) {
                advance();
                row.push_back(parse_fexpr());
            }
        }
        expect(lex::Kind::rbracket, "expected ']'");
        expect_end();
        return row;
    }

  private:
    const lex::Token& peek() const { return tokens_[pos_]; }
    const lex::Token& advance() { return tokens_[pos_++]; }
    void expect(lex::Kind k, const std::string& msg) {
        if (peek().kind != k) throw parse_error(peek().pos, msg);
        advance();
    }
    void expect_end() {
        if (peek().kind != lex::Kind::end) throw parse_error(peek().pos, "trailing input");
    }

    unsigned long parse_nat() {
        if (peek().kind != lex::Kind::integer) throw parse_error(peek().pos, "expected a natural number");
        unsigned long v = std::stoul(advance().text);
        return v;
    }

    Rational parse_rational_literal() {
        const lex::Token& t = advance(); // integer token
        Int num(t.text);
        if (peek().kind == lex::Kind::slash) {
            advance();
            if (peek().kind != lex::Kind::integer) throw parse_error(peek().pos, "expected a denominator");
            Int den(advance().text);
            if (den == 0) throw parse_error(peek().pos, "zero denominator");
            return make_rational(num, den);
        }
        return Rational(num);
    }

    // --- field-element sublanguage -----------------------------------------
    FieldElement parse_fexpr() {
        bool neg = false;
        if (peek().kind == lex::Kind::plus || peek().kind == lex::Kind::minus) neg = advance().kind == lex::Kind::minus;
        FieldElement acc = parse_fterm();
        if (neg) acc = -acc;
        while (peek().kind == lex::Kind::plus || peek().kind == lex::Kind::minus) {
            bool minus = advance().kind == lex::Kind::minus;
            FieldElement t = parse_fterm();
            acc = minus ? acc - t : acc + t;
        }
        return acc;
    }

    FieldElement parse_fterm() {
        FieldElement acc = parse_ffactor();
        while (peek().kind == lex::Kind::star) {
            advance();
            acc = acc * parse_ffactor();
        }
        return acc;
    }

    FieldElement parse_ffactor() {
        FieldElement base = parse_fatom();
        if (peek().kind == lex::Kind::caret) {
            advance();
            base = base.pow(parse_nat());
        }
        return base;
    }

    FieldElement parse_fatom() {
        switch (peek().kind) {
        case lex::Kind::integer: return field_.from_rational(parse_rational_literal());
        case lex::Kind::theta: advance(); return field_.theta();
        case lex::Kind::lparen: {
            advance();
            FieldElement e = parse_fexpr();
            expect(lex::Kind::rparen, "expected ')'");
            return e;
        }
        default: throw parse_error(peek().pos, "expected a field-element atom");
        }
    }

    // --- element language ---------------------------------------------------
    WeylElement parse_element() {
        require_sig();
        bool neg = false;
        if (peek().kind == lex::Kind::plus || peek().kind == lex::Kind::minus) neg = advance().kind == lex::Kind::minus;
        WeylElement acc = parse_term();
        if (neg) acc = Rational(-1) * acc;
        while (peek().kind == lex::Kind::plus || peek().kind == lex::Kind::minus) {
            bool minus = advance().kind == lex::Kind::minus;
            WeylElement t = parse_term();
            acc = minus ? acc - t : acc + t;
        }
        return acc;
    }

    WeylElement parse_term() {
        WeylElement acc = parse_factor();
        while (peek().kind == lex::Kind::star) {
            advance();
            acc = op_mul(acc, parse_factor());
        }
        return acc;
    }

    WeylElement parse_factor() {
        WeylElement base = parse_atom();
        if (peek().kind == lex::Kind::caret) {
            advance();
            unsigned long e = parse_nat();
            WeylElement acc = one_elem(*sig_);
            for (unsigned long k = 0; k < e; ++k) acc = op_mul(acc, base);
            return acc;
        }
        return base;
    }

    WeylElement parse_atom() {
        const lex::Token& t = peek();
        switch (t.kind) {
        case lex::Kind::integer: {
            Rational q = parse_rational_literal();
            return scalar_elem(*sig_, field_.from_rational(q));
        }
        case lex::Kind::theta:
            advance();
            return scalar_elem(*sig_, field_.theta());
        case lex::Kind::tvar: {
            advance();
            if (t.axis < 1 || t.axis > sig_->t_axes())
                throw parse_error(t.pos, "t axis out of range", errc::unknown_axis);
            return t_elem(*sig_, t.axis);
        }
        case lex::Kind::dvar: {
            advance();
            if (t.axis < 1 || t.axis > sig_->ell())
                throw parse_error(t.pos, "d axis out of range", errc::unknown_axis);
            return d_elem(*sig_, t.axis);
        }
        case lex::Kind::xsym: {
            std::size_t xpos = t.pos;
            advance();
            expect(lex::Kind::lbracket, "expected '[' after x");
            FVec coords;
            coords.push_back(parse_fexpr());
            while (peek().kind == lex::Kind::comma) {
                advance();
                coords.push_back(parse_fexpr());
            }
            expect(lex::Kind::rbracket, "expected ']'");
            if (coords.size() != sig_->n())
                throw parse_error(xpos, "x[...] needs exactly l2+l3 coordinates", errc::alpha_not_in_gamma);
            auto alpha = sig_->gamma().member(coords);
            if (!alpha) throw parse_error(xpos, "vector is not in Gamma", errc::alpha_not_in_gamma);
            return x_elem(*sig_, *alpha);
        }
        case lex::Kind::lparen: {
            advance();
            WeylElement e = parse_element();
            expect(lex::Kind::rparen, "expected ')'");
            return e;
        }
        default: throw parse_error(t.pos, "expected an atom");
        }
    }

    void require_sig() const {
        if (!sig_) throw error(errc::internal, "element parsing needs a signature");
    }

    const Signature* sig_;
    NumberField field_;
    std::vector<lex::Token> tokens_;
    std::size_t pos_ = 0;
};

} // namespace detail

inline WeylElement parse_element(const Signature& sig, const std::string& text) {
    return detail::ElementParser(sig, text).parse_element_all();
}

inline FieldElement parse_field_element(const NumberField& field, const std::string& text) {
    return detail::ElementParser(field, text).parse_field_all();
}

inline std::vector<FieldElement> parse_field_vector(const NumberField& field, const std::string& text) {
    return detail::ElementParser(field, text).parse_vector_all();
}

inline BlockMatrix parse_block_matrix(const NumberField& field, std::size_t l2, std::size_t l3,
                                      const std::string& text) {
    Mat<FieldElement> rows = detail::ElementParser(field, text).parse_matrix_all();
    if (rows.size() != l2 + l3) throw parse_error(0, "matrix must have l2+l3 rows");
    for (const auto& r : rows)
        if (r.size() != l2 + l3) throw parse_error(0, "matrix must be square of size l2+l3");
    try {
        return BlockMatrix::from_full(field, l2, l3, rows);
    } catch (const error& e) {
        if (e.code() == errc::shape_mismatch) throw parse_error(0, e.what());
        throw;
    }
}

// ---------------------------------------------------------------------------
// Printing. Terms are emitted in descending monomial order; output reparses
// to the same element.

namespace detail {

inline std::string coeff_string(const FieldElement& c) {
    // Caller guarantees the leading (lowest-power) nonzero coordinate is
    // positive. Empty result means coefficient 1.
    if (c.is_one()) return "";
    const auto& coords = c.coords();
    std::size_t nonzero = 0, which = 0;
    for (std::size_t k = 0; k < coords.size(); ++k)
        if (coords[k] != 0) {
            ++nonzero;
            which = k;
        }
    if (nonzero == 1) {
        if (which == 0) return to_string(coords[0]);
        std::string power = which == 1 ? "th" : "th^" + std::to_string(which);
        return coords[which] == 1 ? power : to_string(coords[which]) + "*" + power;
    }
    return "(" + to_string(c) + ")";
}

} // namespace detail

inline std::string to_string(const WeylElement& u) {
    if (u.is_zero()) return "0";
    const Signature& sig = u.sig();
    std::string out;
    auto emit = [&out](bool neg, const std::string& body) {
        if (out.empty())
            out = (neg ? "-" : "") + body;
        else
            out += (neg ? " - " : " + ") + body;
    };

    for (auto it = u.terms().rbegin(); it != u.terms().rend(); ++it) {
        const Monomial& m = it->first;
        const FieldElement& c = it->second;

        std::vector<std::string> parts;
        bool alpha_zero = true;
        for (const auto& v : m.alpha)
            if (v != 0) alpha_zero = false;
        if (!alpha_zero) {
            FVec emb = sig.gamma().embed(m.alpha);
            std::string xs = "x[";
            for (std::size_t j = 0; j < emb.size(); ++j) {
                if (j) xs += ",";
                xs += to_string(emb[j]);
            }
            xs += "]";
            parts.push_back(std::move(xs));
        }
        for (std::size_t k = 0; k < sig.t_axes(); ++k)
            if (m.i[k] > 0)
                parts.push_back("t" + std::to_string(k + 1) + (m.i[k] > 1 ? "^" + std::to_string(m.i[k]) : ""));
        for (std::size_t p = 0; p < sig.ell(); ++p)
            if (m.mu[p] > 0)
                parts.push_back("d" + std::to_string(p + 1) + (m.mu[p] > 1 ? "^" + std::to_string(m.mu[p]) : ""));

        if (parts.empty()) {
            // Constant term: emit each th power as its own summand.
            const auto& coords = c.coords();
            for (std::size_t k = 0; k < coords.size(); ++k) {
                if (coords[k] == 0) continue;
                bool neg = coords[k] < 0;
                Rational v = neg ? Rational(-coords[k]) : coords[k];
                std::string body;
                if (k == 0)
                    body = to_string(v);
                else {
                    std::string power = k == 1 ? "th" : "th^" + std::to_string(k);
                    body = (v == 1) ? power : to_string(v) + "*" + power;
                }
                emit(neg, body);
            }
            continue;
        }

        // Sign comes from the lowest nonzero coordinate.
        bool neg = false;
        for (const auto& q : c.coords()) {
            if (q == 0) continue;
            neg = q < 0;
            break;
        }
        FieldElement cc = neg ? -c : c;
        std::string coeff = detail::coeff_string(cc);
        std::string body;
        for (std::size_t j = 0; j < parts.size(); ++j) {
            if (j || !coeff.empty()) body += "*";
            body += parts[j];
        }
        emit(neg, coeff + body);
    }
    return out;
}

inline std::string to_string(const Mat<FieldElement>& m, bool spaced = false) {
    std::string out = "[";
    for (std::size_t i = 0; i < m.size(); ++i) {
        if (i) out += spaced ? ", " : ",";
        out += "[";
        for (std::size_t j = 0; j < m[i].size(); ++j) {
            if (j) out += spaced ? ", " : ",";
            out += to_string(m[i][j], spaced);
        }
        out += "]";
    }
    out += "]";
    return out;
}

} // namespace weyl
