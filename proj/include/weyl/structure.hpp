#pragma once

#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "weyl/element.hpp"

namespace weyl {

// ---------------------------------------------------------------------------
// Syntactic membership in the distinguished subspaces. D is the span of the
// axis derivations, D1 its first-l1 part, A[D1] the span of monomials whose
// mu is supported on the first l1 axes.

inline bool term_in_d(const Monomial& m) {
    if (level(m.mu) != 1 || level(m.i) != 0) return false;
    for (const auto& v : m.alpha)
        if (v != 0) return false;
    return true;
}

inline bool term_in_d1(const Monomial& m, std::size_t l1) {
    if (!term_in_d(m)) return false;
    for (std::size_t p = l1; p < m.mu.size(); ++p)
        if (m.mu[p] != 0) return false;
    return true;
}

inline bool term_mu_in_j11(const Monomial& m, std::size_t l1) {
    for (std::size_t p = l1; p < m.mu.size(); ++p)
        if (m.mu[p] != 0) return false;
    return true;
}

inline bool in_a(const WeylElement& u) { return u.is_pure_a(); }

inline bool in_a_plus_d(const WeylElement& u) {
    for (const auto& [m, c] : u.terms())
        if (!is_pure_a(m) && !term_in_d(m)) return false;
    return true;
}

inline bool in_a_plus_d1(const WeylElement& u) {
    const std::size_t l1 = u.sig().l1();
    for (const auto& [m, c] : u.terms())
        if (!is_pure_a(m) && !term_in_d1(m, l1)) return false;
    return true;
}

inline bool in_a_d1(const WeylElement& u) {
    const std::size_t l1 = u.sig().l1();
    for (const auto& [m, c] : u.terms())
        if (!term_mu_in_j11(m, l1)) return false;
    return true;
}

inline bool in_a_d1_plus_d(const WeylElement& u) {
    const std::size_t l1 = u.sig().l1();
    for (const auto& [m, c] : u.terms())
        if (!term_mu_in_j11(m, l1) && !term_in_d(m)) return false;
    return true;
}

// ---------------------------------------------------------------------------
// Classification of ad-local behaviour. The memberships above only sandwich
// the sets of ad-locally finite (F) and ad-locally nilpotent (N) elements,
// so the classifier has honest unknown outcomes in the gaps.

struct LocalClass {
    enum class Verdict {
        cert_nilpotent,
        cert_finite_not_nilpotent,
        not_locally_finite,
        not_nilpotent_unknown_finite,
        inconclusive,
    };
    Verdict verdict;
    std::string reason; // which inclusion fired
};

inline const char* verdict_name(LocalClass::Verdict v) {
    switch (v) {
    case LocalClass::Verdict::cert_nilpotent: return "CertNilpotent";
    case LocalClass::Verdict::cert_finite_not_nilpotent: return "CertFiniteNotNilpotent";
    case LocalClass::Verdict::not_locally_finite: return "NotLocallyFinite";
    case LocalClass::Verdict::not_nilpotent_unknown_finite: return "NotNilpotentUnknownFinite";
    case LocalClass::Verdict::inconclusive: return "Inconclusive";
    }
    return "?";
}

inline LocalClass classify_local(const WeylElement& u) {
    if (u.is_zero()) throw error(errc::zero_element, "cannot classify zero");
    if (in_a_plus_d1(u)) return {LocalClass::Verdict::cert_nilpotent, "A+D1 subset of N"};
    if (in_a_plus_d(u))
        return {LocalClass::Verdict::cert_finite_not_nilpotent, "A+D subset of F, not in A[D1] and N subset of A[D1]"};
    if (!in_a_d1_plus_d(u))
        return {LocalClass::Verdict::not_locally_finite, "not in A[D1]+D and F subset of A[D1]+D"};
    if (!in_a_d1(u))
        return {LocalClass::Verdict::not_nilpotent_unknown_finite,
                "in A[D1]+D between A+D and A[D1]+D, not in A[D1]"};
    return {LocalClass::Verdict::inconclusive, "in A[D1] between A+D1 and A[D1]"};
}

// ---------------------------------------------------------------------------
// ad powers and exact span growth

inline WeylElement ad_power(const WeylElement& u, const WeylElement& v, unsigned s) {
    u.check_sig(v);
    WeylElement w = v;
    for (unsigned k = 0; k < s && !w.is_zero(); ++k) w = bracket(u, w);
    return w;
}

// Exact echelon space over F keyed by leading monomial; used for span
// dimensions and for ideal saturation.
class EchelonSpace {
  public:
    struct Use {
        std::size_t id;
        FieldElement coeff;
    };

    // Fully reduces u against the stored rows; records which rows were used.
    WeylElement reduce(WeylElement u, std::vector<Use>* used = nullptr) const {
        WeylElement rem(u.sig());
        while (!u.is_zero()) {
            Monomial lead = u.terms().rbegin()->first;
            FieldElement c = u.terms().rbegin()->second;
            auto it = rows_.find(lead);
            if (it == rows_.end()) {
                rem.add_term(lead, c);
                u.add_term(lead, -c);
            } else {
                if (used) used->push_back({it->second.id, c});
                u = u - c * it->second.elem;
            }
        }
        return rem;
    }

    // Inserts u if independent; returns the new row id.
    std::optional<std::size_t> insert(const WeylElement& u) {
        WeylElement r = reduce(u);
        if (r.is_zero()) return std::nullopt;
        FieldElement leadc = r.terms().rbegin()->second;
        r = leadc.inverse() * r;
        std::size_t id = next_id_++;
        rows_.emplace(r.terms().rbegin()->first, Row{r, id});
        return id;
    }

    bool contains(const WeylElement& u) const { return reduce(u).is_zero(); }
    std::size_t dim() const { return rows_.size(); }

  private:
    struct Row {
        WeylElement elem;
        std::size_t id;
    };
    std::map<Monomial, Row> rows_;
    std::size_t next_id_ = 0;
};

struct GrowthResult {
    std::optional<unsigned> nilpotent_at;  // first k with (ad u)^k v = 0
    std::vector<std::size_t> span_dims;    // dim span{(ad u)^s v : s <= j} for j = 0,1,...
};

inline GrowthResult ad_growth(const WeylElement& u, const WeylElement& v, unsigned bound) {
    GrowthResult out;
    EchelonSpace space;
    WeylElement w = v;
    for (unsigned s = 0; s <= bound; ++s) {
        if (w.is_zero()) {
            out.nilpotent_at = s;
            return out;
        }
        space.insert(w);
        out.span_dims.push_back(space.dim());
        w = bracket(u, w);
    }
    if (w.is_zero()) out.nilpotent_at = bound + 1;
    return out;
}

// ---------------------------------------------------------------------------
// Eigenvector / centralizer predicates with closed-form answers

inline std::vector<WeylElement> sample_a_plus_d(const Signature& sig) {
    std::vector<WeylElement> gens;
    for (std::size_t k = 0; k < sig.gamma().rank(); ++k) {
        IntVec a(sig.gamma().rank(), 0);
        a[k] = 1;
        gens.push_back(x_elem(sig, a));
        a[k] = -1;
        gens.push_back(x_elem(sig, a));
    }
    for (std::size_t q = 1; q <= sig.t_axes(); ++q) gens.push_back(t_elem(sig, q));
    for (std::size_t p = 1; p <= sig.ell(); ++p) gens.push_back(d_elem(sig, p));
    return gens;
}

inline std::vector<WeylElement> sample_a_plus_d1(const Signature& sig) {
    std::vector<WeylElement> gens;
    for (std::size_t k = 0; k < sig.gamma().rank(); ++k) {
        IntVec a(sig.gamma().rank(), 0);
        a[k] = 1;
        gens.push_back(x_elem(sig, a));
        a[k] = -1;
        gens.push_back(x_elem(sig, a));
    }
    for (std::size_t q = 1; q <= sig.t_axes(); ++q) gens.push_back(t_elem(sig, q));
    for (std::size_t p = 1; p <= sig.l1(); ++p) gens.push_back(d_elem(sig, p));
    return gens;
}

// Is w a scalar multiple of u (exactly)?
inline bool is_multiple_of(const WeylElement& w, const WeylElement& u) {
    if (w.is_zero()) return true;
    if (u.is_zero()) return false;
    const auto& [mu, cu] = *u.terms().begin();
    auto it = w.terms().find(mu);
    if (it == w.terms().end()) return false;
    FieldElement ratio = it->second * cu.inverse();
    return w == ratio * u;
}

// Simultaneous ad-eigenvector for every locally finite element: exactly the
// nonzero scalar multiples of a single x^alpha.
inline bool is_in_e_of_f(const WeylElement& u) {
    if (u.is_zero()) throw error(errc::zero_element, "zero element");
    bool syntactic = false;
    if (u.term_count() == 1) {
        const Monomial& m = u.terms().begin()->first;
        syntactic = level(m.i) == 0 && level(m.mu) == 0;
    }
    if (syntactic) {
        for (const auto& v : sample_a_plus_d(u.sig()))
            if (!is_multiple_of(bracket(v, u), u))
                throw error(errc::internal, "eigen-property violated for a closed-form member");
    }
    return syntactic;
}

// Centralizer of the ad-locally nilpotent set: the span of x^{alpha,i} with
// i supported on the middle l2 axes.
inline bool is_in_n_of_n(const WeylElement& u) {
    if (u.is_zero()) throw error(errc::zero_element, "zero element");
    const Signature& sig = u.sig();
    bool syntactic = true;
    for (const auto& [m, c] : u.terms()) {
        if (level(m.mu) != 0) syntactic = false;
        for (std::size_t p = 0; p < sig.l1() && syntactic; ++p)
            if (m.i[p] != 0) syntactic = false;
        if (!syntactic) break;
    }
    if (syntactic) {
        for (const auto& v : sample_a_plus_d1(sig))
            if (!bracket(v, u).is_zero())
                throw error(errc::internal, "centralizer property violated for a closed-form member");
    }
    return syntactic;
}

inline bool centralizer_check(const WeylElement& u, const std::vector<WeylElement>& gens) {
    for (const auto& g : gens)
        if (!bracket(u, g).is_zero()) return false;
    return true;
}

// ---------------------------------------------------------------------------
// Bounded simplicity probe: saturate the two-sided ideal generated by u
// under one-sided multiplication by the standard generators, watching for
// the scalar 1. Degree caps keep every round finite.

struct ProbeCaps {
    unsigned total_degree = 8; // per-term level(i) + level(mu)
    Int alpha_norm = 4;        // per-term 1-norm of Gamma coordinates
};

struct ProbeResult {
    bool reached_one = false;
    unsigned rounds_used = 0;
    std::vector<std::string> trace; // row provenance entering the final combination
};

inline std::vector<std::pair<std::string, WeylElement>> standard_generators(const Signature& sig) {
    std::vector<std::pair<std::string, WeylElement>> gens;
    for (std::size_t k = 0; k < sig.gamma().rank(); ++k) {
        IntVec a(sig.gamma().rank(), 0);
        a[k] = 1;
        gens.emplace_back("x+" + std::to_string(k + 1), x_elem(sig, a));
        a[k] = -1;
        gens.emplace_back("x-" + std::to_string(k + 1), x_elem(sig, a));
    }
    for (std::size_t q = 1; q <= sig.t_axes(); ++q) gens.emplace_back("t" + std::to_string(q), t_elem(sig, q));
    for (std::size_t p = 1; p <= sig.ell(); ++p) gens.emplace_back("d" + std::to_string(p), d_elem(sig, p));
    return gens;
}

inline bool within_caps(const WeylElement& u, const ProbeCaps& caps) {
    for (const auto& [m, c] : u.terms()) {
        if (level(m.i) + level(m.mu) > caps.total_degree) return false;
        Int s = 0;
        for (const auto& v : m.alpha) s += abs(v);
        if (s > caps.alpha_norm) return false;
    }
    return true;
}

inline ProbeResult simplicity_probe(const WeylElement& u, unsigned steps, ProbeCaps caps = {}) {
    if (u.is_scalar()) throw error(errc::scalar_input, "probe needs a nonscalar element");
    const Signature& sig = u.sig();
    auto gens = standard_generators(sig);

    EchelonSpace space;
    std::map<std::size_t, std::string> provenance;
    std::vector<WeylElement> frontier;

    auto admit = [&](const WeylElement& w, const std::string& desc, std::vector<WeylElement>& next) {
        if (w.is_zero() || !within_caps(w, caps)) return;
        if (auto id = space.insert(w)) {
            provenance[*id] = desc;
            next.push_back(w);
        }
    };

    std::vector<WeylElement> seed;
    admit(u, "u", seed);
    frontier = std::move(seed);

    ProbeResult res;
    const WeylElement one = one_elem(sig);
    auto check_one = [&]() {
        std::vector<EchelonSpace::Use> used;
        if (space.reduce(one, &used).is_zero()) {
            res.reached_one = true;
            for (const auto& use : used) res.trace.push_back(provenance[use.id]);
            return true;
        }
        return false;
    };
    if (check_one()) return res;

    std::size_t row_counter = 0;
    for (unsigned round = 1; round <= steps && !frontier.empty(); ++round) {
        std::vector<WeylElement> next;
        for (const auto& w : frontier) {
            std::string wname = "w" + std::to_string(row_counter++);
            for (const auto& [gname, g] : gens) {
                admit(op_mul(g, w), gname + "*" + wname, next);
                admit(op_mul(w, g), wname + "*" + gname, next);
            }
        }
        res.rounds_used = round;
        if (check_one()) return res;
        frontier = std::move(next);
    }
    return res;
}

} // namespace weyl
