#pragma once

#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "weyl/error.hpp"
#include "weyl/gamma.hpp"
#include "weyl/linalg.hpp"

namespace weyl {

struct EquivalenceVerdict {
    enum class Kind { equivalent, inequivalent, undecided };

    Kind kind;
    std::optional<BlockMatrix> witness; // equivalent: passes verify_witness
    std::string invariant;              // inequivalent: which invariant differs
    std::string lhs, rhs;               // inequivalent: the two values
    unsigned radius = 0;                // undecided: search bound that was exhausted

    static EquivalenceVerdict equivalent(BlockMatrix g) {
        EquivalenceVerdict v{Kind::equivalent, std::move(g), "", "", "", 0};
        return v;
    }
    static EquivalenceVerdict inequivalent(std::string name, std::string l, std::string r) {
        return EquivalenceVerdict{Kind::inequivalent, std::nullopt, std::move(name), std::move(l), std::move(r), 0};
    }
    static EquivalenceVerdict undecided(unsigned radius) {
        return EquivalenceVerdict{Kind::undecided, std::nullopt, "", "", "", radius};
    }
};

namespace detail {

// Indices of rows forming an invertible n x n submatrix of a full-column-rank
// matrix over F.
inline std::vector<std::size_t> independent_rows(Mat<FieldElement> m) {
    std::vector<std::size_t> tags(m.size());
    for (std::size_t i = 0; i < tags.size(); ++i) tags[i] = i;
    std::vector<std::size_t> picked;
    const std::size_t cols = m.empty() ? 0 : m[0].size();
    std::size_t row = 0;
    for (std::size_t col = 0; col < cols && row < m.size(); ++col) {
        std::size_t piv = row;
        while (piv < m.size() && m[piv][col].is_zero()) ++piv;
        if (piv == m.size()) continue;
        std::swap(m[row], m[piv]);
        std::swap(tags[row], tags[piv]);
        FieldElement inv = m[row][col].inverse();
        for (std::size_t i = row + 1; i < m.size(); ++i) {
            if (m[i][col].is_zero()) continue;
            FieldElement f = m[i][col] * inv;
            for (std::size_t j = col; j < cols; ++j) m[i][j] = m[i][j] - f * m[row][j];
        }
        picked.push_back(tags[row]);
        ++row;
    }
    return picked;
}

// Z-basis of Gamma split along V2: rows of Gamma cap V2 first, then
// preimages of a basis of the projection to the last l3 coordinates.
inline Mat<FieldElement> split_basis(const GammaGroup& gamma, std::size_t l2, std::size_t l3) {
    const std::size_t m = gamma.rank();
    Mat<Rational> proj3;
    proj3.reserve(m);
    for (const auto& row : gamma.basis())
        proj3.push_back(flatten(FVec(row.begin() + l2, row.end())));

    Mat<FieldElement> rows;
    for (const auto& k : left_kernel(proj3)) {
        FVec v(gamma.ambient_dim(), gamma.field().zero());
        for (std::size_t i = 0; i < m; ++i) {
            if (k[i] == 0) continue;
            for (std::size_t j = 0; j < v.size(); ++j) v[j] = v[j] + gamma.basis()[i][j] * Rational(k[i]);
        }
        rows.push_back(std::move(v));
    }

    std::vector<Rational> all;
    for (const auto& r : proj3)
        for (const auto& q : r) all.push_back(q);
    Int den = common_denominator(all);
    IntMat scaled(m, IntVec(proj3.empty() ? 0 : proj3[0].size()));
    for (std::size_t i = 0; i < m; ++i)
        for (std::size_t j = 0; j < proj3[i].size(); ++j) {
            Rational s = proj3[i][j] * Rational(den);
            scaled[i][j] = s.get_num();
        }
    HnfResult h = hnf_rows(std::move(scaled));
    for (std::size_t t = 0; t < h.basis.size(); ++t) {
        FVec v(gamma.ambient_dim(), gamma.field().zero());
        for (std::size_t i = 0; i < m; ++i) {
            if (h.transform[t][i] == 0) continue;
            for (std::size_t j = 0; j < v.size(); ++j)
                v[j] = v[j] + gamma.basis()[i][j] * Rational(h.transform[t][i]);
        }
        rows.push_back(std::move(v));
    }
    (void)l3;
    return rows;
}

} // namespace detail

// Decides whether some g in G_{l2,l3} maps gamma onto gamma_prime.
//  (i)  differing orbit invariants certify inequivalence;
//  (ii) over Q every shape-matching pair is equivalent and a witness is
//       constructed directly from split bases;
//  (iii) otherwise the integer sublattice of admissible basis-change matrices
//        is computed exactly and searched up to the given coefficient radius.
inline EquivalenceVerdict decide_equivalence(const GammaGroup& gamma, const GammaGroup& gamma_prime,
                                             std::size_t l2, std::size_t l3, unsigned radius) {
    if (!gamma.field().same_as(gamma_prime.field()))
        throw error(errc::shape_mismatch, "groups over different fields");
    if (gamma.ambient_dim() != gamma_prime.ambient_dim() || gamma.ambient_dim() != l2 + l3)
        throw error(errc::shape_mismatch, "ambient dimensions differ");

    const NumberField& field = gamma.field();

    if (gamma.same_group(gamma_prime))
        return EquivalenceVerdict::equivalent(BlockMatrix::identity(field, l2, l3));

    const GammaInvariants ia = gamma_invariants(gamma, l2, l3);
    const GammaInvariants ib = gamma_invariants(gamma_prime, l2, l3);
    if (ia.rank != ib.rank)
        return EquivalenceVerdict::inequivalent("rank", std::to_string(ia.rank), std::to_string(ib.rank));
    if (ia.rank_cap_v2 != ib.rank_cap_v2)
        return EquivalenceVerdict::inequivalent("rank_cap_V2", std::to_string(ia.rank_cap_v2),
                                                std::to_string(ib.rank_cap_v2));
    if (ia.rank_proj3 != ib.rank_proj3)
        return EquivalenceVerdict::inequivalent("rank_proj3", std::to_string(ia.rank_proj3),
                                                std::to_string(ib.rank_proj3));

    if (field.is_rational_field()) {
        // Full-rank lattice case: rank = ambient dimension is automatic over Q.
        if (gamma.rank() != gamma.ambient_dim())
            throw error(errc::internal, "rational lattice with rank != ambient dimension");
        Mat<FieldElement> u = detail::split_basis(gamma, l2, l3);
        Mat<FieldElement> u_prime = detail::split_basis(gamma_prime, l2, l3);
        auto u_prime_inv = mat_inverse(u_prime, field.zero(), field.one());
        if (!u_prime_inv) throw error(errc::internal, "split basis not invertible");
        Mat<FieldElement> g_full = mat_mul(*u_prime_inv, u);
        BlockMatrix g = BlockMatrix::from_full(field, l2, l3, g_full);
        if (!verify_witness(g, gamma, gamma_prime))
            throw error(errc::internal, "constructed rational witness failed verification");
        return EquivalenceVerdict::equivalent(std::move(g));
    }

    // General case. Unknown integer m x m matrix U must satisfy
    //   M X = U M'  for some X with zero top-right block,
    // where M, M' are the stored bases. Eliminating X against an invertible
    // row submatrix of M leaves linear conditions on U over F; flattening th
    // powers turns them into exact rational conditions whose integer solution
    // lattice is computed by HNF.
    const Mat<FieldElement>& mbasis = gamma.basis();
    const Mat<FieldElement>& mprime = gamma_prime.basis();
    const std::size_t m = gamma.rank();
    const std::size_t n = gamma.ambient_dim();
    const std::size_t mm = m * m;
    const std::size_t d = field.degree();

    std::vector<std::size_t> idx = detail::independent_rows(mbasis);
    if (idx.size() != n) throw error(errc::internal, "basis lost full column rank");
    std::vector<bool> in_idx(m, false);
    for (auto i : idx) in_idx[i] = true;

    Mat<FieldElement> m_i(n, std::vector<FieldElement>(n, field.zero()));
    for (std::size_t s = 0; s < n; ++s) m_i[s] = mbasis[idx[s]];
    auto w = mat_inverse(m_i, field.zero(), field.one());
    if (!w) throw error(errc::internal, "pivot submatrix not invertible");

    // X[r][c] as a linear form over the mm unknowns U[a][b].
    auto form_zero = [&]() { return std::vector<FieldElement>(mm, field.zero()); };
    Mat<std::vector<FieldElement>> x_form(n, std::vector<std::vector<FieldElement>>(n));
    for (std::size_t r = 0; r < n; ++r)
        for (std::size_t c = 0; c < n; ++c) {
            auto f = form_zero();
            for (std::size_t s = 0; s < n; ++s) {
                if ((*w)[r][s].is_zero()) continue;
                for (std::size_t b = 0; b < m; ++b) {
                    FieldElement coef = (*w)[r][s] * mprime[b][c];
                    if (!coef.is_zero()) f[idx[s] * m + b] = f[idx[s] * m + b] + coef;
                }
            }
            x_form[r][c] = std::move(f);
        }

    std::vector<std::vector<FieldElement>> constraints;
    for (std::size_t r = 0; r < l2; ++r)
        for (std::size_t c = l2; c < n; ++c) constraints.push_back(x_form[r][c]);
    for (std::size_t j = 0; j < m; ++j) {
        if (in_idx[j]) continue;
        for (std::size_t c = 0; c < n; ++c) {
            auto f = form_zero();
            for (std::size_t r = 0; r < n; ++r) {
                if (mbasis[j][r].is_zero()) continue;
                for (std::size_t t = 0; t < mm; ++t)
                    if (!x_form[r][c][t].is_zero()) f[t] = f[t] + mbasis[j][r] * x_form[r][c][t];
            }
            for (std::size_t b = 0; b < m; ++b) f[j * m + b] = f[j * m + b] - mprime[b][c];
            constraints.push_back(std::move(f));
        }
    }

    // Flatten F-linear constraints into d rational rows each; the solution
    // lattice is the right kernel, i.e. the left kernel of the transpose.
    Mat<Rational> transposed(mm, std::vector<Rational>(constraints.size() * d, Rational(0)));
    for (std::size_t e = 0; e < constraints.size(); ++e)
        for (std::size_t t = 0; t < mm; ++t) {
            const auto& coords = constraints[e][t].coords();
            for (std::size_t k = 0; k < d; ++k) transposed[t][e * d + k] = coords[k];
        }
    IntMat lattice = left_kernel(transposed);
    const std::size_t kdim = lattice.size();

    if (kdim > 0) {
        std::vector<long> c(kdim, 0);
        auto build_u = [&]() {
            IntMat u_mat(m, IntVec(m, 0));
            for (std::size_t i = 0; i < kdim; ++i) {
                if (c[i] == 0) continue;
                for (std::size_t a = 0; a < m; ++a)
                    for (std::size_t b = 0; b < m; ++b) u_mat[a][b] += Int(c[i]) * lattice[i][a * m + b];
            }
            return u_mat;
        };
        auto try_candidate = [&](const IntMat& u_mat) -> std::optional<BlockMatrix> {
            Rational det = int_det(u_mat);
            if (det != 1 && det != -1) return std::nullopt;
            Mat<FieldElement> rhs(m, std::vector<FieldElement>(n, field.zero()));
            for (std::size_t a = 0; a < m; ++a)
                for (std::size_t ccol = 0; ccol < n; ++ccol) {
                    FieldElement acc = field.zero();
                    for (std::size_t b = 0; b < m; ++b) {
                        if (u_mat[a][b] == 0) continue;
                        acc = acc + mprime[b][ccol] * Rational(u_mat[a][b]);
                    }
                    rhs[a][ccol] = acc;
                }
            auto x = mat_solve(Mat<FieldElement>(mbasis), rhs, field.zero());
            if (!x) return std::nullopt;
            auto ginv = *x; // g^{-1} = X by construction
            auto gfull = mat_inverse(ginv, field.zero(), field.one());
            if (!gfull) return std::nullopt;
            BlockMatrix g = BlockMatrix::from_full(field, l2, l3, *gfull);
            if (!verify_witness(g, gamma, gamma_prime)) return std::nullopt;
            return g;
        };
        for (unsigned shell = 1; shell <= radius; ++shell) {
            // Odometer over coefficient vectors with max-norm exactly `shell`.
            std::fill(c.begin(), c.end(), -long(shell));
            while (true) {
                bool on_shell = false;
                for (auto v : c)
                    if (v == long(shell) || v == -long(shell)) on_shell = true;
                if (on_shell) {
                    if (auto g = try_candidate(build_u())) return EquivalenceVerdict::equivalent(std::move(*g));
                }
                std::size_t pos = 0;
                while (pos < kdim && c[pos] == long(shell)) {
                    c[pos] = -long(shell);
                    ++pos;
                }
                if (pos == kdim) break;
                ++c[pos];
            }
        }
    }
    return EquivalenceVerdict::undecided(radius);
}

} // namespace weyl
