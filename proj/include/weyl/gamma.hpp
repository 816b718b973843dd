#pragma once

#include <memory>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "weyl/error.hpp"
#include "weyl/linalg.hpp"
#include "weyl/numberfield.hpp"

namespace weyl {

using FVec = std::vector<FieldElement>;

// Flattens a vector in F^n to d*n rational coordinates (powers of th per slot).
inline std::vector<Rational> flatten(const FVec& v) {
    std::vector<Rational> out;
    for (const auto& e : v)
        for (const auto& q : e.coords()) out.push_back(q);
    return out;
}

// An element of Gamma: integer coordinates in the group's stored Z-basis
// together with the vector in F^n it denotes. Equality is coordinate-wise.
struct GroupElem {
    IntVec coords;
    FVec embedding;

    friend bool operator==(const GroupElem& a, const GroupElem& b) { return a.coords == b.coords; }
    friend bool operator!=(const GroupElem& a, const GroupElem& b) { return !(a == b); }
};

// Group-compatible total order on Gamma: lexicographic on Z-basis coordinates.
inline bool gamma_less(const GroupElem& a, const GroupElem& b) { return a.coords < b.coords; }

// Finitely generated nondegenerate subgroup of F^n with a canonical Z-basis.
// The basis is the Hermite normal form of the flattened generator lattice,
// so equal subgroups always store identical bases.
class GammaGroup {
  public:
    static GammaGroup make(const NumberField& field, std::size_t ambient_dim, const Mat<FieldElement>& generators) {
        if (generators.empty() && ambient_dim > 0)
            throw error(errc::zero_generators, "no generators for a positive-dimensional space");
        const std::size_t d = field.degree();
        for (const auto& g : generators) {
            if (g.size() != ambient_dim) throw error(errc::shape_mismatch, "generator has wrong length");
            for (const auto& e : g)
                if (!e.field().same_as(field)) throw error(errc::field_mismatch, "generator entry in wrong field");
        }

        // Flatten, clear denominators globally, reduce to HNF, scale back.
        Mat<Rational> flat;
        flat.reserve(generators.size());
        std::vector<Rational> all;
        for (const auto& g : generators) {
            flat.push_back(flatten(g));
            for (const auto& q : flat.back()) all.push_back(q);
        }
        const Int den = common_denominator(all);
        IntMat scaled(flat.size(), IntVec(d * ambient_dim));
        for (std::size_t i = 0; i < flat.size(); ++i)
            for (std::size_t j = 0; j < flat[i].size(); ++j) {
                Rational s = flat[i][j] * Rational(den);
                scaled[i][j] = s.get_num();
            }
        HnfResult h = hnf_rows(std::move(scaled));

        Mat<FieldElement> basis;
        basis.reserve(h.basis.size());
        for (const auto& row : h.basis) {
            FVec v;
            v.reserve(ambient_dim);
            for (std::size_t slot = 0; slot < ambient_dim; ++slot) {
                std::vector<Rational> coords(d);
                for (std::size_t k = 0; k < d; ++k) coords[k] = make_rational(row[slot * d + k], den);
                v.push_back(field.element(std::move(coords)));
            }
            basis.push_back(std::move(v));
        }

        if (mat_rank(basis) != ambient_dim)
            throw error(errc::degenerate_group, "generators do not span F^n over F");

        auto rep = std::make_shared<const Rep>(Rep{field, ambient_dim, std::move(basis)});
        return GammaGroup(std::move(rep));
    }

    const NumberField& field() const { return rep_->field; }
    std::size_t ambient_dim() const { return rep_->ambient; }
    std::size_t rank() const { return rep_->basis.size(); }
    const Mat<FieldElement>& basis() const { return rep_->basis; }

    FVec embed(const IntVec& coords) const {
        if (coords.size() != rank()) throw error(errc::shape_mismatch, "coordinate vector has wrong length");
        FVec out(ambient_dim(), rep_->field.zero());
        for (std::size_t i = 0; i < coords.size(); ++i) {
            if (coords[i] == 0) continue;
            Rational c(coords[i]);
            for (std::size_t j = 0; j < out.size(); ++j) out[j] = out[j] + rep_->basis[i][j] * c;
        }
        return out;
    }

    GroupElem element(IntVec coords) const {
        FVec emb = embed(coords);
        return GroupElem{std::move(coords), std::move(emb)};
    }

    GroupElem zero_elem() const { return element(IntVec(rank(), 0)); }

    // Integer coordinates of v in the stored basis, or nullopt (NotMember).
    std::optional<IntVec> member(const FVec& v) const {
        if (v.size() != ambient_dim()) throw error(errc::shape_mismatch, "vector has wrong length");
        Mat<Rational> flat_basis;
        flat_basis.reserve(rank());
        for (const auto& row : rep_->basis) flat_basis.push_back(flatten(row));
        return solve_left_integer(flat_basis, flatten(v));
    }

    bool contains(const FVec& v) const { return member(v).has_value(); }

    // Canonical basis makes subgroup equality literal basis equality.
    bool same_group(const GammaGroup& o) const {
        if (!field().same_as(o.field()) || ambient_dim() != o.ambient_dim() || rank() != o.rank()) return false;
        return rep_->basis == o.rep_->basis;
    }

  private:
    struct Rep {
        NumberField field;
        std::size_t ambient;
        Mat<FieldElement> basis;
    };

    explicit GammaGroup(std::shared_ptr<const Rep> rep) : rep_(std::move(rep)) {}

    std::shared_ptr<const Rep> rep_;
};

// Invertible block matrix (A 0; B C) acting on subgroups by alpha -> alpha*g^{-1}.
class BlockMatrix {
  public:
    BlockMatrix(const NumberField& field, std::size_t l2, std::size_t l3, Mat<FieldElement> a,
                Mat<FieldElement> b, Mat<FieldElement> c)
        : field_(field), l2_(l2), l3_(l3) {
        if (a.size() != l2 || b.size() != l3 || c.size() != l3)
            throw error(errc::shape_mismatch, "block dimensions do not match (l2, l3)");
        for (const auto& row : a)
            if (row.size() != l2) throw error(errc::shape_mismatch, "block A is not l2 x l2");
        for (const auto& row : b)
            if (row.size() != l2) throw error(errc::shape_mismatch, "block B is not l3 x l2");
        for (const auto& row : c)
            if (row.size() != l3) throw error(errc::shape_mismatch, "block C is not l3 x l3");

        const std::size_t n = l2 + l3;
        full_.assign(n, std::vector<FieldElement>(n, field.zero()));
        for (std::size_t i = 0; i < l2; ++i)
            for (std::size_t j = 0; j < l2; ++j) full_[i][j] = a[i][j];
        for (std::size_t i = 0; i < l3; ++i)
            for (std::size_t j = 0; j < l2; ++j) full_[l2 + i][j] = b[i][j];
        for (std::size_t i = 0; i < l3; ++i)
            for (std::size_t j = 0; j < l3; ++j) full_[l2 + i][l2 + j] = c[i][j];

        if (l2 && !mat_inverse(a, field.zero(), field.one()))
            throw error(errc::singular_block, "block A is singular");
        if (l3 && !mat_inverse(c, field.zero(), field.one()))
            throw error(errc::singular_block, "block C is singular");
        auto inv = mat_inverse(full_, field.zero(), field.one());
        if (!inv) throw error(errc::singular_block, "assembled matrix is singular");
        inv_ = std::move(*inv);
    }

    static BlockMatrix identity(const NumberField& field, std::size_t l2, std::size_t l3) {
        return from_full(field, l2, l3, mat_identity(l2 + l3, field.zero(), field.one()));
    }

    static BlockMatrix from_full(const NumberField& field, std::size_t l2, std::size_t l3,
                                 const Mat<FieldElement>& full) {
        const std::size_t n = l2 + l3;
        if (full.size() != n) throw error(errc::shape_mismatch, "matrix is not (l2+l3) x (l2+l3)");
        for (const auto& row : full)
            if (row.size() != n) throw error(errc::shape_mismatch, "matrix is not square of size l2+l3");
        for (std::size_t i = 0; i < l2; ++i)
            for (std::size_t j = l2; j < n; ++j)
                if (!full[i][j].is_zero())
                    throw error(errc::shape_mismatch, "top-right block must be zero");
        Mat<FieldElement> a(l2), b(l3), c(l3);
        for (std::size_t i = 0; i < l2; ++i) a[i].assign(full[i].begin(), full[i].begin() + l2);
        for (std::size_t i = 0; i < l3; ++i) {
            b[i].assign(full[l2 + i].begin(), full[l2 + i].begin() + l2);
            c[i].assign(full[l2 + i].begin() + l2, full[l2 + i].end());
        }
        return BlockMatrix(field, l2, l3, std::move(a), std::move(b), std::move(c));
    }

    const NumberField& field() const { return field_; }
    std::size_t l2() const { return l2_; }
    std::size_t l3() const { return l3_; }
    std::size_t dim() const { return l2_ + l3_; }
    const Mat<FieldElement>& full() const { return full_; }
    const Mat<FieldElement>& inverse() const { return inv_; }

    Mat<FieldElement> block_a() const { return slice(0, l2_, 0, l2_); }
    Mat<FieldElement> block_b() const { return slice(l2_, dim(), 0, l2_); }
    Mat<FieldElement> block_c() const { return slice(l2_, dim(), l2_, dim()); }

    // Group law: composing actions alpha -> alpha g^{-1}.
    friend BlockMatrix operator*(const BlockMatrix& g, const BlockMatrix& h) {
        if (g.l2_ != h.l2_ || g.l3_ != h.l3_) throw error(errc::shape_mismatch, "block shapes differ");
        return from_full(g.field_, g.l2_, g.l3_, mat_mul(g.full_, h.full_));
    }

    FVec apply(const FVec& alpha) const {
        // Row vector times g^{-1}.
        FVec out(dim(), field_.zero());
        for (std::size_t j = 0; j < dim(); ++j)
            for (std::size_t i = 0; i < dim(); ++i) out[j] = out[j] + alpha[i] * inv_[i][j];
        return out;
    }

  private:
    Mat<FieldElement> slice(std::size_t r0, std::size_t r1, std::size_t c0, std::size_t c1) const {
        Mat<FieldElement> out;
        for (std::size_t i = r0; i < r1; ++i)
            out.emplace_back(full_[i].begin() + c0, full_[i].begin() + c1);
        return out;
    }

    NumberField field_;
    std::size_t l2_, l3_;
    Mat<FieldElement> full_, inv_;
};

inline GammaGroup gamma_apply(const BlockMatrix& g, const GammaGroup& gamma) {
    if (g.dim() != gamma.ambient_dim()) throw error(errc::shape_mismatch, "matrix size != ambient dimension");
    Mat<FieldElement> gens;
    gens.reserve(gamma.rank());
    for (const auto& row : gamma.basis()) gens.push_back(g.apply(row));
    return GammaGroup::make(gamma.field(), gamma.ambient_dim(), gens);
}

struct GammaInvariants {
    std::size_t rank = 0;
    std::size_t rank_cap_v2 = 0;
    std::size_t rank_proj3 = 0;

    friend bool operator==(const GammaInvariants&, const GammaInvariants&) = default;
};

// Orbit invariants of the block action: it preserves V2 = F^{l2} x {0} and
// acts on the last-l3 projection by C^{-1}, so all three ranks are constant
// along orbits.
inline GammaInvariants gamma_invariants(const GammaGroup& gamma, std::size_t l2, std::size_t l3) {
    if (l2 + l3 != gamma.ambient_dim()) throw error(errc::shape_mismatch, "l2+l3 != ambient dimension");
    GammaInvariants inv;
    inv.rank = gamma.rank();
    Mat<Rational> proj3;
    proj3.reserve(gamma.rank());
    for (const auto& row : gamma.basis())
        proj3.push_back(flatten(FVec(row.begin() + l2, row.end())));
    inv.rank_cap_v2 = left_kernel(proj3).size();
    inv.rank_proj3 = mat_rank(proj3);
    return inv;
}

inline bool verify_witness(const BlockMatrix& g, const GammaGroup& gamma, const GammaGroup& gamma_prime) {
    if (g.dim() != gamma.ambient_dim() || g.dim() != gamma_prime.ambient_dim())
        throw error(errc::shape_mismatch, "witness size does not match groups");
    GammaGroup image = gamma_apply(g, gamma);
    for (const auto& row : image.basis())
        if (!gamma_prime.contains(row)) return false;
    for (const auto& row : gamma_prime.basis())
        if (!image.contains(row)) return false;
    return true;
}

} // namespace weyl
