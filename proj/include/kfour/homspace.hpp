#pragma once

// Hom-spaces, fixed points, the relative trace, transfer-image subspaces
// M^{G,chi} and underline-Hom dimensions, and Higman's criterion.
//
// A homomorphism M -> N is a (dim N) x (dim M) matrix acting on column
// vectors; Hom-spaces are flattened column-major (Matrix::vec) for all
// subspace arithmetic, and that flattening is part of the serialization
// contract.

#include <optional>
#include <vector>

#include "kfour/kgmod.hpp"
#include "kfour/matrix.hpp"

namespace kfour {

struct HomSpaceBasis {
    KGModule source, target;
    std::optional<Subgroup> subgroup;  // nullopt = full group
    std::vector<Matrix> basis;         // canonical: rref rows of the flattened solution space

    size_t dim() const { return basis.size(); }

    /// The span as a subspace of the flattened ambient k^(dim M * dim N).
    Subspace span() const {
        const Field& f = source.field();
        const size_t amb = source.dim() * target.dim();
        if (basis.empty()) return Subspace::zero(f, amb);
        Matrix rows(f, basis.size(), amb);
        for (size_t i = 0; i < basis.size(); ++i) {
            Matrix v = basis[i].vec();
            for (size_t j = 0; j < amb; ++j) rows.at(i, j) = v.at(0, j);
        }
        return Subspace::from_span(rows);
    }
};

namespace detail {

// Constraint rows for A t_m = t_n A on vec(A) (column-major, A: dn x dm).
// Row (i,j): sum_k A(i,k) tm(k,j) + sum_k tn(i,k) A(k,j) = 0.
inline void append_commutation_rows(Matrix& C, size_t row0, const Matrix& tm, const Matrix& tn) {
    const size_t dm = tm.rows(), dn = tn.rows();
    for (size_t j = 0; j < dm; ++j)
        for (size_t i = 0; i < dn; ++i) {
            const size_t row = row0 + j * dn + i;
            for (size_t k = 0; k < dm; ++k)
                if (tm.at(k, j))
                    C.at(row, k * dn + i) = C.field().add(C.at(row, k * dn + i), tm.at(k, j));
            for (size_t k = 0; k < dn; ++k)
                if (tn.at(i, k))
                    C.at(row, j * dn + k) = C.field().add(C.at(row, j * dn + k), tn.at(i, k));
        }
}

} // namespace detail

/// Basis of Hom_{kG}(m, n) (subgroup = nullopt) or Hom_{kH}(m, n): solves the
/// commutation equations over the flattened coordinate space.
inline HomSpaceBasis hom_basis(const KGModule& m, const KGModule& n,
                               std::optional<Subgroup> subgroup = std::nullopt) {
    m.field().check_same(n.field());
    const Field& f = m.field();
    const size_t dm = m.dim(), dn = n.dim(), unknowns = dm * dn;
    size_t blocks = subgroup ? 1 : 2;
    Matrix C(f, blocks * unknowns, unknowns);
    if (subgroup) {
        detail::append_commutation_rows(C, 0, m.nilpotent(*subgroup), n.nilpotent(*subgroup));
    } else {
        detail::append_commutation_rows(C, 0, m.X(), n.X());
        detail::append_commutation_rows(C, unknowns, m.Y(), n.Y());
    }
    Subspace sol = kernel_basis(C);
    HomSpaceBasis out{m, n, subgroup, {}};
    out.basis.reserve(sol.dim());
    for (size_t i = 0; i < sol.dim(); ++i)
        out.basis.push_back(Matrix::unvec(f, sol.basis().row(i), dn, dm));
    return out;
}

/// Fixed points: full group = ker X meet ker Y; subgroup = ker t_h;
/// trivial subgroup = the whole space.
inline Subspace fixed_points(const KGModule& m, std::optional<Subgroup> subgroup = std::nullopt) {
    if (subgroup && *subgroup == Subgroup::Triv) return Subspace::full(m.field(), m.dim());
    if (subgroup) return kernel_basis(m.nilpotent(*subgroup));
    return subspace_combine(kernel_basis(m.X()), kernel_basis(m.Y()), CombineMode::Intersection);
}

inline bool is_h_equivariant(const KGModule& m, const KGModule& n, Subgroup h, const Matrix& beta) {
    return beta * m.nilpotent(h) == n.nilpotent(h) * beta;
}

/// Relative trace Tr^G_H(beta) = sum over the fixed transversal of
/// s_N beta s_M (group elements are involutions, so s = s^{-1}).
inline Matrix transfer(const KGModule& m, const KGModule& n, Subgroup h, const Matrix& beta) {
    m.field().check_same(n.field());
    if (beta.rows() != n.dim() || beta.cols() != m.dim())
        throw std::invalid_argument("transfer: beta has wrong shape");
    if (!is_h_equivariant(m, n, h, beta))
        throw std::invalid_argument("transfer: beta is not " + subgroup_name(h) + "-equivariant");
    Matrix out(m.field(), n.dim(), m.dim());
    for (GroupElt s : transversal(h)) out = out + n.action(s) * beta * m.action(s);
    return out;
}

struct TransferData {
    ChiSet chi;
    Subspace image;  // inside the flattened Hom ambient space
};

/// Image of the chi-relative trace inside Hom_{kG}(m, n): exactly the maps
/// factoring through a module projective relative to chi.
inline TransferData chi_transfer_image(const KGModule& m, const KGModule& n, ChiSet chi) {
    m.field().check_same(n.field());
    const Field& f = m.field();
    const size_t amb = m.dim() * n.dim();
    std::vector<std::vector<uint8_t>> rows;
    for (Subgroup h : chi.members()) {
        HomSpaceBasis hb = hom_basis(m, n, h);
        for (const Matrix& beta : hb.basis)
            rows.push_back(transfer(m, n, h, beta).vec().row(0));
    }
    if (rows.empty()) return {chi, Subspace::zero(f, amb)};
    return {chi, Subspace::from_span(Matrix::from_rows(f, rows))};
}

/// dim underline-Hom^chi_{kG}(m, n) = dim Hom_{kG}(m, n) - dim transfer image.
inline size_t underline_hom_dim(const KGModule& m, const KGModule& n, ChiSet chi) {
    return hom_basis(m, n).dim() - chi_transfer_image(m, n, chi).image.dim();
}

/// Higman's criterion: m is projective relative to chi iff some family
/// beta_H in Hom_{kH}(m,m) has sum of transfers equal to the identity.
inline bool is_rel_projective(const KGModule& m, ChiSet chi) {
    if (m.dim() == 0) return true;
    if (chi.is_empty()) return false;
    const Field& f = m.field();
    const size_t amb = m.dim() * m.dim();
    std::vector<std::vector<uint8_t>> cols;
    for (Subgroup h : chi.members()) {
        HomSpaceBasis hb = hom_basis(m, m, h);
        for (const Matrix& beta : hb.basis)
            cols.push_back(transfer(m, m, h, beta).vec().row(0));
    }
    Matrix A(f, amb, cols.size());
    for (size_t j = 0; j < cols.size(); ++j)
        for (size_t i = 0; i < amb; ++i) A.at(i, j) = cols[j][i];
    Matrix rhs = Matrix::identity(f, m.dim()).vec().transpose();
    return solve_linear(A, rhs).has_value();
}

} // namespace kfour
