#pragma once

// chi-split covers, relative Heller shifts Omega^i_chi for all integers i,
// lifting of homomorphisms, and minimal relative resolutions.
//
// Covers are built from (+)_H induce(restrict(m, H)) rather than tensoring
// with (+)_H k_H^G; the two agree up to the projection formula (tested in
// kgmod) and the induced form keeps dimensions smaller. Minimization works
// on the structural piece decomposition of the standard cover: over each
// maximal subgroup an adapted basis of the square-zero restriction splits the
// induced block into explicit P and Q_H summands, and greedy deletion keeps
// pi surjective and chi-split. Splitness of a candidate is decided by the
// exact rank criterion rank t_H(Q') = rank t_H(ker) + rank t_H(m), valid for
// the order-2 subgroups by the Hom dimension-count splitting argument.

#include <algorithm>
#include <map>
#include <optional>
#include <vector>

#include "kfour/decomp.hpp"
#include "kfour/homspace.hpp"
#include "kfour/kgmod.hpp"

namespace kfour {

struct CoverData {
    ChiSet chi;
    KGModule total;                         // Q, relative projective
    Matrix map;                             // pi: Q -> m, chi-split epimorphism
    KGModule kernel;                        // module structure on ker(pi)
    Matrix kernel_embedding;                // dim Q x dim kernel
    std::map<Subgroup, Matrix> splittings;  // s_H: m -> Q with pi s_H = id, H-equivariant
};

namespace detail {

/// Module structure induced on an invariant column span; cols must have full
/// column rank and be invariant under both actions.
inline KGModule column_span_submodule(const KGModule& big, const Matrix& cols) {
    auto x = solve_linear(cols, big.X() * cols);
    auto y = solve_linear(cols, big.Y() * cols);
    if (!x || !y) throw std::logic_error("column span is not a submodule");
    return KGModule(*x, *y);
}

/// Solve for an H-equivariant section s of pi (pi s = id, s t_m = t_Q s).
inline std::optional<Matrix> solve_splitting(const KGModule& m, const KGModule& q, const Matrix& pi,
                                             Subgroup h) {
    const Field& f = m.field();
    const size_t d = m.dim(), D = q.dim();
    const size_t unknowns = D * d;  // vec(s) column-major, s: D x d
    Matrix C(f, d * d + unknowns, unknowns);
    // pi s = id: row (i,j) <- sum_k pi(i,k) s(k,j)
    for (size_t j = 0; j < d; ++j)
        for (size_t i = 0; i < d; ++i) {
            const size_t row = j * d + i;
            for (size_t k = 0; k < D; ++k)
                if (pi.at(i, k)) C.at(row, j * D + k) = pi.at(i, k);
        }
    append_commutation_rows(C, d * d, m.nilpotent(h), q.nilpotent(h));
    Matrix rhs(f, d * d + unknowns, 1);
    for (size_t i = 0; i < d; ++i) rhs.at(i * d + i, 0) = 1;
    auto sol = solve_linear(C, rhs);
    if (!sol) return std::nullopt;
    return Matrix::unvec(f, sol->transpose().row(0), D, d);
}

struct CoverPiece {
    IndecLabel label;
    Matrix cols;  // dim Q x dim(label), spanning a G-summand of Q
};

struct RawCover {
    KGModule q;
    Matrix pi;
    std::vector<CoverPiece> pieces;
};

/// The standard cover (+)_{H in chi} induce(restrict(m, H)) together with its
/// structural decomposition into P and Q_H pieces.
inline RawCover build_raw_cover(const KGModule& m, ChiSet chi) {
    const Field& f = m.field();
    const size_t d = m.dim();

    struct Block {
        KGModule mod;
        Matrix pi_block;
        std::vector<std::pair<IndecLabel, std::vector<std::vector<uint8_t>>>> pieces;  // local columns
    };
    std::vector<Block> blocks;

    for (Subgroup h : chi.members()) {
        if (h == Subgroup::Triv) {
            Matrix pi_block = m.action(GroupElt::One)
                                  .hstack(m.action(GroupElt::Sigma))
                                  .hstack(m.action(GroupElt::Tau))
                                  .hstack(m.action(GroupElt::SigmaTau));
            Block b{induce_trivial(f, d), std::move(pi_block), {}};
            for (size_t i = 0; i < d; ++i) {
                std::vector<std::vector<uint8_t>> cols;
                for (size_t blk = 0; blk < 4; ++blk) {
                    std::vector<uint8_t> v(4 * d, 0);
                    v[blk * d + i] = 1;
                    cols.push_back(std::move(v));
                }
                b.pieces.emplace_back(IndecLabel::proj(), std::move(cols));
            }
            blocks.push_back(std::move(b));
            continue;
        }
        const Matrix t = m.nilpotent(h);
        Block b{induce(t, h), m.action(GroupElt::One).hstack(m.action(coset_rep(h))), {}};
        // adapted basis of the square-zero t: pairs (v, u = t v) and kernel
        // complement singles w
        Subspace im = Subspace::from_span(t.transpose());
        const size_t r = im.dim();
        Matrix vs(f, d, 0);
        if (r) {
            auto sol = solve_linear(t, im.basis_cols());
            if (!sol) throw std::logic_error("square-zero adapted basis failed");
            vs = *sol;  // d x r, t vs = im basis
        }
        Subspace ker = kernel_basis(t);
        Matrix stack = im.basis();
        std::vector<std::vector<uint8_t>> singles;
        for (size_t i = 0; i < ker.dim(); ++i) {
            Matrix cand = Matrix::from_rows(f, {ker.basis().row(i)});
            Matrix grown = stack.vstack(cand);
            if (rank(grown) > stack.rows()) {
                stack = std::move(grown);
                singles.push_back(ker.basis().row(i));
            }
        }
        auto local = [&](const std::vector<uint8_t>& v, bool second) {
            std::vector<uint8_t> out(2 * d, 0);
            for (size_t i = 0; i < d; ++i) out[(second ? d : 0) + i] = v[i];
            return out;
        };
        for (size_t i = 0; i < r; ++i) {
            std::vector<uint8_t> v(d), u(d);
            for (size_t j = 0; j < d; ++j) {
                v[j] = vs.at(j, i);
                u[j] = im.basis().at(i, j);
            }
            b.pieces.emplace_back(IndecLabel::proj(),
                                  std::vector<std::vector<uint8_t>>{local(v, false), local(u, false),
                                                                    local(v, true), local(u, true)});
        }
        for (const auto& w : singles)
            b.pieces.emplace_back(q_label(h, f),
                                  std::vector<std::vector<uint8_t>>{local(w, false), local(w, true)});
        blocks.push_back(std::move(b));
    }

    KGModule q = KGModule::zero(f);
    for (const Block& b : blocks) q = direct_sum(q, b.mod);
    const size_t total_dim = q.dim();
    Matrix pi(f, d, total_dim);
    std::vector<CoverPiece> pieces;
    size_t offset = 0;
    for (const Block& b : blocks) {
        for (size_t i = 0; i < d; ++i)
            for (size_t j = 0; j < b.mod.dim(); ++j) pi.at(i, offset + j) = b.pi_block.at(i, j);
        for (const auto& [label, cols] : b.pieces) {
            Matrix c(f, total_dim, cols.size());
            for (size_t j = 0; j < cols.size(); ++j)
                for (size_t i = 0; i < cols[j].size(); ++i) c.at(offset + i, j) = cols[j][i];
            pieces.push_back({label, std::move(c)});
        }
        offset += b.mod.dim();
    }
    return {std::move(q), std::move(pi), std::move(pieces)};
}

/// Exact chi-splitness test of a surjection with computed kernel: over each
/// order-2 subgroup the free ranks must add.
inline bool splits_over_chi(const KGModule& q, const KGModule& ker, const KGModule& m, ChiSet chi) {
    for (Subgroup h : chi.members()) {
        if (h == Subgroup::Triv) continue;  // vector-space surjections always split
        if (rank(q.nilpotent(h)) != rank(ker.nilpotent(h)) + rank(m.nilpotent(h))) return false;
    }
    return true;
}

inline KGModule kernel_module(const KGModule& q, const Matrix& pi, Matrix& embedding_out) {
    Subspace kb = kernel_basis(pi);
    embedding_out = kb.basis_cols();
    if (kb.dim() == 0) return KGModule::zero(q.field());
    return column_span_submodule(q, embedding_out);
}

} // namespace detail

/// The canonical chi-split cover (+)_{H in chi} induce(restrict(m,H), H) -> m
/// with counit map, computed kernel and stored splitting witnesses.
inline CoverData standard_cover(const KGModule& m, ChiSet chi) {
    if (chi.is_empty()) throw std::invalid_argument("standard_cover: chi must be non-empty");
    detail::RawCover raw = detail::build_raw_cover(m, chi);
    CoverData out{chi, raw.q, raw.pi, KGModule::zero(m.field()), Matrix(m.field(), raw.q.dim(), 0), {}};
    if (m.X() * raw.pi != raw.pi * raw.q.X() || m.Y() * raw.pi != raw.pi * raw.q.Y())
        throw std::logic_error("standard cover map is not equivariant");
    if (m.dim() > 0 && rank(raw.pi) != m.dim())
        throw std::logic_error("standard cover map is not surjective");
    out.kernel = detail::kernel_module(raw.q, raw.pi, out.kernel_embedding);
    for (Subgroup h : chi.members()) {
        auto s = detail::solve_splitting(m, raw.q, raw.pi, h);
        if (!s)
            throw std::logic_error("standard cover splitting over " + subgroup_name(h) +
                                   " unsolvable; this contradicts the Mackey argument");
        out.splittings.emplace(h, std::move(*s));
    }
    return out;
}

/// Minimal-dimension chi-split cover: greedy deletion of structural summands
/// of the standard cover, then reassembly in canonical block form. The total
/// is a direct sum of canonical indecomposables (sorted), the kernel is the
/// relative Heller shift up to relative projectives.
inline CoverData minimal_cover(const KGModule& m, ChiSet chi, uint32_t seed = kDecompSeed) {
    if (chi.is_empty()) throw std::invalid_argument("minimal_cover: chi must be non-empty");
    const Field& f = m.field();
    const size_t d = m.dim();
    detail::RawCover raw = detail::build_raw_cover(m, chi);

    // deletion candidates in decreasing dimension: P pieces first
    std::vector<size_t> order(raw.pieces.size());
    for (size_t i = 0; i < order.size(); ++i) order[i] = i;
    std::stable_sort(order.begin(), order.end(), [&](size_t a, size_t b) {
        return raw.pieces[a].cols.cols() > raw.pieces[b].cols.cols();
    });

    std::vector<bool> kept(raw.pieces.size(), true);
    auto assemble = [&](const std::vector<bool>& keep) {
        Matrix cols(f, raw.q.dim(), 0);
        for (size_t i = 0; i < raw.pieces.size(); ++i)
            if (keep[i]) cols = cols.hstack(raw.pieces[i].cols);
        return cols;
    };

    bool changed = true;
    while (changed) {
        changed = false;
        for (size_t idx : order) {
            if (!kept[idx]) continue;
            std::vector<bool> trial = kept;
            trial[idx] = false;
            Matrix cols = assemble(trial);
            if (cols.cols() < d) continue;
            Matrix pi_t = raw.pi * cols;
            if (d > 0 && rank(pi_t) != d) continue;
            KGModule q_t = detail::column_span_submodule(raw.q, cols);
            Matrix emb(f, 0, 0);
            KGModule ker_t = detail::kernel_module(q_t, pi_t, emb);
            if (!detail::splits_over_chi(q_t, ker_t, m, chi)) continue;
            kept = std::move(trial);
            changed = true;
        }
    }

    // canonical reassembly: sort kept pieces by label, map each onto its
    // canonical indecomposable with an explicit isomorphism
    std::vector<size_t> final_order;
    for (size_t i = 0; i < raw.pieces.size(); ++i)
        if (kept[i]) final_order.push_back(i);
    std::stable_sort(final_order.begin(), final_order.end(),
                     [&](size_t a, size_t b) { return raw.pieces[a].label < raw.pieces[b].label; });

    KGModule total = KGModule::zero(f);
    Matrix inclusion(f, raw.q.dim(), 0);
    for (size_t idx : final_order) {
        const auto& piece = raw.pieces[idx];
        KGModule piece_mod = detail::column_span_submodule(raw.q, piece.cols);
        KGModule canon = build_indecomposable(piece.label, f);
        auto iso = find_invertible_hom(canon, piece_mod, seed);
        if (!iso) throw std::logic_error("cover piece does not match its structural label");
        inclusion = inclusion.hstack(piece.cols * *iso);
        total = direct_sum(total, canon);
    }

    CoverData out{chi, total, raw.pi * inclusion, KGModule::zero(f), Matrix(f, total.dim(), 0), {}};
    if (m.X() * out.map != out.map * total.X() || m.Y() * out.map != out.map * total.Y())
        throw std::logic_error("minimal cover map is not equivariant");
    out.kernel = detail::kernel_module(total, out.map, out.kernel_embedding);
    for (Subgroup h : chi.members()) {
        auto s = detail::solve_splitting(m, total, out.map, h);
        if (!s)
            throw std::logic_error("minimal cover splitting over " + subgroup_name(h) + " unsolvable");
        out.splittings.emplace(h, std::move(*s));
    }
    return out;
}

/// Relative Heller shift. i = 0 strips relative projectives; i > 0 iterates
/// kernel-of-minimal-cover + strip; i < 0 goes through the dual per
/// Omega^i(M)* = Omega^{-i}(M*).
inline KGModule omega_chi(const KGModule& m, ChiSet chi, int i, uint32_t seed = kDecompSeed) {
    if (chi.is_empty() && i != 0) throw std::invalid_argument("omega_chi: chi must be non-empty");
    if (i < 0) return dual(omega_chi(dual(m), chi, -i, seed));
    KGModule cur = strip_rel_projective(m, chi, seed);
    for (int step = 0; step < i; ++step) {
        CoverData cover = minimal_cover(cur, chi, seed);
        cur = strip_rel_projective(cover.kernel, chi, seed);
    }
    return cur;
}

struct OmegaHom {
    KGModule source, target;  // Omega_chi of the original source/target
    Matrix map;
};

/// Lift f: m -> n through given covers and restrict to the kernels. The lift
/// solves pi_n fbar = f pi_m with the zero-free-variable convention, so the
/// representative is deterministic; its underline-Hom class is well defined.
inline OmegaHom omega_of_hom_via(const CoverData& cover_m, const CoverData& cover_n,
                                 const KGModule& m, const KGModule& n, const Matrix& f_map) {
    const Field& f = m.field();
    if (f_map.rows() != n.dim() || f_map.cols() != m.dim())
        throw std::invalid_argument("omega_of_hom: map shape mismatch");
    if (f_map * m.X() != n.X() * f_map || f_map * m.Y() != n.Y() * f_map)
        throw std::invalid_argument("omega_of_hom: map is not G-equivariant");
    const KGModule& qm = cover_m.total;
    const KGModule& qn = cover_n.total;
    const size_t Dm = qm.dim(), Dn = qn.dim();
    const size_t unknowns = Dm * Dn;  // fbar: Dn x Dm
    Matrix C(f, n.dim() * Dm + 2 * unknowns, unknowns);
    // pi_n fbar = f pi_m: row (i,j), i < dim n, j < Dm
    for (size_t j = 0; j < Dm; ++j)
        for (size_t i = 0; i < n.dim(); ++i) {
            const size_t row = j * n.dim() + i;
            for (size_t k = 0; k < Dn; ++k)
                if (cover_n.map.at(i, k)) C.at(row, j * Dn + k) = cover_n.map.at(i, k);
        }
    detail::append_commutation_rows(C, n.dim() * Dm, qm.X(), qn.X());
    detail::append_commutation_rows(C, n.dim() * Dm + unknowns, qm.Y(), qn.Y());
    Matrix rhs_mat = f_map * cover_m.map;  // dim n x Dm
    Matrix rhs(f, n.dim() * Dm + 2 * unknowns, 1);
    for (size_t j = 0; j < Dm; ++j)
        for (size_t i = 0; i < n.dim(); ++i) rhs.at(j * n.dim() + i, 0) = rhs_mat.at(i, j);
    auto sol = solve_linear(C, rhs);
    if (!sol)
        throw std::logic_error("omega_of_hom: lift unsolvable; contradicts relative projectivity");
    Matrix fbar = Matrix::unvec(f, sol->transpose().row(0), Dn, Dm);
    // restrict to kernels
    Matrix image = fbar * cover_m.kernel_embedding;  // Dn x dim ker_m
    auto z = solve_linear(cover_n.kernel_embedding, image);
    if (!z) throw std::logic_error("omega_of_hom: lift does not preserve kernels");
    return {cover_m.kernel, cover_n.kernel, *z};
}

inline OmegaHom omega_of_hom(const KGModule& m, const KGModule& n, const Matrix& f_map, ChiSet chi,
                             uint32_t seed = kDecompSeed) {
    CoverData cm = minimal_cover(m, chi, seed);
    CoverData cn = minimal_cover(n, chi, seed);
    return omega_of_hom_via(cm, cn, m, n, f_map);
}

/// Minimal relative resolution of the trivial module: spliced short exact
/// sequences 0 -> Omega^{i+1} -> Q_i -> Omega^i -> 0 with boundaries
/// d_i = rho_i pi_{i+1}.
struct ResolutionData {
    ChiSet chi;
    std::vector<KGModule> syzygies;   // [0] = k, then kernel modules
    std::vector<CoverData> covers;    // covers[i]: Q_i -> syzygies[i]
    std::vector<Matrix> boundaries;   // boundaries[i] = d_i: Q_{i+1} -> Q_i
    Matrix augmentation;              // Q_0 -> k

    size_t length() const { return covers.empty() ? 0 : covers.size() - 1; }

    void extend_to(size_t L, uint32_t seed = kDecompSeed) {
        while (covers.size() <= L) {
            const KGModule& cur = syzygies.back();
            covers.push_back(minimal_cover(cur, chi, seed));
            syzygies.push_back(covers.back().kernel);
            const size_t i = covers.size() - 1;
            if (i == 0)
                augmentation = covers[0].map;
            else
                boundaries.push_back(covers[i - 1].kernel_embedding * covers[i].map);
        }
    }
};

inline ResolutionData minimal_resolution(const Field& f, ChiSet chi, size_t L,
                                         uint32_t seed = kDecompSeed) {
    if (chi.is_empty()) throw std::invalid_argument("minimal_resolution: chi must be non-empty");
    ResolutionData res{chi, {KGModule::trivial(f, 1)}, {}, {}, Matrix(f, 0, 0)};
    res.extend_to(L, seed);
    return res;
}

} // namespace kfour
