#pragma once

// Cup products on H^*_chi(G, k) via the composition construction: a class of
// degree i is represented by f in Hom_{kG}(Omega^i_chi(k), k), the product
// with a degree-j class [g] is the class of f composed with Omega^i_chi(g),
// the i-fold lift of g through the stored minimal resolution.

#include <map>
#include <vector>

#include "kfour/cohom.hpp"

namespace kfour {

struct CohomClass {
    size_t degree;
    Matrix rep;                    // 1 x dim(Omega^degree) representative
    std::vector<uint8_t> residue;  // coordinates modulo the transfer image

    bool is_zero_class() const {
        for (uint8_t v : residue)
            if (v) return false;
        return true;
    }
};

/// Per-chi cohomology-of-k workspace: shared syzygy store plus, per degree,
/// the Hom-space of maps to k, its transfer-image subspace, and a fixed
/// complement giving canonical residue coordinates.
class CohomContext {
    Field field_;
    ChiSet chi_;
    uint32_t seed_;
    SyzygyStore store_;
    KGModule k_;

    struct DegreeData {
        HomSpaceBasis hom;
        Subspace image;
        std::vector<size_t> complement;  // hom-basis indices completing image to the full span
        Matrix frame;                    // rows: image basis then complement vecs
    };
    std::map<size_t, DegreeData> degrees_;

    const DegreeData& degree_data(size_t i) {
        auto it = degrees_.find(i);
        if (it != degrees_.end()) return it->second;
        const KGModule& omega = store_.syzygy(i);
        HomSpaceBasis hom = hom_basis(omega, k_);
        TransferData td = chi_transfer_image(omega, k_, chi_);
        Matrix frame = td.image.basis();
        std::vector<size_t> complement;
        for (size_t idx = 0; idx < hom.basis.size(); ++idx) {
            Matrix cand = frame.vstack(hom.basis[idx].vec());
            if (rank(cand) > frame.rows()) {
                frame = std::move(cand);
                complement.push_back(idx);
            }
        }
        auto [pos, inserted] =
            degrees_.emplace(i, DegreeData{std::move(hom), td.image, std::move(complement), frame});
        return pos->second;
    }

public:
    CohomContext(const Field& f, ChiSet chi, uint32_t seed = kDecompSeed)
        : field_(f), chi_(chi), seed_(seed), store_(f, chi, seed), k_(KGModule::trivial(f, 1)) {}

    ChiSet chi() const { return chi_; }
    SyzygyStore& store() { return store_; }
    const KGModule& syzygy(size_t i) { return store_.syzygy(i); }

    size_t dim(size_t i) {
        const DegreeData& dd = degree_data(i);
        return dd.hom.dim() - dd.image.dim();
    }

    /// Wrap a representative into a class: residue = coordinates of rep in
    /// the complement part of the frame (image coordinates are discarded).
    CohomClass make_class(size_t degree, const Matrix& rep) {
        const DegreeData& dd = degree_data(degree);
        auto coords = solve_linear(dd.frame.transpose(), rep.vec().transpose());
        if (!coords) throw std::invalid_argument("representative is not an equivariant map");
        std::vector<uint8_t> residue(dd.complement.size(), 0);
        for (size_t t = 0; t < dd.complement.size(); ++t)
            residue[t] = coords->at(dd.image.dim() + t, 0);
        return {degree, rep, std::move(residue)};
    }

    /// Representatives completing the transfer image to the full Hom-space;
    /// count = dim H^degree.
    std::vector<CohomClass> class_basis(size_t degree) {
        const DegreeData& dd = degree_data(degree);
        std::vector<CohomClass> out;
        for (size_t idx : dd.complement) out.push_back(make_class(degree, dd.hom.basis[idx]));
        return out;
    }

    /// Omega^i_chi(g) for [g] of degree j: i successive lifts through the
    /// stored minimal covers, ending in Hom(Omega^{i+j}, Omega^i).
    Matrix omega_shift(const Matrix& g_rep, size_t j, size_t i) {
        if (i > 0) store_.cover(j + i - 1);  // extend up front; references below stay stable
        Matrix cur = g_rep;
        for (size_t t = 0; t < i; ++t) {
            OmegaHom lifted = omega_of_hom_via(store_.cover(j + t), store_.cover(t),
                                               store_.syzygy(j + t), store_.syzygy(t), cur);
            cur = lifted.map;
        }
        return cur;
    }

    /// The literal composed representative f . Omega^i(g) of a cup product.
    Matrix cup_rep(const CohomClass& a, const CohomClass& b) {
        return a.rep * omega_shift(b.rep, b.degree, a.degree);
    }

    CohomClass cup(const CohomClass& a, const CohomClass& b) {
        return make_class(a.degree + b.degree, cup_rep(a, b));
    }

    CohomClass add(const CohomClass& a, const CohomClass& b) {
        if (a.degree != b.degree) throw std::invalid_argument("class addition needs equal degrees");
        return make_class(a.degree, a.rep + b.rep);
    }
};

struct CupReport {
    struct Row {
        size_t i, j;
        size_t class_i, class_j;  // indices into the degree bases
        bool is_zero_class;
        bool is_zero_map;
    };
    ChiSet chi;
    size_t max_total_degree = 0;
    std::vector<Row> rows;
    bool vacuous = true;
    bool all_zero_class = true;
    bool all_zero_map = true;  // literal compositions, meaningful for chi = {H1,H2,H3}
};

/// Grid check: every product of positive-degree basis classes with total
/// degree <= max_total_degree. Failures are data, not errors.
inline CupReport verify_cup_vanishing(const Field& f, ChiSet chi, size_t max_total_degree,
                                      uint32_t seed = kDecompSeed) {
    CohomContext ctx(f, chi, seed);
    CupReport report;
    report.chi = chi;
    report.max_total_degree = max_total_degree;
    std::map<size_t, std::vector<CohomClass>> bases;
    for (size_t i = 1; i + 1 <= max_total_degree; ++i) bases[i] = ctx.class_basis(i);
    for (size_t i = 1; i < max_total_degree; ++i)
        for (size_t j = 1; i + j <= max_total_degree; ++j)
            for (size_t ai = 0; ai < bases[i].size(); ++ai)
                for (size_t bj = 0; bj < bases[j].size(); ++bj) {
                    Matrix composed = ctx.cup_rep(bases[i][ai], bases[j][bj]);
                    CohomClass cls = ctx.make_class(i + j, composed);
                    CupReport::Row row{i, j, ai, bj, cls.is_zero_class(), composed.is_zero()};
                    report.vacuous = false;
                    report.all_zero_class &= row.is_zero_class;
                    report.all_zero_map &= row.is_zero_map;
                    report.rows.push_back(row);
                }
    return report;
}

} // namespace kfour
