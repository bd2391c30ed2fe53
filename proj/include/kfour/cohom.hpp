#pragma once

// Relative cohomology dimensions H^i_chi(G, N): degree 0 is the fixed-point
// space, positive degrees are underline-Hom(Omega^i_chi(k), N). Syzygies are
// cached across degrees (each resolution step feeds the next), keeping table
// generation quadratic instead of recomputing resolutions per cell. The
// closed forms from the dimension propositions sit alongside as the second
// route for the table verifier.

#include <string>
#include <vector>

#include "kfour/homspace.hpp"
#include "kfour/relproj.hpp"

namespace kfour {

/// Cached syzygies Omega^i_chi(k) with their minimal covers, extended lazily.
class SyzygyStore {
    ResolutionData res_;
    uint32_t seed_;

public:
    SyzygyStore(const Field& f, ChiSet chi, uint32_t seed = kDecompSeed)
        : res_{chi, {KGModule::trivial(f, 1)}, {}, {}, Matrix(f, 0, 0)}, seed_(seed) {
        if (chi.is_empty()) throw std::invalid_argument("SyzygyStore: chi must be non-empty");
    }

    ChiSet chi() const { return res_.chi; }

    const KGModule& syzygy(size_t i) {
        if (i > 0) res_.extend_to(i - 1, seed_);
        return res_.syzygies[i];
    }

    const CoverData& cover(size_t i) {
        res_.extend_to(i, seed_);
        return res_.covers[i];
    }

    const ResolutionData& resolution() const { return res_; }
};

/// dim H^i_chi(G, N) computed from a minimal relative resolution.
inline size_t rel_cohom_dim(const KGModule& n, ChiSet chi, size_t i, SyzygyStore* store = nullptr) {
    if (chi.is_empty()) throw std::invalid_argument("rel_cohom_dim: chi must be non-empty");
    if (i == 0) return fixed_points(n).dim();
    if (store) {
        if (store->chi() != chi) throw std::invalid_argument("rel_cohom_dim: store has different chi");
        return underline_hom_dim(store->syzygy(i), n, chi);
    }
    SyzygyStore local(n.field(), chi);
    return underline_hom_dim(local.syzygy(i), n, chi);
}

/// The closed-form dimension for a catalogue label over chi = {H1,H2,H3}.
inline size_t closed_form_dim(const IndecLabel& label, size_t i) {
    using Kind = IndecLabel::Kind;
    switch (label.kind()) {
        case Kind::Proj: return i == 0 ? 1 : 0;
        case Kind::VPlus:
        case Kind::VMinus: {
            const unsigned n = label.n();
            if (label.kind() == Kind::VPlus || n == 0) {
                // V_{2n+1} (V_1 = k included at n = 0)
                if (i == 0) return n > 0 ? n : 1;
                const long v = static_cast<long>(n) + 2 * static_cast<long>(i) - 3;
                return v > 0 ? static_cast<size_t>(v) : 0;
            }
            // V_{-(2n+1)}, n >= 1
            if (2 * i <= n) return n + 1 - 2 * i;
            const long v = 2 * static_cast<long>(i) - static_cast<long>(n) - 3;
            return v > 0 ? static_cast<size_t>(v) : 0;
        }
        case Kind::VEven: {
            const unsigned n = label.n();
            const ThetaPoly& th = label.theta();
            const bool degenerate = th.is_infinity() || th.is_x_power() || th.is_x_plus_one_power();
            if (degenerate) {
                if (n == 1) return i == 0 ? 1 : 0;  // the relative projectives Q_sigma, Q_tau, Q_sigmatau
                return i == 0 ? n : n - 1;
            }
            return n;
        }
    }
    throw std::logic_error("closed_form_dim: bad label");
}

struct CohomRow {
    std::string module;
    size_t degree;
    size_t dim;
    std::string method;  // "resolution" | "closed_form"
};

struct CohomTable {
    std::vector<CohomRow> rows;
    std::vector<std::string> mismatches;  // human-readable cell descriptions
    bool all_match() const { return mismatches.empty(); }
};

/// The catalogue slice used by the table verifier: odd types up to max_n,
/// even types with the degenerate thetas, a generic theta sample, and P.
inline std::vector<IndecLabel> table_catalogue(const Field& f, unsigned max_n) {
    std::vector<IndecLabel> labels;
    labels.push_back(IndecLabel::trivial());
    for (unsigned n = 1; n <= max_n; ++n) {
        labels.push_back(IndecLabel::vplus(n));
        labels.push_back(IndecLabel::vminus(n));
        labels.push_back(IndecLabel::veven_inf(n));
        labels.push_back(IndecLabel::veven(ThetaPoly(Poly::x(f), n)));
        labels.push_back(IndecLabel::veven(ThetaPoly(Poly::x_plus(f, 1), n)));
    }
    if (f.degree() == 1) {
        Poly q = Poly::parse(f, "x^2+x+1");
        for (unsigned m = 1; 2 * m <= max_n; ++m)
            labels.push_back(IndecLabel::veven(ThetaPoly(q, m)));
    } else {
        Poly q = Poly::x_plus(f, 2);  // x + omega, irreducible over GF(2^e), e > 1
        for (unsigned n = 1; n <= max_n; ++n)
            labels.push_back(IndecLabel::veven(ThetaPoly(q, n)));
    }
    labels.push_back(IndecLabel::proj());
    return labels;
}

/// Every cell computed both ways; mismatches are reported as data, not
/// errors. Requires chi = {H1,H2,H3}, the chi the closed forms describe.
inline CohomTable verify_tables(unsigned max_n, unsigned max_i, ChiSet chi, const Field& f,
                                uint32_t seed = kDecompSeed) {
    if (chi != ChiSet::maximal())
        throw std::invalid_argument("verify_tables: closed forms require chi = {H1,H2,H3}");
    SyzygyStore store(f, chi, seed);
    CohomTable table;
    for (const IndecLabel& label : table_catalogue(f, max_n)) {
        KGModule m = build_indecomposable(label, f);
        for (unsigned i = 0; i <= max_i; ++i) {
            const size_t via_res = rel_cohom_dim(m, chi, i, &store);
            const size_t via_form = closed_form_dim(label, i);
            table.rows.push_back({label.to_string(), i, via_res, "resolution"});
            table.rows.push_back({label.to_string(), i, via_form, "closed_form"});
            if (via_res != via_form)
                table.mismatches.push_back(label.to_string() + " degree " + std::to_string(i) + ": " +
                                           std::to_string(via_res) + " (resolution) vs " +
                                           std::to_string(via_form) + " (closed form)");
        }
    }
    return table;
}

} // namespace kfour
