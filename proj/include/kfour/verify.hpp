#pragma once

// The full verification suite: every numbered check the library is expected
// to reproduce, with exact integer assertions. Shared by the acceptance test
// binary and the CLI's verify-all command.

#include <functional>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "kfour/cohom.hpp"
#include "kfour/cup.hpp"
#include "kfour/decomp.hpp"
#include "kfour/relproj.hpp"

namespace kfour {

struct CriterionResult {
    std::string name;
    bool pass;
    std::string detail;
};

namespace verify_detail {

/// The indecomposable catalogue over f up to max_dim: all odd types, the even
/// types with degenerate theta, irreducible-power samples, and P.
inline std::vector<IndecLabel> full_catalogue(const Field& f, unsigned max_dim) {
    std::vector<IndecLabel> out;
    for (unsigned n = 0; 2 * n + 1 <= max_dim; ++n) {
        out.push_back(IndecLabel::vminus(n));
        if (n) out.push_back(IndecLabel::vplus(n));
    }
    for (unsigned n = 1; 2 * n <= max_dim; ++n) {
        out.push_back(IndecLabel::veven_inf(n));
        out.push_back(IndecLabel::veven(ThetaPoly(Poly::x(f), n)));
        out.push_back(IndecLabel::veven(ThetaPoly(Poly::x_plus(f, 1), n)));
    }
    // irreducible-power samples of every detectable base degree
    std::vector<Poly> bases;
    if (f.degree() == 1) {
        for (const char* s : {"x^2+x+1", "x^3+x+1", "x^3+x^2+1", "x^4+x+1", "x^4+x^3+1",
                              "x^4+x^3+x^2+x+1"})
            bases.push_back(Poly::parse(f, s));
    } else {
        bases.push_back(Poly::x_plus(f, 2));
    }
    for (const Poly& q : bases)
        for (unsigned m = 1; 2 * m * static_cast<unsigned>(q.degree()) <= max_dim; ++m)
            out.push_back(IndecLabel::veven(ThetaPoly(q, m)));
    if (max_dim >= 4) out.push_back(IndecLabel::proj());
    return out;
}

inline std::vector<IndecLabel> non_rel_projective_catalogue(const Field& f, unsigned max_dim) {
    std::vector<IndecLabel> out;
    for (const IndecLabel& l : full_catalogue(f, max_dim))
        if (!is_rel_projective(build_indecomposable(l, f), ChiSet::maximal())) out.push_back(l);
    return out;
}

inline std::map<IndecLabel, int> random_multiset(const std::vector<IndecLabel>& labels,
                                                 unsigned min_dim, unsigned max_dim,
                                                 std::mt19937& rng) {
    std::map<IndecLabel, int> out;
    size_t dim = 0;
    const size_t target = min_dim + rng() % (max_dim - min_dim + 1);
    int guard = 100;
    while (dim < target && guard--) {
        const IndecLabel& cand = labels[rng() % labels.size()];
        if (dim + cand.dim() > max_dim) continue;
        out[cand] += 1;
        dim += cand.dim();
    }
    return out;
}

inline KGModule random_twisted_sum(const std::map<IndecLabel, int>& multiset, const Field& f,
                                   std::mt19937& rng) {
    KGModule m = canonical_sum(multiset, f);
    if (m.dim() == 0) return m;
    // random change of basis
    for (int tries = 0; tries < 1000; ++tries) {
        Matrix c(f, m.dim(), m.dim());
        for (size_t i = 0; i < m.dim(); ++i)
            for (size_t j = 0; j < m.dim(); ++j) c.at(i, j) = static_cast<uint8_t>(rng() % f.size());
        auto ci = inverse(c);
        if (!ci) continue;
        return KGModule(*ci * m.X() * c, *ci * m.Y() * c);
    }
    throw std::runtime_error("random basis change failed");
}

} // namespace verify_detail

/// 1. H^i_chi(G, k) for i = 0..8 equals (1, 0, 1, 3, 5, 7, 9, 11, 13).
inline CriterionResult criterion_trivial_cohomology(uint32_t seed = kDecompSeed) {
    const Field f = Field::gf(1);
    SyzygyStore store(f, ChiSet::maximal(), seed);
    const std::vector<size_t> expect{1, 0, 1, 3, 5, 7, 9, 11, 13};
    std::ostringstream got;
    bool pass = true;
    KGModule k = KGModule::trivial(f, 1);
    for (size_t i = 0; i < expect.size(); ++i) {
        const size_t d = rel_cohom_dim(k, ChiSet::maximal(), i, &store);
        got << (i ? ", " : "") << d;
        pass &= (d == expect[i]);
    }
    return {"trivial-module cohomology dims i=0..8", pass, "got (" + got.str() + ")"};
}

/// 2. dim H^i(G, V_{2n+1}) matches max(0, n+2i-3) for 0 <= n <= 6, 0 <= i <= 6.
inline CriterionResult criterion_odd_positive_table(unsigned max_i = 6, uint32_t seed = kDecompSeed) {
    const Field f = Field::gf(1);
    SyzygyStore store(f, ChiSet::maximal(), seed);
    size_t cells = 0, bad = 0;
    std::string first;
    for (unsigned n = 0; n <= 6; ++n) {
        KGModule m = build_indecomposable(IndecLabel::vplus(n), f);
        for (unsigned i = 0; i <= max_i; ++i) {
            ++cells;
            const size_t via_res = rel_cohom_dim(m, ChiSet::maximal(), i, &store);
            const size_t via_form = closed_form_dim(IndecLabel::vplus(n), i);
            if (via_res != via_form && first.empty())
                first = "first mismatch at n=" + std::to_string(n) + ", i=" + std::to_string(i);
            bad += via_res != via_form;
        }
    }
    return {"odd positive table (n<=6, i<=" + std::to_string(max_i) + ")", bad == 0,
            std::to_string(cells) + " cells" + (bad ? ", " + std::to_string(bad) + " bad; " + first : "")};
}

/// 3. dim H^i(G, V_{-(2n+1)}) matches the piecewise formula, n <= 8, i <= 8.
inline CriterionResult criterion_odd_negative_table(uint32_t seed = kDecompSeed) {
    const Field f = Field::gf(1);
    SyzygyStore store(f, ChiSet::maximal(), seed);
    size_t cells = 0, bad = 0;
    for (unsigned n = 1; n <= 8; ++n) {
        KGModule m = build_indecomposable(IndecLabel::vminus(n), f);
        for (unsigned i = 0; i <= 8; ++i) {
            ++cells;
            bad += rel_cohom_dim(m, ChiSet::maximal(), i, &store) !=
                   closed_form_dim(IndecLabel::vminus(n), i);
        }
    }
    return {"odd negative table (n<=8, i<=8)", bad == 0,
            std::to_string(cells) + " cells" + (bad ? ", " + std::to_string(bad) + " bad" : "")};
}

/// 4. Even-module table for n <= 5, i <= 5, over GF(2) and GF(4).
inline CriterionResult criterion_even_table(uint32_t seed = kDecompSeed) {
    size_t cells = 0, bad = 0;
    {
        const Field f = Field::gf(1);
        SyzygyStore store(f, ChiSet::maximal(), seed);
        std::vector<IndecLabel> labels;
        for (unsigned n = 1; n <= 5; ++n) {
            labels.push_back(IndecLabel::veven_inf(n));
            labels.push_back(IndecLabel::veven(ThetaPoly(Poly::x(f), n)));
            labels.push_back(IndecLabel::veven(ThetaPoly(Poly::x_plus(f, 1), n)));
            if (n % 2 == 0)
                labels.push_back(IndecLabel::veven(ThetaPoly(Poly::parse(f, "x^2+x+1"), n / 2)));
        }
        for (const IndecLabel& l : labels) {
            KGModule m = build_indecomposable(l, f);
            for (unsigned i = 0; i <= 5; ++i) {
                ++cells;
                bad += rel_cohom_dim(m, ChiSet::maximal(), i, &store) != closed_form_dim(l, i);
            }
        }
    }
    {
        const Field f = Field::gf(2);
        SyzygyStore store(f, ChiSet::maximal(), seed);
        for (unsigned n = 1; n <= 5; ++n) {
            IndecLabel l = IndecLabel::veven(ThetaPoly(Poly::x_plus(f, 2), n));  // (x+omega)^n
            KGModule m = build_indecomposable(l, f);
            for (unsigned i = 0; i <= 5; ++i) {
                ++cells;
                bad += rel_cohom_dim(m, ChiSet::maximal(), i, &store) != n;
            }
        }
    }
    return {"even table (n<=5, i<=5, GF(2) and GF(4))", bad == 0,
            std::to_string(cells) + " cells" + (bad ? ", " + std::to_string(bad) + " bad" : "")};
}

/// 5. Relative shift theorem: Omega_chi = Omega^{-2} on odd-dimensional
/// non-rel-projective indecomposables, identity on even-dimensional ones.
inline CriterionResult criterion_heller_theorem(unsigned max_dim = 13, uint32_t seed = kDecompSeed) {
    const Field f = Field::gf(1);
    const ChiSet all = ChiSet::maximal();
    size_t checked = 0, bad = 0;
    std::string first;
    for (const IndecLabel& l : verify_detail::non_rel_projective_catalogue(f, max_dim)) {
        KGModule m = build_indecomposable(l, f);
        KGModule lhs = omega_chi(m, all, 1, seed);
        KGModule rhs = (m.dim() % 2 == 1) ? omega_chi(m, ChiSet::trivial_only(), -2, seed) : m;
        ++checked;
        if (decompose(lhs, seed).parts != decompose(rhs, seed).parts) {
            ++bad;
            if (first.empty()) first = " first failure: " + l.to_string();
        }
    }
    return {"relative shift theorem (dim <= " + std::to_string(max_dim) + ")", bad == 0,
            std::to_string(checked) + " modules" + first};
}

/// 6. Minimal cover shapes match the five structure lemmas exactly.
inline CriterionResult criterion_cover_shapes(uint32_t seed = kDecompSeed) {
    const Field f = Field::gf(1);
    const ChiSet all = ChiSet::maximal();
    size_t checked = 0, bad = 0;
    std::string first;
    auto expect_shape = [&](const IndecLabel& l, std::map<IndecLabel, int> want) {
        ++checked;
        CoverData c = minimal_cover(build_indecomposable(l, f), all, seed);
        if (decompose(c.total, seed).parts != want) {
            ++bad;
            if (first.empty()) first = " first failure: cover of " + l.to_string();
        }
    };
    std::map<IndecLabel, int> q_parts{{q_label(Subgroup::H1, f), 1},
                                      {q_label(Subgroup::H2, f), 1},
                                      {q_label(Subgroup::H3, f), 1}};
    for (unsigned n = 0; n <= 4; ++n) {
        auto want = q_parts;
        if (n) want[IndecLabel::proj()] = static_cast<int>(n);
        expect_shape(IndecLabel::vminus(n), want);
    }
    expect_shape(IndecLabel::vplus(1), q_parts);  // V3 -> Q
    for (unsigned n = 2; n <= 5; ++n)
        expect_shape(IndecLabel::veven_inf(n),
                     {{q_label(Subgroup::H2, f), 2}, {IndecLabel::proj(), static_cast<int>(n - 1)}});
    expect_shape(IndecLabel::parse("V4,theta:x^2+x+1^1", f), {{IndecLabel::proj(), 2}});
    expect_shape(IndecLabel::parse("V6,theta:x^3+x+1^1", f), {{IndecLabel::proj(), 3}});
    expect_shape(IndecLabel::parse("V8,theta:x^2+x+1^2", f), {{IndecLabel::proj(), 4}});
    {
        // generic theta with n = 1 exists over GF(4): V_{2,x+omega} -> P
        const Field f4 = Field::gf(2);
        ++checked;
        CoverData c = minimal_cover(
            build_indecomposable(IndecLabel::veven(ThetaPoly(Poly::x_plus(f4, 2), 1)), f4), all, seed);
        if (decompose(c.total, seed).parts != std::map<IndecLabel, int>{{IndecLabel::proj(), 1}})
            ++bad;
    }
    return {"minimal cover shapes", bad == 0, std::to_string(checked) + " covers" + first};
}

/// 7. Cup products of positive-degree classes vanish; for chi = {H1,H2,H3}
/// the composed representatives are literally zero; two-element subsets also
/// vanish.
inline CriterionResult criterion_cup_vanishing(uint32_t seed = kDecompSeed) {
    const Field f = Field::gf(1);
    CupReport full = verify_cup_vanishing(f, ChiSet::maximal(), 6, seed);
    bool pass = !full.vacuous && full.all_zero_class && full.all_zero_map;
    size_t products = full.rows.size();
    // the two-element subsets have H^1 = H^2 = 0, so total degree 6 is the
    // first point where genuine products appear
    for (ChiSet chi : {ChiSet::of({Subgroup::H1, Subgroup::H2}),
                       ChiSet::of({Subgroup::H1, Subgroup::H3}),
                       ChiSet::of({Subgroup::H2, Subgroup::H3})}) {
        CupReport r = verify_cup_vanishing(f, chi, 6, seed);
        pass &= r.all_zero_class && !r.vacuous;
        products += r.rows.size();
    }
    return {"cup product vanishing (total degree <= 6, all chi and 2-subsets)", pass,
            std::to_string(products) + " products checked"};
}

/// 8. Machinery: Higman <=> summand-of-induced; relative Schanuel; suspension
/// isomorphism; fixed points of relative projectives; ordinary Heller shifts.
inline CriterionResult criterion_machinery(unsigned max_dim = 13, uint32_t seed = kDecompSeed) {
    const Field f = Field::gf(1);
    const ChiSet all = ChiSet::maximal();
    std::ostringstream detail;
    bool pass = true;

    // (a) Higman <=> direct summand of the induced sum
    {
        size_t bad = 0, checked = 0;
        auto check_one = [&](const KGModule& m) {
            KGModule induced = KGModule::zero(f);
            for (Subgroup h : {Subgroup::H1, Subgroup::H2, Subgroup::H3})
                induced = direct_sum(induced, induce(restriction(m, h), h));
            auto whole = decompose(induced, seed).parts;
            bool summand = true;
            for (const auto& [l, mult] : decompose(m, seed).parts) {
                auto it = whole.find(l);
                if (it == whole.end() || it->second < mult) summand = false;
            }
            ++checked;
            if (summand != is_rel_projective(m, all)) ++bad;
        };
        for (const IndecLabel& l : verify_detail::full_catalogue(f, max_dim))
            check_one(build_indecomposable(l, f));
        std::mt19937 rng(seed ^ 0xa5a5a5a5u);
        auto labels = verify_detail::full_catalogue(f, 9);
        for (int trial = 0; trial < 50; ++trial) {
            auto multiset = verify_detail::random_multiset(labels, 2, 9, rng);
            if (multiset.empty()) multiset[IndecLabel::trivial()] = 1;
            check_one(verify_detail::random_twisted_sum(multiset, f, rng));
        }
        pass &= bad == 0;
        detail << "higman<=>induced " << checked << " cases" << (bad ? " (FAIL)" : "");
    }

    // (b) relative Schanuel on 20 seeded random modules
    {
        size_t bad = 0;
        std::mt19937 rng(seed ^ 0x5c5c5c5cu);
        auto labels = verify_detail::full_catalogue(f, 9);
        for (int trial = 0; trial < 20; ++trial) {
            auto multiset = verify_detail::random_multiset(labels, 4, 12, rng);
            if (multiset.empty()) multiset[IndecLabel::trivial()] = 1;
            KGModule m = verify_detail::random_twisted_sum(multiset, f, rng);
            KGModule a = strip_rel_projective(standard_cover(m, all).kernel, all, seed);
            KGModule b = strip_rel_projective(minimal_cover(m, all, seed).kernel, all, seed);
            if (decompose(a, seed).parts != decompose(b, seed).parts) ++bad;
        }
        pass &= bad == 0;
        detail << "; schanuel 20 cases" << (bad ? " (FAIL)" : "");
    }

    // (c) suspension isomorphism on all catalogue pairs of dim <= 9
    {
        size_t bad = 0, checked = 0;
        auto labels = verify_detail::full_catalogue(f, 9);
        std::vector<KGModule> mods, shifted;
        for (const IndecLabel& l : labels) {
            mods.push_back(build_indecomposable(l, f));
            shifted.push_back(omega_chi(mods.back(), all, 1, seed));
        }
        for (size_t a = 0; a < mods.size(); ++a)
            for (size_t b = 0; b < mods.size(); ++b) {
                ++checked;
                if (underline_hom_dim(mods[a], mods[b], all) !=
                    underline_hom_dim(shifted[a], shifted[b], all))
                    ++bad;
            }
        pass &= bad == 0;
        detail << "; suspension " << checked << " pairs" << (bad ? " (FAIL)" : "");
    }

    // (d) M^G = sum of transfers for relative projectives of dim <= 12
    {
        size_t bad = 0, checked = 0;
        std::vector<std::map<IndecLabel, int>> sums;
        std::function<void(std::map<IndecLabel, int>, size_t, int)> gen =
            [&](std::map<IndecLabel, int> cur, size_t dim, int next) {
                if (dim > 0) sums.push_back(cur);
                std::vector<IndecLabel> rel{IndecLabel::proj(), q_label(Subgroup::H1, f),
                                            q_label(Subgroup::H2, f), q_label(Subgroup::H3, f)};
                for (int i = next; i < 4; ++i) {
                    if (dim + rel[i].dim() > 12) continue;
                    auto c2 = cur;
                    c2[rel[i]] += 1;
                    gen(c2, dim + rel[i].dim(), i);
                }
            };
        gen({}, 0, 0);
        for (const auto& multiset : sums) {
            KGModule m = canonical_sum(multiset, f);
            Subspace fixed = fixed_points(m);
            Matrix span(f, 0, m.dim());
            for (Subgroup h : {Subgroup::H1, Subgroup::H2, Subgroup::H3}) {
                Subspace hf = fixed_points(m, h);
                for (size_t i = 0; i < hf.dim(); ++i) {
                    Matrix v = hf.basis_cols().block(0, i, m.dim(), 1);
                    Matrix tr(f, m.dim(), 1);
                    for (GroupElt s : transversal(h)) tr = tr + m.action(s) * v;
                    span = span.vstack(tr.transpose());
                }
            }
            ++checked;
            if (Subspace::from_span(span) != fixed) ++bad;
        }
        pass &= bad == 0;
        detail << "; rel-proj fixed points " << checked << " modules" << (bad ? " (FAIL)" : "");
    }

    // (e) ordinary Heller shifts (chi = {triv}) match the standard shifts
    {
        size_t bad = 0, checked = 0;
        const ChiSet triv = ChiSet::trivial_only();
        for (const IndecLabel& l : verify_detail::full_catalogue(f, max_dim)) {
            if (l == IndecLabel::proj()) continue;
            KGModule m = build_indecomposable(l, f);
            ++checked;
            if (l.kind() == IndecLabel::Kind::VEven) {
                if (decompose(omega_chi(m, triv, 1, seed), seed).parts != decompose(m, seed).parts)
                    ++bad;
            } else if (l.kind() == IndecLabel::Kind::VPlus || l.n() == 0) {
                if (decompose(omega_chi(m, triv, 1, seed), seed).parts !=
                    std::map<IndecLabel, int>{{IndecLabel::vplus(l.n() + 1), 1}})
                    ++bad;
            } else {
                if (decompose(omega_chi(m, triv, -1, seed), seed).parts !=
                    std::map<IndecLabel, int>{{IndecLabel::vminus(l.n() + 1), 1}})
                    ++bad;
            }
        }
        pass &= bad == 0;
        detail << "; ordinary heller " << checked << " modules" << (bad ? " (FAIL)" : "");
    }

    return {"machinery properties (dim <= " + std::to_string(max_dim) + ")", pass, detail.str()};
}

/// 9. Duality: even-dimensional catalogue modules are self-dual; duals swap
/// V_{2n+1} and V_{-(2n+1)}.
inline CriterionResult criterion_duality(unsigned max_dim = 13, uint32_t seed = kDecompSeed) {
    const Field f = Field::gf(1);
    size_t checked = 0, bad = 0;
    for (const IndecLabel& l : verify_detail::full_catalogue(f, max_dim)) {
        KGModule d = dual(build_indecomposable(l, f));
        IndecLabel expect = l;
        if (l.kind() == IndecLabel::Kind::VPlus) expect = IndecLabel::vminus(l.n());
        if (l.kind() == IndecLabel::Kind::VMinus && l.n() > 0) expect = IndecLabel::vplus(l.n());
        ++checked;
        if (decompose(d, seed).parts != std::map<IndecLabel, int>{{expect, 1}}) ++bad;
    }
    return {"duality on the catalogue (dim <= " + std::to_string(max_dim) + ")", bad == 0,
            std::to_string(checked) + " modules" + (bad ? ", " + std::to_string(bad) + " bad" : "")};
}

inline std::vector<CriterionResult> run_acceptance(unsigned max_dim = 13, unsigned max_i = 6,
                                                   uint32_t seed = kDecompSeed) {
    std::vector<CriterionResult> out;
    out.push_back(criterion_trivial_cohomology(seed));
    out.push_back(criterion_odd_positive_table(max_i, seed));
    out.push_back(criterion_odd_negative_table(seed));
    out.push_back(criterion_even_table(seed));
    out.push_back(criterion_heller_theorem(max_dim, seed));
    out.push_back(criterion_cover_shapes(seed));
    out.push_back(criterion_cup_vanishing(seed));
    out.push_back(criterion_machinery(max_dim, seed));
    out.push_back(criterion_duality(max_dim, seed));
    return out;
}

} // namespace kfour
