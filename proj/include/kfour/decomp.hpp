#pragma once

// Krull-Schmidt decomposition into catalogue indecomposables, identification
// against the classification, and stripping of relative-projective summands.
//
// Splitting uses Fitting decompositions m = ker(f^d) + im(f^d) for seeded
// pseudo-random endomorphisms f. A piece is accepted as indecomposable only
// once an explicit invertible homomorphism onto the canonical module of its
// identified label has been found, so the returned answer never depends on
// the random search; if no certificate can be produced the operation raises
// UndecidedError instead of guessing.

#include <algorithm>
#include <array>
#include <map>
#include <optional>
#include <random>
#include <stdexcept>
#include <vector>

#include "kfour/homspace.hpp"
#include "kfour/kgmod.hpp"

namespace kfour {

inline constexpr uint32_t kDecompSeed = 0x4B464F55;

class UndecidedError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

struct Decomposition {
    std::map<IndecLabel, int> parts;
    Matrix witness;  // columns: images of the canonical-sum basis; conjugation
                     // by it makes X and Y block-diagonal in sorted label order

    size_t total_dim() const {
        size_t d = 0;
        for (const auto& [label, mult] : parts) d += label.dim() * static_cast<size_t>(mult);
        return d;
    }
};

/// Direct sum of canonical indecomposables in sorted label order.
inline KGModule canonical_sum(const std::map<IndecLabel, int>& parts, const Field& f) {
    KGModule out = KGModule::zero(f);
    for (const auto& [label, mult] : parts)
        for (int i = 0; i < mult; ++i) out = direct_sum(out, build_indecomposable(label, f));
    return out;
}

namespace detail {

inline Matrix matrix_power(const Matrix& m, size_t k) {
    Matrix r = Matrix::identity(m.field(), m.rows());
    Matrix b = m;
    while (k) {
        if (k & 1) r = r * b;
        b = b * b;
        k >>= 1;
    }
    return r;
}

/// Minimal polynomial by Krylov iteration over the standard basis.
inline Poly minimal_polynomial(const Matrix& n) {
    const Field& f = n.field();
    const size_t d = n.rows();
    Poly mu = Poly::one(f);
    for (size_t s = 0; s < d; ++s) {
        if (mu.degree() == static_cast<int>(d)) break;
        Matrix v(f, d, 1);
        v.at(s, 0) = 1;
        std::vector<Matrix> krylov{v};
        Matrix rows(f, 1, d);
        for (size_t j = 0; j < d; ++j) rows.at(0, j) = v.at(j, 0);
        while (true) {
            Matrix next = n * krylov.back();
            // is next in the span of the rows so far?
            Matrix nrow(f, 1, d);
            for (size_t j = 0; j < d; ++j) nrow.at(0, j) = next.at(j, 0);
            auto coeffs = solve_linear(rows.transpose(), next);
            if (coeffs) {
                std::vector<uint8_t> cs(krylov.size() + 1, 0);
                for (size_t j = 0; j < krylov.size(); ++j) cs[j] = coeffs->at(j, 0);
                cs[krylov.size()] = 1;  // monic; -c = c in characteristic 2
                mu = poly_lcm(mu, Poly(f, cs));
                break;
            }
            krylov.push_back(next);
            rows = rows.vstack(nrow);
        }
    }
    return mu;
}

/// Enumerate monic irreducible polynomials of degree <= maxdeg in canonical
/// order (degree, then coefficients as little-endian integer).
inline std::vector<Poly> monic_irreducibles(const Field& f, unsigned maxdeg) {
    std::vector<Poly> out;
    for (unsigned d = 1; d <= maxdeg; ++d) {
        uint64_t count = 1;
        for (unsigned i = 0; i < d; ++i) count *= f.size();
        for (uint64_t idx = 0; idx < count; ++idx) {
            std::vector<uint8_t> cs(d + 1, 0);
            cs[d] = 1;
            uint64_t t = idx;
            for (unsigned i = 0; i < d; ++i) {
                cs[i] = static_cast<uint8_t>(t % f.size());
                t /= f.size();
            }
            Poly p(f, cs);
            if (is_irreducible(p)) out.push_back(p);
        }
    }
    return out;
}

} // namespace detail

/// An explicit isomorphism a -> b (invertible equivariant matrix), if one can
/// be found by basis elements and seeded random combinations.
inline std::optional<Matrix> find_invertible_hom(const KGModule& a, const KGModule& b,
                                                 uint32_t seed = kDecompSeed) {
    if (a.dim() != b.dim()) return std::nullopt;
    if (a.dim() == 0) return Matrix(a.field(), 0, 0);
    HomSpaceBasis h = hom_basis(a, b);
    for (const Matrix& t : h.basis)
        if (is_invertible(t)) return t;
    std::mt19937 rng(seed ^ 0x9e3779b9u);
    const unsigned q = a.field().size();
    for (int draw = 0; draw < 512; ++draw) {
        Matrix t(a.field(), b.dim(), a.dim());
        for (const Matrix& bmat : h.basis) {
            const uint8_t c = static_cast<uint8_t>(rng() % q);
            if (c) t = t + bmat.scaled(c);
        }
        if (is_invertible(t)) return t;
    }
    return std::nullopt;
}

/// Label of a certified-indecomposable module, per the classification:
/// odd dimension by fixed-point dimension; dim 4 with XY != 0 is P; other even
/// modules through the (Xbar, Ybar) pencil on m/rad -> rad, with theta the
/// unique elementary divisor of Ybar^{-1} Xbar.
inline IndecLabel identify(const KGModule& m) {
    const Field& f = m.field();
    const size_t d = m.dim();
    if (d == 0) throw std::invalid_argument("identify: zero module is not indecomposable");

    auto restriction_signature = [](const KGModule& mod) {
        return std::array<size_t, 3>{rank(mod.nilpotent(Subgroup::H1)), rank(mod.nilpotent(Subgroup::H2)),
                                     rank(mod.nilpotent(Subgroup::H3))};
    };
    auto check_signature = [&](const IndecLabel& label) {
        KGModule canon = build_indecomposable(label, f);
        if (restriction_signature(canon) != restriction_signature(m))
            throw std::invalid_argument("identify: restriction ranks do not match " + label.to_string() +
                                        "; input is decomposable");
        return label;
    };

    if (d % 2 == 1) {
        const unsigned n = static_cast<unsigned>(d / 2);
        const size_t fx = fixed_points(m).dim();
        if (fx == n && n > 0) return check_signature(IndecLabel::vplus(n));
        if (fx == n + 1) return check_signature(IndecLabel::vminus(n));
        throw std::invalid_argument("identify: odd module with fixed-point dimension " +
                                    std::to_string(fx) + "; input is decomposable");
    }

    const Matrix xy = m.X() * m.Y();
    if (!xy.is_zero()) {
        if (d == 4) return check_signature(IndecLabel::proj());
        throw std::invalid_argument("identify: XY != 0 on a module of dimension " + std::to_string(d) +
                                    "; input is decomposable");
    }

    const unsigned n = static_cast<unsigned>(d / 2);
    Subspace rad = subspace_combine(Subspace::from_span(m.X().transpose()),
                                    Subspace::from_span(m.Y().transpose()), CombineMode::Sum);
    if (rad.dim() != n)
        throw std::invalid_argument("identify: radical has dimension " + std::to_string(rad.dim()) +
                                    ", expected " + std::to_string(n) + "; input is decomposable");
    // complement of rad spanned by the standard vectors off the pivot columns
    Echelon re = reduced_echelon(rad.basis());
    std::vector<bool> pivot(d, false);
    for (size_t p : re.pivots) pivot[p] = true;
    Matrix comp(f, d, n);
    {
        size_t c = 0;
        for (size_t j = 0; j < d; ++j)
            if (!pivot[j]) comp.at(j, c++) = 1;
    }
    Matrix brad = rad.basis_cols();  // d x n
    auto induced = [&](const Matrix& act) {
        auto sol = solve_linear(brad, act * comp);
        if (!sol) throw std::logic_error("identify: image escaped the radical");
        return *sol;  // n x n
    };
    Matrix xbar = induced(m.X());
    Matrix ybar = induced(m.Y());

    if (!is_invertible(ybar)) {
        if (!is_invertible(xbar))
            throw std::invalid_argument("identify: both pencil maps singular; input is decomposable");
        return check_signature(IndecLabel::veven_inf(n));
    }

    Matrix pencil = *inverse(ybar) * xbar;
    Poly mu = detail::minimal_polynomial(pencil);
    if (mu.degree() != static_cast<int>(n))
        throw std::invalid_argument("identify: pencil minimal polynomial has degree " +
                                    std::to_string(mu.degree()) + " < " + std::to_string(n) +
                                    "; input is decomposable");
    for (const Poly& q : detail::monic_irreducibles(f, std::min(n, 4u))) {
        if (static_cast<unsigned>(q.degree()) > n || n % static_cast<unsigned>(q.degree())) continue;
        const unsigned mexp = n / static_cast<unsigned>(q.degree());
        if (q.pow(mexp) == mu) return check_signature(IndecLabel::veven(ThetaPoly(q, mexp)));
    }
    throw std::invalid_argument("identify: elementary divisor " + mu.to_string() +
                                " is not a power of a detectable irreducible");
}

namespace detail {

struct Leaf {
    IndecLabel label;
    Matrix block;  // columns of the ambient module giving this summand in canonical coordinates
};

inline void decompose_rec(const KGModule& m, uint32_t seed, std::vector<Leaf>& out) {
    const Field& f = m.field();
    const size_t d = m.dim();
    if (d == 0) return;

    HomSpaceBasis end = hom_basis(m, m);
    const size_t k = end.dim();
    const unsigned q = f.size();

    auto fitting_rank = [&](const Matrix& fmat) {
        Matrix p = matrix_power(fmat, d);
        return std::pair<Matrix, size_t>(p, rank(p));
    };

    std::optional<Matrix> splitter;
    // exhaustive over the whole endomorphism algebra when small enough,
    // otherwise seeded random draws
    double combos = 1;
    for (size_t i = 0; i < k && combos <= 4096; ++i) combos *= q;
    if (combos <= 4096) {
        std::vector<uint8_t> c(k, 0);
        for (uint64_t idx = 1; idx < static_cast<uint64_t>(combos) && !splitter; ++idx) {
            uint64_t t = idx;
            for (size_t i = 0; i < k; ++i) {
                c[i] = static_cast<uint8_t>(t % q);
                t /= q;
            }
            Matrix fmat(f, d, d);
            for (size_t i = 0; i < k; ++i)
                if (c[i]) fmat = fmat + end.basis[i].scaled(c[i]);
            auto [p, r] = fitting_rank(fmat);
            if (r > 0 && r < d) splitter = p;
        }
    } else {
        std::mt19937 rng(seed ^ static_cast<uint32_t>(d * 0x85ebca6bu) ^ static_cast<uint32_t>(k));
        for (int draw = 0; draw < 256 && !splitter; ++draw) {
            Matrix fmat(f, d, d);
            for (size_t i = 0; i < k; ++i) {
                const uint8_t c = static_cast<uint8_t>(rng() % q);
                if (c) fmat = fmat + end.basis[i].scaled(c);
            }
            auto [p, r] = fitting_rank(fmat);
            if (r > 0 && r < d) splitter = p;
        }
    }

    if (!splitter) {
        // no splitting found: certify indecomposability by explicit isomorphism
        IndecLabel label = [&] {
            try {
                return identify(m);
            } catch (const std::invalid_argument& e) {
                throw UndecidedError(std::string("decompose: cannot certify indecomposability (") +
                                     e.what() + ")");
            }
        }();
        KGModule canon = build_indecomposable(label, f);
        auto iso = find_invertible_hom(canon, m, seed);
        if (!iso)
            throw UndecidedError("decompose: no isomorphism onto " + label.to_string() +
                                 " found; cannot certify indecomposability");
        out.push_back({label, *iso});
        return;
    }

    // Fitting split along p = f^d
    const Matrix& p = *splitter;
    Subspace ker = kernel_basis(p);
    Subspace im = Subspace::from_span(p.transpose());
    Matrix kc = ker.basis_cols();  // d x (d-r)
    Matrix ic = im.basis_cols();   // d x r
    Matrix c = kc.hstack(ic);
    if (!is_invertible(c)) throw std::logic_error("decompose: Fitting decomposition failed");

    auto submodule = [&](const Matrix& cols) {
        auto xk = solve_linear(cols, m.X() * cols);
        auto yk = solve_linear(cols, m.Y() * cols);
        if (!xk || !yk) throw std::logic_error("decompose: Fitting parts are not invariant");
        return KGModule(*xk, *yk);
    };
    KGModule m1 = submodule(kc), m2 = submodule(ic);

    std::vector<Leaf> l1, l2;
    decompose_rec(m1, seed, l1);
    decompose_rec(m2, seed, l2);
    for (auto& leaf : l1) out.push_back({leaf.label, kc * leaf.block});
    for (auto& leaf : l2) out.push_back({leaf.label, ic * leaf.block});
}

} // namespace detail

/// Decompose into catalogue indecomposables; deterministic given the seed.
inline Decomposition decompose(const KGModule& m, uint32_t seed = kDecompSeed) {
    std::vector<detail::Leaf> leaves;
    detail::decompose_rec(m, seed, leaves);
    std::stable_sort(leaves.begin(), leaves.end(),
                     [](const detail::Leaf& a, const detail::Leaf& b) { return a.label < b.label; });
    Decomposition dec{{}, Matrix(m.field(), m.dim(), 0)};
    Matrix w(m.field(), m.dim(), 0);
    for (const auto& leaf : leaves) {
        dec.parts[leaf.label] += 1;
        w = w.hstack(leaf.block);
    }
    dec.witness = std::move(w);
    if (dec.total_dim() != m.dim()) throw std::logic_error("decompose: dimension bookkeeping failed");
    if (m.dim() > 0) {
        // witness validity: conjugation recovers the canonical block matrices
        auto wi = inverse(dec.witness);
        if (!wi) throw std::logic_error("decompose: witness is singular");
        KGModule canon = canonical_sum(dec.parts, m.field());
        if (*wi * m.X() * dec.witness != canon.X() || *wi * m.Y() * dec.witness != canon.Y())
            throw std::logic_error("decompose: witness does not block-diagonalize");
    }
    return dec;
}

inline bool is_isomorphic(const KGModule& a, const KGModule& b, uint32_t seed = kDecompSeed) {
    if (a.dim() != b.dim()) return false;
    return decompose(a, seed).parts == decompose(b, seed).parts;
}

/// Direct sum of the non-rel-projective parts, in canonical form. Idempotent.
inline KGModule strip_rel_projective(const KGModule& m, ChiSet chi, uint32_t seed = kDecompSeed) {
    Decomposition dec = decompose(m, seed);
    std::map<IndecLabel, int> keep;
    for (const auto& [label, mult] : dec.parts)
        if (!is_rel_projective(build_indecomposable(label, m.field()), chi)) keep[label] = mult;
    return canonical_sum(keep, m.field());
}

} // namespace kfour
