#pragma once

// kG-modules for G = <sigma, tau> = C2 x C2 over GF(2^e), realized as
// R = k[X,Y]/(X^2,Y^2)-modules: X = sigma - 1, Y = tau - 1. A module is
// (dim, X-action, Y-action) with X^2 = Y^2 = 0 and XY = YX.

#include <array>
#include <cctype>
#include <cstdint>
#include <initializer_list>
#include <optional>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include "kfour/matrix.hpp"
#include "kfour/poly.hpp"

namespace kfour {

enum class Subgroup : uint8_t { Triv = 0, H1 = 1, H2 = 2, H3 = 3 };

inline std::string subgroup_name(Subgroup h) {
    switch (h) {
        case Subgroup::Triv: return "triv";
        case Subgroup::H1: return "H1";
        case Subgroup::H2: return "H2";
        case Subgroup::H3: return "H3";
    }
    return "?";
}

/// A subset of {Triv, H1, H2, H3}. Iteration order is H1, H2, H3, Triv, so
/// the standard cover of k over chi = {H1,H2,H3} is Q_sigma + Q_tau + Q_sigmatau
/// in that order.
class ChiSet {
    uint8_t bits_ = 0;

public:
    ChiSet() = default;

    static ChiSet empty() { return ChiSet(); }
    static ChiSet maximal() { return ChiSet().with(Subgroup::H1).with(Subgroup::H2).with(Subgroup::H3); }
    static ChiSet trivial_only() { return ChiSet().with(Subgroup::Triv); }
    static ChiSet of(std::initializer_list<Subgroup> hs) {
        ChiSet c;
        for (Subgroup h : hs) c = c.with(h);
        return c;
    }

    ChiSet with(Subgroup h) const {
        ChiSet c = *this;
        c.bits_ |= static_cast<uint8_t>(1u << static_cast<unsigned>(h));
        return c;
    }
    bool contains(Subgroup h) const { return bits_ & (1u << static_cast<unsigned>(h)); }
    bool is_empty() const { return bits_ == 0; }
    size_t size() const {
        size_t n = 0;
        for (unsigned b = bits_; b; b >>= 1) n += b & 1;
        return n;
    }

    std::vector<Subgroup> members() const {
        std::vector<Subgroup> out;
        for (Subgroup h : {Subgroup::H1, Subgroup::H2, Subgroup::H3, Subgroup::Triv})
            if (contains(h)) out.push_back(h);
        return out;
    }

    bool operator==(const ChiSet& o) const { return bits_ == o.bits_; }
    bool operator!=(const ChiSet& o) const { return bits_ != o.bits_; }
    bool operator<(const ChiSet& o) const { return bits_ < o.bits_; }

    std::string to_string() const {
        if (is_empty()) return "(empty)";
        std::string s;
        for (Subgroup h : members()) {
            if (!s.empty()) s += ",";
            s += subgroup_name(h);
        }
        return s;
    }

    /// Parse "H1,H2,H3", "triv", "H1,triv", ... (case-insensitive).
    static ChiSet parse(const std::string& text) {
        ChiSet c;
        size_t pos = 0;
        while (pos <= text.size()) {
            size_t next = text.find(',', pos);
            std::string tok = text.substr(pos, next == std::string::npos ? std::string::npos : next - pos);
            std::string low;
            for (char ch : tok) low += static_cast<char>(std::tolower(static_cast<unsigned char>(ch)));
            if (low == "h1") c = c.with(Subgroup::H1);
            else if (low == "h2") c = c.with(Subgroup::H2);
            else if (low == "h3") c = c.with(Subgroup::H3);
            else if (low == "triv" || low == "1" || low == "e") c = c.with(Subgroup::Triv);
            else if (!low.empty()) throw std::invalid_argument("unknown subgroup '" + tok + "' in chi");
            if (next == std::string::npos) break;
            pos = next + 1;
        }
        return c;
    }
};

enum class GroupElt : uint8_t { One = 0, Sigma = 1, Tau = 2, SigmaTau = 3 };

/// Fixed transversal of h in G: {1, g} with g the first generator outside h
/// (sigma for H2, H3; tau for H1); {1, sigma, tau, sigma tau} for Triv.
inline std::vector<GroupElt> transversal(Subgroup h) {
    switch (h) {
        case Subgroup::H1: return {GroupElt::One, GroupElt::Tau};
        case Subgroup::H2: return {GroupElt::One, GroupElt::Sigma};
        case Subgroup::H3: return {GroupElt::One, GroupElt::Sigma};
        case Subgroup::Triv: return {GroupElt::One, GroupElt::Sigma, GroupElt::Tau, GroupElt::SigmaTau};
    }
    return {};
}

inline GroupElt coset_rep(Subgroup h) { return transversal(h)[1]; }

/// theta = q^m for a monic irreducible q, or the symbol infinity.
class ThetaPoly {
    bool infinite_;
    std::optional<Poly> q_;
    unsigned m_ = 0;

    ThetaPoly() : infinite_(true) {}

public:
    static ThetaPoly infinity() { return ThetaPoly(); }

    ThetaPoly(Poly q, unsigned m) : infinite_(false), q_(std::move(q)), m_(m) {
        if (m_ < 1) throw std::invalid_argument("theta exponent must be positive");
        if (!q_->is_monic()) throw std::invalid_argument("theta base must be monic");
        if (q_->degree() < 1) throw std::invalid_argument("theta base must be non-constant");
        if (!is_irreducible(*q_))
            throw std::invalid_argument("theta base '" + q_->to_string() + "' is reducible");
    }

    bool is_infinity() const { return infinite_; }
    const Poly& base() const {
        if (infinite_) throw std::logic_error("theta = infinity has no base polynomial");
        return *q_;
    }
    unsigned exponent() const { return m_; }

    /// n in V_{2n,theta}: deg(q) * m.
    unsigned effective_degree() const {
        if (infinite_) throw std::logic_error("theta = infinity has no degree");
        return static_cast<unsigned>(q_->degree()) * m_;
    }

    /// The expanded polynomial theta(x) = q(x)^m, monic of degree n.
    Poly expand() const { return q_->pow(m_); }

    /// True for the theta of Q_sigma (x) and Q_sigmatau (x+1); together with
    /// infinity these are the restriction-degenerate cases in the dimension
    /// formulas.
    bool is_x_power() const { return !infinite_ && *q_ == Poly::x(q_->field()); }
    bool is_x_plus_one_power() const {
        return !infinite_ && *q_ == Poly::x_plus(q_->field(), 1);
    }

    bool operator==(const ThetaPoly& o) const {
        if (infinite_ != o.infinite_) return false;
        if (infinite_) return true;
        return *q_ == *o.q_ && m_ == o.m_;
    }
    bool operator!=(const ThetaPoly& o) const { return !(*this == o); }
    bool operator<(const ThetaPoly& o) const {
        if (infinite_ != o.infinite_) return infinite_;  // infinity sorts first
        if (infinite_) return false;
        if (*q_ != *o.q_) return *q_ < *o.q_;
        return m_ < o.m_;
    }

    std::string to_string() const {
        if (infinite_) return "inf";
        return q_->to_string() + "^" + std::to_string(m_);
    }
};

/// A name from the indecomposable catalogue: V_{2n+1}, V_{-(2n+1)},
/// V_{2n,theta} (theta possibly infinity), or the projective P.
/// V_{+1} and V_{-1} are the same trivial module; the label canonicalizes
/// to VMinus(0).
class IndecLabel {
public:
    enum class Kind : uint8_t { VMinus = 0, VPlus = 1, VEven = 2, Proj = 3 };

private:
    Kind kind_;
    unsigned n_ = 0;  // V_{+-(2n+1)}: the n; VEven: half the dimension
    std::optional<ThetaPoly> theta_;

    IndecLabel(Kind k, unsigned n, std::optional<ThetaPoly> th)
        : kind_(k), n_(n), theta_(std::move(th)) {}

public:
    static IndecLabel vplus(unsigned n) {
        if (n == 0) return vminus(0);  // V_1 = V_{-1} = k
        return IndecLabel(Kind::VPlus, n, std::nullopt);
    }
    static IndecLabel vminus(unsigned n) { return IndecLabel(Kind::VMinus, n, std::nullopt); }
    static IndecLabel veven(ThetaPoly theta) {
        const unsigned n = theta.effective_degree();
        return IndecLabel(Kind::VEven, n, std::move(theta));
    }
    static IndecLabel veven_inf(unsigned n) {
        if (n < 1) throw std::invalid_argument("V_{2n,inf} needs n >= 1");
        return IndecLabel(Kind::VEven, n, ThetaPoly::infinity());
    }
    static IndecLabel proj() { return IndecLabel(Kind::Proj, 0, std::nullopt); }
    static IndecLabel trivial() { return vminus(0); }

    Kind kind() const { return kind_; }
    unsigned n() const { return n_; }
    const ThetaPoly& theta() const {
        if (kind_ != Kind::VEven) throw std::logic_error("label has no theta");
        return *theta_;
    }

    size_t dim() const {
        switch (kind_) {
            case Kind::VPlus:
            case Kind::VMinus: return 2 * n_ + 1;
            case Kind::Proj: return 4;
            case Kind::VEven: return 2 * n_;
        }
        return 0;
    }

    bool operator==(const IndecLabel& o) const {
        if (kind_ != o.kind_ || n_ != o.n_) return false;
        if (kind_ == Kind::VEven) return *theta_ == *o.theta_;
        return true;
    }
    bool operator!=(const IndecLabel& o) const { return !(*this == o); }

    bool operator<(const IndecLabel& o) const {
        if (kind_ != o.kind_) return static_cast<int>(kind_) < static_cast<int>(o.kind_);
        if (n_ != o.n_) return n_ < o.n_;
        if (kind_ == Kind::VEven) return *theta_ < *o.theta_;
        return false;
    }

    std::string to_string() const;
    static IndecLabel parse(const std::string& text, const Field& field);
};

class KGModule {
    Field field_;
    Matrix x_, y_;

public:
    /// Validates the defining identities; the throw names the identity that
    /// fails, which module file loading reuses as its diagnostic.
    KGModule(Matrix x, Matrix y) : field_(x.field()), x_(std::move(x)), y_(std::move(y)) {
        field_.check_same(y_.field());
        const size_t d = x_.rows();
        if (x_.cols() != d || y_.rows() != d || y_.cols() != d)
            throw std::invalid_argument("module action matrices must be square of equal size");
        if (!(x_ * x_).is_zero()) throw std::invalid_argument("module invariant violated: X*X != 0");
        if (!(y_ * y_).is_zero()) throw std::invalid_argument("module invariant violated: Y*Y != 0");
        if (x_ * y_ != y_ * x_) throw std::invalid_argument("module invariant violated: X*Y != Y*X");
    }

    static KGModule zero(const Field& f) { return KGModule(Matrix(f, 0, 0), Matrix(f, 0, 0)); }
    static KGModule trivial(const Field& f, size_t d = 1) { return KGModule(Matrix(f, d, d), Matrix(f, d, d)); }

    const Field& field() const { return field_; }
    size_t dim() const { return x_.rows(); }
    const Matrix& X() const { return x_; }
    const Matrix& Y() const { return y_; }

    bool operator==(const KGModule& o) const { return x_ == o.x_ && y_ == o.y_; }
    bool operator!=(const KGModule& o) const { return !(*this == o); }

    /// Nilpotent generator action of the subgroup: 0, X, Y or X+Y+XY.
    Matrix nilpotent(Subgroup h) const {
        switch (h) {
            case Subgroup::Triv: return Matrix(field_, dim(), dim());
            case Subgroup::H1: return x_;
            case Subgroup::H2: return y_;
            case Subgroup::H3: return x_ + y_ + x_ * y_;
        }
        throw std::logic_error("bad subgroup");
    }

    /// Action matrix of a group element: 1, I+X, I+Y, (I+X)(I+Y).
    Matrix action(GroupElt g) const {
        const Matrix id = Matrix::identity(field_, dim());
        switch (g) {
            case GroupElt::One: return id;
            case GroupElt::Sigma: return id + x_;
            case GroupElt::Tau: return id + y_;
            case GroupElt::SigmaTau: return (id + x_) * (id + y_);
        }
        throw std::logic_error("bad group element");
    }
};

// ---------------------------------------------------------------------------
// Catalogue constructions, on the diagram bases: a's before b's (before c for
// P), ascending by index.
// ---------------------------------------------------------------------------

inline KGModule build_indecomposable(const IndecLabel& label, const Field& f) {
    using Kind = IndecLabel::Kind;
    switch (label.kind()) {
        case Kind::VPlus: {
            // basis a_0..a_n, b_1..b_n; X a_i = b_i (i>=1), Y a_i = b_{i+1} (i<n)
            const unsigned n = label.n();
            const size_t d = 2 * n + 1;
            Matrix X(f, d, d), Y(f, d, d);
            for (unsigned i = 1; i <= n; ++i) X.at(n + i, i) = 1;
            for (unsigned i = 0; i < n; ++i) Y.at(n + i + 1, i) = 1;
            return KGModule(std::move(X), std::move(Y));
        }
        case Kind::VMinus: {
            // basis a_1..a_n, b_0..b_n; X a_i = b_{i-1}, Y a_i = b_i
            const unsigned n = label.n();
            const size_t d = 2 * n + 1;
            Matrix X(f, d, d), Y(f, d, d);
            for (unsigned i = 1; i <= n; ++i) {
                X.at(n + i - 1, i - 1) = 1;
                Y.at(n + i, i - 1) = 1;
            }
            return KGModule(std::move(X), std::move(Y));
        }
        case Kind::Proj: {
            // basis a, b1, b2, c; X a = b1, Y a = b2, Y b1 = c, X b2 = c
            Matrix X(f, 4, 4), Y(f, 4, 4);
            X.at(1, 0) = 1;
            Y.at(2, 0) = 1;
            Y.at(3, 1) = 1;
            X.at(3, 2) = 1;
            return KGModule(std::move(X), std::move(Y));
        }
        case Kind::VEven: {
            const ThetaPoly& th = label.theta();
            if (th.is_infinity()) {
                // basis a_1..a_n, b_1..b_n; X a_i = b_i, Y a_i = b_{i+1} (i<n)
                const unsigned n = label.n();
                const size_t d = 2 * n;
                Matrix X(f, d, d), Y(f, d, d);
                for (unsigned i = 1; i <= n; ++i) X.at(n + i - 1, i - 1) = 1;
                for (unsigned i = 1; i < n; ++i) Y.at(n + i, i - 1) = 1;
                return KGModule(std::move(X), std::move(Y));
            }
            th.base().field().check_same(f);
            // basis a_1..a_n, b_1..b_n; Y a_i = b_i, X a_i = b_{i-1} (i>=2),
            // X a_1 = sum_{i=1..n} lambda_i b_i with theta = x^n + sum lambda_i x^{n-i}
            const unsigned n = th.effective_degree();
            const Poly theta = th.expand();
            const size_t d = 2 * n;
            Matrix X(f, d, d), Y(f, d, d);
            for (unsigned i = 1; i <= n; ++i) Y.at(n + i - 1, i - 1) = 1;
            for (unsigned i = 2; i <= n; ++i) X.at(n + i - 2, i - 1) = 1;
            for (unsigned i = 1; i <= n; ++i) X.at(n + i - 1, 0) = theta.coeff(n - i);
            return KGModule(std::move(X), std::move(Y));
        }
    }
    throw std::logic_error("bad label");
}

/// The three relative projectives of dimension 2: Q_sigma = V_{2,x},
/// Q_tau = V_{2,inf}, Q_sigmatau = V_{2,x+1}.
inline IndecLabel q_label(Subgroup h, const Field& f) {
    switch (h) {
        case Subgroup::H1: return IndecLabel::veven(ThetaPoly(Poly::x(f), 1));
        case Subgroup::H2: return IndecLabel::veven_inf(1);
        case Subgroup::H3: return IndecLabel::veven(ThetaPoly(Poly::x_plus(f, 1), 1));
        case Subgroup::Triv: return IndecLabel::proj();
    }
    throw std::logic_error("bad subgroup");
}

inline KGModule q_module(Subgroup h, const Field& f) { return build_indecomposable(q_label(h, f), f); }

inline KGModule direct_sum(const KGModule& a, const KGModule& b) {
    a.field().check_same(b.field());
    const size_t da = a.dim(), db = b.dim(), d = da + db;
    Matrix X(a.field(), d, d), Y(a.field(), d, d);
    for (size_t i = 0; i < da; ++i)
        for (size_t j = 0; j < da; ++j) {
            X.at(i, j) = a.X().at(i, j);
            Y.at(i, j) = a.Y().at(i, j);
        }
    for (size_t i = 0; i < db; ++i)
        for (size_t j = 0; j < db; ++j) {
            X.at(da + i, da + j) = b.X().at(i, j);
            Y.at(da + i, da + j) = b.Y().at(i, j);
        }
    return KGModule(std::move(X), std::move(Y));
}

/// Diagonal G-action: X_{ab} = X_a (x) I + I (x) X_b + X_a (x) X_b, from
/// (I+X_a) (x) (I+X_b).
inline KGModule tensor_product(const KGModule& a, const KGModule& b) {
    a.field().check_same(b.field());
    const Matrix Ia = Matrix::identity(a.field(), a.dim());
    const Matrix Ib = Matrix::identity(b.field(), b.dim());
    Matrix X = a.X().kron(Ib) + Ia.kron(b.X()) + a.X().kron(b.X());
    Matrix Y = a.Y().kron(Ib) + Ia.kron(b.Y()) + a.Y().kron(b.Y());
    return KGModule(std::move(X), std::move(Y));
}

/// (g phi)(x) = g phi(g^{-1} x); with involutions and the dual basis this is
/// transposition of the action matrices.
inline KGModule dual(const KGModule& m) {
    return KGModule(m.X().transpose(), m.Y().transpose());
}

/// Restriction to a subgroup, described by the single nilpotent generator
/// action. The H-module type is (rank t) free summands kH plus
/// (dim - 2 rank t) trivial summands.
inline Matrix restriction(const KGModule& m, Subgroup h) { return m.nilpotent(h); }

/// Induction from a maximal subgroup h: the block construction on
/// basis {e_i} u {g e_i} with g the fixed coset representative.
inline KGModule induce(const Matrix& t, Subgroup h) {
    if (h == Subgroup::Triv) throw std::invalid_argument("use induce_trivial for the trivial subgroup");
    if (t.rows() != t.cols()) throw std::invalid_argument("induce: nilpotent must be square");
    if (!(t * t).is_zero()) throw std::invalid_argument("induce: generator action is not square-zero");
    const Field& f = t.field();
    const size_t d = t.rows();
    const Matrix I = Matrix::identity(f, d);
    Matrix gen(f, 2 * d, 2 * d);   // generator of h acts blockwise by t
    Matrix swap(f, 2 * d, 2 * d);  // (coset rep) - 1 = [[I,I],[I,I]] in characteristic 2
    for (size_t i = 0; i < d; ++i)
        for (size_t j = 0; j < d; ++j) {
            gen.at(i, j) = t.at(i, j);
            gen.at(d + i, d + j) = t.at(i, j);
            swap.at(i, j) = I.at(i, j);
            swap.at(i, d + j) = I.at(i, j);
            swap.at(d + i, j) = I.at(i, j);
            swap.at(d + i, d + j) = I.at(i, j);
        }
    switch (h) {
        case Subgroup::H1: return KGModule(gen, swap);  // X = t (+) t, Y = swap
        case Subgroup::H2: return KGModule(swap, gen);
        case Subgroup::H3: {
            // generator sigma tau acts by gen, coset rep sigma by swap + 1:
            // (1+Y) = (1+X)(1+gen) so Y = X + gen + X gen
            Matrix Y = swap + gen + swap * gen;
            return KGModule(swap, std::move(Y));
        }
        default: throw std::logic_error("unreachable");
    }
}

/// Induction of a d-dimensional trivial module from the trivial subgroup:
/// the free module of rank d, on basis blocks (v, sigma v, tau v, sigma tau v).
inline KGModule induce_trivial(const Field& f, size_t d) {
    const size_t D = 4 * d;
    Matrix X(f, D, D), Y(f, D, D);
    auto put_perm = [&](Matrix& M, const std::array<size_t, 4>& img) {
        // M = P - I with P the block permutation sending block i to img[i]
        for (size_t blk = 0; blk < 4; ++blk)
            for (size_t i = 0; i < d; ++i) {
                M.at(img[blk] * d + i, blk * d + i) = f.add(M.at(img[blk] * d + i, blk * d + i), 1);
                M.at(blk * d + i, blk * d + i) = f.add(M.at(blk * d + i, blk * d + i), 1);
            }
    };
    put_perm(X, {1, 0, 3, 2});  // sigma swaps (1 <-> sigma), (tau <-> sigma tau)
    put_perm(Y, {2, 3, 0, 1});  // tau swaps (1 <-> tau), (sigma <-> sigma tau)
    return KGModule(std::move(X), std::move(Y));
}

// ---------------------------------------------------------------------------
// Label grammar. Canonical serialization: "V+3", "V-5", "V4,inf",
// "V4,theta:x^2+x+1^1", "P". The parser also accepts the colon forms
// "V4:inf" / "V4:theta:..." and the aliases Qs, Qt, Qst, k.
// ---------------------------------------------------------------------------

inline std::string IndecLabel::to_string() const {
    switch (kind_) {
        case Kind::VPlus: return "V+" + std::to_string(2 * n_ + 1);
        case Kind::VMinus: return "V-" + std::to_string(2 * n_ + 1);
        case Kind::Proj: return "P";
        case Kind::VEven:
            if (theta_->is_infinity()) return "V" + std::to_string(2 * n_) + ",inf";
            return "V" + std::to_string(2 * n_) + ",theta:" + theta_->to_string();
    }
    return "?";
}

inline IndecLabel IndecLabel::parse(const std::string& text, const Field& field) {
    if (text == "P") return proj();
    if (text == "k" || text == "K" || text == "1") return trivial();
    if (text == "Qs") return veven(ThetaPoly(Poly::x(field), 1));
    if (text == "Qt") return veven_inf(1);
    if (text == "Qst") return veven(ThetaPoly(Poly::x_plus(field, 1), 1));
    if (text.size() < 2 || text[0] != 'V')
        throw std::invalid_argument("cannot parse module label '" + text + "'");
    if (text[1] == '+' || text[1] == '-') {
        const unsigned long k = std::stoul(text.substr(2));
        if (k % 2 == 0 || k == 0)
            throw std::invalid_argument("label '" + text + "': odd-type dimension must be odd");
        const unsigned n = static_cast<unsigned>((k - 1) / 2);
        return text[1] == '+' ? vplus(n) : vminus(n);
    }
    // even: V<2n>,inf | V<2n>:inf | V<2n>,theta:<q>^<m> | V<2n>:theta:<q>^<m>
    size_t sep = text.find_first_of(",:");
    if (sep == std::string::npos)
        throw std::invalid_argument("label '" + text + "': even type needs ',inf' or ',theta:...'");
    const unsigned long dim2n = std::stoul(text.substr(1, sep - 1));
    if (dim2n % 2 != 0 || dim2n == 0)
        throw std::invalid_argument("label '" + text + "': even-type dimension must be positive even");
    const unsigned n = static_cast<unsigned>(dim2n / 2);
    std::string tail = text.substr(sep + 1);
    if (tail == "inf") return veven_inf(n);
    if (tail.rfind("theta:", 0) == 0) {
        std::string spec = tail.substr(6);
        size_t caret = spec.rfind('^');
        if (caret == std::string::npos)
            throw std::invalid_argument("label '" + text + "': theta needs a '^<m>' exponent suffix");
        const std::string expstr = spec.substr(caret + 1);
        unsigned long m = 0;
        try {
            size_t used = 0;
            m = std::stoul(expstr, &used);
            if (used != expstr.size()) throw std::invalid_argument("");
        } catch (...) {
            throw std::invalid_argument("label '" + text + "': exponent '" + expstr + "' is not an integer");
        }
        Poly q = Poly::parse(field, spec.substr(0, caret));
        ThetaPoly th(q.monic(), static_cast<unsigned>(m));
        if (th.effective_degree() != n)
            throw std::invalid_argument("label '" + text + "': theta degree " +
                                        std::to_string(th.effective_degree()) +
                                        " does not match dimension " + std::to_string(dim2n));
        return veven(std::move(th));
    }
    throw std::invalid_argument("cannot parse module label '" + text + "'");
}

} // namespace kfour
