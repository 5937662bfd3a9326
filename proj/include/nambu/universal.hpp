#pragma once

#include "nambu/identity.hpp"
#include "nambu/linalg.hpp"

#include <map>
#include <memory>
#include <string>
#include <vector>

namespace nambu {

/// Finite-dimensional parity-graded space Pi A with an optional unital
/// supercommutative product, built from a (truncated) signature. The basis
/// is the canonical monomial basis; parities are the Pi-shifted ones
/// (pbar = p + 1).
class SuperSpace {
public:
    /// A = O(m,n) at the signature's truncation; Lambda(n) is the m = 0,
    /// T = 0 case and a truncated polynomial algebra the n = 0 case.
    static std::shared_ptr<const SuperSpace> from_signature(const Signature& sig);
    static std::shared_ptr<const SuperSpace> grassmann(int n);

    std::size_t dim() const { return basis_.size(); }
    const Signature& signature() const { return sig_; }
    const std::vector<Monomial>& basis() const { return basis_; }
    int pbar(std::size_t i) const { return pbar_[i]; }
    int underlying_parity(std::size_t i) const { return (pbar_[i] + 1) & 1; }
    int xdeg(std::size_t i) const { return basis_[i].xdeg(); }
    std::size_t unit_index() const { return unit_; }
    std::string label(std::size_t i) const;

    /// True when b*c is degree-exact at this truncation, i.e. the product
    /// of the two basis monomials does not overflow T.
    bool product_exact(std::size_t b, std::size_t c) const {
        return xdeg(b) + xdeg(c) <= sig_.truncation;
    }

    QVector vec_of(const Element& e) const;
    Element elem_of(const QVector& v) const;
    QVector mul(const QVector& a, const QVector& b) const;
    const QVector& basis_product(std::size_t i, std::size_t j) const { return product_[i][j]; }

    /// Pi-parity of a homogeneous vector; -1 when zero or mixed.
    int vec_pbar(const QVector& v) const;

private:
    explicit SuperSpace(const Signature& sig);

    Signature sig_;
    std::vector<Monomial> basis_;
    std::map<Monomial, std::size_t, MonomialLess> index_;
    std::vector<int> pbar_;
    std::size_t unit_ = 0;
    std::vector<std::vector<QVector>> product_;
};

using SpacePtr = std::shared_ptr<const SuperSpace>;

/// Supersymmetric multilinear map in W_{arity-1}(Pi A), stored as a sparse
/// table on canonical non-decreasing basis multi-indices (entries with a
/// repeated Pi-odd index are identically zero and never stored). Lookups
/// for arbitrary argument orders apply the Koszul sign computed by
/// inversion counting over the Pi-odd positions.
class MultiMap {
public:
    MultiMap(SpacePtr space, int arity, int pbar);

    /// Element of A viewed as the degree -1 component.
    static MultiMap element(SpacePtr space, const QVector& v);
    static MultiMap element(SpacePtr space, const Element& e);
    /// The unit of A in degree -1.
    static MultiMap unit(SpacePtr space);

    const SpacePtr& space() const { return space_; }
    int arity() const { return arity_; }
    int degree() const { return arity_ - 1; }
    int pbar() const { return pbar_; }
    int underlying_parity() const { return (pbar_ + 1) & 1; }
    bool is_zero() const;

    const std::map<std::vector<int>, QVector>& table() const { return table_; }

    /// Sets the entry at a canonical key.
    void set(const std::vector<int>& key, QVector value);

    /// Evaluation on basis indices in any order (sign-adjusted); returns
    /// the zero vector for a repeated Pi-odd argument.
    QVector eval_basis(const std::vector<int>& idx) const;
    /// Multilinear evaluation on coordinate vectors.
    QVector eval(const std::vector<QVector>& args) const;

    MultiMap operator+(const MultiMap& o) const;
    MultiMap operator-(const MultiMap& o) const;
    MultiMap scaled(const Rational& c) const;

    friend bool operator==(const MultiMap& a, const MultiMap& b);

private:
    SpacePtr space_;
    int arity_;
    int pbar_;
    std::map<std::vector<int>, QVector> table_;
};

/// Number-of-interchanges sign for splitting a sorted argument list into
/// ordered blocks: (-1)^{#cross-block inversions among Pi-odd arguments}.
/// `positions` is the concatenated position sequence, `pbars` the Pi-parity
/// of the argument at each original position.
int shuffle_sign(const std::vector<int>& positions, const std::vector<int>& pbars);

/// All canonical non-decreasing multi-indices of the given length over the
/// space's basis, with Pi-odd repeats excluded.
std::vector<std::vector<int>> canonical_keys(const SuperSpace& space, int length);

/// Composition-shuffle product: for X of degree p and Y of degree q,
/// (X box Y)(a_0..a_{p+q}) = sum over shuffles of X(Y(a_i0..a_iq), rest)
/// with the Koszul sign. Degree additive; requires p + q >= -1.
MultiMap box(const MultiMap& x, const MultiMap& y);

/// [X,Y] = X box Y - (-1)^{pbar(X) pbar(Y)} Y box X.
MultiMap w_bracket(const MultiMap& x, const MultiMap& y);

/// Concatenation (wedge-like) product on Pi W: shuffle sum of
/// X(a_i1..a_ih) Y(a_..) with the extra (-1)^{p(Y)(pbar(a_i1)+..)} sign.
MultiMap concat(const MultiMap& x, const MultiMap& y);

/// Checks X(bc) = X(b)c + (-1)^{p(b)p(c)} X(c)b - X(1)bc over all basis
/// pairs, for a degree-0 map.
IdentityReport is_generalized_derivation(const MultiMap& x);

/// Multi-argument generalized Leibniz membership test for the degree-k
/// prolongation component. Basis pairs (b,c) whose product overflows the
/// space's truncation are skipped: the finite table cannot represent them.
IdentityReport gw_membership(const MultiMap& x);

/// Residuals of the two compatibility laws
///   X box (Y ^ Z) = (X box Y) ^ Z + (-1)^{pbar(X)p(Y)} Y ^ (X box Z)
///                   - (X box 1) ^ Y ^ Z
///   (X ^ Y) box Z = X ^ (Y box Z) + (-1)^{p(Y)pbar(Z)} (X box Z) ^ Y.
IdentityReport verify_uogp_laws(const MultiMap& x, const MultiMap& y, const MultiMap& z);

/// Skew-symmetry of an n-ary bracket on the basis of a completely odd
/// space: adjacent transpositions flip the sign and repeated arguments
/// vanish.
IdentityReport check_bracket_skew_on_basis(const SpacePtr& space, const NaryBracket& bracket,
                                           int arity);

/// Tabulates a skew-symmetric n-ary bracket on the monomial basis as the
/// degree n-1 multimap. Throws when the bracket fails skew-symmetry on the
/// basis.
MultiMap mu_from_nambu(const SpacePtr& space, const NaryBracket& bracket, int arity);

/// Basis of the degree-k prolongation component of the given Pi-parity,
/// solved exactly from the generalized Leibniz constraints. Degree -1
/// returns the basis elements of matching parity.
std::vector<MultiMap> gw_as_basis(const SpacePtr& space, int degree, int pbar);

}  // namespace nambu
