#pragma once

#include <map>
#include <memory>
#include <optional>
#include <string>

#include "torfib/subspace.hpp"

namespace torfib {

/// Monomial in a fixed variable list, as an exponent vector.
using Exponents = std::vector<int>;

/// A commutative local k-algebra of finite k-dimension, given by a basis and
/// structure constants.  The basis is always adapted: index 0 is the unit and
/// the remaining basis vectors span the maximal ideal.  Instances are
/// immutable and shared by pointer.
class FiniteLocalAlgebra {
  public:
    /// k[vars]/(monomial ideal).  The ideal must contain a power of every
    /// variable; the basis consists of the standard monomials ordered by
    /// total degree, then lexicographically.
    static std::shared_ptr<const FiniteLocalAlgebra> monomial_quotient(
        std::uint32_t p, const std::vector<std::string>& vars,
        const std::vector<Exponents>& relations);

    /// Raw construction from multiplication operators (one d x d matrix per
    /// basis element).  All local-algebra invariants are validated.
    static std::shared_ptr<const FiniteLocalAlgebra> from_operators(
        std::uint32_t p, std::vector<std::string> labels, std::vector<FFMatrix> left_mult,
        std::vector<int> generator_indices);

    /// The coefficient field itself, as the one-dimensional algebra.
    static std::shared_ptr<const FiniteLocalAlgebra> residue_field(std::uint32_t p);

    int dim() const { return dim_; }
    std::uint32_t modulus() const { return field_.modulus(); }
    const PrimeField& field() const { return field_; }
    const std::vector<std::string>& basis_labels() const { return labels_; }
    int unit_index() const { return 0; }

    /// Multiplication operator of basis element i: column j holds the
    /// coordinates of a_i * a_j.
    const FFMatrix& left_mult(int i) const { return left_mult_[i]; }
    /// Structure constant: coefficient of a_l in a_i * a_j.
    std::uint32_t structure_constant(int i, int j, int l) const {
        return left_mult_[i].at(l, j);
    }

    /// Indices of basis elements generating this as a unital k-algebra;
    /// used to shrink intertwiner systems.
    const std::vector<int>& generator_indices() const { return gens_; }

    const Subspace& maximal_ideal() const { return maxideal_; }
    int maxideal_dim() const { return dim_ - 1; }
    bool is_field() const { return dim_ == 1; }
    /// Artinian local rings have Krull dimension zero, so none of the
    /// algebras representable here is a discrete valuation ring.  Theorem
    /// predicates quote this flag rather than re-deriving it.
    bool is_dvr() const { return false; }
    /// Every element of the maximal ideal is nilpotent, hence a zerodivisor:
    /// the depth of a constructed algebra with m != 0 is always zero.
    int depth() const { return 0; }

    std::vector<std::uint32_t> unit_element() const;
    std::vector<std::uint32_t> multiply(std::span<const std::uint32_t> u,
                                        std::span<const std::uint32_t> v) const;
    /// Sum of elem_i * left_mult(i): the action of `elem` on the algebra.
    FFMatrix mult_operator(std::span<const std::uint32_t> elem) const;

    /// True iff multiplication by `a` is injective.  Over an artinian local
    /// algebra this is equivalent to `a` being a unit.
    bool is_nzd(std::span<const std::uint32_t> a) const;
    bool is_unit(std::span<const std::uint32_t> a) const { return is_nzd(a); }

    /// Present when constructed from a monomial quotient.
    struct MonomialInfo {
        std::vector<std::string> vars;
        std::vector<Exponents> relations;
        std::vector<Exponents> basis_exponents;  // one per basis index
        std::map<Exponents, int> index_of;       // standard monomial -> basis index
        /// Basis index of the degree-1 monomial of variable v.
        int var_basis_index(int v) const;
    };
    const std::optional<MonomialInfo>& monomial_info() const { return mono_; }

    std::uint64_t content_hash() const;
    void absorb(Digest64& d) const;

    /// Full invariant check: commutativity, associativity, unit action,
    /// codimension-one nilpotent maximal ideal closed under multiplication.
    void validate() const;

  private:
    FiniteLocalAlgebra(std::uint32_t p, std::vector<std::string> labels,
                       std::vector<FFMatrix> left_mult, std::vector<int> gens);

    int dim_;
    PrimeField field_;
    std::vector<std::string> labels_;
    std::vector<FFMatrix> left_mult_;
    std::vector<int> gens_;
    Subspace maxideal_;
    std::optional<MonomialInfo> mono_;
};

using AlgebraPtr = std::shared_ptr<const FiniteLocalAlgebra>;

/// A surjective algebra map, stored as its k-linear matrix
/// (dim target x dim source).
class AlgebraSurjection {
  public:
    AlgebraSurjection(AlgebraPtr source, AlgebraPtr target, FFMatrix matrix);

    const AlgebraPtr& source() const { return source_; }
    const AlgebraPtr& target() const { return target_; }
    const FFMatrix& matrix() const { return matrix_; }

    std::vector<std::uint32_t> apply(std::span<const std::uint32_t> a) const {
        return matrix_.apply(a);
    }

  private:
    AlgebraPtr source_;
    AlgebraPtr target_;
    FFMatrix matrix_;
};

/// R = S x_k T with its projections and the kernels I = ker(eta_T),
/// J = ker(eta_S).  R's basis is {1} followed by the embedded maximal-ideal
/// bases of S and then T.
struct FiberProductData {
    AlgebraPtr R;
    AlgebraPtr S;
    AlgebraPtr T;
    AlgebraSurjection eta_S;  // R ->> S
    AlgebraSurjection eta_T;  // R ->> T
    Subspace ideal_I;         // m x 0, annihilated by eta_T
    Subspace ideal_J;         // 0 x n, annihilated by eta_S
    std::vector<int> embed_S;  // S basis index -> R basis index (k-linear section)
    std::vector<int> embed_T;

    /// Embed an S-element (resp. T-element) along the canonical section.
    std::vector<std::uint32_t> lift_from_S(std::span<const std::uint32_t> s) const;
    std::vector<std::uint32_t> lift_from_T(std::span<const std::uint32_t> t) const;
};

/// Builds the fiber product; both factors must share p and satisfy S != k.
FiberProductData fiber_product(const AlgebraPtr& S, const AlgebraPtr& T);

}  // namespace torfib
