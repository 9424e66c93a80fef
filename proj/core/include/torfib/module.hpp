#pragma once

#include "torfib/algebra.hpp"

namespace torfib {

/// A finitely generated module over a FiniteLocalAlgebra, presented as a
/// k-space of dimension n with one n x n action matrix per algebra basis
/// element.  The zero module (n = 0) is a first-class value.
class FDModule {
  public:
    FDModule(AlgebraPtr algebra, std::vector<FFMatrix> action);

    static FDModule zero(AlgebraPtr algebra);
    static FDModule free_module(AlgebraPtr algebra, int rank);
    static FDModule regular(AlgebraPtr algebra) { return free_module(algebra, 1); }
    /// The residue field k with a acting through its image mod m.
    static FDModule residue(AlgebraPtr algebra);
    /// The maximal ideal as a submodule of the regular module.
    static FDModule maximal_ideal(AlgebraPtr algebra);

    const AlgebraPtr& algebra() const { return algebra_; }
    int dim() const { return dim_; }
    bool is_zero() const { return dim_ == 0; }
    const FFMatrix& action(int i) const { return action_[i]; }
    /// Action of a general algebra element (coefficient vector).
    FFMatrix act_elem(std::span<const std::uint32_t> elem) const;

    /// Subspace m*M of the underlying k-space.
    Subspace radical_subspace() const;

    /// Full invariant check: unit acts as identity and the action matrices
    /// realize the structure constants (hence commute pairwise).
    void validate() const;

    std::uint64_t content_hash() const;
    void absorb(Digest64& d) const;

  private:
    AlgebraPtr algebra_;
    int dim_;
    std::vector<FFMatrix> action_;
};

/// A-linear map between modules over the same algebra.
struct ModuleMap {
    FDModule source;
    FDModule target;
    FFMatrix matrix;  // target.dim() x source.dim()

    ModuleMap(FDModule src, FDModule tgt, FFMatrix mat);

    std::vector<std::uint32_t> apply(std::span<const std::uint32_t> v) const {
        return matrix.apply(v);
    }
    /// Checks the intertwining identity on the algebra's generator set.
    void validate() const;
};

/// Matrix with entries in the algebra; the shape of presentations and
/// resolution differentials (maps A^cols -> A^rows).
class AlgebraMatrix {
  public:
    AlgebraMatrix(AlgebraPtr algebra, int rows, int cols);

    int rows() const { return rows_; }
    int cols() const { return cols_; }
    const AlgebraPtr& algebra() const { return algebra_; }

    const std::vector<std::uint32_t>& entry(int i, int j) const {
        return entries_[static_cast<std::size_t>(i) * cols_ + j];
    }
    void set_entry(int i, int j, std::vector<std::uint32_t> e);

    /// k-linear expansion as a map k^(cols*d) -> k^(rows*d): block (i,j) is
    /// the multiplication operator of entry (i,j).
    FFMatrix expand() const;
    /// Expansion through a module's action: block (i,j) is N.act_elem(entry),
    /// a map k^(cols*nN) -> k^(rows*nN).  This is the matrix of d (x) N.
    FFMatrix expand_action(const FDModule& N) const;

    /// True when every entry lies in the maximal ideal (no unit component).
    bool entries_in_radical() const;

    AlgebraMatrix operator*(const AlgebraMatrix& o) const;
    bool is_zero() const;

    void absorb(Digest64& d) const;

  private:
    AlgebraPtr algebra_;
    int rows_;
    int cols_;
    std::vector<std::vector<std::uint32_t>> entries_;
};

// --- Construction toolkit ---------------------------------------------------

/// coker(P): quotient of A^rows by the column span of the expansion, with the
/// induced action.
FDModule module_from_presentation(const AlgebraMatrix& P);

/// The same k-space with a in the source acting as phi(a); ker(phi)
/// annihilates the result.
FDModule restrict_scalars(const AlgebraSurjection& phi, const FDModule& Y);

/// The submodule spanned by an action-invariant subspace, in the subspace's
/// canonical coordinates.  Throws if the subspace is not invariant.
FDModule submodule(const FDModule& M, const Subspace& W);

/// Quotient by an action-invariant subspace.
FDModule quotient_module(const FDModule& M, const Subspace& W);

FDModule direct_sum(const FDModule& M, const FDModule& N);

/// M (x)_A N with the induced action; relations are generated over the
/// algebra's generator set.
FDModule tensor(const FDModule& M, const FDModule& N);

struct MinimalCover {
    int count = 0;                                     // b = dim M/mM
    std::vector<std::vector<std::uint32_t>> generators;  // chosen lifts in M
    FFMatrix matrix;                                   // k-matrix of A^b -> M
    ModuleMap as_map(const FDModule& M) const;
};

/// Deterministic minimal generating set: the standard-basis lifts of the
/// non-pivot coordinates of m*M.
MinimalCover minimal_generators(const FDModule& M);

bool is_free(const FDModule& M);

struct HomSpace {
    int dim = 0;
    std::vector<ModuleMap> basis;
    FDModule module_structure;
    /// Internal coordinates: a map is a tuple in N^b annihilated by M's
    /// relations, where b is the size of M's minimal cover.
    MinimalCover source_cover;
    Subspace solutions;  // subspace of k^(b * dim N)

    HomSpace(FDModule zero_module, Subspace empty)
        : module_structure(std::move(zero_module)), solutions(std::move(empty)) {}
};

/// All A-linear maps M -> N, via a presentation of M: an element is a tuple
/// in N^b annihilated by the relations of M.
HomSpace hom_space(const FDModule& M, const FDModule& N);

struct BidualityResult {
    ModuleMap delta;  // M -> M**
    bool injective = false;
};

/// The canonical map into the double dual; `injective` is the torsionless
/// predicate.
BidualityResult biduality(const FDModule& M);

enum class IsoVerdict { isomorphic, not_isomorphic, undetermined };

/// Semi-decision by random sampling from Hom(M, N); deterministic given the
/// inputs and `trials` (the sampling stream is keyed by content hashes).
IsoVerdict iso_probably(const FDModule& M, const FDModule& N, int trials);

const char* to_string(IsoVerdict v);

}  // namespace torfib
