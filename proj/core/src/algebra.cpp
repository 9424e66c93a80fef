#include "torfib/algebra.hpp"

#include <algorithm>
#include <numeric>

namespace torfib {

namespace {

bool divides(const Exponents& divisor, const Exponents& mono) {
    for (std::size_t v = 0; v < divisor.size(); ++v)
        if (divisor[v] > mono[v]) return false;
    return true;
}

int total_degree(const Exponents& e) { return std::accumulate(e.begin(), e.end(), 0); }

bool degree_lex_less(const Exponents& a, const Exponents& b) {
    int da = total_degree(a), db = total_degree(b);
    if (da != db) return da < db;
    return a < b;
}

std::string monomial_label(const std::vector<std::string>& vars, const Exponents& e) {
    std::string out;
    for (std::size_t v = 0; v < vars.size(); ++v) {
        if (e[v] == 0) continue;
        if (!out.empty()) out += "*";
        out += vars[v];
        if (e[v] > 1) out += "^" + std::to_string(e[v]);
    }
    return out.empty() ? "1" : out;
}

}  // namespace

int FiniteLocalAlgebra::MonomialInfo::var_basis_index(int v) const {
    for (std::size_t i = 0; i < basis_exponents.size(); ++i) {
        const Exponents& e = basis_exponents[i];
        if (total_degree(e) == 1 && e[v] == 1) return static_cast<int>(i);
    }
    return -1;  // variable annihilated by a degree-1 relation
}

FiniteLocalAlgebra::FiniteLocalAlgebra(std::uint32_t p, std::vector<std::string> labels,
                                       std::vector<FFMatrix> left_mult, std::vector<int> gens)
    : dim_(static_cast<int>(labels.size())),
      field_(p),
      labels_(std::move(labels)),
      left_mult_(std::move(left_mult)),
      gens_(std::move(gens)),
      maxideal_(dim_, p) {
    FFMatrix nonunit(dim_ - 1, dim_, p);
    for (int i = 1; i < dim_; ++i) nonunit.set(i - 1, i, 1);
    maxideal_ = Subspace::from_span(nonunit);
}

std::shared_ptr<const FiniteLocalAlgebra> FiniteLocalAlgebra::monomial_quotient(
    std::uint32_t p, const std::vector<std::string>& vars,
    const std::vector<Exponents>& relations) {
    const int nvars = static_cast<int>(vars.size());
    for (const Exponents& r : relations) {
        if (static_cast<int>(r.size()) != nvars)
            throw ArgumentError("relation arity does not match variable count");
        if (total_degree(r) == 0) throw ArgumentError("unit monomial cannot be a relation");
        for (int e : r)
            if (e < 0) throw ArgumentError("negative exponent in relation");
    }

    // Every variable needs a pure-power relation, otherwise the quotient has
    // infinite k-dimension.
    std::vector<int> cap(nvars, -1);
    for (const Exponents& r : relations) {
        int support = -1;
        bool pure = true;
        for (int v = 0; v < nvars; ++v) {
            if (r[v] == 0) continue;
            if (support >= 0) {
                pure = false;
                break;
            }
            support = v;
        }
        if (pure && support >= 0)
            cap[support] = cap[support] < 0 ? r[support] : std::min(cap[support], r[support]);
    }
    for (int v = 0; v < nvars; ++v)
        if (cap[v] < 0)
            throw InfiniteDimensionError("no power of variable '" + vars[v] +
                                         "' lies in the ideal");

    // Enumerate standard monomials inside the cap box.
    std::vector<Exponents> basis;
    Exponents cur(nvars, 0);
    while (true) {
        bool in_ideal = std::any_of(relations.begin(), relations.end(),
                                    [&](const Exponents& r) { return divides(r, cur); });
        if (!in_ideal) basis.push_back(cur);
        int v = 0;
        while (v < nvars) {
            if (++cur[v] < cap[v]) break;
            cur[v] = 0;
            ++v;
        }
        if (v == nvars) break;
    }
    std::sort(basis.begin(), basis.end(), degree_lex_less);

    std::map<Exponents, int> index_of;
    for (std::size_t i = 0; i < basis.size(); ++i) index_of[basis[i]] = static_cast<int>(i);

    const int d = static_cast<int>(basis.size());
    std::vector<FFMatrix> left(d, FFMatrix(d, d, p));
    for (int i = 0; i < d; ++i) {
        for (int j = 0; j < d; ++j) {
            Exponents prod(nvars);
            for (int v = 0; v < nvars; ++v) prod[v] = basis[i][v] + basis[j][v];
            bool in_ideal = std::any_of(relations.begin(), relations.end(),
                                        [&](const Exponents& r) { return divides(r, prod); });
            if (in_ideal) continue;
            left[i].set(index_of.at(prod), j, 1);
        }
    }

    std::vector<std::string> labels;
    labels.reserve(d);
    for (const Exponents& e : basis) labels.push_back(monomial_label(vars, e));

    std::vector<int> gens;
    for (int i = 0; i < d; ++i)
        if (total_degree(basis[i]) == 1) gens.push_back(i);

    auto alg = std::shared_ptr<FiniteLocalAlgebra>(
        new FiniteLocalAlgebra(p, std::move(labels), std::move(left), std::move(gens)));
    alg->mono_ = MonomialInfo{vars, relations, basis, std::move(index_of)};
    alg->validate();
    return alg;
}

std::shared_ptr<const FiniteLocalAlgebra> FiniteLocalAlgebra::from_operators(
    std::uint32_t p, std::vector<std::string> labels, std::vector<FFMatrix> left_mult,
    std::vector<int> generator_indices) {
    if (labels.empty() || labels.size() != left_mult.size())
        throw ArgumentError("operator table size does not match basis size");
    if (generator_indices.empty())
        for (std::size_t i = 1; i < labels.size(); ++i)
            generator_indices.push_back(static_cast<int>(i));
    auto alg = std::shared_ptr<FiniteLocalAlgebra>(new FiniteLocalAlgebra(
        p, std::move(labels), std::move(left_mult), std::move(generator_indices)));
    alg->validate();
    return alg;
}

std::shared_ptr<const FiniteLocalAlgebra> FiniteLocalAlgebra::residue_field(std::uint32_t p) {
    auto alg = std::shared_ptr<FiniteLocalAlgebra>(
        new FiniteLocalAlgebra(p, {"1"}, {FFMatrix::identity(1, p)}, {}));
    alg->validate();
    return alg;
}

std::vector<std::uint32_t> FiniteLocalAlgebra::unit_element() const {
    std::vector<std::uint32_t> e(dim_, 0);
    e[0] = 1;
    return e;
}

std::vector<std::uint32_t> FiniteLocalAlgebra::multiply(std::span<const std::uint32_t> u,
                                                        std::span<const std::uint32_t> v) const {
    return mult_operator(u).apply(v);
}

FFMatrix FiniteLocalAlgebra::mult_operator(std::span<const std::uint32_t> elem) const {
    if (static_cast<int>(elem.size()) != dim_)
        throw DimensionMismatchError("element length does not match algebra dimension");
    FFMatrix op(dim_, dim_, modulus());
    for (int i = 0; i < dim_; ++i) {
        if (elem[i] == 0) continue;
        op = op + left_mult_[i].scaled(elem[i]);
    }
    return op;
}

bool FiniteLocalAlgebra::is_nzd(std::span<const std::uint32_t> a) const {
    return rank_of(mult_operator(a)) == dim_;
}

std::uint64_t FiniteLocalAlgebra::content_hash() const {
    Digest64 d;
    absorb(d);
    return d.value();
}

void FiniteLocalAlgebra::absorb(Digest64& d) const {
    d.put_bytes("alg");
    d.put_u32(modulus());
    d.put_u32(static_cast<std::uint32_t>(dim_));
    for (const auto& l : labels_) {
        d.put_bytes(l);
        d.put_u8(0);
    }
    for (const FFMatrix& m : left_mult_) m.absorb(d);
}

void FiniteLocalAlgebra::validate() const {
    const std::uint32_t p = modulus();
    if (dim_ <= 0) throw ArgumentError("empty algebra");
    for (const FFMatrix& m : left_mult_)
        if (m.rows() != dim_ || m.cols() != dim_ || m.modulus() != p)
            throw ArgumentError("multiplication operator has wrong shape");

    if (left_mult_[0] != FFMatrix::identity(dim_, p))
        throw ArgumentError("basis element 0 does not act as the unit");

    // Commutativity: column j of L_i equals column i of L_j.
    for (int i = 0; i < dim_; ++i)
        for (int j = i + 1; j < dim_; ++j)
            for (int l = 0; l < dim_; ++l)
                if (left_mult_[i].at(l, j) != left_mult_[j].at(l, i))
                    throw ArgumentError("structure constants are not commutative");

    // Associativity together with bilinearity: L_i L_j = sum_l c[i][j][l] L_l.
    for (int i = 1; i < dim_; ++i) {
        for (int j = i; j < dim_; ++j) {
            FFMatrix lhs = left_mult_[i] * left_mult_[j];
            FFMatrix rhs(dim_, dim_, p);
            for (int l = 0; l < dim_; ++l) {
                std::uint32_t c = structure_constant(i, j, l);
                if (c != 0) rhs = rhs + left_mult_[l].scaled(c);
            }
            if (lhs != rhs) throw ArgumentError("structure constants are not associative");
        }
    }

    // The span of the non-unit basis elements must be an ideal: products with
    // anything have no unit component.
    for (int i = 1; i < dim_; ++i)
        for (int j = 0; j < dim_; ++j)
            if (left_mult_[i].at(0, j) != 0)
                throw ArgumentError("maximal ideal is not closed under multiplication");

    // Nilpotence of each maximal-ideal basis element.
    for (int i = 1; i < dim_; ++i) {
        FFMatrix pw = left_mult_[i];
        int steps = 1;
        while (!pw.is_zero() && steps <= dim_ + 1) {
            pw = pw * left_mult_[i];
            ++steps;
        }
        if (!pw.is_zero())
            throw ArgumentError("maximal-ideal basis element " + labels_[i] +
                                " is not nilpotent; the algebra is not local");
    }

    for (int g : gens_)
        if (g <= 0 || g >= dim_) throw ArgumentError("generator index out of range");
}

AlgebraSurjection::AlgebraSurjection(AlgebraPtr source, AlgebraPtr target, FFMatrix matrix)
    : source_(std::move(source)), target_(std::move(target)), matrix_(std::move(matrix)) {
    const int ds = source_->dim();
    const int dt = target_->dim();
    if (matrix_.rows() != dt || matrix_.cols() != ds ||
        matrix_.modulus() != source_->modulus() || source_->modulus() != target_->modulus())
        throw DimensionMismatchError("surjection matrix shape/modulus mismatch");

    if (matrix_.apply(source_->unit_element()) != target_->unit_element())
        throw ArgumentError("algebra map is not unital");
    for (int i = 0; i < ds; ++i) {
        for (int j = i; j < ds; ++j) {
            auto lhs = matrix_.apply(source_->left_mult(i).column(j));
            auto rhs = target_->multiply(matrix_.column(i), matrix_.column(j));
            if (lhs != rhs) throw ArgumentError("algebra map is not multiplicative");
        }
    }
    if (rank_of(matrix_) != dt) throw ArgumentError("algebra map is not surjective");
}

std::vector<std::uint32_t> FiberProductData::lift_from_S(
    std::span<const std::uint32_t> s) const {
    std::vector<std::uint32_t> v(R->dim(), 0);
    for (std::size_t a = 0; a < embed_S.size(); ++a) v[embed_S[a]] = s[a];
    return v;
}

std::vector<std::uint32_t> FiberProductData::lift_from_T(
    std::span<const std::uint32_t> t) const {
    std::vector<std::uint32_t> v(R->dim(), 0);
    for (std::size_t b = 0; b < embed_T.size(); ++b) v[embed_T[b]] = t[b];
    return v;
}

FiberProductData fiber_product(const AlgebraPtr& S, const AlgebraPtr& T) {
    if (S->modulus() != T->modulus())
        throw ArgumentError("fiber product factors have different characteristic");
    if (S->is_field() || T->is_field())
        throw SettingViolationError("fiber product requires S != k != T");

    const std::uint32_t p = S->modulus();
    const int ds = S->dim(), dt = T->dim();
    const int dr = 1 + (ds - 1) + (dt - 1);

    // Basis index maps: S's maximal-ideal basis sits at 1..ds-1, T's at
    // ds..dr-1.
    std::vector<int> embed_S(ds), embed_T(dt);
    embed_S[0] = 0;
    embed_T[0] = 0;
    for (int a = 1; a < ds; ++a) embed_S[a] = a;
    for (int b = 1; b < dt; ++b) embed_T[b] = ds - 1 + b;

    std::vector<std::string> labels(dr);
    labels[0] = "1";
    for (int a = 1; a < ds; ++a) labels[embed_S[a]] = S->basis_labels()[a];
    for (int b = 1; b < dt; ++b) labels[embed_T[b]] = T->basis_labels()[b];

    std::vector<FFMatrix> left(dr, FFMatrix(dr, dr, p));
    left[0] = FFMatrix::identity(dr, p);
    auto fill_factor = [&](const AlgebraPtr& F, const std::vector<int>& embed) {
        for (int a = 1; a < F->dim(); ++a) {
            FFMatrix& L = left[embed[a]];
            // times the unit
            L.set(embed[a], 0, 1);
            // times the same factor's maximal-ideal basis; cross products are 0
            for (int b = 1; b < F->dim(); ++b) {
                auto prod = F->left_mult(a).column(b);  // no unit component: m is an ideal
                for (int l = 1; l < F->dim(); ++l)
                    if (prod[l] != 0) L.set(embed[l], embed[b], prod[l]);
            }
        }
    };
    fill_factor(S, embed_S);
    fill_factor(T, embed_T);

    std::vector<int> gens;
    for (int g : S->generator_indices()) gens.push_back(embed_S[g]);
    for (int g : T->generator_indices()) gens.push_back(embed_T[g]);

    AlgebraPtr R = FiniteLocalAlgebra::from_operators(p, std::move(labels), std::move(left),
                                                      std::move(gens));

    FFMatrix mat_S(ds, dr, p), mat_T(dt, dr, p);
    for (int a = 0; a < ds; ++a) mat_S.set(a, embed_S[a], 1);
    for (int b = 0; b < dt; ++b) mat_T.set(b, embed_T[b], 1);
    AlgebraSurjection eta_S(R, S, mat_S);
    AlgebraSurjection eta_T(R, T, mat_T);

    FFMatrix ibasis(ds - 1, dr, p), jbasis(dt - 1, dr, p);
    for (int a = 1; a < ds; ++a) ibasis.set(a - 1, embed_S[a], 1);
    for (int b = 1; b < dt; ++b) jbasis.set(b - 1, embed_T[b], 1);
    Subspace ideal_I = Subspace::from_span(ibasis);
    Subspace ideal_J = Subspace::from_span(jbasis);

    // Cross-check the defining identities of the construction.
    if (Subspace::from_span(kernel_basis(mat_T)) != ideal_I ||
        Subspace::from_span(kernel_basis(mat_S)) != ideal_J)
        throw InternalError("fiber product: ideals do not match projection kernels");
    const std::vector<std::uint32_t> zero(dr, 0);
    for (int a = 1; a < ds; ++a)
        for (int b = 1; b < dt; ++b)
            if (R->left_mult(embed_S[a]).column(embed_T[b]) != zero)
                throw InternalError("fiber product: I*J != 0");
    MeetJoin mj = subspace_meet_join(ideal_I, ideal_J);
    if (mj.intersection.dim() != 0 || !(mj.sum == R->maximal_ideal()))
        throw InternalError("fiber product: I + J does not decompose the maximal ideal");
    // Commuting square: both residue projections agree on R (unit coordinate
    // in the adapted bases).
    FFMatrix pi_s(1, ds, p), pi_t(1, dt, p);
    pi_s.set(0, 0, 1);
    pi_t.set(0, 0, 1);
    if (pi_s * mat_S != pi_t * mat_T)
        throw InternalError("fiber product: projection square does not commute");

    return FiberProductData{R,
                            S,
                            T,
                            std::move(eta_S),
                            std::move(eta_T),
                            std::move(ideal_I),
                            std::move(ideal_J),
                            std::move(embed_S),
                            std::move(embed_T)};
}

}  // namespace torfib
