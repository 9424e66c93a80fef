#include "doctest.h"
#include "torfib/matrix.hpp"
#include "torfib/subspace.hpp"

using namespace torfib;

namespace {

FFMatrix random_matrix(Rng& rng, int rows, int cols, std::uint32_t p) {
    FFMatrix m(rows, cols, p);
    for (int i = 0; i < rows; ++i)
        for (int j = 0; j < cols; ++j) m.set(i, j, static_cast<std::uint32_t>(rng.below(p)));
    return m;
}

}  // namespace

TEST_CASE("prime field arithmetic") {
    PrimeField f(65521);  // largest 16-bit prime: exercises the Barrett range
    for (std::uint32_t a : {0u, 1u, 2u, 65520u, 32768u}) {
        for (std::uint32_t b : {0u, 1u, 65520u, 12345u}) {
            CHECK(f.mul(a, b) == static_cast<std::uint32_t>(
                                     (std::uint64_t(a) * b) % 65521));
            CHECK(f.add(a, b) == (a + b) % 65521);
        }
    }
    for (std::uint32_t a = 1; a < 200; ++a) CHECK(f.mul(a, f.inv(a)) == 1);

    CHECK_THROWS_AS(PrimeField(6), ArgumentError);
    CHECK_THROWS_AS(PrimeField(1 << 16), ArgumentError);
    CHECK_THROWS_AS((FFScalar(1, 5) + FFScalar(1, 7)), DimensionMismatchError);
    CHECK(FFScalar(3, 5) * FFScalar(4, 5) == FFScalar(2, 5));
}

TEST_CASE("rref on the empty matrix") {
    FFMatrix m(0, 0, 5);
    RrefResult rr = rref(m);
    CHECK(rr.rank == 0);
    CHECK(kernel_basis(m).rows() == 0);
}

TEST_CASE("rref of the identity") {
    FFMatrix m = FFMatrix::identity(3, 5);
    RrefResult rr = rref(m);
    CHECK(rr.rank == 3);
    CHECK(rr.reduced == m);
    CHECK(kernel_basis(m).rows() == 0);
}

TEST_CASE("rank-1 matrix kernel over GF(5)") {
    FFMatrix m = FFMatrix::from_rows({{1, 2}, {2, 4}}, 5);
    RrefResult rr = rref(m);
    CHECK(rr.rank == 1);
    FFMatrix ker = kernel_basis(m);
    REQUIRE(ker.rows() == 1);
    // Kernel is spanned by (3,1): 1*3 + 2*1 = 5 = 0 mod 5.
    std::vector<std::uint32_t> v{3, 1};
    CHECK(Subspace::from_span(ker).contains(v));
    // And the kernel really is annihilated.
    auto mv = m.apply(ker.row(0));
    CHECK(std::all_of(mv.begin(), mv.end(), [](std::uint32_t x) { return x == 0; }));
}

TEST_CASE("rank equals transpose rank and rref is idempotent") {
    Rng rng(2024, 0);
    for (int trial = 0; trial < 40; ++trial) {
        int r = static_cast<int>(rng.below(6));
        int c = static_cast<int>(rng.below(6));
        std::uint32_t p = trial % 2 ? 5 : 7;
        FFMatrix m = random_matrix(rng, r, c, p);
        RrefResult rr = rref(m);
        CHECK(rr.rank == rank_of(m.transpose()));
        CHECK(rref(rr.reduced).reduced == rr.reduced);
        CHECK(rr.rank + kernel_basis(m).rows() == c);
    }
}

TEST_CASE("solve succeeds exactly when ranks match") {
    Rng rng(7, 1);
    for (int trial = 0; trial < 60; ++trial) {
        int r = 1 + static_cast<int>(rng.below(5));
        int c = 1 + static_cast<int>(rng.below(5));
        FFMatrix m = random_matrix(rng, r, c, 5);
        std::vector<std::uint32_t> b(r);
        for (auto& x : b) x = static_cast<std::uint32_t>(rng.below(5));
        FFMatrix aug(r, c + 1, 5);
        aug.paste(0, 0, m);
        for (int i = 0; i < r; ++i) aug.set(i, c, b[i]);
        auto x = solve(m, b);
        CHECK(x.has_value() == (rank_of(m) == rank_of(aug)));
        if (x) {
            auto mx = m.apply(*x);
            CHECK(std::equal(mx.begin(), mx.end(), b.begin()));
        }
    }
}

TEST_CASE("meet and join: idempotence and coordinate subspaces") {
    FFMatrix u = FFMatrix::from_rows({{1, 0, 0}}, 5);
    FFMatrix v = FFMatrix::from_rows({{0, 1, 0}, {0, 0, 1}}, 5);
    Subspace U = Subspace::from_span(u);
    Subspace V = Subspace::from_span(v);

    MeetJoin self = subspace_meet_join(U, U);
    CHECK(self.intersection == U);
    CHECK(self.sum == U);

    MeetJoin mj = subspace_meet_join(U, V);
    CHECK(mj.intersection.dim() == 0);
    CHECK(mj.sum.dim() == 3);

    CHECK_THROWS_AS(subspace_meet(U, Subspace(4, 5)), DimensionMismatchError);
}

TEST_CASE("modular law on random subspaces of GF(5)^3") {
    Rng rng(42, 9);
    for (int trial = 0; trial < 50; ++trial) {
        Subspace U = Subspace::from_span(random_matrix(rng, 2, 3, 5));
        Subspace V = Subspace::from_span(random_matrix(rng, 2, 3, 5));
        MeetJoin mj = subspace_meet_join(U, V);
        CHECK(mj.intersection.dim() + mj.sum.dim() == U.dim() + V.dim());
        CHECK(mj.sum.contains(U));
        CHECK(mj.sum.contains(V));
        CHECK(U.contains(mj.intersection));
        CHECK(V.contains(mj.intersection));
    }
}

TEST_CASE("quotient map projects along the subspace") {
    Subspace W = Subspace::from_span(FFMatrix::from_rows({{1, 2, 0}}, 5));
    QuotientMap q(W);
    CHECK(q.target_dim() == 2);
    // Vectors congruent modulo W map to the same image.
    std::vector<std::uint32_t> a{3, 1, 4};
    std::vector<std::uint32_t> b{4, 3, 4};  // a + (1,2,0)
    CHECK(q.apply(a) == q.apply(b));
    // The canonical lift is a section.
    auto img = q.apply(a);
    CHECK(q.apply(q.lift(img)) == img);
}

TEST_CASE("rng streams are deterministic and distinct") {
    Rng a(42, 0), b(42, 0), c(42, 1);
    CHECK(a.next_u64() == b.next_u64());
    Rng a2(42, 0);
    CHECK(a2.next_u64() != c.next_u64());
    Digest64 d;
    d.put_u64(0xdeadbeefULL);
    CHECK(d.hex().size() == 16);
}
