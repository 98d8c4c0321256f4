#include <doctest.h>

#include "field.hpp"

using namespace karcat;

namespace {
Matrix mk(int p, const std::vector<std::vector<int>>& rows, int cols_hint = -1) {
    return Matrix::from_rows(PrimeField(p), rows, cols_hint);
}
}  // namespace

TEST_CASE("prime field validation and arithmetic") {
    CHECK_THROWS_AS(PrimeField(4), std::invalid_argument);
    CHECK_THROWS_AS(PrimeField(1), std::invalid_argument);
    CHECK_THROWS_AS(PrimeField(101), std::invalid_argument);
    PrimeField f7(7);
    CHECK(f7.inv(3) == 5);
    CHECK(f7.mul(f7.inv(3), 3) == 1);
    CHECK(f7.reduce(-1) == 6);
    PrimeField f97(97);
    for (int a = 1; a < 97; ++a) CHECK(f97.mul(a, f97.inv(a)) == 1);
}

TEST_CASE("rref examples") {
    {
        auto rr = rref(mk(2, {{1, 1}, {1, 1}}));
        CHECK(rr.reduced == mk(2, {{1, 1}, {0, 0}}));
        CHECK(rr.pivots == std::vector<int>{0});
    }
    {
        auto rr = rref(Matrix::identity(PrimeField(3), 3));
        CHECK(rr.reduced == Matrix::identity(PrimeField(3), 3));
        CHECK(rr.pivots == std::vector<int>{0, 1, 2});
    }
    {
        auto rr = rref(mk(3, {{2, 1}, {1, 2}}));
        CHECK(rr.reduced == mk(3, {{1, 2}, {0, 0}}));
        CHECK(rr.pivots == std::vector<int>{0});
    }
}

TEST_CASE("kernel basis examples") {
    CHECK(kernel_basis(Matrix(PrimeField(2), 2, 2)) == Matrix::identity(PrimeField(2), 2));
    CHECK(kernel_basis(Matrix::identity(PrimeField(5), 3)).cols() == 0);
    Matrix k = kernel_basis(mk(2, {{1, 1}}));
    CHECK(k == mk(2, {{1}, {1}}));
}

TEST_CASE("solve_canonical examples") {
    PrimeField f2(2);
    Matrix b = mk(2, {{1}, {0}});
    CHECK(*solve_canonical(Matrix::identity(f2, 2), b) == b);
    // free variable zeroed
    CHECK(*solve_canonical(mk(2, {{1, 1}}), mk(2, {{1}})) == mk(2, {{1}, {0}}));
    CHECK(!solve_canonical(mk(2, {{1, 0}, {0, 0}}), mk(2, {{0}, {1}})).has_value());
}

TEST_CASE("coset_reduce examples") {
    PrimeField f2(2);
    Matrix image = mk(2, {{1}, {0}});
    CHECK(coset_reduce(mk(2, {{1}, {0}}), image).is_zero());
    Matrix v = mk(2, {{1}, {1}});
    CHECK(coset_reduce(v, Matrix(f2, 2, 0)) == v);
    CHECK(coset_reduce(v, image) == mk(2, {{0}, {1}}));
}

TEST_CASE("invert examples") {
    PrimeField f2(2);
    CHECK(*invert(Matrix::identity(f2, 3)) == Matrix::identity(f2, 3));
    Matrix swap = mk(2, {{0, 1}, {1, 0}});
    CHECK(*invert(swap) == swap);
    Matrix u = mk(2, {{1, 1}, {0, 1}});
    CHECK(*invert(u) == u);
    CHECK(!invert(mk(2, {{1, 1}, {1, 1}})).has_value());
}

TEST_CASE("complement_basis examples") {
    PrimeField f2(2);
    CHECK(complement_basis(Matrix(f2, 2, 0), 2) == Matrix::identity(f2, 2));
    CHECK(complement_basis(Matrix::identity(f2, 2), 2).cols() == 0);
    CHECK(complement_basis(mk(2, {{1}, {1}}), 2) == mk(2, {{1}, {0}}));
    CHECK_THROWS_AS(complement_basis(mk(2, {{1, 1}, {1, 1}}), 2), std::invalid_argument);
}

TEST_CASE("linear algebra invariants on pseudorandom matrices") {
    for (int p : {2, 3, 5}) {
        PrimeField f(p);
        std::uint64_t state = 42;
        auto next = [&]() {
            state = state * 6364136223846793005ull + 1442695040888963407ull;
            return static_cast<int>((state >> 33) % p);
        };
        for (int trial = 0; trial < 40; ++trial) {
            int r = trial % 4, c = (trial / 2) % 4;
            Matrix m(f, r, c);
            for (int i = 0; i < r; ++i)
                for (int j = 0; j < c; ++j) m.at(i, j) = next();
            auto rr = rref(m);
            CHECK(rref(rr.reduced).reduced == rr.reduced);
            Matrix k = kernel_basis(m);
            CHECK((m * k).is_zero());
            CHECK(static_cast<int>(rr.pivots.size()) + k.cols() == c);
            if (r > 0 && c > 0) {
                Matrix rhs = m.col(0);
                auto x = solve_canonical(m, rhs);
                REQUIRE(x.has_value());
                CHECK(m * *x == rhs);
            }
            // congruence iff difference in the column space
            if (r > 0) {
                Matrix v(f, r, 1), w(f, r, 1);
                for (int i = 0; i < r; ++i) {
                    v.at(i, 0) = next();
                    w.at(i, 0) = next();
                }
                bool same = coset_reduce(v, m) == coset_reduce(w, m);
                bool in_space = rank(Matrix::hstack(m, v - w)) == rank(m);
                CHECK(same == in_space);
            }
        }
    }
}
