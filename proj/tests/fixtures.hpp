#pragma once

// The running A2 example over F_2 shared by the unit tests: the quiver
// 0 -> 1, the simples S1 (at the source) and S2 (at the sink), the
// projective cover P1 and G = S1 (+) S2, with the complementary projections
// e = diag(1, 0) and f = diag(0, 1) on G.

#include "category.hpp"
#include "completion.hpp"

namespace karcat::testfix {

struct A2 {
    Quiver q{Quiver::linear(2)};
    PrimeField f2{2};
    Rep s1, s2, p1, g;
    RepMorphism e, f;
    CategoryPtr balanced;

    A2()
        : s1(Rep::simple(q, f2, 0)),
          s2(Rep::simple(q, f2, 1)),
          p1(q, f2, {1, 1}, {Matrix::from_rows(f2, {{1}})}),
          g(q, f2, {1, 1}, {Matrix(f2, 1, 1)}),
          e(g, g, {Matrix::from_rows(f2, {{1}}), Matrix(f2, 1, 1)}),
          f(g, g, {Matrix(f2, 1, 1), Matrix::from_rows(f2, {{1}})}),
          balanced(std::make_shared<const Category>(Category::balanced(q, f2, {1, -1}))) {}

    CObject g_obj() const { return CObject(balanced, g); }
    KarObject ge() const { return KarObject(g_obj(), e); }
    KarObject gf() const { return KarObject(g_obj(), f); }
    KarObject g1() const { return KarObject(g_obj(), RepMorphism::identity(g)); }

    ExtCocycle gg_generator() const {
        return ExtCocycle(g, g, {Matrix::from_rows(f2, {{1}})});
    }
};

}  // namespace karcat::testfix
