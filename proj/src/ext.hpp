#pragma once

#include "quiver.hpp"

namespace karcat {

// A degree-1 extension cocycle gluing `quotient` on top of `sub`: one block
// per arrow, of shape sub.dim(target) x quotient.dim(source). The class it
// represents is the coset modulo coboundaries (see ExtSpace).
class ExtCocycle {
public:
    ExtCocycle(Rep quotient, Rep sub, std::vector<Matrix> blocks);
    static ExtCocycle zero(const Rep& quotient, const Rep& sub);

    const Rep& quotient() const { return quotient_; }
    const Rep& sub() const { return sub_; }
    const Matrix& block(int a) const { return blocks_[a]; }
    Matrix& block_mut(int a) { return blocks_[a]; }

    ExtCocycle operator+(const ExtCocycle& o) const;
    ExtCocycle operator-(const ExtCocycle& o) const;
    ExtCocycle scaled(int c) const;
    ExtCocycle negated() const { return scaled(quotient_.field().neg(1)); }
    bool operator==(const ExtCocycle& o) const;
    bool is_zero_cocycle() const;

    // Flatten blocks (arrows in order, row-major) into a column vector.
    Matrix flatten() const;
    static ExtCocycle unflatten(const Rep& quotient, const Rep& sub, const Matrix& column);

private:
    Rep quotient_, sub_;
    std::vector<Matrix> blocks_;
};

// delta |-> a_* delta: compose blocks with a at target vertices (a: sub -> sub').
ExtCocycle pushforward(const RepMorphism& a, const ExtCocycle& xi);
// delta |-> c^* delta: compose blocks with c at source vertices (c: quot' -> quot).
ExtCocycle pullback(const RepMorphism& c, const ExtCocycle& xi);
// Block-diagonal cocycle on quotient (+) quotient', sub (+) sub'.
ExtCocycle ext_direct_sum(const ExtCocycle& xi, const ExtCocycle& xi2);
// Baer sum via the nabla/delta formula, asserted equal to the blockwise sum.
ExtCocycle ext_add(const ExtCocycle& xi, const ExtCocycle& xi2);

ExtCocycle opposite(const ExtCocycle& xi);

// The group Ext^1(quotient, sub) as cocycles modulo coboundaries, with the
// canonical coset-representative machinery. The coboundary map Phi sends a
// vertex-map tuple f to (f_t * Q_a - S_a * f_s)_a.
class ExtSpace {
public:
    ExtSpace(Rep quotient, Rep sub);
    // All classes identified to zero (the formal split backend).
    static ExtSpace forced_zero(Rep quotient, Rep sub);

    const Rep& quotient() const { return quotient_; }
    const Rep& sub() const { return sub_; }
    int cocycle_dim() const { return cocycle_dim_; }
    const Matrix& coboundary_image() const { return coboundary_; }
    int dim() const { return static_cast<int>(class_coords_.size()); }

    ExtCocycle reduce(const ExtCocycle& xi) const;
    bool classes_equal(const ExtCocycle& a, const ExtCocycle& b) const;
    bool is_coboundary(const ExtCocycle& xi) const;
    // Coordinates of the class w.r.t. the canonical class basis.
    Matrix coordinates(const ExtCocycle& xi) const;
    ExtCocycle from_coordinates(const Matrix& coords) const;
    ExtCocycle zero_class() const { return ExtCocycle::zero(quotient_, sub_); }
    // Columns are the canonical class-basis cocycles (flattened).
    Matrix class_basis() const;
    ExtCocycle basis_cocycle(int i) const;
    // The linear map v |-> coset_reduce(v, coboundaries) as a matrix.
    Matrix reduction_matrix() const;

private:
    Rep quotient_, sub_;
    int cocycle_dim_;
    Matrix coboundary_;               // cocycle_dim x (vertex-map dim)
    std::vector<int> class_coords_;   // non-pivot coordinates of rref(coboundary^T)
};

// A short exact sequence sub --x--> middle --y--> quotient together with the
// cocycle it realises.
struct Conflation {
    RepMorphism x;  // sub -> middle, vertexwise injective
    RepMorphism y;  // middle -> quotient, vertexwise surjective
    ExtCocycle cls;

    const Rep& sub() const { return x.src(); }
    const Rep& middle() const { return x.dst(); }
    const Rep& quotient() const { return y.dst(); }
};

// Canonical realisation: middle has sub coordinates first, arrow maps
// [[S_a, blocks_a], [0, Q_a]]; x and y are the canonical inclusion/projection.
Conflation cocycle_to_ses(const ExtCocycle& xi);

// Inverse up to coboundary; splittings are chosen via complement_basis.
// Requires x injective, y surjective, y o x = 0 and matching dimensions.
ExtCocycle ses_to_cocycle(const RepMorphism& x, const RepMorphism& y);

// Structural checks for a claimed conflation (throws CheckFailure).
void validate_conflation(const Conflation& c);

Conflation conflation_direct_sum(const Conflation& a, const Conflation& b);
Conflation opposite(const Conflation& c);

}  // namespace karcat
