#pragma once

#include <memory>

#include "ext.hpp"

namespace karcat {

enum class Membership { yes, no, unknown };

// The base extriangulated category. Three backends over one quiver/field:
//  - ambient: all finite-dimensional representations (abelian);
//  - balanced: the full subcategory cut out by weights . dims = 0, which is
//    extension-closed but not idempotent complete;
//  - formal: additive closure of a generator list with the split structure
//    (every extension group is declared zero).
class Category {
public:
    enum class Backend { ambient, balanced, formal };

    static Category ambient(Quiver q, PrimeField f);
    static Category balanced(Quiver q, PrimeField f, std::vector<int> weights);
    static Category formal(Quiver q, PrimeField f, std::vector<Rep> generators);

    Backend backend() const { return backend_; }
    const Quiver& quiver() const { return quiver_; }
    const PrimeField& field() const { return field_; }
    const std::vector<int>& weights() const { return weights_; }
    const std::vector<Rep>& generators() const { return generators_; }
    const SearchBounds& bounds() const { return bounds_; }
    void set_bounds(const SearchBounds& b) { bounds_ = b; }

    Membership contains(const Rep& r) const;
    bool weights_balance(const std::vector<int>& dims) const;

    // Extension groups as seen by this category. Balanced inherits the
    // ambient groups (extension closure); formal forces them to zero.
    ExtSpace ext(const Rep& quotient, const Rep& sub) const;

    Category opposite() const;

    bool operator==(const Category& o) const;

private:
    Category(Backend b, Quiver q, PrimeField f);
    Backend backend_;
    Quiver quiver_;
    PrimeField field_;
    std::vector<int> weights_;
    std::vector<Rep> generators_;
    SearchBounds bounds_;
};

using CategoryPtr = std::shared_ptr<const Category>;

// An object of the base category: a representation certified to belong to
// the active backend.
struct CObject {
    CategoryPtr cat;
    Rep rep;

    CObject(CategoryPtr c, Rep r);
};

ExtSpace e_group(const CObject& quotient, const CObject& sub);

// Canonical realisation of a class; middle-term membership is asserted.
Conflation s_realize(const CategoryPtr& cat, const ExtCocycle& delta);

struct EquivalenceResult {
    enum class Verdict { equivalent, not_equivalent, unknown };
    Verdict verdict;
    std::optional<RepMorphism> witness;  // middle iso b with b x1 = x2, y2 b = y1
};

// Equivalence of two conflations with equal ends.
EquivalenceResult seq_equivalent(const Conflation& s1, const Conflation& s2,
                                 const SearchBounds& bounds = {});

// Morphism-of-extensions fill: the canonical b with b x1 = x2 a, y2 b = c y1.
// Precondition (checked): a_* cls1 = c^* cls2 modulo coboundaries.
RepMorphism lift_fill(const RepMorphism& a, const RepMorphism& c, const Conflation& s1,
                      const Conflation& s2);

// ET3: complete (a, b) with b x1 = x2 a to a morphism of extensions; returns
// the unique c with c y1 = y2 b and asserts a_* cls1 = c^* cls2.
RepMorphism et3_complete(const RepMorphism& a, const RepMorphism& b, const Conflation& s1,
                         const Conflation& s2);

struct Et4Result {
    Conflation composite;  // A -> C -> E realising delta''
    RepMorphism d;         // D -> E
    RepMorphism e;         // E -> F
    Conflation de;         // D -> E -> F realising (f')_* delta'
};

// ET4 built from quotients in the ambient abelian category; compatibilities
// (i)-(iii) are asserted. s1 realises delta in Ext(D, A) with middle B; s2
// realises delta' in Ext(F, B) (its sub must equal s1's middle).
Et4Result et4_base(const Conflation& s1, const Conflation& s2);

struct MappingConeResult {
    RepMorphism g;    // middle comparison B -> mid(f_* delta)
    Conflation cone;  // A -> D (+) B -> E realising e^* delta
    Conflation pushed;  // canonical realisation of f_* delta
};

MappingConeResult mapping_cone_base(const Conflation& conf, const RepMorphism& f);

// Dual cone corollary: given rows (a,b,eps) and (x,y,delta) sharing the sub
// end, and u with u a = x, produce w with w b = y u and w^* delta = eps, plus
// the verified cone B -> C (+) Y -> Z realising a_* delta.
struct ConeFillResult {
    RepMorphism w;
    Conflation cone;
};
ConeFillResult cone_fill_base(const Conflation& eps_row, const Conflation& delta_row,
                              const RepMorphism& u);

// Cancels a split summand from a conflation whose inflation has block shape
// ((x, u), (v, 1)) : X (+) A -> Y (+) A. Split dimensions are taken from the
// explicit component reps.
Conflation summand_cancel(const Conflation& conf, const Rep& x_part, const Rep& a_part,
                          const Rep& y_part);

// Transport of a conflation across an isomorphism triple; the result is
// asserted to be a conflation with class f_* (h^-1)^* delta.
Conflation transport_conflation(const Conflation& conf, const RepMorphism& f,
                                const RepMorphism& g, const RepMorphism& h);

// Exactness of the 6-term sequences of Hom/Ext induced by a conflation
// against a test object, by rank equalities. Throws CheckFailure on defect.
void check_long_exact(const CategoryPtr& cat, const Conflation& conf, const Rep& test);

// y o x = 0, x_* delta = 0, y^* delta = 0.
void check_weak_kernel_cokernel(const CategoryPtr& cat, const Conflation& conf);

CObject opposite(const CObject& o);

}  // namespace karcat
