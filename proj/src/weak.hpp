#pragma once

#include "completion.hpp"

namespace karcat {

// Certificate that an idempotent splits through an object of the base
// category: c o r = p and r o c = 1 on the through object.
struct SplitWitness {
    CObject through;
    RepMorphism retraction;  // A -> X
    RepMorphism section;     // X -> A
};

struct SplitVerdict {
    enum class Kind { splits, does_not_split, unknown };
    Kind kind;
    std::optional<SplitWitness> witness;
};

// Balanced backend: the image of p decides; formal backend: bounded search
// over formal objects with matching dimension vector.
SplitVerdict splits_in_base(const CObject& a, const RepMorphism& p);

// Object of the weak idempotent completion: pair plus splitting certificate.
struct WeakObject {
    KarObject underlying;
    SplitWitness witness;

    WeakObject(KarObject obj, SplitWitness w);
};

// splits_in_base verdict for the pair.
SplitVerdict is_weak_object(const KarObject& k);
std::optional<WeakObject> make_weak(const KarObject& k);

// Split-idempotent fill (the r1 h r2 construction): e and f split idempotent
// ends of a morphism of extensions on conf's class; produces a split
// idempotent fill g on the middle with its splitting certificate.
struct SplitFillResult {
    RepMorphism fill;
    SplitWitness witness;
};
SplitFillResult split_idem_fill(const CategoryPtr& cat, const Conflation& conf,
                                const RepMorphism& e, const SplitWitness& we,
                                const RepMorphism& f, const SplitWitness& wf);

// Transport a splitting certificate across an isomorphism in the completion.
WeakObject transport_weak_witness(const WeakObject& from, const KarMorphism& iso);

struct WeakClosureReport {
    FTriangle triangle;   // realisation with a split middle fill
    WeakObject middle;    // the certified middle object
};

// Realises phi with the split fill and certifies the middle object weak;
// also checks closure under a supplied isomorphism when given.
WeakClosureReport weak_extension_closed_check(const FClass& phi, const WeakObject& sub,
                                              const WeakObject& quot);

// The restricted realisation of the weak completion: all three objects
// certified weak.
struct HatTriangle {
    FTriangle triangle;
    WeakObject sub, middle, quot;
};
HatTriangle hat_realize(const FClass& phi, const WeakObject& sub, const WeakObject& quot);

// Every retraction in the weak completion has a kernel inside it: given a
// retraction rho with section sec (rho o sec = 1), exhibits the kernel object
// with its inclusion and checks the universal factorisation on g.
struct RetractionKernel {
    WeakObject kernel;
    KarMorphism inclusion;
};
RetractionKernel retraction_kernel(const WeakObject& onto_src, const KarMorphism& rho,
                                   const KarMorphism& sec, const KarMorphism& test_g);

}  // namespace karcat
