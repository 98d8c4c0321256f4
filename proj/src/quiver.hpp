#pragma once

#include <cstdint>
#include <utility>
#include <variant>

#include "field.hpp"

namespace karcat {

// Finite acyclic quiver; vertices are 0..n-1.
class Quiver {
public:
    Quiver(int vertices, std::vector<std::pair<int, int>> arrows);

    int vertices() const { return vertices_; }
    int arrows() const { return static_cast<int>(arrows_.size()); }
    int source(int a) const { return arrows_[a].first; }
    int target(int a) const { return arrows_[a].second; }
    const std::vector<std::pair<int, int>>& arrow_list() const { return arrows_; }

    Quiver opposite() const;

    bool operator==(const Quiver& o) const {
        return vertices_ == o.vertices_ && arrows_ == o.arrows_;
    }
    bool operator!=(const Quiver& o) const { return !(*this == o); }

    static Quiver linear(int vertices);  // A_n with arrows i -> i+1

private:
    int vertices_;
    std::vector<std::pair<int, int>> arrows_;
};

// Finite-dimensional representation of a quiver over F_p.
class Rep {
public:
    Rep(Quiver q, PrimeField f, std::vector<int> dims, std::vector<Matrix> arrow_maps);
    static Rep zero(const Quiver& q, PrimeField f);
    static Rep simple(const Quiver& q, PrimeField f, int vertex);
    static Rep direct_sum(const Rep& a, const Rep& b);

    const Quiver& quiver() const { return quiver_; }
    const PrimeField& field() const { return field_; }
    int dim(int v) const { return dims_[v]; }
    const std::vector<int>& dims() const { return dims_; }
    int total_dim() const;
    const Matrix& arrow_map(int a) const { return arrow_maps_[a]; }

    bool operator==(const Rep& o) const;
    bool operator!=(const Rep& o) const { return !(*this == o); }
    bool is_zero() const { return total_dim() == 0; }

private:
    Quiver quiver_;
    PrimeField field_;
    std::vector<int> dims_;
    std::vector<Matrix> arrow_maps_;
};

// Morphism of representations: one matrix per vertex, commuting with the
// arrow maps.
class RepMorphism {
public:
    RepMorphism(Rep src, Rep dst, std::vector<Matrix> vertex_maps);
    static RepMorphism zero(const Rep& src, const Rep& dst);
    static RepMorphism identity(const Rep& r);
    static RepMorphism direct_sum(const RepMorphism& a, const RepMorphism& b);

    const Rep& src() const { return src_; }
    const Rep& dst() const { return dst_; }
    const Matrix& vertex_map(int v) const { return maps_[v]; }
    Matrix& vertex_map_mut(int v) { return maps_[v]; }

    // this o g, i.e. apply g first
    RepMorphism compose(const RepMorphism& g) const;
    RepMorphism operator+(const RepMorphism& o) const;
    RepMorphism operator-(const RepMorphism& o) const;
    RepMorphism scaled(int c) const;
    RepMorphism negated() const { return scaled(src_.field().neg(1)); }

    bool operator==(const RepMorphism& o) const;
    bool is_zero() const;
    bool is_idempotent() const;
    bool is_identity() const;
    bool is_vertexwise_injective() const;
    bool is_vertexwise_surjective() const;
    std::optional<RepMorphism> inverse() const;  // vertexwise; defined iff iso

private:
    Rep src_, dst_;
    std::vector<Matrix> maps_;
};

// Coordinates for the vector space of all vertex-map tuples from src to dst
// (not necessarily morphisms). Layout: vertices in order, row-major blocks.
class VertexMapSpace {
public:
    VertexMapSpace(Rep src, Rep dst);
    int dim() const { return dim_; }
    int offset(int v) const { return offsets_[v]; }
    LinearSystem::Slot slot(int v) const;
    Matrix to_vector(const std::vector<Matrix>& maps) const;
    std::vector<Matrix> from_vector(const Matrix& column) const;
    RepMorphism morphism_from_vector(const Matrix& column) const;
    Matrix morphism_to_vector(const RepMorphism& f) const;
    const Rep& src() const { return src_; }
    const Rep& dst() const { return dst_; }
    // Adds the commuting-square constraints for an unknown morphism in this
    // space, assuming the system's unknown vector starts with our coordinates
    // at base_offset.
    void add_morphism_constraints(LinearSystem& sys, int base_offset = 0) const;

private:
    Rep src_, dst_;
    std::vector<int> offsets_;
    int dim_;
};

// Canonical basis (RREF order) of Hom(src, dst).
std::vector<RepMorphism> hom_basis(const Rep& src, const Rep& dst);

struct IsoResult {
    enum class Verdict { found, not_isomorphic, unknown };
    Verdict verdict;
    std::optional<RepMorphism> iso;
};

struct SearchBounds {
    std::uint64_t max_enumeration = 1u << 16;
    int samples = 512;
    std::uint64_t sample_seed = 0x9E3779B97F4A7C15ull;
};

IsoResult iso_find(const Rep& m, const Rep& n, const SearchBounds& bounds = {});

struct ImageFactorization {
    Rep image;
    RepMorphism inclusion;      // image -> dst
    RepMorphism corestriction;  // src -> image
};
ImageFactorization image_subrep(const RepMorphism& f);

struct QuotientResult {
    Rep quotient;
    RepMorphism projection;  // ambient -> quotient
};
QuotientResult quotient_rep(const Rep& ambient, const RepMorphism& sub_inclusion);

// Opposite-quiver transport. Contravariant on morphisms.
Rep opposite(const Rep& r);
RepMorphism opposite(const RepMorphism& f);

}  // namespace karcat
